//! Line-oriented poset files:
//!
//! ```text
//! poset 3
//! label 0 bottom
//! cover 0 1
//! cover bottom 2
//! ```
//!
//! `#` starts a comment. Cover endpoints may be labels or bare indices.

use std::fmt::Write as _;

use super::Poset;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut n: Option<usize> = None;
    let mut labels: Vec<Option<String>> = Vec::new();
    let mut covers: Vec<(usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (n, fields.as_slice()) {
            (None, ["poset", count]) => {
                let count: usize = count
                    .parse()
                    .map_err(|_| parse_err(line_no, format!("bad element count {count:?}")))?;
                n = Some(count);
                labels = vec![None; count];
            }
            (None, _) => return Err(parse_err(line_no, "expected header `poset <n>`")),
            (Some(count), ["label", index, name]) => {
                let i: usize = index
                    .parse()
                    .ok()
                    .filter(|&i| i < count)
                    .ok_or_else(|| parse_err(line_no, format!("bad element index {index:?}")))?;
                if labels.iter().flatten().any(|l| l == name) {
                    return Err(parse_err(line_no, format!("duplicate label {name:?}")));
                }
                labels[i] = Some((*name).to_owned());
            }
            (Some(_), ["cover", a, b]) => covers.push((line_no, (*a).to_owned(), (*b).to_owned())),
            (Some(_), _) => {
                return Err(parse_err(
                    line_no,
                    format!("expected `label <index> <name>` or `cover <a> <b>`, got {line:?}"),
                ))
            }
        }
    }

    let n = n.ok_or_else(|| parse_err(1, "missing header `poset <n>`"))?;
    let resolve = |line: usize, name: &str| -> Result<usize> {
        if let Some(i) = labels.iter().position(|l| l.as_deref() == Some(name)) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) if i < n => Ok(i),
            _ => Err(parse_err(line, format!("unknown element {name:?}"))),
        }
    };
    let mut pairs = Vec::with_capacity(covers.len());
    for (line, a, b) in &covers {
        let (a, b) = (resolve(*line, a)?, resolve(*line, b)?);
        if a == b {
            return Err(parse_err(*line, "an element cannot cover itself"));
        }
        pairs.push((a, b));
    }
    let mut poset = Poset::from_covers(n, &pairs).map_err(|e| match e {
        Error::CycleDetected(x) => {
            let line = covers
                .iter()
                .zip(&pairs)
                .find(|(_, &(a, b))| a == x || b == x)
                .map_or(1, |((l, _, _), _)| *l);
            parse_err(line, format!("cover relation contains a cycle through element {x}"))
        }
        other => other,
    })?;
    for (i, l) in labels.into_iter().enumerate() {
        if let Some(l) = l {
            poset.set_label(i, l)?;
        }
    }
    Ok(poset)
}

/// Writes a poset in the file format, listing only Hasse-diagram covers.
pub fn poset_to_text(p: &Poset) -> String {
    let mut out = String::new();
    writeln!(out, "poset {}", p.len()).expect("string write");
    for i in 0..p.len() {
        if p.has_label(i) {
            writeln!(out, "label {i} {}", p.label(i)).expect("string write");
        }
    }
    for (a, b) in p.covers() {
        writeln!(out, "cover {a} {b}").expect("string write");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::samples;

    #[test]
    fn parses_labels_and_covers() {
        let text = "# diamond\nposet 4\nlabel 0 bot\nlabel 3 top\ncover bot 1\ncover bot 2\ncover 1 top\ncover 2 top\n";
        let p = parse_poset(text).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.leq(0, 3));
        assert_eq!(p.label(3), "top");
        assert_eq!(p.label(1), "1");
    }

    #[test]
    fn round_trips_sample() {
        let p = samples::seven_element();
        assert_eq!(parse_poset(&poset_to_text(&p)).unwrap(), p);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_poset("poset 2\ncover 0 5\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "unknown element \"5\"".into()
            }
        );
        assert!(matches!(parse_poset("oops\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_poset(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_poset("poset 2\n\nfrobnicate\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_poset("poset 3\ncover 0 1\ncover 1 2\ncover 2 0\n"),
            Err(Error::Parse { .. })
        ));
    }
}
