//! Timing of every method on the gcd instance `{1, …, n}`, `F = id`,
//! `𝔉 = SignProduct`.

use std::io::Write;

use num_bigint::BigUint;

use crate::closedform::GroundedFunction;
use crate::error::{Error, Result};
use crate::eval::{self, Instance, Method};
use crate::hyperdet::FMap;
use crate::numth::divisor_semilattice;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub method: Method,
    pub n: usize,
    pub k: usize,
    pub terms: BigUint,
    pub wall_ms: f64,
    pub value_digest: String,
}

/// The divisor lattice `{1, …, n}` with `F_x(z) = z`.
pub fn instance(n: usize, k: usize) -> Result<Instance> {
    let set: Vec<u64> = (1..=n as u64).collect();
    let (sl, elems) = divisor_semilattice(&set)?;
    let gf = GroundedFunction::from_fn(sl, (0..n).collect(), |_, z| Scalar::int(elems[z] as i64))?;
    Ok(Instance::Meet { gf, k })
}

/// Parses `4x3,5x2` into `(n, k)` pairs.
pub fn parse_sizes(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let bad = || Error::Syntax(format!("size {s:?} is not of the form <n>x<k>"));
            let (n, k) = s.trim().split_once('x').ok_or_else(bad)?;
            let n: usize = n.parse().map_err(|_| bad())?;
            let k: usize = k.parse().map_err(|_| bad())?;
            if n == 0 || k < 2 {
                return Err(bad());
            }
            Ok((n, k))
        })
        .collect()
}

pub fn run(sizes: &[(usize, usize)], methods: &[Method], force: bool) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &(n, k) in sizes {
        let inst = instance(n, k)?;
        for &method in methods {
            let r = eval::run(method, &inst, &FMap::SignProduct, force)?;
            rows.push(BenchRow {
                method,
                n,
                k,
                value_digest: r.value_digest(),
                terms: r.terms,
                wall_ms: r.wall_ms,
            });
        }
    }
    Ok(rows)
}

/// `(n, k)` pairs whose rows do not share one value digest.
pub fn disagreements(rows: &[BenchRow]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in rows {
        let key = (r.n, r.k);
        if out.contains(&key) {
            continue;
        }
        if rows
            .iter()
            .any(|o| (o.n, o.k) == key && o.value_digest != r.value_digest)
        {
            out.push(key);
        }
    }
    out
}

pub fn write_csv(rows: &[BenchRow], out: impl Write) -> Result<()> {
    let io = |e: csv::Error| Error::Io {
        path: "bench output".into(),
        message: e.to_string(),
    };
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "n", "k", "terms", "wall_ms", "value_digest"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.method.name().to_owned(),
            r.n.to_string(),
            r.k.to_string(),
            r.terms.to_string(),
            format!("{:.3}", r.wall_ms),
            r.value_digest.clone(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io {
        path: "bench output".into(),
        message: e.to_string(),
    })
}
