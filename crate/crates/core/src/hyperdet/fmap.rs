use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::perm::Permutation;
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

/// Coefficient map `𝔉` on `(k−2)`-tuples of permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FMap {
    /// `∏ sign(σ_j)`; turns the F-determinant into `Det_1`.
    SignProduct,
    ConstantOne,
    Table(FTable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTable {
    arity: Option<usize>,
    entries: BTreeMap<Vec<Permutation>, Scalar>,
    default: Scalar,
}

impl FTable {
    pub fn new(default: Scalar) -> FTable {
        FTable {
            arity: None,
            entries: BTreeMap::new(),
            default,
        }
    }

    /// A table that is only valid for tuples of the given length, even
    /// before any entry is inserted.
    pub fn with_arity(arity: usize, default: Scalar) -> FTable {
        FTable {
            arity: Some(arity),
            entries: BTreeMap::new(),
            default,
        }
    }

    pub fn insert(&mut self, key: Vec<Permutation>, value: Scalar) -> Result<()> {
        match self.arity {
            Some(a) if a != key.len() => {
                return Err(Error::ArityMismatch {
                    expected: a,
                    found: key.len(),
                })
            }
            _ => self.arity = Some(key.len()),
        }
        if let Some(n) = self.entries.keys().next().and_then(|k| k.first()).map(Permutation::len) {
            if key.iter().any(|p| p.len() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "table mixes permutations of {n} and other sizes"
                )));
            }
        }
        self.entries.insert(key, value);
        Ok(())
    }

    pub fn default_value(&self) -> &Scalar {
        &self.default
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<Permutation>, &Scalar)> {
        self.entries.iter()
    }

    fn points(&self) -> Option<usize> {
        self.entries.keys().flat_map(|k| k.first()).map(Permutation::len).next()
    }
}

impl FMap {
    pub fn arity(&self) -> Option<usize> {
        match self {
            FMap::Table(t) => t.arity,
            _ => None,
        }
    }

    /// Checks that the map applies to hypermatrices of side `n` and order `k`.
    pub fn check(&self, n: usize, k: usize) -> Result<()> {
        if let Some(a) = self.arity() {
            if a + 2 != k {
                return Err(Error::ArityMismatch {
                    expected: k.saturating_sub(2),
                    found: a,
                });
            }
        }
        if let FMap::Table(t) = self {
            if let Some(m) = t.points() {
                if m != n {
                    return Err(Error::DimensionMismatch(format!(
                        "F-map table permutes {m} points, hypermatrix side is {n}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Value on a tuple; the empty tuple maps to 1 for the built-in maps.
    pub fn eval(&self, tuple: &[&Permutation]) -> Scalar {
        match self {
            FMap::SignProduct => Scalar::int(tuple.iter().map(|p| p.sign()).product()),
            FMap::ConstantOne => Scalar::one(),
            FMap::Table(t) => {
                let key: Vec<Permutation> = tuple.iter().map(|&p| p.clone()).collect();
                t.entries.get(&key).cloned().unwrap_or_else(|| t.default.clone())
            }
        }
    }

    /// `𝔉(Id, …, Id)` for side `n` and order `k`.
    pub fn at_identity(&self, n: usize, k: usize) -> Scalar {
        let id = Permutation::identity(n);
        let tuple: Vec<&Permutation> = (2..k).map(|_| &id).collect();
        self.eval(&tuple)
    }

    /// Parses `sign`, `one`, or an inline table body.
    pub fn parse_table(text: &str) -> Result<FMap> {
        let mut table = FTable::new(Scalar::zero());
        let mut seen_default = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |message: String| Error::Parse { line: line_no, message };
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| perr("expected `<perm>;… -> <scalar>`".into()))?;
            let value = parse_scalar(rhs.trim()).map_err(|e| perr(e.to_string()))?;
            let lhs = lhs.trim();
            if lhs == "default" {
                if std::mem::replace(&mut seen_default, true) {
                    return Err(perr("second `default` line".into()));
                }
                table.default = value;
                continue;
            }
            let key = if lhs.is_empty() {
                Vec::new()
            } else {
                lhs.split(';')
                    .map(|p| p.parse::<Permutation>())
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| perr(e.to_string()))?
            };
            if table.entries.contains_key(&key) {
                return Err(perr(format!("duplicate tuple {lhs:?}")));
            }
            table.insert(key, value).map_err(|e| perr(e.to_string()))?;
        }
        Ok(FMap::Table(table))
    }

    /// Table text that [`FMap::parse_table`] reads back.
    pub fn table_text(&self) -> Option<String> {
        let FMap::Table(t) = self else { return None };
        let mut out = String::new();
        for (key, v) in &t.entries {
            let perms: Vec<String> = key.iter().map(Permutation::to_string).collect();
            writeln!(out, "{} -> {v}", perms.join(";")).expect("string write");
        }
        writeln!(out, "default -> {}", t.default).expect("string write");
        Some(out)
    }

    /// CLI form: `sign`, `one`, or `table:<path>` (the caller reads the file).
    pub fn describe(&self) -> String {
        match self {
            FMap::SignProduct => "sign".into(),
            FMap::ConstantOne => "one".into(),
            FMap::Table(_) => "table".into(),
        }
    }
}
