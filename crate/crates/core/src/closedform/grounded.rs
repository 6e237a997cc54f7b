use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lattice::{IncidenceMatrix, MeetSemilattice, Poset};
use crate::scalar::{parse_scalar, Scalar};

/// A family `{F_x}` indexed by an ordered subset `X` of a meet-semilattice,
/// each with a fixed element `z_x ≤ x`.
///
/// `F_x(z)` is only meaningful for `z ≤ x`; every other argument, and every
/// unset pair, reads as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundedFunction {
    lattice: MeetSemilattice,
    mobius: IncidenceMatrix,
    index_set: Vec<usize>,
    grounds: Vec<usize>,
    values: BTreeMap<(usize, usize), Scalar>,
}

impl GroundedFunction {
    /// All values zero, `z_x = x` for every `x`.
    pub fn new(lattice: MeetSemilattice, index_set: Vec<usize>) -> Result<GroundedFunction> {
        if index_set.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        for (i, &x) in index_set.iter().enumerate() {
            lattice.poset().check_index(x)?;
            if index_set[..i].contains(&x) {
                return Err(Error::DimensionMismatch(format!(
                    "element {} listed twice in the index set",
                    lattice.poset().label(x)
                )));
            }
        }
        let mobius = lattice.poset().mobius_matrix();
        Ok(GroundedFunction {
            grounds: index_set.clone(),
            lattice,
            mobius,
            index_set,
            values: BTreeMap::new(),
        })
    }

    /// Values from a closure over `(x, z)` with `z ≤ x`.
    pub fn from_fn(
        lattice: MeetSemilattice,
        index_set: Vec<usize>,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Result<GroundedFunction> {
        let mut gf = GroundedFunction::new(lattice, index_set)?;
        for x in gf.index_set.clone() {
            for z in 0..gf.lattice.len() {
                if gf.lattice.leq(z, x) {
                    let v = f(x, z);
                    gf.values.insert((x, z), v);
                }
            }
        }
        Ok(gf)
    }

    /// Every `F_x(z)` becomes the indeterminate `F<x>(<z>)` named by labels.
    pub fn symbolic(lattice: MeetSemilattice, index_set: Vec<usize>) -> Result<GroundedFunction> {
        let mut gf = GroundedFunction::new(lattice, index_set)?;
        gf.fill_symbolic();
        Ok(gf)
    }

    fn fill_symbolic(&mut self) {
        for x in self.index_set.clone() {
            for z in 0..self.lattice.len() {
                if self.lattice.leq(z, x) && !self.values.contains_key(&(x, z)) {
                    let name = symbol_name("F", &self.label(x), &self.label(z));
                    self.values.insert((x, z), Scalar::var(name));
                }
            }
        }
    }

    pub fn lattice(&self) -> &MeetSemilattice {
        &self.lattice
    }

    pub fn poset(&self) -> &Poset {
        self.lattice.poset()
    }

    pub fn mobius(&self) -> &IncidenceMatrix {
        &self.mobius
    }

    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    pub fn len(&self) -> usize {
        self.index_set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_set.is_empty()
    }

    pub fn label(&self, e: usize) -> String {
        self.lattice.poset().label(e)
    }

    fn position(&self, x: usize) -> Result<usize> {
        self.index_set
            .iter()
            .position(|&e| e == x)
            .ok_or_else(|| Error::UnknownLabel(format!("{} is not in the index set", self.label(x))))
    }

    /// `z_x` for the `i`-th member of the index set.
    pub fn ground_at(&self, i: usize) -> usize {
        self.grounds[i]
    }

    pub fn ground(&self, x: usize) -> Result<usize> {
        Ok(self.grounds[self.position(x)?])
    }

    pub fn set_ground(&mut self, x: usize, z: usize) -> Result<()> {
        let i = self.position(x)?;
        self.lattice.poset().check_index(z)?;
        if !self.lattice.leq(z, x) {
            return Err(Error::GroundNotBelow {
                x: self.label(x),
                z: self.label(z),
            });
        }
        self.grounds[i] = z;
        Ok(())
    }

    pub fn with_grounds(mut self, grounds: &[usize]) -> Result<GroundedFunction> {
        if grounds.len() != self.index_set.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} grounds for an index set of size {}",
                grounds.len(),
                self.index_set.len()
            )));
        }
        for (x, &z) in self.index_set.clone().into_iter().zip(grounds) {
            self.set_ground(x, z)?;
        }
        Ok(self)
    }

    /// Whether `z_x = x` for every `x`.
    pub fn grounds_are_identity(&self) -> bool {
        self.index_set.iter().zip(&self.grounds).all(|(x, z)| x == z)
    }

    /// First `x` with `z_x ≠ x`, for error messages.
    pub(crate) fn first_lowered(&self) -> Option<usize> {
        self.index_set
            .iter()
            .zip(&self.grounds)
            .find(|(x, z)| x != z)
            .map(|(x, _)| *x)
    }

    pub fn set_value(&mut self, x: usize, z: usize, v: Scalar) -> Result<()> {
        self.position(x)?;
        self.lattice.poset().check_index(z)?;
        if !self.lattice.leq(z, x) {
            return Err(Error::GroundNotBelow {
                x: self.label(x),
                z: self.label(z),
            });
        }
        self.values.insert((x, z), v);
        Ok(())
    }

    /// `F_x(z)`, zero outside `z ≤ x`.
    pub fn value(&self, x: usize, z: usize) -> Scalar {
        self.values.get(&(x, z)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `f_x(y) = Σ_{w ≤ y} μ(w, y) F_x(w)`.
    pub fn mobius_value(&self, x: usize, y: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for w in 0..self.lattice.len() {
            let mu = self.mobius.get(w, y);
            if mu == 0 || !self.lattice.leq(w, x) {
                continue;
            }
            if let Some(v) = self.values.get(&(x, w)) {
                acc += &(&Scalar::int(mu) * v);
            }
        }
        acc
    }

    /// Whether all `F_x` agree wherever two of them are both defined;
    /// returns a witness `(x, x', z)` otherwise.
    pub fn uniformity_witness(&self) -> Option<(usize, usize, usize)> {
        for (i, &a) in self.index_set.iter().enumerate() {
            for &b in &self.index_set[i + 1..] {
                for z in 0..self.lattice.len() {
                    if self.lattice.leq(z, a) && self.lattice.leq(z, b) && self.value(a, z) != self.value(b, z) {
                        return Some((a, b, z));
                    }
                }
            }
        }
        None
    }

    /// Parses the grounded-function file format. `load_poset` receives the
    /// path named in the header.
    ///
    /// ```text
    /// gf lattice.poset 3
    /// z 4 1
    /// z 5 2
    /// z 6 6
    /// F 4 1 7/2
    /// symbolic
    /// ```
    pub fn parse(text: &str, load_poset: impl FnOnce(&str) -> Result<Poset>) -> Result<GroundedFunction> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let perr = |line: usize, message: String| Error::Parse { line, message };

        let (hline, header) = lines
            .next()
            .ok_or_else(|| perr(1, "missing header `gf <poset-file> <n>`".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (path, n) = match fields.as_slice() {
            ["gf", path, n] => (
                *path,
                n.parse::<usize>()
                    .map_err(|_| perr(hline, format!("bad index-set size {n:?}")))?,
            ),
            _ => return Err(perr(hline, "expected header `gf <poset-file> <n>`".into())),
        };
        let poset = load_poset(path).map_err(|e| match e {
            Error::Parse { line, message } => perr(hline, format!("{path}:{line}: {message}")),
            other => perr(hline, format!("{path}: {other}")),
        })?;
        let lattice = MeetSemilattice::new(poset).map_err(|e| perr(hline, format!("{path}: {e}")))?;

        let mut grounds: Vec<(usize, usize, usize)> = Vec::new();
        let mut values: Vec<(usize, usize, usize, Scalar)> = Vec::new();
        let mut symbolic = false;
        for (line, body) in lines {
            let fields: Vec<&str> = body.split_whitespace().collect();
            let find = |name: &str| lattice.poset().find(name).map_err(|e| perr(line, e.to_string()));
            match fields.as_slice() {
                ["z", x, z] => grounds.push((line, find(x)?, find(z)?)),
                ["F", x, z, rest @ ..] if !rest.is_empty() => {
                    let v = parse_scalar(&rest.join(" ")).map_err(|e| perr(line, e.to_string()))?;
                    values.push((line, find(x)?, find(z)?, v));
                }
                ["symbolic"] => symbolic = true,
                _ => {
                    return Err(perr(
                        line,
                        format!("expected `z <x> <z>`, `F <x> <z> <scalar>` or `symbolic`, got {body:?}"),
                    ))
                }
            }
        }
        if grounds.len() != n {
            return Err(perr(
                hline,
                format!("header declares {n} indices, found {} `z` lines", grounds.len()),
            ));
        }
        let index_set: Vec<usize> = grounds.iter().map(|&(_, x, _)| x).collect();
        let mut gf = GroundedFunction::new(lattice, index_set).map_err(|e| perr(hline, e.to_string()))?;
        for (line, x, z) in grounds {
            gf.set_ground(x, z).map_err(|e| perr(line, e.to_string()))?;
        }
        for (line, x, z, v) in values {
            gf.set_value(x, z, v).map_err(|e| perr(line, e.to_string()))?;
        }
        if symbolic {
            gf.fill_symbolic();
        }
        Ok(gf)
    }

    /// File text naming `poset_path` in the header; every stored value is
    /// written explicitly.
    pub fn to_text(&self, poset_path: &str) -> String {
        let mut out = format!("gf {poset_path} {}\n", self.index_set.len());
        for (x, z) in self.index_set.iter().zip(&self.grounds) {
            writeln!(out, "z {} {}", self.label(*x), self.label(*z)).expect("string write");
        }
        for ((x, z), v) in &self.values {
            if !v.is_zero() {
                writeln!(out, "F {} {} {v}", self.label(*x), self.label(*z)).expect("string write");
            }
        }
        out
    }
}

/// `<prefix><x>(<z>)`, with characters outside the indeterminate alphabet
/// replaced by `_`.
pub fn symbol_name(prefix: &str, x: &str, z: &str) -> String {
    let clean = |s: &str| -> String {
        s.chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
            .collect()
    };
    format!("{prefix}{}({})", clean(x), clean(z))
}
