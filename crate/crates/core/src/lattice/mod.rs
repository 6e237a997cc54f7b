//! Finite posets and meet-semilattices.
//!
//! Elements are dense indices `0..n` with optional display labels. The order
//! relation is stored as a full `n × n` boolean table, so `≤` is a lookup.

mod io;

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

pub use io::{parse_poset, poset_to_text};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    labels: Vec<Option<String>>,
}

impl Poset {
    /// Reflexive-transitive closure of the given cover pairs `(a, b)`, read
    /// as `a < b`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in covers {
            for idx in [a, b] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange { index: idx, size: n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected(a));
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if leq[a * n + b] && leq[b * n + a] {
                    return Err(Error::CycleDetected(a));
                }
            }
        }
        Ok(Poset {
            n,
            leq,
            labels: vec![None; n],
        })
    }

    /// Builds a poset from a full relation table (row-major, `leq[a*n+b]`
    /// meaning `a ≤ b`), checking reflexivity, antisymmetry and
    /// transitivity.
    pub fn from_relation(n: usize, leq: Vec<bool>) -> Result<Poset> {
        if leq.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "relation table has {} cells, expected {}",
                leq.len(),
                n * n
            )));
        }
        let at = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !at(a, a) {
                return Err(Error::NotAPartialOrder(format!("{a} ≤ {a} fails")));
            }
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(Error::NotAPartialOrder(format!("{a} and {b} are mutually below")));
                }
                if !at(a, b) {
                    continue;
                }
                for c in 0..n {
                    if at(b, c) && !at(a, c) {
                        return Err(Error::NotAPartialOrder(format!("{a} ≤ {b} ≤ {c} but not {a} ≤ {c}")));
                    }
                }
            }
        }
        Ok(Poset {
            n,
            leq,
            labels: vec![None; n],
        })
    }

    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_covers(n, &covers).expect("chain is acyclic")
    }

    pub fn antichain(n: usize) -> Poset {
        Poset::from_covers(n, &[]).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn set_label(&mut self, index: usize, label: impl Into<String>) -> Result<()> {
        if index >= self.n {
            return Err(Error::IndexOutOfRange { index, size: self.n });
        }
        self.labels[index] = Some(label.into());
        Ok(())
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Poset
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for (slot, l) in self.labels.iter_mut().zip(labels) {
            *slot = Some(l.into());
        }
        self
    }

    pub fn has_label(&self, index: usize) -> bool {
        self.labels[index].is_some()
    }

    /// Display name: the label if set, otherwise the index.
    pub fn label(&self, index: usize) -> String {
        self.labels[index].clone().unwrap_or_else(|| index.to_string())
    }

    /// Resolves a label, falling back to a bare index when no element carries
    /// that label.
    pub fn find(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.labels.iter().position(|l| l.as_deref() == Some(name)) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) if i < self.n && self.labels[i].is_none() => Ok(i),
            _ => Err(Error::UnknownLabel(name.to_owned())),
        }
    }

    /// The Hasse diagram: pairs `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) && !(0..self.n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.n).find(|&m| (0..self.n).all(|x| self.leq(m, x)))
    }

    pub fn zeta_matrix(&self) -> IncidenceMatrix {
        let entries = self.leq.iter().map(|&b| i64::from(b)).collect();
        IncidenceMatrix { n: self.n, entries }
    }

    /// The Möbius function, computed as the inverse of the zeta matrix by
    /// back-substitution along a linear extension:
    /// `μ(x,y) = −Σ_{x ≤ z < y} μ(x,z)`.
    pub fn mobius_matrix(&self) -> IncidenceMatrix {
        let n = self.n;
        let ext = self.linear_extension();
        let mut mu = vec![0i64; n * n];
        for &x in &ext {
            mu[x * n + x] = 1;
            for &y in ext.iter().skip_while(|&&e| e != x).skip(1) {
                if !self.leq(x, y) {
                    continue;
                }
                let mut acc = 0i64;
                for z in 0..n {
                    if self.leq(x, z) && self.lt(z, y) {
                        acc = acc.checked_add(mu[x * n + z]).expect("Möbius value overflows i64");
                    }
                }
                mu[x * n + y] = -acc;
            }
        }
        IncidenceMatrix { n, entries: mu }
    }

    /// Kahn's algorithm, always releasing the smallest available index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.n;
        let mut indegree: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| self.lt(x, y)).count()).collect();
        let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&y| indegree[y] == 0).map(Reverse).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse(x)) = ready.pop() {
            out.push(x);
            for (y, d) in indegree.iter_mut().enumerate() {
                if self.lt(x, y) {
                    *d -= 1;
                    if *d == 0 {
                        ready.push(Reverse(y));
                    }
                }
            }
        }
        out
    }

    pub fn is_linear_extension_of(&self, order: &[usize]) -> bool {
        order
            .iter()
            .enumerate()
            .all(|(i, &a)| order[i + 1..].iter().all(|&b| !self.lt(b, a)))
    }

    /// `{ y : y ≤ x for some x ∈ subset }`, sorted.
    pub fn order_ideal_closure(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.n)
            .filter(|&y| subset.iter().any(|&x| self.leq(y, x)))
            .collect()
    }

    pub fn is_order_ideal(&self, subset: &[usize]) -> bool {
        self.order_ideal_closure(subset).len() == subset.iter().collect::<BTreeSet<_>>().len()
    }

    /// Position (0-based) of the first `y_i` in `ordered` with `x ≤ y_i`.
    /// This is the relation `x ⊴ y_i`.
    pub fn triangle_index(&self, ordered: &[usize], x: usize) -> Result<usize> {
        ordered
            .iter()
            .position(|&y| self.leq(x, y))
            .ok_or(Error::NotBelowAny(x))
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, size: self.n })
        }
    }
}

/// A poset together with its (total) meet table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetSemilattice {
    poset: Poset,
    meet: Vec<usize>,
}

impl MeetSemilattice {
    /// Fills the meet table, failing with the first pair (in lexicographic
    /// order) lacking a greatest lower bound.
    pub fn new(poset: Poset) -> Result<MeetSemilattice> {
        let n = poset.len();
        let mut meet = vec![0usize; n * n];
        for x in 0..n {
            for y in x..n {
                let lower: Vec<usize> = (0..n).filter(|&z| poset.leq(z, x) && poset.leq(z, y)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&z| lower.iter().all(|&w| poset.leq(w, z)))
                    .ok_or(Error::NotAMeetSemilattice(x, y))?;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
            }
        }
        Ok(MeetSemilattice { poset, meet })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.poset.len() + b]
    }

    /// Meet of a nonempty sequence of elements.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.meet(a, b))
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    /// Smallest superset of `subset` closed under pairwise meets, sorted.
    pub fn meet_closure(&self, subset: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = subset.iter().copied().collect();
        loop {
            let items: Vec<usize> = set.iter().copied().collect();
            let mut grew = false;
            for (i, &a) in items.iter().enumerate() {
                for &b in &items[i + 1..] {
                    grew |= set.insert(self.meet(a, b));
                }
            }
            if !grew {
                return set.into_iter().collect();
            }
        }
    }

    /// Returns a witness pair whose meet escapes `subset`, if any.
    pub fn meet_closure_witness(&self, subset: &[usize]) -> Option<(usize, usize)> {
        let set: BTreeSet<usize> = subset.iter().copied().collect();
        for (i, &a) in subset.iter().enumerate() {
            for &b in &subset[i + 1..] {
                if !set.contains(&self.meet(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_meet_closed(&self, subset: &[usize]) -> bool {
        self.meet_closure_witness(subset).is_none()
    }
}

/// An `n × n` integer matrix indexed by poset elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IncidenceMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        IncidenceMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "incidence matrix must be square");
        IncidenceMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.entries[x * self.n + y]
    }

    pub fn scalar(&self, x: usize, y: usize) -> Scalar {
        Scalar::int(self.get(x, y))
    }

    pub fn mul(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IncidenceMatrix { n, entries }
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| format!("{:>width$}", self.get(i, j))).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Posets from the worked examples, labelled as drawn.
pub mod samples {
    use super::Poset;

    /// Five elements `1 < 2 < 4`, `1 < 3 < 5`, `2 < 5`.
    pub fn five_element() -> Poset {
        // indices: 0↔1, 1↔2, 2↔3, 3↔4, 4↔5
        Poset::from_covers(5, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 4)])
            .expect("acyclic")
            .with_labels(["1", "2", "3", "4", "5"])
    }

    /// Seven elements: `0` below `1,2,3`; `1` below `4,6`; `2` below `4,5`;
    /// `3` below `5,6`.
    pub fn seven_element() -> Poset {
        Poset::from_covers(
            7,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 6), (2, 4), (2, 5), (3, 5), (3, 6)],
        )
        .expect("acyclic")
        .with_labels(["0", "1", "2", "3", "4", "5", "6"])
    }

    /// The two-element chain `1 < 2`.
    pub fn two_chain() -> Poset {
        Poset::chain(2).with_labels(["1", "2"])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The right-handed recursion `μ(x,y) = −Σ_{x < z ≤ y} μ(z,y)`,
    /// memoized, without any linear extension.
    fn mobius_by_recursion(p: &Poset) -> Vec<Vec<i64>> {
        fn mu(p: &Poset, x: usize, y: usize, memo: &mut Vec<Vec<Option<i64>>>) -> i64 {
            if let Some(v) = memo[x][y] {
                return v;
            }
            let v = if x == y {
                1
            } else if p.leq(x, y) {
                -(0..p.len())
                    .filter(|&z| p.lt(x, z) && p.leq(z, y))
                    .map(|z| mu(p, z, y, memo))
                    .sum::<i64>()
            } else {
                0
            };
            memo[x][y] = Some(v);
            v
        }
        let n = p.len();
        let mut memo = vec![vec![None; n]; n];
        (0..n)
            .map(|x| (0..n).map(|y| mu(p, x, y, &mut memo)).collect())
            .collect()
    }

    fn divisor_poset(items: &[u64]) -> Poset {
        let n = items.len();
        let leq = (0..n * n).map(|c| items[c % n].is_multiple_of(items[c / n])).collect();
        Poset::from_relation(n, leq).unwrap()
    }

    #[test]
    fn chain_from_covers() {
        let p = Poset::from_covers(2, &[(0, 1)]).unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0));
        assert_eq!(p.zeta_matrix().rows(), vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(p.mobius_matrix().rows(), vec![vec![1, -1], vec![0, 1]]);
    }

    #[test]
    fn cycle_and_range_errors() {
        assert!(matches!(
            Poset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::from_covers(2, &[(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn seven_element_example_closure() {
        let p = samples::seven_element();
        assert!(p.leq(0, 6) && p.leq(3, 6) && !p.leq(2, 6));
        let x = [p.find("4").unwrap(), p.find("5").unwrap(), p.find("6").unwrap()];
        assert_eq!(p.order_ideal_closure(&x), (0..7).collect::<Vec<_>>());
        assert!(MeetSemilattice::new(p).is_ok());
    }

    #[test]
    fn five_element_example_meets() {
        let p = samples::five_element();
        let sl = MeetSemilattice::new(p.clone()).unwrap();
        let (l2, l4, l5) = (p.find("2").unwrap(), p.find("4").unwrap(), p.find("5").unwrap());
        assert_eq!(sl.meet(l4, l5), l2);
        assert_eq!(sl.meet_closure(&[l2, l4, l5]), vec![l2, l4, l5]);
        assert_eq!(sl.meet_closure(&[l4, l5]), vec![l2, l4, l5]);
        assert_eq!(sl.meet_closure(&[l4]), vec![l4]);
    }

    #[test]
    fn antichain_is_not_a_semilattice() {
        assert_eq!(
            MeetSemilattice::new(Poset::antichain(2)),
            Err(Error::NotAMeetSemilattice(0, 1))
        );
    }

    #[test]
    fn chain_meet_is_min() {
        let sl = MeetSemilattice::new(Poset::chain(5)).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(sl.meet(a, b), a.min(b));
            }
        }
    }

    #[test]
    fn divisor_zeta_and_mobius() {
        let items = [1u64, 2, 3, 6];
        let p = divisor_poset(&items);
        let z = p.zeta_matrix();
        for (i, a) in items.iter().enumerate() {
            for (j, b) in items.iter().enumerate() {
                assert_eq!(z.get(i, j), i64::from(b % a == 0));
            }
        }
        let mu = p.mobius_matrix();
        assert_eq!(mu.get(0, 3), 1);
        for (a, b) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(mu.get(a, b), -1);
        }
        assert_eq!(mu.rows(), mobius_by_recursion(&p));
        assert_eq!(mu.mul(&z), IncidenceMatrix::identity(4));
        assert_eq!(z.mul(&mu), IncidenceMatrix::identity(4));
    }

    #[test]
    fn antichain_zeta_is_identity() {
        assert_eq!(Poset::antichain(2).zeta_matrix(), IncidenceMatrix::identity(2));
    }

    #[test]
    fn linear_extensions_are_deterministic() {
        assert_eq!(Poset::chain(4).linear_extension(), vec![0, 1, 2, 3]);
        assert_eq!(Poset::antichain(3).linear_extension(), vec![0, 1, 2]);
        let p = samples::five_element();
        let ext = p.linear_extension();
        assert!(p.is_linear_extension_of(&ext));
        assert_eq!(ext[0], p.find("1").unwrap());
        let pos = |l: &str| ext.iter().position(|&e| e == p.find(l).unwrap()).unwrap();
        assert!(pos("2") < pos("4") && pos("3") < pos("5") && pos("2") < pos("5"));
        // a reversed chain order must be rejected
        assert!(!Poset::chain(3).is_linear_extension_of(&[2, 1, 0]));
    }

    #[test]
    fn order_ideal_edge_cases() {
        let p = samples::seven_element();
        assert_eq!(p.order_ideal_closure(&[0]), vec![0]);
        assert!(p.order_ideal_closure(&[]).is_empty());
    }

    #[test]
    fn triangle_index_on_five_element_example() {
        let p = samples::five_element();
        let s = [p.find("2").unwrap(), p.find("4").unwrap(), p.find("5").unwrap()];
        assert_eq!(p.triangle_index(&s, p.find("1").unwrap()), Ok(0));
        assert_eq!(p.triangle_index(&s, p.find("3").unwrap()), Ok(2));
        assert_eq!(p.triangle_index(&s, s[0]), Ok(0));
        let only4 = [p.find("4").unwrap()];
        assert_eq!(
            p.triangle_index(&only4, p.find("3").unwrap()),
            Err(Error::NotBelowAny(p.find("3").unwrap()))
        );
    }

    #[test]
    fn relation_validation() {
        assert!(Poset::from_relation(2, vec![true, true, true, true]).is_err());
        assert!(Poset::from_relation(2, vec![false, false, false, true]).is_err());
        // 0 ≤ 1 ≤ 2 without 0 ≤ 2
        let leq = vec![true, true, false, false, true, true, false, false, true];
        assert!(Poset::from_relation(3, leq).is_err());
    }

    #[test]
    fn find_prefers_labels() {
        let p = samples::five_element();
        assert_eq!(p.find("1").unwrap(), 0);
        assert!(p.find("0").is_err());
        assert_eq!(Poset::chain(3).find("2").unwrap(), 2);
    }
}
