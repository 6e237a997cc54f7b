//! Seeded random instances for the verification suites.
//!
//! All generators draw from a caller-supplied [`ChaCha8Rng`], so a seed and
//! the sequence of calls fully determine every instance.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::closedform::GroundedFunction;
use crate::hyperdet::{FMap, FTable, Hypermatrix, Matrix, Permutation};
use crate::lattice::{MeetSemilattice, Poset};
use crate::scalar::Scalar;

pub use rand::SeedableRng;
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

const EDGE_PROBABILITY: f64 = 0.4;

pub fn int(rng: &mut Rng64, lo: i64, hi: i64) -> Scalar {
    Scalar::int(rng.gen_range(lo..=hi))
}

/// `p/q` with `p ∈ [lo, hi]`, `q ∈ [1, den]`.
pub fn rational(rng: &mut Rng64, lo: i64, hi: i64, den: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(lo..=hi), rng.gen_range(1..=den))
}

/// A random poset on `n` elements: each index-increasing pair is related
/// with probability 0.4, then transitively closed.
pub fn poset(rng: &mut Rng64, n: usize) -> Poset {
    let mut covers = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(EDGE_PROBABILITY) {
                covers.push((a, b));
            }
        }
    }
    Poset::from_covers(n, &covers).expect("index-increasing edges are acyclic")
}

/// A random meet-semilattice on `n ≥ 1` elements: element 0 is a global
/// minimum under a random poset on the other `n − 1`. Draws again until the
/// result has all meets.
pub fn semilattice(rng: &mut Rng64, n: usize) -> MeetSemilattice {
    assert!(n >= 1, "a semilattice needs at least one element");
    loop {
        let mut covers = Vec::new();
        for a in 1..n {
            covers.push((0, a));
            for b in a + 1..n {
                if rng.gen_bool(EDGE_PROBABILITY) {
                    covers.push((a, b));
                }
            }
        }
        let p = Poset::from_covers(n, &covers).expect("index-increasing edges are acyclic");
        if let Ok(sl) = MeetSemilattice::new(p) {
            return sl;
        }
    }
}

pub fn hypermatrix(rng: &mut Rng64, n: usize, k: usize, lo: i64, hi: i64) -> Hypermatrix {
    Hypermatrix::from_fn(n, k, |_| int(rng, lo, hi))
}

pub fn rational_matrix(rng: &mut Rng64, n: usize, lo: i64, hi: i64, den: i64) -> Matrix {
    Matrix::from_fn(n, |_, _| rational(rng, lo, hi, den))
}

/// A table `𝔉` with an independent random integer for every
/// `arity`-tuple of permutations of `n`.
pub fn ftable(rng: &mut Rng64, n: usize, arity: usize, lo: i64, hi: i64) -> FMap {
    let perms = Permutation::all(n);
    let mut table = FTable::with_arity(arity, Scalar::zero());
    let mut tuple = vec![0usize; arity];
    loop {
        let key = tuple.iter().map(|&i| perms[i].clone()).collect();
        table.insert(key, int(rng, lo, hi)).expect("uniform arity and size");
        let Some(pos) = (0..arity).rev().find(|&d| tuple[d] + 1 < perms.len()) else {
            break;
        };
        tuple[pos] += 1;
        tuple[pos + 1..].iter_mut().for_each(|d| *d = 0);
    }
    FMap::Table(table)
}

/// `size` distinct elements of `0..n` in random order.
pub fn subset(rng: &mut Rng64, n: usize, size: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size);
    all
}

/// Random integer `F_x(z)` in `[lo, hi]` for every `z ≤ x`, `z_x = x`.
pub fn grounded(rng: &mut Rng64, sl: &MeetSemilattice, index_set: Vec<usize>, lo: i64, hi: i64) -> GroundedFunction {
    GroundedFunction::from_fn(sl.clone(), index_set, |_, _| int(rng, lo, hi)).expect("valid index set")
}

/// Like [`grounded`] but every `F_x` restricts one common random `F`.
pub fn uniform_grounded(
    rng: &mut Rng64,
    sl: &MeetSemilattice,
    index_set: Vec<usize>,
    lo: i64,
    hi: i64,
) -> GroundedFunction {
    let common: Vec<Scalar> = (0..sl.len()).map(|_| int(rng, lo, hi)).collect();
    GroundedFunction::from_fn(sl.clone(), index_set, |_, z| common[z].clone()).expect("valid index set")
}

/// A uniformly random `z_x ≤ x` for each member of the index set.
pub fn grounds(rng: &mut Rng64, gf: &GroundedFunction) -> Vec<usize> {
    gf.index_set()
        .iter()
        .map(|&x| {
            let below: Vec<usize> = (0..gf.lattice().len()).filter(|&z| gf.lattice().leq(z, x)).collect();
            *below.choose(rng).expect("x ≤ x")
        })
        .collect()
}

/// Random grounds with at least one `z_x < x`, or `None` when every member
/// of the index set is minimal.
pub fn lowered_grounds(rng: &mut Rng64, gf: &GroundedFunction) -> Option<Vec<usize>> {
    let xs = gf.index_set();
    let candidates: Vec<usize> = (0..xs.len())
        .filter(|&i| (0..gf.lattice().len()).any(|z| gf.poset().lt(z, xs[i])))
        .collect();
    let &pick = candidates.choose(rng)?;
    let mut g = grounds(rng, gf);
    let strictly_below: Vec<usize> = (0..gf.lattice().len())
        .filter(|&z| gf.poset().lt(z, xs[pick]))
        .collect();
    g[pick] = *strictly_below
        .choose(rng)
        .expect("candidate has a strict lower element");
    Some(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instances() {
        let (mut a, mut b) = (rng(7), rng(7));
        for n in 1..7 {
            assert_eq!(semilattice(&mut a, n), semilattice(&mut b, n));
            assert_eq!(hypermatrix(&mut a, 3, 3, -5, 5), hypermatrix(&mut b, 3, 3, -5, 5));
        }
    }

    #[test]
    fn semilattices_have_a_minimum() {
        let mut r = rng(1);
        for n in 1..8 {
            let sl = semilattice(&mut r, n);
            assert_eq!(sl.len(), n);
            assert_eq!(sl.poset().minimum(), Some(0));
        }
    }

    #[test]
    fn ftable_covers_every_tuple() {
        let mut r = rng(3);
        let FMap::Table(t) = ftable(&mut r, 3, 2, -2, 2) else {
            unreachable!()
        };
        assert_eq!(t.entries().count(), 36);
    }

    #[test]
    fn lowered_grounds_lower_something() {
        let mut r = rng(11);
        let sl = MeetSemilattice::new(Poset::chain(3)).unwrap();
        let gf = grounded(&mut r, &sl, vec![0, 1, 2], -3, 3);
        for _ in 0..20 {
            let g = lowered_grounds(&mut r, &gf).unwrap();
            assert!(g.iter().zip(gf.index_set()).any(|(z, x)| z != x));
        }
        let bottom = grounded(&mut r, &sl, vec![0], -3, 3);
        assert!(lowered_grounds(&mut r, &bottom).is_none());
    }
}
