//! Symbolic worked examples: each is computed by its closed form and by
//! brute force, and compared term-for-term with the expected polynomial.

use std::fmt::Write as _;

use crate::closedform::{self, symbol_name, GroundedFunction};
use crate::error::Result;
use crate::hyperdet::{fdet_bruteforce, FMap, FTable, Permutation};
use crate::lattice::{samples, MeetSemilattice};
use crate::numth::{gcd_hypermatrix, ArithmeticFunction, Builtin};
use crate::scalar::{parse_scalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Example {
    pub name: &'static str,
    pub expected_text: &'static str,
    pub expected: Scalar,
    pub closed_form: Scalar,
    pub brute_force: Scalar,
}

impl Example {
    pub fn matches(&self) -> bool {
        self.closed_form == self.expected && self.brute_force == self.expected
    }
}

/// `Frak(<p1>_<p2>_…)` for every `arity`-tuple of permutations of `n`.
pub fn symbolic_fmap(n: usize, arity: usize) -> FMap {
    let perms = Permutation::all(n);
    let mut table = FTable::with_arity(arity, Scalar::zero());
    let mut tuples: Vec<Vec<Permutation>> = vec![Vec::new()];
    for _ in 0..arity {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                perms.iter().map(move |p| {
                    let mut t = t.clone();
                    t.push(p.clone());
                    t
                })
            })
            .collect();
    }
    for t in tuples {
        let name: Vec<String> = t.iter().map(Permutation::compact).collect();
        let v = Scalar::var(format!("Frak({})", name.join("_")));
        table.insert(t, v).expect("uniform tuples");
    }
    FMap::Table(table)
}

/// `F_y(z) = Σ_{x ≤ z} f_y(x)` with each `f_y(x)` the indeterminate
/// `f<y>(<x>)`.
pub fn from_mobius_symbols(lattice: MeetSemilattice, index_set: Vec<usize>) -> Result<GroundedFunction> {
    let p = lattice.poset().clone();
    GroundedFunction::from_fn(lattice, index_set, |y, z| {
        (0..p.len())
            .filter(|&x| p.leq(x, z))
            .map(|x| Scalar::var(symbol_name("f", &p.label(y), &p.label(x))))
            .sum()
    })
}

fn two_chain() -> Result<Example> {
    let sl = MeetSemilattice::new(samples::two_chain())?;
    let gf = GroundedFunction::symbolic(sl, vec![0, 1])?;
    let f = symbolic_fmap(2, 2);
    let expected_text = "Frak(12_12)*F1(1)*(F2(2) - F2(1))";
    Ok(Example {
        name: "two-element chain, k = 4, symbolic F and 𝔉",
        expected_text,
        expected: parse_scalar("Frak(12_12)*F1(1)*F2(2) - Frak(12_12)*F1(1)*F2(1)")?,
        closed_form: closedform::lindstrom_fdet(&gf, 4, &f)?,
        brute_force: fdet_bruteforce(&closedform::build_meet_hypermatrix(&gf, 4)?, &f)?,
    })
}

fn five_element() -> Result<Example> {
    let sl = MeetSemilattice::new(samples::five_element())?;
    let xs = ["2", "4", "5"]
        .iter()
        .map(|l| sl.poset().find(l))
        .collect::<Result<Vec<_>>>()?;
    let gf = from_mobius_symbols(sl, xs)?;
    let f = symbolic_fmap(3, 1);
    let expected = parse_scalar("Frak(123)")?
        * parse_scalar("f2(2) + f2(1)")?
        * parse_scalar("f4(4)")?
        * parse_scalar("f5(5) + f5(3)")?;
    Ok(Example {
        name: "meet-closed S = {2,4,5} in the five-element semilattice, k = 3",
        expected_text: "Frak(123)*(f2(2) + f2(1))*f4(4)*(f5(5) + f5(3))",
        expected,
        closed_form: closedform::meet_closed_fdet(&gf, 3, &f)?,
        brute_force: fdet_bruteforce(&closedform::build_meet_hypermatrix(&gf, 3)?, &f)?,
    })
}

fn smith() -> Result<Example> {
    let id = ArithmeticFunction::builtin(Builtin::Id, 6);
    let set: Vec<u64> = (1..=6).collect();
    let m = gcd_hypermatrix(&set, 2, &id)?;
    let (sl, elems) = crate::numth::divisor_semilattice(&set)?;
    let gf = GroundedFunction::from_fn(sl, (0..6).collect(), |_, z| Scalar::int(elems[z] as i64))?;
    Ok(Example {
        name: "Smith determinant det(gcd(i, j)), n = 6",
        expected_text: "32",
        expected: Scalar::int(32),
        closed_form: closedform::lindstrom_det(&gf)?,
        brute_force: fdet_bruteforce(&m, &FMap::SignProduct)?,
    })
}

pub fn examples() -> Result<Vec<Example>> {
    Ok(vec![two_chain()?, five_element()?, smith()?])
}

pub fn render(examples: &[Example]) -> String {
    let mut out = String::new();
    for e in examples {
        writeln!(out, "{}", e.name).unwrap();
        writeln!(out, "  expected:    {}", e.expected_text).unwrap();
        writeln!(out, "  expanded:    {}", e.expected).unwrap();
        writeln!(out, "  closed form: {}", e.closed_form).unwrap();
        writeln!(out, "  brute force: {}", e.brute_force).unwrap();
        if e.matches() {
            writeln!(out, "  match: yes").unwrap();
        } else {
            writeln!(out, "  match: NO").unwrap();
            writeln!(out, "  closed form - expected: {}", &e.closed_form - &e.expected).unwrap();
            writeln!(out, "  brute force - expected: {}", &e.brute_force - &e.expected).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_examples_match() {
        let ex = examples().unwrap();
        assert_eq!(ex.len(), 3);
        for e in &ex {
            assert!(e.matches(), "{}", render(&ex));
        }
    }

    #[test]
    fn two_chain_prints_two_terms() {
        let e = two_chain().unwrap();
        assert_eq!(
            e.closed_form.to_string(),
            "-F1(1)*F2(1)*Frak(12_12) + F1(1)*F2(2)*Frak(12_12)"
        );
    }

    #[test]
    fn symbolic_fmap_names() {
        let FMap::Table(t) = symbolic_fmap(2, 2) else {
            unreachable!()
        };
        let names: Vec<String> = t.entries().map(|(_, v)| v.to_string()).collect();
        assert_eq!(names, ["Frak(12_12)", "Frak(12_21)", "Frak(21_12)", "Frak(21_21)"]);
    }

    #[test]
    fn mismatch_shows_difference() {
        let mut e = smith().unwrap();
        e.closed_form = Scalar::int(31);
        let text = render(&[e]);
        assert!(text.contains("match: NO"));
        assert!(text.contains("closed form - expected: -1"));
    }
}
