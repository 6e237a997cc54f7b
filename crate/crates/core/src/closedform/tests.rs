use super::*;
use crate::hyperdet::{det1, fdet_bruteforce, Permutation};
use crate::lattice::samples;
use crate::random;
use crate::scalar::parse_scalar;

fn sl(p: Poset) -> MeetSemilattice {
    MeetSemilattice::new(p).unwrap()
}

fn by_labels(s: &MeetSemilattice, labels: &[&str]) -> Vec<usize> {
    labels.iter().map(|l| s.poset().find(l).unwrap()).collect()
}

fn divisors_up_to(n: i64) -> MeetSemilattice {
    let covers: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (1..=n).filter(move |b| b % a == 0 && *b != a).map(move |b| (a, b)))
        .map(|(a, b)| (a as usize - 1, b as usize - 1))
        .collect();
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    sl(Poset::from_covers(n as usize, &covers).unwrap().with_labels(labels))
}

fn s(text: &str) -> Scalar {
    parse_scalar(text).unwrap()
}

#[test]
fn transforms_invert_each_other() {
    let mut r = random::rng(5);
    for n in 1..7 {
        let p = random::poset(&mut r, n);
        let f: Vec<Scalar> = (0..n).map(|_| random::int(&mut r, -9, 9)).collect();
        assert_eq!(mobius_transform(&p, &zeta_transform(&p, &f)), f);
        assert_eq!(zeta_transform(&p, &mobius_transform(&p, &f)), f);
    }
}

#[test]
fn chain_zeta_transform() {
    let p = Poset::chain(2);
    let out = zeta_transform(&p, &[s("a"), s("b")]);
    assert_eq!(out, vec![s("a"), s("a + b")]);
}

#[test]
fn gauss_identity_on_divisors() {
    let d = divisors_up_to(6);
    let phi: Vec<Scalar> = [1, 1, 2, 2, 4, 2].iter().map(|&v| Scalar::int(v)).collect();
    let ids: Vec<Scalar> = (1..=6).map(Scalar::int).collect();
    assert_eq!(zeta_transform(d.poset(), &phi), ids);
    assert_eq!(mobius_transform(d.poset(), &ids), phi);
}

#[test]
fn gcd_matrix_from_meet_hypermatrix() {
    let d = divisors_up_to(3);
    let gf = GroundedFunction::from_fn(d.clone(), vec![0, 1, 2], |_, z| Scalar::int(z as i64 + 1)).unwrap();
    let m = build_meet_hypermatrix(&gf, 2).unwrap();
    let want = Hypermatrix::from_fn(3, 2, |i| Scalar::int([[1, 1, 1], [1, 2, 1], [1, 1, 3]][i[0]][i[1]]));
    assert_eq!(m, want);
    assert!(build_meet_hypermatrix(&gf, 1).is_err());
}

#[test]
fn singleton_meet_hypermatrix() {
    let gf = GroundedFunction::symbolic(sl(samples::two_chain()), vec![1])
        .unwrap()
        .with_grounds(&[0])
        .unwrap();
    let m = build_meet_hypermatrix(&gf, 3).unwrap();
    assert_eq!(m.entries(), &[s("F2(1)")]);
}

#[test]
fn two_chain_lindstrom() {
    let gf = GroundedFunction::symbolic(sl(samples::two_chain()), vec![0, 1]).unwrap();
    let want = s("F1(1)*F2(2) - F1(1)*F2(1)");
    assert_eq!(lindstrom_det(&gf).unwrap(), want);
    assert_eq!(build_meet_hypermatrix(&gf, 2).unwrap().slice(&[]).unwrap().det(), want);
}

#[test]
fn two_chain_fdet_k4() {
    let gf = GroundedFunction::symbolic(sl(samples::two_chain()), vec![0, 1]).unwrap();
    let mut table = crate::hyperdet::FTable::with_arity(2, Scalar::zero());
    for a in Permutation::all(2) {
        for b in Permutation::all(2) {
            let name = format!("Frak({}_{})", a.compact(), b.compact());
            table.insert(vec![a.clone(), b], Scalar::var(name)).unwrap();
        }
    }
    let f = FMap::Table(table);
    let closed = lindstrom_fdet(&gf, 4, &f).unwrap();
    assert_eq!(closed, s("Frak(12_12)*F1(1)*F2(2) - Frak(12_12)*F1(1)*F2(1)"));
    let m = build_meet_hypermatrix(&gf, 4).unwrap();
    assert_eq!(fdet_bruteforce(&m, &f).unwrap(), closed);
}

#[test]
fn smith_determinant_six() {
    let d = divisors_up_to(6);
    let gf = GroundedFunction::from_fn(d, (0..6).collect(), |_, z| Scalar::int(z as i64 + 1)).unwrap();
    assert_eq!(lindstrom_det(&gf).unwrap(), Scalar::int(32));
}

#[test]
fn lowered_ground_gives_zero() {
    let gf = GroundedFunction::symbolic(sl(samples::two_chain()), vec![0, 1])
        .unwrap()
        .with_grounds(&[0, 0])
        .unwrap();
    assert!(lindstrom_det(&gf).unwrap().is_zero());
    assert!(lindstrom_fdet(&gf, 3, &FMap::SignProduct).unwrap().is_zero());
    assert!(build_meet_hypermatrix(&gf, 2)
        .unwrap()
        .slice(&[])
        .unwrap()
        .det()
        .is_zero());
}

#[test]
fn lindstrom_needs_whole_lattice() {
    let gf = GroundedFunction::symbolic(sl(samples::five_element()), vec![1, 3]).unwrap();
    assert_eq!(lindstrom_det(&gf), Err(Error::IndexSetNotWholeLattice));
    assert!(matches!(
        lindstrom_fdet(&gf, 3, &FMap::SignProduct),
        Err(Error::IndexSetNotWholeLattice)
    ));
}

#[test]
fn five_element_hat_transform() {
    let s5 = sl(samples::five_element());
    let ordered = by_labels(&s5, &["2", "4", "5"]);
    let f: Vec<Scalar> = ["f(1)", "f(2)", "f(3)", "f(4)", "f(5)"].iter().map(|t| s(t)).collect();
    let hat = hat_transform(&s5, &ordered, &f).unwrap();
    assert_eq!(hat, vec![s("f(2) + f(1)"), s("f(4)"), s("f(5) + f(3)")]);

    // F(y_i) = Σ_{y_k ≤ y_i} f̂(y_k)
    let big_f = zeta_transform(s5.poset(), &f);
    for (i, &y) in ordered.iter().enumerate() {
        let sum: Scalar = (0..=i).filter(|&k| s5.leq(ordered[k], y)).map(|k| &hat[k]).sum();
        assert_eq!(sum, big_f[y]);
    }
}

#[test]
fn hat_transform_rejects_bad_input() {
    let s5 = sl(samples::five_element());
    let f = vec![Scalar::one(); 5];
    assert!(matches!(
        hat_transform(&s5, &by_labels(&s5, &["4", "5"]), &f),
        Err(Error::SubsetNotMeetClosed(_))
    ));
    assert_eq!(
        hat_transform(&s5, &by_labels(&s5, &["4", "5", "2"]), &f),
        Err(Error::InvalidLinearExtension)
    );
}

#[test]
fn hat_transform_trivial_cases() {
    let s5 = sl(samples::five_element());
    let f: Vec<Scalar> = (1..=5).map(Scalar::int).collect();
    let whole = s5.poset().linear_extension();
    let hat = hat_transform(&s5, &whole, &f).unwrap();
    assert_eq!(hat, whole.iter().map(|&e| f[e].clone()).collect::<Vec<_>>());
    let four = by_labels(&s5, &["4"]);
    assert_eq!(
        hat_transform(&s5, &four, &f).unwrap()[0],
        zeta_transform(s5.poset(), &f)[four[0]]
    );
}

/// F_y(z) = Σ_{x ≤ z} f_y(x) with `f_y(x)` an indeterminate, so closed forms
/// come out in the `f` symbols directly.
fn from_small_f(lattice: MeetSemilattice, xs: Vec<usize>) -> GroundedFunction {
    let p = lattice.poset().clone();
    GroundedFunction::from_fn(lattice, xs, |y, z| {
        (0..p.len())
            .filter(|&x| p.leq(x, z))
            .map(|x| Scalar::var(symbol_name("f", &p.label(y), &p.label(x))))
            .sum()
    })
    .unwrap()
}

#[test]
fn five_element_meet_closed_k3() {
    let s5 = sl(samples::five_element());
    let gf = from_small_f(s5.clone(), by_labels(&s5, &["2", "4", "5"]));
    let mut table = crate::hyperdet::FTable::with_arity(1, Scalar::zero());
    for p in Permutation::all(3) {
        let name = format!("Frak({})", p.compact());
        table.insert(vec![p], Scalar::var(name)).unwrap();
    }
    let f = FMap::Table(table);
    let want = s("Frak(123)") * (s("f2(2) + f2(1)") * s("f4(4)") * s("f5(5) + f5(3)"));
    assert_eq!(meet_closed_fdet(&gf, 3, &f).unwrap(), want);
    let m = build_meet_hypermatrix(&gf, 3).unwrap();
    assert_eq!(fdet_bruteforce(&m, &f).unwrap(), want);
}

#[test]
fn meet_closed_rejects() {
    let s5 = sl(samples::five_element());
    let gf = GroundedFunction::symbolic(s5.clone(), by_labels(&s5, &["4", "5"])).unwrap();
    assert!(matches!(
        meet_closed_fdet(&gf, 3, &FMap::SignProduct),
        Err(Error::SubsetNotMeetClosed(_))
    ));
    let xs = by_labels(&s5, &["2", "4"]);
    let lowered = GroundedFunction::symbolic(s5.clone(), xs.clone())
        .unwrap()
        .with_grounds(&[by_labels(&s5, &["1"])[0], xs[1]])
        .unwrap();
    assert!(matches!(
        meet_closed_fdet(&lowered, 3, &FMap::SignProduct),
        Err(Error::GroundingNotIdentity(_))
    ));
}

#[test]
fn meet_closed_whole_lattice_is_lindstrom() {
    let mut r = random::rng(17);
    for n in 1..6 {
        let l = random::semilattice(&mut r, n);
        let gf = random::grounded(&mut r, &l, (0..n).collect(), -4, 4);
        let f = random::ftable(&mut r, n, 1, -3, 3);
        assert_eq!(
            meet_closed_fdet(&gf, 3, &f).unwrap(),
            lindstrom_fdet(&gf, 3, &f).unwrap()
        );
    }
}

#[test]
fn factor_closed_divisors() {
    let d = divisors_up_to(6);
    let xs = by_labels(&d, &["1", "2", "3", "6"]);
    let gf = GroundedFunction::from_fn(d.clone(), xs, |_, z| Scalar::int(z as i64 + 1)).unwrap();
    assert_eq!(factor_closed_fdet(&gf, 2, &FMap::SignProduct).unwrap(), Scalar::int(4));
    let m = build_meet_hypermatrix(&gf, 3).unwrap();
    assert_eq!(factor_closed_fdet(&gf, 3, &FMap::SignProduct).unwrap(), det1(&m));

    let not_closed = GroundedFunction::symbolic(d.clone(), by_labels(&d, &["1", "6"])).unwrap();
    assert!(matches!(
        factor_closed_fdet(&not_closed, 2, &FMap::SignProduct),
        Err(Error::SubsetNotFactorClosed(_))
    ));
}

fn seven_element_example() -> GroundedFunction {
    let s7 = sl(samples::seven_element());
    let xs = by_labels(&s7, &["4", "5", "6"]);
    let zs = by_labels(&s7, &["1", "2", "6"]);
    from_small_f(s7, xs).with_grounds(&zs).unwrap()
}

#[test]
fn seven_element_c_matrix() {
    let gf = seven_element_example();
    let c = c_matrix(&gf);
    let labels: Vec<String> = c.cols().iter().map(|&e| gf.label(e)).collect();
    assert_eq!(labels, ["4", "5", "6", "0", "1", "2", "3"]);
    let row4: Vec<String> = (0..7).map(|j| c.get(0, j).to_string()).collect();
    assert_eq!(row4, ["0", "0", "0", "f4(0)", "f4(1)", "0", "0"]);
    let row6: Vec<String> = (0..7).map(|j| c.get(2, j).to_string()).collect();
    assert_eq!(row6, ["0", "0", "f6(6)", "f6(0)", "f6(1)", "0", "f6(3)"]);
}

#[test]
fn seven_element_expansions_match_direct() {
    let gf = seven_element_example();
    let direct = build_meet_hypermatrix(&gf, 2).unwrap().slice(&[]).unwrap().det();
    assert_eq!(li_expansion_det(&gf), direct);
    assert_eq!(ligen_fdet(&gf, 2, &FMap::SignProduct).unwrap(), direct);
    let m3 = build_meet_hypermatrix(&gf, 3).unwrap();
    let f = FMap::ConstantOne;
    assert_eq!(ligen_fdet(&gf, 3, &f).unwrap(), fdet_bruteforce(&m3, &f).unwrap());
}

#[test]
fn factor_closed_li_has_one_term() {
    let d = divisors_up_to(4);
    let xs = by_labels(&d, &["1", "2", "4"]);
    let gf = GroundedFunction::from_fn(d, xs, |_, z| Scalar::int(3 * z as i64 + 2)).unwrap();
    assert_eq!(subset_count(&gf), 1);
    assert_eq!(
        li_expansion_det(&gf),
        factor_closed_fdet(&gf, 2, &FMap::SignProduct).unwrap()
    );
}

#[test]
fn minimum_grounds_give_single_column_rows() {
    let s7 = sl(samples::seven_element());
    let xs = by_labels(&s7, &["4", "5", "6"]);
    let gf = random::grounded(&mut random::rng(2), &s7, xs, 1, 9)
        .with_grounds(&[0, 0, 0])
        .unwrap();
    let c = c_matrix(&gf);
    for i in 0..3 {
        assert_eq!((0..c.cols().len()).filter(|&j| !c.get(i, j).is_zero()).count(), 1);
    }
}

#[test]
fn genhauk_matches_ligen() {
    let mut r = random::rng(23);
    for trial in 0..30 {
        let n = 2 + trial % 5;
        let l = random::semilattice(&mut r, n);
        let size = 1 + trial % 3.min(n);
        let xs = random::subset(&mut r, n, size.min(n));
        let mut gf = random::uniform_grounded(&mut r, &l, xs, -4, 4);
        gf = gf.clone().with_grounds(&random::grounds(&mut r, &gf)).unwrap();
        for k in 2..=3 {
            let f = random::ftable(&mut r, gf.len(), k - 2, -3, 3);
            let oracle = fdet_bruteforce(&build_meet_hypermatrix(&gf, k).unwrap(), &f).unwrap();
            assert_eq!(genhauk_fdet(&gf, k, &f).unwrap(), oracle, "trial {trial} k {k}");
            assert_eq!(ligen_fdet(&gf, k, &f).unwrap(), oracle, "trial {trial} k {k}");
        }
    }
}

#[test]
fn genhauk_rejects_mixed_functions() {
    let gf = GroundedFunction::from_fn(sl(samples::two_chain()), vec![0, 1], |x, _| Scalar::int(x as i64)).unwrap();
    assert!(matches!(
        genhauk_fdet(&gf, 2, &FMap::SignProduct),
        Err(Error::FunctionsNotUniform(_))
    ));
}

#[test]
fn arity_is_checked() {
    let gf = GroundedFunction::symbolic(sl(samples::two_chain()), vec![0, 1]).unwrap();
    let f = random::ftable(&mut random::rng(0), 2, 1, 0, 1);
    assert!(matches!(lindstrom_fdet(&gf, 4, &f), Err(Error::ArityMismatch { .. })));
    assert!(matches!(ligen_fdet(&gf, 2, &f), Err(Error::ArityMismatch { .. })));
}
