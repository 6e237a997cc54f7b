use proptest::prelude::*;

use meetdet::closedform::{mobius_transform, zeta_transform};
use meetdet::hyperdet::{self, FMap, Hypermatrix, Matrix, Permutation};
use meetdet::lattice::{parse_poset, poset_to_text, IncidenceMatrix};
use meetdet::numth::{dirichlet_convolution, ArithmeticFunction, Builtin};
use meetdet::random;
use meetdet::scalar::parse_scalar;
use meetdet::Scalar;

/// Integers, fractions and small polynomials in `a`, `b`, `F1(2)`.
fn scalar() -> impl Strategy<Value = Scalar> {
    let leaf = prop_oneof![
        (-9i64..=9).prop_map(Scalar::int),
        (-9i64..=9, 1i64..=5).prop_map(|(p, q)| Scalar::ratio(p, q)),
        prop::sample::select(vec!["a", "b", "F1(2)"]).prop_map(Scalar::var),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| x + y),
            (inner.clone(), inner).prop_map(|(x, y)| x * y),
        ]
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn ring_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn scalar_text_round_trips(x in scalar()) {
        prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn sign_is_multiplicative((p, q) in (1usize..=6).prop_flat_map(|n| (permutation(n), permutation(n)))) {
        prop_assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
        prop_assert_eq!(p.inverse().sign(), p.sign());
    }

    #[test]
    fn bareiss_matches_leibniz(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = random::rng(seed);
        let m = random::rational_matrix(&mut rng, n, -6, 6, 4);
        prop_assert_eq!(m.det(), m.leibniz_det());
    }

    #[test]
    fn det_is_multiplicative(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = random::rng(seed);
        let a = random::rational_matrix(&mut rng, n, -4, 4, 3);
        let b = Matrix::from_fn(n, |_, _| random::int(&mut rng, -4, 4));
        prop_assert_eq!(a.mul(&b).unwrap().det(), &a.det() * &b.det());
    }

    #[test]
    fn expansion_matches_bruteforce(seed in any::<u64>(), n in 1usize..=3, k in 2usize..=4) {
        let mut rng = random::rng(seed);
        let m = random::hypermatrix(&mut rng, n, k, -5, 5);
        let f = random::ftable(&mut rng, n, k - 2, -3, 3);
        prop_assert_eq!(hyperdet::fdet_expansion(&m, &f).unwrap(), hyperdet::fdet_bruteforce(&m, &f).unwrap());
        let s = FMap::SignProduct;
        prop_assert_eq!(hyperdet::fdet_bruteforce(&m, &s).unwrap(), hyperdet::det1(&m));
    }

    #[test]
    fn hypermatrix_text_round_trips(seed in any::<u64>(), n in 0usize..=3, k in 2usize..=3) {
        let mut rng = random::rng(seed);
        let m = random::hypermatrix(&mut rng, n, k, -50, 50);
        prop_assert_eq!(Hypermatrix::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn mobius_inverts_zeta(seed in any::<u64>(), n in 1usize..=8) {
        let p = random::poset(&mut random::rng(seed), n);
        prop_assert_eq!(p.zeta_matrix().mul(&p.mobius_matrix()), IncidenceMatrix::identity(n));
        let f: Vec<Scalar> = (0..n as i64).map(|i| Scalar::int(i * i - 3)).collect();
        prop_assert_eq!(mobius_transform(&p, &zeta_transform(&p, &f)), f);
    }

    #[test]
    fn poset_text_round_trips(seed in any::<u64>(), n in 1usize..=8) {
        let p = random::poset(&mut random::rng(seed), n);
        prop_assert_eq!(parse_poset(&poset_to_text(&p)).unwrap(), p);
    }

    #[test]
    fn linear_extension_respects_order(seed in any::<u64>(), n in 1usize..=8) {
        let p = random::poset(&mut random::rng(seed), n);
        let ext = p.linear_extension();
        prop_assert!(p.is_linear_extension_of(&ext));
        let pos = |e: usize| ext.iter().position(|&x| x == e).unwrap();
        for a in 0..n {
            for b in 0..n {
                if p.lt(a, b) {
                    prop_assert!(pos(a) < pos(b));
                }
            }
        }
    }

    #[test]
    fn meet_closure_is_idempotent(seed in any::<u64>(), n in 1usize..=7, size in 1usize..=4) {
        let mut rng = random::rng(seed);
        let sl = random::semilattice(&mut rng, n);
        let s = random::subset(&mut rng, n, size.min(n));
        let c = sl.meet_closure(&s);
        prop_assert!(sl.is_meet_closed(&c));
        prop_assert!(s.iter().all(|e| c.contains(e)));
        prop_assert_eq!(sl.meet_closure(&c), c);
        for a in 0..n {
            for b in 0..n {
                let m = sl.meet(a, b);
                prop_assert!(sl.leq(m, a) && sl.leq(m, b));
                prop_assert_eq!(m, sl.meet(b, a));
            }
        }
    }

    #[test]
    fn mobius_convolved_with_one_is_the_unit(n in 1u64..=200) {
        let mu = ArithmeticFunction::builtin(Builtin::Mu, 200);
        let one = ArithmeticFunction::builtin(Builtin::One, 200);
        let want = if n == 1 { Scalar::one() } else { Scalar::zero() };
        prop_assert_eq!(dirichlet_convolution(&mu, &one, n).unwrap(), want);
    }
}
