mod common;

use std::collections::BTreeMap;

use common::oracle_vp;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sigma_hecke::arith::{
    crt_approximate, discreteness_gap, in_localization, prime_power, rational, unit_decompose, vp, PrimeSet,
    Rational, Valuation,
};

const SMALL: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-5000i64..=-1, 1i64..=5000], 1i64..=5000).prop_map(|(n, d)| rational(n, d))
}

fn prime_subset() -> impl Strategy<Value = Vec<u64>> {
    prop::sample::subsequence(vec![2u64, 3, 5, 7], 1..=4)
}

fn unit(ps: Vec<u64>) -> impl Strategy<Value = Rational> {
    let k = ps.len();
    (any::<bool>(), prop::collection::vec(-4i64..=4, k)).prop_map(move |(neg, es)| {
        let q = ps.iter().zip(&es).fold(Rational::one(), |q, (&p, &e)| q * prime_power(p, e));
        if neg { -q } else { q }
    })
}

fn target() -> impl Strategy<Value = Rational> {
    (-999i64..=999, prop::collection::vec(-3i64..=3, SMALL.len()))
        .prop_map(|(n, es)| SMALL.iter().zip(&es).fold(Rational::from_integer(n.into()), |q, (&p, &e)| q * prime_power(p, e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn valuation_matches_oracle_and_is_multiplicative(a in nonzero_rational(), b in nonzero_rational(), p in prop::sample::select(SMALL.to_vec())) {
        prop_assert_eq!(vp(&a, p), Valuation::Finite(oracle_vp(&a, p).unwrap()));
        let (va, vb) = (vp(&a, p).finite().unwrap(), vp(&b, p).finite().unwrap());
        prop_assert_eq!(vp(&(&a * &b), p), Valuation::Finite(va + vb));
        prop_assert!(vp(&Rational::zero(), p).is_infinite());
    }

    #[test]
    fn ultrametric(a in nonzero_rational(), b in nonzero_rational(), p in prop::sample::select(SMALL.to_vec())) {
        prop_assert!(vp(&(&a + &b), p) >= vp(&a, p).min(vp(&b, p)));
    }

    #[test]
    fn unit_decompose_round_trips((ps, u) in prime_subset().prop_flat_map(|ps| (Just(ps.clone()), unit(ps)))) {
        let set = PrimeSet::new(ps).unwrap();
        let d = unit_decompose(&u, &set).unwrap();
        prop_assert_eq!(d.value(&set), u);
    }

    #[test]
    fn non_units_are_rejected(ps in prime_subset(), k in 0i64..5) {
        let set = PrimeSet::new(ps).unwrap();
        // 11 and 0 are never units of Z[1/P] for P within {2,3,5,7}.
        prop_assert!(unit_decompose(&(Rational::from_integer(11.into()) * prime_power(2, k)), &set).is_err());
        prop_assert!(unit_decompose(&Rational::zero(), &set).is_err());
    }

    #[test]
    fn crt_postcondition(
        (ps, ts) in prime_subset().prop_flat_map(|ps| { let k = ps.len(); (Just(ps), prop::collection::vec(target(), k)) }),
        m in 1i64..=6,
    ) {
        let set = PrimeSet::new(ps.clone()).unwrap();
        let targets: BTreeMap<u64, Rational> = ps.iter().copied().zip(ts).collect();
        let x = crt_approximate(&targets, m, &set).unwrap();
        prop_assert!(in_localization(&x, &set));
        for (&p, t) in &targets {
            let v = oracle_vp(&(&x - t), p);
            prop_assert!(v.is_none_or(|v| v >= m), "p={} v={:?}", p, v);
        }
    }

    #[test]
    fn gap_always_found((ps, x, y) in prime_subset().prop_flat_map(|ps| (Just(ps.clone()), unit(ps.clone()), unit(ps)))) {
        prop_assume!(x != y);
        let set = PrimeSet::new(ps).unwrap();
        let (p, gap) = discreteness_gap(&x, &y, &set).unwrap();
        prop_assert_eq!(gap.finite(), oracle_vp(&(&x - &y), p));
        prop_assert!(gap.finite().unwrap() <= oracle_vp(&x, p).unwrap() + 1);
    }
}
