mod common;

use common::{dense_product, naive_equal, naive_reduce};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sigma_hecke::arith::{integer, prime_power, PrimeSet, Rational};
use sigma_hecke::groups::{
    ball, character_basis, random_element, BaumslagSolitar, Character, Group, Letter, TriMatrix,
    TriangularGroup,
};

fn params() -> impl Strategy<Value = (i64, i64)> {
    let nz = prop_oneof![-4i64..=-1, 1i64..=4];
    (nz.clone(), nz)
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![(-5i64..=5).prop_map(Letter::A), prop_oneof![Just(1i8), Just(-1i8)].prop_map(Letter::T)]
}

fn word(max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(letter(), 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_form_matches_naive_britton((m, n) in params(), w in word(14)) {
        let g = BaumslagSolitar::new(m, n).unwrap();
        let nf = g.from_letters(&w);
        prop_assert!(naive_equal(m, n, &nf.letters(), &w));
        // Already reduced: the oracle finds no pinch left.
        prop_assert_eq!(naive_reduce(m, n, &nf.letters()), nf.letters());
        for &(r, e) in nf.syllables() {
            let bound = if e == 1 { n.abs() } else { m.abs() };
            prop_assert!((0..bound).contains(&r));
        }
    }

    #[test]
    fn inserted_relators_normalize_identically(
        (m, n) in params(),
        w in word(12),
        pos in any::<prop::sample::Index>(),
        kind in 0usize..4,
        k in -3i64..=3,
    ) {
        let g = BaumslagSolitar::new(m, n).unwrap();
        let insert: Vec<Letter> = match kind {
            0 => g.relator(),
            1 => common::invert_letters(&g.relator()),
            2 => vec![Letter::T(1), Letter::T(-1)],
            _ => vec![Letter::A(k), Letter::T(-1), Letter::T(1), Letter::A(-k)],
        };
        let at = pos.index(w.len() + 1);
        let mut w2 = w[..at].to_vec();
        w2.extend(insert);
        w2.extend_from_slice(&w[at..]);
        prop_assert_eq!(g.from_letters(&w), g.from_letters(&w2));
    }

    #[test]
    fn bs_group_axioms((m, n) in params(), u in word(8), v in word(8), w in word(8)) {
        let g = BaumslagSolitar::new(m, n).unwrap();
        let (x, y, z) = (g.from_letters(&u), g.from_letters(&v), g.from_letters(&w));
        let left = g.multiply(&g.multiply(&x, &y), &z);
        let right = g.multiply(&x, &g.multiply(&y, &z));
        prop_assert_eq!(&left, &right);
        let concat: Vec<Letter> = u.iter().chain(&v).chain(&w).copied().collect();
        prop_assert!(naive_equal(m, n, &left.letters(), &concat));
        prop_assert!(g.multiply(&x, &g.invert(&x)).is_identity());
    }

    #[test]
    fn tau_is_additive((m, n) in params(), u in word(10), v in word(10), k in -50i64..50) {
        let g = BaumslagSolitar::new(m, n).unwrap();
        let tau = g.tau();
        let (x, y) = (g.from_letters(&u), g.from_letters(&v));
        let sum = g.char_eval(&tau, &x).unwrap() + g.char_eval(&tau, &y).unwrap();
        prop_assert_eq!(g.char_eval(&tau, &g.multiply(&x, &y)).unwrap(), sum);
        prop_assert!(g.char_eval(&tau, &g.a_power(k)).unwrap().is_zero());
        prop_assert!(g.char_eval(&tau, &g.identity()).unwrap().is_zero());
    }
}

#[test]
fn bs_ball_sizes() {
    let g = BaumslagSolitar::new(2, 3).unwrap();
    assert_eq!(ball(&g, 0).len(), 1);
    let b1 = ball(&g, 1);
    assert_eq!(b1.len(), 5);
    for w in ["e", "a", "A", "t", "T"] {
        assert!(b1.contains(&g.parse_word(w).unwrap()));
    }
    assert_eq!(ball(&g, 3).len(), 53);
    assert_eq!(ball(&g, 4).len(), 147);
}

#[test]
fn bs_ball_sizes_match_oracle_enumeration() {
    for radius in [3, 4] {
        assert_eq!(oracle_ball_size(2, 3, radius), ball(&BaumslagSolitar::new(2, 3).unwrap(), radius).len());
    }
}

fn oracle_ball_size(m: i64, n: i64, radius: usize) -> usize {
    let gens = [Letter::A(1), Letter::A(-1), Letter::T(1), Letter::T(-1)];
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    let mut frontier = words.clone();
    for _ in 0..radius {
        frontier = frontier
            .iter()
            .flat_map(|w| gens.iter().map(move |&s| [w.clone(), vec![s]].concat()))
            .collect();
        words.extend(frontier.iter().cloned());
    }
    let mut distinct: Vec<Vec<Letter>> = Vec::new();
    for w in words {
        if !distinct.iter().any(|d| naive_equal(m, n, d, &w)) {
            distinct.push(w);
        }
    }
    distinct.len()
}

#[test]
fn ball_monotone_and_symmetric() {
    let g = BaumslagSolitar::new(-2, 3).unwrap();
    let b3 = ball(&g, 3);
    let b4 = ball(&g, 4);
    assert!(b3.elements().all(|x| b4.contains(x)));
    assert!(b4.elements().all(|x| b4.contains(&g.invert(x))));
    let t = TriangularGroup::new(2, PrimeSet::new(vec![2]).unwrap()).unwrap();
    let c2 = ball(&t, 2);
    assert!(ball(&t, 1).elements().all(|x| c2.contains(x)));
    assert!(c2.elements().all(|x| c2.contains(&t.invert(x))));
}

fn tri_cases() -> Vec<TriangularGroup> {
    [(2, vec![2]), (3, vec![2, 5]), (4, vec![3]), (3, vec![2, 3, 7])]
        .into_iter()
        .map(|(n, ps)| TriangularGroup::new(n, PrimeSet::new(ps).unwrap()).unwrap())
        .collect()
}

#[test]
fn tri_closure_and_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in tri_cases() {
        for _ in 0..25 {
            let x = random_element(&g, 6, &mut rng);
            let y = random_element(&g, 6, &mut rng);
            let z = random_element(&g, 6, &mut rng);
            g.check(&g.multiply(&x, &y)).unwrap();
            g.check(&g.invert(&x)).unwrap();
            let left = g.multiply(&g.multiply(&x, &y), &z);
            assert_eq!(left, g.multiply(&x, &g.multiply(&y, &z)));
            let dense = dense_product(&dense_product(&x.rows(), &y.rows()), &z.rows());
            assert_eq!(left.rows(), dense);
            assert!(g.multiply(&x, &g.invert(&x)).is_identity());
        }
    }
}

#[test]
fn tri_characters_additive() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for g in tri_cases() {
        let coeffs = (0..g.character_dim()).map(|_| integer(rng.random_range(-3..=3))).collect();
        let chi = Character::new(coeffs);
        assert!(g.char_eval(&chi, &g.identity()).unwrap().is_zero());
        for _ in 0..100 {
            let x = random_element(&g, 5, &mut rng);
            let y = random_element(&g, 5, &mut rng);
            let lhs = g.char_eval(&chi, &g.multiply(&x, &y)).unwrap();
            assert_eq!(lhs, g.char_eval(&chi, &x).unwrap() + g.char_eval(&chi, &y).unwrap());
        }
        for basis_char in character_basis(g.n(), g.primes()).unwrap() {
            for _ in 0..50 {
                let x = random_element(&g, 4, &mut rng);
                let y = random_element(&g, 4, &mut rng);
                let lhs = g.char_eval(&basis_char, &g.multiply(&x, &y)).unwrap();
                let rhs = g.char_eval(&basis_char, &x).unwrap() + g.char_eval(&basis_char, &y).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

fn random_unipotent(g: &TriangularGroup, factors: usize, rng: &mut ChaCha8Rng) -> TriMatrix {
    let ps = g.primes().primes();
    (0..factors).fold(g.identity(), |acc, _| {
        let i = rng.random_range(0..g.n() - 1);
        let j = rng.random_range(i + 1..g.n());
        let p = ps[rng.random_range(0..ps.len())];
        let alpha: Rational = integer(rng.random_range(-9..=9)) * prime_power(p, rng.random_range(-3..=3));
        g.multiply(&acc, &g.elementary(i, j, alpha).unwrap())
    })
}

#[test]
fn basis_characters_vanish_on_elementary_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for g in tri_cases() {
        for chi in character_basis(g.n(), g.primes()).unwrap() {
            for _ in 0..50 {
                let u = random_unipotent(&g, 5, &mut rng);
                g.check(&u).unwrap();
                assert!(g.char_eval(&chi, &u).unwrap().is_zero());
            }
        }
    }
}
