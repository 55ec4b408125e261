//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use sigma_hecke::arith::Rational;
use sigma_hecke::groups::Letter;

/// Naive Britton reduction on raw letters: merge a-powers, then remove any pinch
/// `t a^{jm} t^-1 -> a^{jn}` or `t^-1 a^{jn} t -> a^{jm}` until nothing changes.
pub fn naive_reduce(m: i64, n: i64, letters: &[Letter]) -> Vec<Letter> {
    let mut w: Vec<Letter> = Vec::new();
    for &l in letters {
        match l {
            Letter::T(e) => {
                for _ in 0..e.unsigned_abs() {
                    w.push(Letter::T(e.signum()));
                }
            }
            a => w.push(a),
        }
    }
    loop {
        let mut changed = false;
        let mut out: Vec<Letter> = Vec::new();
        for l in w.drain(..) {
            match (out.last().copied(), l) {
                (_, Letter::A(0)) => changed = true,
                (Some(Letter::A(x)), Letter::A(y)) => {
                    out.pop();
                    out.push(Letter::A(x + y));
                    changed = true;
                }
                _ => out.push(l),
            }
        }
        w = out;
        let mut i = 0;
        while i < w.len() {
            let pinch = match w[i..] {
                [Letter::T(1), Letter::T(-1), ..] => Some((2, 0)),
                [Letter::T(-1), Letter::T(1), ..] => Some((2, 0)),
                [Letter::T(1), Letter::A(k), Letter::T(-1), ..] if k % m == 0 => Some((3, k / m * n)),
                [Letter::T(-1), Letter::A(k), Letter::T(1), ..] if k % n == 0 => Some((3, k / n * m)),
                _ => None,
            };
            if let Some((len, a)) = pinch {
                w.splice(i..i + len, [Letter::A(a)]);
                changed = true;
                break;
            }
            i += 1;
        }
        if !changed {
            return w.into_iter().filter(|l| *l != Letter::A(0)).collect();
        }
    }
}

pub fn invert_letters(letters: &[Letter]) -> Vec<Letter> {
    letters
        .iter()
        .rev()
        .map(|l| match *l {
            Letter::A(k) => Letter::A(-k),
            Letter::T(e) => Letter::T(-e),
        })
        .collect()
}

/// Equality in `BS(m, n)` by Britton's lemma: `u v^-1` reduces to the empty word.
pub fn naive_equal(m: i64, n: i64, u: &[Letter], v: &[Letter]) -> bool {
    let mut w = u.to_vec();
    w.extend(invert_letters(v));
    naive_reduce(m, n, &w).is_empty()
}

/// Dense `n x n` product ignoring triangularity.
pub fn dense_product(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// `v_p` by repeated division; `None` for zero.
pub fn oracle_vp(q: &Rational, p: u64) -> Option<i64> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    if q.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |mut x: BigInt| {
        let mut k = 0;
        while (&x % &p).is_zero() {
            x /= &p;
            k += 1;
        }
        k
    };
    Some(count(q.numer().clone()) - count(q.denom().clone()))
}

/// Inverse of an invertible upper-triangular matrix by the explicit recursion
/// `x_ij = -(1/a_jj) sum_{i<=k<j} x_ik a_kj`, computed column by column.
pub fn upper_inverse(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut x = vec![vec![Rational::zero(); n]; n];
    for j in 0..n {
        x[j][j] = Rational::from_integer(1.into()) / &a[j][j];
        for i in (0..j).rev() {
            let s = (i..j).fold(Rational::zero(), |acc, k| acc + &x[i][k] * &a[k][j]);
            x[i][j] = -s / &a[j][j];
        }
    }
    x
}

/// Whether every entry is an integer and every diagonal entry is a unit of Z.
pub fn in_integral_borel(a: &[Vec<Rational>]) -> bool {
    a.iter().flatten().all(|q| q.is_integer()) && (0..a.len()).all(|i| a[i][i].numer().magnitude() == &1u32.into())
}
