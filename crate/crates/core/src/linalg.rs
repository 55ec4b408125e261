//! Exact sparse and dense elimination over `Z` and `F_p`.
//!
//! Rank and invariant factors run a sparse unit-pivot phase first (boundary
//! matrices are mostly `±1`), then finish the remaining core densely with
//! minimal-absolute-value pivoting.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Euclidean ring context.
pub trait Ring {
    type E: Clone + Debug + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_bigint(&self, v: &BigInt) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn is_unit(&self, a: &Self::E) -> bool;
    fn unit_inverse(&self, a: &Self::E) -> Self::E;
    /// Euclidean size, zero only for zero.
    fn size(&self, a: &Self::E) -> BigInt;
    /// `q` with `size(a - q b) < size(b)`.
    fn quotient(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl Ring for Integers {
    type E = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_bigint(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn unit_inverse(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
    fn size(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn quotient(&self, a: &BigInt, b: &BigInt) -> BigInt {
        // Round to nearest keeps |a - qb| <= |b|/2.
        let (q, r) = a.div_mod_floor(b);
        if (&r * 2u32).abs() > b.abs() {
            if b.is_positive() { q + 1 } else { q - 1 }
        } else {
            q
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    fn reduce(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.reduce(acc as u128 * base as u128);
            }
            base = self.reduce(base as u128 * base as u128);
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced")
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 + *b as u128)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 + (self.p - b % self.p) as u128)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 * *b as u128)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn unit_inverse(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn size(&self, a: &u64) -> BigInt {
        BigInt::from(u8::from(*a != 0))
    }
    fn quotient(&self, a: &u64, b: &u64) -> u64 {
        self.mul(a, &self.unit_inverse(b))
    }
}

pub type SparseRow<E> = BTreeMap<usize, E>;

/// Eliminates unit pivots. Returns the number of pivots and the residual rows,
/// none of which contains a unit entry.
pub fn eliminate_unit_pivots<R: Ring>(
    ring: &R,
    rows: Vec<SparseRow<R::E>>,
    ncols: usize,
) -> (usize, Vec<SparseRow<R::E>>) {
    let mut rows: Vec<Option<SparseRow<R::E>>> = rows
        .into_iter()
        .map(|mut r| {
            r.retain(|_, v| !ring.is_zero(v));
            if r.is_empty() { None } else { Some(r) }
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        if let Some(r) = r {
            for &c in r.keys() {
                col_rows[c].insert(i);
            }
        }
    }
    let mut pivots = 0;
    loop {
        let mut progressed = false;
        for c in 0..ncols {
            let pivot_row = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| ring.is_unit(&rows[r].as_ref().expect("live")[&c]))
                .min_by_key(|&r| rows[r].as_ref().expect("live").len());
            let Some(pr) = pivot_row else { continue };
            progressed = true;
            pivots += 1;
            let prow = rows[pr].take().expect("live");
            for &col in prow.keys() {
                col_rows[col].remove(&pr);
            }
            let inv = ring.unit_inverse(&prow[&c]);
            let targets: Vec<usize> = col_rows[c].iter().copied().collect();
            for r in targets {
                let row = rows[r].as_mut().expect("live");
                let factor = ring.mul(&row[&c], &inv);
                for (&col, v) in &prow {
                    let delta = ring.mul(&factor, v);
                    let entry = row.entry(col).or_insert_with(|| ring.zero());
                    *entry = ring.sub(entry, &delta);
                    if ring.is_zero(entry) {
                        row.remove(&col);
                        col_rows[col].remove(&r);
                    } else {
                        col_rows[col].insert(r);
                    }
                }
                if row.is_empty() {
                    rows[r] = None;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    (pivots, rows.into_iter().flatten().collect())
}

/// Nonzero invariant factors of the dense matrix by Smith reduction.
pub fn dense_smith<R: Ring>(ring: &R, mut a: Vec<Vec<R::E>>) -> Vec<R::E> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(ring, &a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !ring.is_zero(&a[i][t]) {
                    let q = ring.quotient(&a[i][t], &a[t][t]);
                    for j in t..n {
                        let d = ring.mul(&q, &a[t][j]);
                        a[i][j] = ring.sub(&a[i][j], &d);
                    }
                    dirty |= !ring.is_zero(&a[i][t]);
                }
            }
            for j in t + 1..n {
                if !ring.is_zero(&a[t][j]) {
                    let q = ring.quotient(&a[t][j], &a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = ring.mul(&q, &row[t]);
                        row[j] = ring.sub(&row[j], &d);
                    }
                    dirty |= !ring.is_zero(&a[t][j]);
                }
            }
            if dirty {
                let (pi, pj) = min_entry_cross(ring, &a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Pivot must divide the rest of the block.
            let bad = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !ring.is_zero(&ring.sub(
                    &a[i][j],
                    &ring.mul(&ring.quotient(&a[i][j], &a[t][t]), &a[t][t]),
                )))
            });
            match bad {
                Some(i) => {
                    for j in t..n {
                        let v = a[i][j].clone();
                        a[t][j] = ring.add(&a[t][j], &v);
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].clone());
        t += 1;
    }
    out
}

fn min_entry<R: Ring>(ring: &R, a: &[Vec<R::E>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if ring.is_zero(v) {
                continue;
            }
            let s = ring.size(v);
            if best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                best = Some((s, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smallest nonzero entry in row `t` or column `t` of the trailing block.
fn min_entry_cross<R: Ring>(ring: &R, a: &[Vec<R::E>], t: usize) -> (usize, usize) {
    let mut best = (ring.size(&a[t][t]), t, t);
    if ring.is_zero(&a[t][t]) {
        best.0 = BigInt::from(-1);
    }
    let mut consider = |s: BigInt, i: usize, j: usize| {
        if best.0 < BigInt::zero() || s < best.0 {
            best = (s, i, j);
        }
    };
    for i in t + 1..a.len() {
        if !ring.is_zero(&a[i][t]) {
            consider(ring.size(&a[i][t]), i, t);
        }
    }
    for j in t + 1..a[t].len() {
        if !ring.is_zero(&a[t][j]) {
            consider(ring.size(&a[t][j]), t, j);
        }
    }
    (best.1, best.2)
}

fn densify<E: Clone>(rows: &[SparseRow<E>], zero: E) -> Vec<Vec<E>> {
    let cols: BTreeSet<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
    let index: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    rows.iter()
        .map(|r| {
            let mut dense = vec![zero.clone(); cols.len()];
            for (c, v) in r {
                dense[index[c]] = v.clone();
            }
            dense
        })
        .collect()
}

/// Nonzero invariant factors (with multiplicity, including ones), up to sign.
pub fn invariant_factors<R: Ring>(ring: &R, rows: Vec<SparseRow<R::E>>, ncols: usize) -> Vec<R::E> {
    let (pivots, core) = eliminate_unit_pivots(ring, rows, ncols);
    let mut out = vec![ring.one(); pivots];
    if !core.is_empty() {
        out.extend(dense_smith(ring, densify(&core, ring.zero())));
    }
    out
}

pub fn rank<R: Ring>(ring: &R, rows: Vec<SparseRow<R::E>>, ncols: usize) -> usize {
    invariant_factors(ring, rows, ncols).len()
}

/// Basis of the right kernel `{x : A x = 0}` by column reduction with a
/// tracked transform; over `Z` the result is a lattice basis.
pub fn kernel_basis<R: Ring>(ring: &R, a: &[Vec<R::E>], ncols: usize) -> Vec<Vec<R::E>> {
    let mut cols: Vec<Vec<R::E>> = (0..ncols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect();
    let mut transform: Vec<Vec<R::E>> = (0..ncols)
        .map(|j| {
            let mut e = vec![ring.zero(); ncols];
            e[j] = ring.one();
            e
        })
        .collect();
    let mut pivot = 0;
    for i in 0..a.len() {
        if pivot >= ncols {
            break;
        }
        loop {
            let best = (pivot..ncols)
                .filter(|&j| !ring.is_zero(&cols[j][i]))
                .min_by_key(|&j| ring.size(&cols[j][i]));
            let Some(j) = best else { break };
            cols.swap(pivot, j);
            transform.swap(pivot, j);
            let mut done = true;
            for j2 in pivot + 1..ncols {
                if ring.is_zero(&cols[j2][i]) {
                    continue;
                }
                let q = ring.quotient(&cols[j2][i], &cols[pivot][i]);
                let (head, tail) = cols.split_at_mut(j2);
                axpy(ring, &mut tail[0], &q, &head[pivot]);
                let (th, tt) = transform.split_at_mut(j2);
                axpy(ring, &mut tt[0], &q, &th[pivot]);
                done &= ring.is_zero(&cols[j2][i]);
            }
            if done {
                break;
            }
        }
        if !ring.is_zero(&cols[pivot][i]) {
            pivot += 1;
        }
    }
    transform.split_off(pivot)
}

/// `y -= q x`
fn axpy<R: Ring>(ring: &R, y: &mut [R::E], q: &R::E, x: &[R::E]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !ring.is_zero(xi) {
            *yi = ring.sub(yi, &ring.mul(q, xi));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(m: &[&[i64]]) -> Vec<SparseRow<BigInt>> {
        m.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, BigInt::from(v)))
                    .collect()
            })
            .collect()
    }

    fn abs_all(v: Vec<BigInt>) -> Vec<i64> {
        let mut out: Vec<i64> = v.into_iter().map(|x| x.abs().to_i64().unwrap()).collect();
        out.sort();
        out
    }

    #[test]
    fn smith_of_diagonal_non_chain() {
        // diag(2, 3) has invariants 1, 6.
        let f = invariant_factors(&Integers, int_rows(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(abs_all(f), vec![1, 6]);
    }

    #[test]
    fn smith_torsion() {
        let f = invariant_factors(&Integers, int_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(abs_all(f), vec![2, 6, 12]);
    }

    #[test]
    fn rank_over_fields() {
        let m = &[&[1i64, 1][..], &[1, -1][..]];
        assert_eq!(rank(&Integers, int_rows(m), 2), 2);
        let f2 = PrimeField { p: 2 };
        let rows: Vec<SparseRow<u64>> = int_rows(m)
            .into_iter()
            .map(|r| r.into_iter().map(|(c, v)| (c, f2.from_bigint(&v))).collect())
            .collect();
        assert_eq!(rank(&f2, rows, 2), 1);
    }

    #[test]
    fn integer_kernel_is_a_lattice_basis() {
        let a = vec![vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)]];
        let k = kernel_basis(&Integers, &a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: BigInt = v.iter().zip(&a[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        // Unimodularity: the kernel together with a preimage of gcd spans Z^3,
        // so the 2x2 minors of the kernel basis have gcd 1.
        let minors = [
            &k[0][0] * &k[1][1] - &k[0][1] * &k[1][0],
            &k[0][0] * &k[1][2] - &k[0][2] * &k[1][0],
            &k[0][1] * &k[1][2] - &k[0][2] * &k[1][1],
        ];
        let g = minors.iter().fold(BigInt::zero(), |acc, m| acc.gcd(m));
        assert!(g.is_one());
    }

    #[test]
    fn field_inverse() {
        let f = PrimeField { p: 7 };
        for a in 1..7u64 {
            assert_eq!(f.mul(&a, &f.unit_inverse(&a)), 1);
        }
    }
}
