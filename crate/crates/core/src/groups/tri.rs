//! `B_n(Z[P^-1])`: upper-triangular `n x n` matrices over `Z[P^-1]` with determinant 1.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Character, Generator, Group, GroupError};
use crate::arith::{
    format_rational, in_localization, integer, parse_rational, prime_power, unit_decompose, vp, PrimeSet,
    Rational,
};

/// Row-major upper-triangular matrix with exact entries. Indices are 0-based in code,
/// 1-based in labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl TriMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = TriMatrix { n, entries: vec![Rational::zero(); n * n] };
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// No validation; see [`TriangularGroup::element`].
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::InvariantViolation("matrix is not square".into()));
        }
        Ok(TriMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn diagonal(diag: Vec<Rational>) -> Self {
        let n = diag.len();
        let mut m = TriMatrix::identity(n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// `E_{i,j}^alpha`: identity plus `alpha` at `(i, j)`, 0-based, `i < j`.
    pub fn elementary(n: usize, i: usize, j: usize, alpha: Rational) -> Result<Self, GroupError> {
        if i >= j || j >= n {
            return Err(GroupError::BadIndex(format!("E_({},{}) in dimension {n}", i + 1, j + 1)));
        }
        let mut m = TriMatrix::identity(n);
        m.entries[i * n + j] = alpha;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(<[Rational]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        *self == TriMatrix::identity(self.n)
    }

    /// Checks every type invariant against `primes`.
    pub fn validate(&self, primes: &PrimeSet) -> Result<(), GroupError> {
        let n = self.n;
        let mut det = Rational::one();
        for i in 0..n {
            for j in 0..n {
                let x = self.get(i, j);
                if j < i && !x.is_zero() {
                    return Err(GroupError::InvariantViolation(format!(
                        "entry ({},{}) below the diagonal is {x}",
                        i + 1,
                        j + 1
                    )));
                }
                if !in_localization(x, primes) {
                    return Err(GroupError::InvariantViolation(format!(
                        "entry ({},{}) = {x} is not in Z[1/P] for P = {primes}",
                        i + 1,
                        j + 1
                    )));
                }
            }
            let d = self.get(i, i);
            if unit_decompose(d, primes).is_err() {
                return Err(GroupError::InvariantViolation(format!(
                    "diagonal entry {} = {d} is not a unit",
                    i + 1
                )));
            }
            det *= d;
        }
        if !det.is_one() {
            return Err(GroupError::InvariantViolation(format!("determinant is {det}, expected 1")));
        }
        Ok(())
    }

    pub fn mul(&self, other: &TriMatrix) -> TriMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = TriMatrix { n, entries: vec![Rational::zero(); n * n] };
        for i in 0..n {
            for j in i..n {
                let mut acc = Rational::zero();
                for k in i..=j {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.entries[i * n + j] = acc;
            }
        }
        out
    }

    /// Inverse by back-substitution. Panics on a zero diagonal entry.
    pub fn inverse(&self) -> TriMatrix {
        let n = self.n;
        let mut inv = TriMatrix { n, entries: vec![Rational::zero(); n * n] };
        for j in 0..n {
            inv.entries[j * n + j] = self.get(j, j).recip();
            for i in (0..j).rev() {
                let mut acc = Rational::zero();
                for k in i + 1..=j {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc += a * inv.get(k, j);
                    }
                }
                inv.entries[i * n + j] = -acc * self.get(i, i).recip();
            }
        }
        inv
    }

    pub fn conjugate(&self, b: &TriMatrix) -> TriMatrix {
        b.mul(self).mul(&b.inverse())
    }
}

impl fmt::Display for TriMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Serialize for TriMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        TriMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangularGroup {
    n: usize,
    primes: PrimeSet,
}

impl TriangularGroup {
    pub fn new(n: usize, primes: PrimeSet) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::DimensionTooSmall);
        }
        Ok(TriangularGroup { n, primes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    /// Validated element from rows.
    pub fn element(&self, rows: Vec<Vec<Rational>>) -> Result<TriMatrix, GroupError> {
        let m = TriMatrix::from_rows(rows)?;
        self.check(&m)?;
        Ok(m)
    }

    pub fn check(&self, m: &TriMatrix) -> Result<(), GroupError> {
        if m.n != self.n {
            return Err(GroupError::InvariantViolation(format!(
                "matrix is {}x{}, group has n = {}",
                m.n, m.n, self.n
            )));
        }
        m.validate(&self.primes)
    }

    pub fn checked_multiply(&self, g: &TriMatrix, h: &TriMatrix) -> Result<TriMatrix, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(g.mul(h))
    }

    /// `d_k(p)`: `p` at position `k`, `1/p` at `k+1` (0-based `k`).
    pub fn d(&self, k: usize, p: u64) -> Result<TriMatrix, GroupError> {
        if k + 1 >= self.n {
            return Err(GroupError::BadIndex(format!("d_{} in dimension {}", k + 1, self.n)));
        }
        if !self.primes.contains(p) {
            return Err(GroupError::PrimeNotInSet(p));
        }
        let mut m = TriMatrix::identity(self.n);
        m.set(k, k, integer(p as i64));
        m.set(k + 1, k + 1, prime_power(p, -1));
        Ok(m)
    }

    pub fn elementary(&self, i: usize, j: usize, alpha: Rational) -> Result<TriMatrix, GroupError> {
        if !in_localization(&alpha, &self.primes) {
            return Err(GroupError::InvariantViolation(format!("{alpha} is not in Z[1/P]")));
        }
        TriMatrix::elementary(self.n, i, j, alpha)
    }

    /// Position of `chi_{k,p}` in the character basis (0-based `k`).
    pub fn basis_index(&self, k: usize, p: u64) -> Option<usize> {
        let idx = self.primes.index_of(p)?;
        (k + 1 < self.n).then_some(k * self.primes.len() + idx)
    }

    /// `(k, p)` with 1-based `k` for a basis position.
    pub fn basis_label(&self, index: usize) -> (usize, u64) {
        let l = self.primes.len();
        (index / l + 1, self.primes.primes()[index % l])
    }
}

impl Group for TriangularGroup {
    type Element = TriMatrix;

    fn identity(&self) -> TriMatrix {
        TriMatrix::identity(self.n)
    }

    fn multiply(&self, g: &TriMatrix, h: &TriMatrix) -> TriMatrix {
        g.mul(h)
    }

    fn invert(&self, g: &TriMatrix) -> TriMatrix {
        g.inverse()
    }

    fn generators(&self) -> Vec<Generator<TriMatrix>> {
        let n = self.n;
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = TriMatrix::elementary(n, i, j, integer(1)).expect("i < j");
                gens.push(Generator { label: format!("E{}{}", i + 1, j + 1), element: e.clone() });
                gens.push(Generator { label: format!("E{}{}^-1", i + 1, j + 1), element: e.inverse() });
            }
        }
        for k in 0..n - 1 {
            for &p in self.primes.primes() {
                let d = self.d(k, p).expect("valid index");
                gens.push(Generator { label: format!("d{}({p})", k + 1), element: d.clone() });
                gens.push(Generator { label: format!("d{}({p})^-1", k + 1), element: d.inverse() });
            }
        }
        gens
    }

    fn character_dim(&self) -> usize {
        (self.n - 1) * self.primes.len()
    }

    /// `sum_{k,p} lambda_{k,p} (v_p(a_{k+1,k+1}) - v_p(a_{k,k}))`.
    fn char_eval(&self, chi: &Character, g: &TriMatrix) -> Result<Rational, GroupError> {
        self.check_character(chi)?;
        let mut total = Rational::zero();
        for (idx, lambda) in chi.coefficients.iter().enumerate() {
            if lambda.is_zero() {
                continue;
            }
            let (k, p) = self.basis_label(idx);
            let lo = vp(g.get(k - 1, k - 1), p).finite();
            let hi = vp(g.get(k, k), p).finite();
            let (Some(lo), Some(hi)) = (lo, hi) else {
                return Err(GroupError::InvariantViolation("zero on the diagonal".into()));
            };
            total += lambda * integer(hi - lo);
        }
        Ok(total)
    }

    fn format_element(&self, g: &TriMatrix) -> String {
        g.to_string()
    }
}

/// The basis `chi_{k,p}`, ordered by `k` then by prime.
pub fn character_basis(n: usize, primes: &PrimeSet) -> Result<Vec<Character>, GroupError> {
    let g = TriangularGroup::new(n, primes.clone())?;
    let dim = g.character_dim();
    Ok((0..dim)
        .map(|i| {
            let mut c = Character::zero(dim);
            c.coefficients[i] = integer(1);
            c
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugationCheck {
    pub exponent: u64,
    #[serde(with = "crate::arith::rational_serde")]
    pub entry: Rational,
    pub conjugator: TriMatrix,
}

/// With `A = diag(.., p, .., 1/p, ..)` (`p` at `i`, `1/p` at `j`), verifies
/// `A E_{i,j}^alpha A^-1 = E_{i,j}^{p^2 alpha}`. Indices are 0-based.
pub fn unipotent_conjugation_check(
    n: usize,
    primes: &PrimeSet,
    p: u64,
    i: usize,
    j: usize,
    alpha: &Rational,
) -> Result<ConjugationCheck, GroupError> {
    let group = TriangularGroup::new(n, primes.clone())?;
    if !primes.contains(p) {
        return Err(GroupError::PrimeNotInSet(p));
    }
    let e = group.elementary(i, j, alpha.clone())?;
    let mut diag = vec![integer(1); n];
    diag[i] = integer(p as i64);
    diag[j] = prime_power(p, -1);
    let a = TriMatrix::diagonal(diag);
    group.check(&a)?;
    let conj = e.conjugate(&a);
    let exponent = p * p;
    let expected = group.elementary(i, j, alpha * integer(exponent as i64))?;
    if conj != expected {
        return Err(GroupError::ConjugationMismatch(format!("got {conj}, expected {expected}")));
    }
    Ok(ConjugationCheck { exponent, entry: conj.get(i, j).clone(), conjugator: a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational;

    fn ps(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn inverse_by_back_substitution() {
        let g = TriangularGroup::new(3, ps(&[2, 3])).unwrap();
        let m = g
            .element(vec![
                vec![integer(2), rational(1, 3), integer(5)],
                vec![integer(0), rational(1, 6), rational(-7, 4)],
                vec![integer(0), integer(0), integer(3)],
            ])
            .unwrap();
        assert!(m.mul(&m.inverse()).is_identity());
        assert!(m.inverse().mul(&m).is_identity());
        g.check(&m.inverse()).unwrap();
    }

    #[test]
    fn invariant_violations() {
        let g = TriangularGroup::new(2, ps(&[2])).unwrap();
        let bad_entry = g.element(vec![vec![integer(1), rational(1, 3)], vec![integer(0), integer(1)]]);
        assert!(matches!(bad_entry, Err(GroupError::InvariantViolation(_))));
        let bad_det = g.element(vec![vec![integer(2), integer(0)], vec![integer(0), integer(1)]]);
        assert!(bad_det.is_err());
        let lower = g.element(vec![vec![integer(1), integer(0)], vec![integer(1), integer(1)]]);
        assert!(lower.is_err());
        let non_unit = g.element(vec![vec![integer(3), integer(0)], vec![integer(0), rational(1, 3)]]);
        assert!(non_unit.is_err());
    }

    #[test]
    fn character_on_diagonal() {
        let g = TriangularGroup::new(2, ps(&[2])).unwrap();
        let m = TriMatrix::diagonal(vec![integer(2), rational(1, 2)]);
        let chi = character_basis(2, g.primes()).unwrap().remove(0);
        assert_eq!(g.char_eval(&chi, &m).unwrap(), integer(-2));
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(character_basis(2, &ps(&[2])).unwrap().len(), 1);
        assert_eq!(character_basis(3, &ps(&[2, 5])).unwrap().len(), 4);
        let g = TriangularGroup::new(3, ps(&[2, 5])).unwrap();
        assert_eq!(g.basis_label(3), (2, 5));
        assert_eq!(g.basis_index(1, 5), Some(3));
    }

    #[test]
    fn conjugation_examples() {
        let c = unipotent_conjugation_check(2, &ps(&[2]), 2, 0, 1, &integer(1)).unwrap();
        assert_eq!((c.exponent, c.entry), (4, integer(4)));
        assert_eq!(c.conjugator, TriMatrix::diagonal(vec![integer(2), rational(1, 2)]));
        let c = unipotent_conjugation_check(2, &ps(&[2]), 2, 0, 1, &integer(0)).unwrap();
        assert_eq!(c.exponent, 4);
        let c = unipotent_conjugation_check(3, &ps(&[3]), 3, 0, 2, &rational(1, 3)).unwrap();
        assert_eq!(c.entry, integer(3));
        assert!(unipotent_conjugation_check(3, &ps(&[3]), 5, 0, 2, &integer(1)).is_err());
    }

    #[test]
    fn generators_and_json() {
        let g = TriangularGroup::new(3, ps(&[2])).unwrap();
        let gens = g.generators();
        assert_eq!(gens.len(), 2 * 3 + 2 * 2);
        for s in &gens {
            g.check(&s.element).unwrap();
        }
        let m = TriMatrix::elementary(2, 0, 1, rational(1, 4)).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1/1","1/4"],["0/1","1/1"]]"#);
        assert_eq!(serde_json::from_str::<TriMatrix>(&json).unwrap(), m);
        assert_eq!(m.to_string(), "[[1,1/4],[0,1]]");
    }
}
