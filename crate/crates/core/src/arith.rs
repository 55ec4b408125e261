//! Exact arithmetic: rationals, p-adic valuations, the localized ring
//! `Z[P^-1]` and its unit group, and CRT approximation of `Q_P` targets.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("{0} is not a unit of Z[P^-1]")]
    NotAUnit(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime set must be nonempty and strictly increasing")]
    MalformedPrimeSet,
    #[error("CRT targets are keyed by {found:?}, expected exactly {expected:?}")]
    TargetMismatch { expected: Vec<u64>, found: Vec<u64> },
    #[error("discreteness gap needs distinct inputs")]
    EqualInputs,
    #[error("no prime witnesses the gap between {x} and {y}")]
    NoWitness { x: String, y: String },
    #[error("cannot parse rational `{0}`")]
    Parse(String),
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p^e` for any integer exponent.
pub fn prime_power(p: u64, e: i64) -> Rational {
    let base = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

/// Formats as `n/d`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `n/d` or a bare integer `n`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter storing rationals as `"n/d"` strings.
pub mod rational_serde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&format_rational(q)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(format_rational))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<String>::deserialize(d)?;
            raw.iter()
                .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// p-adic valuation, `Infinity` only for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Equal,
            (Valuation::Infinity, Valuation::Finite(_)) => Greater,
            (Valuation::Finite(_), Valuation::Infinity) => Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Valuation::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Valuation::Infinity),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad valuation `{s}`"))),
        }
    }
}

/// Nonempty, strictly increasing list of distinct primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new(primes: Vec<u64>) -> Result<Self, ArithError> {
        if primes.is_empty() || primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ArithError::MalformedPrimeSet);
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(ArithError::NotPrime(p));
        }
        Ok(PrimeSet(primes))
    }

    pub fn primes(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.0.binary_search(&p).ok()
    }
}

impl<'de> Deserialize<'de> for PrimeSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PrimeSet::new(Vec::<u64>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn strip_factor(mut n: BigInt, p: &BigInt) -> (BigInt, i64) {
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return (n, count);
        }
        n = q;
        count += 1;
    }
}

pub fn vp(q: &Rational, p: u64) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinity;
    }
    let p = BigInt::from(p);
    let (_, up) = strip_factor(q.numer().clone(), &p);
    let (_, down) = strip_factor(q.denom().clone(), &p);
    Valuation::Finite(up - down)
}

/// Removes every factor from `primes` and returns the cofactor.
fn strip_primes(n: &BigInt, primes: &PrimeSet) -> BigInt {
    primes
        .primes()
        .iter()
        .fold(n.clone(), |acc, &p| strip_factor(acc, &BigInt::from(p)).0)
}

pub fn in_localization(q: &Rational, primes: &PrimeSet) -> bool {
    strip_primes(q.denom(), primes).is_one()
}

/// A unit `sign * prod p^e` of `Z[P^-1]`; exponents are indexed like the prime set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PUnit {
    pub sign: i8,
    pub exponents: Vec<i64>,
}

impl PUnit {
    pub fn value(&self, primes: &PrimeSet) -> Rational {
        let mut q = integer(self.sign as i64);
        for (&p, &e) in primes.primes().iter().zip(&self.exponents) {
            q *= prime_power(p, e);
        }
        q
    }
}

pub fn unit_decompose(q: &Rational, primes: &PrimeSet) -> Result<PUnit, ArithError> {
    let not_unit = || ArithError::NotAUnit(format_rational(q));
    if q.is_zero() {
        return Err(not_unit());
    }
    let outside_num = strip_primes(&q.numer().abs(), primes);
    let outside_den = strip_primes(q.denom(), primes);
    if !outside_num.is_one() || !outside_den.is_one() {
        return Err(not_unit());
    }
    let exponents = primes
        .primes()
        .iter()
        .map(|&p| vp(q, p).finite().expect("nonzero"))
        .collect();
    Ok(PUnit {
        sign: if q.is_negative() { -1 } else { 1 },
        exponents,
    })
}

/// Residue of `q` modulo `modulus`, for `q` with denominator coprime to the modulus.
fn residue(q: &Rational, modulus: &BigInt) -> BigInt {
    let den = q.denom().mod_floor(modulus);
    let egcd = den.extended_gcd(modulus);
    debug_assert!(egcd.gcd.is_one());
    (q.numer() * egcd.x).mod_floor(modulus)
}

/// Finds `x` in `Z[P^-1]` with `vp(x - target_p, p) >= precision` for each `p`.
///
/// Denominators are cleared by `D = prod_{p: vp(target_p) < 0} p^{-v}` where `v`
/// is the least valuation among the targets; an integer `n` is then fitted to the
/// scaled targets by CRT and `x = n / D`. When every scaled target is the same
/// integer that integer is used as is, which returns targets already in the ring.
pub fn crt_approximate(
    targets: &BTreeMap<u64, Rational>,
    precision: i64,
    primes: &PrimeSet,
) -> Result<Rational, ArithError> {
    let keys: Vec<u64> = targets.keys().copied().collect();
    if keys != primes.primes() {
        return Err(ArithError::TargetMismatch {
            expected: primes.primes().to_vec(),
            found: keys,
        });
    }
    let vals: Vec<Valuation> = primes.primes().iter().map(|&p| vp(&targets[&p], p)).collect();
    let Some(v) = vals.iter().filter_map(|v| v.finite()).min() else {
        return Ok(Rational::zero());
    };
    let mut clear = BigInt::one();
    for (&p, val) in primes.primes().iter().zip(&vals) {
        if *val < Valuation::Finite(0) {
            clear *= num_traits::pow(BigInt::from(p), (-v) as usize);
        }
    }
    let clear_q = Rational::from_integer(clear.clone());
    let scaled: Vec<Rational> = primes.primes().iter().map(|p| &targets[p] * &clear_q).collect();

    if scaled[0].is_integer() && scaled.iter().all(|s| *s == scaled[0]) {
        return Ok(&scaled[0] / &clear_q);
    }

    // x = n / D has vp(x - t) = vp(n - D t) - vp(D), so n needs precision + vp(D).
    let mut acc = BigInt::zero();
    let mut modulus = BigInt::one();
    for ((&p, val), target) in primes.primes().iter().zip(&vals).zip(&scaled) {
        let shift = if *val < Valuation::Finite(0) { -v } else { 0 };
        let needed = precision + shift;
        if needed <= 0 {
            continue;
        }
        let m_p = num_traits::pow(BigInt::from(p), needed as usize);
        let r_p = residue(target, &m_p);
        // Combine acc (mod modulus) with r_p (mod m_p); the moduli are coprime.
        let egcd = modulus.extended_gcd(&m_p);
        let step = ((&r_p - &acc) * &egcd.x).mod_floor(&m_p);
        acc += &modulus * step;
        modulus *= &m_p;
        acc = acc.mod_floor(&modulus);
    }
    Ok(Rational::new(acc, clear))
}

/// Returns a prime `p` with `vp(x - y) <= vp(x) + 1`, isolating `x` among the units.
pub fn discreteness_gap(
    x: &Rational,
    y: &Rational,
    primes: &PrimeSet,
) -> Result<(u64, Valuation), ArithError> {
    if x == y {
        return Err(ArithError::EqualInputs);
    }
    unit_decompose(x, primes)?;
    unit_decompose(y, primes)?;
    let diff = x - y;
    for &p in primes.primes() {
        let gap = vp(&diff, p);
        let bound = vp(x, p).finite().expect("unit") + 1;
        if gap <= Valuation::Finite(bound) {
            return Ok((p, gap));
        }
    }
    Err(ArithError::NoWitness {
        x: format_rational(x),
        y: format_rational(y),
    })
}

/// Converts a small rational to `i64` when it is an integer in range.
pub fn as_small_integer(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}
