//! Concrete groups with solvable word problem: the infinite cyclic group,
//! Baumslag–Solitar groups `BS(m, n)` and upper-triangular groups `B_n(Z[P^-1])`.

mod bs;
mod cayley;
mod cyclic;
mod tri;

use std::fmt;
use std::fmt::Debug;
use std::hash::Hash;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{parse_rational, ArithError, PrimeSet, Rational};

pub use bs::{BaumslagSolitar, BsWord, Letter};
pub use cayley::{
    cayley_ball, connectivity_probe, ALineProfile, CayleyBall, ConnectivityReport, ConnectivityStep,
};
pub use cyclic::InfiniteCyclic;
pub use tri::{
    character_basis, unipotent_conjugation_check, ConjugationCheck, TriMatrix, TriangularGroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("BS(m,n) needs nonzero m and n")]
    ZeroParameter,
    #[error("triangular groups need n >= 2")]
    DimensionTooSmall,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("character has {found} coefficients, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("conjugation identity failed: {0}")]
    ConjugationMismatch(String),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("prime {0} is not in the prime set")]
    PrimeNotInSet(u64),
    #[error("radius {requested} exceeds the built ball radius {available}")]
    RadiusTooLarge { requested: usize, available: usize },
    #[error("ball of radius {radius} has more than {limit} elements")]
    BallTooLarge { radius: usize, limit: usize },
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// One entry of a symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator<E> {
    pub label: String,
    pub element: E,
}

/// A group with exact canonical forms.
pub trait Group {
    type Element: Clone + Eq + Hash + Ord + Debug;

    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;
    fn invert(&self, g: &Self::Element) -> Self::Element;
    /// Symmetric generating set; inverses are listed explicitly.
    fn generators(&self) -> Vec<Generator<Self::Element>>;
    /// Dimension of the character space in the basis used by [`Group::char_eval`].
    fn character_dim(&self) -> usize;
    fn char_eval(&self, chi: &Character, g: &Self::Element) -> Result<Rational, GroupError>;
    fn format_element(&self, g: &Self::Element) -> String;

    fn power(&self, g: &Self::Element, k: i64) -> Self::Element {
        let base = if k < 0 { self.invert(g) } else { g.clone() };
        (0..k.unsigned_abs()).fold(self.identity(), |acc, _| self.multiply(&acc, &base))
    }

    fn product<'a, I>(&self, elements: I) -> Self::Element
    where
        I: IntoIterator<Item = &'a Self::Element>,
        Self::Element: 'a,
    {
        elements.into_iter().fold(self.identity(), |acc, g| self.multiply(&acc, g))
    }

    fn check_character(&self, chi: &Character) -> Result<(), GroupError> {
        if chi.coefficients.len() != self.character_dim() {
            return Err(GroupError::DimensionMismatch {
                expected: self.character_dim(),
                found: chi.coefficients.len(),
            });
        }
        Ok(())
    }
}

/// Coefficient vector over the family's character basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    #[serde(with = "crate::arith::rational_serde::vec")]
    pub coefficients: Vec<Rational>,
}

impl Character {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        Character { coefficients }
    }

    pub fn zero(dim: usize) -> Self {
        Character::new(vec![Rational::default(); dim])
    }

    /// Parses comma-separated rationals, e.g. `1,-1/2,0`.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        s.split(',')
            .map(|c| parse_rational(c).map_err(GroupError::from))
            .collect::<Result<Vec<_>, _>>()
            .map(Character::new)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parsed group family, e.g. `BS(2,3)`, `TRI(3;2,5)` or `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic,
    Bs { m: i64, n: i64 },
    Tri { n: usize, primes: PrimeSet },
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || GroupError::Parse(s.to_string());
        if compact == "Z" {
            return Ok(GroupSpec::Cyclic);
        }
        let inner = |prefix: &str| -> Option<String> {
            compact
                .strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')
                .map(str::to_string)
        };
        if let Some(body) = inner("BS") {
            let (m, n) = body.split_once(',').ok_or_else(bad)?;
            let m: i64 = m.parse().map_err(|_| bad())?;
            let n: i64 = n.parse().map_err(|_| bad())?;
            if m == 0 || n == 0 {
                return Err(GroupError::ZeroParameter);
            }
            return Ok(GroupSpec::Bs { m, n });
        }
        if let Some(body) = inner("TRI") {
            let (n, ps) = body.split_once(';').ok_or_else(bad)?;
            let n: usize = n.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(GroupError::DimensionTooSmall);
            }
            let primes = ps
                .split(',')
                .map(|p| p.parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(GroupSpec::Tri { n, primes: PrimeSet::new(primes)? });
        }
        Err(bad())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic => f.write_str("Z"),
            GroupSpec::Bs { m, n } => write!(f, "BS({m},{n})"),
            GroupSpec::Tri { n, primes } => {
                let ps: Vec<String> = primes.primes().iter().map(u64::to_string).collect();
                write!(f, "TRI({n};{})", ps.join(","))
            }
        }
    }
}

/// Distance and one geodesic word (generator indices) for a ball element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallEntry {
    pub distance: usize,
    pub word: Vec<usize>,
}

/// Word-metric ball around the identity, in BFS order.
#[derive(Debug, Clone)]
pub struct Ball<E: Hash + Eq> {
    pub radius: usize,
    elements: IndexMap<E, BallEntry>,
}

impl<E: Clone + Hash + Eq> Ball<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &E) -> bool {
        self.elements.contains_key(g)
    }

    pub fn distance(&self, g: &E) -> Option<usize> {
        self.elements.get(g).map(|e| e.distance)
    }

    pub fn entry(&self, g: &E) -> Option<&BallEntry> {
        self.elements.get(g)
    }

    pub fn index_of(&self, g: &E) -> Option<usize> {
        self.elements.get_index_of(g)
    }

    pub fn get_index(&self, i: usize) -> (&E, &BallEntry) {
        self.elements.get_index(i).expect("index in range")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, &BallEntry)> {
        self.elements.iter()
    }

    pub fn elements(&self) -> impl Iterator<Item = &E> {
        self.elements.keys()
    }

    /// Elements at distance at most `r`.
    pub fn within(&self, r: usize) -> impl Iterator<Item = &E> {
        self.elements.iter().filter(move |(_, e)| e.distance <= r).map(|(g, _)| g)
    }
}

/// All elements of word length at most `radius`, deduplicated by canonical form.
pub fn ball<G: Group>(group: &G, radius: usize) -> Ball<G::Element> {
    ball_limited(group, radius, usize::MAX).expect("no limit")
}

/// [`ball`], giving up once more than `limit` elements have been found.
pub fn ball_limited<G: Group>(group: &G, radius: usize, limit: usize) -> Result<Ball<G::Element>, GroupError> {
    let gens = group.generators();
    let mut elements = IndexMap::new();
    elements.insert(group.identity(), BallEntry { distance: 0, word: vec![] });
    let mut frontier = vec![group.identity()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for g in &frontier {
            let word = elements[g].word.clone();
            for (i, s) in gens.iter().enumerate() {
                let h = group.multiply(g, &s.element);
                if !elements.contains_key(&h) {
                    let mut w = word.clone();
                    w.push(i);
                    elements.insert(h.clone(), BallEntry { distance: d, word: w });
                    next.push(h);
                    if elements.len() > limit {
                        return Err(GroupError::BallTooLarge { radius, limit });
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(Ball { radius, elements })
}

/// Generator word of a ball element, as labels.
pub fn word_labels<G: Group>(group: &G, word: &[usize]) -> Vec<String> {
    let gens = group.generators();
    word.iter().map(|&i| gens[i].label.clone()).collect()
}

/// Product of `len` generators drawn uniformly.
pub fn random_element<G: Group, R: rand::Rng + ?Sized>(group: &G, len: usize, rng: &mut R) -> G::Element {
    let gens = group.generators();
    (0..len).fold(group.identity(), |acc, _| {
        let s = &gens[rng.random_range(0..gens.len())];
        group.multiply(&acc, &s.element)
    })
}
