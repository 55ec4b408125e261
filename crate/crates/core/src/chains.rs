//! Augmented chain complexes of translate families and their reduced homology.
//!
//! Chains are normalized: the basis in degree `k` is the set of nondegenerate
//! `k`-simplices and degenerate faces are dropped from boundaries. Degree `-1`
//! is a single copy of the ring, reached by the augmentation `ε(v) = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::is_prime;
use crate::linalg::{self, Integers, PrimeField, Ring, SparseRow};
use crate::simplicial::{Simplex, TranslateFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainsError {
    #[error("the smaller family is not contained in the larger one")]
    NotASubfamily,
    #[error("stage {0} is not contained in stage {1}")]
    NotNested(usize, usize),
    #[error("unknown ring `{0}`; expected Z, Q or F_p")]
    BadRing(String),
}

/// Coefficient ring of a chain complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::Rationals => f.write_str("Q"),
            RingSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = ChainsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Z" | "ZZ" | "integers" => Ok(RingSpec::Integers),
            "Q" | "QQ" | "rationals" => Ok(RingSpec::Rationals),
            _ => t
                .strip_prefix("F_")
                .or_else(|| t.strip_prefix("F"))
                .or_else(|| t.strip_prefix("GF"))
                .and_then(|p| p.parse::<u64>().ok())
                .filter(|&p| is_prime(p))
                .map(RingSpec::PrimeField)
                .ok_or_else(|| ChainsError::BadRing(s.to_string())),
        }
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Sparse matrix with entries reduced into the ring (`[0, p)` over `F_p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn add_to(&mut self, r: usize, c: usize, v: i64) {
        let e = self.entries.entry((r, c)).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    fn reduce(mut self, ring: RingSpec) -> Self {
        if let RingSpec::PrimeField(p) = ring {
            let field = PrimeField { p };
            for v in self.entries.values_mut() {
                *v = BigInt::from(field.from_bigint(v));
            }
            self.entries.retain(|_, v| !v.is_zero());
        }
        self
    }

    /// Product in the ring.
    pub fn mul(&self, other: &SparseMatrix, ring: RingSpec) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut by_row: HashMap<usize, Vec<(usize, &BigInt)>> = HashMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                let e = out.entries.entry((r, c)).or_default();
                *e += a * b;
            }
        }
        out.entries.retain(|_, v| !v.is_zero());
        out.reduce(ring)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn sparse_rows<R: Ring>(&self, ring: &R) -> Vec<SparseRow<R::E>> {
        let mut rows: Vec<SparseRow<R::E>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, ring.from_bigint(v));
        }
        rows
    }

    fn dense<R: Ring>(&self, ring: &R) -> Vec<Vec<R::E>> {
        let mut out = vec![vec![ring.zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = ring.from_bigint(v);
        }
        out
    }

    /// Rank over the ring's fraction field (`Q` for `Z`).
    pub fn rank(&self, ring: RingSpec) -> usize {
        match ring {
            RingSpec::Integers | RingSpec::Rationals => {
                linalg::rank(&Integers, self.sparse_rows(&Integers), self.cols)
            }
            RingSpec::PrimeField(p) => {
                let f = PrimeField { p };
                linalg::rank(&f, self.sparse_rows(&f), self.cols)
            }
        }
    }

    /// Integer invariant factors, absolute values, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut f: Vec<BigInt> = linalg::invariant_factors(&Integers, self.sparse_rows(&Integers), self.cols)
            .into_iter()
            .map(|v| v.abs())
            .collect();
        f.sort();
        f
    }

    fn with_extra_columns(&self, extra: &[BTreeMap<usize, BigInt>]) -> SparseMatrix {
        let mut out = self.clone();
        for (j, col) in extra.iter().enumerate() {
            for (&r, v) in col {
                if !v.is_zero() {
                    out.entries.insert((r, self.cols + j), v.clone());
                }
            }
        }
        out.cols += extra.len();
        out
    }
}

/// Ordered basis of `k`-chains.
#[derive(Debug, Clone)]
pub struct ChainBasis {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl ChainBasis {
    fn new(simplices: Vec<Simplex>) -> Self {
        let index = simplices.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        ChainBasis { simplices, index }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// Lazily materialised augmented chain complex of one family.
pub struct ChainComplex<'a> {
    family: &'a TranslateFamily,
    normalized: bool,
    bases: HashMap<usize, ChainBasis>,
}

impl<'a> ChainComplex<'a> {
    pub fn normalized(family: &'a TranslateFamily) -> Self {
        ChainComplex { family, normalized: true, bases: HashMap::new() }
    }

    /// Complex on all tuples, degenerate ones included.
    pub fn full(family: &'a TranslateFamily) -> Self {
        ChainComplex { family, normalized: false, bases: HashMap::new() }
    }

    pub fn basis(&mut self, k: usize) -> &ChainBasis {
        let (family, normalized) = (self.family, self.normalized);
        self.bases.entry(k).or_insert_with(|| {
            ChainBasis::new(if normalized {
                family.nondegenerate_simplices(k)
            } else {
                family.all_simplices(k)
            })
        })
    }

    /// Matrix of `∂_k : C_k -> C_{k-1}`; for `k = 0` the augmentation row.
    pub fn boundary(&mut self, k: usize, ring: RingSpec) -> SparseMatrix {
        let cols = self.basis(k).len();
        if k == 0 {
            let mut m = SparseMatrix::zeros(1, cols);
            for c in 0..cols {
                m.add_to(0, c, 1);
            }
            return m.reduce(ring);
        }
        let normalized = self.normalized;
        let targets = self.basis(k - 1).clone();
        let sources = self.basis(k);
        let mut m = SparseMatrix::zeros(targets.len(), cols);
        for (c, s) in sources.simplices().iter().enumerate() {
            for i in 0..=k {
                let face = s.face(i).expect("k >= 1");
                if normalized && !face.is_nondegenerate() {
                    continue;
                }
                let r = targets.position(&face).expect("faces stay in the family");
                m.add_to(r, c, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m.reduce(ring)
    }

    pub fn reduced_homology(&mut self, k: usize, ring: RingSpec) -> HomologyResult {
        let n_k = self.basis(k).len();
        let d_k = self.boundary(k, ring);
        let d_k1 = self.boundary(k + 1, ring);
        let rank_k = d_k.rank(ring);
        match ring {
            RingSpec::Integers => {
                let factors = d_k1.invariant_factors();
                let rank_k1 = factors.len();
                HomologyResult::Integral {
                    free_rank: n_k - rank_k - rank_k1,
                    torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
                }
            }
            _ => HomologyResult::Field { dimension: n_k - rank_k - d_k1.rank(ring) },
        }
    }
}

pub fn boundary_matrix(family: &TranslateFamily, k: usize, ring: RingSpec) -> SparseMatrix {
    ChainComplex::normalized(family).boundary(k, ring)
}

pub fn reduced_homology(family: &TranslateFamily, k: usize, ring: RingSpec) -> HomologyResult {
    ChainComplex::normalized(family).reduced_homology(k, ring)
}

/// Reference computation on the unnormalized complex (every tuple is a basis element).
pub fn reduced_homology_full_basis(family: &TranslateFamily, k: usize, ring: RingSpec) -> HomologyResult {
    ChainComplex::full(family).reduced_homology(k, ring)
}

/// Reduced homology in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum HomologyResult {
    Integral {
        free_rank: usize,
        #[serde(serialize_with = "serialize_bigints")]
        torsion: Vec<BigInt>,
    },
    Field { dimension: usize },
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

impl HomologyResult {
    pub fn is_zero(&self) -> bool {
        match self {
            HomologyResult::Integral { free_rank, torsion } => *free_rank == 0 && torsion.is_empty(),
            HomologyResult::Field { dimension } => *dimension == 0,
        }
    }

    /// Free rank over `Z`, dimension over a field.
    pub fn rank(&self) -> usize {
        match self {
            HomologyResult::Integral { free_rank, .. } => *free_rank,
            HomologyResult::Field { dimension } => *dimension,
        }
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyResult::Integral { free_rank, torsion } => {
                write!(f, "Z^{free_rank}")?;
                for t in torsion {
                    write!(f, " + Z/{t}")?;
                }
                Ok(())
            }
            HomologyResult::Field { dimension } => write!(f, "dim {dimension}"),
        }
    }
}

/// Whether `H̃_k(small) -> H̃_k(big)` induced by inclusion is zero.
///
/// A basis of `k`-cycles of `small` is pushed into `big`; the map is trivial iff
/// the cycles lie in the image of `∂_{k+1}` of `big`. Over `Z` the column
/// lattice must be unchanged, which is tested by equal rank and equal product of
/// invariant factors.
pub fn induced_map_trivial(
    small: &TranslateFamily,
    big: &TranslateFamily,
    k: usize,
    ring: RingSpec,
) -> Result<bool, ChainsError> {
    if !small.is_subfamily_of(big) {
        return Err(ChainsError::NotASubfamily);
    }
    let mut cs = ChainComplex::normalized(small);
    let mut cb = ChainComplex::normalized(big);
    let d_small = cs.boundary(k, ring);
    let small_basis = cs.basis(k).clone();
    let big_basis = cb.basis(k).clone();
    let embed = |v: Vec<BigInt>| -> BTreeMap<usize, BigInt> {
        v.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (big_basis.position(&small_basis.simplices()[i]).expect("subfamily"), c))
            .collect()
    };
    let cycles: Vec<BTreeMap<usize, BigInt>> = match ring {
        RingSpec::Integers | RingSpec::Rationals => {
            linalg::kernel_basis(&Integers, &d_small.dense(&Integers), d_small.cols)
                .into_iter()
                .map(embed)
                .collect()
        }
        RingSpec::PrimeField(p) => {
            let f = PrimeField { p };
            linalg::kernel_basis(&f, &d_small.dense(&f), d_small.cols)
                .into_iter()
                .map(|v| embed(v.into_iter().map(BigInt::from).collect()))
                .collect()
        }
    };
    if cycles.is_empty() {
        return Ok(true);
    }
    let boundaries = cb.boundary(k + 1, ring);
    let augmented = boundaries.with_extra_columns(&cycles).reduce(ring);
    Ok(match ring {
        RingSpec::Integers => {
            let before = boundaries.invariant_factors();
            let after = augmented.invariant_factors();
            before.len() == after.len()
                && before.iter().product::<BigInt>() == after.iter().product::<BigInt>()
        }
        _ => boundaries.rank(ring) == augmented.rank(ring),
    })
}

/// Least later stage into which each stage's homology dies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedProbeReport {
    pub degree: usize,
    pub ring: RingSpec,
    pub pairs: Vec<ProbePair>,
    #[serde(skip)]
    pub stage_homology: Vec<HomologyResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbePair {
    pub alpha: usize,
    /// `None` when no stage inside the window kills the homology of `alpha`.
    pub beta: Option<usize>,
}

pub fn check_nested(stages: &[TranslateFamily]) -> Result<(), ChainsError> {
    for (i, w) in stages.windows(2).enumerate() {
        if !w[0].is_subfamily_of(&w[1]) {
            return Err(ChainsError::NotNested(i, i + 1));
        }
    }
    Ok(())
}

pub fn essential_acyclicity_probe(
    stages: &[TranslateFamily],
    k: usize,
    ring: RingSpec,
) -> Result<DirectedProbeReport, ChainsError> {
    check_nested(stages)?;
    let stage_homology: Vec<HomologyResult> =
        stages.iter().map(|s| reduced_homology(s, k, ring)).collect();
    let mut pairs = Vec::with_capacity(stages.len());
    for alpha in 0..stages.len() {
        let beta = if stage_homology[alpha].is_zero() {
            Some(alpha)
        } else {
            let mut found = None;
            for beta in alpha + 1..stages.len() {
                if induced_map_trivial(&stages[alpha], &stages[beta], k, ring)? {
                    found = Some(beta);
                    break;
                }
            }
            found
        };
        pairs.push(ProbePair { alpha, beta });
    }
    Ok(DirectedProbeReport { degree: k, ring, pairs, stage_homology })
}
