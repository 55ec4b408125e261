//! Σ-set verdicts from the closed-form classifications, plus the filtration windows
//! `G_χ · EC` and `Γ_χ · EF` they are about.
//!
//! Verdicts never come from probes: the probes only produce evidence reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::json;
use thiserror::Error;

use crate::arith::{format_rational, PrimeSet, Rational};
use crate::chains::{ChainsError, RingSpec};
use crate::groups::{ball, Character, Group, GroupError};
use crate::hecke::{coset_ball, HeckeError, HeckePair};
use crate::simplicial::{homotopy_check, Interner, SimplicialError, TranslateFamily, VertexId, VertexMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigmaError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Chains(#[from] ChainsError),
    #[error("BS(m,n) needs nonzero m and n")]
    ZeroParameter,
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("{found} coordinates given, the character space has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("radii must be strictly increasing")]
    RadiiNotIncreasing,
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("cannot parse `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Member,
    NonMember,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Member => "MEMBER",
            Verdict::NonMember => "NON_MEMBER",
            Verdict::Unknown => "UNKNOWN",
        })
    }
}

/// Which group the Σ-set lives on: the completion or the discrete group itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Completion,
    Discrete,
}

impl FromStr for Target {
    type Err = SigmaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "completion" => Ok(Target::Completion),
            "discrete" => Ok(Target::Discrete),
            _ => Err(SigmaError::Parse(s.to_string())),
        }
    }
}

/// Homotopical Σ-sets, or homological ones over a coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    Homotopical,
    Homological(RingSpec),
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::Homotopical => f.write_str("homotopical"),
            Theory::Homological(r) => write!(f, "homological({r})"),
        }
    }
}

impl FromStr for Theory {
    type Err = SigmaError;

    /// `homotopical`, `homological` (over Z) or `homological(F_3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SigmaError::Parse(s.to_string());
        let lower = s.trim();
        if lower.eq_ignore_ascii_case("homotopical") {
            return Ok(Theory::Homotopical);
        }
        if lower.eq_ignore_ascii_case("homological") {
            return Ok(Theory::Homological(RingSpec::Integers));
        }
        let ring = lower
            .strip_prefix("homological(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        Ok(Theory::Homological(ring.parse().map_err(|_| bad())?))
    }
}

impl Serialize for Theory {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Finiteness degree `k`, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Finite(u32),
    Infinity,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(k) => write!(f, "{k}"),
            Degree::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Degree {
    type Err = SigmaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Degree::Infinity),
            t => t.parse().map(Degree::Finite).map_err(|_| SigmaError::Parse(s.to_string())),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::Finite(k) => s.serialize_u32(*k),
            Degree::Infinity => s.serialize_str("inf"),
        }
    }
}

/// The clause of a classification theorem a verdict rests on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    BsUnimodular,
    BsAscending,
    BsDescending,
    BsGeneric,
    TriOutsideCone,
    TriConeInfinite,
    TriLowStratum,
    TriLargePrimes,
    TriGap,
}

/// Entry of the bundled citation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Citation {
    pub tag: &'static str,
    pub statement: &'static str,
    pub formula: &'static str,
}

impl Clause {
    pub const ALL: [Clause; 9] = [
        Clause::BsUnimodular,
        Clause::BsAscending,
        Clause::BsDescending,
        Clause::BsGeneric,
        Clause::TriOutsideCone,
        Clause::TriConeInfinite,
        Clause::TriLowStratum,
        Clause::TriLargePrimes,
        Clause::TriGap,
    ];

    pub fn tag(self) -> &'static str {
        self.citation().tag
    }

    pub fn citation(self) -> Citation {
        let (tag, statement, formula) = match self {
            Clause::BsUnimodular => (
                "bs.unimodular",
                "Σ-sets of the completion of BS(m,n), |m| = |n| = 1",
                "Σ^k = Hom(G,R) = Rτ for all k",
            ),
            Clause::BsAscending => (
                "bs.ascending",
                "Σ-sets of the completion of BS(m,n), |m| = 1 < |n|",
                "Σ^k = {λτ : λ <= 0} for all k",
            ),
            Clause::BsDescending => (
                "bs.descending",
                "Σ-sets of the completion of BS(m,n), |m| > 1 = |n|",
                "Σ^k = {λτ : λ >= 0} for all k",
            ),
            Clause::BsGeneric => (
                "bs.generic",
                "Σ-sets of the completion of BS(m,n), |m|, |n| >= 2",
                "Σ^k = {0} for all k",
            ),
            Clause::TriOutsideCone => (
                "tri.outside_cone",
                "Σ-sets of B_n(Z[P^-1]) and its completion, characters off the cone",
                "Hom(Γ,R) \\ C ⊆ Σ^∞",
            ),
            Clause::TriConeInfinite => (
                "tri.cone_infinite",
                "Σ^∞ of B_n(Z[P^-1]) and its completion",
                "Σ^∞ = Hom(Γ,R) \\ C",
            ),
            Clause::TriLowStratum => (
                "tri.low_stratum",
                "upper bound for Σ^k of B_n(Z[P^-1]) and its completion",
                "Σ^k ⊆ Hom(Γ,R) \\ C^(k)",
            ),
            Clause::TriLargePrimes => (
                "tri.large_primes",
                "Σ^k of B_n(Z[P^-1]) and its completion when every p >= 2^(n-2)",
                "Σ^k = Hom(Γ,R) \\ C^(k)",
            ),
            Clause::TriGap => (
                "tri.gap",
                "Σ^k of B_n(Z[P^-1]) on C \\ C^(k) with some p < 2^(n-2)",
                "not determined by the classification",
            ),
        };
        Citation { tag, statement, formula }
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

pub fn citation_table() -> Vec<Citation> {
    Clause::ALL.iter().map(|c| c.citation()).collect()
}

pub fn lookup_citation(tag: &str) -> Option<Citation> {
    Clause::ALL.iter().map(|c| c.citation()).find(|c| c.tag == tag)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaVerdict {
    pub verdict: Verdict,
    pub clause: Clause,
    pub inputs: serde_json::Value,
}

/// Σ-set membership of `λτ` for `BS(m, n)`. The homological verdict coincides with
/// the homotopical one for every ring, and the discrete group has the same table on
/// the line `Rτ`.
pub fn bs_sigma_classify(
    m: i64,
    n: i64,
    lambda: &Rational,
    k: Degree,
    target: Target,
    theory: Theory,
) -> Result<SigmaVerdict, SigmaError> {
    if m == 0 || n == 0 {
        return Err(SigmaError::ZeroParameter);
    }
    if k == Degree::Finite(0) {
        return Err(SigmaError::BadDegree);
    }
    let (m1, n1) = (m.abs() == 1, n.abs() == 1);
    let (clause, member) = match (m1, n1) {
        (true, true) => (Clause::BsUnimodular, true),
        (true, false) => (Clause::BsAscending, !lambda.is_positive()),
        (false, true) => (Clause::BsDescending, !lambda.is_negative()),
        (false, false) => (Clause::BsGeneric, lambda.is_zero()),
    };
    Ok(SigmaVerdict {
        verdict: if member { Verdict::Member } else { Verdict::NonMember },
        clause,
        inputs: json!({
            "m": m,
            "n": n,
            "lambda": format_rational(lambda),
            "k": k,
            "target": target,
            "theory": theory,
        }),
    })
}

/// Coordinates of a character of `B_n(Z[P^-1])` over the basis `χ_{k,p}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeCoordinates {
    #[serde(with = "crate::arith::rational_serde::vec")]
    pub coefficients: Vec<Rational>,
}

impl ConeCoordinates {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        ConeCoordinates { coefficients }
    }

    pub fn nonzero_count(&self) -> usize {
        self.coefficients.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn any_negative(&self) -> bool {
        self.coefficients.iter().any(Signed::is_negative)
    }
}

impl From<&Character> for ConeCoordinates {
    fn from(c: &Character) -> Self {
        ConeCoordinates::new(c.coefficients.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConeMembership {
    pub in_c: bool,
    /// Number of nonzero coefficients, when in `C`.
    pub stratum: Option<usize>,
}

/// `C` is the closed positive orthant with the origin removed.
pub fn cone_membership(c: &ConeCoordinates) -> ConeMembership {
    let nonzero = c.nonzero_count();
    let in_c = !c.any_negative() && nonzero > 0;
    ConeMembership { in_c, stratum: in_c.then_some(nonzero) }
}

/// Σ^k membership for `B_n(Z[P^-1])` (identical for its completion).
pub fn tri_sigma_classify(
    n: usize,
    primes: &PrimeSet,
    c: &ConeCoordinates,
    k: Degree,
    target: Target,
) -> Result<SigmaVerdict, SigmaError> {
    if n < 2 {
        return Err(GroupError::DimensionTooSmall.into());
    }
    let expected = (n - 1) * primes.len();
    if c.coefficients.len() != expected {
        return Err(SigmaError::DimensionMismatch { expected, found: c.coefficients.len() });
    }
    if k == Degree::Finite(0) {
        return Err(SigmaError::BadDegree);
    }
    let cone = cone_membership(c);
    let large_primes = primes.primes().iter().all(|&p| (p as u128) >= 1u128 << (n - 2));
    let (verdict, clause) = match (cone.stratum, k) {
        (None, _) => (Verdict::Member, Clause::TriOutsideCone),
        (Some(_), Degree::Infinity) => (Verdict::NonMember, Clause::TriConeInfinite),
        (Some(s), Degree::Finite(k)) if s <= k as usize => (Verdict::NonMember, Clause::TriLowStratum),
        (Some(_), _) if large_primes => (Verdict::Member, Clause::TriLargePrimes),
        (Some(_), _) => (Verdict::Unknown, Clause::TriGap),
    };
    let ps: Vec<u64> = primes.primes().to_vec();
    Ok(SigmaVerdict {
        verdict,
        clause,
        inputs: json!({
            "n": n,
            "primes": ps,
            "coordinates": c.coefficients.iter().map(format_rational).collect::<Vec<_>>(),
            "k": k,
            "target": target,
        }),
    })
}

/// Nested windows of a filtration with a shared vertex interner. Part `i` of every
/// stage is the translate by `translates[i]`.
#[derive(Debug, Clone)]
pub struct Filtration<V: std::hash::Hash + Eq> {
    pub vertices: Interner<V>,
    pub translates: Vec<V>,
    pub radii: Vec<usize>,
    pub stages: Vec<TranslateFamily>,
}

fn check_radii(radii: &[usize]) -> Result<(), SigmaError> {
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SigmaError::RadiiNotIncreasing);
    }
    Ok(())
}

/// `{g ∈ ball(W) : χ(g) >= 0}` in ball order.
pub fn positive_translates<G: Group>(group: &G, chi: &Character, w: usize) -> Result<Vec<G::Element>, SigmaError> {
    let mut out = Vec::new();
    for g in ball(group, w).elements() {
        if !group.char_eval(chi, g)?.is_negative() {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Stage for radius `r`: parts `g · ball(r)` over `g ∈ ball(W)` with `χ(g) >= 0`.
pub fn build_group_filtration<G: Group>(
    group: &G,
    chi: &Character,
    w: usize,
    radii: &[usize],
) -> Result<Filtration<G::Element>, SigmaError> {
    check_radii(radii)?;
    let translates = positive_translates(group, chi, w)?;
    let mut vertices = Interner::new();
    let max_r = radii.last().copied().unwrap_or(0);
    let full = ball(group, max_r);
    let mut stages = Vec::new();
    for &r in radii {
        let c: Vec<&G::Element> = full.within(r).collect();
        let parts: Vec<Vec<VertexId>> = translates
            .iter()
            .map(|g| c.iter().map(|x| vertices.intern(&group.multiply(g, x))).collect())
            .collect();
        let labels = translates.iter().map(|g| group.format_element(g)).collect();
        stages.push(TranslateFamily::new(parts)?.with_labels(labels));
    }
    Ok(Filtration { vertices, translates, radii: radii.to_vec(), stages })
}

/// Stage for radius `r`: parts `g · F_r` with `F_r = coset_ball(r)`, vertices being
/// canonical coset representatives.
pub fn build_coset_filtration<H: HeckePair>(
    pair: &H,
    chi: &Character,
    w: usize,
    radii: &[usize],
) -> Result<Filtration<H::Element>, SigmaError> {
    pair.check_lambda_vanishing(chi)?;
    check_radii(radii)?;
    let translates = positive_translates(pair, chi, w)?;
    let mut vertices = Interner::new();
    let full = coset_ball(pair, radii.last().copied().unwrap_or(0));
    let mut stages = Vec::new();
    for &r in radii {
        let f: Vec<&H::Element> = full.within(r).collect();
        let parts: Vec<Vec<VertexId>> = translates
            .iter()
            .map(|g| {
                f.iter().map(|c| vertices.intern(&pair.coset_canonical(&pair.multiply(g, c)))).collect()
            })
            .collect();
        let labels = translates.iter().map(|g| pair.format_element(g)).collect();
        stages.push(TranslateFamily::new(parts)?.with_labels(labels));
    }
    Ok(Filtration { vertices, translates, radii: radii.to_vec(), stages })
}

/// Window sizes for [`phi_psi_roundtrip`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripWindow {
    /// Translates come from `ball(w)`.
    pub w: usize,
    /// `C = ball(c_radius)`.
    pub c_radius: usize,
    /// `F = coset_ball(f_radius)`; must contain `ev(C)`.
    pub f_radius: usize,
    /// Largest `Λ`-word length allowed in `D`.
    pub lambda_radius: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub window: RoundtripWindow,
    pub translates: usize,
    pub psi_of_base: String,
    pub phi_of_identity: String,
    pub phi_psi_vertices: usize,
    pub phi_psi_simplices: usize,
    pub phi_psi_identity: bool,
    /// Least `Λ`-radius making `D` large enough.
    pub lambda_radius_used: usize,
    pub d_size: usize,
    pub psi_phi_homotopy: bool,
    pub witness: Option<String>,
}

impl RoundtripReport {
    pub fn passed(&self) -> bool {
        self.phi_psi_identity && self.psi_phi_homotopy
    }
}

/// `Λ`-words of length `<= radius` with their lengths.
pub fn lambda_ball<H: HeckePair>(pair: &H, radius: usize) -> IndexMap<H::Element, usize> {
    let gens = pair.lambda_generators();
    let mut seen = IndexMap::new();
    seen.insert(pair.identity(), 0);
    let mut frontier = vec![pair.identity()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in &gens {
                let y = pair.multiply(x, &s.element);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), d);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Windowed check that `φ: Γ_χ·EC -> Γ_χ·EF` (evaluation at `Λ`) and
/// `ψ: cΛ ↦ [c]` (the canonical section) are mutually inverse up to homotopy:
/// `φ ∘ ψ` is the identity on the coset side, and `ψ ∘ φ` is homotopic to the
/// inclusion inside the stage built from `D = C ∪ [ev(C)] · Λ_ℓ`.
pub fn phi_psi_roundtrip<H: HeckePair>(
    pair: &H,
    chi: &Character,
    window: RoundtripWindow,
) -> Result<RoundtripReport, SigmaError> {
    pair.check_lambda_vanishing(chi)?;
    if window.f_radius < window.c_radius {
        return Err(SigmaError::WindowTooSmall(format!(
            "coset radius {} does not contain ev(ball({}))",
            window.f_radius, window.c_radius
        )));
    }
    let translates = positive_translates(pair, chi, window.w)?;
    let c: Vec<H::Element> = ball(pair, window.c_radius).elements().cloned().collect();
    let f = coset_ball(pair, window.f_radius);

    // (a) φ ∘ ψ on the coset side.
    let mut coset_vertices: BTreeSet<H::Element> = BTreeSet::new();
    let coset_parts: Vec<Vec<H::Element>> = translates
        .iter()
        .map(|g| f.representatives().map(|x| pair.coset_canonical(&pair.multiply(g, x))).collect())
        .collect();
    for part in &coset_parts {
        coset_vertices.extend(part.iter().cloned());
    }
    let psi = |x: &H::Element| pair.coset_canonical(x);
    let phi = |x: &H::Element| pair.coset_canonical(x);
    let mut identity = coset_vertices.iter().all(|v| phi(&psi(v)) == *v);
    let mut rng = ChaCha8Rng::seed_from_u64(window.seed);
    for _ in 0..window.samples {
        let part = &coset_parts[rng.random_range(0..coset_parts.len())];
        let dim = rng.random_range(0..=3usize);
        let simplex: Vec<&H::Element> = (0..=dim).map(|_| &part[rng.random_range(0..part.len())]).collect();
        identity &= simplex.iter().all(|v| phi(&psi(v)) == **v);
    }

    // (b) ψ ∘ φ against the inclusion.
    let lambda = lambda_ball(pair, window.lambda_radius);
    let mut d: IndexMap<H::Element, ()> = c.iter().map(|x| (x.clone(), ())).collect();
    let mut used = 0;
    for g in &translates {
        let g_inv = pair.invert(g);
        for x in &c {
            let rep_c = pair.coset_canonical(x);
            let target = pair.multiply(&g_inv, &psi(&pair.multiply(g, x)));
            let l = pair.multiply(&pair.invert(&rep_c), &target);
            let Some(&len) = lambda.get(&l) else {
                return Err(SigmaError::WindowTooSmall(format!(
                    "Λ-element {} is longer than the Λ-radius {}",
                    pair.format_element(&l),
                    window.lambda_radius
                )));
            };
            used = used.max(len);
            d.insert(target, ());
        }
    }
    let mut vertices = Interner::new();
    let domain_parts: Vec<Vec<VertexId>> =
        translates.iter().map(|g| c.iter().map(|x| vertices.intern(&pair.multiply(g, x))).collect()).collect();
    let codomain_parts: Vec<Vec<VertexId>> = translates
        .iter()
        .map(|g| d.keys().map(|x| vertices.intern(&pair.multiply(g, x))).collect())
        .collect();
    let domain = TranslateFamily::new(domain_parts)?;
    let codomain = TranslateFamily::new(codomain_parts)?;
    let mut inclusion = BTreeMap::new();
    let mut psi_phi = BTreeMap::new();
    for v in domain.vertices() {
        let x = vertices.resolve(v).clone();
        inclusion.insert(v, v);
        let image = vertices.get(&psi(&x)).ok_or_else(|| {
            SigmaError::WindowTooSmall(format!("ψφ({}) is outside the D-stage", pair.format_element(&x)))
        })?;
        psi_phi.insert(v, image);
    }
    let check = homotopy_check(&VertexMap::new(inclusion), &VertexMap::new(psi_phi), &domain, &codomain)?;
    let witness = check.witness.map(|w| {
        let names: Vec<String> =
            w.mixed.vertices().iter().map(|&v| pair.format_element(vertices.resolve(v))).collect();
        format!("({})", names.join(", "))
    });
    Ok(RoundtripReport {
        window,
        translates: translates.len(),
        psi_of_base: pair.format_element(&psi(&pair.identity())),
        phi_of_identity: pair.format_element(&phi(&pair.identity())),
        phi_psi_vertices: coset_vertices.len(),
        phi_psi_simplices: window.samples,
        phi_psi_identity: identity,
        lambda_radius_used: used,
        d_size: d.len(),
        psi_phi_homotopy: check.holds,
        witness,
    })
}
