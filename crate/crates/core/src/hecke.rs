//! Hecke pairs `(Γ, Λ)`: `BS(m, n)` with `Λ = <a>`, and `B_n(Z[P^-1])` with
//! `Λ = B_n(Z)`. Coset spaces are explored through canonical representatives, and
//! elements of the Schlichting completion are seen only through their restrictions to
//! finite coset balls.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::hash::Hash;

use indexmap::{IndexMap, IndexSet};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{integer, prime_power, vp, PrimeSet, Rational, Valuation};
use crate::groups::{BaumslagSolitar, BsWord, Character, Generator, Group, GroupError, TriMatrix, TriangularGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("Λ-orbit exceeded the cap of {cap} points")]
    ExceedsCap { cap: usize },
    #[error("character is nonzero on the Λ-generator {0}")]
    CharacterNotLambdaVanishing(String),
    #[error("partial permutation is undefined at the base coset")]
    UndefinedAtBase,
    #[error("representatives of one coset give different values: {0}")]
    NotWellDefined(String),
    #[error("matrix lies in the normal core")]
    InCore,
    #[error("matrix is not in L = B_n(Z_P) ∩ Γ: {0}")]
    NotInL(String),
    #[error("escape construction failed: {0}")]
    EscapeFailed(String),
}

/// A group with a distinguished commensurated subgroup `Λ` and a computable section
/// `Γ/Λ -> Γ`.
pub trait HeckePair: Group {
    /// Symmetric generating set of `Λ`.
    fn lambda_generators(&self) -> Vec<Generator<Self::Element>>;
    fn in_lambda(&self, g: &Self::Element) -> bool;
    /// Representative of `gΛ`; equal outputs iff `g^-1 h ∈ Λ`.
    fn coset_canonical(&self, g: &Self::Element) -> Self::Element;

    fn same_coset(&self, g: &Self::Element, h: &Self::Element) -> bool {
        self.in_lambda(&self.multiply(&self.invert(g), h))
    }

    /// Errors unless `chi` vanishes on every Λ-generator.
    fn check_lambda_vanishing(&self, chi: &Character) -> Result<(), HeckeError> {
        for s in self.lambda_generators() {
            if !self.char_eval(chi, &s.element)?.is_zero() {
                return Err(HeckeError::CharacterNotLambdaVanishing(s.label));
            }
        }
        Ok(())
    }
}

impl HeckePair for BaumslagSolitar {
    fn lambda_generators(&self) -> Vec<Generator<BsWord>> {
        vec![
            Generator { label: "A".into(), element: self.a_power(-1) },
            Generator { label: "a".into(), element: self.a() },
        ]
    }

    fn in_lambda(&self, g: &BsWord) -> bool {
        g.as_a_power().is_some()
    }

    fn coset_canonical(&self, g: &BsWord) -> BsWord {
        g.strip_tail()
    }
}

impl HeckePair for TriangularGroup {
    fn lambda_generators(&self) -> Vec<Generator<TriMatrix>> {
        let n = self.n();
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let e = TriMatrix::elementary(n, i, j, integer(1)).expect("i < j");
                gens.push(Generator { label: format!("E{}{}", i + 1, j + 1), element: e.clone() });
                gens.push(Generator { label: format!("E{}{}^-1", i + 1, j + 1), element: e.inverse() });
            }
        }
        for k in 0..n - 1 {
            let mut diag = vec![integer(1); n];
            diag[k] = integer(-1);
            diag[k + 1] = integer(-1);
            gens.push(Generator { label: format!("s{}", k + 1), element: TriMatrix::diagonal(diag) });
        }
        gens
    }

    fn in_lambda(&self, g: &TriMatrix) -> bool {
        let n = g.n();
        (0..n).all(|i| {
            let d = g.get(i, i);
            (d.is_one() || *d == -Rational::one()) && (i..n).all(|j| g.get(i, j).is_integer())
        })
    }

    /// Right `Λ`-reduction: flip column pairs `(j, n)` until `g_jj > 0` for `j < n`,
    /// then for each column `j` and `i = j-1, ..., 1` add an integer multiple of
    /// column `i` so that `g_ij / g_ii` lands in `[0, 1)`.
    fn coset_canonical(&self, g: &TriMatrix) -> TriMatrix {
        let n = g.n();
        let mut h = g.clone();
        for j in 0..n - 1 {
            if h.get(j, j) < &Rational::zero() {
                for col in [j, n - 1] {
                    for i in 0..=col {
                        let v = -h.get(i, col).clone();
                        h.set(i, col, v);
                    }
                }
            }
        }
        for j in 1..n {
            for i in (0..j).rev() {
                let c = (h.get(i, j) / h.get(i, i)).floor();
                if c.is_zero() {
                    continue;
                }
                for r in 0..=i {
                    let v = h.get(r, j) - &c * h.get(r, i);
                    h.set(r, j, v);
                }
            }
        }
        h
    }
}

/// Finite window of `Γ/Λ`: cosets `gΛ` for `|g| <= radius`, base coset first.
#[derive(Debug, Clone)]
pub struct CosetBall<E: Hash + Eq> {
    pub radius: usize,
    cosets: IndexMap<E, usize>,
}

impl<E: Clone + Hash + Eq> CosetBall<E> {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    pub fn index_of(&self, canonical: &E) -> Option<usize> {
        self.cosets.get_index_of(canonical)
    }

    pub fn representative(&self, i: usize) -> &E {
        self.cosets.get_index(i).expect("coset index in range").0
    }

    /// Word distance of the closest element of the coset.
    pub fn distance(&self, i: usize) -> usize {
        *self.cosets.get_index(i).expect("coset index in range").1
    }

    pub fn representatives(&self) -> impl Iterator<Item = &E> {
        self.cosets.keys()
    }

    pub fn within(&self, r: usize) -> impl Iterator<Item = &E> {
        self.cosets.iter().filter(move |(_, d)| **d <= r).map(|(c, _)| c)
    }

    pub fn document<G: Group<Element = E>>(&self, group: &G) -> CosetBallDocument {
        CosetBallDocument {
            radius: self.radius,
            cosets: self.cosets.keys().map(|c| group.format_element(c)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetBallDocument {
    pub radius: usize,
    pub cosets: Vec<String>,
}

/// `{gΛ : |g| <= radius}` by BFS on the Schreier graph under left multiplication.
pub fn coset_ball<H: HeckePair>(pair: &H, radius: usize) -> CosetBall<H::Element> {
    let gens = pair.generators();
    let mut cosets = IndexMap::new();
    let base = pair.coset_canonical(&pair.identity());
    cosets.insert(base.clone(), 0);
    let mut frontier = vec![base];
    for d in 1..=radius {
        let mut next = Vec::new();
        for c in &frontier {
            for s in &gens {
                let image = pair.coset_canonical(&pair.multiply(&s.element, c));
                if !cosets.contains_key(&image) {
                    cosets.insert(image.clone(), d);
                    next.push(image);
                }
            }
        }
        frontier = next;
    }
    CosetBall { radius, cosets }
}

/// Orbit of `xΛ` under left multiplication by `Λ`, with a transporter `λ` for each
/// point (`λ x Λ` is the point). The stabilizer of `xΛ` is `Λ ∩ xΛx^-1`.
pub fn lambda_orbit<H: HeckePair>(
    pair: &H,
    x: &H::Element,
    cap: usize,
) -> Result<Vec<(H::Element, H::Element)>, HeckeError> {
    let gens = pair.lambda_generators();
    let start = pair.coset_canonical(x);
    let mut seen: IndexMap<H::Element, H::Element> = IndexMap::new();
    seen.insert(start.clone(), pair.identity());
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let transporter = seen[&c].clone();
        for s in &gens {
            let image = pair.coset_canonical(&pair.multiply(&s.element, &c));
            if !seen.contains_key(&image) {
                if seen.len() == cap {
                    return Err(HeckeError::ExceedsCap { cap });
                }
                seen.insert(image.clone(), pair.multiply(&s.element, &transporter));
                queue.push_back(image);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CommensurationIndices {
    /// `[Λ : Λ ∩ g^-1 Λ g]`, the size of the `Λ`-orbit of `g^-1 Λ`.
    pub i1: usize,
    /// `[Λ : Λ ∩ g Λ g^-1]`, the size of the `Λ`-orbit of `gΛ`.
    pub i2: usize,
}

pub fn commensuration_indices<H: HeckePair>(
    pair: &H,
    g: &H::Element,
    cap: usize,
) -> Result<CommensurationIndices, HeckeError> {
    let i1 = lambda_orbit(pair, &pair.invert(g), cap)?.len();
    let i2 = lambda_orbit(pair, g, cap)?.len();
    Ok(CommensurationIndices { i1, i2 })
}

/// A finite `F` with `CΛ ⊆ ΛF`, built as `F = ∪_{g ∈ C} g F_g`.
#[derive(Debug, Clone)]
pub struct Transversal<E> {
    /// `(g, F_g)`: `F_g` holds right-coset representatives of `Λ ∩ g^-1 Λ g` in `Λ`.
    pub per_element: Vec<(E, Vec<E>)>,
    pub f: Vec<E>,
}

pub fn transversal_witness<H: HeckePair>(
    pair: &H,
    c: &[H::Element],
    cap: usize,
) -> Result<Transversal<H::Element>, HeckeError> {
    let mut per_element = Vec::new();
    let mut f = IndexSet::new();
    for g in c {
        // Transporters are left-coset representatives of the stabilizer of g^-1 Λ;
        // their inverses represent the right cosets.
        let fg: Vec<H::Element> = lambda_orbit(pair, &pair.invert(g), cap)?
            .into_iter()
            .map(|(_, lambda)| pair.invert(&lambda))
            .collect();
        for x in &fg {
            f.insert(pair.multiply(g, x));
        }
        per_element.push((g.clone(), fg));
    }
    Ok(Transversal { per_element, f: f.into_iter().collect() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransversalCheck {
    pub f: Vec<String>,
    pub checked: usize,
    /// `(c, λ)` pairs with `cλ ∉ ΛF`.
    pub failures: Vec<(String, String)>,
}

impl TransversalCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `cλ ∈ ΛF` for every sampled pair.
pub fn verify_transversal<H: HeckePair>(
    pair: &H,
    transversal: &Transversal<H::Element>,
    samples: &[(H::Element, H::Element)],
) -> TransversalCheck {
    let finv: Vec<H::Element> = transversal.f.iter().map(|x| pair.invert(x)).collect();
    let failures = samples
        .iter()
        .filter(|(c, lambda)| {
            let cl = pair.multiply(c, lambda);
            !finv.iter().any(|fi| pair.in_lambda(&pair.multiply(&cl, fi)))
        })
        .map(|(c, l)| (pair.format_element(c), pair.format_element(l)))
        .collect();
    TransversalCheck {
        f: transversal.f.iter().map(|x| pair.format_element(x)).collect(),
        checked: samples.len(),
        failures,
    }
}

/// Product of `len` random `Λ`-generators.
pub fn random_lambda<H: HeckePair, R: rand::Rng + ?Sized>(pair: &H, len: usize, rng: &mut R) -> H::Element {
    let gens = pair.lambda_generators();
    (0..len).fold(pair.identity(), |acc, _| {
        pair.multiply(&acc, &gens[rng.random_range(0..gens.len())].element)
    })
}

/// Restriction of `g` acting on a coset ball: `cΛ ↦ gcΛ` wherever the image stays in
/// the ball. Indices refer to the ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPermutation<E> {
    pub provenance: E,
    pub mapping: BTreeMap<usize, usize>,
}

impl<E: Clone> PartialPermutation<E> {
    pub fn get(&self, i: usize) -> Option<usize> {
        self.mapping.get(&i).copied()
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<usize> = self.mapping.values().copied().collect();
        images.len() == self.mapping.len()
    }

    /// `self ∘ other`, defined where both steps are.
    pub fn compose<G: Group<Element = E>>(&self, group: &G, other: &PartialPermutation<E>) -> PartialPermutation<E> {
        let mapping =
            other.mapping.iter().filter_map(|(&x, &y)| self.get(y).map(|z| (x, z))).collect();
        PartialPermutation { provenance: group.multiply(&self.provenance, &other.provenance), mapping }
    }

    /// True when the two restrictions agree on every point where both are defined.
    pub fn agrees_with(&self, other: &PartialPermutation<E>) -> bool {
        self.mapping.iter().all(|(x, y)| other.get(*x).is_none_or(|z| z == *y))
    }

    pub fn document<G: Group<Element = E>>(&self, group: &G, ball: &CosetBall<E>) -> PartialPermutationDocument
    where
        E: Hash + Eq,
    {
        PartialPermutationDocument {
            provenance: group.format_element(&self.provenance),
            pairs: self
                .mapping
                .iter()
                .map(|(&x, &y)| {
                    [group.format_element(ball.representative(x)), group.format_element(ball.representative(y))]
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialPermutationDocument {
    pub provenance: String,
    pub pairs: Vec<[String; 2]>,
}

pub fn schlichting_truncation<H: HeckePair>(
    pair: &H,
    g: &H::Element,
    ball: &CosetBall<H::Element>,
) -> PartialPermutation<H::Element> {
    let mapping = ball
        .representatives()
        .enumerate()
        .filter_map(|(i, c)| {
            let image = pair.coset_canonical(&pair.multiply(g, c));
            ball.index_of(&image).map(|j| (i, j))
        })
        .collect();
    PartialPermutation { provenance: g.clone(), mapping }
}

/// `χ̃(σ) = χ(g)` for any `g` with `gΛ = σ(Λ)`. Three representatives are evaluated
/// (the ball's section, that section times a `Λ`-generator, and the provenance) and
/// must agree.
pub fn induced_char<H: HeckePair>(
    pair: &H,
    chi: &Character,
    sigma: &PartialPermutation<H::Element>,
    ball: &CosetBall<H::Element>,
) -> Result<Rational, HeckeError> {
    pair.check_lambda_vanishing(chi)?;
    let target = sigma.get(0).ok_or(HeckeError::UndefinedAtBase)?;
    let rep = ball.representative(target);
    let value = pair.char_eval(chi, rep)?;
    let mut others = vec![sigma.provenance.clone()];
    if let Some(s) = pair.lambda_generators().first() {
        others.push(pair.multiply(rep, &s.element));
    }
    for other in &others {
        let v = pair.char_eval(chi, other)?;
        if v != value {
            return Err(HeckeError::NotWellDefined(format!(
                "{} gives {value}, {} gives {v}",
                pair.format_element(rep),
                pair.format_element(other)
            )));
        }
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletingOrbitsReport {
    pub checked: usize,
    /// Truncations skipped because `χ̃(σ) < 0`.
    pub negative: usize,
    pub failures: Vec<String>,
}

/// Windowed form of `G_χ̃ = α(Γ_χ) L`: for `σ = truncation(h)` with `χ̃(σ) >= 0`, the
/// section `r` of `σ(Λ)` lies in `Γ_χ`, `κ = truncation(r^-1 h)` fixes the base coset,
/// and `σ` agrees with `truncation(r) ∘ κ`.
pub fn completing_orbits_check<H: HeckePair>(
    pair: &H,
    chi: &Character,
    elements: &[H::Element],
    ball: &CosetBall<H::Element>,
) -> Result<CompletingOrbitsReport, HeckeError> {
    let mut report = CompletingOrbitsReport { checked: 0, negative: 0, failures: vec![] };
    for h in elements {
        let sigma = schlichting_truncation(pair, h, ball);
        let value = induced_char(pair, chi, &sigma, ball)?;
        if value < Rational::zero() {
            report.negative += 1;
            continue;
        }
        report.checked += 1;
        let r = ball.representative(sigma.get(0).expect("checked by induced_char")).clone();
        let kappa = schlichting_truncation(pair, &pair.multiply(&pair.invert(&r), h), ball);
        let rebuilt = schlichting_truncation(pair, &r, ball).compose(pair, &kappa);
        let ok = pair.char_eval(chi, &r)? >= Rational::zero()
            && kappa.get(0) == Some(0)
            && rebuilt.agrees_with(&sigma)
            && sigma.agrees_with(&rebuilt);
        if !ok {
            report.failures.push(pair.format_element(h));
        }
    }
    Ok(report)
}

/// Output of [`core_escape`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoreEscape {
    pub b: TriMatrix,
    pub conjugate: TriMatrix,
    /// 1-based position of the witness entry of `BAB^-1`.
    pub entry: (usize, usize),
    #[serde(with = "crate::arith::rational_serde")]
    pub value: Rational,
    pub prime: u64,
    pub valuation: i64,
    pub case: EscapeCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EscapeCase {
    /// `B` diagonal with `p^{-k'}` at `i` and `p^{k'}` at `j`; `k' = v_p(a_ij) + 1`.
    OffDiagonal { k_prime: i64, entry_valuation: i64 },
    /// `B = E_{i,j}^α`, so the `(i,j)` entry is `α (a_jj - a_ii) = ±2α`.
    Diagonal {
        #[serde(with = "crate::arith::rational_serde")]
        alpha: Rational,
    },
}

/// For `A ∈ L ∩ Γ` outside the core `N`, builds `B ∈ Γ` with `BAB^-1 ∉ L`.
pub fn core_escape(n: usize, primes: &PrimeSet, a: &TriMatrix) -> Result<CoreEscape, HeckeError> {
    let group = TriangularGroup::new(n, primes.clone())?;
    group.check(a)?;
    if !group.in_lambda(a) {
        return Err(HeckeError::NotInL(a.to_string()));
    }
    let minus_id = TriMatrix::diagonal(vec![integer(-1); n]);
    if a.is_identity() || (n.is_multiple_of(2) && *a == minus_id) {
        return Err(HeckeError::InCore);
    }
    let p = primes.primes()[0];
    let off_diagonal = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_zero());
    let (b, case) = match off_diagonal {
        Some((i, j)) => {
            let Valuation::Finite(v) = vp(a.get(i, j), p) else { unreachable!("nonzero entry") };
            let k_prime = v + 1;
            let mut diag = vec![integer(1); n];
            diag[i] = prime_power(p, -k_prime);
            diag[j] = prime_power(p, k_prime);
            (TriMatrix::diagonal(diag), EscapeCase::OffDiagonal { k_prime, entry_valuation: v })
        }
        None => {
            let (i, j) = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| a.get(i, i) != a.get(j, j))
                .ok_or_else(|| HeckeError::EscapeFailed("diagonal matrix with constant diagonal".into()))?;
            let alpha = if p == 2 { prime_power(2, -2) } else { prime_power(p, -1) };
            (group.elementary(i, j, alpha.clone())?, EscapeCase::Diagonal { alpha })
        }
    };
    let conjugate = a.conjugate(&b);
    group.check(&conjugate)?;
    for i in 0..n {
        for j in i..n {
            for &q in primes.primes() {
                if let Valuation::Finite(v) = vp(conjugate.get(i, j), q) {
                    if v < 0 {
                        return Ok(CoreEscape {
                            b,
                            value: conjugate.get(i, j).clone(),
                            conjugate,
                            entry: (i + 1, j + 1),
                            prime: q,
                            valuation: v,
                            case,
                        });
                    }
                }
            }
        }
    }
    Err(HeckeError::EscapeFailed(format!("B A B^-1 = {conjugate} stays in L")))
}
