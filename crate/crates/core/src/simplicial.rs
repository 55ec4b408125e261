//! Free simplicial sets `EX` on finite vertex windows.
//!
//! A [`TranslateFamily`] is a finite union of full free simplicial sets `E S_i`:
//! a tuple of vertices is a simplex iff all its entries lie in one part. Simplices
//! exist in every dimension, so callers generate them per dimension on demand.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;

use indexmap::IndexSet;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,
    #[error("index {index} out of range for a {dim}-simplex")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("a vertex has no faces")]
    CannotFaceVertex,
    #[error("part {0} of the family is empty")]
    EmptyPart(usize),
    #[error("vertex map `{map}` sends part {part} outside the codomain")]
    NotSimplicialMap { map: &'static str, part: usize },
    #[error("vertex map `{map}` is undefined on vertex {vertex:?}")]
    MapUndefined { map: &'static str, vertex: VertexId },
}

/// Interned vertex token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub u32);

/// Assigns dense vertex ids to arbitrary hashable keys (group elements, cosets, ...).
#[derive(Debug, Clone)]
pub struct Interner<K: Hash + Eq> {
    keys: IndexSet<K>,
}

impl<K: Hash + Eq> Default for Interner<K> {
    fn default() -> Self {
        Interner { keys: IndexSet::new() }
    }
}

impl<K: Hash + Eq + Clone> Interner<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, key: &K) -> VertexId {
        if let Some(i) = self.keys.get_index_of(key) {
            return VertexId(i as u32);
        }
        let (i, _) = self.keys.insert_full(key.clone());
        VertexId(i as u32)
    }

    pub fn get(&self, key: &K) -> Option<VertexId> {
        self.keys.get_index_of(key).map(|i| VertexId(i as u32))
    }

    pub fn resolve(&self, id: VertexId) -> &K {
        &self.keys[id.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// An ordered tuple `(x_0, ..., x_k)`; a `k`-simplex has `k + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new(vertices: Vec<VertexId>) -> Result<Self, SimplicialError> {
        if vertices.is_empty() {
            return Err(SimplicialError::EmptySimplex);
        }
        Ok(Simplex(vertices))
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Simplex::new(ids.iter().map(|&i| VertexId(i)).collect()).expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.0.iter().copied().collect()
    }

    /// `d_i`: drops entry `i`.
    pub fn face(&self, i: usize) -> Result<Simplex, SimplicialError> {
        if self.dim() == 0 {
            return Err(SimplicialError::CannotFaceVertex);
        }
        if i > self.dim() {
            return Err(SimplicialError::IndexOutOfRange { index: i, dim: self.dim() });
        }
        let mut v = self.0.clone();
        v.remove(i);
        Ok(Simplex(v))
    }

    /// `s_i`: doubles entry `i`.
    pub fn degeneracy(&self, i: usize) -> Result<Simplex, SimplicialError> {
        if i > self.dim() {
            return Err(SimplicialError::IndexOutOfRange { index: i, dim: self.dim() });
        }
        let mut v = self.0.clone();
        v.insert(i, v[i]);
        Ok(Simplex(v))
    }

    /// In a free simplicial set a simplex is degenerate iff two adjacent entries agree.
    pub fn is_nondegenerate(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1])
    }

    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Simplex {
        Simplex(self.0.iter().map(|&v| f(v)).collect())
    }
}

/// Finite window `S_1 ∪ ... ∪ S_t` of translates, each spanning a full `E S_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslateFamily {
    parts: Vec<Vec<VertexId>>,
    labels: Option<Vec<String>>,
    vertex_parts: HashMap<VertexId, Vec<usize>>,
}

impl TranslateFamily {
    pub fn new<P, I>(parts: P) -> Result<Self, SimplicialError>
    where
        P: IntoIterator<Item = I>,
        I: IntoIterator<Item = VertexId>,
    {
        let parts: Vec<Vec<VertexId>> = parts
            .into_iter()
            .map(|p| {
                let s: BTreeSet<VertexId> = p.into_iter().collect();
                s.into_iter().collect()
            })
            .collect();
        if let Some(i) = parts.iter().position(Vec::is_empty) {
            return Err(SimplicialError::EmptyPart(i));
        }
        let mut vertex_parts: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                vertex_parts.entry(v).or_default().push(i);
            }
        }
        Ok(TranslateFamily { parts, labels: None, vertex_parts })
    }

    /// Convenience constructor from raw ids.
    pub fn from_ids(parts: &[&[u32]]) -> Self {
        TranslateFamily::new(parts.iter().map(|p| p.iter().map(|&i| VertexId(i))))
            .expect("nonempty parts")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.parts.len(), "one label per part");
        self.labels = Some(labels);
        self
    }

    pub fn parts(&self) -> &[Vec<VertexId>] {
        &self.parts
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.vertex_parts.keys().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_parts.len()
    }

    pub fn part_contains_set(&self, part: usize, set: &BTreeSet<VertexId>) -> bool {
        let p = &self.parts[part];
        set.iter().all(|v| p.binary_search(v).is_ok())
    }

    /// Index of some part containing every vertex of `set`.
    pub fn part_containing(&self, set: &BTreeSet<VertexId>) -> Option<usize> {
        let first = set.iter().next()?;
        self.vertex_parts
            .get(first)?
            .iter()
            .copied()
            .find(|&i| self.part_contains_set(i, set))
    }

    pub fn contains(&self, simplex: &Simplex) -> bool {
        self.part_containing(&simplex.vertex_set()).is_some()
    }

    /// True iff every part of `self` lies inside some part of `other`.
    pub fn is_subfamily_of(&self, other: &TranslateFamily) -> bool {
        self.parts.iter().all(|p| {
            let set: BTreeSet<VertexId> = p.iter().copied().collect();
            other.part_containing(&set).is_some()
        })
    }

    /// All nondegenerate `k`-simplices, sorted and deduplicated across parts.
    pub fn nondegenerate_simplices(&self, k: usize) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for part in &self.parts {
            if part.len() == 1 && k > 0 {
                continue;
            }
            let mut buf = Vec::with_capacity(k + 1);
            extend_tuples(part, k + 1, true, &mut buf, &mut |t| {
                out.insert(Simplex(t.to_vec()));
            });
        }
        out.into_iter().collect()
    }

    /// All `k`-simplices including degenerate ones.
    pub fn all_simplices(&self, k: usize) -> Vec<Simplex> {
        let mut out = BTreeSet::new();
        for part in &self.parts {
            let mut buf = Vec::with_capacity(k + 1);
            extend_tuples(part, k + 1, false, &mut buf, &mut |t| {
                out.insert(Simplex(t.to_vec()));
            });
        }
        out.into_iter().collect()
    }

    pub fn to_document(&self, token: impl Fn(VertexId) -> String) -> FamilyDocument {
        FamilyDocument {
            parts: self
                .parts
                .iter()
                .map(|p| p.iter().map(|&v| token(v)).collect())
                .collect(),
            labels: self.labels.clone().unwrap_or_default(),
        }
    }

    pub fn from_document(
        doc: &FamilyDocument,
        interner: &mut Interner<String>,
    ) -> Result<Self, SimplicialError> {
        let fam = TranslateFamily::new(
            doc.parts
                .iter()
                .map(|p| p.iter().map(|t| interner.intern(t)).collect::<Vec<_>>()),
        )?;
        Ok(if doc.labels.is_empty() { fam } else { fam.with_labels(doc.labels.clone()) })
    }
}

/// JSON form `{parts: [[token, ...], ...], labels: [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub parts: Vec<Vec<String>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

fn extend_tuples(
    alphabet: &[VertexId],
    len: usize,
    nondegenerate: bool,
    buf: &mut Vec<VertexId>,
    emit: &mut impl FnMut(&[VertexId]),
) {
    if buf.len() == len {
        emit(buf);
        return;
    }
    for &v in alphabet {
        if nondegenerate && buf.last() == Some(&v) {
            continue;
        }
        buf.push(v);
        extend_tuples(alphabet, len, nondegenerate, buf, emit);
        buf.pop();
    }
}

/// Formal integer combination of simplices in the free simplicial set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Chain {
    terms: BTreeMap<Simplex, i64>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn single(coeff: i64, simplex: Simplex) -> Self {
        let mut c = Chain::zero();
        c.add_term(coeff, simplex);
        c
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Simplex)>) -> Self {
        let mut c = Chain::zero();
        for (coeff, s) in terms {
            c.add_term(coeff, s);
        }
        c
    }

    pub fn add_term(&mut self, coeff: i64, simplex: Simplex) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(simplex) {
            Entry::Vacant(v) => {
                if coeff != 0 {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Simplex, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients of the 0-simplices; the augmentation `ε`.
    pub fn augmentation(&self) -> i64 {
        self.terms.iter().filter(|(s, _)| s.dim() == 0).map(|(_, &c)| c).sum()
    }

    /// `∂ σ = Σ (-1)^i d_i σ`, keeping degenerate faces. Vertices have zero boundary.
    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero();
        for (s, &c) in &self.terms {
            if s.dim() == 0 {
                continue;
            }
            for i in 0..=s.dim() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                out.add_term(sign * c, s.face(i).expect("dim >= 1"));
            }
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (s, &c) in &other.terms {
            out.add_term(-c, s.clone());
        }
        out
    }

    pub fn scale(&self, k: i64) -> Chain {
        Chain::from_terms(self.terms.iter().map(|(s, &c)| (k * c, s.clone())))
    }
}

/// `[x, c]`: prepends `x` to every simplex of `c`, coefficientwise.
pub fn cone(x: VertexId, chain: &Chain) -> Chain {
    Chain::from_terms(chain.terms().map(|(s, c)| {
        let mut v = Vec::with_capacity(s.vertices().len() + 1);
        v.push(x);
        v.extend_from_slice(s.vertices());
        (c, Simplex(v))
    }))
}

/// Right-hand side of `∂[x, c] = c - [x, ∂c]` for chains of dimension at least one.
pub fn cone_boundary_rhs(x: VertexId, chain: &Chain) -> Chain {
    chain.sub(&cone(x, &chain.boundary()))
}

/// Degree-zero variant: for a 0-chain `c`, `∂[x, c] = c - ε(c)·(x)`.
pub fn cone_boundary_rhs_degree0(x: VertexId, chain: &Chain) -> Chain {
    let mut out = chain.clone();
    out.add_term(-chain.augmentation(), Simplex(vec![x]));
    out
}

/// Vertex map inducing a simplicial map entrywise.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexMap {
    mapping: BTreeMap<VertexId, VertexId>,
}

impl VertexMap {
    pub fn new(mapping: BTreeMap<VertexId, VertexId>) -> Self {
        VertexMap { mapping }
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        VertexMap::new(pairs.iter().map(|&(a, b)| (VertexId(a), VertexId(b))).collect())
    }

    pub fn identity_on(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        VertexMap::new(vertices.into_iter().map(|v| (v, v)).collect())
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.mapping.get(&v).copied()
    }

    pub fn image_of(&self, set: &[VertexId]) -> Option<BTreeSet<VertexId>> {
        set.iter().map(|&v| self.get(v)).collect()
    }
}

/// First nondegenerate simplex whose mixed tuple leaves the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyWitness {
    pub simplex: Simplex,
    /// Split index `i`: the first `i` entries go through `f`, the rest through `g`.
    pub split: usize,
    pub mixed: Simplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyCheck {
    pub holds: bool,
    pub witness: Option<HomotopyWitness>,
}

fn mixed_tuple(f: &VertexMap, g: &VertexMap, s: &Simplex, split: usize) -> Simplex {
    Simplex(
        s.vertices()
            .iter()
            .enumerate()
            .map(|(j, &v)| if j < split { f.get(v) } else { g.get(v) }.expect("total map"))
            .collect(),
    )
}

fn check_simplicial(
    name: &'static str,
    map: &VertexMap,
    domain: &TranslateFamily,
    codomain: &TranslateFamily,
) -> Result<(), SimplicialError> {
    for (i, part) in domain.parts().iter().enumerate() {
        for &v in part {
            if map.get(v).is_none() {
                return Err(SimplicialError::MapUndefined { map: name, vertex: v });
            }
        }
        let image = map.image_of(part).expect("checked total");
        if codomain.part_containing(&image).is_none() {
            return Err(SimplicialError::NotSimplicialMap { map: name, part: i });
        }
    }
    Ok(())
}

/// Decides whether the unique candidate simplicial homotopy between `f` and `g`
/// exists, i.e. every mixed tuple `(f x_0, ..., f x_{i-1}, g x_i, ..., g x_k)` of
/// every nondegenerate domain simplex lies in the codomain.
///
/// Membership only depends on vertex sets. On a part `S` with at least two
/// vertices, listing `S` twice and splitting in the middle realises `f(S) ∪ g(S)`,
/// which dominates every other mixed tuple, so the check is exact without a
/// dimension cap. Singleton parts only produce `(f x)` and `(g x)`.
pub fn homotopy_check(
    f: &VertexMap,
    g: &VertexMap,
    domain: &TranslateFamily,
    codomain: &TranslateFamily,
) -> Result<HomotopyCheck, SimplicialError> {
    check_simplicial("f", f, domain, codomain)?;
    check_simplicial("g", g, domain, codomain)?;
    for part in domain.parts() {
        if part.len() < 2 {
            continue;
        }
        let mut union = f.image_of(part).expect("total");
        union.extend(g.image_of(part).expect("total"));
        if codomain.part_containing(&union).is_none() {
            let witness = small_witness(f, g, part, codomain).unwrap_or_else(|| {
                let doubled: Vec<VertexId> = part.iter().chain(part.iter()).copied().collect();
                let s = Simplex(doubled);
                let split = part.len();
                HomotopyWitness { mixed: mixed_tuple(f, g, &s, split), simplex: s, split }
            });
            return Ok(HomotopyCheck { holds: false, witness: Some(witness) });
        }
    }
    Ok(HomotopyCheck { holds: true, witness: None })
}

const WITNESS_SEARCH_DIM: usize = 3;

fn small_witness(
    f: &VertexMap,
    g: &VertexMap,
    part: &[VertexId],
    codomain: &TranslateFamily,
) -> Option<HomotopyWitness> {
    let single = TranslateFamily::new([part.to_vec()]).expect("nonempty");
    for k in 0..=WITNESS_SEARCH_DIM {
        if part.len().saturating_pow(k as u32 + 1) > 200_000 {
            break;
        }
        for s in single.nondegenerate_simplices(k) {
            for split in 0..=s.vertices().len() {
                let mixed = mixed_tuple(f, g, &s, split);
                if !codomain.contains(&mixed) {
                    return Some(HomotopyWitness { simplex: s, split, mixed });
                }
            }
        }
    }
    None
}

/// Brute-force variant of [`homotopy_check`] enumerating every nondegenerate
/// simplex up to `max_dim`; used as a reference on small windows.
pub fn homotopy_check_enumerated(
    f: &VertexMap,
    g: &VertexMap,
    domain: &TranslateFamily,
    codomain: &TranslateFamily,
    max_dim: usize,
) -> Result<HomotopyCheck, SimplicialError> {
    check_simplicial("f", f, domain, codomain)?;
    check_simplicial("g", g, domain, codomain)?;
    for k in 0..=max_dim {
        for s in domain.nondegenerate_simplices(k) {
            for split in 0..=s.vertices().len() {
                let mixed = mixed_tuple(f, g, &s, split);
                if !codomain.contains(&mixed) {
                    return Ok(HomotopyCheck {
                        holds: false,
                        witness: Some(HomotopyWitness { simplex: s, split, mixed }),
                    });
                }
            }
        }
    }
    Ok(HomotopyCheck { holds: true, witness: None })
}

/// Path components of a family: parts glued along shared vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    /// Component index of each part, numbered by first appearance.
    pub component_of_part: Vec<usize>,
    /// First part of each component.
    pub representatives: Vec<usize>,
}

pub fn pi0(family: &TranslateFamily) -> Components {
    let n = family.parts().len();
    let mut uf = UnionFind::<usize>::new(n.max(1));
    for parts in family.vertex_parts.values() {
        for w in parts.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let component_of_part = (0..n)
        .map(|i| {
            let root = uf.find(i);
            *label.entry(root).or_insert_with(|| {
                representatives.push(i);
                representatives.len() - 1
            })
        })
        .collect();
    Components { count: representatives.len(), component_of_part, representatives }
}
