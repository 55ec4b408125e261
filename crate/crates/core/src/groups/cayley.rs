use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::bs::{BaumslagSolitar, BsWord, Letter};
use super::{ball, Ball, Character, Group, GroupError};
use crate::arith::Rational;

/// Ball of the Cayley graph with character values. `neighbors[v][s]` is the index of
/// `v * s` for generator `s`, when that element lies in the ball.
#[derive(Debug, Clone)]
pub struct CayleyBall<E: std::hash::Hash + Eq> {
    pub radius: usize,
    pub labels: Vec<String>,
    pub ball: Ball<E>,
    pub values: Vec<Rational>,
    pub neighbors: Vec<Vec<Option<usize>>>,
}

pub fn cayley_ball<G: Group>(
    group: &G,
    radius: usize,
    chi: &Character,
) -> Result<CayleyBall<G::Element>, GroupError> {
    group.check_character(chi)?;
    let gens = group.generators();
    let b = ball(group, radius);
    let mut values = Vec::with_capacity(b.len());
    let mut neighbors = Vec::with_capacity(b.len());
    for (g, _) in b.iter() {
        values.push(group.char_eval(chi, g)?);
        neighbors.push(gens.iter().map(|s| b.index_of(&group.multiply(g, &s.element))).collect());
    }
    Ok(CayleyBall {
        radius,
        labels: gens.into_iter().map(|s| s.label).collect(),
        ball: b,
        values,
        neighbors,
    })
}

impl<E: Clone + std::hash::Hash + Eq> CayleyBall<E> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn distance(&self, v: usize) -> usize {
        self.ball.get_index(v).1.distance
    }

    pub fn element(&self, v: usize) -> &E {
        self.ball.get_index(v).0
    }

    /// Vertices at distance `<= radius - margin`.
    pub fn interior(&self, margin: usize) -> Vec<usize> {
        let cut = self.radius.saturating_sub(margin);
        if margin > self.radius {
            return vec![];
        }
        (0..self.len()).filter(|&v| self.distance(v) <= cut).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].iter().filter(|n| n.is_some()).count()
    }

    /// Follows a word of generator indices from `v`; `None` once the path leaves the ball.
    pub fn walk(&self, v: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(v, |at, &s| self.neighbors[at][s])
    }
}

/// Per a-line (coset `g<a>`) counts of distinct `t`-edge targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ALineProfile {
    pub line: String,
    pub members: usize,
    pub longest_run: usize,
    pub measured: bool,
    pub up: usize,
    pub down: usize,
}

const A: usize = 0;
const A_INV: usize = 1;
const T: usize = 2;
const T_INV: usize = 3;

impl CayleyBall<BsWord> {
    /// Groups interior vertices (all four edges present) by a-line and counts the
    /// distinct a-lines reached by `t` (up) and `t^-1` (down). A line counts as
    /// measured once it contains `max(|m|, |n|)` consecutive interior vertices, which
    /// covers every residue class feeding the `t`-edges.
    pub fn a_line_profiles(&self, group: &BaumslagSolitar) -> Vec<ALineProfile> {
        let mut lines: BTreeMap<BsWord, BTreeSet<i64>> = BTreeMap::new();
        for v in self.interior(1) {
            let g = self.element(v);
            lines.entry(g.strip_tail()).or_default().insert(g.tail());
        }
        let need = group.m().unsigned_abs().max(group.n().unsigned_abs()) as usize;
        lines
            .into_iter()
            .map(|(line, tails)| {
                let longest_run = longest_consecutive_run(&tails);
                let mut up = BTreeSet::new();
                let mut down = BTreeSet::new();
                for &k in &tails {
                    let v = group.multiply(&line, &group.a_power(k));
                    let vi = self.ball.index_of(&v).expect("interior vertex");
                    let targets = (self.neighbors[vi][T], self.neighbors[vi][T_INV]);
                    let (Some(u), Some(d)) = targets else { unreachable!("interior vertex") };
                    up.insert(self.element(u).strip_tail());
                    down.insert(self.element(d).strip_tail());
                }
                ALineProfile {
                    line: line.to_string(),
                    members: tails.len(),
                    longest_run,
                    measured: longest_run >= need,
                    up: up.len(),
                    down: down.len(),
                }
            })
            .collect()
    }

    /// Whether the relator loop `t a^m t^-1 a^-n` based at `v` closes inside the ball.
    pub fn relator_closes_at(&self, group: &BaumslagSolitar, v: usize) -> bool {
        let word = letters_to_generators(&group.relator());
        self.walk(v, &word) == Some(v)
    }
}

fn letters_to_generators(letters: &[Letter]) -> Vec<usize> {
    let mut out = Vec::new();
    for &l in letters {
        let (k, pos, neg) = match l {
            Letter::A(k) => (k, A, A_INV),
            Letter::T(e) => (e as i64, T, T_INV),
        };
        let s = if k >= 0 { pos } else { neg };
        out.extend(std::iter::repeat_n(s, k.unsigned_abs() as usize));
    }
    out
}

fn longest_consecutive_run(values: &BTreeSet<i64>) -> usize {
    let mut best = 0;
    let mut run = 0;
    let mut prev: Option<i64> = None;
    for &x in values {
        run = if prev == Some(x - 1) { run + 1 } else { 1 };
        best = best.max(run);
        prev = Some(x);
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityStep {
    pub outer_radius: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    #[serde(with = "crate::arith::rational_serde::option")]
    pub threshold: Option<Rational>,
    pub inner_radius: usize,
    pub outer_radius: usize,
    pub inner_vertices: usize,
    pub components: usize,
    /// Component counts as the outer radius grows from `inner_radius`.
    pub history: Vec<ConnectivityStep>,
}

/// Components of the `chi >= r` vertices of the inner ball, joined by paths through
/// `chi >= r` vertices of the outer ball. `threshold = None` admits every vertex.
/// A single component is a certificate; several are evidence only.
pub fn connectivity_probe<E: Clone + std::hash::Hash + Eq>(
    graph: &CayleyBall<E>,
    threshold: Option<&Rational>,
    inner: usize,
    outer: usize,
) -> Result<ConnectivityReport, GroupError> {
    if outer > graph.radius {
        return Err(GroupError::RadiusTooLarge { requested: outer, available: graph.radius });
    }
    if inner > outer {
        return Err(GroupError::BadIndex(format!("inner radius {inner} exceeds outer radius {outer}")));
    }
    let admitted = |v: usize| threshold.is_none_or(|r| &graph.values[v] >= r);
    let inner_set: Vec<usize> =
        (0..graph.len()).filter(|&v| graph.distance(v) <= inner && admitted(v)).collect();
    let mut history = Vec::new();
    for r in inner..=outer {
        let mut uf = UnionFind::<usize>::new(graph.len());
        for v in 0..graph.len() {
            if graph.distance(v) > r || !admitted(v) {
                continue;
            }
            for w in graph.neighbors[v].iter().flatten() {
                if graph.distance(*w) <= r && admitted(*w) {
                    uf.union(v, *w);
                }
            }
        }
        let roots: BTreeSet<usize> = inner_set.iter().map(|&v| uf.find(v)).collect();
        history.push(ConnectivityStep { outer_radius: r, components: roots.len() });
    }
    Ok(ConnectivityReport {
        threshold: threshold.cloned(),
        inner_radius: inner,
        outer_radius: outer,
        inner_vertices: inner_set.len(),
        components: history.last().map_or(0, |s| s.components),
        history,
    })
}
