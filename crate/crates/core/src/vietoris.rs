//! Word-metric windows and their Vietoris–Rips complexes `VR_r`, optionally restricted
//! to the vertices with `χ >= 0`.

use std::hash::Hash;

use indexmap::IndexSet;
use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::chains::{reduced_homology, RingSpec};
use crate::groups::{ball, Character, Group, GroupError};
use crate::simplicial::{TranslateFamily, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VietorisError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("vertex {0} is not in the window")]
    VertexOutsideWindow(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("scales must be strictly increasing")]
    ScalesNotIncreasing,
}

/// Finite point set with exact word distances `d(x, y) = |x^-1 y|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricWindow<E: Hash + Eq> {
    points: IndexSet<E>,
    dist: Vec<Vec<usize>>,
}

impl<E: Clone + Hash + Eq> MetricWindow<E> {
    /// Distances are read off `ball(search_radius)`; every `x^-1 y` must lie in it.
    pub fn from_points<G: Group<Element = E>>(
        group: &G,
        points: impl IntoIterator<Item = E>,
        search_radius: usize,
    ) -> Result<Self, VietorisError> {
        let points: IndexSet<E> = points.into_iter().collect();
        let lengths = ball(group, search_radius);
        let inverses: Vec<E> = points.iter().map(|x| group.invert(x)).collect();
        let mut dist = vec![vec![0; points.len()]; points.len()];
        for (i, xi) in inverses.iter().enumerate() {
            for (j, y) in points.iter().enumerate() {
                let z = group.multiply(xi, y);
                dist[i][j] = lengths.distance(&z).ok_or_else(|| {
                    VietorisError::WindowTooSmall(format!(
                        "|{}| exceeds the search radius {search_radius}",
                        group.format_element(&z)
                    ))
                })?;
            }
        }
        Ok(MetricWindow { points, dist })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &IndexSet<E> {
        &self.points
    }

    pub fn index_of(&self, x: &E) -> Option<usize> {
        self.points.get_index_of(x)
    }

    pub fn distance(&self, i: usize, j: usize) -> usize {
        self.dist[i][j]
    }

    /// `χ(x) >= 0` per point.
    pub fn restriction<G: Group<Element = E>>(&self, group: &G, chi: &Character) -> Result<Vec<bool>, VietorisError> {
        self.points
            .iter()
            .map(|x| Ok(!group.char_eval(chi, x)?.is_negative()))
            .collect()
    }
}

/// The ball of radius `radius` with its word metric.
pub fn word_metric_window<G: Group>(group: &G, radius: usize) -> Result<MetricWindow<G::Element>, VietorisError> {
    let b = ball(group, radius);
    MetricWindow::from_points(group, b.elements().cloned(), 2 * radius)
}

/// `VR_r` on a window, optionally restricted to admitted vertices.
#[derive(Debug, Clone)]
pub struct VrWindow<'a, E: Hash + Eq> {
    pub base: &'a MetricWindow<E>,
    pub scale: usize,
    pub admitted: Option<Vec<bool>>,
}

impl<'a, E: Clone + Hash + Eq> VrWindow<'a, E> {
    pub fn new(base: &'a MetricWindow<E>, scale: usize) -> Self {
        VrWindow { base, scale, admitted: None }
    }

    pub fn restricted(base: &'a MetricWindow<E>, scale: usize, admitted: Vec<bool>) -> Self {
        assert_eq!(admitted.len(), base.len(), "one flag per point");
        VrWindow { base, scale, admitted: Some(admitted) }
    }

    fn admits(&self, i: usize) -> bool {
        self.admitted.as_ref().is_none_or(|a| a[i])
    }

    /// Indices of the 0-skeleton.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&i| self.admits(i)).collect()
    }

    pub fn contains_indices(&self, simplex: &[usize]) -> bool {
        simplex.iter().all(|&i| self.admits(i))
            && simplex.iter().enumerate().all(|(a, &i)| {
                simplex[a + 1..].iter().all(|&j| self.base.distance(i, j) <= self.scale)
            })
    }

    /// The 1-skeleton as a family: one part per edge plus one per vertex. Its free
    /// simplicial set has the same components as `VR_r`.
    pub fn clique_family(&self) -> TranslateFamily {
        let vs = self.vertices();
        let mut parts: Vec<Vec<VertexId>> = vs.iter().map(|&i| vec![VertexId(i as u32)]).collect();
        for (a, &i) in vs.iter().enumerate() {
            for &j in &vs[a + 1..] {
                if self.base.distance(i, j) <= self.scale {
                    parts.push(vec![VertexId(i as u32), VertexId(j as u32)]);
                }
            }
        }
        TranslateFamily::new(parts).expect("parts are nonempty")
    }
}

/// Whether `simplex` spans a simplex of the window's VR complex.
pub fn vr_simplex_test<E: Clone + Hash + Eq>(window: &VrWindow<'_, E>, simplex: &[E]) -> Result<bool, VietorisError> {
    let idx = simplex
        .iter()
        .enumerate()
        .map(|(k, x)| window.base.index_of(x).ok_or_else(|| VietorisError::VertexOutsideWindow(format!("#{k}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(window.contains_indices(&idx))
}

/// All windows must share base and restriction; then their 0-skeleta agree.
pub fn zero_skeleton_invariance<E: Clone + Hash + Eq>(windows: &[VrWindow<'_, E>]) -> Result<bool, VietorisError> {
    let Some(first) = windows.first() else { return Ok(true) };
    for w in &windows[1..] {
        if w.base != first.base || w.admitted != first.admitted {
            return Err(VietorisError::PreconditionViolation("windows differ in base or restriction".into()));
        }
    }
    let v0 = first.vertices();
    Ok(windows.iter().all(|w| w.vertices() == v0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScaleResult {
    pub r: usize,
    pub h0_rank: usize,
    pub vanished: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VrH0Report {
    pub scales: Vec<ScaleResult>,
    pub first_vanishing: Option<usize>,
}

/// `H̃_0` of each (restricted) `VR_r` window through the chain engine.
pub fn vr_h0_probe<E: Clone + Hash + Eq>(
    base: &MetricWindow<E>,
    admitted: Option<&[bool]>,
    scales: &[usize],
    ring: RingSpec,
) -> Result<VrH0Report, VietorisError> {
    if scales.windows(2).any(|w| w[0] >= w[1]) {
        return Err(VietorisError::ScalesNotIncreasing);
    }
    let mut out = Vec::new();
    for &r in scales {
        let w = match admitted {
            Some(a) => VrWindow::restricted(base, r, a.to_vec()),
            None => VrWindow::new(base, r),
        };
        let family = w.clique_family();
        let h0_rank = if family.parts().is_empty() { 0 } else { reduced_homology(&family, 0, ring).rank() };
        out.push(ScaleResult { r, h0_rank, vanished: h0_rank == 0 });
    }
    let first_vanishing = out.iter().find(|s| s.vanished).map(|s| s.r);
    Ok(VrH0Report { scales: out, first_vanishing })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CofinalityReport {
    pub c_size: usize,
    pub window_points: usize,
    /// Least `r` with `VR_C ⊆ VR_r` on the window.
    pub forward_scale: usize,
    /// `VR_r ⊆ VR_{C'}` with `C' = ball(reverse_radius)`.
    pub reverse_radius: usize,
    pub pairs_checked: usize,
    pub forward_ok: bool,
    pub reverse_ok: bool,
}

impl CofinalityReport {
    pub fn passed(&self) -> bool {
        self.forward_ok && self.reverse_ok
    }
}

/// Compares the controlled family `VR_C` (simplices whose vertices pairwise satisfy
/// `x^-1 y ∈ C ∪ C^-1`) with the metric family `VR_r` on `ball(window_radius)`.
/// Membership in either is decided on edges, so the check runs over vertex pairs.
pub fn cofinality_check<G: Group>(
    group: &G,
    c: &[G::Element],
    window_radius: usize,
) -> Result<CofinalityReport, VietorisError> {
    let window = word_metric_window(group, window_radius)?;
    let mut controlled: IndexSet<G::Element> = IndexSet::new();
    for x in c {
        if window.index_of(x).is_none() {
            return Err(VietorisError::WindowTooSmall(format!(
                "{} is not realised as e^-1 x in ball({window_radius})",
                group.format_element(x)
            )));
        }
        controlled.insert(x.clone());
        controlled.insert(group.invert(x));
    }
    let e = window.index_of(&group.identity()).expect("ball contains e");
    let r = c.iter().map(|x| window.distance(e, window.index_of(x).expect("checked"))).max().unwrap_or(0);
    let c_prime = ball(group, r);
    let pts: Vec<&G::Element> = window.points().iter().collect();
    let inverses: Vec<G::Element> = pts.iter().map(|x| group.invert(x)).collect();
    let mut forward_scale = 0;
    let mut reverse_ok = true;
    let mut pairs = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            pairs += 1;
            let z = group.multiply(&inverses[i], pts[j]);
            let d = window.distance(i, j);
            if controlled.contains(&z) {
                forward_scale = forward_scale.max(d);
            }
            if d <= r && !c_prime.contains(&z) {
                reverse_ok = false;
            }
        }
    }
    Ok(CofinalityReport {
        c_size: c.len(),
        window_points: window.len(),
        forward_scale,
        reverse_radius: r,
        pairs_checked: pairs,
        forward_ok: forward_scale <= r,
        reverse_ok,
    })
}
