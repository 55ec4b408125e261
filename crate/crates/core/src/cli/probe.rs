//! Evidence pipelines behind `sigma-hecke probe`.

use serde_json::json;

use super::{build_group, character, guard_ball, guard_filtration, tri_default_character, AnyGroup, CliError, Pipeline, Report, RunConfig};
use crate::arith::integer;
use crate::chains::{essential_acyclicity_probe, RingSpec};
use crate::groups::{cayley_ball, connectivity_probe, Character, Group, InfiniteCyclic};
use crate::hecke::HeckePair;
use crate::sigma::{build_coset_filtration, build_group_filtration, phi_psi_roundtrip, Filtration, RoundtripWindow};
use crate::vietoris::{vr_h0_probe, word_metric_window, zero_skeleton_invariance, VrWindow};

pub fn cmd_probe(pipeline: Pipeline, cfg: &RunConfig) -> Result<Report, CliError> {
    let name = match pipeline {
        Pipeline::GroupFiltration => "probe group-filtration",
        Pipeline::CosetFiltration => "probe coset-filtration",
        Pipeline::Roundtrip => "probe roundtrip",
        Pipeline::Vr => "probe vr",
    };
    let mut r = Report::new(name, cfg);
    let group = build_group(&cfg.group)?;
    let one = || Character::new(vec![integer(1)]);
    match (pipeline, &group) {
        (Pipeline::GroupFiltration, AnyGroup::Cyclic) => {
            group_filtration(&InfiniteCyclic, &character(&InfiniteCyclic, cfg, one)?, cfg, &mut r)?
        }
        (Pipeline::GroupFiltration, AnyGroup::Bs(g)) => group_filtration(g, &character(g, cfg, || g.tau())?, cfg, &mut r)?,
        (Pipeline::GroupFiltration, AnyGroup::Tri(g)) => {
            group_filtration(g, &character(g, cfg, || tri_default_character(g))?, cfg, &mut r)?
        }
        (Pipeline::CosetFiltration, AnyGroup::Bs(g)) => coset_filtration(g, &character(g, cfg, || g.tau())?, cfg, &mut r)?,
        (Pipeline::CosetFiltration, AnyGroup::Tri(g)) => {
            coset_filtration(g, &character(g, cfg, || tri_default_character(g))?, cfg, &mut r)?
        }
        (Pipeline::Roundtrip, AnyGroup::Bs(g)) => roundtrip(g, &character(g, cfg, || g.tau())?, cfg, &mut r)?,
        (Pipeline::Roundtrip, AnyGroup::Tri(g)) => {
            roundtrip(g, &character(g, cfg, || tri_default_character(g))?, cfg, &mut r)?
        }
        (Pipeline::Vr, AnyGroup::Cyclic) => vr(&InfiniteCyclic, &character(&InfiniteCyclic, cfg, one)?, cfg, &mut r)?,
        (Pipeline::Vr, AnyGroup::Bs(g)) => vr(g, &character(g, cfg, || g.tau())?, cfg, &mut r)?,
        (Pipeline::Vr, AnyGroup::Tri(g)) => vr(g, &character(g, cfg, || tri_default_character(g))?, cfg, &mut r)?,
        (_, AnyGroup::Cyclic) => {
            return Err(CliError::Usage(format!("{name} needs a Hecke pair: BS(m,n) or TRI(n;P)")));
        }
    }
    Ok(r)
}

fn ring(cfg: &RunConfig) -> Result<RingSpec, CliError> {
    cfg.ring.parse().map_err(super::usage)
}

fn filtration_evidence<V: Clone + std::hash::Hash + Eq>(
    f: &Filtration<V>,
    cfg: &RunConfig,
    r: &mut Report,
) -> Result<(), CliError> {
    let report = essential_acyclicity_probe(&f.stages, cfg.degree, ring(cfg)?)
        .map_err(|e| CliError::Contract(e.to_string()))?;
    let homology: Vec<String> = report.stage_homology.iter().map(|h| h.to_string()).collect();
    r.evidence(
        "filtration",
        json!({
            "translates": f.translates.len(),
            "radii": f.radii,
            "vertices": f.vertices.len(),
            "stage_homology": homology,
        }),
    );
    r.evidence("probe", report);
    Ok(())
}

fn group_filtration<G: Group>(g: &G, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    guard_filtration(g, cfg.scales.last().copied().unwrap_or(0), cfg)?;
    guard_ball(g, cfg.outer(), cfg)?;
    let f = build_group_filtration(g, chi, cfg.window, &cfg.scales)?;
    filtration_evidence(&f, cfg, r)?;
    let graph = cayley_ball(g, cfg.outer(), chi)?;
    let zero = integer(0);
    let conn = connectivity_probe(&graph, Some(&zero), cfg.radius, cfg.outer())?;
    r.evidence("connectivity", conn);
    Ok(())
}

fn coset_filtration<H: HeckePair>(pair: &H, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    guard_filtration(pair, cfg.scales.last().copied().unwrap_or(0), cfg)?;
    let f = build_coset_filtration(pair, chi, cfg.window, &cfg.scales)?;
    filtration_evidence(&f, cfg, r)
}

fn roundtrip<H: HeckePair>(pair: &H, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    guard_filtration(pair, cfg.coset_radius, cfg)?;
    let window = RoundtripWindow {
        w: cfg.window,
        c_radius: cfg.coset_radius,
        f_radius: cfg.coset_radius,
        lambda_radius: cfg.lambda_radius,
        samples: cfg.samples,
        seed: cfg.seed,
    };
    let report = phi_psi_roundtrip(pair, chi, window)?;
    r.property("phi_psi.identity", report.phi_psi_identity, Some(cfg.seed), json!({"simplices": report.phi_psi_simplices}));
    r.property("psi_phi.homotopy", report.psi_phi_homotopy, Some(cfg.seed), json!({"witness": report.witness}));
    r.evidence("roundtrip", report);
    Ok(())
}

fn vr<G: Group>(g: &G, chi: &Character, cfg: &RunConfig, r: &mut Report) -> Result<(), CliError> {
    guard_ball(g, 2 * cfg.radius, cfg)?;
    let window = word_metric_window(g, cfg.radius)?;
    let admitted = window.restriction(g, chi)?;
    let windows: Vec<_> = cfg.scales.iter().map(|&s| VrWindow::restricted(&window, s, admitted.clone())).collect();
    r.property("vr.zero_skeleton_invariance", zero_skeleton_invariance(&windows)?, None, json!({}));
    r.evidence(
        "window",
        json!({"radius": cfg.radius, "points": window.len(), "admitted": admitted.iter().filter(|a| **a).count()}),
    );
    r.evidence("vr_h0", vr_h0_probe(&window, Some(&admitted), &cfg.scales, ring(cfg)?)?);
    Ok(())
}
