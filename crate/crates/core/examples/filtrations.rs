// Filtrations of the half-spaces `χ >= 0` in the group and in the coset space,
// and the windowed comparison between them.

use std::error::Error;

use sigma_hecke::arith::integer;
use sigma_hecke::chains::{essential_acyclicity_probe, RingSpec};
use sigma_hecke::groups::{BaumslagSolitar, Character, InfiniteCyclic};
use sigma_hecke::sigma::{build_coset_filtration, build_group_filtration, phi_psi_roundtrip, RoundtripWindow};
use sigma_hecke::simplicial::pi0;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let chi = Character::new(vec![integer(1)]);
    let f = build_group_filtration(&InfiniteCyclic, &chi, 4, &[0, 1, 2])?;
    let rep = essential_acyclicity_probe(&f.stages, 0, RingSpec::Integers)?;
    println!("Z, chi = 1: H0 per stage {:?}", rep.stage_homology.iter().map(|h| h.to_string()).collect::<Vec<_>>());

    let g = BaumslagSolitar::new(2, 3)?;
    let tau = g.tau();
    let f = build_coset_filtration(&g, &tau, 2, &[0, 1, 2])?;
    for (r, stage) in f.radii.iter().zip(&f.stages) {
        println!("BS(2,3) cosets, radius {r}: {} vertices, {} components", stage.num_vertices(), pi0(stage).count);
    }

    let window = RoundtripWindow { w: 3, c_radius: 2, f_radius: 2, lambda_radius: 40, samples: 100, seed: 7 };
    let rt = phi_psi_roundtrip(&g, &tau, window)?;
    println!(
        "phi∘psi identity: {}, psi∘phi homotopic to inclusion: {} (|D| = {})",
        rt.phi_psi_identity, rt.psi_phi_homotopy, rt.d_size
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
