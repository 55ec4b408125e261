// Vietoris-Rips windows on a word metric: `H̃_0` across scales and the
// comparison of `VR_C` with `VR_r`.

use std::error::Error;

use sigma_hecke::chains::RingSpec;
use sigma_hecke::groups::{ball, BaumslagSolitar};
use sigma_hecke::vietoris::{cofinality_check, vr_h0_probe, word_metric_window};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (m, n) in [(2, 1), (1, 2)] {
        let g = BaumslagSolitar::new(m, n)?;
        let window = word_metric_window(&g, 3)?;
        let admitted = window.restriction(&g, &g.tau())?;
        let rep = vr_h0_probe(&window, Some(&admitted), &[1, 2, 3, 4], RingSpec::Integers)?;
        let ranks: Vec<usize> = rep.scales.iter().map(|s| s.h0_rank).collect();
        println!("BS({m},{n}), tau >= 0 in ball(3): H0 ranks {ranks:?}, first vanishing {:?}", rep.first_vanishing);
    }

    let g = BaumslagSolitar::new(2, 1)?;
    let c: Vec<_> = ball(&g, 2).elements().cloned().collect();
    let rep = cofinality_check(&g, &c, 3)?;
    println!(
        "C = ball(2): VR_C ⊆ VR_{} and VR_{} ⊆ VR_C' with C' = ball({}), {} pairs, passed {}",
        rep.forward_scale,
        rep.forward_scale,
        rep.reverse_radius,
        rep.pairs_checked,
        rep.passed()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
