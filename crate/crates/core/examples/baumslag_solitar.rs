// Britton normal forms in `BS(2,3)`, balls, the Cayley graph's a-lines and a
// connectivity certificate for the half-space `τ >= 0`.

use std::error::Error;

use sigma_hecke::arith::integer;
use sigma_hecke::groups::{ball, cayley_ball, connectivity_probe, BaumslagSolitar, Group};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = BaumslagSolitar::new(2, 3)?;
    let w = g.parse_word("t^-1 a^2 t a^5 t^-1 a t")?;
    println!("normal form: {}", g.format_element(&w));
    println!("tau = {}", g.char_eval(&g.tau(), &w)?);
    let relator = g.from_letters(&g.relator());
    assert!(relator.is_identity());

    for r in 0..=4 {
        println!("|ball({r})| = {}", ball(&g, r).len());
    }

    let graph = cayley_ball(&g, 6, &g.tau())?;
    let measured: Vec<_> = graph.a_line_profiles(&g).into_iter().filter(|p| p.measured).collect();
    let first = &measured[0];
    println!("{} a-lines fully visible; e.g. {}: {} edges up, {} down", measured.len(), first.line, first.up, first.down);

    for (m, n) in [(2, 1), (2, 3)] {
        let h = BaumslagSolitar::new(m, n)?;
        let graph = cayley_ball(&h, 8, &h.tau())?;
        let rep = connectivity_probe(&graph, Some(&integer(0)), 4, 8)?;
        println!("BS({m},{n}), tau >= 0: {} components among {} inner vertices", rep.components, rep.inner_vertices);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
