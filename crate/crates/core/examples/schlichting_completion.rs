// Finite truncations of the Schlichting completion of `(BS(2,3), <a>)` and the
// character they inherit from `τ`.

use std::error::Error;

use sigma_hecke::groups::{BaumslagSolitar, Group};
use sigma_hecke::hecke::{completing_orbits_check, coset_ball, induced_char, schlichting_truncation};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let g = BaumslagSolitar::new(2, 3)?;
    let cosets = coset_ball(&g, 3);
    let x = g.parse_word("a t")?;
    let y = g.parse_word("t^-1 a t a")?;

    let sx = schlichting_truncation(&g, &x, &cosets);
    let sy = schlichting_truncation(&g, &y, &cosets);
    println!("truncation of {} moves the base coset to #{:?}", g.format_element(&x), sx.get(0));
    println!("injective on the ball: {}", sx.is_injective());

    let tau = g.tau();
    let vx = induced_char(&g, &tau, &sx, &cosets)?;
    let vy = induced_char(&g, &tau, &sy, &cosets)?;
    let vxy = induced_char(&g, &tau, &sx.compose(&g, &sy), &cosets)?;
    println!("induced tau: {vx} + {vy} = {vxy}");

    let elements: Vec<_> = cosets.representatives().cloned().collect();
    let rep = completing_orbits_check(&g, &tau, &elements, &cosets)?;
    println!("completing orbits: {} checked, {} negative, {} failures", rep.checked, rep.negative, rep.failures.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
