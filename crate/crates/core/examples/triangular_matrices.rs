// Upper triangular matrices over `Z[1/P]`: characters, the unipotent
// conjugation lemma and escaping the core of `B_n(Z)`.

use std::error::Error;

use sigma_hecke::arith::{integer, rational, PrimeSet};
use sigma_hecke::groups::{character_basis, unipotent_conjugation_check, Group, TriangularGroup};
use sigma_hecke::hecke::core_escape;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let p = PrimeSet::new(vec![2, 5])?;
    let g = TriangularGroup::new(3, p.clone())?;
    let x = g.multiply(&g.d(0, 2)?, &g.elementary(0, 2, rational(3, 10))?);
    println!("x = {}", g.format_element(&x));

    let basis = character_basis(3, &p)?;
    for (i, chi) in basis.iter().enumerate() {
        let (k, prime) = g.basis_label(i);
        println!("chi_({k},{prime})(x) = {}", g.char_eval(chi, &x)?);
    }

    let check = unipotent_conjugation_check(3, &p, 5, 0, 2, &integer(7))?;
    println!("conjugating E_13^7 by diag(5, 1, 1/5) scales the entry by {} to {}", check.exponent, check.entry);

    let a = g.elementary(0, 1, integer(1))?;
    let esc = core_escape(3, &p, &a)?;
    println!(
        "B A B^-1 has entry {} at {:?} (v_{} = {}), so it leaves B_3(Z)",
        esc.value, esc.entry, esc.prime, esc.valuation
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
