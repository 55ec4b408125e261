// Valuations, units of `Z[1/P]`, simultaneous approximation and the gap lemma.

use std::collections::BTreeMap;
use std::error::Error;

use sigma_hecke::arith::{crt_approximate, discreteness_gap, parse_rational, unit_decompose, vp, PrimeSet};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let q = parse_rational("-45/8")?;
    println!("v_2({q}) = {}, v_3 = {}, v_7 = {}", vp(&q, 2), vp(&q, 3), vp(&q, 7));

    let p = PrimeSet::new(vec![2, 3])?;
    let u = parse_rational("-27/4")?;
    let d = unit_decompose(&u, &p)?;
    println!("{u} = {} * 2^{} * 3^{}", d.sign, d.exponents[0], d.exponents[1]);
    assert_eq!(d.value(&p), u);

    // x close to 1/3 at 2 and to 5/2 at 3, to precision 4.
    let targets = BTreeMap::from([(2, parse_rational("1/3")?), (3, parse_rational("5/2")?)]);
    let x = crt_approximate(&targets, 4, &p)?;
    for (&prime, t) in &targets {
        println!("x = {x}: v_{prime}(x - {t}) = {}", vp(&(&x - t), prime));
    }

    let (prime, gap) = discreteness_gap(&parse_rational("3/2")?, &parse_rational("9/2")?, &p)?;
    println!("3/2 and 9/2 are separated at p = {prime} (valuation of the difference {gap})");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
