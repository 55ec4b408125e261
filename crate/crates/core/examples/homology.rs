// Reduced homology of translate families and the essential-acyclicity probe.

use std::error::Error;

use sigma_hecke::chains::{essential_acyclicity_probe, induced_map_trivial, reduced_homology, RingSpec};
use sigma_hecke::simplicial::{pi0, TranslateFamily};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let hollow = TranslateFamily::from_ids(&[&[0, 1], &[1, 2], &[0, 2]]);
    let filled = TranslateFamily::from_ids(&[&[0, 1], &[1, 2], &[0, 2], &[0, 1, 2]]);
    let square = TranslateFamily::from_ids(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3], &[4]]);

    for ring in [RingSpec::Integers, RingSpec::Rationals, RingSpec::PrimeField(2)] {
        println!(
            "{ring}: hollow H1 = {}, square H0 = {}, filled H1 = {}",
            reduced_homology(&hollow, 1, ring),
            reduced_homology(&square, 0, ring),
            reduced_homology(&filled, 1, ring)
        );
    }
    println!("square has {} components", pi0(&square).count);
    println!("hollow -> filled kills H1: {}", induced_map_trivial(&hollow, &filled, 1, RingSpec::Integers)?);

    let stages = vec![hollow, filled];
    let rep = essential_acyclicity_probe(&stages, 1, RingSpec::Integers)?;
    for p in &rep.pairs {
        println!("stage {} dies by stage {:?}", p.alpha, p.beta);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
