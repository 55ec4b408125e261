// Closed-form Σ-invariant verdicts with the statement each one rests on.

use std::error::Error;

use sigma_hecke::arith::{integer, rational, PrimeSet};
use sigma_hecke::chains::RingSpec;
use sigma_hecke::sigma::{
    bs_sigma_classify, cone_membership, tri_sigma_classify, ConeCoordinates, Degree, Target, Theory,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (m, n, lambda) in [(1, 2, rational(-1, 1)), (2, 1, rational(1, 2)), (2, 3, integer(0)), (2, 3, integer(1))] {
        let v = bs_sigma_classify(m, n, &lambda, Degree::Finite(2), Target::Completion, Theory::Homotopical)?;
        let c = v.clause.citation();
        println!("BS({m},{n}), {lambda}·tau: {:<10} [{}] {}", v.verdict.to_string(), c.tag, c.formula);
    }
    let v = bs_sigma_classify(3, 3, &integer(0), Degree::Infinity, Target::Discrete, Theory::Homological(RingSpec::PrimeField(2)))?;
    println!("BS(3,3), 0, homological over F_2, k = inf: {}", v.verdict);

    let primes = PrimeSet::new(vec![2, 3])?;
    for coords in [vec![1, 0, 0, 0], vec![1, 1, 0, 0], vec![1, -1, 0, 2]] {
        let c = ConeCoordinates::new(coords.iter().map(|&x| integer(x)).collect());
        let v = tri_sigma_classify(3, &primes, &c, Degree::Finite(1), Target::Completion)?;
        println!("B_3(Z[1/6]) {coords:?} stratum {:?}: {} ({})", cone_membership(&c).stratum, v.verdict, v.clause.tag());
    }

    let p = PrimeSet::new(vec![2, 3])?;
    let c = ConeCoordinates::new((0..8).map(|i| integer(i64::from(i < 3))).collect());
    let v = tri_sigma_classify(5, &p, &c, Degree::Finite(2), Target::Completion)?;
    println!("B_5(Z[1/6]), three nonzero coordinates, k = 2: {}", v.verdict);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
