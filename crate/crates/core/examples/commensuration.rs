// `Λ = <a>` in `BS(m,n)` and `B_2(Z)` in `B_2(Z[1/2])` are commensurated:
// finite indices and a finite set `F` with `CΛ ⊆ ΛF`.

use std::error::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigma_hecke::arith::PrimeSet;
use sigma_hecke::groups::{ball, BaumslagSolitar, Group, TriangularGroup};
use sigma_hecke::hecke::{
    commensuration_indices, coset_ball, random_lambda, transversal_witness, verify_transversal,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for (m, n) in [(2, 3), (1, 4), (-3, 2)] {
        let g = BaumslagSolitar::new(m, n)?;
        let idx = commensuration_indices(&g, &g.t(), 100)?;
        println!("BS({m},{n}) at t: [Λ : Λ ∩ t^-1Λt] = {}, [Λ : Λ ∩ tΛt^-1] = {}", idx.i1, idx.i2);
    }

    let g = BaumslagSolitar::new(2, 3)?;
    println!("{} cosets gΛ with |g| <= 3", coset_ball(&g, 3).len());
    let c: Vec<_> = ball(&g, 2).elements().cloned().collect();
    let tr = transversal_witness(&g, &c, 100)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples: Vec<_> = c.iter().map(|x| (x.clone(), random_lambda(&g, 10, &mut rng))).collect();
    let check = verify_transversal(&g, &tr, &samples);
    println!("|C| = {}, |F| = {}, {} samples, passed: {}", c.len(), tr.f.len(), check.checked, check.passed());

    let t = TriangularGroup::new(2, PrimeSet::new(vec![2])?)?;
    let d = t.d(0, 2)?;
    let idx = commensuration_indices(&t, &d, 100)?;
    println!("B_2(Z[1/2]) at {}: indices ({}, {})", t.format_element(&d), idx.i1, idx.i2);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
