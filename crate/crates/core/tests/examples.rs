// Every example runs to completion as part of the test suite.

#[allow(dead_code)]
mod batch_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/batch_report.rs"));
}

#[test]
fn batch_report_runs() {
    batch_report::run_example().expect("example runs");
}

#[allow(dead_code)]
mod baumslag_solitar {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/baumslag_solitar.rs"));
}

#[test]
fn baumslag_solitar_runs() {
    baumslag_solitar::run_example().expect("example runs");
}

#[allow(dead_code)]
mod commensuration {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/commensuration.rs"));
}

#[test]
fn commensuration_runs() {
    commensuration::run_example().expect("example runs");
}

#[allow(dead_code)]
mod filtrations {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/filtrations.rs"));
}

#[test]
fn filtrations_runs() {
    filtrations::run_example().expect("example runs");
}

#[allow(dead_code)]
mod homology {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/homology.rs"));
}

#[test]
fn homology_runs() {
    homology::run_example().expect("example runs");
}

#[allow(dead_code)]
mod padic_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/padic_arithmetic.rs"));
}

#[test]
fn padic_arithmetic_runs() {
    padic_arithmetic::run_example().expect("example runs");
}

#[allow(dead_code)]
mod schlichting_completion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/schlichting_completion.rs"));
}

#[test]
fn schlichting_completion_runs() {
    schlichting_completion::run_example().expect("example runs");
}

#[allow(dead_code)]
mod sigma_classify {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sigma_classify.rs"));
}

#[test]
fn sigma_classify_runs() {
    sigma_classify::run_example().expect("example runs");
}

#[allow(dead_code)]
mod triangular_matrices {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/triangular_matrices.rs"));
}

#[test]
fn triangular_matrices_runs() {
    triangular_matrices::run_example().expect("example runs");
}

#[allow(dead_code)]
mod vietoris_rips {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/vietoris_rips.rs"));
}

#[test]
fn vietoris_rips_runs() {
    vietoris_rips::run_example().expect("example runs");
}
