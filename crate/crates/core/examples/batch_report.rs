// Drives the command-line entry point in-process and reads back its JSON report.

use std::error::Error;

use sigma_hecke::cli;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let out = cli::run(["sigma-hecke", "verify", "groups", "--group", "BS(2,3)", "--seed", "3"], None);
    let report: serde_json::Value = serde_json::from_str(&out.stdout)?;
    println!("exit {} passed {}", out.code, report["passed"]);
    for p in report["properties"].as_array().into_iter().flatten() {
        println!("  {:<40} {}", p["name"].as_str().unwrap_or("?"), p["passed"]);
    }

    let out = cli::run(["sigma-hecke", "--format", "text", "bs", "classify", "-m", "2", "-n", "3", "--lambda", "0", "-k", "1"], None);
    print!("{}", out.stdout);

    let out = cli::run(["sigma-hecke", "bs", "classify", "-m", "0", "-n", "3", "--lambda", "0", "-k", "1"], None);
    println!("bad input exits {}: {}", out.code, out.stderr.trim());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
