use std::io::Write;

fn main() {
    let seed = std::env::var(sigma_hecke::cli::SEED_ENV).ok();
    let out = sigma_hecke::cli::run(std::env::args_os(), seed.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
