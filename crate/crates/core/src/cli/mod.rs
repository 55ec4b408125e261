//! Command-line surface. The `sigma-hecke` binary only forwards to [`run`].
//!
//! Exit codes: 0 pass, 1 property or contract failure, 2 usage error.

pub mod config;
pub mod probe;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::{parse_rational, PrimeSet};
use crate::groups::{ball_limited, BaumslagSolitar, Character, Group, GroupError, GroupSpec, TriangularGroup};
use crate::groups::character_basis;
use crate::hecke::HeckeError;
use crate::sigma::{
    bs_sigma_classify, citation_table, tri_sigma_classify, ConeCoordinates, Degree, SigmaError, Target, Theory,
};
use crate::vietoris::VietorisError;
pub use config::{ConfigArgs, RunConfig, SEED_ENV};
pub use report::Report;

#[derive(Debug, Parser)]
#[command(name = "sigma-hecke", version, about = "Σ-invariant classifiers and Hecke-pair probes")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock time to the report (breaks byte-identical reruns).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Baumslag-Solitar classifier.
    Bs {
        #[command(subcommand)]
        action: BsAction,
    },
    /// Triangular-matrix classifier.
    Tri {
        #[command(subcommand)]
        action: TriAction,
    },
    /// Run a property suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run an evidence pipeline.
    Probe {
        pipeline: Pipeline,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Print the clause table that verdicts cite.
    Citations,
}

#[derive(Debug, Subcommand)]
pub enum BsAction {
    /// Is λτ in Σ^k of BS(m,n) (or its completion)?
    #[command(allow_negative_numbers = true)]
    Classify {
        #[arg(short)]
        m: i64,
        #[arg(short)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(short, default_value = "1")]
        k: String,
        #[arg(long, default_value = "completion")]
        target: String,
        #[arg(long, default_value = "homotopical")]
        theory: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum TriAction {
    /// Σ^k membership of a character of B_n(Z[P^-1]) given by basis coordinates.
    Classify {
        #[arg(short)]
        n: usize,
        /// Comma-separated primes.
        #[arg(long)]
        primes: String,
        /// Coordinates over χ_{k,p}, ordered by k then p.
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
        #[arg(short, default_value = "1")]
        k: String,
        #[arg(long, default_value = "completion")]
        target: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Arith,
    Groups,
    Hecke,
    Chains,
    Sigma,
    Vr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    GroupFiltration,
    CosetFiltration,
    Roundtrip,
    Vr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Contract(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Contract(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Contract(m) => write!(f, "contract violation: {m}"),
        }
    }
}

pub(crate) fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::ConjugationMismatch(_) | GroupError::InvariantViolation(_) => CliError::Contract(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<HeckeError> for CliError {
    fn from(e: HeckeError) -> Self {
        match e {
            HeckeError::Group(g) => g.into(),
            HeckeError::ExceedsCap { .. } => CliError::Usage(format!("{e}; raise --cap")),
            HeckeError::CharacterNotLambdaVanishing(_) | HeckeError::InCore | HeckeError::NotInL(_) => usage(e),
            _ => CliError::Contract(e.to_string()),
        }
    }
}

impl From<SigmaError> for CliError {
    fn from(e: SigmaError) -> Self {
        match e {
            SigmaError::Group(g) => g.into(),
            SigmaError::Hecke(h) => h.into(),
            SigmaError::Simplicial(_) | SigmaError::Chains(_) => CliError::Contract(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<VietorisError> for CliError {
    fn from(e: VietorisError) -> Self {
        match e {
            VietorisError::Group(g) => g.into(),
            _ => usage(e),
        }
    }
}

/// Result of one invocation: exit code plus what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    match execute(&cli.command, env_seed) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis());
            }
            let stdout = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            Outcome { code: if report.passed { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.code(), stdout: String::new(), stderr: format!("{e}\n") },
    }
}

pub fn execute(command: &Command, env_seed: Option<&str>) -> Result<Report, CliError> {
    match command {
        Command::Bs { action: BsAction::Classify { m, n, lambda, k, target, theory } } => {
            cmd_bs_classify(*m, *n, lambda, k, target, theory)
        }
        Command::Tri { action: TriAction::Classify { n, primes, coords, k, target } } => {
            cmd_tri_classify(*n, primes, coords, k, target)
        }
        Command::Verify { suite, config } => {
            let cfg = config.resolve(env_seed).map_err(CliError::Usage)?;
            verify::cmd_verify(*suite, &cfg)
        }
        Command::Probe { pipeline, config } => {
            let cfg = config.resolve(env_seed).map_err(CliError::Usage)?;
            probe::cmd_probe(*pipeline, &cfg)
        }
        Command::Citations => {
            let mut r = Report::new("citations", &serde_json::json!({}));
            r.evidence("citations", citation_table());
            Ok(r)
        }
    }
}

pub fn cmd_bs_classify(m: i64, n: i64, lambda: &str, k: &str, target: &str, theory: &str) -> Result<Report, CliError> {
    let lambda_q = parse_rational(lambda).map_err(usage)?;
    let degree: Degree = k.parse()?;
    let target: Target = target.parse()?;
    let theory: Theory = theory.parse()?;
    let verdict = bs_sigma_classify(m, n, &lambda_q, degree, target, theory)?;
    let echo = serde_json::json!({"m": m, "n": n, "lambda": lambda, "k": degree, "target": target, "theory": theory});
    let mut r = Report::new("bs classify", &echo);
    r.verdicts.push(verdict.into());
    Ok(r)
}

pub fn cmd_tri_classify(n: usize, primes: &str, coords: &str, k: &str, target: &str) -> Result<Report, CliError> {
    let ps = primes
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(usage))
        .collect::<Result<Vec<_>, _>>()?;
    let primes = PrimeSet::new(ps).map_err(usage)?;
    let c = ConeCoordinates::new(
        coords.split(',').map(|x| parse_rational(x.trim()).map_err(usage)).collect::<Result<_, _>>()?,
    );
    let degree: Degree = k.parse()?;
    let target: Target = target.parse()?;
    let verdict = tri_sigma_classify(n, &primes, &c, degree, target)?;
    let echo = serde_json::json!({"n": n, "primes": primes.primes(), "coords": coords, "k": degree, "target": target});
    let mut r = Report::new("tri classify", &echo);
    r.verdicts.push(verdict.into());
    Ok(r)
}

/// Concrete group named by a config.
pub(crate) enum AnyGroup {
    Cyclic,
    Bs(BaumslagSolitar),
    Tri(TriangularGroup),
}

pub(crate) fn build_group(spec: &str) -> Result<AnyGroup, CliError> {
    Ok(match spec.parse::<GroupSpec>()? {
        GroupSpec::Cyclic => AnyGroup::Cyclic,
        GroupSpec::Bs { m, n } => AnyGroup::Bs(BaumslagSolitar::new(m, n)?),
        GroupSpec::Tri { n, primes } => AnyGroup::Tri(TriangularGroup::new(n, primes)?),
    })
}

/// The configured character, or the family default (`τ`, `χ_{1,p_1}`, `1`).
pub(crate) fn character<G: Group>(group: &G, cfg: &RunConfig, default: impl FnOnce() -> Character) -> Result<Character, CliError> {
    let chi = match &cfg.character {
        Some(s) => Character::parse(s)?,
        None => default(),
    };
    group.check_character(&chi)?;
    Ok(chi)
}

/// Size of `ball(radius)`, refusing balls above `max_ball`.
pub(crate) fn guard_ball<G: Group>(g: &G, radius: usize, cfg: &RunConfig) -> Result<usize, CliError> {
    ball_limited(g, radius, cfg.max_ball)
        .map(|b| b.len())
        .map_err(|e| CliError::Usage(format!("{e}; lower the radius or raise --max-ball")))
}

/// Bounds the work of a filtration with translates from `ball(window)` and parts of
/// size `|ball(radius)|`.
pub(crate) fn guard_filtration<G: Group>(g: &G, radius: usize, cfg: &RunConfig) -> Result<(), CliError> {
    let incidences = guard_ball(g, cfg.window, cfg)? * guard_ball(g, radius, cfg)?;
    if incidences > cfg.max_incidences {
        return Err(CliError::Usage(format!(
            "window needs about {incidences} incidences; lower -W or the radii, or raise --max-incidences"
        )));
    }
    Ok(())
}

pub(crate) fn tri_default_character(g: &TriangularGroup) -> Character {
    character_basis(g.n(), g.primes()).expect("n >= 2").remove(0)
}
