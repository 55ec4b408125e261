//! Run configuration: TOML file, then command-line flags, then `SIGMA_HECKE_SEED`.
//!
//! ```toml
//! group = "BS(2,3)"
//! character = "1"          # coefficients, comma separated; omitted = family default
//! window = 3               # translates come from ball(window)
//! coset_radius = 2
//! radius = 4
//! outer_radius = 8         # omitted = 2 * radius
//! scales = [1, 2, 3, 4]
//! degree = 0
//! ring = "Z"               # Z, Q or F_p
//! seed = 0
//! samples = 100
//! cap = 100
//! max_vertices = 4
//! lambda_radius = 40
//! max_ball = 100000        # refuse balls larger than this
//! max_incidences = 2000000 # refuse filtrations with more (translate, vertex) pairs
//! ```

use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "SIGMA_HECKE_SEED";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub group: String,
    pub character: Option<String>,
    pub window: usize,
    pub coset_radius: usize,
    pub radius: usize,
    pub outer_radius: Option<usize>,
    pub scales: Vec<usize>,
    pub degree: usize,
    pub ring: String,
    pub seed: u64,
    pub samples: usize,
    pub cap: usize,
    pub max_vertices: usize,
    pub lambda_radius: usize,
    pub max_ball: usize,
    pub max_incidences: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            group: "BS(2,3)".into(),
            character: None,
            window: 3,
            coset_radius: 2,
            radius: 4,
            outer_radius: None,
            scales: vec![1, 2, 3, 4],
            degree: 0,
            ring: "Z".into(),
            seed: 0,
            samples: 100,
            cap: 100,
            max_vertices: 4,
            lambda_radius: 40,
            max_ball: 100_000,
            max_incidences: 2_000_000,
        }
    }
}

impl RunConfig {
    pub fn outer(&self) -> usize {
        self.outer_radius.unwrap_or(2 * self.radius)
    }
}

/// Flags shared by `verify` and `probe`; each one overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// TOML file with any of the run parameters.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// `BS(m,n)`, `TRI(n;p,...)` or `Z`.
    #[arg(long)]
    pub group: Option<String>,
    /// Character coefficients, e.g. `1` or `1,-1/2`.
    #[arg(long = "char", allow_hyphen_values = true)]
    pub character: Option<String>,
    #[arg(short = 'W', long)]
    pub window: Option<usize>,
    #[arg(long)]
    pub coset_radius: Option<usize>,
    #[arg(long)]
    pub radius: Option<usize>,
    #[arg(long)]
    pub outer_radius: Option<usize>,
    /// `1..4` (inclusive) or `1,2,5`.
    #[arg(long)]
    pub scales: Option<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub ring: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub max_vertices: Option<usize>,
    #[arg(long)]
    pub lambda_radius: Option<usize>,
    #[arg(long)]
    pub max_ball: Option<usize>,
    #[arg(long)]
    pub max_incidences: Option<usize>,
}

pub fn parse_scales(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("bad scale list {s:?}");
    if let Some((a, b)) = s.split_once("..") {
        // Both `a..b` and `a..=b` include `b`.
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn read_file(path: &Path) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

impl ConfigArgs {
    /// File values, overridden by flags, overridden by the seed variable.
    pub fn resolve(&self, env_seed: Option<&str>) -> Result<RunConfig, String> {
        let mut c = match &self.config {
            Some(p) => read_file(p)?,
            None => RunConfig::default(),
        };
        macro_rules! take {
            ($($f:ident),*) => { $(if let Some(v) = &self.$f { c.$f = v.clone(); })* };
        }
        take!(group, window, coset_radius, radius, degree, ring, seed, samples, cap, max_vertices, lambda_radius);
        take!(max_ball, max_incidences);
        if self.character.is_some() {
            c.character = self.character.clone();
        }
        if self.outer_radius.is_some() {
            c.outer_radius = self.outer_radius;
        }
        if let Some(s) = &self.scales {
            c.scales = parse_scales(s)?;
        }
        if let Some(s) = env_seed {
            c.seed = s.trim().parse().map_err(|_| format!("{SEED_ENV}={s:?} is not a u64"))?;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_lists() {
        assert_eq!(parse_scales("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_scales("1..=2").unwrap(), vec![1, 2]);
        assert_eq!(parse_scales("1, 3,5").unwrap(), vec![1, 3, 5]);
        assert!(parse_scales("x").is_err());
    }

    #[test]
    fn precedence() {
        let dir = std::env::temp_dir().join(format!("sigma-hecke-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(&path, "group = \"BS(2,1)\"\nseed = 3\nradius = 5\n").unwrap();
        let args = ConfigArgs { config: Some(path.clone()), radius: Some(6), ..Default::default() };
        let c = args.resolve(None).unwrap();
        assert_eq!((c.group.as_str(), c.seed, c.radius), ("BS(2,1)", 3, 6));
        assert_eq!(args.resolve(Some("9")).unwrap().seed, 9);
        assert!(args.resolve(Some("nine")).is_err());
        std::fs::write(&path, "colour = 1\n").unwrap();
        assert!(args.resolve(None).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
