//! Run configuration: a JSON file, command-line flags, or both (flags win).

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use foldcore::catalog::{CatalogId, CatalogSystem};
use foldcore::{CoeffSeq, SystemSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_singular")]
    pub singular: f64,
    #[serde(default = "default_cycle")]
    pub cycle: f64,
    #[serde(default = "default_consistency")]
    pub consistency: f64,
}

fn default_singular() -> f64 {
    foldcore::SINGULAR_EPS
}

fn default_cycle() -> f64 {
    1e-6
}

fn default_consistency() -> f64 {
    1e-9
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            singular: default_singular(),
            cycle: default_cycle(),
            consistency: default_consistency(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum FoldOn {
    #[default]
    F,
    G,
}

/// Half-open parameter grid `from, from + step, ...` below `to`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRange {
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

impl FromStr for SweepRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [from, to, step] = parts.as_slice() else {
            return Err(format!("range '{s}' must look like from:to:step"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("range '{s}': {e}"))
        };
        Ok(SweepRange {
            from: num(from)?,
            to: num(to)?,
            step: num(step)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    #[serde(default = "default_init")]
    pub init: [f64; 2],
    /// Orbit length; each command has its own default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transient: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default = "default_chaotic_horizon")]
    pub chaotic_horizon: usize,
    #[serde(default = "default_chaotic_tol")]
    pub chaotic_tol: f64,
    #[serde(default)]
    pub fold_on: FoldOn,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<SweepRange>,
}

fn default_init() -> [f64; 2] {
    [0.5, 1.0]
}

fn default_chaotic_horizon() -> usize {
    30
}

fn default_chaotic_tol() -> f64 {
    1e-6
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            system: None,
            init: default_init(),
            steps: None,
            tolerances: Tolerances::default(),
            seed: 0,
            output: None,
            transient: None,
            samples: None,
            chaotic_horizon: default_chaotic_horizon(),
            chaotic_tol: default_chaotic_tol(),
            fold_on: FoldOn::F,
            range: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerances;
        for (name, v) in [
            ("singular", t.singular),
            ("cycle", t.cycle),
            ("consistency", t.consistency),
            ("chaotic_tol", self.chaotic_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::invalid(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        if self.steps == Some(0) {
            return Err(CliError::invalid("steps must be at least 1"));
        }
        if self.samples == Some(0) {
            return Err(CliError::invalid("samples must be at least 1"));
        }
        if self.chaotic_horizon == 0 {
            return Err(CliError::invalid("chaotic horizon must be at least 1"));
        }
        if !self.init.iter().all(|v| v.is_finite()) {
            return Err(CliError::invalid("initial point must be finite"));
        }
        if let Some(sys) = &self.system {
            sys.validate()?;
        }
        Ok(())
    }

    pub fn system(&self) -> Result<&SystemSpec, CliError> {
        self.system
            .as_ref()
            .ok_or_else(|| CliError::invalid("no system given (use --system or --config)"))
    }

    pub fn init(&self) -> (f64, f64) {
        (self.init[0], self.init[1])
    }
}

/// `1.5` (constant), `1,-1` (periodic) or a JSON sequence such as
/// `{"kind":"convergent","limit":{"kind":"constant","value":0},"initial":1,"decay":0.9}`.
pub fn parse_alpha(s: &str) -> Result<CoeffSeq, String> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| format!("alpha: {e}"));
    }
    let values = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("alpha '{s}': {e}"))
        })
        .collect::<Result<Vec<f64>, String>>()?;
    match values.as_slice() {
        [v] => Ok(CoeffSeq::constant(*v)),
        _ => CoeffSeq::periodic(values).map_err(|e| e.to_string()),
    }
}

/// Options shared by all commands.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Catalog system: rhsc, rnh, mhs, coch, lna, lah, lnh (rh and custom systems via --config).
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Number, comma-separated cycle, or JSON coefficient sequence.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_alpha)]
    pub alpha: Option<CoeffSeq>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write results here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Consistency tolerance for `verify`.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub singular_eps: Option<f64>,
    #[arg(long)]
    pub cycle_tol: Option<f64>,
    /// Number of sampled initial points (`verify`) or samples per orbit (`sweep`, `lyapunov`).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub transient: Option<usize>,
    /// Step cap for `verify` in chaotic regimes.
    #[arg(long)]
    pub chaotic_horizon: Option<usize>,
    /// Consistency tolerance for `verify` in chaotic regimes.
    #[arg(long)]
    pub chaotic_tol: Option<f64>,
    /// Sweep grid `from:to:step` (half-open).
    #[arg(long)]
    pub range: Option<SweepRange>,
    #[arg(long, value_enum)]
    pub fold_on: Option<FoldOn>,
    /// Print the effective configuration as JSON and exit.
    #[arg(long)]
    pub dump_config: bool,
}

impl RunArgs {
    /// Loads `--config` (if any) and applies the flags on top.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::invalid(format!("cannot read {}: {e}", path.display()))
                })?;
                RunConfig::from_json(&text)?
            }
            None => RunConfig::default(),
        };
        if let Some(name) = &self.system {
            let id = CatalogId::from_str(name)?;
            let alpha = self.alpha.clone().unwrap_or(CoeffSeq::Constant(1.0));
            let sys = CatalogSystem::from_parts(
                id,
                self.a.unwrap_or(-1.0),
                self.b.unwrap_or(3.5),
                self.c.unwrap_or(0.0),
                alpha,
            )?;
            cfg.system = Some(sys.into());
        } else if self.a.is_some() || self.b.is_some() || self.c.is_some() || self.alpha.is_some() {
            return Err(CliError::invalid("--a, --b, --c and --alpha need --system"));
        }
        if let Some(x0) = self.x0 {
            cfg.init[0] = x0;
        }
        if let Some(y0) = self.y0 {
            cfg.init[1] = y0;
        }
        cfg.steps = self.steps.or(cfg.steps);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.output = self.out.clone().or(cfg.output);
        cfg.samples = self.samples.or(cfg.samples);
        cfg.transient = self.transient.or(cfg.transient);
        cfg.range = self.range.or(cfg.range);
        if let Some(t) = self.tol {
            cfg.tolerances.consistency = t;
        }
        if let Some(t) = self.singular_eps {
            cfg.tolerances.singular = t;
        }
        if let Some(t) = self.cycle_tol {
            cfg.tolerances.cycle = t;
        }
        cfg.chaotic_horizon = self.chaotic_horizon.unwrap_or(cfg.chaotic_horizon);
        cfg.chaotic_tol = self.chaotic_tol.unwrap_or(cfg.chaotic_tol);
        cfg.fold_on = self.fold_on.unwrap_or(cfg.fold_on);
        cfg.validate()?;
        Ok(cfg)
    }
}
