//! Experiment configuration: a TOML file, then command-line overrides.
//!
//! ```toml
//! seed = 7
//! mode = "asymptotic3"
//! model = "dependent"
//! runs = 100000
//!
//! [params]
//! lambda = 30.0
//! r = 1.0
//! ell = 10.0
//!
//! [rule]
//! kind = "lattice"
//! points = 1024
//! shifts = 10
//!
//! [grid]
//! z_points = 20
//! n_max = 2
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sinkhop_core::qmc::DEFAULT_LEAP;
use sinkhop_core::{MeasureMode, ModelParams, PathModel, QmcRule, RuleKind};

use crate::error::{config_err, io_err, Result};
use crate::genvec::read_generator;

/// Environment variable consulted when neither flag nor file sets a seed.
pub const SEED_ENV: &str = "GHL_SEED";
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    SingleHop,
    MeasureCompare,
    Moments,
    Kl,
    Zn,
    Hops,
    Simulate,
    Validate,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SingleHop => "single-hop",
            ExperimentKind::MeasureCompare => "measure-compare",
            ExperimentKind::Moments => "moments",
            ExperimentKind::Kl => "kl",
            ExperimentKind::Zn => "zn",
            ExperimentKind::Hops => "hops",
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = crate::error::AppError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(config_err(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParamsConfig {
    /// Awake density.
    pub lambda: f64,
    pub r: f64,
    pub ell: f64,
    /// Awake probability per attempt.
    pub p: f64,
}

impl Default for ParamsConfig {
    fn default() -> Self {
        ParamsConfig {
            lambda: 30.0,
            r: 1.0,
            ell: 10.0,
            p: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleName {
    #[default]
    Halton,
    Lattice,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RuleConfig {
    pub kind: RuleName,
    /// Total Halton points, or lattice size `n`; defaults 10⁴ and 2¹⁰.
    pub points: Option<usize>,
    /// Halton batches or lattice shifts.
    pub shifts: usize,
    pub leap: u64,
    /// Lattice generating vector; relative paths resolve against the config file.
    pub generator_file: Option<PathBuf>,
    pub target_se: Option<f64>,
    pub budget: Option<usize>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            kind: RuleName::Halton,
            points: None,
            shifts: sinkhop_core::qmc::DEFAULT_REPLICATES,
            leap: DEFAULT_LEAP,
            generator_file: None,
            target_se: None,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Explicit `z` values; empty means `z_points` even steps over `(0, n·r]`.
    pub z: Vec<f64>,
    pub z_points: usize,
    /// Sink distances for measure, moment and KL tables.
    pub gamma: Vec<f64>,
    pub u_points: usize,
    pub n_max: usize,
    pub lambdas: Vec<f64>,
    pub p_values: Vec<f64>,
    /// Hop-count horizon; defaults to `2·⌈(ℓ−r)/r⌉ + 2`.
    pub horizon: Option<usize>,
    /// Level of DKW bands on simulated CDFs.
    pub alpha: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            z: Vec::new(),
            z_points: 20,
            gamma: Vec::new(),
            u_points: 50,
            n_max: 3,
            lambdas: vec![10.0, 30.0, 100.0, 300.0],
            p_values: vec![1.0, 0.1],
            horizon: None,
            alpha: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub mode: String,
    pub model: String,
    /// Simulated routes; 0 skips the empirical columns.
    pub runs: usize,
    pub threads: usize,
    pub out: PathBuf,
    pub format: Format,
    pub params: ParamsConfig,
    pub rule: RuleConfig,
    pub grid: GridConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: None,
            mode: MeasureMode::default().name().into(),
            model: PathModel::default().name().into(),
            runs: 10_000,
            threads: 1,
            out: PathBuf::from("out"),
            format: Format::Csv,
            params: ParamsConfig::default(),
            rule: RuleConfig::default(),
            grid: GridConfig::default(),
        }
    }
}

/// Flag values that take precedence over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub mode: Option<String>,
    pub model: Option<String>,
    pub points: Option<usize>,
    pub shifts: Option<usize>,
}

/// Everything an experiment needs, checked.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: ModelParams,
    pub mode: MeasureMode,
    pub model: PathModel,
    pub rule: QmcRule,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    /// Reads `path`, or returns the defaults when no file is given.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::from_toml(&std::fs::read_to_string(p).map_err(io_err(p))?),
            None => Ok(Self::default()),
        }
    }

    /// Applies flags, then falls back to `env_seed` and [`DEFAULT_SEED`] for the seed.
    pub fn apply(&mut self, o: Overrides, env_seed: Option<&str>) -> Result<()> {
        if let Some(v) = o.out {
            self.out = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if let Some(v) = o.threads {
            self.threads = v;
        }
        if let Some(v) = o.mode {
            self.mode = v;
        }
        if let Some(v) = o.model {
            self.model = v;
        }
        if let Some(v) = o.points {
            self.rule.points = Some(v);
        }
        if let Some(v) = o.shifts {
            self.rule.shifts = v;
        }
        let env = match env_seed.map(str::trim).filter(|s| !s.is_empty()) {
            Some(s) => Some(
                s.parse::<u64>()
                    .map_err(|_| config_err(format!("{SEED_ENV}={s:?} is not an unsigned integer")))?,
            ),
            None => None,
        };
        self.seed = Some(o.seed.or(self.seed).or(env).unwrap_or(DEFAULT_SEED));
        Ok(())
    }

    /// Checks the configuration; `base` anchors relative file paths.
    pub fn resolve(&self, base: &Path) -> Result<Resolved> {
        let pc = &self.params;
        let params = ModelParams::with_sleep(pc.lambda, pc.r, pc.ell, pc.p)?;
        let mode = MeasureMode::from_str(&self.mode)?;
        let model = PathModel::from_str(&self.model)?;
        let seed = self.seed.unwrap_or(DEFAULT_SEED);
        if self.threads == 0 {
            return Err(config_err("threads must be ≥ 1"));
        }
        let g = &self.grid;
        if g.z_points == 0 || g.u_points == 0 || g.n_max == 0 {
            return Err(config_err("grid sizes must be ≥ 1"));
        }
        if g.lambdas.is_empty() || g.p_values.is_empty() {
            return Err(config_err("lambdas and p_values must be nonempty"));
        }
        if g.lambdas.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return Err(config_err("lambdas must be positive"));
        }
        if g.p_values.iter().any(|&p| !(p > 0.0 && p <= 1.0)) {
            return Err(config_err("p_values must lie in (0, 1]"));
        }
        if !(g.alpha > 0.0 && g.alpha < 1.0) {
            return Err(config_err("alpha must lie in (0, 1)"));
        }
        let rule = self.rule(base, seed)?;
        Ok(Resolved {
            params,
            mode,
            model,
            rule,
            seed,
        })
    }

    fn rule(&self, base: &Path, seed: u64) -> Result<QmcRule> {
        let rc = &self.rule;
        if rc.shifts == 0 {
            return Err(config_err("shifts must be ≥ 1"));
        }
        let mut rule = match rc.kind {
            RuleName::Halton => {
                let mut r = QmcRule::halton(rc.points.unwrap_or(10_000));
                r.kind = RuleKind::HaltonLeaped { leap: rc.leap };
                r
            }
            RuleName::Lattice => match &rc.generator_file {
                Some(file) => {
                    let path = base.join(file);
                    if !path.is_file() {
                        return Err(config_err(format!("generator file {} not found", path.display())));
                    }
                    let (n, z) = read_generator(&path)?;
                    if rc.points.is_some_and(|p| p != n) {
                        return Err(config_err(format!("points = {} contradicts generator n = {n}", rc.points.unwrap_or(0))));
                    }
                    QmcRule::lattice(n, Some(z))
                }
                None => QmcRule::lattice(rc.points.unwrap_or(sinkhop_core::qmc::DEFAULT_LATTICE_POINTS), None),
            },
        }
        .with_replicates(rc.shifts)
        .with_seed(seed);
        let total = match rule.kind {
            RuleKind::HaltonLeaped { .. } => rule.points,
            RuleKind::Rank1Lattice { .. } => rule.points * rule.replicates,
        };
        rule.budget = rc.budget.unwrap_or(total).max(total);
        rule.target_se = rc.target_se;
        Ok(rule)
    }
}
