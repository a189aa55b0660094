//! Command-line front end for `sinkhop-core`: configuration files, a
//! thread-pool runner, experiment orchestration and CSV/JSON tables.
//!
//! Every experiment writes its tables plus a `manifest.json` into the output
//! directory. Output bytes depend only on the configuration, the seed and
//! the declared worker count.

pub mod config;
pub mod error;
pub mod experiments;
pub mod genvec;
pub mod output;
pub mod parallel;
pub mod validate;

use std::path::Path;

use serde_json::json;

pub use config::{ExperimentConfig, ExperimentKind, Format, Overrides};
pub use error::{AppError, Result};
pub use experiments::Report;

/// Files written by [`run_experiment`], relative to the output directory.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub files: Vec<String>,
    pub report: Report,
}

pub fn manifest(kind: ExperimentKind, cfg: &ExperimentConfig, files: &[String], report: &Report) -> Result<String> {
    let m = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "kind": kind.name(),
        "seed": cfg.seed,
        "threads": cfg.threads,
        "config": serde_json::to_value(cfg)?,
        "outputs": files,
        "summary": report.summary.to_json(),
    });
    Ok(serde_json::to_string_pretty(&m)? + "\n")
}

/// Runs `kind` on a pool of `cfg.threads` workers and writes the results
/// under `cfg.out`; `base` anchors relative paths in the config.
pub fn run_experiment(kind: ExperimentKind, cfg: &ExperimentConfig, base: &Path) -> Result<RunOutput> {
    let resolved = cfg.resolve(base)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build()?;
    let report = pool.install(|| experiments::run(kind, cfg, &resolved))?;
    let mut files = output::write_tables(&cfg.out, &report.tables, cfg.format)?;
    let path = cfg.out.join("manifest.json");
    std::fs::write(&path, manifest(kind, cfg, &files, &report)?).map_err(error::io_err(&path))?;
    files.push("manifest.json".into());
    Ok(RunOutput { files, report })
}
