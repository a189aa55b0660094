use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use sinkhop::config::SEED_ENV;
use sinkhop::{run_experiment, ExperimentConfig, ExperimentKind, Format, Overrides};

/// Greedy sink routing under a 1/u node density: analytic, QMC and simulated laws.
#[derive(Parser)]
#[command(name = "sinkhop", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// RNG seed; falls back to the file, then to GHL_SEED.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_parser = ["csv", "json"])]
    format: Option<String>,

    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// exact, quadrature, asymptotic2 or asymptotic3.
    #[arg(long, global = true)]
    mode: Option<String>,

    /// independent or dependent.
    #[arg(long, global = true)]
    model: Option<String>,

    /// Halton point count or lattice size.
    #[arg(long, global = true)]
    points: Option<usize>,

    /// Halton batches or lattice shifts.
    #[arg(long, global = true)]
    shifts: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Sink-distance CDF after one hop, analytic and simulated.
    SingleHop,
    /// Exact, quadrature and asymptotic mean measures.
    MeasureCompare,
    /// Hop-length moments, numeric and asymptotic.
    Moments,
    /// KL divergence of hop laws from the source's.
    Kl,
    /// Distribution of the advancement after n hops.
    Zn,
    /// Hop-count distribution for both path models, one table per p.
    Hops,
    /// Simulated routes only.
    Simulate,
    /// Oracle checks.
    Validate,
}

impl Command {
    fn kind(self) -> ExperimentKind {
        match self {
            Command::SingleHop => ExperimentKind::SingleHop,
            Command::MeasureCompare => ExperimentKind::MeasureCompare,
            Command::Moments => ExperimentKind::Moments,
            Command::Kl => ExperimentKind::Kl,
            Command::Zn => ExperimentKind::Zn,
            Command::Hops => ExperimentKind::Hops,
            Command::Simulate => ExperimentKind::Simulate,
            Command::Validate => ExperimentKind::Validate,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match execute(&cli) {
        Ok(passed) => {
            eprintln!("wall time {:.3} s", started.elapsed().as_secs_f64());
            if passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("some checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> sinkhop::Result<bool> {
    let mut cfg = ExperimentConfig::load(cli.config.as_deref())?;
    let overrides = Overrides {
        seed: cli.seed,
        out: cli.out.clone(),
        format: cli.format.as_deref().map(str::parse::<Format>).transpose()?,
        threads: cli.threads,
        mode: cli.mode.clone(),
        model: cli.model.clone(),
        points: cli.points,
        shifts: cli.shifts,
    };
    cfg.apply(overrides, std::env::var(SEED_ENV).ok().as_deref())?;
    let base = cli
        .config
        .as_deref()
        .and_then(Path::parent)
        .map(Path::to_path_buf)
        .unwrap_or_default();
    let out = run_experiment(cli.command.kind(), &cfg, &base)?;
    for f in &out.files {
        println!("{}", cfg.out.join(f).display());
    }
    Ok(out.report.passed())
}
