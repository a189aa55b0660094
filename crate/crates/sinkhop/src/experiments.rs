//! One function per experiment kind, each returning tables and a summary.

use sinkhop_core::hop::{hop_distribution, kl_divergence, moment_asymptotic, moment_numeric, sink_cdf, void_probability};
use sinkhop_core::measure::{mean_measure_exact, mean_measure_quadrature, q_rescaled};
use sinkhop_core::multihop::{default_horizon, hop_count_with, zn_distribution_with, HopCountResult};
use sinkhop_core::sim::{EnsembleConfig, EnsembleResult};
use sinkhop_core::{MeasureMode, ModelParams, MultihopConfig, PathModel};

use crate::config::{ExperimentConfig, ExperimentKind, Resolved};
use crate::error::{config_err, Result};
use crate::output::{Summary, Table, Value};
use crate::parallel::{par_ensemble, RayonRunner};
use crate::validate;

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub tables: Vec<Table>,
    pub summary: Summary,
}

impl Report {
    /// Whether every validation check passed; true for other kinds.
    pub fn passed(&self) -> bool {
        !matches!(self.summary.get("all_passed"), Some(Value::Text(s)) if s == "false")
    }
}

pub fn run(kind: ExperimentKind, cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    match kind {
        ExperimentKind::SingleHop => single_hop(cfg, res),
        ExperimentKind::MeasureCompare => measure_compare(cfg, res),
        ExperimentKind::Moments => moments(cfg, res),
        ExperimentKind::Kl => kl(cfg, res),
        ExperimentKind::Zn => zn(cfg, res),
        ExperimentKind::Hops => hops(cfg, res),
        ExperimentKind::Simulate => simulate(cfg, res),
        ExperimentKind::Validate => Ok(validate::run()),
    }
}

fn ensemble_config(cfg: &ExperimentConfig, res: &Resolved, max_zn: usize) -> EnsembleConfig {
    let mut e = EnsembleConfig::new(cfg.runs, res.seed);
    e.sleep = res.params.p() < 1.0;
    e.max_zn = max_zn;
    e.alpha = cfg.grid.alpha;
    e
}

fn simulated(cfg: &ExperimentConfig, res: &Resolved, max_zn: usize) -> Option<EnsembleResult> {
    (cfg.runs > 0).then(|| par_ensemble(&res.params, &ensemble_config(cfg, res, max_zn)))
}

fn single_hop(cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    let p = &res.params;
    let (ell, r) = (p.ell(), p.r());
    let sim = simulated(cfg, res, 1);
    let mut cols = vec!["u", "cdf", "cdf_exact"];
    if sim.is_some() {
        cols.push("empirical");
    }
    let mut t = Table::new("single_hop", &cols);
    let m = cfg.grid.u_points;
    for i in 0..=m {
        let u = ell - r + r * i as f64 / m as f64;
        let mut row: Vec<Value> = vec![
            u.into(),
            sink_cdf(ell, u, p, res.mode)?.into(),
            sink_cdf(ell, u, p, MeasureMode::ExactElliptic)?.into(),
        ];
        if let Some(s) = &sim {
            row.push(s.u1.eval(u).into());
        }
        t.push(row);
    }
    let mut summary = Summary::default();
    summary.add("void_probability", void_probability(ell, p, MeasureMode::ExactElliptic)?);
    if let Some(s) = &sim {
        let exact = |u: f64| sink_cdf(ell, u, p, MeasureMode::ExactElliptic).unwrap_or(f64::NAN);
        let atom = void_probability(ell, p, MeasureMode::ExactElliptic)?;
        let left = |u: f64| if u < ell { exact(u) } else { 1.0 - atom };
        summary.add("runs", s.runs);
        summary.add("sup_distance", s.u1.sup_distance_mixed(exact, left));
        summary.add("empirical_void_rate", s.first_hop_void_rate());
        summary.add("dkw_epsilon", s.dkw);
    }
    Ok(Report { tables: vec![t], summary })
}

fn gammas_or(cfg: &ExperimentConfig, default: Vec<f64>) -> Vec<f64> {
    if cfg.grid.gamma.is_empty() {
        default
    } else {
        cfg.grid.gamma.clone()
    }
}

fn measure_compare(cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    let p = &res.params;
    let r = p.r();
    let mut t = Table::new(
        "measure_compare",
        &["gamma", "u", "exact", "quadrature", "asymptotic2", "asymptotic3", "rel_error2", "rel_error3"],
    );
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for gamma in gammas_or(cfg, vec![2.0 * r, 5.0 * r, 10.0 * r]) {
        let m = cfg.grid.u_points;
        for i in 1..=m {
            let u = gamma - r + r * i as f64 / m as f64;
            let exact = mean_measure_exact(gamma, u, p)?;
            let quad = mean_measure_quadrature(gamma, u, p)?;
            let a2 = p.lambda() * q_rescaled(gamma, u, r, MeasureMode::Asymptotic2)?;
            let a3 = p.lambda() * q_rescaled(gamma, u, r, MeasureMode::Asymptotic3)?;
            let (e2, e3) = ((a2 - exact).abs() / exact, (a3 - exact).abs() / exact);
            worst = (worst.0.max((exact - quad).abs() / quad), worst.1.max(e2), worst.2.max(e3));
            t.push(vec![gamma.into(), u.into(), exact.into(), quad.into(), a2.into(), a3.into(), e2.into(), e3.into()]);
        }
    }
    let mut summary = Summary::default();
    summary.add("max_rel_exact_vs_quadrature", worst.0);
    summary.add("max_rel_error2", worst.1);
    summary.add("max_rel_error3", worst.2);
    Ok(Report { tables: vec![t], summary })
}

fn moments(cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    let base = &res.params;
    let mut t = Table::new("moments", &["lambda", "gamma", "m", "numeric", "numeric_mode", "asymptotic", "rel_error"]);
    for &lambda in &cfg.grid.lambdas {
        let p = base.with_lambda(lambda)?;
        for gamma in gammas_or(cfg, vec![base.ell()]) {
            for m in [1u32, 2] {
                let exact = moment_numeric(gamma, m, &p, MeasureMode::ExactElliptic)?;
                let with_mode = moment_numeric(gamma, m, &p, res.mode.resolved(gamma, p.r()))?;
                let asym = moment_asymptotic(gamma, m, &p)?;
                t.push(vec![
                    lambda.into(),
                    gamma.into(),
                    (m as usize).into(),
                    exact.into(),
                    with_mode.into(),
                    asym.into(),
                    ((asym - exact).abs() / exact).into(),
                ]);
            }
        }
    }
    Ok(Report {
        tables: vec![t],
        summary: Summary::default(),
    })
}

fn kl(cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    let p = &res.params;
    let (ell, r) = (p.ell(), p.r());
    let steps = cfg.grid.z_points;
    let default = (1..=steps).map(|i| r + (ell - r) * i as f64 / steps as f64).collect();
    let mut t = Table::new("kl", &["gamma", "kl_from_source", "kl_to_source", "void_probability"]);
    for gamma in gammas_or(cfg, default) {
        let mode = res.mode.resolved(gamma.min(ell), r);
        t.push(vec![
            gamma.into(),
            kl_divergence(ell, gamma, p, mode)?.into(),
            kl_divergence(gamma, ell, p, mode)?.into(),
            hop_distribution(gamma, p, mode)?.void_atom().into(),
        ]);
    }
    Ok(Report {
        tables: vec![t],
        summary: Summary::default(),
    })
}

/// The configured `z` values inside `(0, n·r]`, or an even grid.
pub fn z_grid(cfg: &ExperimentConfig, n: usize, r: f64) -> Vec<f64> {
    let top = n as f64 * r;
    if cfg.grid.z.is_empty() {
        let m = cfg.grid.z_points;
        (1..=m).map(|i| top * i as f64 / m as f64).collect()
    } else {
        cfg.grid.z.iter().copied().filter(|&z| z > 0.0 && z <= top).collect()
    }
}

fn multihop_config(res: &Resolved, model: PathModel) -> MultihopConfig {
    MultihopConfig::new(model, res.mode)
}

fn zn(cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    let p = &res.params;
    let sim = simulated(cfg, res, cfg.grid.n_max);
    let mut cols = vec!["n", "z", "conditional", "conditional_se", "total", "total_se", "samples"];
    if sim.is_some() {
        cols.extend(["empirical_conditional", "empirical_total"]);
    }
    let mut t = Table::new(format!("zn_{}", res.model.name()), &cols);
    let mut summary = Summary::default();
    for n in 1..=cfg.grid.n_max {
        let grid = z_grid(cfg, n, p.r());
        if grid.is_empty() {
            return Err(config_err(format!("no z values in (0, {}]", n as f64 * p.r())));
        }
        let z = zn_distribution_with(&grid, n, p, multihop_config(res, res.model), &res.rule, &RayonRunner)?;
        let mut sup: f64 = 0.0;
        for (j, &zv) in grid.iter().enumerate() {
            let (c, tot) = (z.conditional[j], z.total[j]);
            let mut row: Vec<Value> = vec![
                n.into(),
                zv.into(),
                c.value.into(),
                c.std_error.into(),
                tot.value.into(),
                tot.std_error.into(),
                z.samples.into(),
            ];
            if let Some(s) = &sim {
                let e = s.zn_conditional[n - 1].eval(zv);
                sup = sup.max((e - c.value).abs());
                row.push(e.into());
                row.push(s.zn_total[n - 1].eval(zv).into());
            }
            t.push(row);
        }
        if sim.is_some() {
            summary.add(&format!("sup_conditional_difference_n{n}"), sup);
        }
    }
    Ok(Report { tables: vec![t], summary })
}

/// File-name tag for an awake probability.
pub fn p_tag(p: f64) -> String {
    crate::output::format_number(p).replace('.', "_")
}

fn hop_counts(params: &ModelParams, res: &Resolved, model: PathModel, horizon: usize) -> Result<HopCountResult> {
    Ok(hop_count_with(params, multihop_config(res, model), &res.rule, horizon, &RayonRunner)?)
}

fn hops(cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    let base = &res.params;
    let mut tables = Vec::new();
    let mut summary = Summary::default();
    for &pv in &cfg.grid.p_values {
        let p = ModelParams::with_sleep(base.lambda(), base.r(), base.ell(), pv)?;
        let horizon = cfg.grid.horizon.unwrap_or_else(|| default_horizon(&p));
        let ind = hop_counts(&p, res, PathModel::Independent, horizon)?;
        let dep = hop_counts(&p, res, PathModel::Dependent, horizon)?;
        let sim = (cfg.runs > 0).then(|| {
            let mut e = EnsembleConfig::new(cfg.runs, res.seed);
            e.sleep = pv < 1.0;
            e.max_zn = 1;
            par_ensemble(&p, &e)
        });
        let mut cols = vec![
            "n",
            "independent",
            "independent_se",
            "dependent",
            "dependent_se",
            "independent_conditional",
            "dependent_conditional",
        ];
        if sim.is_some() {
            cols.extend(["empirical", "empirical_conditional"]);
        }
        let mut t = Table::new(format!("hops_p{}", p_tag(pv)), &cols);
        let mut gap: f64 = 0.0;
        for n in 1..=horizon {
            let (i, d) = (ind.cdf[n - 1], dep.cdf[n - 1]);
            gap = gap.max((i.value - d.value).abs());
            let mut row: Vec<Value> = vec![
                n.into(),
                i.value.into(),
                i.std_error.into(),
                d.value.into(),
                d.std_error.into(),
                ind.cdf_conditional[n - 1].value.into(),
                dep.cdf_conditional[n - 1].value.into(),
            ];
            if let Some(s) = &sim {
                row.push(s.hops_cdf(n).into());
                row.push(s.hops_cdf_conditional(n).into());
            }
            t.push(row);
        }
        let tag = p_tag(pv);
        summary.add(&format!("max_gap_p{tag}"), gap);
        summary.add(&format!("dependent_void_mass_p{tag}"), dep.void_mass.value);
        summary.add(&format!("dependent_undecided_p{tag}"), dep.undecided.value);
        tables.push(t);
    }
    Ok(Report { tables, summary })
}

fn simulate(cfg: &ExperimentConfig, res: &Resolved) -> Result<Report> {
    if cfg.runs == 0 {
        return Err(config_err("simulate needs runs ≥ 1"));
    }
    let p = &res.params;
    let s = par_ensemble(p, &ensemble_config(cfg, res, cfg.grid.n_max));
    let max_hops = s.hop_counts.iter().copied().max().unwrap_or(1);
    let mut h = Table::new("sim_hops", &["n", "cdf", "cdf_conditional"]);
    for n in 1..=max_hops {
        h.push(vec![n.into(), s.hops_cdf(n).into(), s.hops_cdf_conditional(n).into()]);
    }
    let mut z = Table::new("sim_zn", &["n", "z", "conditional", "total", "conditional_runs"]);
    for n in 1..=cfg.grid.n_max {
        for zv in z_grid(cfg, n, p.r()) {
            z.push(vec![
                n.into(),
                zv.into(),
                s.zn_conditional[n - 1].eval(zv).into(),
                s.zn_total[n - 1].eval(zv).into(),
                s.zn_conditional[n - 1].len().into(),
            ]);
        }
    }
    let mut summary = Summary::default();
    summary.add("runs", s.runs);
    summary.add("delivered_fraction", s.delivered_fraction());
    summary.add("void_rate", s.void_rate());
    summary.add("first_hop_void_rate", s.first_hop_void_rate());
    summary.add("dkw_epsilon", s.dkw);
    Ok(Report {
        tables: vec![h, z],
        summary,
    })
}
