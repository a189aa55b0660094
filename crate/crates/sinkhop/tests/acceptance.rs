//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use sinkhop::output::parse_csv;
use sinkhop::parallel::{par_ensemble, RayonRunner};
use sinkhop_core::elliptic::LegendreConvention;
use sinkhop_core::hop::{hop_distribution, kl_divergence, moment_asymptotic, moment_numeric, sink_cdf, void_probability};
use sinkhop_core::measure::{mean_measure_exact, mean_measure_quadrature, q_exact_complex, q_rescaled};
use sinkhop_core::multihop::{hop_count_with, zn_distribution_with, HopProposal, ZnResult};
use sinkhop_core::qmc::ImportanceSampler;
use sinkhop_core::sim::{run_rng, EnsembleConfig};
use sinkhop_core::stats::{ks_critical, ks_statistic};
use sinkhop_core::{MeasureMode, ModelParams, MultihopConfig, PathModel, QmcRule};

const EXACT: MeasureMode = MeasureMode::ExactElliptic;
const SEED: u64 = 20_240_611;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn params(lambda: f64) -> ModelParams {
    ModelParams::new(lambda, 1.0, 10.0).unwrap()
}

fn z_grid(n: usize) -> Vec<f64> {
    (1..=20).map(|i| n as f64 * i as f64 / 20.0).collect()
}

fn zn(params: &ModelParams, grid: &[f64], n: usize, cfg: MultihopConfig, rule: &QmcRule) -> ZnResult {
    zn_distribution_with(grid, n, params, cfg, rule, &RayonRunner).unwrap()
}

fn exact_measure() -> Outcome {
    let mut worst_rel: f64 = 0.0;
    let mut worst_im: f64 = 0.0;
    for gamma in [2.0, 5.0, 10.0] {
        let p = params(3.0 * gamma);
        for i in 1..=50 {
            let u = gamma - 1.0 + i as f64 / 50.0;
            let exact = mean_measure_exact(gamma, u, &p).unwrap();
            let quad = mean_measure_quadrature(gamma, u, &p).unwrap();
            let z = q_exact_complex(gamma, u, 1.0, LegendreConvention::SinSquared).unwrap();
            worst_rel = worst_rel.max((exact - quad).abs() / quad);
            worst_im = worst_im.max(z.im.abs() / z.re.abs());
        }
    }
    outcome(
        worst_rel <= 1e-8 && worst_im <= 1e-9,
        format!("max rel gap {worst_rel:.2e} (≤ 1e-8), max imaginary residue {worst_im:.2e} (≤ 1e-9)"),
    )
}

fn asymptotic_measure() -> Outcome {
    let mut worst3: f64 = 0.0;
    let mut ordered = true;
    for i in 1..=200 {
        let u = 9.0 + i as f64 / 200.0;
        let e = q_rescaled(10.0, u, 1.0, EXACT).unwrap();
        let e2 = (q_rescaled(10.0, u, 1.0, MeasureMode::Asymptotic2).unwrap() - e).abs() / e;
        let e3 = (q_rescaled(10.0, u, 1.0, MeasureMode::Asymptotic3).unwrap() - e).abs() / e;
        worst3 = worst3.max(e3);
        ordered &= e2 >= e3;
    }
    outcome(
        worst3 <= 0.01 && ordered,
        format!("three-term max rel error {worst3:.4} (≤ 0.01); two-term ≥ three-term at all 200 u: {ordered}"),
    )
}

fn single_hop_law() -> Outcome {
    let p = params(30.0);
    let ens = par_ensemble(&p, &EnsembleConfig::new(100_000, SEED));
    let ell = p.ell();
    let atom = void_probability(ell, &p, EXACT).unwrap();
    let cdf = |u: f64| sink_cdf(ell, u, &p, EXACT).unwrap();
    let left = |u: f64| if u < ell { cdf(u) } else { 1.0 - atom };
    let d = ens.u1.sup_distance_mixed(cdf, left);
    outcome(d <= 0.01, format!("sup distance {d:.4} over 1e5 runs (≤ 0.01)"))
}

fn moment_asymptotics() -> Outcome {
    let lambdas = [10.0, 30.0, 100.0, 300.0];
    let mut lines = Vec::new();
    let mut passed = true;
    for m in [1u32, 2] {
        let errs: Vec<f64> = lambdas
            .iter()
            .map(|&l| {
                let p = params(l);
                let num = moment_numeric(10.0, m, &p, EXACT).unwrap();
                (moment_asymptotic(10.0, m, &p).unwrap() - num).abs() / num
            })
            .collect();
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        let last = errs[errs.len() - 1];
        passed &= decreasing && last <= 0.01;
        lines.push(format!(
            "m={m} rel errors {:?} strictly decreasing: {decreasing}, at λ=300 ≤ 1%: {}",
            errs.iter().map(|e| format!("{e:.4}")).collect::<Vec<_>>(),
            last <= 0.01
        ));
    }
    outcome(passed, lines.join("; "))
}

fn two_hop_vs_simulation() -> (Outcome, Option<ZnResult>) {
    let p = params(30.0);
    let grid = z_grid(2);
    let cfg = MultihopConfig::new(PathModel::Dependent, MeasureMode::Asymptotic3);
    let halton = zn(&p, &grid, 2, cfg, &QmcRule::halton(10_000).with_seed(SEED));
    let mut e = EnsembleConfig::new(100_000, SEED + 1);
    e.max_zn = 2;
    let ens = par_ensemble(&p, &e);
    let sup = grid
        .iter()
        .zip(&halton.conditional)
        .map(|(&z, est)| (ens.zn_conditional[1].eval(z) - est.value).abs())
        .fold(0.0, f64::max);
    (
        outcome(sup <= 0.02, format!("sup |QMC − sim| {sup:.4} on 20 z values, 1e4 Halton points, 1e5 runs (≤ 0.02)")),
        Some(halton),
    )
}

fn rule_cross_check(halton: &ZnResult) -> Outcome {
    let p = params(30.0);
    let grid = z_grid(2);
    let cfg = MultihopConfig::new(PathModel::Dependent, MeasureMode::Asymptotic3);
    let lattice = zn(&p, &grid, 2, cfg, &QmcRule::lattice(1024, None).with_seed(SEED));
    let mut worst: f64 = 0.0;
    for (h, l) in halton.conditional.iter().zip(&lattice.conditional) {
        let se = h.std_error.hypot(l.std_error);
        let ratio = if se > 0.0 { (h.value - l.value).abs() / se } else if h.value == l.value { 0.0 } else { f64::INFINITY };
        worst = worst.max(ratio);
    }
    outcome(worst <= 3.0, format!("max |Halton − lattice| / combined SE {worst:.2} (≤ 3)"))
}

fn model_ordering() -> Outcome {
    let rule = QmcRule::halton(40_000).with_seed(SEED);
    let horizon = 20;
    let mut gaps = Vec::new();
    let mut ordered = true;
    let mut worst_violation: f64 = 0.0;
    for pv in [1.0, 0.1] {
        let p = ModelParams::with_sleep(20.0, 1.0, 10.0, pv).unwrap();
        let run = |model| {
            hop_count_with(&p, MultihopConfig::new(model, MeasureMode::Asymptotic3), &rule, horizon, &RayonRunner).unwrap()
        };
        let (ind, dep) = (run(PathModel::Independent), run(PathModel::Dependent));
        let mut gap: f64 = 0.0;
        for (i, d) in ind.cdf.iter().zip(&dep.cdf) {
            gap = gap.max((i.value - d.value).abs());
            if pv == 1.0 {
                let se = i.std_error.hypot(d.std_error);
                let deficit = d.value - i.value;
                if deficit > 3.0 * se {
                    ordered = false;
                }
                if se > 0.0 {
                    worst_violation = worst_violation.max(deficit / se);
                }
            }
        }
        gaps.push(gap);
    }
    outcome(
        ordered && gaps[1] < gaps[0],
        format!(
            "independent ≥ dependent P(N ≤ n) for all n at p=1: {ordered} (largest dependent excess {worst_violation:.2} SE); max gap p=1 {:.4}, p=0.1 {:.4}",
            gaps[0], gaps[1]
        ),
    )
}

fn kl_properties() -> Outcome {
    let p = params(30.0);
    let diag = [2.0, 5.0, 9.0, 10.0]
        .iter()
        .map(|&g| kl_divergence(g, g, &p, EXACT).unwrap().abs())
        .fold(0.0, f64::max);
    let grid: Vec<f64> = (1..=20).map(|i| 1.0 + 9.0 * i as f64 / 20.0).collect();
    let min = grid.iter().map(|&g| kl_divergence(10.0, g, &p, EXACT).unwrap()).fold(f64::INFINITY, f64::min);
    let (near, far) = (kl_divergence(10.0, 2.0, &p, EXACT).unwrap(), kl_divergence(10.0, 9.0, &p, EXACT).unwrap());
    outcome(
        diag <= 1e-10 && min >= 0.0 && near > far,
        format!("max |D(γ,γ)| {diag:.1e}; min D(ℓ,γ) on 20 γ {min:.2e}; D(ℓ,2) {near:.4} > D(ℓ,9) {far:.4}"),
    )
}

fn stochastic_ordering() -> Outcome {
    let p = params(30.0);
    let mut rng = run_rng(SEED, 9);
    let mut violations = 0;
    for _ in 0..100 {
        let a = rng.random_range(2.0..10.0f64);
        let b = rng.random_range(2.0..10.0f64);
        let (g1, g2) = (a.max(b), a.min(b));
        let c = rng.random_range(0.0..1.0);
        let f1 = hop_distribution(g1, &p, EXACT).unwrap().cdf(c).unwrap();
        let f2 = hop_distribution(g2, &p, EXACT).unwrap().cdf(c).unwrap();
        if f1 < f2 {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{violations} violations of F_γ1(c) ≥ F_γ2(c) in 100 triples"))
}

fn mass_conservation() -> Outcome {
    let p = params(30.0);
    let cfg = MultihopConfig::new(PathModel::Dependent, MeasureMode::Asymptotic3);
    let rule = QmcRule::halton(10_000).with_seed(SEED);
    let totals: Vec<f64> = (1..=3).map(|n| zn(&p, &[n as f64], n, cfg, &rule).total[0].value).collect();
    let ok = totals.iter().all(|t| (t - 1.0).abs() <= 0.01);
    outcome(ok, format!("totals at z = n·r for n = 1, 2, 3: {totals:.5?}"))
}

// smallest Halton count whose worst conditional SE over the grid meets `target`
fn points_to_target(p: &ModelParams, cfg: MultihopConfig, target: f64, cap: usize) -> (Option<usize>, f64) {
    let grid = z_grid(2);
    let mut n = 1250;
    let mut worst = f64::INFINITY;
    while n <= cap {
        let r = zn(p, &grid, 2, cfg, &QmcRule::halton(n).with_seed(SEED));
        worst = r.conditional.iter().map(|e| e.std_error).fold(0.0, f64::max);
        if worst <= target {
            return (Some(n), worst);
        }
        n *= 2;
    }
    (None, worst)
}

fn importance_sampler() -> Outcome {
    let mut round_trip: f64 = 0.0;
    let mut ks_ok = true;
    let mut ks_detail = Vec::new();
    for (gamma, c_max) in [(10.0, 1.0), (10.0, 0.5), (4.0, 1.0)] {
        let s = ImportanceSampler::new(gamma, 30.0, 1.0, c_max).unwrap();
        for i in 0..=1000 {
            let c = c_max * i as f64 / 1000.0;
            round_trip = round_trip.max((s.inverse(s.cdf(c).unwrap()).unwrap() - c).abs());
        }
        let mut rng = run_rng(SEED, 11);
        let xs: Vec<f64> = (0..100_000).map(|_| s.inverse(rng.random::<f64>()).unwrap()).collect();
        let d = ks_statistic(&xs, |c| s.cdf(c.clamp(0.0, c_max)).unwrap());
        let crit = ks_critical(xs.len(), 0.01);
        ks_ok &= d < crit;
        ks_detail.push(format!("{d:.4}/{crit:.4}"));
    }

    let p = params(30.0);
    let target = 1e-3;
    let cap = 320_000;
    let reach = |model, proposal| {
        points_to_target(&p, MultihopConfig::new(model, MeasureMode::Asymptotic3).with_proposal(proposal), target, cap)
    };
    let show = |r: (Option<usize>, f64)| match r.0 {
        Some(n) => format!("{n}"),
        None => format!(">{cap} (SE {:.1e})", r.1),
    };
    let dep_is = reach(PathModel::Dependent, HopProposal::Importance);
    let dep_plain = reach(PathModel::Dependent, HopProposal::Uniform);
    let ind_is = reach(PathModel::Independent, HopProposal::Importance);
    let ind_plain = reach(PathModel::Independent, HopProposal::Uniform);
    let fewer = |a: (Option<usize>, f64), b: (Option<usize>, f64)| match (a.0, b.0) {
        (Some(x), Some(y)) => x < y,
        (Some(_), None) => true,
        _ => false,
    };
    let reduction = fewer(dep_is, dep_plain);
    outcome(
        round_trip <= 1e-10 && ks_ok && reduction,
        format!(
            "round trip {round_trip:.1e}; KS D/crit {}; points to worst-case SE {target:.0e} for P(Z_2 ≤ z | +) at λ=30, dependent model: importance {} vs plain {} (independent model: {} vs {})",
            ks_detail.join(", "),
            show(dep_is),
            show(dep_plain),
            show(ind_is),
            show(ind_plain)
        ),
    )
}

fn run_cli(dir: &Path, config: &Path, threads: usize) -> Vec<(String, Vec<u8>)> {
    let status = Command::new(env!("CARGO_BIN_EXE_sinkhop"))
        .args(["zn", "--config"])
        .arg(config)
        .args(["--seed", "7", "--threads", &threads.to_string(), "--out"])
        .arg(dir)
        .env_remove("GHL_SEED")
        .output()
        .expect("run sinkhop");
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn determinism() -> Outcome {
    let root: PathBuf = std::env::temp_dir().join(format!("sinkhop-acceptance-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&root);
    std::fs::create_dir_all(&root).unwrap();
    let config = root.join("run.toml");
    std::fs::write(&config, "runs = 2000\n[grid]\nn_max = 2\nz_points = 10\n[rule]\npoints = 4000\n").unwrap();
    let out = root.join("out");
    let a = run_cli(&out, &config, 2);
    let b = run_cli(&out, &config, 2);
    let c = run_cli(&out, &config, 1);
    let same = a == b;
    let tables = |v: &[(String, Vec<u8>)]| v.iter().filter(|(n, _)| n != "manifest.json").cloned().collect::<Vec<_>>();
    let same_across_threads = tables(&a) == tables(&c);
    let round_trip = a.iter().filter(|(n, _)| n.ends_with(".csv")).all(|(_, bytes)| {
        let text = String::from_utf8(bytes.clone()).unwrap();
        let (h, rows) = parse_csv(&text).unwrap();
        sinkhop::output::emit_csv(&h, &rows) == text
    });
    let _ = std::fs::remove_dir_all(&root);
    outcome(
        same && same_across_threads && round_trip,
        format!(
            "{} files byte-identical across repeated runs: {same}; tables identical across 1 vs 2 threads: {same_across_threads}; CSV round trip: {round_trip}",
            a.len()
        ),
    )
}

fn main() {
    let started = Instant::now();
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut record = |id, name, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let secs = t.elapsed().as_secs_f64();
        println!(
            "criterion {id:>2} {} {name}: {} [{secs:.1} s]",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
        results.push((id, name, o, secs));
    };
    record(1, "exact-measure fidelity", &mut exact_measure);
    record(2, "asymptotic-measure fidelity", &mut asymptotic_measure);
    record(3, "single-hop law vs simulation", &mut single_hop_law);
    record(4, "moment asymptotics", &mut moment_asymptotics);
    let mut halton = None;
    record(5, "two-hop QMC vs simulation", &mut || {
        let (o, h) = two_hop_vs_simulation();
        halton = h;
        o
    });
    let halton = halton.expect("criterion 5 result");
    record(6, "Halton vs shifted lattice", &mut || rule_cross_check(&halton));
    record(7, "model ordering and sleep convergence", &mut model_ordering);
    record(8, "KL properties", &mut kl_properties);
    record(9, "stochastic ordering", &mut stochastic_ordering);
    record(10, "mass conservation", &mut mass_conservation);
    record(11, "importance sampler", &mut importance_sampler);
    record(12, "CLI determinism", &mut determinism);
    let failed: Vec<u32> = results.iter().filter(|r| !r.2.passed).map(|r| r.0).collect();
    println!(
        "acceptance: {} of {} criteria passed in {:.1} s",
        results.len() - failed.len(),
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
