//! Oracle checks runnable from the command line.

use sinkhop_core::elliptic::{ellip_e, ellip_f};
use sinkhop_core::hop::{hop_distribution, kl_divergence};
use sinkhop_core::measure::{mean_measure_exact, mean_measure_quadrature, q_rescaled};
use sinkhop_core::qmc::{halton_point, korobov_vector, lattice_point, ImportanceSampler};
use sinkhop_core::{quad, MeasureMode, ModelParams, Result};

use crate::experiments::Report;
use crate::output::{Summary, Table};

fn exact_vs_quadrature() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for gamma in [2.0, 5.0, 10.0] {
        let p = ModelParams::new(30.0, 1.0, 10.0)?;
        for i in 1..=50 {
            let u = gamma - 1.0 + i as f64 / 50.0;
            let e = mean_measure_exact(gamma, u, &p)?;
            let q = mean_measure_quadrature(gamma, u, &p)?;
            worst = worst.max((e - q).abs() / q);
        }
    }
    Ok(worst)
}

fn asymptotic_fidelity() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 1..=50 {
        let u = 9.0 + i as f64 / 50.0;
        let e = q_rescaled(10.0, u, 1.0, MeasureMode::ExactElliptic)?;
        let a = q_rescaled(10.0, u, 1.0, MeasureMode::Asymptotic3)?;
        worst = worst.max((a - e).abs() / e);
    }
    Ok(worst)
}

fn legendre_vs_quadrature() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..=11 {
        let k = 0.09 * i as f64;
        for phi in [0.3, 0.9, core::f64::consts::FRAC_PI_2] {
            let d = |t: f64| 1.0 - k * k * t.sin().powi(2);
            let f = quad::integrate(|t| 1.0 / d(t).sqrt(), 0.0, phi, 1e-13, 0.0)?.value;
            let e = quad::integrate(|t| d(t).sqrt(), 0.0, phi, 1e-13, 0.0)?.value;
            worst = worst.max((ellip_f(phi, k)?.re - f).abs()).max((ellip_e(phi, k)?.re - e).abs());
        }
    }
    Ok(worst)
}

fn importance_round_trip() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (gamma, lambda, c_max) in [(10.0, 30.0, 1.0), (10.0, 30.0, 0.5), (5.0, 100.0, 0.8)] {
        let s = ImportanceSampler::new(gamma, lambda, 1.0, c_max)?;
        for i in 0..=200 {
            let c = c_max * i as f64 / 200.0;
            worst = worst.max((s.inverse(s.cdf(c)?)? - c).abs());
        }
    }
    Ok(worst)
}

fn points_in_cube() -> Result<f64> {
    let mut outside = 0usize;
    for i in 1..=4096 {
        outside += halton_point(i, 6, 409)?.iter().filter(|x| !(0.0..1.0).contains(*x)).count();
    }
    let z = korobov_vector(1024, 6)?;
    let shift = [0.3, 0.7, 0.99, 0.0, 0.5, 0.25];
    for k in 1..=1024 {
        outside += lattice_point(k, &z, 1024, &shift)?.iter().filter(|x| !(0.0..1.0).contains(*x)).count();
    }
    Ok(outside as f64)
}

fn kl_diagonal() -> Result<f64> {
    let p = ModelParams::new(30.0, 1.0, 10.0)?;
    let mut worst: f64 = 0.0;
    for gamma in [2.0, 5.0, 10.0] {
        worst = worst.max(kl_divergence(gamma, gamma, &p, MeasureMode::ExactElliptic)?.abs());
    }
    Ok(worst)
}

fn hop_law_mass() -> Result<f64> {
    let p = ModelParams::new(30.0, 1.0, 10.0)?;
    let d = hop_distribution(10.0, &p, MeasureMode::ExactElliptic)?;
    let mass = quad::integrate(|c| d.density(c).unwrap_or(f64::NAN), 0.0, 1.0, 1e-12, 0.0)?.value;
    Ok((mass + d.void_atom() - 1.0).abs())
}

fn checks() -> Vec<(&'static str, f64, Result<f64>)> {
    vec![
        ("exact_vs_quadrature_rel", 1e-8, exact_vs_quadrature()),
        ("asymptotic3_rel_gamma10", 1e-2, asymptotic_fidelity()),
        ("legendre_vs_quadrature_abs", 1e-10, legendre_vs_quadrature()),
        ("importance_round_trip_abs", 1e-10, importance_round_trip()),
        ("qmc_points_outside_cube", 0.0, points_in_cube()),
        ("kl_diagonal_abs", 1e-10, kl_diagonal()),
        ("hop_law_mass_abs", 1e-8, hop_law_mass()),
    ]
}

/// Runs every check; a check passes when its value is at most its limit.
pub fn run() -> Report {
    let mut t = Table::new("validate", &["check", "value", "limit", "passed"]);
    let mut all = true;
    for (name, limit, outcome) in checks() {
        let value = outcome.unwrap_or(f64::INFINITY);
        let ok = value <= limit;
        all &= ok;
        t.push(vec![name.into(), value.into(), limit.into(), ok.into()]);
    }
    let mut summary = Summary::default();
    summary.add("all_passed", all);
    Report { tables: vec![t], summary }
}
