mod common;

use common::{half_arc, simpson};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinkhop_core::elliptic::{ellip_e, ellip_f};
use sinkhop_core::measure::{
    dependent_q, intersection_q, mean_measure_exact, mean_measure_quadrature, q_rescaled, sleep_q,
};
use sinkhop_core::{MeasureMode, ModelParams, PathState, PolarPoint};

fn q_oracle(gamma: f64, u: f64, r: f64) -> f64 {
    simpson(&|rho| 2.0 * half_arc(gamma, rho, r), gamma - r, u, 1e-13)
}

#[test]
fn exact_measure_matches_quadrature_grid() {
    for gamma in [2.0, 5.0, 10.0] {
        let p = ModelParams::new(3.0 * gamma, 1.0, 10.0).unwrap();
        for i in 1..=50 {
            let u = gamma - 1.0 + i as f64 / 50.0;
            let exact = mean_measure_exact(gamma, u, &p).unwrap();
            let quad = mean_measure_quadrature(gamma, u, &p).unwrap();
            assert!((exact - quad).abs() <= 1e-8 * quad.abs(), "γ={gamma} u={u}: {exact} vs {quad}");
        }
    }
}

#[test]
fn exact_measure_matches_independent_simpson() {
    for (gamma, u) in [(2.0, 1.5), (3.0, 2.9), (10.0, 9.2), (10.0, 10.0), (25.0, 24.5)] {
        let q = q_rescaled(gamma, u, 1.0, MeasureMode::ExactElliptic).unwrap();
        let o = q_oracle(gamma, u, 1.0);
        assert!((q - o).abs() <= 1e-9 * o, "γ={gamma} u={u}: {q} vs {o}");
    }
}

#[test]
fn legendre_integrals_match_quadrature() {
    for i in 0..=11 {
        let k = 0.09 * i as f64;
        for phi in [0.1, 0.7, 1.2, std::f64::consts::FRAC_PI_2] {
            let f = simpson(&|t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-14);
            let e = simpson(&|t: f64| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, 1e-14);
            let fz = ellip_f(phi, k).unwrap();
            let ez = ellip_e(phi, k).unwrap();
            assert!((fz.re - f).abs() < 1e-11 && fz.im.abs() < 1e-14, "F k={k} φ={phi}");
            assert!((ez.re - e).abs() < 1e-11 && ez.im.abs() < 1e-14, "E k={k} φ={phi}");
        }
    }
}

// arc-width integral of the region within r of both nodes and inside |x| ≤ u2
fn overlap_oracle(x0: PolarPoint, x1: PolarPoint, u2: f64, r: f64) -> f64 {
    let lo = (x0.u - r).max(x1.u - r);
    if u2 <= lo {
        return 0.0;
    }
    let width = |rho: f64| {
        let a0 = half_arc(x0.u, rho, r);
        let a1 = half_arc(x1.u, rho, r);
        let top = (x0.theta + a0).min(x1.theta + a1);
        let bottom = (x0.theta - a0).max(x1.theta - a1);
        (top - bottom).max(0.0)
    };
    simpson(&width, lo, u2, 1e-11)
}

#[test]
fn intersection_matches_region_quadrature() {
    let r = 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let ell = rng.random_range(4.0..12.0);
        let p = ModelParams::new(30.0, r, ell).unwrap();
        let mut path = PathState::new(&p);
        let u1 = ell - r * rng.random_range(0.02..0.999);
        let width = half_arc(ell, u1, r);
        path.push(u1, width * rng.random_range(-1.0..1.0)).unwrap();
        let u2 = u1 - r * rng.random_range(0.0..1.0);
        let (x0, x1) = (path.points()[0], path.points()[1]);
        let oracle = overlap_oracle(x0, x1, u2, r);
        let got = intersection_q(x0, x1, u2, r, MeasureMode::ExactElliptic).unwrap();
        worst = worst.max((got - oracle).abs());
        assert!((got - oracle).abs() <= 1e-4, "x1={x1:?} u2={u2}: {got} vs {oracle}");
        let dep = dependent_q(&path, u2, MeasureMode::ExactElliptic).unwrap();
        let base = q_oracle(u1, u2, r);
        assert!((dep - (base - oracle)).abs() <= 1e-4);
    }
    assert!(worst < 1e-6, "worst overlap error {worst}");
}

#[test]
fn sleep_measure_interpolates() {
    let mut path = PathState::new(&ModelParams::new(30.0, 1.0, 10.0).unwrap());
    path.push(9.3, 0.05).unwrap();
    let mode = MeasureMode::ExactElliptic;
    let ind = q_rescaled(9.3, 8.8, 1.0, mode).unwrap();
    let dep = dependent_q(&path, 8.8, mode).unwrap();
    for p in [0.1, 0.5, 1.0] {
        let params = ModelParams::with_sleep(30.0, 1.0, 10.0, p).unwrap();
        let s = sleep_q(&path, 8.8, &params, mode).unwrap();
        assert!((s - (ind - p * (ind - dep))).abs() < 1e-12);
    }
}
