//! Empirical distribution helpers used by the simulator and the checks.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

/// Empirical CDF of a finite sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Ecdf {
    sorted: Vec<f64>,
}

impl Ecdf {
    pub fn new(mut samples: Vec<f64>) -> Self {
        samples.retain(|x| !x.is_nan());
        samples.sort_by(f64::total_cmp);
        Ecdf { sorted: samples }
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.sorted
    }

    /// Fraction of samples `≤ x`; 0 for an empty sample.
    pub fn eval(&self, x: f64) -> f64 {
        if self.sorted.is_empty() {
            return 0.0;
        }
        self.sorted.partition_point(|&s| s <= x) as f64 / self.sorted.len() as f64
    }

    /// Fraction of samples `< x`.
    pub fn eval_left(&self, x: f64) -> f64 {
        if self.sorted.is_empty() {
            return 0.0;
        }
        self.sorted.partition_point(|&s| s < x) as f64 / self.sorted.len() as f64
    }

    /// `sup_x |F_n(x) − F(x)|` for a continuous reference CDF `F`.
    pub fn sup_distance<F: Fn(f64) -> f64>(&self, cdf: F) -> f64 {
        self.sup_distance_mixed(&cdf, &cdf)
    }

    /// As [`Ecdf::sup_distance`] for a reference with atoms: `left(x)` is the
    /// left limit `F(x−)`, compared with `F_n(x−)` at every sample point.
    pub fn sup_distance_mixed<F, L>(&self, mut cdf: F, mut left: L) -> f64
    where
        F: FnMut(f64) -> f64,
        L: FnMut(f64) -> f64,
    {
        let n = self.sorted.len() as f64;
        let mut d: f64 = 0.0;
        let mut i = 0;
        while i < self.sorted.len() {
            let x = self.sorted[i];
            let mut j = i;
            while j < self.sorted.len() && self.sorted[j] == x {
                j += 1;
            }
            d = d.max((j as f64 / n - cdf(x)).abs()).max((left(x) - i as f64 / n).abs());
            i = j;
        }
        d
    }
}

/// Half-width of the Dvoretzky–Kiefer–Wolfowitz band at confidence `1 − alpha`.
pub fn dkw_epsilon(n: usize, alpha: f64) -> f64 {
    ((2.0 / alpha).ln() / (2.0 * n as f64)).sqrt()
}

/// One-sample Kolmogorov–Smirnov statistic against a continuous CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    Ecdf::new(samples.to_vec()).sup_distance(cdf)
}

/// Asymptotic critical value of the one-sample KS statistic at level `alpha`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Asymptotic two-sample KS critical value.
pub fn ks_critical_two_sample(n: usize, m: usize, alpha: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    (-(alpha / 2.0).ln() / 2.0).sqrt() * ((n + m) / (n * m)).sqrt()
}

/// Two-sample KS statistic.
pub fn ks_two_sample(a: &Ecdf, b: &Ecdf) -> f64 {
    let mut d: f64 = 0.0;
    for &x in a.samples().iter().chain(b.samples()) {
        d = d.max((a.eval(x) - b.eval(x)).abs());
    }
    d
}

/// L2-star discrepancy of a point set in `[0,1)^d` (Warnock's formula).
pub fn l2_star_discrepancy(points: &[Vec<f64>]) -> f64 {
    let n = points.len();
    if n == 0 {
        return 0.0;
    }
    let d = points[0].len() as i32;
    let nf = n as f64;
    let single: f64 = points
        .iter()
        .map(|p| p.iter().map(|x| 1.0 - x * x).product::<f64>())
        .sum();
    let mut pair = 0.0;
    for a in points {
        for b in points {
            pair += a.iter().zip(b).map(|(x, y)| 1.0 - x.max(*y)).product::<f64>();
        }
    }
    let t2 = 3f64.powi(-d) - 2f64.powi(1 - d) / nf * single + pair / (nf * nf);
    t2.max(0.0).sqrt()
}
