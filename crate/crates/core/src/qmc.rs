//! Quasi-Monte Carlo rules and the importance-sampling hop transform.
//!
//! Two point sets are available. A leaped Halton sequence takes coordinate
//! `j` of point `i` as the radical inverse of `i·leap` in the `j`-th prime; its
//! error is estimated from contiguous batch means. A rank-1 lattice uses the
//! points `{k z/n + Δ}` for independent uniform shifts `Δ`, and the spread of
//! the per-shift means gives the error.
//!
//! Estimation is split into replicates (batches or shifts) so that callers
//! can evaluate them in parallel and then [`Plan::combine`] them in index
//! order, which keeps results bit-identical across worker counts.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::measure::expansion_coeffs;

pub const DEFAULT_LEAP: u64 = 409;
pub const DEFAULT_REPLICATES: usize = 10;
pub const DEFAULT_LATTICE_POINTS: usize = 1 << 10;

/// The first `n` primes.
pub fn first_primes(n: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(n);
    let mut cand = 2u64;
    while primes.len() < n {
        if primes.iter().take_while(|&&p| p * p <= cand).all(|&p| cand % p != 0) {
            primes.push(cand);
        }
        cand += 1;
    }
    primes
}

/// Van der Corput radical inverse of `i` in `base`.
pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut scale = inv;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * scale;
        i /= base;
        scale *= inv;
    }
    out
}

fn halton_fill(index: u64, leap: u64, primes: &[u64], out: &mut [f64]) {
    let i = index * leap;
    for (x, &b) in out.iter_mut().zip(primes) {
        *x = radical_inverse(i, b);
    }
}

/// Point `index` (≥ 1) of the leaped Halton sequence in `dim` dimensions.
pub fn halton_point(index: u64, dim: usize, leap: u64) -> Result<Vec<f64>> {
    if index == 0 || dim == 0 || leap == 0 {
        return Err(domain("Halton points need index, dim and leap ≥ 1"));
    }
    let primes = first_primes(dim);
    let mut out = vec![0.0; dim];
    halton_fill(index, leap, &primes, &mut out);
    Ok(out)
}

fn frac(x: f64) -> f64 {
    let f = x - x.floor();
    // x.floor() can round a tiny negative up to 1.0
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

fn lattice_fill(k: u64, z: &[u64], n: u64, shift: &[f64], out: &mut [f64]) {
    for ((x, &zj), &s) in out.iter_mut().zip(z).zip(shift) {
        let base = ((k % n) * (zj % n) % n) as f64 / n as f64;
        *x = frac(base + s);
    }
}

/// Point `{k z/n + shift}` of a shifted rank-1 lattice; `1 ≤ k ≤ n`.
pub fn lattice_point(k: u64, z: &[u64], n: u64, shift: &[f64]) -> Result<Vec<f64>> {
    if n == 0 || !(1..=n).contains(&k) {
        return Err(domain(format!("lattice index {k} outside 1..={n}")));
    }
    if shift.len() != z.len() {
        return Err(domain("shift and generating vector differ in dimension"));
    }
    let mut out = vec![0.0; z.len()];
    lattice_fill(k, z, n, shift, &mut out);
    Ok(out)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn bernoulli2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

/// Equal-weight `P₂` figure of merit of the lattice with generator `z`.
pub fn lattice_p2(z: &[u64], n: u64) -> f64 {
    let c = 2.0 * core::f64::consts::PI * core::f64::consts::PI;
    let mut sum = 0.0;
    for k in 0..n {
        let mut prod = 1.0;
        for &zj in z {
            let x = ((k * zj) % n) as f64 / n as f64;
            prod *= 1.0 + c * bernoulli2(x);
        }
        sum += prod;
    }
    sum / n as f64 - 1.0
}

/// Korobov generator `(1, a, a², …) mod n` with `a` minimizing `P₂`.
pub fn korobov_vector(n: u64, dim: usize) -> Result<Vec<u64>> {
    if n < 2 || dim == 0 {
        return Err(domain("Korobov search needs n ≥ 2 and dim ≥ 1"));
    }
    let powers = |a: u64| {
        let mut z = Vec::with_capacity(dim);
        let mut v = 1u64;
        for _ in 0..dim {
            z.push(v);
            v = v * a % n;
        }
        z
    };
    if dim == 1 {
        return Ok(vec![1]);
    }
    let mut best = (f64::INFINITY, 1u64);
    for a in 1..n {
        if gcd(a, n) != 1 {
            continue;
        }
        let p2 = lattice_p2(&powers(a), n);
        if p2 < best.0 {
            best = (p2, a);
        }
    }
    Ok(powers(best.1))
}

/// Which point set a [`QmcRule`] uses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    HaltonLeaped { leap: u64 },
    /// `generator = None` selects a Korobov vector for the requested dimension.
    Rank1Lattice { generator: Option<Vec<u64>> },
}

/// A point-set description with its replicate structure and budget.
///
/// For Halton rules `points` is the total count, split into `replicates`
/// contiguous batches; for lattices it is `n` and `replicates` is the number
/// of random shifts.
#[derive(Debug, Clone, PartialEq)]
pub struct QmcRule {
    pub kind: RuleKind,
    pub points: usize,
    pub replicates: usize,
    pub seed: u64,
    /// Largest total number of integrand evaluations.
    pub budget: usize,
    /// When set, point counts double until every output meets this standard error.
    pub target_se: Option<f64>,
}

impl QmcRule {
    pub fn halton(points: usize) -> Self {
        QmcRule {
            kind: RuleKind::HaltonLeaped { leap: DEFAULT_LEAP },
            points,
            replicates: DEFAULT_REPLICATES,
            seed: 0,
            budget: points,
            target_se: None,
        }
    }

    pub fn lattice(n: usize, generator: Option<Vec<u64>>) -> Self {
        QmcRule {
            kind: RuleKind::Rank1Lattice { generator },
            points: n,
            replicates: DEFAULT_REPLICATES,
            seed: 0,
            budget: n * DEFAULT_REPLICATES,
            target_se: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_replicates(mut self, replicates: usize) -> Self {
        self.replicates = replicates;
        self
    }

    pub fn with_target(mut self, target_se: f64, budget: usize) -> Self {
        self.target_se = Some(target_se);
        self.budget = budget;
        self
    }

    fn total(&self) -> usize {
        match self.kind {
            RuleKind::HaltonLeaped { .. } => self.points,
            RuleKind::Rank1Lattice { .. } => self.points * self.replicates,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.points == 0 || self.replicates == 0 {
            return Err(domain("rule needs at least one point and one replicate"));
        }
        match &self.kind {
            RuleKind::HaltonLeaped { leap } => {
                if *leap == 0 {
                    return Err(domain("Halton leap must be ≥ 1"));
                }
                if self.points < self.replicates {
                    return Err(domain("Halton rule needs at least one point per batch"));
                }
            }
            RuleKind::Rank1Lattice { generator: Some(z) } => {
                if z.iter().any(|&zj| zj == 0 || zj >= self.points as u64) && self.points > 1 {
                    return Err(domain("lattice generator components must lie in [1, n−1]"));
                }
            }
            RuleKind::Rank1Lattice { generator: None } => {}
        }
        if self.total() > self.budget {
            return Err(domain(format!(
                "rule needs {} evaluations, above budget {}",
                self.total(),
                self.budget
            )));
        }
        Ok(())
    }

    /// Resolves the rule for integrands on `[0,1)^dim`.
    pub fn plan(&self, dim: usize) -> Result<Plan> {
        self.validate()?;
        if dim == 0 {
            return Err(domain("integrand dimension must be ≥ 1"));
        }
        let points = match &self.kind {
            RuleKind::HaltonLeaped { leap } => PlanPoints::Halton {
                leap: *leap,
                primes: first_primes(dim),
            },
            RuleKind::Rank1Lattice { generator } => {
                let n = self.points as u64;
                let z = match generator {
                    Some(z) => {
                        if z.len() < dim {
                            return Err(domain(format!(
                                "generating vector has {} components, integrand needs {dim}",
                                z.len()
                            )));
                        }
                        z[..dim].to_vec()
                    }
                    None if n == 1 => vec![0; dim],
                    None => korobov_vector(n, dim)?,
                };
                let shifts = (0..self.replicates)
                    .map(|s| {
                        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                        rng.set_stream(s as u64);
                        (0..dim).map(|_| rng.random::<f64>()).collect()
                    })
                    .collect();
                PlanPoints::Lattice { z, shifts }
            }
        };
        Ok(Plan {
            rule: self.clone(),
            dim,
            points,
        })
    }
}

#[derive(Debug, Clone)]
enum PlanPoints {
    Halton { leap: u64, primes: Vec<u64> },
    Lattice { z: Vec<u64>, shifts: Vec<Vec<f64>> },
}

/// A rule resolved for one dimension: concrete primes or generator and shifts.
#[derive(Debug, Clone)]
pub struct Plan {
    rule: QmcRule,
    dim: usize,
    points: PlanPoints,
}

/// A value with its standard error and the number of evaluations behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl Plan {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rule(&self) -> &QmcRule {
        &self.rule
    }

    pub fn replicates(&self) -> usize {
        self.rule.replicates
    }

    pub fn samples(&self) -> usize {
        self.rule.total()
    }

    // half-open point-index range of replicate `rep`
    fn replicate_range(&self, rep: usize) -> (u64, u64) {
        match self.points {
            PlanPoints::Halton { .. } => {
                let total = self.rule.points as u64;
                let b = self.rule.replicates as u64;
                let start = total * rep as u64 / b;
                let end = total * (rep as u64 + 1) / b;
                (start + 1, end + 1)
            }
            PlanPoints::Lattice { .. } => (1, self.rule.points as u64 + 1),
        }
    }

    /// Writes point `k` of replicate `rep` into `out`.
    pub fn point(&self, rep: usize, k: u64, out: &mut [f64]) {
        match &self.points {
            PlanPoints::Halton { leap, primes } => halton_fill(k, *leap, primes, out),
            PlanPoints::Lattice { z, shifts } => {
                lattice_fill(k, z, self.rule.points as u64, &shifts[rep], out)
            }
        }
    }

    /// Mean of each of the `outputs` integrand components over replicate `rep`.
    pub fn replicate_mean<F>(&self, rep: usize, outputs: usize, mut f: F) -> Result<Vec<f64>>
    where
        F: FnMut(&[f64], &mut [f64]) -> Result<()>,
    {
        let (start, end) = self.replicate_range(rep);
        let mut x = vec![0.0; self.dim];
        let mut y = vec![0.0; outputs];
        let mut acc = vec![0.0; outputs];
        for k in start..end {
            self.point(rep, k, &mut x);
            y.iter_mut().for_each(|v| *v = 0.0);
            f(&x, &mut y)?;
            for (a, v) in acc.iter_mut().zip(&y) {
                *a += v;
            }
        }
        let count = (end - start) as f64;
        acc.iter_mut().for_each(|a| *a /= count);
        Ok(acc)
    }

    /// Combines replicate means (in replicate order) into estimates.
    pub fn combine(&self, means: &[Vec<f64>]) -> Vec<Estimate> {
        let outputs = means.first().map_or(0, |m| m.len());
        let samples = self.samples();
        let (sizes, weighted) = match self.points {
            PlanPoints::Halton { .. } => (
                (0..means.len())
                    .map(|rep| {
                        let (a, b) = self.replicate_range(rep);
                        (b - a) as f64
                    })
                    .collect::<Vec<_>>(),
                true,
            ),
            PlanPoints::Lattice { .. } => (vec![1.0; means.len()], false),
        };
        let total_w: f64 = sizes.iter().sum();
        let reps = means.len() as f64;
        (0..outputs)
            .map(|j| {
                let value = if weighted {
                    means.iter().zip(&sizes).map(|(m, w)| m[j] * w).sum::<f64>() / total_w
                } else {
                    means.iter().map(|m| m[j]).sum::<f64>() / reps
                };
                let std_error = if means.len() > 1 {
                    let mu = means.iter().map(|m| m[j]).sum::<f64>() / reps;
                    let var = means.iter().map(|m| (m[j] - mu) * (m[j] - mu)).sum::<f64>() / (reps - 1.0);
                    (var / reps).sqrt()
                } else {
                    0.0
                };
                Estimate {
                    value,
                    std_error,
                    samples,
                }
            })
            .collect()
    }

    /// The next plan in a doubling sequence, if the budget allows one.
    pub fn refine(&self) -> Option<Result<Plan>> {
        let fixed = matches!(&self.rule.kind, RuleKind::Rank1Lattice { generator: Some(_) });
        if fixed {
            return None;
        }
        let mut next = self.rule.clone();
        next.points *= 2;
        if next.total() > next.budget {
            return None;
        }
        Some(next.plan(self.dim))
    }
}

/// Vector-valued integrand: reads a point, writes one value per output.
pub type Integrand<'a> = dyn Fn(&[f64], &mut [f64]) -> Result<()> + Sync + 'a;

/// Evaluates every replicate of a plan, returning the means in replicate order.
pub trait ReplicateRunner {
    fn run(&self, plan: &Plan, outputs: usize, f: &Integrand<'_>) -> Result<Vec<Vec<f64>>>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SerialRunner;

impl ReplicateRunner for SerialRunner {
    fn run(&self, plan: &Plan, outputs: usize, f: &Integrand<'_>) -> Result<Vec<Vec<f64>>> {
        (0..plan.replicates())
            .map(|rep| plan.replicate_mean(rep, outputs, f))
            .collect()
    }
}

/// Replicate means together with the plan that produced them.
#[derive(Debug, Clone)]
pub struct Replicated {
    pub plan: Plan,
    pub means: Vec<Vec<f64>>,
}

impl Replicated {
    pub fn estimates(&self) -> Vec<Estimate> {
        self.plan.combine(&self.means)
    }
}

/// Largest standard error over the raw outputs.
pub fn worst_std_error(plan: &Plan, means: &[Vec<f64>]) -> f64 {
    plan.combine(means).iter().map(|e| e.std_error).fold(0.0, f64::max)
}

/// Runs `rule` on `f`, doubling the point count while `score` (an achieved
/// standard error) exceeds the rule's target.
pub fn run_rule<R, S>(
    rule: &QmcRule,
    dim: usize,
    outputs: usize,
    f: &Integrand<'_>,
    runner: &R,
    score: S,
) -> Result<Replicated>
where
    R: ReplicateRunner + ?Sized,
    S: Fn(&Plan, &[Vec<f64>]) -> f64,
{
    let mut plan = rule.plan(dim)?;
    loop {
        let means = runner.run(&plan, outputs, f)?;
        let Some(target) = plan.rule.target_se else {
            return Ok(Replicated { plan, means });
        };
        let achieved = score(&plan, &means);
        if achieved <= target {
            return Ok(Replicated { plan, means });
        }
        match plan.refine() {
            Some(next) => plan = next?,
            None => {
                return Err(Error::BudgetExceeded {
                    achieved,
                    target,
                    samples: plan.samples(),
                })
            }
        }
    }
}

/// Estimates the integrals of a vector-valued integrand over `[0,1)^dim`.
///
/// With a target standard error, the point count doubles until every output
/// meets it or the budget runs out ([`Error::BudgetExceeded`]).
pub fn randomized_estimate_vec<F>(rule: &QmcRule, dim: usize, outputs: usize, f: F) -> Result<Vec<Estimate>>
where
    F: Fn(&[f64], &mut [f64]) -> Result<()> + Sync,
{
    Ok(run_rule(rule, dim, outputs, &f, &SerialRunner, worst_std_error)?.estimates())
}

/// Scalar form of [`randomized_estimate_vec`].
pub fn randomized_estimate<F>(rule: &QmcRule, dim: usize, f: F) -> Result<Estimate>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let est = randomized_estimate_vec(rule, dim, 1, |x, y| {
        y[0] = f(x)?;
        Ok(())
    })?;
    Ok(est[0])
}

/// Inverse-transform sampler for one hop, built on `F̃(c) = e^{−λq₀(r−c)^{3/2}}`,
/// the leading-order form of the advancement CDF, truncated to `[0, c_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImportanceSampler {
    gamma: f64,
    r: f64,
    q0: f64,
    rate: f64,
    c_max: f64,
    // L(c) = −λq₀(r−c)^{3/2}; values relative to L(c_max)
    log_top: f64,
    rho: f64,
    one_minus_rho: f64,
}

impl ImportanceSampler {
    pub fn new(gamma: f64, lambda: f64, r: f64, c_max: f64) -> Result<Self> {
        let q0 = expansion_coeffs(gamma, r)?.q0;
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(domain(format!("sampler needs λ > 0, got {lambda}")));
        }
        if !(c_max > 0.0 && c_max <= r) {
            return Err(domain(format!("c_max={c_max} outside (0, {r}]")));
        }
        let rate = lambda * q0;
        let log = |c: f64| -rate * (r - c).powf(1.5);
        let log_top = log(c_max);
        let rho = (log(0.0) - log_top).exp();
        let one_minus_rho = -(log(0.0) - log_top).exp_m1();
        Ok(ImportanceSampler {
            gamma,
            r,
            q0,
            rate,
            c_max,
            log_top,
            rho,
            one_minus_rho,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    pub fn c_max(&self) -> f64 {
        self.c_max
    }

    /// `F̃(0)`, the leading-order void probability.
    pub fn void_floor(&self) -> f64 {
        (-self.rate * self.r.powf(1.5)).exp()
    }

    /// `ΔF̃ = F̃(c_max) − F̃(0)`.
    pub fn delta(&self) -> f64 {
        self.log_top.exp() * self.one_minus_rho
    }

    fn check(&self, c: f64) -> Result<()> {
        if !(c >= 0.0 && c <= self.c_max) {
            return Err(domain(format!("c={c} outside [0, {}]", self.c_max)));
        }
        Ok(())
    }

    pub fn cdf(&self, c: f64) -> Result<f64> {
        self.check(c)?;
        let rel = (-self.rate * (self.r - c).powf(1.5) - self.log_top).exp();
        Ok(((rel - self.rho) / self.one_minus_rho).clamp(0.0, 1.0))
    }

    pub fn pdf(&self, c: f64) -> Result<f64> {
        self.check(c)?;
        Ok(self.pdf_unchecked(c))
    }

    pub(crate) fn pdf_unchecked(&self, c: f64) -> f64 {
        let t = (self.r - c).max(0.0);
        let rel = (-self.rate * t.powf(1.5) - self.log_top).exp();
        1.5 * self.rate * t.sqrt() * rel / self.one_minus_rho
    }

    /// `c` with `cdf(c) = t`.
    pub fn inverse(&self, t: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(domain(format!("uniform variate {t} outside [0, 1]")));
        }
        Ok(self.inverse_unchecked(t))
    }

    pub(crate) fn inverse_unchecked(&self, t: f64) -> f64 {
        // ln(tΔ + F̃(0)) − L(c_max), accurate at both ends of [0, 1]
        let tail = self.rho + t * self.one_minus_rho;
        let log_rel = if tail < 0.5 {
            tail.ln()
        } else {
            (-(1.0 - t) * self.one_minus_rho).ln_1p()
        };
        let depth = -(self.log_top + log_rel) / self.rate;
        (self.r - depth.max(0.0).powf(2.0 / 3.0)).clamp(0.0, self.c_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn halton_examples() {
        let xs: Vec<f64> = (1..=3).map(|i| halton_point(i, 1, 1).unwrap()[0]).collect();
        assert_eq!(xs, vec![0.5, 0.25, 0.75]);
        assert!((halton_point(1, 2, 1).unwrap()[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(halton_point(1, 1, 2).unwrap()[0], 0.25);
        assert!(halton_point(0, 1, 1).is_err());
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(lattice_point(1, &[0], 1, &[0.0]).unwrap(), vec![0.0]);
        assert_eq!(lattice_point(2, &[1, 3], 4, &[0.0, 0.0]).unwrap(), vec![0.5, 0.5]);
        assert_eq!(lattice_point(4, &[1, 3], 4, &[0.3, 0.7]).unwrap(), vec![0.3, 0.7]);
        assert!(lattice_point(5, &[1, 3], 4, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn korobov_is_coprime() {
        let z = korobov_vector(1024, 4).unwrap();
        assert_eq!(z[0], 1);
        assert!(z.iter().all(|&zj| gcd(zj, 1024) == 1));
        assert!(lattice_p2(&z, 1024) < lattice_p2(&[1, 1, 1, 1], 1024));
    }

    #[test]
    fn constant_integrand() {
        for rule in [QmcRule::halton(1000), QmcRule::lattice(64, None)] {
            let e = randomized_estimate(&rule, 3, |_| Ok(1.0)).unwrap();
            assert_eq!(e.value, 1.0);
            assert_eq!(e.std_error, 0.0);
        }
    }

    #[test]
    fn product_integrand() {
        for rule in [QmcRule::halton(4000), QmcRule::lattice(256, None).with_seed(3)] {
            let e = randomized_estimate(&rule, 2, |x| Ok(x[0] * x[1])).unwrap();
            assert!((e.value - 0.25).abs() <= 3.0 * e.std_error.max(1e-6), "{e:?}");
        }
    }

    #[test]
    fn target_doubling_and_budget() {
        let rule = QmcRule::halton(100).with_target(1e-4, 100_000);
        let e = randomized_estimate(&rule, 2, |x| Ok(x[0] * x[1])).unwrap();
        assert!(e.std_error <= 1e-4 && e.samples > 100);
        let rule = QmcRule::halton(100).with_target(1e-12, 800);
        assert!(matches!(
            randomized_estimate(&rule, 2, |x| Ok(x[0] * x[1])),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sampler_normalization_and_round_trip() {
        let s = ImportanceSampler::new(10.0, 30.0, 1.0, 1.0).unwrap();
        assert_eq!(s.cdf(0.0).unwrap(), 0.0);
        assert!((s.cdf(1.0).unwrap() - 1.0).abs() < 1e-15);
        for i in 0..=100 {
            let c = i as f64 / 100.0;
            let back = s.inverse(s.cdf(c).unwrap()).unwrap();
            assert!((back - c).abs() < 1e-10, "{c} {back}");
        }
        let mass = crate::quad::integrate(|c| s.pdf(c).unwrap(), 0.0, 1.0, 1e-13, 0.0).unwrap().value;
        assert!((mass - 1.0).abs() < 1e-10);
        assert!((s.delta() - (1.0 - s.void_floor())).abs() < 1e-15);
    }

    #[test]
    fn truncated_sampler() {
        let s = ImportanceSampler::new(8.0, 30.0, 1.0, 0.4).unwrap();
        assert!((s.inverse(1.0).unwrap() - 0.4).abs() < 1e-12);
        assert_eq!(s.inverse(0.0).unwrap(), 0.0);
        assert!(s.cdf(0.5).is_err());
        assert!(ImportanceSampler::new(8.0, 30.0, 1.0, 0.0).is_err());
    }
}
