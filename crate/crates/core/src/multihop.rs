//! Multihop advancement and hop counts.
//!
//! A path starts at `X₀ = (ℓ, 0)`. Hop `i` advances `cᵢ` toward the sink and
//! turns by `θᵢ` about it, so `uᵢ = ℓ − Σ_{j≤i} cⱼ`. Under the `λ/u` density the
//! next node has density `λ` in `(u, θ)` coordinates, which gives the joint
//! density `Π λ·wᵢ·e^{−λQ̄_{i−1}(uᵢ)}` over the hop vector. Here `wᵢ` is the
//! awake weight of the new node and `Q̄` the measure of the feasible region
//! once the previous region is (partly) excluded.
//!
//! The integrals over hop vectors are evaluated by quasi-Monte Carlo: hop
//! lengths come from the importance transform in [`crate::qmc`], refreshed at
//! each node, and angles are stretched uniformly over `±ψ`.
//!
//! A message is delivered once it reaches a node with `u ≤ r`, which then
//! relays straight to the sink, so `N = 1 + min{k : U_k ≤ r}`. A void ends
//! the path (one relay attempt).

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};
use crate::hop::void_probability;
use crate::measure::{feasible_q, q_derivative_mode, MeasureMode};
use crate::model::{psi, wrap_angle, ModelParams, PolarPoint};
use crate::qmc::{
    run_rule, Estimate, ImportanceSampler, Integrand, Plan, QmcRule, ReplicateRunner, SerialRunner,
};

/// How the previous feasible region affects the current one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathModel {
    /// Hops are drawn afresh from each node's full feasible region.
    Independent,
    /// The previous region, known empty of awake nodes, is excluded (weighted
    /// by the awake probability under sleeping).
    #[default]
    Dependent,
}

impl PathModel {
    pub fn name(self) -> &'static str {
        match self {
            PathModel::Independent => "independent",
            PathModel::Dependent => "dependent",
        }
    }
}

impl core::str::FromStr for PathModel {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "independent" => Ok(PathModel::Independent),
            "dependent" => Ok(PathModel::Dependent),
            other => Err(domain(format!("unknown path model {other:?}"))),
        }
    }
}

/// Proposal for hop lengths in the multihop integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HopProposal {
    #[default]
    Importance,
    /// `c = t·c_max`; kept for comparison.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MultihopConfig {
    pub model: PathModel,
    pub mode: MeasureMode,
    pub proposal: HopProposal,
}

impl MultihopConfig {
    pub fn new(model: PathModel, mode: MeasureMode) -> Self {
        MultihopConfig {
            model,
            mode,
            proposal: HopProposal::Importance,
        }
    }

    pub fn with_proposal(mut self, proposal: HopProposal) -> Self {
        self.proposal = proposal;
        self
    }

    /// Integration dimensions per hop.
    pub fn dims_per_hop(&self) -> usize {
        match self.model {
            PathModel::Independent => 1,
            PathModel::Dependent => 2,
        }
    }
}

/// Hop lengths and relative turning angles of a path prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct HopVector {
    pub hops: Vec<f64>,
    pub angles: Vec<f64>,
}

impl HopVector {
    pub fn new(hops: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if hops.len() != angles.len() {
            return Err(domain("hop and angle vectors differ in length"));
        }
        Ok(HopVector { hops, angles })
    }

    /// Sink distances `u₁, …, uₙ` starting from `ell`.
    pub fn sink_distances(&self, ell: f64) -> Vec<f64> {
        let mut u = ell;
        self.hops
            .iter()
            .map(|c| {
                u -= c;
                u
            })
            .collect()
    }
}

// Sequential hop evaluation shared by the densities and the integrands.
#[derive(Clone, Copy)]
struct Walker {
    lambda: f64,
    r: f64,
    exclusion: f64,
    cfg: MultihopConfig,
}

impl Walker {
    fn new(params: &ModelParams, cfg: MultihopConfig) -> Self {
        let exclusion = match cfg.model {
            PathModel::Independent => 0.0,
            PathModel::Dependent => params.p(),
        };
        Walker {
            lambda: params.lambda(),
            r: params.r(),
            exclusion,
            cfg,
        }
    }

    fn mode(&self, gamma: f64) -> MeasureMode {
        self.cfg.mode.resolved(gamma, self.r)
    }

    // λ·w·e^{−λQ̄} for a node `next` reached from `cur`, or, for the
    // independent model with the angle integrated out, λQ′e^{−λQ}.
    fn hop_factor(&self, prev: Option<PolarPoint>, cur: PolarPoint, next: PolarPoint, marginal: bool) -> Result<f64> {
        let gamma = cur.u;
        let mode = self.mode(gamma);
        if marginal {
            let q = feasible_q(None, cur, next.u, self.r, 0.0, mode)?;
            let dq = q_derivative_mode(gamma, next.u, self.r, mode)?;
            return Ok(self.lambda * dq * (-self.lambda * q).exp());
        }
        let weight = match prev {
            Some(prev) if self.exclusion > 0.0 && prev.distance(next) < self.r => 1.0 - self.exclusion,
            _ => 1.0,
        };
        if weight == 0.0 {
            return Ok(0.0);
        }
        let q = feasible_q(prev, cur, next.u, self.r, self.exclusion, mode)?;
        Ok(self.lambda * weight * (-self.lambda * q).exp())
    }

    // P(void at `cur`) given the path so far.
    fn void_factor(&self, prev: Option<PolarPoint>, cur: PolarPoint) -> Result<f64> {
        let q = feasible_q(prev, cur, cur.u, self.r, self.exclusion, self.mode(cur.u))?;
        Ok((-self.lambda * q).exp())
    }

    // One sampled hop from `cur` with advancement in (0, c_max]; returns the
    // next node and the integrand-to-proposal ratio.
    fn step(
        &self,
        prev: Option<PolarPoint>,
        cur: PolarPoint,
        c_max: f64,
        t: f64,
        s: Option<f64>,
    ) -> Result<Option<(PolarPoint, f64)>> {
        if c_max <= 1e-14 * self.r {
            return Ok(None);
        }
        let gamma = cur.u;
        let (c, pdf) = match self.cfg.proposal {
            HopProposal::Importance => {
                let sampler = ImportanceSampler::new(gamma, self.lambda, self.r, c_max)?;
                let c = sampler.inverse_unchecked(t);
                (c, sampler.pdf_unchecked(c))
            }
            HopProposal::Uniform => (t * c_max, 1.0 / c_max),
        };
        if !(c > 0.0 && pdf > 0.0) {
            return Ok(None);
        }
        let u = gamma - c;
        match s {
            None => {
                let next = PolarPoint::new(u, cur.theta);
                Ok(Some((next, self.hop_factor(None, cur, next, true)? / pdf)))
            }
            Some(s) => {
                let width = psi(gamma, u, self.r);
                let next = PolarPoint::new(u, wrap_angle(cur.theta + (2.0 * s - 1.0) * width));
                let f = self.hop_factor(prev, cur, next, false)?;
                Ok(Some((next, f * 2.0 * width / pdf)))
            }
        }
    }
}

/// Joint density of a hop vector started at `(ℓ, 0)`.
///
/// Points outside the feasible support give 0. Every node before the last
/// must lie farther than `r` from the sink.
pub fn joint_density(hv: &HopVector, params: &ModelParams, cfg: MultihopConfig) -> Result<f64> {
    let walker = Walker::new(params, cfg);
    let r = params.r();
    let mut prev = None;
    let mut cur = PolarPoint::new(params.ell(), 0.0);
    let mut density = 1.0;
    for (&c, &theta) in hv.hops.iter().zip(&hv.angles) {
        if cur.u <= r {
            return Err(domain(format!("forwarding node at u={} is within r of the sink", cur.u)));
        }
        if !(c > 0.0 && c <= r) {
            return Ok(0.0);
        }
        let u = cur.u - c;
        if theta.abs() > psi(cur.u, u, r) {
            return Ok(0.0);
        }
        let next = PolarPoint::new(u, wrap_angle(cur.theta + theta));
        density *= walker.hop_factor(prev, cur, next, false)?;
        prev = Some(cur);
        cur = next;
    }
    Ok(density)
}

fn check_hops(n: usize, params: &ModelParams) -> Result<()> {
    if n == 0 {
        return Err(domain("need at least one hop"));
    }
    let r = params.r();
    if params.ell() - (n as f64 - 1.0) * r <= r {
        return Err(domain(format!(
            "{n} hops from ℓ={} can reach a node within r={r} of the sink",
            params.ell()
        )));
    }
    Ok(())
}

/// Distribution of the advancement `Z_n` over a grid of `z` values.
#[derive(Debug, Clone, PartialEq)]
pub struct ZnResult {
    pub n: usize,
    pub z_grid: Vec<f64>,
    /// `P(Z_n ≤ z, every hop positive)`.
    pub joint: Vec<Estimate>,
    /// `P(Z_n ≤ z | every hop positive)`.
    pub conditional: Vec<Estimate>,
    /// `void_terms[k][j] = P(Z_k ≤ z_j, C_{k+1} = 0)` for `k = 0..n`.
    pub void_terms: Vec<Vec<Estimate>>,
    /// Joint mass plus every void term.
    pub total: Vec<Estimate>,
    pub samples: usize,
}

/// Integrand for the `Z_n` quantities at each `z` in `zs`.
///
/// Output block `j` holds `n` values: the joint mass `J_n(z_j)` followed by
/// the void terms for `k = 1..n−1`.
fn zn_integrand<'a>(walker: Walker, ell: f64, n: usize, zs: &'a [f64]) -> impl Fn(&[f64], &mut [f64]) -> Result<()> + Sync + 'a {
    let per = walker.cfg.dims_per_hop();
    move |x: &[f64], y: &mut [f64]| {
        for (j, &z) in zs.iter().enumerate() {
            let block = &mut y[j * n..(j + 1) * n];
            let mut prev = None;
            let mut cur = PolarPoint::new(ell, 0.0);
            let mut weight = 1.0;
            let mut advanced = 0.0;
            let mut alive = true;
            for i in 0..n {
                if i > 0 {
                    block[i] = weight * walker.void_factor(prev, cur)?;
                }
                let c_max = walker.r.min(z - advanced);
                let s = if per == 2 { Some(x[2 * i + 1]) } else { None };
                match walker.step(prev, cur, c_max, x[per * i], s)? {
                    Some((next, f)) if f > 0.0 => {
                        weight *= f;
                        advanced += cur.u - next.u;
                        prev = Some(cur);
                        cur = next;
                    }
                    _ => {
                        alive = false;
                        break;
                    }
                }
            }
            block[0] = if alive { weight } else { 0.0 };
        }
        Ok(())
    }
}

fn mean_se(values: impl Iterator<Item = f64> + Clone, samples: usize) -> Estimate {
    let v: Vec<f64> = values.collect();
    let k = v.len() as f64;
    let mu = v.iter().sum::<f64>() / k;
    let se = if v.len() > 1 {
        (v.iter().map(|x| (x - mu) * (x - mu)).sum::<f64>() / (k - 1.0) / k).sqrt()
    } else {
        0.0
    };
    Estimate {
        value: mu,
        std_error: se,
        samples,
    }
}

fn ratio_estimate(plan: &Plan, means: &[Vec<f64>], num: usize, den: usize) -> Estimate {
    let joint = plan.combine(means);
    let (a, b) = (joint[num], joint[den]);
    let ratio = if b.value > 0.0 { a.value / b.value } else { 0.0 };
    // per-replicate ratios for the spread
    let per_rep = means.iter().map(|m| if m[den] > 0.0 { m[num] / m[den] } else { 0.0 });
    let spread = mean_se(per_rep, plan.samples());
    Estimate {
        value: ratio.clamp(0.0, 1.0),
        std_error: spread.std_error,
        samples: plan.samples(),
    }
}

/// Full `Z_n` distribution on `z_grid`, evaluated with `runner`.
///
/// The normalizing mass `J_n(n·r)` is computed from the same points.
pub fn zn_distribution_with<R: ReplicateRunner + ?Sized>(
    z_grid: &[f64],
    n: usize,
    params: &ModelParams,
    cfg: MultihopConfig,
    rule: &QmcRule,
    runner: &R,
) -> Result<ZnResult> {
    check_hops(n, params)?;
    let r = params.r();
    let top = n as f64 * r;
    if z_grid.iter().any(|&z| !(z > 0.0 && z <= top)) {
        return Err(domain(format!("z values must lie in (0, {top}]")));
    }
    let walker = Walker::new(params, cfg);
    let mut zs = z_grid.to_vec();
    zs.push(top);
    let m = z_grid.len();
    let integrand = zn_integrand(walker, params.ell(), n, &zs);
    let dim = n * cfg.dims_per_hop();
    let outputs = zs.len() * n;
    let score = |plan: &Plan, means: &[Vec<f64>]| {
        (0..m)
            .map(|j| ratio_estimate(plan, means, j * n, m * n).std_error)
            .chain(plan.combine(means).iter().map(|e| e.std_error))
            .fold(0.0, f64::max)
    };
    let rep = run_rule(rule, dim, outputs, &integrand as &Integrand<'_>, runner, score)?;
    let plan = &rep.plan;
    let means = &rep.means;
    let est = rep.estimates();
    let samples = plan.samples();
    let void0 = void_probability(params.ell(), params, cfg.mode.resolved(params.ell(), r))?;

    let joint = (0..m).map(|j| est[j * n]).collect();
    let conditional = (0..m).map(|j| ratio_estimate(plan, means, j * n, m * n)).collect();
    let mut void_terms = vec![vec![Estimate { value: void0, std_error: 0.0, samples }; m]];
    for k in 1..n {
        void_terms.push((0..m).map(|j| est[j * n + k]).collect());
    }
    let total = (0..m)
        .map(|j| {
            let per_rep = means
                .iter()
                .map(|row| void0 + row[j * n..(j + 1) * n].iter().sum::<f64>());
            let e = mean_se(per_rep, samples);
            // Halton batches may differ in size; the pooled mean is the value
            let value = void0 + est[j * n..(j + 1) * n].iter().map(|e| e.value).sum::<f64>();
            Estimate { value, ..e }
        })
        .collect();
    Ok(ZnResult {
        n,
        z_grid: z_grid.to_vec(),
        joint,
        conditional,
        void_terms,
        total,
        samples,
    })
}

/// [`zn_distribution_with`] on the current thread.
pub fn full_zn(z_grid: &[f64], n: usize, params: &ModelParams, cfg: MultihopConfig, rule: &QmcRule) -> Result<ZnResult> {
    zn_distribution_with(z_grid, n, params, cfg, rule, &SerialRunner)
}

/// `P(Z_n ≤ z | every hop positive)`.
pub fn conditional_zn(z: f64, n: usize, params: &ModelParams, cfg: MultihopConfig, rule: &QmcRule) -> Result<Estimate> {
    Ok(full_zn(&[z], n, params, cfg, rule)?.conditional[0])
}

/// Conditional `Z_n` law of the independent model, integrating the angles out.
pub fn independent_zn(z: f64, n: usize, params: &ModelParams, mode: MeasureMode, rule: &QmcRule) -> Result<Estimate> {
    conditional_zn(z, n, params, MultihopConfig::new(PathModel::Independent, mode), rule)
}

/// `P(Z_n ≤ z, C_{n+1} = 0)`: the path stalls at a void right after hop `n`.
///
/// `n = 0` is the void probability of the first hop.
pub fn void_terminated_zn(
    z: f64,
    n: usize,
    params: &ModelParams,
    cfg: MultihopConfig,
    rule: &QmcRule,
) -> Result<Estimate> {
    if n == 0 {
        let r = params.r();
        let v = void_probability(params.ell(), params, cfg.mode.resolved(params.ell(), r))?;
        return Ok(Estimate {
            value: v,
            std_error: 0.0,
            samples: 1,
        });
    }
    let res = full_zn(&[z.min(n as f64 * params.r())], n + 1, params, cfg, rule)?;
    Ok(res.void_terms[n][0])
}

/// Default horizon for hop-count distributions.
pub fn default_horizon(params: &ModelParams) -> usize {
    2 * ((params.ell() - params.r()) / params.r()).ceil() as usize + 2
}

/// Distribution of the hop count `N` up to a horizon `H`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopCountResult {
    pub horizon: usize,
    /// `delivered[n−1] = P(N = n, delivered)` for `n = 1..=H`.
    pub delivered: Vec<Estimate>,
    /// `P(N ≤ n)` without conditioning (voids count as never delivered).
    pub cdf: Vec<Estimate>,
    /// `P(N ≤ n | no void)`.
    pub cdf_conditional: Vec<Estimate>,
    /// Probability of ending at a void before the horizon.
    pub void_mass: Estimate,
    /// Probability of being neither delivered nor stalled after `H − 1` hops.
    pub undecided: Estimate,
    pub samples: usize,
}

// Output layout: delivered[0..H], void mass, undecided mass.
fn hops_integrand(walker: Walker, ell: f64, horizon: usize) -> impl Fn(&[f64], &mut [f64]) -> Result<()> + Sync {
    let per = walker.cfg.dims_per_hop();
    move |x: &[f64], y: &mut [f64]| {
        let r = walker.r;
        if ell <= r {
            y[0] = 1.0;
            return Ok(());
        }
        let mut prev = None;
        let mut cur = PolarPoint::new(ell, 0.0);
        let mut weight = 1.0;
        for k in 1..horizon {
            y[horizon] += weight * walker.void_factor(prev, cur)?;
            let s = if per == 2 { Some(x[per * (k - 1) + 1]) } else { None };
            match walker.step(prev, cur, r, x[per * (k - 1)], s)? {
                Some((next, f)) if f > 0.0 => {
                    weight *= f;
                    prev = Some(cur);
                    cur = next;
                }
                _ => return Ok(()),
            }
            if cur.u <= r {
                y[k] = weight;
                return Ok(());
            }
        }
        y[horizon + 1] = weight;
        Ok(())
    }
}

/// Hop-count distribution with an explicit horizon, evaluated with `runner`.
pub fn hop_count_with<R: ReplicateRunner + ?Sized>(
    params: &ModelParams,
    cfg: MultihopConfig,
    rule: &QmcRule,
    horizon: usize,
    runner: &R,
) -> Result<HopCountResult> {
    if horizon < 2 {
        return Err(domain("hop-count horizon must be at least 2"));
    }
    let walker = Walker::new(params, cfg);
    let integrand = hops_integrand(walker, params.ell(), horizon);
    let dim = (horizon - 1) * cfg.dims_per_hop();
    let outputs = horizon + 2;
    let cdf_rows = |means: &[Vec<f64>]| -> Vec<Vec<(f64, f64)>> {
        // per replicate: (unconditional, conditional) cumulative values
        means
            .iter()
            .map(|row| {
                let alive: f64 = row[..horizon].iter().sum::<f64>() + row[horizon + 1];
                let mut acc = 0.0;
                row[..horizon]
                    .iter()
                    .map(|d| {
                        acc += d;
                        (acc, if alive > 0.0 { acc / alive } else { 0.0 })
                    })
                    .collect()
            })
            .collect()
    };
    let score = |plan: &Plan, means: &[Vec<f64>]| {
        let rows = cdf_rows(means);
        (0..horizon)
            .flat_map(|n| {
                let a = mean_se(rows.iter().map(|r| r[n].0), plan.samples()).std_error;
                let b = mean_se(rows.iter().map(|r| r[n].1), plan.samples()).std_error;
                [a, b]
            })
            .fold(0.0, f64::max)
    };
    let rep = run_rule(rule, dim, outputs, &integrand as &Integrand<'_>, runner, score)?;
    let est = rep.estimates();
    let samples = rep.plan.samples();
    let rows = cdf_rows(&rep.means);
    let delivered: Vec<Estimate> = est[..horizon].to_vec();
    let alive_total = delivered.iter().map(|e| e.value).sum::<f64>() + est[horizon + 1].value;
    let mut acc = 0.0;
    let mut cdf = Vec::with_capacity(horizon);
    let mut cdf_conditional = Vec::with_capacity(horizon);
    for n in 0..horizon {
        acc += delivered[n].value;
        let u = mean_se(rows.iter().map(|r| r[n].0), samples);
        let c = mean_se(rows.iter().map(|r| r[n].1), samples);
        cdf.push(Estimate {
            value: acc.clamp(0.0, 1.0),
            ..u
        });
        let cond = if alive_total > 0.0 { acc / alive_total } else { 0.0 };
        cdf_conditional.push(Estimate {
            value: cond.clamp(0.0, 1.0),
            ..c
        });
    }
    Ok(HopCountResult {
        horizon,
        delivered,
        cdf,
        cdf_conditional,
        void_mass: est[horizon],
        undecided: est[horizon + 1],
        samples,
    })
}

/// `P(N ≤ n | no void)` with the default horizon (extended to `n` if needed).
pub fn hops_cdf(n: usize, params: &ModelParams, cfg: MultihopConfig, rule: &QmcRule) -> Result<Estimate> {
    if n == 0 {
        return Err(domain("hop counts start at 1"));
    }
    let horizon = default_horizon(params).max(n);
    let res = hop_count_with(params, cfg, rule, horizon, &SerialRunner)?;
    Ok(res.cdf_conditional[n - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hop::hop_distribution;

    fn params() -> ModelParams {
        ModelParams::new(30.0, 1.0, 10.0).unwrap()
    }

    #[test]
    fn density_support() {
        let p = params();
        let cfg = MultihopConfig::new(PathModel::Dependent, MeasureMode::ExactElliptic);
        let hv = HopVector::new(vec![0.6], vec![0.5]).unwrap();
        assert_eq!(joint_density(&hv, &p, cfg).unwrap(), 0.0);
        let hv = HopVector::new(vec![0.6], vec![0.01]).unwrap();
        let q = crate::measure::q_rescaled(10.0, 9.4, 1.0, MeasureMode::ExactElliptic).unwrap();
        let expect = 30.0 * (-30.0 * q).exp();
        assert!((joint_density(&hv, &p, cfg).unwrap() - expect).abs() < 1e-13);
    }

    #[test]
    fn one_hop_conditional_matches_law() {
        let p = params();
        let mode = MeasureMode::ExactElliptic;
        let d = hop_distribution(10.0, &p, mode).unwrap();
        let rule = QmcRule::halton(2000);
        for &z in &[0.3, 0.7, 0.95] {
            let exact = (d.cdf(z).unwrap() - d.void_atom()) / (1.0 - d.void_atom());
            for model in [PathModel::Dependent, PathModel::Independent] {
                let e = conditional_zn(z, 1, &p, MultihopConfig::new(model, mode), &rule).unwrap();
                assert!((e.value - exact).abs() < 1e-3 + 3.0 * e.std_error, "{z} {e:?} {exact}");
            }
        }
    }

    #[test]
    fn totals_reach_one() {
        let p = params();
        let res = full_zn(&[0.5, 1.0, 2.0], 2, &p, MultihopConfig::default(), &QmcRule::halton(2000)).unwrap();
        assert!((res.total[2].value - 1.0).abs() < 0.01, "{:?}", res.total);
        assert!((res.conditional[2].value - 1.0).abs() < 1e-12);
        assert!(res.total[0].value <= res.total[1].value);
    }

    #[test]
    fn rejects_paths_near_sink() {
        let p = ModelParams::new(30.0, 1.0, 3.0).unwrap();
        assert!(full_zn(&[1.0], 2, &p, MultihopConfig::default(), &QmcRule::halton(100)).is_ok());
        assert!(full_zn(&[1.0], 3, &p, MultihopConfig::default(), &QmcRule::halton(100)).is_err());
    }

    #[test]
    fn hop_counts_are_consistent() {
        let p = ModelParams::new(30.0, 1.0, 4.0).unwrap();
        let res = hop_count_with(&p, MultihopConfig::default(), &QmcRule::halton(2000), 8, &SerialRunner).unwrap();
        assert_eq!(res.delivered[0].value, 0.0);
        assert_eq!(res.delivered[1].value, 0.0);
        assert_eq!(res.delivered[2].value, 0.0);
        let total: f64 = res.delivered.iter().map(|e| e.value).sum::<f64>() + res.void_mass.value + res.undecided.value;
        assert!((total - 1.0).abs() < 0.02, "{total}");
        assert!((res.cdf_conditional[7].value - 1.0).abs() < 0.01);
    }
}
