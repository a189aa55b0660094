//! Greedy routing simulator.
//!
//! Nodes form a Poisson process on the disk of radius `ℓ` about the sink with
//! intensity `d/u` (`d = λ`, or `α` when nodes sleep). In polar coordinates
//! that is a constant intensity `d` in `(u, θ)`, so the radius of each node
//! is uniform on `[0, ℓ]` and the mean count is `2dπℓ`.
//!
//! [`route`] generates the field lazily, one polar cell at a time, as the
//! path probes it; [`route_on`] walks a fully sampled [`Deployment`].
//! The two are equal in law.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::model::{wrap_angle, ModelParams, PolarPoint};
use crate::stats::{dkw_epsilon, Ecdf};

/// Which intensity a deployment uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    /// Awake density `λ`.
    Awake,
    /// Underlying density `α = λ/p`.
    Underlying,
}

impl DensityKind {
    fn value(self, params: &ModelParams) -> f64 {
        match self {
            DensityKind::Awake => params.lambda(),
            DensityKind::Underlying => params.alpha(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub nodes: Vec<PolarPoint>,
    pub density: f64,
    pub ell: f64,
}

fn poisson<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    match Poisson::new(mean) {
        Ok(d) => d.sample(rng) as usize,
        Err(_) => 0,
    }
}

fn uniform_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // (−π, π]
    PI - 2.0 * PI * rng.random::<f64>()
}

/// Samples every node of the field.
pub fn sample_deployment<R: Rng + ?Sized>(params: &ModelParams, density: DensityKind, rng: &mut R) -> Deployment {
    let d = density.value(params);
    let ell = params.ell();
    let count = poisson(2.0 * d * PI * ell, rng);
    let nodes = (0..count)
        .map(|_| PolarPoint::new(ell * rng.random::<f64>(), uniform_angle(rng)))
        .collect();
    Deployment { nodes, density: d, ell }
}

/// Why a route ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Reached a node within `r` of the sink; `hops` counts the final direct hop.
    Delivered { hops: usize },
    /// The feasible region of the node reached after `at_hop` relays was empty.
    Void { at_hop: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteRecord {
    /// Forwarding nodes, starting at the source `(ℓ, 0)`.
    pub path: Vec<PolarPoint>,
    /// Advancement of each relay.
    pub hops: Vec<f64>,
    pub outcome: Outcome,
}

impl RouteRecord {
    /// Advancement after the first `n` relay attempts, voids absorbing.
    pub fn advancement(&self, n: usize) -> f64 {
        self.hops.iter().take(n).sum()
    }
}

fn feasible(cur: PolarPoint, node: PolarPoint, r: f64) -> bool {
    node.u < cur.u && cur.distance(node) <= r
}

// smaller u, then smaller |θ|, then smaller index
fn better(a: (PolarPoint, usize), b: (PolarPoint, usize)) -> bool {
    (a.0.u, a.0.theta.abs(), a.1) < (b.0.u, b.0.theta.abs(), b.1)
}

/// The feasible node with minimal sink distance among `awake`, as an index into it.
pub fn greedy_step(current: PolarPoint, awake: &[PolarPoint], r: f64) -> Option<usize> {
    let mut best: Option<(PolarPoint, usize)> = None;
    for (i, &node) in awake.iter().enumerate() {
        if feasible(current, node, r) && best.is_none_or(|b| better((node, i), b)) {
            best = Some((node, i));
        }
    }
    best.map(|b| b.1)
}

// Runs the greedy loop given a candidate enumerator for the current node.
fn run_route<R, C>(params: &ModelParams, sleep: bool, rng: &mut R, mut candidates: C) -> RouteRecord
where
    R: Rng + ?Sized,
    C: FnMut(PolarPoint, &mut R, &mut Vec<(PolarPoint, usize)>),
{
    let r = params.r();
    let p = params.p();
    let mut cur = PolarPoint::new(params.ell(), 0.0);
    let mut path = vec![cur];
    let mut hops = Vec::new();
    let mut buf = Vec::new();
    loop {
        if cur.u <= r {
            return RouteRecord {
                path,
                outcome: Outcome::Delivered { hops: hops.len() + 1 },
                hops,
            };
        }
        buf.clear();
        candidates(cur, rng, &mut buf);
        let mut best: Option<(PolarPoint, usize)> = None;
        for &(node, idx) in buf.iter() {
            if !feasible(cur, node, r) {
                continue;
            }
            if sleep && p < 1.0 && rng.random::<f64>() >= p {
                continue;
            }
            if best.is_none_or(|b| better((node, idx), b)) {
                best = Some((node, idx));
            }
        }
        match best {
            Some((next, _)) => {
                hops.push(cur.u - next.u);
                path.push(next);
                cur = next;
            }
            None => {
                return RouteRecord {
                    path,
                    outcome: Outcome::Void { at_hop: hops.len() },
                    hops,
                };
            }
        }
    }
}

/// Routes over a sampled deployment by scanning all nodes at each hop.
pub fn route_on<R: Rng + ?Sized>(deployment: &Deployment, params: &ModelParams, sleep: bool, rng: &mut R) -> RouteRecord {
    run_route(params, sleep, rng, |_, _, buf| {
        buf.extend(deployment.nodes.iter().copied().zip(0..));
    })
}

// Lazily sampled field: rings of width r split into angular bins.
struct LazyField {
    density: f64,
    ell: f64,
    r: f64,
    bins: Vec<usize>,
    cells: Vec<Vec<Option<Vec<(PolarPoint, usize)>>>>,
    next_index: usize,
}

impl LazyField {
    fn new(density: f64, ell: f64, r: f64) -> Self {
        let rings = (ell / r).ceil().max(1.0) as usize;
        let bins: Vec<usize> = (0..rings).map(|j| (2.0 * PI * (j as f64 + 1.0)).ceil() as usize).collect();
        let cells = bins.iter().map(|&m| vec![None; m]).collect();
        LazyField {
            density,
            ell,
            r,
            bins,
            cells,
            next_index: 0,
        }
    }

    fn cell<R: Rng + ?Sized>(&mut self, j: usize, b: usize, rng: &mut R) -> &[(PolarPoint, usize)] {
        if self.cells[j][b].is_none() {
            let lo = j as f64 * self.r;
            let hi = ((j + 1) as f64 * self.r).min(self.ell);
            let width = 2.0 * PI / self.bins[j] as f64;
            let phi0 = -PI + b as f64 * width;
            let count = poisson(self.density * (hi - lo) * width, rng);
            let mut nodes = Vec::with_capacity(count);
            for _ in 0..count {
                let u = lo + (hi - lo) * rng.random::<f64>();
                let theta = wrap_angle(phi0 + width * rng.random::<f64>());
                nodes.push((PolarPoint::new(u, theta), self.next_index));
                self.next_index += 1;
            }
            self.cells[j][b] = Some(nodes);
        }
        self.cells[j][b].as_deref().unwrap_or(&[])
    }

    fn candidates<R: Rng + ?Sized>(&mut self, cur: PolarPoint, rng: &mut R, out: &mut Vec<(PolarPoint, usize)>) {
        let r = self.r;
        let j_lo = ((cur.u - r).max(0.0) / r).floor() as usize;
        let j_hi = ((cur.u / r).floor() as usize).min(self.bins.len() - 1);
        let half = if cur.u > r { (r / cur.u).min(1.0).asin() } else { PI };
        for j in j_lo..=j_hi {
            let m = self.bins[j];
            let width = 2.0 * PI / m as f64;
            let first = ((cur.theta - half + PI) / width).floor() as i64;
            let last = ((cur.theta + half + PI) / width).floor() as i64;
            let span = ((last - first + 1) as usize).min(m);
            for k in 0..span as i64 {
                let b = (first + k).rem_euclid(m as i64) as usize;
                out.extend_from_slice(self.cell(j, b, rng));
            }
        }
    }
}

/// One route on a lazily generated field, deployed with `α` (and thinned per
/// attempt) when `sleep` is set, with `λ` otherwise.
pub fn route<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R, sleep: bool) -> RouteRecord {
    let density = if sleep { params.alpha() } else { params.lambda() };
    let mut field = LazyField::new(density, params.ell(), params.r());
    run_route(params, sleep, rng, |cur, rng, buf| field.candidates(cur, rng, buf))
}

/// RNG for run `index` of an ensemble seeded with `seed`.
pub fn run_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Route number `index` of the ensemble with `seed`.
pub fn route_seeded(params: &ModelParams, seed: u64, index: u64, sleep: bool) -> RouteRecord {
    route(params, &mut run_rng(seed, index), sleep)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleConfig {
    pub runs: usize,
    pub seed: u64,
    pub sleep: bool,
    /// Largest `n` for which `Z_n` samples are collected.
    pub max_zn: usize,
    /// Level of the DKW confidence bands.
    pub alpha: f64,
}

impl EnsembleConfig {
    pub fn new(runs: usize, seed: u64) -> Self {
        EnsembleConfig {
            runs,
            seed,
            sleep: false,
            max_zn: 3,
            alpha: 0.05,
        }
    }
}

/// Empirical laws from an ensemble of routes.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleResult {
    pub runs: usize,
    /// Sink distance after the first relay attempt (`ℓ` on a void).
    pub u1: Ecdf,
    /// `zn_conditional[n−1]`: `Z_n` over runs with at least `n` positive hops.
    pub zn_conditional: Vec<Ecdf>,
    /// `zn_total[n−1]`: `Z_n` over all runs, voids absorbing.
    pub zn_total: Vec<Ecdf>,
    /// Hop counts of delivered runs.
    pub hop_counts: Vec<usize>,
    pub delivered: usize,
    pub voids: usize,
    pub first_hop_voids: usize,
    /// DKW half-width for an ECDF over all runs.
    pub dkw: f64,
    pub alpha: f64,
}

impl EnsembleResult {
    pub fn from_records(params: &ModelParams, records: &[RouteRecord], max_zn: usize, alpha: f64) -> Self {
        let ell = params.ell();
        let runs = records.len();
        let u1 = Ecdf::new(records.iter().map(|rec| ell - rec.advancement(1)).collect());
        let zn_conditional = (1..=max_zn)
            .map(|n| {
                Ecdf::new(
                    records
                        .iter()
                        .filter(|rec| rec.hops.len() >= n)
                        .map(|rec| rec.advancement(n))
                        .collect(),
                )
            })
            .collect();
        let zn_total = (1..=max_zn)
            .map(|n| Ecdf::new(records.iter().map(|rec| rec.advancement(n)).collect()))
            .collect();
        let mut hop_counts = Vec::new();
        let mut voids = 0;
        let mut first_hop_voids = 0;
        for rec in records {
            match rec.outcome {
                Outcome::Delivered { hops } => hop_counts.push(hops),
                Outcome::Void { at_hop } => {
                    voids += 1;
                    if at_hop == 0 {
                        first_hop_voids += 1;
                    }
                }
            }
        }
        EnsembleResult {
            runs,
            u1,
            zn_conditional,
            zn_total,
            delivered: hop_counts.len(),
            hop_counts,
            voids,
            first_hop_voids,
            dkw: dkw_epsilon(runs.max(1), alpha),
            alpha,
        }
    }

    pub fn void_rate(&self) -> f64 {
        self.voids as f64 / self.runs as f64
    }

    pub fn first_hop_void_rate(&self) -> f64 {
        self.first_hop_voids as f64 / self.runs as f64
    }

    pub fn delivered_fraction(&self) -> f64 {
        self.delivered as f64 / self.runs as f64
    }

    /// `P(N ≤ n)` over all runs.
    pub fn hops_cdf(&self, n: usize) -> f64 {
        self.hop_counts.iter().filter(|&&h| h <= n).count() as f64 / self.runs as f64
    }

    /// `P(N ≤ n | delivered)`.
    pub fn hops_cdf_conditional(&self, n: usize) -> f64 {
        if self.delivered == 0 {
            return 0.0;
        }
        self.hop_counts.iter().filter(|&&h| h <= n).count() as f64 / self.delivered as f64
    }
}

/// Runs `cfg.runs` independent routes and summarizes them.
pub fn ensemble(params: &ModelParams, cfg: &EnsembleConfig) -> EnsembleResult {
    let records: Vec<RouteRecord> = (0..cfg.runs as u64)
        .map(|i| route_seeded(params, cfg.seed, i, cfg.sleep))
        .collect();
    EnsembleResult::from_records(params, &records, cfg.max_zn, cfg.alpha)
}
