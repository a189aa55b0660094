//! Rayon-backed replicate runner and ensembles.
//!
//! Work is split by replicate or by run index and collected in index order,
//! so results do not depend on the number of worker threads.

use rayon::prelude::*;
use sinkhop_core::qmc::{Integrand, Plan, ReplicateRunner};
use sinkhop_core::sim::{route_seeded, EnsembleConfig, EnsembleResult, RouteRecord};
use sinkhop_core::{ModelParams, Result};

/// Evaluates QMC replicates on the current rayon pool.
#[derive(Debug, Clone, Copy, Default)]
pub struct RayonRunner;

impl ReplicateRunner for RayonRunner {
    fn run(&self, plan: &Plan, outputs: usize, f: &Integrand<'_>) -> Result<Vec<Vec<f64>>> {
        (0..plan.replicates())
            .into_par_iter()
            .map(|rep| plan.replicate_mean(rep, outputs, f))
            .collect()
    }
}

pub fn par_routes(params: &ModelParams, cfg: &EnsembleConfig) -> Vec<RouteRecord> {
    (0..cfg.runs as u64)
        .into_par_iter()
        .map(|i| route_seeded(params, cfg.seed, i, cfg.sleep))
        .collect()
}

/// [`sinkhop_core::sim::ensemble`] with runs spread over the pool.
pub fn par_ensemble(params: &ModelParams, cfg: &EnsembleConfig) -> EnsembleResult {
    EnsembleResult::from_records(params, &par_routes(params, cfg), cfg.max_zn, cfg.alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sinkhop_core::qmc::{run_rule, worst_std_error, SerialRunner};
    use sinkhop_core::sim::ensemble;
    use sinkhop_core::QmcRule;

    #[test]
    fn matches_serial_runner() {
        let f = |x: &[f64], y: &mut [f64]| {
            y[0] = x[0] * x[1];
            Ok(())
        };
        let rule = QmcRule::lattice(256, None).with_seed(3);
        let a = run_rule(&rule, 2, 1, &f, &SerialRunner, worst_std_error).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let b = pool.install(|| run_rule(&rule, 2, 1, &f, &RayonRunner, worst_std_error)).unwrap();
        assert_eq!(a.means, b.means);
    }

    #[test]
    fn ensemble_matches_serial() {
        let p = ModelParams::new(10.0, 1.0, 5.0).unwrap();
        let cfg = EnsembleConfig::new(300, 4);
        assert_eq!(par_ensemble(&p, &cfg), ensemble(&p, &cfg));
    }
}
