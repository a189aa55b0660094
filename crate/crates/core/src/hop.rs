//! Single-hop laws.
//!
//! A node at sink distance `γ` forwards to the feasible node nearest the
//! sink. Its next sink distance `U` has CDF `1 − e^{−λQ_γ(u)}` on
//! `[γ−r, γ)` plus an atom at `u = γ` for a routing void. The advancement
//! `C = γ − U` therefore has an atom at zero and a density on `(0, r]`.

use alloc::format;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};
use crate::measure::{expansion_coeffs, q_derivative_mode, q_rescaled, MeasureMode};
use crate::model::ModelParams;
use crate::quad;

const MOMENT_TOL: f64 = 1e-10;
const KL_TOL: f64 = 1e-10;

fn check_gamma(gamma: f64, r: f64) -> Result<()> {
    if !(gamma > r && gamma.is_finite()) {
        return Err(domain(format!("forwarding node needs γ > r, got γ={gamma}, r={r}")));
    }
    Ok(())
}

/// `P(U ≤ u)` for the next sink distance from a node at `gamma`.
pub fn sink_cdf(gamma: f64, u: f64, params: &ModelParams, mode: MeasureMode) -> Result<f64> {
    let r = params.r();
    check_gamma(gamma, r)?;
    if u < gamma - r {
        Ok(0.0)
    } else if u >= gamma {
        Ok(1.0)
    } else {
        let q = q_rescaled(gamma, u, r, mode)?;
        Ok(-(-params.lambda() * q).exp_m1())
    }
}

/// Probability that the feasible region of a node at `gamma` is empty.
pub fn void_probability(gamma: f64, params: &ModelParams, mode: MeasureMode) -> Result<f64> {
    check_gamma(gamma, params.r())?;
    Ok((-params.lambda() * q_rescaled(gamma, gamma, params.r(), mode)?).exp())
}

/// Law of the advancement `C` made by one hop from sink distance `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedHopDistribution {
    gamma: f64,
    lambda: f64,
    r: f64,
    mode: MeasureMode,
    void_atom: f64,
}

impl MixedHopDistribution {
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mode(&self) -> MeasureMode {
        self.mode
    }

    /// `P(C = 0)`.
    pub fn void_atom(&self) -> f64 {
        self.void_atom
    }

    /// `P(C ≤ c) = e^{−λQ_γ(γ−c)}` on `[0, r]`, 0 below and 1 above.
    pub fn cdf(&self, c: f64) -> Result<f64> {
        if c < 0.0 {
            return Ok(0.0);
        }
        if c >= self.r {
            return Ok(1.0);
        }
        Ok((-self.lambda * q_rescaled(self.gamma, self.gamma - c, self.r, self.mode)?).exp())
    }

    /// Density of the continuous part, `λQ′_γ(γ−c)e^{−λQ_γ(γ−c)}` on `(0, r)`.
    pub fn density(&self, c: f64) -> Result<f64> {
        if !(c > 0.0 && c < self.r) {
            return Ok(0.0);
        }
        let u = self.gamma - c;
        let q = q_rescaled(self.gamma, u, self.r, self.mode)?;
        let dq = q_derivative_mode(self.gamma, u, self.r, self.mode)?;
        Ok(self.lambda * dq * (-self.lambda * q).exp())
    }

    // ln of the continuous density; −∞ where it vanishes
    fn log_density(&self, c: f64) -> Result<f64> {
        let u = self.gamma - c;
        let q = q_rescaled(self.gamma, u, self.r, self.mode)?;
        let dq = q_derivative_mode(self.gamma, u, self.r, self.mode)?;
        Ok(self.lambda.ln() + dq.ln() - self.lambda * q)
    }
}

pub fn hop_distribution(gamma: f64, params: &ModelParams, mode: MeasureMode) -> Result<MixedHopDistribution> {
    let void_atom = void_probability(gamma, params, mode)?;
    Ok(MixedHopDistribution {
        gamma,
        lambda: params.lambda(),
        r: params.r(),
        mode,
        void_atom,
    })
}

/// `E(C^m)` for `m ∈ {1, 2}` by quadrature of `r^m − m∫₀^r c^{m−1}P(C ≤ c) dc`.
pub fn moment_numeric(gamma: f64, m: u32, params: &ModelParams, mode: MeasureMode) -> Result<f64> {
    let r = params.r();
    check_gamma(gamma, r)?;
    if !(m == 1 || m == 2) {
        return Err(domain(format!("moment order must be 1 or 2, got {m}")));
    }
    let lambda = params.lambda();
    let mut failure = None;
    // t = r − c puts the Laplace point at the origin
    let integral = quad::integrate(
        |t| match q_rescaled(gamma, gamma - r + t, r, mode) {
            Ok(q) => (r - t).powi(m as i32 - 1) * (-lambda * q).exp(),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        0.0,
        r,
        MOMENT_TOL,
        0.0,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(r.powi(m as i32) - m as f64 * integral.value)
}

/// Large-density approximation of `E(C^m)`, `m ∈ {1, 2}`, from the leading
/// `q₀t^{3/2}` behaviour of the measure.
pub fn moment_asymptotic(gamma: f64, m: u32, params: &ModelParams) -> Result<f64> {
    let r = params.r();
    check_gamma(gamma, r)?;
    let q0 = expansion_coeffs(gamma, r)?.q0;
    let a = params.lambda() * q0;
    let g53 = libm::tgamma(5.0 / 3.0);
    match m {
        1 => Ok(r - g53 / a.powf(2.0 / 3.0)),
        2 => Ok(r * r - 2.0 * r * g53 / a.powf(2.0 / 3.0) + libm::tgamma(7.0 / 3.0) / a.powf(4.0 / 3.0)),
        _ => Err(domain(format!("moment order must be 1 or 2, got {m}"))),
    }
}

/// Kullback–Leibler divergence `D(γ₁ ‖ γ₂)` between two mixed hop laws, in nats.
///
/// Returns `+∞` if the second law puts zero density where the first does not.
pub fn kl_divergence(gamma1: f64, gamma2: f64, params: &ModelParams, mode: MeasureMode) -> Result<f64> {
    let d1 = hop_distribution(gamma1, params, mode)?;
    let d2 = hop_distribution(gamma2, params, mode)?;
    let r = params.r();
    let atom = if d1.void_atom > 0.0 {
        d1.void_atom * (d1.void_atom / d2.void_atom).ln()
    } else {
        0.0
    };
    let mut failure = None;
    let mut infinite = false;
    // c = r − s² flattens the square-root decay of both densities at c = r
    let integral = quad::integrate(
        |s| {
            let c = r - s * s;
            let terms = d1.log_density(c).and_then(|l1| Ok((l1, d2.log_density(c)?)));
            match terms {
                Ok((l1, l2)) => {
                    if l1 == f64::NEG_INFINITY {
                        0.0
                    } else if l2 == f64::NEG_INFINITY {
                        infinite = true;
                        0.0
                    } else {
                        2.0 * s * l1.exp() * (l1 - l2)
                    }
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        0.0,
        r.sqrt(),
        KL_TOL,
        0.0,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    if infinite {
        return Ok(f64::INFINITY);
    }
    Ok(atom + integral.value)
}
