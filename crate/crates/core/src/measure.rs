//! Mean measures of feasible regions.
//!
//! For a forwarding node at sink distance `γ`, the partial feasible region
//! `I_γ(u)` is its transmission disk cut down to points nearer the sink than
//! `u`. Under the density `λ/u` its mean measure is
//! `Λ_γ(u) = 2λ∫_{γ−r}^{u} ψ_γ(w) dw`, and `Q_γ(u) = Λ_γ(u)/λ` is the
//! rescaled measure. Four evaluation routes are provided (see [`MeasureMode`]).
//!
//! The path-dependent variants subtract the part of the current region that
//! overlaps the previous node's region, which is known to have been empty
//! (or, under sleeping, only partially refilled).

use alloc::format;

#[allow(unused_imports)]
use num_traits::Float;

use crate::elliptic::{legendre_e, legendre_f, legendre_fe_real, ComplexValue, LegendreConvention};
use crate::error::{domain, Error, Result};
use crate::model::{circle_intersection, psi, wrap_angle, ModelParams, PathState, PolarPoint, EDGE_TOL};
use crate::quad;

/// How `Q_γ(u)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeasureMode {
    /// Closed form through complex Legendre integrals.
    ExactElliptic,
    /// Adaptive quadrature of the sink-angle integral.
    Quadrature,
    /// Two-term expansion about `u = γ − r`.
    Asymptotic2,
    /// Three-term expansion about `u = γ − r`.
    #[default]
    Asymptotic3,
}

/// Below `γ = ASYMPTOTIC_MIN_GAMMA·r` the expansions are replaced by the
/// closed form when a mode is [resolved](MeasureMode::resolved).
///
/// The expansion converges only for offsets below `γ − r`, and at `γ = 4r`
/// the three-term form is still within 1% of the exact measure.
pub const ASYMPTOTIC_MIN_GAMMA: f64 = 4.0;

impl MeasureMode {
    /// Mode actually used for a node at `gamma` by the composite and multihop routines.
    pub fn resolved(self, gamma: f64, r: f64) -> MeasureMode {
        match self {
            MeasureMode::Asymptotic2 | MeasureMode::Asymptotic3 if gamma < ASYMPTOTIC_MIN_GAMMA * r => {
                MeasureMode::ExactElliptic
            }
            m => m,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MeasureMode::ExactElliptic => "exact",
            MeasureMode::Quadrature => "quadrature",
            MeasureMode::Asymptotic2 => "asymptotic2",
            MeasureMode::Asymptotic3 => "asymptotic3",
        }
    }
}

impl core::str::FromStr for MeasureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact-elliptic" => Ok(MeasureMode::ExactElliptic),
            "quadrature" => Ok(MeasureMode::Quadrature),
            "asymptotic2" => Ok(MeasureMode::Asymptotic2),
            "asymptotic3" => Ok(MeasureMode::Asymptotic3),
            other => Err(domain(format!("unknown measure mode {other:?}"))),
        }
    }
}

/// Coefficients of `ψ_γ(u) ≈ b₀t^{1/2} + b₁t^{3/2} + b₂t^{5/2}`, `t = u − γ + r`,
/// and of the induced `Q_γ ≈ q₀t^{3/2} + q₁t^{5/2} + …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCoeffs {
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
    pub q0: f64,
    pub q1: f64,
}

impl ExpansionCoeffs {
    /// Laplace exponent of the leading term.
    pub const MU: f64 = 1.5;

    /// Laplace-method exponent for the moment integrand `t^k e^{−λQ}`.
    pub fn tau(k: f64) -> f64 {
        2.0 * (k + 1.0) / 3.0
    }
}

pub fn expansion_coeffs(gamma: f64, r: f64) -> Result<ExpansionCoeffs> {
    if !(gamma > r && r > 0.0) {
        return Err(domain(format!("expansion needs γ > r > 0, got γ={gamma}, r={r}")));
    }
    let lead = (2.0 * r / (gamma * (gamma - r))).sqrt();
    let g2 = gamma * gamma;
    let r2 = r * r;
    let b1 = lead * (r2 - 3.0 * r * gamma - 3.0 * g2) / (12.0 * (g2 * r - gamma * r2));
    let b2 = lead
        * (3.0 * r2 * r2 + 25.0 * r2 * g2 - 10.0 * r2 * r * gamma + 30.0 * g2 * gamma * r
            - 5.0 * g2 * g2)
        / (160.0 * g2 * (gamma - r) * (gamma - r) * r2);
    Ok(ExpansionCoeffs {
        b0: lead,
        b1,
        b2,
        q0: 4.0 * lead / 3.0,
        q1: 4.0 * b1 / 5.0,
    })
}

// Clamps u onto [γ−r, γ] after checking it is there up to EDGE_TOL.
fn support(gamma: f64, u: f64, r: f64) -> Result<f64> {
    if !(gamma > r) {
        return Err(domain(format!("feasible region needs γ > r, got γ={gamma}, r={r}")));
    }
    if !(u >= gamma - r - EDGE_TOL && u <= gamma + EDGE_TOL) {
        return Err(domain(format!("u={u} outside [{}, {gamma}]", gamma - r)));
    }
    Ok(u.clamp(gamma - r, gamma))
}

fn q_quadrature(gamma: f64, u: f64, r: f64, abs_tol: f64) -> Result<f64> {
    let lo = gamma - r;
    let span = (u - lo).max(0.0);
    if span == 0.0 {
        return Ok(0.0);
    }
    // w = γ − r + s² removes the square-root behaviour at the lower edge
    let res = quad::integrate(
        |s| {
            let w = lo + s * s;
            4.0 * s * psi(gamma, w.min(u), r)
        },
        0.0,
        span.sqrt(),
        abs_tol,
        0.0,
    )?;
    Ok(res.value)
}

/// `Q_γ(u)` from the closed form as a complex number (real up to rounding).
pub fn q_exact_complex(gamma: f64, u: f64, r: f64, conv: LegendreConvention) -> Result<ComplexValue> {
    let u = support(gamma, u, r)?;
    if u == gamma - r {
        return Ok(ComplexValue::new(0.0, 0.0));
    }
    let k = (gamma + r) / (gamma - r);
    let (de, df) = if conv == LegendreConvention::SinSquared {
        // Δ² = 1 − (u/(γ−r))² in factored form; it vanishes at the lower limit
        let g = gamma - r;
        let (fu, eu) = legendre_fe_real(u / (gamma + r), (g - u) * (g + u) / (g * g), k)?;
        let (f0, e0) = legendre_fe_real(g / (gamma + r), 0.0, k)?;
        (eu - e0, fu - f0)
    } else {
        let phi_u = ComplexValue::new((u / (gamma + r)).asin(), 0.0);
        let phi_0 = ComplexValue::new(((gamma - r) / (gamma + r)).asin(), 0.0);
        (
            legendre_e(phi_u, k, conv)? - legendre_e(phi_0, k, conv)?,
            legendre_f(phi_u, k, conv)? - legendre_f(phi_0, k, conv)?,
        )
    };
    let i = ComplexValue::new(0.0, 1.0);
    let inner = ComplexValue::new(u * psi(gamma, u, r), 0.0) + i * de * (gamma - r) + i * df * (2.0 * r);
    Ok(inner * 2.0)
}

fn check_residue(v: ComplexValue) -> Result<f64> {
    if v.im.abs() > 1e-9 * v.re.abs().max(1.0) {
        return Err(Error::Residue { re: v.re, im: v.im });
    }
    Ok(v.re)
}

/// `Λ_γ(u)` by adaptive quadrature, absolute tolerance `1e-10`.
pub fn mean_measure_quadrature(gamma: f64, u: f64, params: &ModelParams) -> Result<f64> {
    let lambda = params.lambda();
    let u = support(gamma, u, params.r())?;
    Ok(lambda * q_quadrature(gamma, u, params.r(), 1e-10 / lambda)?)
}

/// `Λ_γ(u)` from the closed form; fails if the imaginary residue is not negligible.
pub fn mean_measure_exact(gamma: f64, u: f64, params: &ModelParams) -> Result<f64> {
    mean_measure_exact_with(gamma, u, params, LegendreConvention::SinSquared)
}

/// As [`mean_measure_exact`] under an explicit Legendre convention.
pub fn mean_measure_exact_with(
    gamma: f64,
    u: f64,
    params: &ModelParams,
    conv: LegendreConvention,
) -> Result<f64> {
    let q = q_exact_complex(gamma, u, params.r(), conv)?;
    check_residue(q * params.lambda())
}

fn q_asymptotic(gamma: f64, u: f64, r: f64, terms: usize) -> Result<f64> {
    let c = expansion_coeffs(gamma, r)?;
    let t = u - gamma + r;
    let st = t.sqrt();
    let t32 = t * st;
    let mut v = c.b0 / 3.0 * t32 + c.b1 / 5.0 * t32 * t;
    if terms >= 3 {
        v += c.b2 / 7.0 * t32 * t * t;
    }
    Ok(4.0 * v)
}

/// Rescaled mean measure `Q_γ(u)` under `mode`.
pub fn q_rescaled(gamma: f64, u: f64, r: f64, mode: MeasureMode) -> Result<f64> {
    let u = support(gamma, u, r)?;
    match mode {
        MeasureMode::ExactElliptic => check_residue(q_exact_complex(gamma, u, r, LegendreConvention::SinSquared)?),
        MeasureMode::Quadrature => q_quadrature(gamma, u, r, 1e-12),
        MeasureMode::Asymptotic2 => q_asymptotic(gamma, u, r, 2),
        MeasureMode::Asymptotic3 => q_asymptotic(gamma, u, r, 3),
    }
}

/// `Q′_γ(u) = 2ψ_γ(u)`.
pub fn q_derivative(gamma: f64, u: f64, r: f64) -> Result<f64> {
    let u = support(gamma, u, r)?;
    Ok(2.0 * psi(gamma, u, r))
}

/// Derivative consistent with `mode`: the expansions differentiate term by term.
pub fn q_derivative_mode(gamma: f64, u: f64, r: f64, mode: MeasureMode) -> Result<f64> {
    let u = support(gamma, u, r)?;
    let terms = match mode {
        MeasureMode::ExactElliptic | MeasureMode::Quadrature => return Ok(2.0 * psi(gamma, u, r)),
        MeasureMode::Asymptotic2 => 2,
        MeasureMode::Asymptotic3 => 3,
    };
    let c = expansion_coeffs(gamma, r)?;
    let t = u - gamma + r;
    let st = t.sqrt();
    let mut v = c.b0 * st + c.b1 * st * t;
    if terms >= 3 {
        v += c.b2 * st * t * t;
    }
    Ok(2.0 * v)
}

fn q_resolved(gamma: f64, u: f64, r: f64, mode: MeasureMode) -> Result<f64> {
    q_rescaled(gamma, u, r, mode.resolved(gamma, r))
}

/// Rescaled measure of `I₁(u₂) ∩ I₀(u₁)`: the part of `x1`'s region, cut at
/// `u2`, that also lies in `x0`'s region cut at `u1`.
///
/// Built piecewise around the lower circle crossing `X₀₁`: below `u₀₁` the
/// overlap is the whole of `x0`'s region (or nothing, when `X₀₁` is above the
/// baseline); above it the overlap width is `ψ₀ + ψ₁ − θ₁`.
pub fn intersection_q(x0: PolarPoint, x1: PolarPoint, u2: f64, r: f64, mode: MeasureMode) -> Result<f64> {
    let (u0, u1) = (x0.u, x1.u);
    if !(u1 < u0 && u1 >= u0 - r - EDGE_TOL) {
        return Err(domain(format!("x1 at u={u1} is not a hop from u={u0}")));
    }
    if !(u2 >= u1 - r - EDGE_TOL && u2 <= u1 + EDGE_TOL) {
        return Err(domain(format!("u2={u2} outside [{}, {u1}]", u1 - r)));
    }
    let u2 = u2.clamp(u1 - r, u1);
    if u2 <= u0 - r {
        return Ok(0.0);
    }
    let geo = circle_intersection(x0, x1, r)?;
    let theta1 = wrap_angle(x1.theta - x0.theta).abs();
    let below = if geo.below_baseline { 1.0 } else { 0.0 };
    let u01 = geo.u01;

    let value = if u2 <= u01 {
        q_resolved(u0, u2, r, mode)? * below
    } else {
        let q0_u2 = q_resolved(u0, u2, r, mode)?;
        let q1_u2 = q_resolved(u1, u2, r, mode)?;
        let q0_u01 = q_resolved(u0, u01, r, mode)?;
        let q1_u01 = q_resolved(u1, u01, r, mode)?;
        0.5 * (q0_u2 + q1_u2 + 2.0 * theta1 * (u01 - u2)) + 0.5 * (q0_u01 * (2.0 * below - 1.0) - q1_u01)
    };
    clamp_nonnegative(value)
}

fn clamp_nonnegative(v: f64) -> Result<f64> {
    if v >= 0.0 {
        Ok(v)
    } else if v >= -1e-12 {
        Ok(0.0)
    } else {
        Err(Error::NegativeMeasure(v))
    }
}

/// Rescaled measure of the current feasible region once a fraction
/// `exclusion` of the overlap with the previous region is removed.
///
/// `exclusion = 0` is the independent model, `1` the dependent one-hop
/// model, and `p` the blinking sleep scheme.
pub fn feasible_q(
    prev: Option<PolarPoint>,
    cur: PolarPoint,
    u_next: f64,
    r: f64,
    exclusion: f64,
    mode: MeasureMode,
) -> Result<f64> {
    let base = q_resolved(cur.u, u_next, r, mode)?;
    match prev {
        Some(prev) if exclusion > 0.0 => {
            let overlap = intersection_q(prev, cur, u_next, r, mode)?;
            clamp_nonnegative(base - exclusion * overlap)
        }
        _ => Ok(base),
    }
}

/// `Q̄_i(u)` under the one-hop dependent model with every node awake.
pub fn dependent_q(path: &PathState, u_next: f64, mode: MeasureMode) -> Result<f64> {
    feasible_q(path.previous(), path.current(), u_next, path.radius(), 1.0, mode)
}

/// `Q_{u_i}(u) − p·Q_{i∩i−1}(u)`: the overlap keeps weight `1 − p`.
pub fn sleep_q(path: &PathState, u_next: f64, params: &ModelParams, mode: MeasureMode) -> Result<f64> {
    feasible_q(path.previous(), path.current(), u_next, path.radius(), params.p(), mode)
}
