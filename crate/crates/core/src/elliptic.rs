//! Carlson symmetric elliptic integrals over complex arguments, and the
//! incomplete Legendre forms `F(φ; k)` and `E(φ; k)` reduced onto them.
//!
//! The duplication algorithms follow Carlson's 1995 formulation. Arguments may
//! sit on the negative real axis; there the sign of the (possibly zero)
//! imaginary part picks the side of the cut, exactly as the principal square
//! root does for IEEE signed zeros.
//!
//! # Legendre convention
//!
//! [`LegendreConvention::SinSquared`] is the shipped default:
//! `F(φ; k) = ∫₀^φ (1 − k² sin²θ)^{−1/2} dθ` with `k` the modulus (not the
//! parameter `m = k²`). For real `φ` with `k sin φ > 1` the integrand is taken
//! on the lower side of its cut, `1 − k² sin²θ − i0`. That is the choice under
//! which the closed-form mean measure in [`crate::measure`] reproduces direct
//! quadrature; the `cos²` variant is kept for comparison and does not.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{domain, Error, Result};

pub type ComplexValue = Complex64;

/// Relative accuracy target of the duplication loops.
pub const CARLSON_TOL: f64 = 1e-15;
pub const CARLSON_MAX_ITER: usize = 100;

fn finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

fn is_zero(z: ComplexValue) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// Carlson's `R_F(x, y, z) = ½∫₀^∞ [(t+x)(t+y)(t+z)]^{−1/2} dt`.
pub fn carlson_rf(x: ComplexValue, y: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    if !(finite(x) && finite(y) && finite(z)) {
        return Err(domain("R_F arguments must be finite"));
    }
    let zeros = [x, y, z].iter().filter(|v| is_zero(**v)).count();
    if zeros > 1 {
        return Err(domain("R_F allows at most one zero argument"));
    }

    let a0 = (x + y + z) / 3.0;
    let spread = (a0 - x).norm().max((a0 - y).norm()).max((a0 - z).norm());
    let q = (3.0 * CARLSON_TOL).powf(-1.0 / 6.0) * spread;

    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0; // 4^{-m}
    let mut iter = 0;
    while scale * q >= am.norm() {
        if iter == CARLSON_MAX_ITER {
            return Err(Error::NonConvergence {
                routine: "carlson_rf",
                iterations: iter,
            });
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        am = (am + lam) * 0.25;
        xm = (xm + lam) * 0.25;
        ym = (ym + lam) * 0.25;
        zm = (zm + lam) * 0.25;
        scale *= 0.25;
        iter += 1;
    }
    let xs = (a0 - x) * scale / am;
    let ys = (a0 - y) * scale / am;
    let zs = -(xs + ys);
    let e2 = xs * ys - zs * zs;
    let e3 = xs * ys * zs;
    let series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - e2 * e3 * (3.0 / 44.0);
    Ok(series / am.sqrt())
}

/// Carlson's `R_D(x, y, z) = (3/2)∫₀^∞ [(t+x)(t+y)]^{−1/2}(t+z)^{−3/2} dt`.
pub fn carlson_rd(x: ComplexValue, y: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    if !(finite(x) && finite(y) && finite(z)) {
        return Err(domain("R_D arguments must be finite"));
    }
    if is_zero(z) {
        return Err(domain("R_D requires z ≠ 0"));
    }
    if is_zero(x) && is_zero(y) {
        return Err(domain("R_D allows at most one of x, y to be zero"));
    }

    let a0 = (x + y + z * 3.0) / 5.0;
    let spread = (a0 - x).norm().max((a0 - y).norm()).max((a0 - z).norm());
    let q = (0.25 * CARLSON_TOL).powf(-1.0 / 6.0) * spread;

    let (mut xm, mut ym, mut zm, mut am) = (x, y, z, a0);
    let mut scale = 1.0;
    let mut sum = ComplexValue::zero();
    let mut iter = 0;
    while scale * q >= am.norm() {
        if iter == CARLSON_MAX_ITER {
            return Err(Error::NonConvergence {
                routine: "carlson_rd",
                iterations: iter,
            });
        }
        let (sx, sy, sz) = (xm.sqrt(), ym.sqrt(), zm.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        sum += scale / (sz * (zm + lam));
        am = (am + lam) * 0.25;
        xm = (xm + lam) * 0.25;
        ym = (ym + lam) * 0.25;
        zm = (zm + lam) * 0.25;
        scale *= 0.25;
        iter += 1;
    }
    let xs = (a0 - x) * scale / am;
    let ys = (a0 - y) * scale / am;
    let zs = -(xs + ys) / 3.0;
    let xy = xs * ys;
    let z2 = zs * zs;
    let e2 = xy - z2 * 6.0;
    let e3 = (xy * 3.0 - z2 * 8.0) * zs;
    let e4 = (xy - z2) * z2 * 3.0;
    let e5 = xy * zs * z2;
    let series = 1.0 - e2 * (3.0 / 14.0) + e3 / 6.0 + e2 * e2 * (9.0 / 88.0) - e4 * (3.0 / 22.0)
        - e2 * e3 * (9.0 / 52.0)
        + e5 * (3.0 / 26.0);
    Ok(series * scale / (am * am.sqrt()) + sum * 3.0)
}

/// Which squared trigonometric factor multiplies `k²` in the Legendre integrands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LegendreConvention {
    /// `1 − k² sin²θ` (the standard form).
    #[default]
    SinSquared,
    /// `1 − k² cos²θ`.
    CosSquared,
}

#[derive(Clone, Copy)]
enum Kind {
    First,
    Second,
}

// F and E on the principal strip |Re φ| ≤ π/2, sin² form.
fn legendre_principal(kind: Kind, phi: ComplexValue, k: f64) -> Result<ComplexValue> {
    if is_zero(phi) {
        return Ok(ComplexValue::zero());
    }
    let s = phi.sin();
    let c = phi.cos();
    let c2 = c * c;
    let mut delta2 = ComplexValue::new(1.0, 0.0) - s * s * (k * k);
    if phi.im == 0.0 && delta2.im == 0.0 {
        // real amplitude: evaluate on the lower side of the cut
        delta2.im = -0.0;
    }
    let one = ComplexValue::new(1.0, 0.0);
    let rf = carlson_rf(c2, delta2, one)?;
    match kind {
        Kind::First => Ok(s * rf),
        Kind::Second => {
            let rd = carlson_rd(c2, delta2, one)?;
            Ok(s * rf - s * s * s * (k * k / 3.0) * rd)
        }
    }
}

fn legendre_sin(kind: Kind, phi: ComplexValue, k: f64) -> Result<ComplexValue> {
    if !finite(phi) || !k.is_finite() {
        return Err(domain("Legendre integrals need finite φ and k"));
    }
    // shift Re φ into [−π/2, π/2] using F(φ + mπ) = F(φ) + 2m·K
    let m = (phi.re / PI).round();
    if m == 0.0 {
        return legendre_principal(kind, phi, k);
    }
    let reduced = ComplexValue::new(phi.re - m * PI, phi.im);
    let complete = legendre_principal(kind, ComplexValue::new(PI / 2.0, 0.0), k)?;
    Ok(legendre_principal(kind, reduced, k)? + complete * (2.0 * m))
}

fn legendre(kind: Kind, phi: ComplexValue, k: f64, conv: LegendreConvention) -> Result<ComplexValue> {
    match conv {
        LegendreConvention::SinSquared => legendre_sin(kind, phi, k),
        LegendreConvention::CosSquared => {
            // θ → π/2 − θ turns cos² into sin²
            let half_pi = ComplexValue::new(PI / 2.0, 0.0);
            Ok(legendre_sin(kind, half_pi, k)? - legendre_sin(kind, half_pi - phi, k)?)
        }
    }
}

/// `(F, E)` for a real amplitude in `[0, π/2]` given `sin φ` and `Δ² = 1 − k² sin²φ`.
///
/// Supplying `Δ²` directly avoids the cancellation in `1 − k² sin²φ` near the
/// branch point, where `F` and `E` behave like `√Δ²`. Negative `Δ²` is taken
/// on the lower side of the cut.
pub fn legendre_fe_real(sin_phi: f64, delta2: f64, k: f64) -> Result<(ComplexValue, ComplexValue)> {
    if !(sin_phi.is_finite() && delta2.is_finite() && k.is_finite()) || !(0.0..=1.0).contains(&sin_phi) {
        return Err(domain("real Legendre pair needs sin φ in [0, 1] and finite Δ², k"));
    }
    if sin_phi == 0.0 {
        return Ok((ComplexValue::zero(), ComplexValue::zero()));
    }
    let s = ComplexValue::new(sin_phi, 0.0);
    let c2 = ComplexValue::new((1.0 - sin_phi) * (1.0 + sin_phi), 0.0);
    let d2 = ComplexValue::new(delta2, -0.0);
    let one = ComplexValue::new(1.0, 0.0);
    let rf = carlson_rf(c2, d2, one)?;
    let rd = carlson_rd(c2, d2, one)?;
    Ok((s * rf, s * rf - s * s * s * (k * k / 3.0) * rd))
}

/// Incomplete elliptic integral of the first kind under `conv`.
pub fn legendre_f(phi: ComplexValue, k: f64, conv: LegendreConvention) -> Result<ComplexValue> {
    legendre(Kind::First, phi, k, conv)
}

/// Incomplete elliptic integral of the second kind under `conv`.
pub fn legendre_e(phi: ComplexValue, k: f64, conv: LegendreConvention) -> Result<ComplexValue> {
    legendre(Kind::Second, phi, k, conv)
}

/// `F(φ; k)` for real amplitude, default convention.
pub fn ellip_f(phi: f64, k: f64) -> Result<ComplexValue> {
    legendre_f(ComplexValue::new(phi, 0.0), k, LegendreConvention::SinSquared)
}

/// `E(φ; k)` for real amplitude, default convention.
pub fn ellip_e(phi: f64, k: f64) -> Result<ComplexValue> {
    legendre_e(ComplexValue::new(phi, 0.0), k, LegendreConvention::SinSquared)
}
