//! Parameters and sink-centred geometry.
//!
//! The sink sits at the origin. Points are stored in polar form `(u, θ)`
//! with `u` the sink distance and `θ ∈ (−π, π]` measured at the sink, the
//! source being `(ℓ, 0)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};

/// Slack allowed when a sink distance sits on the edge of a support interval.
pub const EDGE_TOL: f64 = 1e-12;

/// Network parameters, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    r: f64,
    ell: f64,
    p: f64,
    alpha: f64,
}

/// Unvalidated parameter set as read from configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RawParams {
    pub lambda: f64,
    pub r: f64,
    pub ell: f64,
    pub p: f64,
    pub alpha: Option<f64>,
}

impl RawParams {
    pub fn new(lambda: f64, r: f64, ell: f64) -> Self {
        RawParams {
            lambda,
            r,
            ell,
            p: 1.0,
            alpha: None,
        }
    }
}

/// Checks every parameter invariant and fills in `α = λ/p` when absent.
pub fn validate_params(raw: RawParams) -> Result<ModelParams> {
    let RawParams {
        lambda,
        r,
        ell,
        p,
        alpha,
    } = raw;
    let finite = [lambda, r, ell, p].iter().all(|v| v.is_finite());
    if !finite {
        return Err(Error::InvalidParams(format!(
            "non-finite value in (λ={lambda}, r={r}, ℓ={ell}, p={p})"
        )));
    }
    if r <= 0.0 {
        return Err(Error::InvalidParams(format!("radius r={r} must be positive")));
    }
    if ell <= r {
        return Err(Error::InvalidParams(format!(
            "source distance ℓ={ell} must exceed the radius r={r}"
        )));
    }
    if lambda <= 0.0 {
        return Err(Error::InvalidParams(format!("density λ={lambda} must be positive")));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "awake probability p={p} must lie in (0, 1]"
        )));
    }
    let alpha = match alpha {
        None => lambda / p,
        Some(a) => {
            if (lambda - p * a).abs() > 1e-12 * lambda {
                return Err(Error::InvalidParams(format!(
                    "λ={lambda} is not p·α = {p}·{a}"
                )));
            }
            a
        }
    };
    Ok(ModelParams {
        lambda,
        r,
        ell,
        p,
        alpha,
    })
}

impl ModelParams {
    /// Parameters without a sleep scheme (`p = 1`).
    pub fn new(lambda: f64, r: f64, ell: f64) -> Result<Self> {
        validate_params(RawParams::new(lambda, r, ell))
    }

    /// Parameters with awake probability `p`; the awake density `λ` is held fixed.
    pub fn with_sleep(lambda: f64, r: f64, ell: f64, p: f64) -> Result<Self> {
        validate_params(RawParams {
            lambda,
            r,
            ell,
            p,
            alpha: None,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
    pub fn r(&self) -> f64 {
        self.r
    }
    pub fn ell(&self) -> f64 {
        self.ell
    }
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Copy with a different awake density, keeping `r`, `ℓ` and `p`.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::with_sleep(lambda, self.r, self.ell, self.p)
    }

    pub fn raw(&self) -> RawParams {
        RawParams {
            lambda: self.lambda,
            r: self.r,
            ell: self.ell,
            p: self.p,
            alpha: Some(self.alpha),
        }
    }
}

/// Wraps an angle into `(−π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub u: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(u: f64, theta: f64) -> Self {
        PolarPoint {
            u,
            theta: wrap_angle(theta),
        }
    }

    pub fn from_cartesian(x: f64, y: f64) -> Self {
        PolarPoint {
            u: x.hypot(y),
            theta: y.atan2(x),
        }
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        (self.u * self.theta.cos(), self.u * self.theta.sin())
    }

    pub fn distance(self, other: PolarPoint) -> f64 {
        // law of cosines loses precision for nearby points; go through Cartesian
        let (x0, y0) = self.to_cartesian();
        let (x1, y1) = other.to_cartesian();
        (x1 - x0).hypot(y1 - y0)
    }
}

/// Half-width at the sink of the arc `{|x| = u} ∩ disk(center at distance γ, r)`.
///
/// Returns `arccos((u² + γ² − r²)/(2uγ))`; the argument is clamped onto
/// `[−1, 1]` after the domain check so edge points evaluate cleanly.
pub fn sink_angle(gamma: f64, u: f64, r: f64) -> Result<f64> {
    if !(gamma > r) {
        return Err(domain(format!("sink angle needs γ > r, got γ={gamma}, r={r}")));
    }
    if !(u >= gamma - r - EDGE_TOL && u <= gamma + r + EDGE_TOL) {
        return Err(domain(format!(
            "u={u} outside [{}, {}]",
            gamma - r,
            gamma + r
        )));
    }
    Ok(psi(gamma, u, r))
}

/// Unchecked sink angle for hot loops; callers guarantee `u ∈ [γ−r, γ+r]`.
#[inline]
pub(crate) fn psi(gamma: f64, u: f64, r: f64) -> f64 {
    if u <= 0.0 {
        return PI;
    }
    let arg = (u * u + gamma * gamma - r * r) / (2.0 * u * gamma);
    arg.clamp(-1.0, 1.0).acos()
}

/// One forwarding path, source first.
///
/// `points[i]` holds the absolute polar position of the `i`-th forwarding
/// node, so `points[i].theta` is the source-to-node angle `θ_{0i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PathState {
    r: f64,
    points: Vec<PolarPoint>,
}

impl PathState {
    pub fn new(params: &ModelParams) -> Self {
        PathState {
            r: params.r(),
            points: alloc::vec![PolarPoint::new(params.ell(), 0.0)],
        }
    }

    /// Appends the next node given its sink distance and angle relative to the
    /// current node.
    pub fn push(&mut self, u: f64, theta_rel: f64) -> Result<()> {
        let cur = self.current();
        if !(u >= cur.u - self.r - EDGE_TOL && u < cur.u) {
            return Err(domain(format!(
                "next sink distance {u} outside [{}, {})",
                cur.u - self.r,
                cur.u
            )));
        }
        let width = sink_angle(cur.u, u, self.r)?;
        if theta_rel.abs() > width + EDGE_TOL {
            return Err(domain(format!(
                "relative angle {theta_rel} exceeds sink angle {width}"
            )));
        }
        self.points.push(PolarPoint::new(u, cur.theta + theta_rel));
        Ok(())
    }

    pub fn points(&self) -> &[PolarPoint] {
        &self.points
    }

    pub fn current(&self) -> PolarPoint {
        *self.points.last().expect("path always holds the source")
    }

    /// The node before the current one, if any hop has been made.
    pub fn previous(&self) -> Option<PolarPoint> {
        let n = self.points.len();
        (n >= 2).then(|| self.points[n - 2])
    }

    pub fn hops(&self) -> usize {
        self.points.len() - 1
    }

    pub fn radius(&self) -> f64 {
        self.r
    }
}

/// Lower crossing of the two radius-`r` circles around consecutive path nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionGeometry {
    /// Sink distance of the crossing point `X₀₁`.
    pub u01: f64,
    /// Whether `X₀₁` lies on the far side of the baseline from `x0` to the
    /// sink, once `x1` is reflected onto the non-negative side.
    pub below_baseline: bool,
    /// Absolute position of `X₀₁`.
    pub point: PolarPoint,
}

/// Intersection of the circles of radius `r` around `x0` and `x1`.
///
/// Works in the frame where `x0` lies on the positive axis and `x1` has a
/// non-negative angle, and returns the crossing with the smaller angle there.
/// A collinear pair reports `below_baseline = true`.
pub fn circle_intersection(x0: PolarPoint, x1: PolarPoint, r: f64) -> Result<IntersectionGeometry> {
    let rel = wrap_angle(x1.theta - x0.theta);
    let sign = if rel < 0.0 { -1.0 } else { 1.0 };
    let rel = rel.abs();
    let (ax, ay) = (x0.u, 0.0);
    let (bx, by) = (x1.u * rel.cos(), x1.u * rel.sin());
    let (dx, dy) = (bx - ax, by - ay);
    let d = dx.hypot(dy);
    if d <= 1e-14 * x0.u.max(1.0) {
        return Err(Error::Degenerate);
    }
    if d >= 2.0 * r {
        return Err(Error::NoIntersection { distance: d });
    }
    let (mx, my) = (0.5 * (ax + bx), 0.5 * (ay + by));
    let h = (r * r - 0.25 * d * d).sqrt();
    let (nx, ny) = (-dy / d, dx / d);
    let p_plus = (mx + h * nx, my + h * ny);
    let p_minus = (mx - h * nx, my - h * ny);
    let a_plus = p_plus.1.atan2(p_plus.0);
    let a_minus = p_minus.1.atan2(p_minus.0);
    let (px, py, angle) = if a_minus <= a_plus {
        (p_minus.0, p_minus.1, a_minus)
    } else {
        (p_plus.0, p_plus.1, a_plus)
    };
    let u01 = px.hypot(py);
    Ok(IntersectionGeometry {
        u01,
        below_baseline: angle < 0.0,
        point: PolarPoint::new(u01, x0.theta + sign * angle),
    })
}
