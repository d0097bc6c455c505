//! Inversion of monotone polynomial transforms.
//!
//! Newton-Raphson from `p = x`, with the iterate clamped back into the
//! solution interval after every step. A bracketing interval is carried
//! along, and any step that leaves it (or a stalled residual) falls back to
//! bisection, so the iteration terminates for every weakly monotone curve.

use crate::error::{Error, Result};
use crate::params::CubicCoeffs;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSolveConfig {
    /// Absolute bound on the residual `|x(p) − x|`.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub clamp_lo: f64,
    pub clamp_hi: f64,
}

impl Default for RootSolveConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iterations: 100,
            clamp_lo: 0.0,
            clamp_hi: 1.0,
        }
    }
}

impl RootSolveConfig {
    pub fn new(
        tolerance: f64,
        max_iterations: usize,
        clamp_lo: f64,
        clamp_hi: f64,
    ) -> Result<Self> {
        if tolerance.is_nan()
            || tolerance <= 0.0
            || max_iterations == 0
            || clamp_lo.is_nan()
            || clamp_hi.is_nan()
            || clamp_lo >= clamp_hi
        {
            return Err(Error::InvalidParams(format!(
                "root solve config needs tolerance > 0, max_iterations >= 1, clamp_lo < clamp_hi \
                 (got {tolerance}, {max_iterations}, [{clamp_lo}, {clamp_hi}])"
            )));
        }
        Ok(Self {
            tolerance,
            max_iterations,
            clamp_lo,
            clamp_hi,
        })
    }
}

/// A nondecreasing curve on the solver's clamp interval.
pub trait MonotoneCurve {
    fn value(&self, p: f64) -> f64;
    fn slope(&self, p: f64) -> f64;
}

impl MonotoneCurve for CubicCoeffs {
    #[inline]
    fn value(&self, p: f64) -> f64 {
        CubicCoeffs::value(self, p)
    }

    #[inline]
    fn slope(&self, p: f64) -> f64 {
        CubicCoeffs::slope(self, p)
    }
}

/// Result of inverting `x = x(p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadInversion {
    pub p: f64,
    /// `1 − p`, computed without cancellation when `p` is close to one.
    pub q: f64,
    /// `dx/dp` at the root.
    pub jacobian: f64,
    /// `Δ(x) = (γ² + (1 − 2γ)x)^{1/2}` when the quadratic closed form was used.
    pub delta: Option<f64>,
}

/// Solve `curve(p) = target` for `p` in `[cfg.clamp_lo, cfg.clamp_hi]`.
///
/// Returns the root and the slope there. The curve is never evaluated
/// outside the clamp interval.
pub fn newton_invert<M: MonotoneCurve + ?Sized>(
    curve: &M,
    target: f64,
    cfg: &RootSolveConfig,
) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (cfg.clamp_lo, cfg.clamp_hi);
    let mut p = target.clamp(lo, hi);
    let mut r = curve.value(p) - target;
    let mut stalled = 0usize;

    for _ in 0..cfg.max_iterations {
        if r.abs() <= cfg.tolerance {
            return Ok(polish(curve, target, p, r, lo, hi));
        }
        if r < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            return Ok((p, curve.slope(p)));
        }
        let j = curve.slope(p);
        let mut next = if j > 0.0 { p - r / j } else { f64::NAN };
        next = next.clamp(cfg.clamp_lo, cfg.clamp_hi);
        if !(next > lo && next < hi) || stalled >= 2 {
            next = 0.5 * (lo + hi);
            stalled = 0;
        }
        let r_next = curve.value(next) - target;
        if r_next.abs() > 0.5 * r.abs() {
            stalled += 1;
        } else {
            stalled = 0;
        }
        p = next;
        r = r_next;
    }

    // Guarded fallback: plain bisection on the current bracket.
    for _ in 0..200 {
        if r.abs() <= cfg.tolerance {
            return Ok((p, curve.slope(p)));
        }
        if r < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            return Ok((p, curve.slope(p)));
        }
        p = 0.5 * (lo + hi);
        r = curve.value(p) - target;
    }
    Err(Error::NonConvergence {
        what: "monotone polynomial inversion",
        iterations: cfg.max_iterations + 200,
    })
}

/// One extra Newton step after the residual test passes; kept only if it
/// stays inside the bracket and does not increase the residual.
fn polish<M: MonotoneCurve + ?Sized>(
    curve: &M,
    target: f64,
    p: f64,
    r: f64,
    lo: f64,
    hi: f64,
) -> (f64, f64) {
    let j = curve.slope(p);
    if r != 0.0 && j > 0.0 {
        let next = p - r / j;
        if next >= lo && next <= hi {
            let r_next = curve.value(next) - target;
            if r_next.abs() <= r.abs() {
                return (next, curve.slope(next));
            }
        }
    }
    (p, j)
}

/// Invert `x = ap + bp² + cp³` on `[0, 1]`.
///
/// For `c = 0` the quadratic closed form `p = x / (γ + Δ(x))` is used with
/// `γ = a/2`. Otherwise Newton-Raphson is run on whichever end of the curve is
/// closer to `x`: directly for `x ≤ 1/2`, and on the flipped coefficients for
/// `1 − x` above that, so both tails keep full precision.
pub fn solve_monotone_poly(
    coeffs: CubicCoeffs,
    x: f64,
    cfg: &RootSolveConfig,
) -> Result<QuadInversion> {
    if !coeffs.is_monotone() {
        return Err(coeffs.invalid("transform is not monotone on [0, 1]"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("x = {x} outside [0, 1]")));
    }
    Ok(invert_unchecked(&coeffs, &coeffs.flipped(), x, cfg))
}

/// [`solve_monotone_poly`] without validation, for callers that have already
/// validated the coefficients and cached their flipped form.
pub(crate) fn invert_unchecked(
    coeffs: &CubicCoeffs,
    flipped: &CubicCoeffs,
    x: f64,
    cfg: &RootSolveConfig,
) -> QuadInversion {
    if x <= 0.0 {
        return QuadInversion {
            p: 0.0,
            q: 1.0,
            jacobian: coeffs.slope(0.0),
            delta: (coeffs.c == 0.0).then_some(coeffs.a / 2.0),
        };
    }
    if x >= 1.0 {
        return QuadInversion {
            p: 1.0,
            q: 0.0,
            jacobian: coeffs.slope(1.0),
            delta: (coeffs.c == 0.0)
                .then(|| (coeffs.a * coeffs.a / 4.0 + coeffs.b).max(0.0).sqrt()),
        };
    }
    if coeffs.c == 0.0 {
        let gamma = coeffs.a / 2.0;
        let delta = (gamma * gamma + coeffs.b * x).max(0.0).sqrt();
        let (p, q) = if x <= 0.5 {
            let p = x / (gamma + delta);
            (p, 1.0 - p)
        } else {
            let q = (1.0 - x) / (1.0 - gamma + delta);
            (1.0 - q, q)
        };
        return QuadInversion {
            p,
            q,
            jacobian: 2.0 * delta,
            delta: Some(delta),
        };
    }
    // Newton on a weakly monotone curve always terminates (bisection backs it
    // up), so the error branch is unreachable for validated coefficients.
    if x <= 0.5 {
        let (p, j) = newton_invert(coeffs, x, cfg).unwrap_or_else(|_| (x, coeffs.slope(x)));
        QuadInversion {
            p,
            q: 1.0 - p,
            jacobian: j,
            delta: None,
        }
    } else {
        let y = 1.0 - x;
        let (q, j) = newton_invert(flipped, y, cfg).unwrap_or_else(|_| (y, flipped.slope(y)));
        QuadInversion {
            p: 1.0 - q,
            q,
            jacobian: j,
            delta: None,
        }
    }
}
