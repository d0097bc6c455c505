//! Shape-parameter space of the cubic transform.
//!
//! The transform `x(p) = ap + bp² + cp³` maps `[0, 1]` onto itself when
//! `a + b + c = 1` and its slope `J(p) = a + 2bp + 3cp²` stays positive. The
//! pair `(γ, δ) ∈ [0, 1]²` is a label-symmetric reparameterisation of the
//! admissible `(a, c)` region: `δ = (c + 2)/6` is invariant under `X → 1 − X`
//! while `γ → 1 − γ`.

use crate::error::{Error, Result};
use crate::numerics::special::ln_beta;

/// `δ` value at which `c = 0`, i.e. the quadratic subfamily.
pub const DELTA_QUADRATIC: f64 = 1.0 / 3.0;

const SUM_TOLERANCE: f64 = 1e-12;
const REGION_SLACK: f64 = 1e-12;

/// Label-symmetric shape parameters `(γ, δ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeParams {
    pub gamma: f64,
    pub delta: f64,
}

impl ShapeParams {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) || !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidParams(format!(
                "shape parameters must lie in [0, 1], got gamma={gamma}, delta={delta}"
            )));
        }
        Ok(Self { gamma, delta })
    }

    /// The identity transform, `x(p) = p`.
    pub fn identity() -> Self {
        Self {
            gamma: 0.5,
            delta: DELTA_QUADRATIC,
        }
    }

    /// Quadratic subfamily with the given `γ` (`δ = 1/3`, so `c = 0`).
    pub fn quadratic(gamma: f64) -> Result<Self> {
        Self::new(gamma, DELTA_QUADRATIC)
    }

    pub fn to_coeffs(self) -> CubicCoeffs {
        coeffs_from_shape(self)
    }

    /// Shape of `1 − X`.
    pub fn flip(self) -> Self {
        flip(self)
    }
}

/// Raw transform coefficients of `x(p) = ap + bp² + cp³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl CubicCoeffs {
    pub const IDENTITY: CubicCoeffs = CubicCoeffs {
        a: 1.0,
        b: 0.0,
        c: 0.0,
    };

    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// `x(p)`.
    #[inline]
    pub fn value(&self, p: f64) -> f64 {
        p * (self.a + p * (self.b + p * self.c))
    }

    /// `J(p) = dx/dp`.
    #[inline]
    pub fn slope(&self, p: f64) -> f64 {
        self.a + p * (2.0 * self.b + 3.0 * self.c * p)
    }

    /// `J′(p)`.
    #[inline]
    pub fn curvature(&self, p: f64) -> f64 {
        2.0 * self.b + 6.0 * self.c * p
    }

    /// Coefficients of the transform seen from the other end, so that
    /// `1 − x(1 − q)` has coefficients `(a′, b′, c′)` in `q`.
    pub fn flipped(&self) -> Self {
        Self {
            a: self.a + 2.0 * self.b + 3.0 * self.c,
            b: -self.b - 3.0 * self.c,
            c: self.c,
        }
    }

    /// Interior stationary point of `J`, `p = −b/3c`, when it lies in `(0, 1)`.
    pub fn slope_stationary_point(&self) -> Option<f64> {
        if self.c == 0.0 {
            return None;
        }
        let p = -self.b / (3.0 * self.c);
        (p > 0.0 && p < 1.0).then_some(p)
    }

    /// Smallest value of `J` on `[0, 1]`.
    pub fn min_slope(&self) -> f64 {
        let mut m = self.slope(0.0).min(self.slope(1.0));
        if let Some(p) = self.slope_stationary_point() {
            m = m.min(self.slope(p));
        }
        m
    }

    /// Largest value of `J` on `[0, 1]`.
    pub fn max_slope(&self) -> f64 {
        let mut m = self.slope(0.0).max(self.slope(1.0));
        if let Some(p) = self.slope_stationary_point() {
            m = m.max(self.slope(p));
        }
        m
    }

    fn sums_to_one(&self) -> bool {
        (self.a + self.b + self.c - 1.0).abs() <= SUM_TOLERANCE
    }

    /// Range of `a` admitted for this `c`, or `None` when `c ∉ [−2, 4]`.
    fn a_range(c: f64) -> Option<(f64, f64)> {
        if !(-2.0..=4.0).contains(&c) {
            return None;
        }
        if c <= 1.0 {
            Some((0.0, c + 2.0))
        } else {
            let half_width = (3.0 * c * (4.0 - c)).sqrt() / 2.0;
            Some((1.0 + c / 2.0 - half_width, 1.0 + c / 2.0 + half_width))
        }
    }

    /// `J(p) > 0` on all of `[0, 1]` (and `a + b + c = 1`).
    pub fn is_strictly_monotone(&self) -> bool {
        validate_monotone(*self)
    }

    /// `J(p) ≥ 0` on `[0, 1]`: admits the degenerate boundary of the region
    /// where `J` touches zero at a single point.
    pub fn is_monotone(&self) -> bool {
        if !self.sums_to_one() || !self.a.is_finite() || !self.c.is_finite() {
            return false;
        }
        let c = self.c.clamp(-2.0, 4.0);
        if (self.c - c).abs() > REGION_SLACK {
            return false;
        }
        match Self::a_range(c) {
            Some((lo, hi)) => self.a >= lo - REGION_SLACK && self.a <= hi + REGION_SLACK,
            None => false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.sums_to_one() {
            return Err(self.invalid("a + b + c must equal 1"));
        }
        if !self.is_monotone() {
            return Err(self.invalid("transform is not monotone on [0, 1]"));
        }
        Ok(())
    }

    pub fn to_shape(self) -> Result<ShapeParams> {
        shape_from_coeffs(self)
    }

    pub(crate) fn invalid(&self, reason: &'static str) -> Error {
        Error::InvalidCoeffs {
            a: self.a,
            b: self.b,
            c: self.c,
            reason,
        }
    }
}

/// `(γ, δ) → (a, b, c)`.
pub fn coeffs_from_shape(s: ShapeParams) -> CubicCoeffs {
    let c = 6.0 * s.delta - 2.0;
    let a = if s.delta < 0.5 {
        (c + 2.0) * s.gamma
    } else {
        (s.gamma - 0.5) * (3.0 * c * (4.0 - c)).max(0.0).sqrt() + 1.0 + c / 2.0
    };
    CubicCoeffs {
        a,
        b: 1.0 - a - c,
        c,
    }
}

/// `(a, b, c) → (γ, δ)`.
///
/// On the two corners where `a` is pinned (`c = −2` forces `a = 0`, `c = 4`
/// forces `a = 3`) every `γ` maps to the same coefficients; `γ = 1/2` is
/// returned there.
pub fn shape_from_coeffs(coeffs: CubicCoeffs) -> Result<ShapeParams> {
    coeffs.validate()?;
    let CubicCoeffs { a, c, .. } = coeffs;
    let delta = ((c + 2.0) / 6.0).clamp(0.0, 1.0);
    let gamma = if c < 1.0 {
        if c + 2.0 <= 0.0 {
            0.5
        } else {
            a / (c + 2.0)
        }
    } else {
        let width = (3.0 * c * (4.0 - c)).max(0.0).sqrt();
        if width == 0.0 {
            0.5
        } else {
            (a - (1.0 + c / 2.0)) / width + 0.5
        }
    };
    Ok(ShapeParams {
        gamma: gamma.clamp(0.0, 1.0),
        delta,
    })
}

/// Label transformation `X → 1 − X` on the shape parameters.
pub fn flip(s: ShapeParams) -> ShapeParams {
    ShapeParams {
        gamma: 1.0 - s.gamma,
        delta: s.delta,
    }
}

/// `true` iff `J(p) > 0` for every `p ∈ [0, 1]` and `a + b + c = 1`.
///
/// Uses the closed-form region for `a` given `c`; [`CubicCoeffs::min_slope`]
/// gives the same answer by minimising `J` directly.
pub fn validate_monotone(coeffs: CubicCoeffs) -> bool {
    if !coeffs.sums_to_one() {
        return false;
    }
    match CubicCoeffs::a_range(coeffs.c) {
        Some((lo, hi)) => coeffs.a > lo && coeffs.a < hi,
        None => false,
    }
}

/// Parameters of the parent `Beta(α, β)` distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaCore {
    alpha: f64,
    beta: f64,
    eta: f64,
    ln_beta: f64,
}

impl BetaCore {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite() && beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "beta shape parameters must be positive and finite, got alpha={alpha}, beta={beta}"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            eta: alpha + beta,
            ln_beta: ln_beta(alpha, beta),
        })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `η = α + β`.
    #[inline]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// `ln B(α, β)`.
    #[inline]
    pub fn ln_beta(&self) -> f64 {
        self.ln_beta
    }

    /// Parameters of the parent of `1 − X`.
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
            eta: self.eta,
            ln_beta: self.ln_beta,
        }
    }

    /// `E(P^m) = (α)_m / (η)_m` for `m = 0..=max`.
    pub fn raw_moments(&self, max: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(max + 1);
        let mut r = 1.0;
        out.push(r);
        for k in 0..max {
            let k = k as f64;
            r *= (self.alpha + k) / (self.eta + k);
            out.push(r);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_shape_gives_identity_coeffs() {
        let c = coeffs_from_shape(ShapeParams::identity());
        assert!(close(c.a, 1.0, 1e-15) && close(c.b, 0.0, 1e-15) && close(c.c, 0.0, 1e-15));
    }

    #[test]
    fn quadratic_subfamily_has_a_equal_two_gamma() {
        let c = coeffs_from_shape(ShapeParams::new(0.25, DELTA_QUADRATIC).unwrap());
        assert!(close(c.a, 0.5, 1e-15));
        assert!(close(c.b, 0.5, 1e-15));
        assert!(close(c.c, 0.0, 1e-15));
    }

    #[test]
    fn delta_one_pins_a_to_three() {
        for g in [0.0, 0.3, 0.5, 1.0] {
            let c = coeffs_from_shape(ShapeParams::new(g, 1.0).unwrap());
            assert_eq!((c.a, c.b, c.c), (3.0, -6.0, 4.0));
        }
    }

    #[test]
    fn inverse_on_reference_points() {
        let s = shape_from_coeffs(CubicCoeffs::IDENTITY).unwrap();
        assert!(close(s.gamma, 0.5, 1e-15) && close(s.delta, 1.0 / 3.0, 1e-15));
        let s = shape_from_coeffs(CubicCoeffs::new(0.5, 0.5, 0.0)).unwrap();
        assert!(close(s.gamma, 0.25, 1e-15) && close(s.delta, 1.0 / 3.0, 1e-15));
    }

    #[test]
    fn branches_agree_at_c_equal_one() {
        for g in [0.0, 0.1, 0.37, 0.5, 0.8, 1.0] {
            let a = 3.0 * g;
            let left = a / (1.0 + 2.0);
            let right = (a - 1.5) / (3.0f64 * 3.0).sqrt() + 0.5;
            assert!(close(left, right, 1e-15));
            let s = shape_from_coeffs(CubicCoeffs::new(a, 1.0 - a - 1.0, 1.0)).unwrap();
            assert!(close(s.gamma, g, 1e-15));
            // forward branches at δ = 1/2
            let fwd_left = (1.0 + 2.0) * g;
            let fwd_right = (g - 0.5) * 3.0 + 1.5;
            assert!(close(fwd_left, fwd_right, 1e-15));
        }
    }

    #[test]
    fn flip_examples() {
        let s = flip(ShapeParams::new(0.3, 0.7).unwrap());
        assert!(close(s.gamma, 0.7, 1e-15) && s.delta == 0.7);
        let s = ShapeParams::new(0.5, 0.42).unwrap();
        assert_eq!(flip(s), s);
    }

    #[test]
    fn flip_realises_a_prime() {
        for &(g, d) in &[(0.1, 0.2), (0.3, 0.45), (0.7, 0.55), (0.9, 0.9), (0.2, 0.8)] {
            let s = ShapeParams::new(g, d).unwrap();
            let c = s.to_coeffs();
            let f = s.flip().to_coeffs();
            assert!(close(f.a, 2.0 + c.c - c.a, 1e-12), "{g} {d}");
            assert!(close(f.c, c.c, 1e-15));
            let fl = c.flipped();
            assert!(close(fl.a, f.a, 1e-12) && close(fl.b, f.b, 1e-12));
        }
    }

    #[test]
    fn validate_monotone_examples() {
        assert!(validate_monotone(CubicCoeffs::IDENTITY));
        assert!(!validate_monotone(CubicCoeffs::new(5.0, -8.0, 4.0)));
        assert!(!validate_monotone(CubicCoeffs::new(2.9, -5.9, 4.0)));
        let degenerate = CubicCoeffs::new(3.0, -6.0, 4.0);
        assert_eq!(degenerate.slope(0.5), 0.0);
        assert!(!validate_monotone(degenerate));
        assert!(degenerate.is_monotone());
        assert!(!validate_monotone(CubicCoeffs::new(0.5, 0.4, 0.0)));
    }

    #[test]
    fn corners_map_back_to_half() {
        let s = shape_from_coeffs(CubicCoeffs::new(3.0, -6.0, 4.0)).unwrap();
        assert_eq!(s, ShapeParams::new(0.5, 1.0).unwrap());
        let s = shape_from_coeffs(CubicCoeffs::new(0.0, 3.0, -2.0)).unwrap();
        assert_eq!(s, ShapeParams::new(0.5, 0.0).unwrap());
    }

    #[test]
    fn shape_out_of_range_rejected() {
        assert!(ShapeParams::new(-0.1, 0.5).is_err());
        assert!(ShapeParams::new(0.5, 1.5).is_err());
        assert!(BetaCore::new(0.0, 1.0).is_err());
        assert!(BetaCore::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn beta_raw_moments() {
        let core = BetaCore::new(2.0, 3.0).unwrap();
        let m = core.raw_moments(2);
        assert!(close(m[1], 0.4, 1e-15));
        assert!(close(m[2], 2.0 * 3.0 / (5.0 * 6.0), 1e-15));
    }
}
