//! Location reparameterisations: `(μ, η, γ, δ)` and `(x_m, η, γ, δ)`.

use crate::dist::transformed::nested_mean;
use crate::dist::{Family, ModelParams};
use crate::error::{Error, Result};
use crate::numerics::{solve_monotone_poly, RootSolveConfig};
use crate::params::{CubicCoeffs, ShapeParams};

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "eta = {eta} must be positive and finite"
        )))
    }
}

/// `dμ/dα` of the nested C-beta mean at fixed `η`.
fn mean_slope(alpha: f64, eta: f64, c: &CubicCoeffs) -> f64 {
    let e1 = eta * (eta + 1.0);
    c.a / eta
        + c.b * (2.0 * alpha + 1.0) / e1
        + c.c * (3.0 * alpha * alpha + 6.0 * alpha + 2.0) / (e1 * (eta + 2.0))
}

/// C-beta shape `α` with mean `μ` at total `η = α + β`.
///
/// The mean rises monotonically from 0 to 1 as `α` runs over `(0, η)`;
/// Newton from `α = η/2`, safeguarded by bisection.
pub fn alpha_from_mean(mu: f64, eta: f64, coeffs: CubicCoeffs) -> Result<f64> {
    check_eta(eta)?;
    coeffs.validate()?;
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::NoSolution(format!("mean {mu} outside (0, 1)")));
    }
    let f = |al: f64| nested_mean(al, eta, &coeffs) - mu;
    let eps = 1e-12 * eta;
    let (mut lo, mut hi) = (eps, eta - eps);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoSolution(format!(
            "mean {mu} not attainable for eta = {eta} (range {} to {})",
            f_lo + mu,
            f_hi + mu
        )));
    }
    let mut al = 0.5 * eta;
    for _ in 0..200 {
        let r = f(al);
        if r == 0.0 {
            return Ok(al);
        }
        if r < 0.0 {
            lo = al;
        } else {
            hi = al;
        }
        let slope = mean_slope(al, eta, &coeffs);
        let mut next = al - r / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - al).abs() <= 1e-15 * eta.max(1.0) || hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(next);
        }
        al = next;
    }
    Err(Error::NonConvergence {
        what: "alpha_from_mean",
        iterations: 200,
    })
}

/// Shape `α` placing the mode at `x_m` for total `η = α + β`.
///
/// C-beta: with `p_m = p(x_m)` the stationary equation
/// `(α−1)(1−p)J − (β−1)pJ − p(1−p)J′ = 0` is linear in `α`.
/// SC-beta: `α = 1 + p_m(η − 2)`.
pub fn alpha_from_mode(family: Family, x_m: f64, eta: f64, coeffs: CubicCoeffs) -> Result<f64> {
    check_eta(eta)?;
    coeffs.validate()?;
    if !(x_m > 0.0 && x_m < 1.0) {
        return Err(Error::NoSolution(format!("mode {x_m} outside (0, 1)")));
    }
    let p = solve_monotone_poly(coeffs, x_m, &RootSolveConfig::default())?.p;
    match family {
        Family::CBeta | Family::QBeta => {
            let j = coeffs.slope(p);
            let dj = coeffs.curvature(p);
            let al = (1.0 - p) + (eta - 1.0) * p + p * (1.0 - p) * dj / j;
            if al > 0.0 && al < eta {
                Ok(al)
            } else {
                Err(Error::NoSolution(format!(
                    "mode {x_m} needs alpha = {al} outside (0, {eta})"
                )))
            }
        }
        Family::SCBeta | Family::SQBeta => {
            if eta <= 2.0 {
                return Err(Error::NoSolution(format!(
                    "an interior mode needs eta > 2 (eta = {eta})"
                )));
            }
            Ok(1.0 + p * (eta - 2.0))
        }
        other => Err(Error::InvalidParams(format!(
            "modal reparameterisation is not defined for '{other}'"
        ))),
    }
}

/// Mean-regression parameters for C-beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanRegressionParams {
    pub mu: f64,
    pub eta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl MeanRegressionParams {
    pub fn to_model_params(&self) -> Result<ModelParams> {
        let shape = ShapeParams::new(self.gamma, self.delta)?;
        let al = alpha_from_mean(self.mu, self.eta, shape.to_coeffs())?;
        Ok(ModelParams::new(al, self.eta - al, self.gamma, self.delta))
    }
}

/// Modal-regression parameters for C-beta or SC-beta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModalRegressionParams {
    pub x_m: f64,
    pub eta: f64,
    pub gamma: f64,
    pub delta: f64,
}

impl ModalRegressionParams {
    pub fn to_model_params(&self, family: Family) -> Result<ModelParams> {
        let shape = ShapeParams::new(self.gamma, self.delta)?;
        let al = alpha_from_mode(family, self.x_m, self.eta, shape.to_coeffs())?;
        Ok(ModelParams::new(al, self.eta - al, self.gamma, self.delta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{CBetaDist, SCBetaDist, UnitDistribution};

    #[test]
    fn identity_mean_inversion() {
        let al = alpha_from_mean(0.3, 7.0, CubicCoeffs::IDENTITY).unwrap();
        assert!((al - 2.1).abs() < 1e-12);
    }

    #[test]
    fn cbeta_mean_round_trip() {
        let d = CBetaDist::new(2.0, 6.0, 0.3, 0.5).unwrap();
        let al = alpha_from_mean(d.mean(), 8.0, d.coeffs()).unwrap();
        assert!((al - 2.0).abs() < 1e-10);
    }

    #[test]
    fn qbeta_quadratic_cross_check() {
        // (1−2γ)α² + (2γη+1)α − μη(η+1) = 0
        let (g, eta, mu) = (0.2, 5.0, 0.45);
        let coeffs = CubicCoeffs::new(2.0 * g, 1.0 - 2.0 * g, 0.0);
        let (qa, qb, qc) = (1.0 - 2.0 * g, 2.0 * g * eta + 1.0, -mu * eta * (eta + 1.0));
        let root = (-qb + (qb * qb - 4.0 * qa * qc).sqrt()) / (2.0 * qa);
        let al = alpha_from_mean(mu, eta, coeffs).unwrap();
        assert!((al - root).abs() < 1e-12, "{al} vs {root}");
    }

    #[test]
    fn unattainable_mean() {
        assert!(matches!(
            alpha_from_mean(1.2, 4.0, CubicCoeffs::IDENTITY),
            Err(Error::NoSolution(_))
        ));
    }

    #[test]
    fn mode_inversions() {
        let sc = CubicCoeffs::new(1.0, 0.0, 0.0);
        assert!((alpha_from_mode(Family::SCBeta, 0.5, 6.0, sc).unwrap() - 3.0).abs() < 1e-12);
        let al = alpha_from_mode(Family::CBeta, 2.0 / 3.0, 5.0, CubicCoeffs::IDENTITY).unwrap();
        assert!((al - 3.0).abs() < 1e-12);

        let d = SCBetaDist::new(4.0, 8.0, 0.3, 0.6).unwrap();
        let al = alpha_from_mode(Family::SCBeta, d.mode().x_m.unwrap(), 12.0, d.coeffs()).unwrap();
        assert!((al - 4.0).abs() < 1e-10);

        let c = CBetaDist::new(3.5, 6.0, 0.35, 0.6).unwrap();
        let al = alpha_from_mode(Family::CBeta, c.mode().x_m.unwrap(), 9.5, c.coeffs()).unwrap();
        assert!((al - 3.5).abs() < 1e-9);

        assert!(alpha_from_mode(Family::SCBeta, 0.5, 2.0, sc).is_err());
    }

    #[test]
    fn reparameterised_params() {
        let m = MeanRegressionParams {
            mu: 0.25,
            eta: 10.0,
            gamma: 0.4,
            delta: 0.6,
        };
        let p = m.to_model_params().unwrap();
        let d = CBetaDist::new(p.alpha, p.beta, p.gamma, p.delta).unwrap();
        assert!((d.mean() - 0.25).abs() < 1e-12);
        assert!((p.alpha + p.beta - 10.0).abs() < 1e-12);
    }
}
