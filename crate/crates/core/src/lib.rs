//! Cubic-transformed beta distributions on `[0, 1]`.
//!
//! A variate `X = aP + bP² + cP³` with `P ~ Beta(α, β)` and a monotone cubic
//! gives the Q-beta (`c = 0`) and C-beta families. Dropping the Jacobian of the
//! transform gives the SQ-beta and SC-beta families, whose density is
//! proportional to the parent beta density at `p(x)`. With `α = β = 1` the
//! transform yields the two-parameter C-beta(1,1) distribution, and the
//! Jacobian itself is the density of a general quadratic distribution.
//!
//! The crate is organised as:
//!
//! * [`numerics`]: monotone cubic inversion, incomplete beta, quadrature oracle
//! * [`params`]: the label-symmetric `(γ, δ)` shape space and cubic coefficients
//! * [`dist`]: the distribution families
//! * [`sampling`]: random variate generation
//! * [`fit`]: maximum likelihood, likelihood-ratio tests, mean/modal regression

pub mod dist;
pub mod error;
pub mod fit;
pub mod numerics;
pub mod params;
pub mod sampling;

pub use dist::{
    AnyDist, BetaDist, CBeta11Dist, CBetaDist, Family, GenQuadDist, ModeKind, ModeResult,
    QBetaDist, SCBetaDist, SQBetaDist, UnitDistribution,
};
pub use error::{Error, Result};
pub use params::{BetaCore, CubicCoeffs, ShapeParams};
