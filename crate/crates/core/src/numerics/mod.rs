//! Shared numerical kernels.

pub mod quadrature;
pub mod root;
pub mod special;

pub use quadrature::{quadrature, quadrature_interval, QuadratureEstimate};
pub use root::{newton_invert, solve_monotone_poly, MonotoneCurve, QuadInversion, RootSolveConfig};
pub use special::{inc_beta_step_down, ln_beta, ln_gamma, reg_inc_beta};
