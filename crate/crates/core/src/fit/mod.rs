//! Maximum-likelihood fitting over the model ladder
//! beta → Q-beta/SQ-beta → C-beta/SC-beta, likelihood-ratio tests, and the
//! mean/modal regression reparameterisations.

mod data;
mod lrt;
mod mle;
pub mod optim;
mod regression;

pub use data::{BoundaryPolicy, Dataset};
pub use lrt::{lr_test, LrTest};
pub use mle::{fit_ladder, fit_mle, neg_loglik, FitConfig, FitResult, StageRecord};
pub use regression::{
    alpha_from_mean, alpha_from_mode, MeanRegressionParams, ModalRegressionParams,
};
