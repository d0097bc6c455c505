use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::fit::mle::FitResult;

/// Negative statistics down to this size are optimiser noise and read as 0.
const NEGATIVE_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LrTest {
    pub statistic: f64,
    pub df: u32,
    pub p_value: f64,
}

/// Likelihood-ratio test of `nested` against the larger `parent` model,
/// referred to `χ²` with `df` degrees of freedom.
pub fn lr_test(nested: &FitResult, parent: &FitResult, df: u32) -> Result<LrTest> {
    if df == 0 {
        return Err(Error::InvalidParams(
            "likelihood-ratio test needs df >= 1".into(),
        ));
    }
    let raw = 2.0 * (nested.neg_loglik - parent.neg_loglik);
    if raw.is_nan() {
        return Err(Error::InvalidParams(
            "non-finite log-likelihood in LR test".into(),
        ));
    }
    if raw < -NEGATIVE_SLACK {
        return Err(Error::NegativeStatistic(raw));
    }
    let statistic = raw.max(0.0);
    let chi = ChiSquared::new(df as f64).expect("df >= 1");
    Ok(LrTest {
        statistic,
        df,
        p_value: chi.sf(statistic),
    })
}
