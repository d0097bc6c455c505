use crate::error::{Error, Result};

/// What to do with observations that land exactly on the interval ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryPolicy {
    #[default]
    Reject,
    /// Move them inside by `1/(2n)`.
    Nudge,
}

/// Observations rescaled from `[lo, hi]` into the open unit interval.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    values: Vec<f64>,
    interval: (f64, f64),
    nudged: Vec<usize>,
}

impl Dataset {
    /// Data already on `(0, 1)`.
    pub fn from_unit(name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        Self::from_raw(name, &values, (0.0, 1.0), BoundaryPolicy::Reject)
    }

    /// Rescale `raw` by `(v − lo)/(hi − lo)`.
    ///
    /// Row numbers in errors are 0-based positions in `raw`.
    pub fn from_raw(
        name: impl Into<String>,
        raw: &[f64],
        interval: (f64, f64),
        policy: BoundaryPolicy,
    ) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParams(format!(
                "interval must satisfy lo < hi, got ({lo}, {hi})"
            )));
        }
        if raw.is_empty() {
            return Err(Error::EmptyData);
        }
        let width = hi - lo;
        let mut values = Vec::with_capacity(raw.len());
        let mut boundary = Vec::new();
        for (row, &v) in raw.iter().enumerate() {
            if !v.is_finite() || v < lo || v > hi {
                return Err(Error::Domain(format!(
                    "row {row}: value {v} outside interval [{lo}, {hi}]"
                )));
            }
            let x = (v - lo) / width;
            if x <= 0.0 || x >= 1.0 {
                boundary.push(row);
            }
            values.push(x);
        }
        if !boundary.is_empty() {
            match policy {
                BoundaryPolicy::Reject => {
                    return Err(Error::BoundaryValue {
                        count: boundary.len(),
                        rows: boundary,
                    })
                }
                BoundaryPolicy::Nudge => {
                    let eps = 0.5 / raw.len() as f64;
                    for &row in &boundary {
                        values[row] = values[row].clamp(eps, 1.0 - eps);
                    }
                    log::warn!(
                        "moved {} boundary observation(s) inside by {eps:e}",
                        boundary.len()
                    );
                }
            }
        }
        Ok(Self {
            name: name.into(),
            values,
            interval,
            nudged: boundary,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// Rows moved off the boundary.
    pub fn nudged_rows(&self) -> &[usize] {
        &self.nudged
    }

    /// `n · ln(hi − lo)`: add to a unit-scale `−ℓ` to get the raw-scale `−ℓ`.
    pub fn log_jacobian(&self) -> f64 {
        self.values.len() as f64 * (self.interval.1 - self.interval.0).ln()
    }

    /// The data with labels swapped, `x → 1 − x`.
    pub fn flipped(&self) -> Self {
        Self {
            name: format!("{} (flipped)", self.name),
            values: self.values.iter().map(|x| 1.0 - x).collect(),
            interval: self.interval,
            nudged: self.nudged.clone(),
        }
    }
}
