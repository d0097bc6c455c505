use std::collections::BTreeMap;

use crate::dist::{AnyDist, Family, ModelParams, UnitDistribution};
use crate::error::{Error, Result};
use crate::fit::data::Dataset;
use crate::fit::optim::{nelder_mead_restarted, NelderMeadConfig};
use crate::params::{BetaCore, ShapeParams, DELTA_QUADRATIC};

/// `−ℓ = −Σ ln f(xᵢ)`; `+∞` if any observation has zero density.
pub fn neg_loglik(family: Family, params: &ModelParams, data: &Dataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let dist = AnyDist::new(family, params)?;
    neg_loglik_dist(&dist, data.values())
}

pub(crate) fn neg_loglik_dist<D: UnitDistribution + ?Sized>(dist: &D, xs: &[f64]) -> Result<f64> {
    // Neumaier summation keeps the total independent of evaluation order
    // to within a few ulps.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &x in xs {
        let term = dist.ln_pdf(x)?;
        if term == f64::NEG_INFINITY || term.is_nan() {
            return Ok(f64::INFINITY);
        }
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    Ok(-(sum + comp))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitConfig {
    pub optimizer: NelderMeadConfig,
    /// `γ, δ` are kept in `[margin, 1 − margin]`.
    pub margin: f64,
    /// Allowed increase of `−ℓ` over the nested parent before the
    /// coordinate-wise fallback is triggered.
    pub ladder_slack: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            optimizer: NelderMeadConfig::default(),
            margin: 1e-6,
            ladder_slack: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageRecord {
    pub stage: String,
    pub neg_loglik: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub family: Family,
    pub params: ModelParams,
    pub neg_loglik: f64,
    pub converged: bool,
    /// Objective evaluations spent on this family's own stages.
    pub iterations: usize,
    pub stage_trace: Vec<StageRecord>,
}

impl FitResult {
    pub fn core(&self) -> Result<BetaCore> {
        BetaCore::new(self.params.alpha, self.params.beta)
    }

    pub fn shape(&self) -> Result<ShapeParams> {
        self.params.shape()
    }

    /// `min J` over `[0, 1]` for the fitted transform; 1 for beta.
    ///
    /// The likelihood of the Jacobian families is unbounded as an interior
    /// zero of `J` approaches an observation, so values near 0 flag a
    /// degenerate optimum.
    pub fn min_jacobian(&self) -> f64 {
        if !self.family.uses_gamma() {
            return 1.0;
        }
        let mut shape = match self.params.shape() {
            Ok(s) => s,
            Err(_) => return f64::NAN,
        };
        if !self.family.uses_delta() {
            shape.delta = DELTA_QUADRATIC;
        }
        shape.to_coeffs().min_slope()
    }
}

/// Which of `(ln α, ln β, logit γ, logit δ)` an optimiser stage moves.
type FreeMask = [bool; 4];

const ALL_FREE: FreeMask = [true, true, true, true];
const SHAPE_FIXED: FreeMask = [true, true, false, false];
const DELTA_FIXED: FreeMask = [true, true, true, false];
const ONLY_DELTA: FreeMask = [false, false, false, true];

struct Encoding {
    margin: f64,
}

impl Encoding {
    fn squash(&self, v: f64) -> f64 {
        let m = self.margin;
        let t = ((v - m) / (1.0 - 2.0 * m)).clamp(1e-12, 1.0 - 1e-12);
        (t / (1.0 - t)).ln()
    }

    fn unsquash(&self, u: f64) -> f64 {
        let m = self.margin;
        m + (1.0 - 2.0 * m) / (1.0 + (-u).exp())
    }

    fn encode(&self, p: &ModelParams) -> [f64; 4] {
        [
            p.alpha.ln(),
            p.beta.ln(),
            self.squash(p.gamma),
            self.squash(p.delta),
        ]
    }

    fn decode(&self, u: &[f64; 4]) -> ModelParams {
        ModelParams::new(
            u[0].exp(),
            u[1].exp(),
            self.unsquash(u[2]),
            self.unsquash(u[3]),
        )
    }
}

struct StageOutcome {
    params: ModelParams,
    neg_loglik: f64,
    evals: usize,
    converged: bool,
}

fn run_stage(
    family: Family,
    data: &Dataset,
    start: &ModelParams,
    free: FreeMask,
    cfg: &FitConfig,
) -> StageOutcome {
    const STEPS: [f64; 4] = [0.2, 0.2, 0.5, 0.5];
    let enc = Encoding { margin: cfg.margin };
    let base = enc.encode(start);
    let idx: Vec<usize> = (0..4).filter(|&i| free[i]).collect();
    let x0: Vec<f64> = idx.iter().map(|&i| base[i]).collect();
    let steps: Vec<f64> = idx.iter().map(|&i| STEPS[i]).collect();
    let assemble = |x: &[f64]| {
        let mut u = base;
        for (&i, &v) in idx.iter().zip(x) {
            u[i] = v;
        }
        enc.decode(&u)
    };
    let objective = |x: &[f64]| {
        let p = assemble(x);
        neg_loglik(family, &p, data).unwrap_or(f64::INFINITY)
    };
    let r = nelder_mead_restarted(objective, &x0, &steps, &cfg.optimizer);
    StageOutcome {
        params: assemble(&r.x),
        neg_loglik: r.f,
        evals: r.evals,
        converged: r.converged && r.f.is_finite(),
    }
}

fn moment_start(data: &Dataset) -> ModelParams {
    let xs = data.values();
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    let common = m * (1.0 - m) / v - 1.0;
    if v > 0.0 && common > 0.0 && common.is_finite() {
        ModelParams::beta(m * common, (1.0 - m) * common)
    } else {
        ModelParams::beta(1.0, 1.0)
    }
}

/// Fitted models keyed by family, filled in ladder order.
struct Ladder<'a> {
    data: &'a Dataset,
    cfg: FitConfig,
    fits: BTreeMap<Family, FitResult>,
}

impl Ladder<'_> {
    fn get(&mut self, family: Family) -> Result<FitResult> {
        if let Some(f) = self.fits.get(&family) {
            return Ok(f.clone());
        }
        let fit = match family {
            Family::Beta => self.fit_beta(),
            Family::QBeta => self.fit_child(Family::QBeta, Family::Beta)?,
            Family::SQBeta => self.fit_child(Family::SQBeta, Family::Beta)?,
            Family::CBeta => self.fit_child(Family::CBeta, Family::QBeta)?,
            Family::SCBeta => self.fit_child(Family::SCBeta, Family::SQBeta)?,
            Family::CBeta11 | Family::GenQuad => {
                return Err(Error::InvalidParams(format!(
                    "family '{family}' is not on the fitting ladder"
                )))
            }
        };
        self.fits.insert(family, fit.clone());
        Ok(fit)
    }

    fn fit_beta(&mut self) -> FitResult {
        let start = moment_start(self.data);
        let s = run_stage(Family::Beta, self.data, &start, SHAPE_FIXED, &self.cfg);
        FitResult {
            family: Family::Beta,
            params: s.params,
            neg_loglik: s.neg_loglik,
            converged: s.converged,
            iterations: s.evals,
            stage_trace: vec![StageRecord {
                stage: "beta".into(),
                neg_loglik: s.neg_loglik,
            }],
        }
    }

    fn fit_child(&mut self, family: Family, parent: Family) -> Result<FitResult> {
        let parent_fit = self.get(parent)?;
        let mut trace = parent_fit.stage_trace.clone();
        let mut start = parent_fit.params;
        let free = if family.uses_delta() {
            ALL_FREE
        } else {
            DELTA_FIXED
        };
        if parent == Family::Beta {
            start.gamma = 0.5;
        }
        start.delta = DELTA_QUADRATIC;

        // The parent optimum embedded in this family is a feasible point.
        let embedded = neg_loglik(family, &start, self.data)?;
        let mut best = (start, embedded);
        let mut evals = 0usize;

        let joint = run_stage(family, self.data, &start, free, &self.cfg);
        evals += joint.evals;
        trace.push(StageRecord {
            stage: format!("{family}: joint"),
            neg_loglik: joint.neg_loglik,
        });
        let mut converged = joint.converged;
        if joint.neg_loglik < best.1 {
            best = (joint.params, joint.neg_loglik);
        }

        let regressed = joint.neg_loglik > parent_fit.neg_loglik + self.cfg.ladder_slack;
        if !joint.converged || regressed {
            log::info!(
                "{family}: joint fit needs fallback (converged={}, regressed={regressed})",
                joint.converged
            );
            let g = run_stage(family, self.data, &start, DELTA_FIXED, &self.cfg);
            trace.push(StageRecord {
                stage: format!("{family}: float gamma"),
                neg_loglik: g.neg_loglik,
            });
            evals += g.evals;
            let mut point = g.params;
            if family.uses_delta() {
                let d = run_stage(family, self.data, &point, ONLY_DELTA, &self.cfg);
                trace.push(StageRecord {
                    stage: format!("{family}: float delta"),
                    neg_loglik: d.neg_loglik,
                });
                evals += d.evals;
                point = d.params;
            }
            let again = run_stage(family, self.data, &point, free, &self.cfg);
            trace.push(StageRecord {
                stage: format!("{family}: joint (after fallback)"),
                neg_loglik: again.neg_loglik,
            });
            evals += again.evals;
            converged = again.converged;
            for (p, f) in [(g.params, g.neg_loglik), (again.params, again.neg_loglik)] {
                if f < best.1 {
                    best = (p, f);
                }
            }
        }

        let mut params = best.0;
        if !family.uses_delta() {
            params.delta = DELTA_QUADRATIC;
        }
        Ok(FitResult {
            family,
            params,
            neg_loglik: best.1,
            converged: converged && best.1.is_finite(),
            iterations: evals,
            stage_trace: trace,
        })
    }
}

/// Fit every family in `families`, plus whatever lower rungs of the ladder
/// they start from. Only the requested families are returned.
pub fn fit_ladder(
    data: &Dataset,
    families: &[Family],
    cfg: &FitConfig,
) -> Result<BTreeMap<Family, FitResult>> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let mut ladder = Ladder {
        data,
        cfg: *cfg,
        fits: BTreeMap::new(),
    };
    let mut out = BTreeMap::new();
    let mut ordered = families.to_vec();
    ordered.sort();
    ordered.dedup();
    for f in ordered {
        out.insert(f, ladder.get(f)?);
    }
    Ok(out)
}

/// Maximum-likelihood fit of one family by the staged ladder.
pub fn fit_mle(family: Family, data: &Dataset, cfg: &FitConfig) -> Result<FitResult> {
    let mut fits = fit_ladder(data, &[family], cfg)?;
    Ok(fits.remove(&family).expect("requested family is fitted"))
}
