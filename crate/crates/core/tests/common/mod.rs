#![allow(dead_code)]

use cubic_beta::dist::{AnyDist, Family, ModelParams, UnitDistribution};
use cubic_beta::numerics::quadrature;
use cubic_beta::sampling::RandomSource;
use rand::Rng;

/// 1% critical value of the one-sample Kolmogorov–Smirnov statistic, scaled
/// by `√n`.
pub const KS_CRIT_1PCT: f64 = 1.628;

pub fn rng(seed: u64) -> RandomSource {
    RandomSource::seeded(seed)
}

pub fn uniform_in(rng: &mut RandomSource, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..hi)
}

/// Random parameters for `family` with `α, β ∈ [ab.0, ab.1)` and
/// `γ, δ ∈ [gd.0, gd.1)`.
pub fn random_params(
    rng: &mut RandomSource,
    family: Family,
    ab: (f64, f64),
    gd: (f64, f64),
) -> ModelParams {
    let mut p = ModelParams::new(
        uniform_in(rng, ab.0, ab.1),
        uniform_in(rng, ab.0, ab.1),
        uniform_in(rng, gd.0, gd.1),
        uniform_in(rng, gd.0, gd.1),
    );
    if !family.uses_gamma() {
        p.gamma = 0.5;
    }
    if !family.uses_delta() {
        p.delta = 1.0 / 3.0;
    }
    p
}

/// `E(Xⁿ)` by adaptive quadrature of the density.
pub fn quad_moment(d: &AnyDist, n: i32) -> f64 {
    quadrature(|x| x.powi(n) * d.pdf(x).unwrap(), 1e-12).unwrap()
}

/// `sup |F_n − F|` for sorted `xs`.
pub fn ks_statistic(sorted: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, v)
}

/// Relative-or-absolute closeness: `|a − b| ≤ tol · max(1, |b|)`.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * b.abs().max(1.0)
}

/// Central fourth moment from raw moments `m1..m4`.
pub fn central_fourth(d: &AnyDist) -> f64 {
    let m: Vec<f64> = (1..=4).map(|k| d.raw_moment(k)).collect();
    m[3] - 4.0 * m[0] * m[2] + 6.0 * m[0] * m[0] * m[1] - 3.0 * m[0].powi(4)
}
