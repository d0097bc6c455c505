#![allow(clippy::excessive_precision)]

//! Adaptive Gauss–Kronrod quadrature, used as an independent oracle for
//! normalisation, moments and distribution functions.

use crate::error::{Error, Result};

// 15-point Kronrod nodes (non-negative half) and weights; the embedded
// 7-point Gauss rule uses the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const DEFAULT_MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Segment {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrate `f` over `[lo, hi]` by globally adaptive bisection of the
/// interval with the largest error estimate.
pub fn quadrature_interval<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<QuadratureEstimate> {
    let mut segments = vec![gauss_kronrod(&f, lo, hi)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= abs_tol {
            return Ok(QuadratureEstimate {
                value,
                error,
                intervals: segments.len(),
            });
        }
        if segments.len() >= max_intervals || !error.is_finite() {
            return Err(Error::ToleranceNotMet {
                tolerance: abs_tol,
                estimate: error,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("segments is never empty");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.lo + s.hi);
        if mid <= s.lo || mid >= s.hi {
            // cannot split further in double precision
            return Err(Error::ToleranceNotMet {
                tolerance: abs_tol,
                estimate: error,
            });
        }
        segments.push(gauss_kronrod(&f, s.lo, mid));
        segments.push(gauss_kronrod(&f, mid, s.hi));
    }
}

/// Integrate `f` over `[0, 1]`.
///
/// The substitution `x = u²(3 − 2u)` flattens integrable endpoint
/// singularities of the form `x^{α−1}` and `(1 − x)^{β−1}`. Points that round
/// onto an endpoint contribute nothing, so the integrand is never evaluated
/// at exactly 0 or 1.
pub fn quadrature<F: Fn(f64) -> f64>(f: F, abs_tol: f64) -> Result<f64> {
    let g = |u: f64| {
        let x = u * u * (3.0 - 2.0 * u);
        if x <= 0.0 || x >= 1.0 {
            return 0.0;
        }
        f(x) * 6.0 * u * (1.0 - u)
    };
    quadrature_interval(g, 0.0, 1.0, abs_tol, DEFAULT_MAX_INTERVALS).map(|e| e.value)
}
