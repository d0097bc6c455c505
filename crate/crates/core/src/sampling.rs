//! Random variate generation.
//!
//! Q-beta, C-beta and C-beta(1,1) variates are transforms of beta (or
//! uniform) variates. SQ/SC-beta variates use rejection from the parent
//! beta with acceptance probability `J(P)/M_max`. The general quadratic
//! distribution can be sampled either by inversion or by rejection from the
//! uniform.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Beta as BetaSampler, Distribution};

use crate::dist::{
    AnyDist, BetaDist, CBeta11Dist, CBetaDist, GenQuadDist, QBetaDist, SCBetaDist, SQBetaDist,
    UnitDistribution,
};
use crate::params::{BetaCore, CubicCoeffs};

/// Seedable stream of uniform variates.
#[derive(Debug, Clone)]
pub struct RandomSource(ChaCha20Rng);

impl RandomSource {
    pub fn seeded(seed: u64) -> Self {
        Self(ChaCha20Rng::seed_from_u64(seed))
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.0.random()
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}

fn parent_sampler(core: &BetaCore) -> BetaSampler<f64> {
    BetaSampler::new(core.alpha(), core.beta()).expect("BetaCore holds positive finite shapes")
}

/// One `Beta(α, β)` variate.
pub fn sample_beta<R: Rng + ?Sized>(core: &BetaCore, rng: &mut R) -> f64 {
    parent_sampler(core).sample(rng)
}

/// Families sampled as `X = aP + bP² + cP³`.
pub trait TransformFamily {
    fn transform_coeffs(&self) -> CubicCoeffs;
    /// Parent beta parameters; `None` for a uniform parent.
    fn parent(&self) -> Option<BetaCore>;
}

impl TransformFamily for QBetaDist {
    fn transform_coeffs(&self) -> CubicCoeffs {
        self.coeffs()
    }
    fn parent(&self) -> Option<BetaCore> {
        Some(*self.core())
    }
}

impl TransformFamily for CBetaDist {
    fn transform_coeffs(&self) -> CubicCoeffs {
        self.coeffs()
    }
    fn parent(&self) -> Option<BetaCore> {
        Some(*self.core())
    }
}

impl TransformFamily for CBeta11Dist {
    fn transform_coeffs(&self) -> CubicCoeffs {
        self.coeffs()
    }
    fn parent(&self) -> Option<BetaCore> {
        None
    }
}

/// Transform-method sampler with the parent sampler set up once.
#[derive(Debug, Clone)]
pub struct TransformSampler {
    coeffs: CubicCoeffs,
    parent: Option<BetaSampler<f64>>,
}

impl TransformSampler {
    pub fn new<D: TransformFamily + ?Sized>(d: &D) -> Self {
        Self {
            coeffs: d.transform_coeffs(),
            parent: d.parent().as_ref().map(parent_sampler),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let p = match &self.parent {
            Some(beta) => beta.sample(rng),
            None => rng.random::<f64>(),
        };
        self.coeffs.value(p).clamp(0.0, 1.0)
    }
}

pub fn sample_transform<D: TransformFamily + ?Sized, R: Rng + ?Sized>(d: &D, rng: &mut R) -> f64 {
    TransformSampler::new(d).sample(rng)
}

/// Counters for a rejection sampler.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RejectionStats {
    pub proposed: u64,
    pub accepted: u64,
}

impl RejectionStats {
    /// Fraction of proposals accepted; 1 before any proposal.
    pub fn efficiency(&self) -> f64 {
        if self.proposed == 0 {
            1.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }
}

/// Rejection sampler for SQ/SC-beta.
///
/// Proposes `P ~ Beta(α, β)` and accepts with probability
/// `M(P)/M_max`, `M(p) = a + 2bp + 3cp²`; the expected efficiency is
/// `C⁻¹/M_max`.
#[derive(Debug, Clone)]
pub struct RejectionSampler {
    coeffs: CubicCoeffs,
    parent: BetaSampler<f64>,
    m_max: f64,
    inv_norm: f64,
    stats: RejectionStats,
}

impl RejectionSampler {
    pub fn new(d: &SCBetaDist) -> Self {
        let coeffs = d.coeffs();
        Self {
            coeffs,
            parent: parent_sampler(d.core()),
            m_max: coeffs.max_slope(),
            inv_norm: 1.0 / d.norm_c(),
            stats: RejectionStats::default(),
        }
    }

    pub fn for_sqbeta(d: &SQBetaDist) -> Self {
        Self::new(d.as_scbeta())
    }

    /// `M_max = max(a, a + 2b + 3c, M(−b/3c) if −b/3c ∈ (0, 1))`.
    pub fn m_max(&self) -> f64 {
        self.m_max
    }

    pub fn expected_efficiency(&self) -> f64 {
        self.inv_norm / self.m_max
    }

    pub fn stats(&self) -> RejectionStats {
        self.stats
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        loop {
            let p = self.parent.sample(rng);
            self.stats.proposed += 1;
            let m = self.coeffs.slope(p);
            debug_assert!(
                m <= self.m_max * (1.0 + 1e-12),
                "M(P) = {m} > M_max = {}",
                self.m_max
            );
            if rng.random::<f64>() * self.m_max < m {
                self.stats.accepted += 1;
                return self.coeffs.value(p).clamp(0.0, 1.0);
            }
        }
    }
}

/// One SC-beta variate, accumulating proposal counts into `stats`.
pub fn sample_rejection<R: Rng + ?Sized>(
    d: &SCBetaDist,
    rng: &mut R,
    stats: &mut RejectionStats,
) -> f64 {
    let mut sampler = RejectionSampler::new(d);
    let x = sampler.sample(rng);
    stats.proposed += sampler.stats.proposed;
    stats.accepted += sampler.stats.accepted;
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenQuadMethod {
    /// Solve `aP + bP² + cP³ = U`.
    Inversion,
    /// Accept `U` with probability `f(U)/f_max`.
    Rejection,
}

pub fn sample_genquad<R: Rng + ?Sized>(d: &GenQuadDist, rng: &mut R, method: GenQuadMethod) -> f64 {
    match method {
        GenQuadMethod::Inversion => {
            let u = rng.random::<f64>();
            d.quantile(u).expect("uniform variate lies in [0, 1)")
        }
        GenQuadMethod::Rejection => {
            let coeffs = d.coeffs();
            let f_max = d.max_density();
            loop {
                let u = rng.random::<f64>();
                if rng.random::<f64>() * f_max < coeffs.slope(u) {
                    return u;
                }
            }
        }
    }
}

/// Sampler for any family, chosen the standard way for each.
#[derive(Debug, Clone)]
pub enum Sampler {
    Beta(BetaSampler<f64>),
    Transform(TransformSampler),
    Rejection(RejectionSampler),
    GenQuad(GenQuadDist),
}

impl Sampler {
    pub fn new(d: &AnyDist) -> Self {
        match d {
            AnyDist::Beta(b) => Sampler::Beta(parent_sampler(b.core())),
            AnyDist::QBeta(q) => Sampler::Transform(TransformSampler::new(q)),
            AnyDist::CBeta(c) => Sampler::Transform(TransformSampler::new(c)),
            AnyDist::CBeta11(c) => Sampler::Transform(TransformSampler::new(c)),
            AnyDist::SQBeta(s) => Sampler::Rejection(RejectionSampler::for_sqbeta(s)),
            AnyDist::SCBeta(s) => Sampler::Rejection(RejectionSampler::new(s)),
            AnyDist::GenQuad(g) => Sampler::GenQuad(*g),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> f64 {
        match self {
            Sampler::Beta(b) => b.sample(rng),
            Sampler::Transform(t) => t.sample(rng),
            Sampler::Rejection(r) => r.sample(rng),
            Sampler::GenQuad(g) => sample_genquad(g, rng, GenQuadMethod::Inversion),
        }
    }

    pub fn sample_n<R: Rng + ?Sized>(&mut self, rng: &mut R, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.sample(rng)).collect()
    }

    pub fn rejection_stats(&self) -> Option<RejectionStats> {
        match self {
            Sampler::Rejection(r) => Some(r.stats()),
            _ => None,
        }
    }

    /// Expected acceptance rate for rejection samplers.
    pub fn expected_efficiency(&self) -> Option<f64> {
        match self {
            Sampler::Rejection(r) => Some(r.expected_efficiency()),
            _ => None,
        }
    }
}

/// Convenience: `n` beta variates.
pub fn sample_beta_n<R: Rng + ?Sized>(d: &BetaDist, rng: &mut R, n: usize) -> Vec<f64> {
    let s = parent_sampler(d.core());
    (0..n).map(|_| s.sample(rng)).collect()
}
