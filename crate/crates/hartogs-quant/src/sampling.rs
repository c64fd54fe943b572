//! Deterministic seeded samplers for Hartogs-domain points and pairs.
//!
//! Property suites need interior points of `M_Omega(mu)` for arbitrary bases,
//! including the high-dimensional type III domains where naive box rejection
//! against the base has acceptance rates below 1e-6. Points are therefore
//! drawn along rays: a direction is sampled in the coordinate box, the exact
//! boundary radius along that ray is computed, and the point is placed at a
//! class-dependent fraction of it; the fiber coordinate is drawn uniformly in
//! a scaled disk of radius `N(z, conj z)^{mu/2}`.
//!
//! Every point consumes a fixed number of draws from a counter-seeded
//! [`ChaCha12Rng`], so sampling is reproducible bit-for-bit for a fixed seed.
//! Block-indexed substreams ([`rng_for_block`]) let Monte-Carlo consumers
//! shard work across threads while keeping results byte-identical for any
//! shard count.

use crate::domain::{self, BasePoint};
use crate::error::HqError;
use crate::hartogs::{self, CartanHartogsParams, HartogsPoint, PointPair};
use crate::{Result, C64};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Samples per RNG block; Monte-Carlo estimators sum each block separately
/// and reduce in block order, which makes the result independent of how
/// blocks are distributed over threads.
pub const BLOCK_SAMPLES: usize = 4096;

/// RNG for one block of work: ChaCha12 keyed on the seed, with the block
/// index selecting an independent counter stream.
pub fn rng_for_block(seed: u64, block: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Radial placement class for sampled points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// Generic interior points: up to 90% of the boundary radius in the base
    /// and of the fiber radius.
    Interior,
    /// Near-boundary points: base radius in [90%, 99.9%], fiber magnitude up
    /// to 99.9% of the fiber radius.
    Stress,
    /// Points with a guaranteed margin for finite-difference stencils: at
    /// most 55% of the base radius, fiber defect `1 - |w|^2/N^mu >= 0.51`.
    Margin,
}

impl PointClass {
    /// (base radial fraction from the unit draw, fiber magnitude cap).
    fn placement(self, u: f64) -> (f64, f64) {
        match self {
            PointClass::Interior => (0.90 * u.sqrt(), 0.90),
            PointClass::Stress => (0.90 + 0.099 * u, 0.999),
            PointClass::Margin => (0.55 * u.sqrt(), 0.70),
        }
    }
}

/// Draws one interior point; consumes exactly `2d + 3` uniform draws.
fn draw_point(
    params: &CartanHartogsParams,
    rng: &mut ChaCha12Rng,
    class: PointClass,
) -> Result<Option<HartogsPoint>> {
    let d = params.base.d;
    let dir = BasePoint::new(
        (0..d)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    );
    let u_radial: f64 = rng.gen();
    let u_fiber: f64 = rng.gen();
    let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);

    let radius = domain::boundary_radius(&params.base, &dir)?;
    if !radius.is_finite() {
        // Zero direction (measure zero): skip this candidate.
        return Ok(None);
    }
    let (frac, wcap) = class.placement(u_radial);
    let z = BasePoint::new(dir.coords.iter().map(|c| c * (frac * radius)).collect());
    let nmu = hartogs::fiber_radius_sq(params, &z)?;
    // sqrt(u) makes |w| area-uniform in the scaled fiber disk.
    let w = C64::from_polar(wcap * u_fiber.sqrt() * nmu.sqrt(), theta);
    Ok(Some(HartogsPoint::new(z, w)))
}

/// Samples `n` interior points of the Hartogs domain, deterministically for a
/// fixed seed.
pub fn sample_points(
    params: &CartanHartogsParams,
    class: PointClass,
    n: usize,
    seed: u64,
) -> Result<Vec<HartogsPoint>> {
    let mut rng = rng_for_block(seed, 0);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    let budget = 1000 + 2 * n;
    while out.len() < n {
        attempts += 1;
        if attempts > budget {
            return Err(HqError::Sampling(format!(
                "point sampler exceeded its candidate budget ({budget}) for {}",
                params.base.dtype
            )));
        }
        if let Some(p) = draw_point(params, &mut rng, class)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Samples `n` pairs of interior points.
///
/// For non-integer `mu` the pair is kept only if the sesquianalytic data stays
/// on the analytic branch through the diagonal: `Re N(z_x, conj z_y) > 0` and
/// `Re (N^mu - w_x conj w_y) > 0`. A rejection rate above 99.9% reports a
/// sampling error.
pub fn sample_pairs(
    params: &CartanHartogsParams,
    class: PointClass,
    n: usize,
    seed: u64,
) -> Result<Vec<PointPair>> {
    let mut rng = rng_for_block(seed, 0);
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    let budget = (1000 + 2 * n) * 1000;
    let mut rejected = 0usize;
    while out.len() < n {
        attempts += 1;
        if attempts > budget || (attempts > 1000 && rejected * 1000 > attempts * 999) {
            return Err(HqError::Sampling(format!(
                "pair sampler rejection rate exceeded 99.9% for {} (mu = {})",
                params.base.dtype, params.mu
            )));
        }
        let x = match draw_point(params, &mut rng, class)? {
            Some(p) => p,
            None => {
                rejected += 1;
                continue;
            }
        };
        let y = match draw_point(params, &mut rng, class)? {
            Some(p) => p,
            None => {
                rejected += 1;
                continue;
            }
        };
        if !pair_branch_safe(params, &x, &y)? {
            rejected += 1;
            continue;
        }
        out.push(PointPair { x, y });
    }
    Ok(out)
}

/// Whether a pair stays in the branch-safe neighborhood of the diagonal.
/// Always true for integer `mu` (the powers are polynomial).
pub fn pair_branch_safe(
    params: &CartanHartogsParams,
    x: &HartogsPoint,
    y: &HartogsPoint,
) -> Result<bool> {
    let n = domain::generic_norm(&params.base, &x.z, &y.z)?;
    if !params.branch_safe(n) {
        return Ok(false);
    }
    if params.mu.fract() != 0.0 {
        let f = params.norm_power(n) - x.w * y.w.conj();
        return Ok(f.re > 0.0);
    }
    Ok(true)
}
