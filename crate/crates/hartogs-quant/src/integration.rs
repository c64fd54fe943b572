//! Weighted norm integrals over Cartan-Hartogs domains: Monte Carlo
//! estimation against a closed form on ball bases.
//!
//! The normalization integral of the weighted Bergman theory at weight
//! `alpha` is
//!
//! ```text
//! I(alpha) = integral over the Hartogs domain of (N^mu - |w|^2)^{alpha - (d+2)} dV,
//! ```
//!
//! which converges exactly when `alpha > d + 1` (the fiber integral produces
//! a simple pole at `alpha = d + 1`). Over the unit ball `I:1,d` both factors
//! integrate in closed form:
//!
//! ```text
//! I(alpha) = pi / (alpha - d - 1) * pi^d * Gamma(s + 1) / Gamma(s + d + 1),
//! s = mu (alpha - d - 1),
//! ```
//!
//! obtained by first integrating the fiber disk (`pi R^{2c+2} / (c+1)` with
//! `R^2 = N^mu`, `c = alpha - d - 2`) and then `N^s` over the ball.
//!
//! The Monte Carlo estimator samples the ambient box (every coordinate of a
//! bounded symmetric domain in its Harish-Chandra realization has modulus
//! below one, as does the fiber coordinate), rejects through the membership
//! test and averages the integrand times the box volume. Samples are drawn
//! in fixed blocks with independent, block-indexed generator streams and the
//! per-block partial sums are reduced in block order, so the estimate is
//! byte-identical for any worker-thread count.

use crate::error::HqError;
use crate::hartogs::{self, CartanHartogsParams, HartogsPoint};
use crate::quantization::rising_factorial;
use crate::report::{CheckReport, JsonValue};
use crate::sampling::{rng_for_block, BLOCK_SAMPLES};
use crate::{domain::BasePoint, tol, Result, C64};
use rand::Rng;
use rayon::prelude::*;

/// Environment variable capping the Monte Carlo worker-thread count.
pub const THREADS_ENV: &str = "HARTOGS_QUANT_THREADS";

/// A Monte Carlo integral estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate {
    /// Estimated value of the integral.
    pub value: f64,
    /// Standard error of the estimator (sample standard deviation / sqrt n).
    pub stderr: f64,
    /// Number of box samples drawn (accepted and rejected).
    pub n_samples: u64,
    /// Base seed of the generator streams.
    pub seed: u64,
    /// Fraction of box samples accepted by the membership test.
    pub acceptance: f64,
}

fn check_convergent(params: &CartanHartogsParams, alpha: f64) -> Result<()> {
    let pole = params.base.d as f64 + 1.0;
    if !alpha.is_finite() || alpha <= pole {
        return Err(HqError::Divergence(format!(
            "weighted norm integral diverges for alpha = {alpha} <= d + 1 = {pole}"
        )));
    }
    Ok(())
}

/// Closed-form weighted norm integral over a ball base `I:1,d`.
pub fn weighted_norm_integral_closed(params: &CartanHartogsParams, alpha: f64) -> Result<f64> {
    let d = match params.base.dtype {
        crate::domain::DomainType::TypeI { m: 1, n } => n,
        other => {
            return Err(HqError::UnsupportedBase(format!(
                "closed-form weighted norm integrals are available only over the unit ball \
                 I:1,d, got {other}"
            )))
        }
    };
    check_convergent(params, alpha)?;
    let s = params.mu * (alpha - d as f64 - 1.0);
    // Gamma(s+1)/Gamma(s+d+1) = 1 / ((s+1) (s+2) ... (s+d)).
    let gamma_ratio = 1.0 / rising_factorial(s + 1.0, d as u32);
    Ok(std::f64::consts::PI / (alpha - d as f64 - 1.0)
        * std::f64::consts::PI.powi(d as i32)
        * gamma_ratio)
}

struct BlockStats {
    sum: f64,
    sum_sq: f64,
    accepted: u64,
    drawn: u64,
}

/// Integrand sum over one sample block with its own generator stream.
fn block_stats(
    params: &CartanHartogsParams,
    alpha: f64,
    seed: u64,
    block: u64,
    len: usize,
) -> BlockStats {
    let d = params.base.d;
    let exponent = alpha - (d as f64 + 2.0);
    let mut rng = rng_for_block(seed, block);
    let mut stats = BlockStats {
        sum: 0.0,
        sum_sq: 0.0,
        accepted: 0,
        drawn: len as u64,
    };
    for _ in 0..len {
        // One ambient box sample: d base coordinates and the fiber coordinate,
        // each uniform in the square [-1, 1]^2 of the complex plane.
        let mut coords = Vec::with_capacity(d);
        for _ in 0..d {
            let re = rng.gen_range(-1.0..1.0);
            let im = rng.gen_range(-1.0..1.0);
            coords.push(C64::new(re, im));
        }
        let w = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let p = HartogsPoint::new(BasePoint::new(coords), w);
        let inside = hartogs::hartogs_contains(params, &p).unwrap_or(false);
        if !inside {
            continue;
        }
        // Membership guarantees F > 0 here.
        let f = match hartogs::potential_argument(params, &p) {
            Ok(f) if f > 0.0 => f,
            _ => continue,
        };
        let v = f.powf(exponent);
        stats.sum += v;
        stats.sum_sq += v * v;
        stats.accepted += 1;
    }
    stats
}

/// Worker pool honoring the `HARTOGS_QUANT_THREADS` cap (global pool if the
/// variable is unset or unparsable).
fn run_pooled<T: Send>(job: impl FnOnce() -> T + Send) -> T {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    match cap {
        Some(n) if n >= 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(job),
            Err(_) => job(),
        },
        _ => job(),
    }
}

/// Monte Carlo estimate of the weighted norm integral by ambient box
/// rejection.
///
/// Errors with a divergence report when `alpha <= d + 1` and with a sampling
/// failure when fewer than 0.1% of the box samples land in the domain (the
/// box estimator is only intended for low-dimensional bases).
pub fn weighted_norm_integral_mc(
    params: &CartanHartogsParams,
    alpha: f64,
    n_samples: u64,
    seed: u64,
) -> Result<IntegralEstimate> {
    check_convergent(params, alpha)?;
    if n_samples == 0 {
        return Err(HqError::Parameter("sample budget must be positive".into()));
    }
    let d = params.base.d;
    let box_volume = 4.0f64.powi(d as i32 + 1);
    let n_blocks = n_samples.div_ceil(BLOCK_SAMPLES as u64);

    let blocks: Vec<BlockStats> = run_pooled(|| {
        (0..n_blocks)
            .into_par_iter()
            .map(|b| {
                let start = b * BLOCK_SAMPLES as u64;
                let len = (n_samples - start).min(BLOCK_SAMPLES as u64) as usize;
                block_stats(params, alpha, seed, b, len)
            })
            .collect()
    });

    // Deterministic block-ordered reduction.
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut accepted = 0u64;
    let mut drawn = 0u64;
    for b in &blocks {
        sum += b.sum;
        sum_sq += b.sum_sq;
        accepted += b.accepted;
        drawn += b.drawn;
    }
    debug_assert_eq!(drawn, n_samples);
    let n = drawn as f64;
    let acceptance = accepted as f64 / n;
    if acceptance < 0.001 {
        return Err(HqError::Sampling(format!(
            "box rejection accepted only {acceptance:.2e} of the samples; the base is too \
             high-dimensional for ambient box sampling"
        )));
    }
    let mean = sum / n;
    let variance = (sum_sq / n - mean * mean).max(0.0);
    Ok(IntegralEstimate {
        value: box_volume * mean,
        stderr: box_volume * (variance / n).sqrt(),
        n_samples,
        seed,
        acceptance,
    })
}

/// Compares the Monte Carlo estimate against the ball closed form.
///
/// The statistic is the deviation in standard-error units; the check also
/// requires the relative standard error itself to stay below
/// [`tol::MC_REL_STDERR`] so an inflated error bar cannot mask a bias.
pub fn integral_comparison_report(
    params: &CartanHartogsParams,
    alpha: f64,
    n_samples: u64,
    seed: u64,
) -> Result<CheckReport> {
    let closed = weighted_norm_integral_closed(params, alpha)?;
    let mc = weighted_norm_integral_mc(params, alpha, n_samples, seed)?;
    let sigma_distance = (mc.value - closed).abs() / mc.stderr;
    let rel_stderr = mc.stderr / closed;
    let pass = sigma_distance <= tol::MC_SIGMA && rel_stderr <= tol::MC_REL_STDERR;
    Ok(CheckReport {
        suite: "integral_comparison".into(),
        params: vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(params.mu)),
            ("alpha".into(), JsonValue::Float(alpha)),
        ],
        statistic: sigma_distance,
        bound: tol::MC_SIGMA,
        pass,
        n_samples,
        seed,
        details: format!(
            "mc {:.10e} +- {:.3e} vs closed {closed:.10e} ({sigma_distance:.2} sigma, rel \
             stderr {rel_stderr:.2e}, acceptance {:.3})",
            mc.value, mc.stderr, mc.acceptance
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{CartanDomainSpec, DomainType};
    use std::f64::consts::PI;

    fn ball(d: usize, mu: f64) -> CartanHartogsParams {
        CartanHartogsParams::new(
            CartanDomainSpec::new(DomainType::TypeI { m: 1, n: d }).unwrap(),
            mu,
        )
        .unwrap()
    }

    #[test]
    fn closed_form_matches_hand_computed_values() {
        // d = 1, mu = 1, alpha = 4: pi^2 / 6.
        let v = weighted_norm_integral_closed(&ball(1, 1.0), 4.0).unwrap();
        assert!((v - PI * PI / 6.0).abs() < 1e-14 * v);
        // d = 1, mu = 2, alpha = 4: pi^2 / 10.
        let v = weighted_norm_integral_closed(&ball(1, 2.0), 4.0).unwrap();
        assert!((v - PI * PI / 10.0).abs() < 1e-14 * v);
        // d = 2, mu = 1, alpha = 5: pi^3 / 24.
        let v = weighted_norm_integral_closed(&ball(2, 1.0), 5.0).unwrap();
        assert!((v - PI.powi(3) / 24.0).abs() < 1e-14 * v);
    }

    #[test]
    fn divergence_is_flagged_at_and_below_the_pole() {
        let p = ball(1, 1.0);
        for alpha in [2.0, 1.5, 0.0, -3.0] {
            assert!(matches!(
                weighted_norm_integral_closed(&p, alpha),
                Err(HqError::Divergence(_))
            ));
            assert!(matches!(
                weighted_norm_integral_mc(&p, alpha, 1000, 1),
                Err(HqError::Divergence(_))
            ));
        }
        assert!(weighted_norm_integral_closed(&p, 2.0 + 1e-9).is_ok());
    }

    #[test]
    fn closed_form_has_a_simple_pole_at_the_divergence_threshold() {
        // I(d+1+delta) / I(d+1+10 delta) -> 10 as delta -> 0.
        let p = ball(1, 1.3);
        for k in [3, 4, 5] {
            let delta = 10f64.powi(-k);
            let near = weighted_norm_integral_closed(&p, 2.0 + delta).unwrap();
            let far = weighted_norm_integral_closed(&p, 2.0 + 10.0 * delta).unwrap();
            let ratio = near / far;
            assert!((ratio - 10.0).abs() < 0.5, "k={k}: ratio {ratio}");
        }
    }

    #[test]
    fn monte_carlo_agrees_with_the_closed_form() {
        let p = ball(1, 1.0);
        let alpha = 4.0;
        let closed = weighted_norm_integral_closed(&p, alpha).unwrap();
        let mc = weighted_norm_integral_mc(&p, alpha, 200_000, 42).unwrap();
        let sigma = (mc.value - closed).abs() / mc.stderr;
        assert!(
            sigma < tol::MC_SIGMA,
            "{} vs {closed} ({sigma:.2} sigma)",
            mc.value
        );
        assert!(mc.stderr / closed < tol::MC_REL_STDERR);
    }

    #[test]
    fn estimates_are_invariant_under_the_thread_count() {
        let p = ball(1, 1.5);
        let with_threads = |k: &str| {
            std::env::set_var(THREADS_ENV, k);
            let est = weighted_norm_integral_mc(&p, 4.0, 30_000, 7).unwrap();
            std::env::remove_var(THREADS_ENV);
            est
        };
        let a = with_threads("1");
        let b = with_threads("4");
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    }

    #[test]
    fn same_seed_reproduces_and_seeds_differ() {
        let p = ball(2, 1.0);
        let a = weighted_norm_integral_mc(&p, 5.0, 20_000, 11).unwrap();
        let b = weighted_norm_integral_mc(&p, 5.0, 20_000, 11).unwrap();
        let c = weighted_norm_integral_mc(&p, 5.0, 20_000, 12).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_ne!(a.value.to_bits(), c.value.to_bits());
    }

    #[test]
    fn comparison_report_passes_on_the_acceptance_grid() {
        for (d, mu) in [(1usize, 1.0), (1, 2.0), (2, 1.0), (2, 2.0)] {
            let p = ball(d, mu);
            // The d = 2 cells accept fewer box samples, so they need a larger
            // budget to push the relative standard error under 1%.
            let n = if d == 1 { 400_000 } else { 900_000 };
            for alpha in [d as f64 + 2.0, d as f64 + 3.0] {
                let r = integral_comparison_report(&p, alpha, n, 1234).unwrap();
                assert!(r.pass, "d={d} mu={mu} alpha={alpha}: {}", r.details);
            }
        }
    }

    #[test]
    fn high_dimensional_bases_report_a_sampling_failure() {
        let spec = CartanDomainSpec::new(DomainType::TypeIII { n: 5 }).unwrap();
        let p = CartanHartogsParams::new(spec, 2.0).unwrap();
        assert!(matches!(
            weighted_norm_integral_mc(&p, 13.0, 20_000, 3),
            Err(HqError::Sampling(_))
        ));
    }
}
