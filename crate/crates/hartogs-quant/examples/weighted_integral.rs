//! Weighted norm integrals: Monte Carlo against the closed form.
//!
//! The constant function is `alpha`-integrable on a Cartan-Hartogs domain
//! exactly when `alpha > d + 1`; its squared weighted norm
//! `int F^(alpha - (d + 2)) dV` has a closed form over ball bases. This
//! example demonstrates:
//!
//! - agreement of the Monte Carlo estimator with the closed form within its
//!   reported standard error,
//! - the divergence guard at the integrability threshold,
//! - determinism: the estimator partitions its sample budget into fixed
//!   blocks with per-block generator streams and reduces them in block
//!   order, so the result is a pure function of (parameters, budget, seed),
//!   independent of the worker-thread count (capped by the
//!   `HARTOGS_QUANT_THREADS` environment variable).

use hartogs_quant::hartogs::CartanHartogsParams;
use hartogs_quant::{integration, CartanDomainSpec, HqError};

fn main() {
    let base = CartanDomainSpec::parse("I:1,1").expect("disk");
    let params = CartanHartogsParams::new(base, 1.0).expect("admissible");

    // The worked value: d = 1, mu = 1, alpha = 4 gives pi^2 / 6.
    let closed = integration::weighted_norm_integral_closed(&params, 4.0).expect("closed form");
    println!(
        "closed form at alpha = 4: {closed:.12} (pi^2/6 = {:.12})",
        std::f64::consts::PI.powi(2) / 6.0
    );

    let est = integration::weighted_norm_integral_mc(&params, 4.0, 400_000, 42).expect("estimate");
    let sigma = (est.value - closed).abs() / est.stderr;
    println!(
        "Monte Carlo: {:.8} +- {:.2e} from {} samples (acceptance {:.3}) -> {sigma:.2} sigma from closed form",
        est.value, est.stderr, est.n_samples, est.acceptance
    );
    assert!(sigma < 4.0, "estimate must be statistically consistent");

    // Divergence guard at the threshold alpha = d + 1.
    match integration::weighted_norm_integral_mc(&params, 2.0, 1000, 0) {
        Err(HqError::Divergence(msg)) => println!("alpha = 2 rejected: {msg}"),
        other => panic!("expected a divergence error, got {other:?}"),
    }

    // Thread-count invariance, bit for bit.
    std::env::set_var(integration::THREADS_ENV, "1");
    let serial =
        integration::weighted_norm_integral_mc(&params, 4.0, 100_000, 7).expect("estimate");
    std::env::set_var(integration::THREADS_ENV, "4");
    let parallel =
        integration::weighted_norm_integral_mc(&params, 4.0, 100_000, 7).expect("estimate");
    std::env::remove_var(integration::THREADS_ENV);
    assert_eq!(serial.value.to_bits(), parallel.value.to_bits());
    assert_eq!(serial.stderr.to_bits(), parallel.stderr.to_bits());
    println!(
        "1-thread and 4-thread runs agree bit for bit: {:.12e}",
        serial.value
    );

    // The packaged comparison over a second worked value (mu = 2 -> pi^2/10).
    let base = CartanDomainSpec::parse("I:1,1").expect("disk");
    let params = CartanHartogsParams::new(base, 2.0).expect("admissible");
    let report = integration::integral_comparison_report(&params, 4.0, 400_000, 0).expect("report");
    println!(
        "packaged comparison (mu = 2, alpha = 4): {}",
        report.details
    );
    assert!(report.pass);
}
