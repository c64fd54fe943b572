//! Programmatic use of the full verification suite.
//!
//! The `suite` module bundles every quantization check — catalog identities,
//! the kernel contraction bound, leading-coefficient identities, the
//! bounded-coefficient condition, the Einstein property (at critical
//! weights), the metric determinant identity, the embedding pullback (ball
//! bases), and the weighted-integral comparison (low-dimensional balls) —
//! into one deterministic run per (domain, mu) cell, the same routine the
//! `check` subcommand of the CLI exposes.
//!
//! This example runs it for one ball cell and one matrix-base cell, prints
//! each packaged report on one line, and shows tolerance overrides and the
//! standard evaluation grid.

use hartogs_quant::suite::{self, SuiteConfig};

fn main() {
    for (domain, mu) in [("I:1,2", 1.0), ("IV:3", 0.5)] {
        let config = SuiteConfig {
            domain: domain.to_string(),
            mu,
            n_samples: 2000,
            seed: 20_260_814,
            ..SuiteConfig::default()
        };
        let doc = suite::run_suite(&config).expect("suite run");
        println!("{domain} mu={mu}:");
        for report in &doc.results {
            println!(
                "  {:<22} {} statistic {:.3e} vs bound {:.3e}  [{} samples]",
                report.suite,
                if report.pass { "pass" } else { "FAIL" },
                report.statistic,
                report.bound,
                report.n_samples
            );
        }
        assert!(doc.pass, "the {domain} cell must pass");
        println!();
    }

    // Tolerance knobs are named and validated; an override tightens or
    // relaxes a single check without touching the others.
    let mut config = SuiteConfig {
        domain: "I:1,1".to_string(),
        mu: 1.0,
        n_samples: 1000,
        ..SuiteConfig::default()
    };
    config
        .tolerances
        .set("condition_a", 1e-9)
        .expect("known knob");
    assert!(config.tolerances.set("no_such_knob", 1.0).is_err());
    let doc = suite::run_suite(&config).expect("suite run");
    println!(
        "disk with a relaxed contraction slack still passes: {}",
        doc.pass
    );

    // The standard grid spans every catalogued base with weights drawn from
    // the discrete ladder, the critical weight, and generic values.
    let grid = suite::standard_grid();
    println!("standard evaluation grid: {} cells", grid.len());
    for (domain, mu) in grid.iter().take(6) {
        println!("  {domain} mu={mu}");
    }
    println!("  ...");
}
