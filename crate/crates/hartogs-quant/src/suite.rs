//! Verification suites: the ordered battery of property checks run by the
//! `check` command for one `(domain, mu)` cell.
//!
//! A suite run executes, in a fixed order,
//!
//! 1. the combinatorial domain identities (genus/dimension relations and the
//!    volume normalization of the Bergman kernel),
//! 2. the kernel comparison condition: `exp(-D(x, y)) <= 1` over sampled
//!    stress pairs, with strict contraction for separated pairs,
//! 3. the leading coefficient identities of the discrete-difference
//!    expansion of the weight polynomial,
//! 4. the bounded-coefficient condition on the epsilon expansion (uniform
//!    bounds on the subleading coefficient, the constant block, and the
//!    kernel ratio invariant),
//! 5. the Kaehler-Einstein property when `mu` sits at the critical weight,
//! 6. the metric determinant identity,
//! 7. the Fubini-Study pullback comparison (ball bases), and
//! 8. the Monte Carlo vs closed-form weighted norm integral (ball bases of
//!    dimension at most two).
//!
//! Every check consumes seeded, deterministic sampler streams derived from
//! the configured base seed, and all reductions are order-fixed, so two runs
//! of the same configuration serialize to byte-identical report documents.

use crate::domain::{CartanDomainSpec, DomainType};
use crate::embedding;
use crate::error::HqError;
use crate::hartogs::{self, CartanHartogsParams, HartogsPoint, PointPair};
use crate::integration;
use crate::metric;
use crate::quantization;
use crate::report::{CheckReport, JsonValue, RunDocument};
use crate::sampling::{sample_pairs, sample_points, PointClass};
use crate::{tol, Result};

/// Named tolerance knobs that a caller may override per run.
///
/// Every field defaults to the library-wide constant of the same name. An
/// override adjusts the statistic-versus-bound comparison of the matching
/// check; auxiliary pass conditions (coefficient exactness, relative
/// standard-error caps) keep their built-in thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    /// Bound on `exp(-D)` in the kernel comparison check: `1 + condition_a`.
    pub condition_a: f64,
    /// Relative error bound of the leading coefficient identities.
    pub leading_identities: f64,
    /// Slack above 2 allowed for the kernel ratio invariant.
    pub limit_statistic: f64,
    /// Entrywise bound on `Ric + (d+2) g` at the critical weight.
    pub einstein: f64,
    /// Bound on the spread of the determinant-identity residual.
    pub det_identity: f64,
    /// Bound on the Fubini-Study pullback residual.
    pub pullback: f64,
    /// Standard-error distance allowed between the Monte Carlo estimate and
    /// the closed form.
    pub mc_sigma: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            condition_a: tol::CONDITION_A,
            leading_identities: tol::LEADING_IDENTITIES,
            limit_statistic: tol::LIMIT_STATISTIC,
            einstein: tol::EINSTEIN,
            det_identity: tol::DET_IDENTITY,
            pullback: tol::PULLBACK,
            mc_sigma: tol::MC_SIGMA,
        }
    }
}

impl Tolerances {
    /// Sets one named tolerance; unknown names are usage errors.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if value <= 0.0 || !value.is_finite() {
            return Err(HqError::Usage(format!(
                "tolerance {name} must be positive and finite, got {value}"
            )));
        }
        match name {
            "condition_a" => self.condition_a = value,
            "leading_identities" => self.leading_identities = value,
            "limit_statistic" => self.limit_statistic = value,
            "einstein" => self.einstein = value,
            "det_identity" => self.det_identity = value,
            "pullback" => self.pullback = value,
            "mc_sigma" => self.mc_sigma = value,
            other => {
                return Err(HqError::Usage(format!(
                    "unknown tolerance {other}; expected one of condition_a, \
                     leading_identities, limit_statistic, einstein, det_identity, pullback, \
                     mc_sigma"
                )))
            }
        }
        Ok(())
    }
}

/// Configuration of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    /// Domain grammar string, e.g. `I:1,2`, `II:2`, `III:5`, `IV:3`.
    pub domain: String,
    /// Fiber exponent.
    pub mu: f64,
    /// Weights for the expansion checks; defaults to the integers
    /// `d+2 ..= 2d+4` of the cell when empty.
    pub alphas: Vec<f64>,
    /// Pair budget of the kernel comparison check (other checks scale off
    /// this number).
    pub n_samples: u64,
    /// Base seed; every check derives its own stream from it.
    pub seed: u64,
    /// Finite-difference step of the metric checks.
    pub step: f64,
    /// Tolerance overrides.
    pub tolerances: Tolerances,
    /// Optional report output path (consumed by the command-line layer).
    pub out: Option<String>,
    /// Optional sample dump path (consumed by the command-line layer).
    pub dump_samples: Option<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            domain: "I:1,1".into(),
            mu: 1.0,
            alphas: Vec::new(),
            n_samples: 10_000,
            seed: 0,
            step: tol::FD_STEP,
            tolerances: Tolerances::default(),
            out: None,
            dump_samples: None,
        }
    }
}

/// Parses and validates the `(domain, mu)` cell of a configuration; invalid
/// cells are usage errors (they describe bad command-line input).
pub fn build_params(domain: &str, mu: f64) -> Result<CartanHartogsParams> {
    let spec = CartanDomainSpec::parse(domain)?;
    CartanHartogsParams::new(spec, mu).map_err(|e| HqError::Usage(e.to_string()))
}

/// Default weight set of a cell: the `d + 3` integers `d+2 ..= 2d+4`.
pub fn default_alphas(d: usize) -> Vec<f64> {
    (d + 2..=2 * d + 4).map(|a| a as f64).collect()
}

/// The standard verification grid: every catalogued base domain crossed with
/// the admissible members of the weight slots `{a/2, (r-1) a/2, mu0, 1, 1.7}`
/// (slots that are non-positive or outside the admissible exponent set of
/// the base are dropped; duplicates are kept so each slot stays visible in
/// reports).
pub fn standard_grid() -> Vec<(String, f64)> {
    let bases = [
        DomainType::TypeI { m: 1, n: 1 },
        DomainType::TypeI { m: 1, n: 2 },
        DomainType::TypeI { m: 2, n: 2 },
        DomainType::TypeII { n: 2 },
        DomainType::TypeIII { n: 5 },
        DomainType::TypeIV { n: 3 },
        DomainType::TypeIV { n: 4 },
    ];
    let mut grid = Vec::new();
    for dtype in bases {
        let spec = CartanDomainSpec::new(dtype).expect("catalogued base");
        let slots = [
            spec.a as f64 / 2.0,
            (spec.r as f64 - 1.0) * spec.a as f64 / 2.0,
            spec.mu0(),
            1.0,
            1.7,
        ];
        for mu in slots {
            if mu > 0.0 && crate::domain::wallach_contains(&spec, mu) {
                grid.push((spec.dtype.to_string(), mu));
            }
        }
    }
    grid
}

/// Derives a decorrelated stream seed for one sub-check.
fn subseed(seed: u64, salt: u64) -> u64 {
    seed.wrapping_mul(6364136223846793005)
        .wrapping_add(2 * salt + 1)
}

/// Re-targets a finished report at an overridden bound: the statistic is
/// compared against the new bound while auxiliary conditions keep their
/// original verdict.
fn apply_bound_override(report: &mut CheckReport, new_bound: f64) {
    if new_bound == report.bound {
        return;
    }
    let aux_ok = report.pass || report.statistic > report.bound;
    report.bound = new_bound;
    report.pass = aux_ok && report.statistic <= new_bound;
}

/// Combinatorial identities of the base domain: the genus and dimension
/// relations of the invariant tuple, and the volume normalization of the
/// Bergman kernel at the origin.
pub fn domain_identities_report(spec: &CartanDomainSpec) -> Result<CheckReport> {
    let r = spec.r as f64;
    let a = spec.a as f64;
    let b = spec.b as f64;
    let genus_residual = (spec.genus - ((r - 1.0) * a + b + 2.0)).abs();
    let dim_residual = (spec.d as f64 - (r * (r - 1.0) * a / 2.0 + r * b + r)).abs();
    let origin = crate::domain::BasePoint::origin(spec);
    let kernel = crate::domain::bergman_kernel(spec, &origin, &origin)?;
    let volume_residual = (kernel.re * spec.volume - 1.0).abs().max(kernel.im.abs());
    let statistic = genus_residual.max(dim_residual).max(volume_residual);
    Ok(CheckReport {
        suite: "domain_identities".into(),
        params: vec![("domain".into(), JsonValue::Str(spec.dtype.to_string()))],
        statistic,
        bound: tol::EXACT_F64,
        pass: statistic <= tol::EXACT_F64,
        n_samples: 3,
        seed: 0,
        details: format!(
            "genus residual {genus_residual:.1e}, dimension residual {dim_residual:.1e}, \
             kernel-volume residual {volume_residual:.3e}"
        ),
    })
}

/// Separation threshold beyond which the kernel comparison must be strict.
pub const SEPARATION: f64 = 0.01;

/// Kernel comparison condition over a pair sample: `exp(-D(x, y)) <= 1`
/// everywhere, with strict inequality for pairs separated by more than
/// [`SEPARATION`] in coordinate distance.
pub fn condition_a_report(
    params: &CartanHartogsParams,
    pairs: &[PointPair],
    bound_slack: f64,
    seed: u64,
) -> Result<CheckReport> {
    if pairs.is_empty() {
        return Err(HqError::Parameter(
            "kernel comparison needs at least one pair".into(),
        ));
    }
    let mut max_ratio = f64::NEG_INFINITY;
    let mut max_separated = f64::NEG_INFINITY;
    let mut violations = 0u64;
    let mut separated = 0u64;
    let bound = 1.0 + bound_slack;
    for pair in pairs {
        let ratio = (-hartogs::diastasis(params, &pair.x, &pair.y)?).exp();
        max_ratio = max_ratio.max(ratio);
        if ratio > bound {
            violations += 1;
        }
        if pair.x.distance(&pair.y) > SEPARATION {
            separated += 1;
            max_separated = max_separated.max(ratio);
        }
    }
    let strict_ok = separated > 0 && max_separated < 1.0;
    let pass = violations == 0 && max_ratio <= bound && strict_ok;
    Ok(CheckReport {
        suite: "condition_a".into(),
        params: vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(params.mu)),
        ],
        statistic: max_ratio,
        bound,
        pass,
        n_samples: pairs.len() as u64,
        seed,
        details: format!(
            "{violations} violations; max exp(-D) {max_ratio:.16e}; max over {separated} \
             separated pairs {max_separated:.16e} (strict bound 1)"
        ),
    })
}

/// Kaehler-Einstein check at the critical weight: the entrywise maximum of
/// `Ric + (d+2) g` over the supplied points.
pub fn einstein_report(
    params: &CartanHartogsParams,
    points: &[HartogsPoint],
    step: f64,
    bound: f64,
    seed: u64,
) -> Result<CheckReport> {
    if points.is_empty() {
        return Err(HqError::Parameter(
            "Einstein check needs at least one point".into(),
        ));
    }
    let dp2 = crate::C64::new(params.base.d as f64 + 2.0, 0.0);
    let mut worst = 0.0f64;
    for p in points {
        let g = metric::metric_tensor(params, p, step)?;
        let curv = metric::curvature(params, p, step)?;
        let dev = &curv.ricci + &g * dp2;
        worst = worst.max(dev.iter().map(|c| c.norm()).fold(0.0, f64::max));
    }
    Ok(CheckReport {
        suite: "einstein".into(),
        params: vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(params.mu)),
            ("step".into(), JsonValue::Float(step)),
        ],
        statistic: worst,
        bound,
        pass: worst <= bound,
        n_samples: points.len() as u64,
        seed,
        details: format!(
            "max entry of Ric + (d+2) g over {} points: {worst:.3e}",
            points.len()
        ),
    })
}

/// Fubini-Study pullback comparison over the pairs whose coordinates stay
/// within the embedding range cap; pairs outside the cap are skipped.
pub fn pullback_report(
    params: &CartanHartogsParams,
    alpha: f64,
    pairs: &[PointPair],
    t_max: u32,
    bound: f64,
    seed: u64,
) -> Result<CheckReport> {
    let in_range = |p: &HartogsPoint| {
        p.coords()
            .iter()
            .all(|c| c.norm() <= embedding::PULLBACK_COORD_CAP)
    };
    let mut worst = 0.0f64;
    let mut used = 0u64;
    for pair in pairs {
        if !in_range(&pair.x) || !in_range(&pair.y) {
            continue;
        }
        worst = worst.max(embedding::pullback_residual(params, alpha, pair, t_max)?);
        used += 1;
    }
    if used == 0 {
        return Err(HqError::Sampling(
            "no sampled pair stayed within the embedding range cap".into(),
        ));
    }
    Ok(CheckReport {
        suite: "pullback".into(),
        params: vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(params.mu)),
            ("alpha".into(), JsonValue::Float(alpha)),
            ("truncation".into(), JsonValue::UInt(t_max as u64)),
        ],
        statistic: worst,
        bound,
        pass: worst <= bound,
        n_samples: used,
        seed,
        details: format!("max |D_FS o f - alpha D| over {used} in-range pairs: {worst:.3e}"),
    })
}

/// Whether the base is a unit ball `I:1,d`, the only family with explicit
/// embeddings and closed-form integrals.
fn ball_dim(params: &CartanHartogsParams) -> Option<usize> {
    match params.base.dtype {
        DomainType::TypeI { m: 1, n } => Some(n),
        _ => None,
    }
}

/// Header and rows of the kernel-comparison sample dump: one row per pair,
/// interleaving the flat coordinates of both points and the observed kernel
/// ratio. Reuses the suite's seed derivation, so the dump matches the pairs
/// consumed by the `condition_a` report of the same configuration.
pub fn condition_a_sample_rows(config: &SuiteConfig) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let params = build_params(&config.domain, config.mu)?;
    let pairs = sample_pairs(
        &params,
        PointClass::Stress,
        config.n_samples as usize,
        subseed(config.seed, 2),
    )?;
    let mut header = Vec::new();
    for side in ["x", "y"] {
        for i in 0..params.dim() {
            header.push(format!("{side}{i}_re"));
            header.push(format!("{side}{i}_im"));
        }
    }
    header.push("exp_neg_d".into());
    let mut rows = Vec::with_capacity(pairs.len());
    for pair in &pairs {
        let mut row = Vec::with_capacity(2 * params.dim() + 1);
        for c in pair.x.coords().iter().chain(pair.y.coords().iter()) {
            row.push(c.re);
            row.push(c.im);
        }
        row.push((-hartogs::diastasis(&params, &pair.x, &pair.y)?).exp());
        rows.push(row);
    }
    Ok((header, rows))
}

/// Runs the full ordered suite for one configuration cell.
pub fn run_suite(config: &SuiteConfig) -> Result<RunDocument> {
    let params = build_params(&config.domain, config.mu)?;
    let d = params.base.d;
    let tols = &config.tolerances;
    if config.n_samples == 0 {
        return Err(HqError::Usage("sample budget must be positive".into()));
    }
    let alphas = if config.alphas.is_empty() {
        default_alphas(d)
    } else {
        config.alphas.clone()
    };

    let mut results = Vec::new();

    // 1. Domain identities.
    results.push(domain_identities_report(&params.base)?);

    // 2. Kernel comparison over stress pairs.
    let ca_seed = subseed(config.seed, 2);
    let stress_pairs = sample_pairs(
        &params,
        PointClass::Stress,
        config.n_samples as usize,
        ca_seed,
    )?;
    results.push(condition_a_report(
        &params,
        &stress_pairs,
        tols.condition_a,
        ca_seed,
    )?);

    // 3. Leading coefficient identities.
    let mut leading = quantization::leading_identities(&params);
    apply_bound_override(&mut leading, tols.leading_identities);
    results.push(leading);

    // 4. Bounded-coefficient condition of the epsilon expansion.
    let bp_seed = subseed(config.seed, 3);
    let bp_pairs = sample_pairs(
        &params,
        PointClass::Interior,
        (config.n_samples as usize / 10).max(8),
        bp_seed,
    )?;
    let mut bprime = quantization::condition_bprime_report(&params, &alphas, &bp_pairs, bp_seed)?;
    apply_bound_override(&mut bprime, 2.0 + tols.limit_statistic);
    results.push(bprime);

    // 5. Kaehler-Einstein property at the critical weight.
    if params.einstein_gap().abs() <= tol::WALLACH {
        let ke_seed = subseed(config.seed, 4);
        let points = sample_points(&params, PointClass::Margin, 10, ke_seed)?;
        results.push(einstein_report(
            &params,
            &points,
            config.step,
            tols.einstein,
            ke_seed,
        )?);
    }

    // 6. Metric determinant identity.
    let det_seed = subseed(config.seed, 5);
    let det_points = sample_points(&params, PointClass::Margin, 8, det_seed)?;
    let mut det = metric::det_identity_residual(&params, &det_points, config.step)?;
    det.seed = det_seed;
    apply_bound_override(&mut det, tols.det_identity);
    results.push(det);

    // 7-8. Ball-only comparisons.
    if let Some(ball_d) = ball_dim(&params) {
        let pb_seed = subseed(config.seed, 6);
        let pb_pairs = sample_pairs(
            &params,
            PointClass::Margin,
            (config.n_samples as usize / 100).max(20),
            pb_seed,
        )?;
        let alpha0 = ball_d as f64 + 2.0;
        results.push(pullback_report(
            &params,
            alpha0,
            &pb_pairs,
            40,
            tols.pullback,
            pb_seed,
        )?);

        if ball_d <= 2 {
            let mc_seed = subseed(config.seed, 7);
            let budget = config.n_samples * if ball_d == 1 { 40 } else { 90 };
            let mut mc = integration::integral_comparison_report(&params, alpha0, budget, mc_seed)?;
            apply_bound_override(&mut mc, tols.mc_sigma);
            results.push(mc);
        }
    }

    let doc_params = vec![
        ("domain".into(), JsonValue::Str(config.domain.clone())),
        ("mu".into(), JsonValue::Float(config.mu)),
        (
            "alphas".into(),
            JsonValue::Array(alphas.iter().map(|&a| JsonValue::Float(a)).collect()),
        ),
        ("samples".into(), JsonValue::UInt(config.n_samples)),
        ("seed".into(), JsonValue::UInt(config.seed)),
        ("step".into(), JsonValue::Float(config.step)),
    ];
    Ok(RunDocument::new("check", doc_params, results))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_standard_grid_has_the_expected_cells() {
        let grid = standard_grid();
        assert_eq!(grid.len(), 28);
        let count = |dom: &str| grid.iter().filter(|(g, _)| g == dom).count();
        assert_eq!(count("I:1,1"), 4);
        assert_eq!(count("I:1,2"), 4);
        assert_eq!(count("I:2,2"), 4);
        assert_eq!(count("II:2"), 5);
        assert_eq!(count("III:5"), 2);
        assert_eq!(count("IV:3"), 5);
        assert_eq!(count("IV:4"), 4);
        // Every grid cell must construct.
        for (dom, mu) in &grid {
            build_params(dom, *mu).unwrap();
        }
        // The discrete slots of III:5 both land on the admissible value 2.
        assert!(
            grid.iter()
                .filter(|(g, m)| g == "III:5" && *m == 2.0)
                .count()
                == 2
        );
    }

    #[test]
    fn tolerance_overrides_accept_known_names_only() {
        let mut t = Tolerances::default();
        t.set("pullback", 1e-4).unwrap();
        assert_eq!(t.pullback, 1e-4);
        assert!(matches!(t.set("no_such_knob", 1.0), Err(HqError::Usage(_))));
        assert!(matches!(t.set("pullback", -1.0), Err(HqError::Usage(_))));
    }

    #[test]
    fn bound_override_keeps_auxiliary_verdicts() {
        let mut r = CheckReport::from_statistic("t", vec![], 0.5, 1.0, 3, 9, "ok");
        apply_bound_override(&mut r, 0.25);
        assert!(!r.pass);
        apply_bound_override(&mut r, 0.75);
        assert!(r.pass);
        // A report failed by an auxiliary condition stays failed.
        let mut aux = CheckReport {
            suite: "t".into(),
            params: vec![],
            statistic: 0.5,
            bound: 1.0,
            pass: false,
            n_samples: 1,
            seed: 0,
            details: String::new(),
        };
        apply_bound_override(&mut aux, 2.0);
        assert!(!aux.pass);
    }

    #[test]
    fn disk_suite_passes_and_is_byte_deterministic() {
        // The Monte Carlo budget scales off n_samples; 1000 keeps the
        // relative standard error of the integral comparison under 1%.
        let config = SuiteConfig {
            domain: "I:1,1".into(),
            mu: 1.0,
            n_samples: 1000,
            seed: 7,
            ..SuiteConfig::default()
        };
        let doc = run_suite(&config).unwrap();
        assert!(doc.pass, "{}", doc.to_json_string());
        let suites: Vec<&str> = doc.results.iter().map(|r| r.suite.as_str()).collect();
        assert_eq!(
            suites,
            vec![
                "domain_identities",
                "condition_a",
                "leading_identities",
                "condition_bprime",
                "einstein",
                "det_identity",
                "pullback",
                "integral_comparison"
            ]
        );
        let again = run_suite(&config).unwrap();
        assert_eq!(doc.to_json_string(), again.to_json_string());
    }

    #[test]
    fn non_critical_weight_skips_the_einstein_check() {
        let config = SuiteConfig {
            domain: "IV:3".into(),
            mu: 0.5,
            n_samples: 300,
            seed: 11,
            ..SuiteConfig::default()
        };
        let doc = run_suite(&config).unwrap();
        assert!(doc.results.iter().all(|r| r.suite != "einstein"));
        assert!(doc.results.iter().all(|r| r.suite != "pullback"));
        assert!(doc.pass, "{}", doc.to_json_string());
    }

    #[test]
    fn bad_cells_are_usage_errors() {
        assert!(matches!(build_params("V:2", 1.0), Err(HqError::Usage(_))));
        // A rank-2 base has a gap below the continuous part of its exponent
        // set; a rank-1 ball admits every positive exponent.
        assert!(matches!(build_params("I:2,2", 0.3), Err(HqError::Usage(_))));
        assert!(build_params("I:1,1", 0.3).is_ok());
        let config = SuiteConfig {
            n_samples: 0,
            ..SuiteConfig::default()
        };
        assert!(matches!(run_suite(&config), Err(HqError::Usage(_))));
    }

    #[test]
    fn sample_dump_rows_match_the_configuration_shape() {
        let config = SuiteConfig {
            domain: "I:1,1".into(),
            mu: 1.0,
            n_samples: 50,
            seed: 3,
            ..SuiteConfig::default()
        };
        let (header, rows) = condition_a_sample_rows(&config).unwrap();
        assert_eq!(header.len(), 2 * 2 * 2 + 1);
        assert_eq!(header[0], "x0_re");
        assert_eq!(header.last().unwrap(), "exp_neg_d");
        assert_eq!(rows.len(), 50);
        assert!(rows.iter().all(|r| r.len() == header.len()));
        assert!(rows
            .iter()
            .all(|r| *r.last().unwrap() <= 1.0 + tol::CONDITION_A));
    }
}
