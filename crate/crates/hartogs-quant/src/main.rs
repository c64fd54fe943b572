//! Thin command-line front end over the library: argument parsing, JSON
//! serialization of report documents, and exit-code mapping. All mathematics
//! lives in the library modules; see the `examples/` directory for richer
//! walk-throughs of each capability.
//!
//! Exit codes: `0` when every report in the emitted document passes, `1`
//! when a check fails or a computation degenerates at runtime, `2` for usage
//! errors (malformed flags, unknown domains, inadmissible parameters). Usage
//! errors never emit a partial document. Reports are serialized with a fixed
//! field order and 17-significant-digit floats, so identical invocations
//! produce byte-identical output.

use clap::{Args, Parser, Subcommand};
use hartogs_quant::hartogs::{self, CartanHartogsParams, HartogsPoint, PointPair};
use hartogs_quant::report::{CheckReport, JsonValue, RunDocument};
use hartogs_quant::{
    domain, embedding, integration, quantization, suite, tol, HqError, Result, C64,
};

#[derive(Parser)]
#[command(
    name = "hartogs-quant",
    version,
    about = "Geometry and quantization data of Cartan-Hartogs domains, with verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the ordered verification suite for one (domain, mu) cell.
    Check(CheckArgs),
    /// Print the invariant tuple and identity checks of a catalogued domain.
    Info(InfoArgs),
    /// Evaluate the epsilon function at a weight for a point pair.
    Epsilon(EpsilonArgs),
    /// Expand the epsilon function as a monic polynomial in the weight.
    Expansion(ExpansionArgs),
    /// Compute the diastasis between two points and its kernel-ratio check.
    Diastasis(DiastasisArgs),
    /// Embed a point through the truncated coherent-state map (ball bases).
    Embed(EmbedArgs),
    /// Compare the pulled-back Fubini-Study diastasis with the domain
    /// diastasis (ball bases).
    Pullback(PullbackArgs),
    /// Estimate the weighted norm integral by Monte Carlo, against the
    /// closed form on ball bases.
    Integrate(IntegrateArgs),
}

#[derive(Args)]
struct CellArgs {
    /// Domain grammar string: I:m,n | II:n | III:n | IV:n.
    #[arg(long, default_value = "I:1,1")]
    domain: String,
    /// Fiber exponent; must lie in the admissible exponent set of the base.
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
}

#[derive(Args)]
struct PairArgs {
    /// First point as a JSON array of [re, im] coordinates, base entries
    /// first and the fiber coordinate last (defaults to the origin).
    #[arg(long)]
    x: Option<String>,
    /// Second point, same format (defaults to the origin).
    #[arg(long)]
    y: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    cell: CellArgs,
    /// Comma-separated weights for the expansion checks (defaults to the
    /// integers d+2 ..= 2d+4 of the cell).
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    /// Pair budget of the sampled checks.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Base seed of the sampler streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Finite-difference step of the metric checks.
    #[arg(long, default_value_t = tol::FD_STEP)]
    step: f64,
    /// Tolerance override NAME=VALUE (repeatable); see the library
    /// documentation for the named knobs.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    tol: Vec<String>,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
    /// Write the kernel-comparison sample pairs to this CSV path.
    #[arg(long)]
    dump_samples: Option<String>,
}

#[derive(Args)]
struct InfoArgs {
    /// Domain grammar string: I:m,n | II:n | III:n | IV:n.
    domain: String,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct EpsilonArgs {
    #[command(flatten)]
    cell: CellArgs,
    /// Weight; defaults to d + 2.
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    pair: PairArgs,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ExpansionArgs {
    #[command(flatten)]
    cell: CellArgs,
    /// Comma-separated weights for the polynomial-vs-direct sweep (defaults
    /// to the integers d+2 ..= 2d+4).
    #[arg(long, value_delimiter = ',')]
    alpha: Vec<f64>,
    #[command(flatten)]
    pair: PairArgs,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct DiastasisArgs {
    #[command(flatten)]
    cell: CellArgs,
    #[command(flatten)]
    pair: PairArgs,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct EmbedArgs {
    #[command(flatten)]
    cell: CellArgs,
    /// Weight; defaults to d + 2.
    #[arg(long)]
    alpha: Option<f64>,
    /// Point to embed, JSON [re, im] coordinate array (defaults to a
    /// deterministic interior point).
    #[arg(long)]
    point: Option<String>,
    /// Total-degree truncation of the embedding.
    #[arg(long, default_value_t = 40)]
    order: u32,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct PullbackArgs {
    #[command(flatten)]
    cell: CellArgs,
    /// Weight; defaults to d + 2.
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    pair: PairArgs,
    /// Total-degree truncation of the embedding.
    #[arg(long, default_value_t = 40)]
    order: u32,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct IntegrateArgs {
    #[command(flatten)]
    cell: CellArgs,
    /// Weight; defaults to d + 2.
    #[arg(long)]
    alpha: Option<f64>,
    /// Monte Carlo sample budget.
    #[arg(long, default_value_t = 400_000)]
    samples: u64,
    /// Seed of the sampler streams.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report document to this path.
    #[arg(long)]
    out: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(pass) => std::process::exit(if pass { 0 } else { 1 }),
        Err(err @ HqError::Usage(_)) => {
            eprintln!("{err}");
            std::process::exit(2);
        }
        Err(err) => {
            eprintln!("{err}");
            std::process::exit(1);
        }
    }
}

/// Parses a point given as a JSON array of [re, im] pairs (base coordinates
/// first, the fiber coordinate last) and validates interior membership.
fn parse_point(params: &CartanHartogsParams, text: &str) -> Result<HartogsPoint> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| HqError::Usage(format!("malformed point JSON: {e}")))?;
    let entries = value
        .as_array()
        .ok_or_else(|| HqError::Usage("point must be a JSON array of [re, im] pairs".into()))?;
    let mut coords = Vec::with_capacity(entries.len());
    for entry in entries {
        let pair = entry.as_array().filter(|p| p.len() == 2);
        let (re, im) = match pair {
            Some(p) => match (p[0].as_f64(), p[1].as_f64()) {
                (Some(re), Some(im)) => (re, im),
                _ => {
                    return Err(HqError::Usage(
                        "point entries must be numeric [re, im] pairs".into(),
                    ))
                }
            },
            None => {
                return Err(HqError::Usage(
                    "point entries must be numeric [re, im] pairs".into(),
                ))
            }
        };
        coords.push(C64::new(re, im));
    }
    let point =
        HartogsPoint::from_coords(params, &coords).map_err(|e| HqError::Usage(e.to_string()))?;
    if !hartogs::hartogs_contains(params, &point)? {
        return Err(HqError::Usage(
            "point lies outside the Hartogs domain".into(),
        ));
    }
    Ok(point)
}

fn parse_pair(params: &CartanHartogsParams, pair: &PairArgs) -> Result<PointPair> {
    let x = match &pair.x {
        Some(text) => parse_point(params, text)?,
        None => HartogsPoint::origin(params),
    };
    let y = match &pair.y {
        Some(text) => parse_point(params, text)?,
        None => HartogsPoint::origin(params),
    };
    Ok(PointPair { x, y })
}

fn point_json(p: &HartogsPoint) -> JsonValue {
    JsonValue::Array(
        p.coords()
            .iter()
            .map(|c| JsonValue::Array(vec![JsonValue::Float(c.re), JsonValue::Float(c.im)]))
            .collect(),
    )
}

fn complex_str(c: C64) -> String {
    format!("{:.16e} {:+.16e}i", c.re, c.im)
}

/// Writes the document to stdout (always) and to `out` when given; returns
/// its aggregate verdict.
fn emit(doc: &RunDocument, out: Option<&str>) -> Result<bool> {
    let text = doc.to_json_string();
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, &text)
            .map_err(|e| HqError::Usage(format!("cannot write {path}: {e}")))?;
    }
    Ok(doc.pass)
}

fn default_alpha(params: &CartanHartogsParams, alpha: Option<f64>) -> f64 {
    alpha.unwrap_or(params.base.d as f64 + 2.0)
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Check(args) => {
            let mut config = suite::SuiteConfig {
                domain: args.cell.domain.clone(),
                mu: args.cell.mu,
                alphas: args.alpha.clone(),
                n_samples: args.samples,
                seed: args.seed,
                step: args.step,
                out: args.out.clone(),
                dump_samples: args.dump_samples.clone(),
                ..suite::SuiteConfig::default()
            };
            for spec in &args.tol {
                let (name, value) = spec.split_once('=').ok_or_else(|| {
                    HqError::Usage(format!("tolerance override must be NAME=VALUE, got {spec}"))
                })?;
                let value: f64 = value.parse().map_err(|_| {
                    HqError::Usage(format!("tolerance value must be a number, got {value}"))
                })?;
                config.tolerances.set(name, value)?;
            }
            let doc = suite::run_suite(&config)?;
            if let Some(path) = &config.dump_samples {
                let (header, rows) = suite::condition_a_sample_rows(&config)?;
                let mut file = std::fs::File::create(path)
                    .map_err(|e| HqError::Usage(format!("cannot write {path}: {e}")))?;
                let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
                hartogs_quant::report::write_samples_csv(&mut file, &header_refs, &rows)
                    .map_err(|e| HqError::Usage(format!("cannot write {path}: {e}")))?;
            }
            emit(&doc, config.out.as_deref())
        }

        Command::Info(args) => {
            let spec = domain::CartanDomainSpec::parse(&args.domain)?;
            let report = suite::domain_identities_report(&spec)?;
            let discrete: Vec<JsonValue> = (0..spec.r)
                .map(|j| JsonValue::Float(j as f64 * spec.a as f64 / 2.0))
                .collect();
            let doc = RunDocument::new(
                "info",
                vec![
                    ("domain".into(), JsonValue::Str(spec.dtype.to_string())),
                    ("d".into(), JsonValue::UInt(spec.d as u64)),
                    ("r".into(), JsonValue::UInt(spec.r as u64)),
                    ("a".into(), JsonValue::UInt(spec.a as u64)),
                    ("b".into(), JsonValue::UInt(spec.b as u64)),
                    ("genus".into(), JsonValue::Float(spec.genus)),
                    ("volume".into(), JsonValue::Float(spec.volume)),
                    ("mu0".into(), JsonValue::Float(spec.mu0())),
                    ("wallach_discrete".into(), JsonValue::Array(discrete)),
                    (
                        "wallach_continuous_from".into(),
                        JsonValue::Float((spec.r as f64 - 1.0) * spec.a as f64 / 2.0),
                    ),
                ],
                vec![report],
            );
            emit(&doc, args.out.as_deref())
        }

        Command::Epsilon(args) => {
            let params = suite::build_params(&args.cell.domain, args.cell.mu)?;
            let alpha = default_alpha(&params, args.alpha);
            let pair = parse_pair(&params, &args.pair)?;
            let eps = quantization::epsilon_eval(&params, alpha, &pair)?;
            let x_inv = hartogs::x_invariant(&params, &pair.x, &pair.y)?;
            // On the diagonal the epsilon function must be real.
            let diagonal = pair.x.coords() == pair.y.coords();
            let statistic = if diagonal {
                eps.im.abs() / eps.re.abs().max(1.0)
            } else {
                0.0
            };
            let report = CheckReport {
                suite: "epsilon_value".into(),
                params: vec![
                    ("alpha".into(), JsonValue::Float(alpha)),
                    ("diagonal".into(), JsonValue::Bool(diagonal)),
                ],
                statistic,
                bound: tol::REAL_IMAG,
                pass: statistic <= tol::REAL_IMAG,
                n_samples: 1,
                seed: 0,
                details: format!(
                    "epsilon = {}; kernel ratio invariant X = {}",
                    complex_str(eps),
                    complex_str(x_inv)
                ),
            };
            let doc = RunDocument::new(
                "epsilon",
                vec![
                    ("domain".into(), JsonValue::Str(args.cell.domain.clone())),
                    ("mu".into(), JsonValue::Float(args.cell.mu)),
                    ("alpha".into(), JsonValue::Float(alpha)),
                    ("x".into(), point_json(&pair.x)),
                    ("y".into(), point_json(&pair.y)),
                ],
                vec![report],
            );
            emit(&doc, args.out.as_deref())
        }

        Command::Expansion(args) => {
            let params = suite::build_params(&args.cell.domain, args.cell.mu)?;
            let d = params.base.d;
            let alphas = if args.alpha.is_empty() {
                suite::default_alphas(d)
            } else {
                args.alpha.clone()
            };
            let pair = parse_pair(&params, &args.pair)?;
            let poly = quantization::epsilon_alpha_polynomial(&params, &pair)?;
            let mut worst = (poly.coeffs[0] - C64::new(1.0, 0.0)).norm();
            for &alpha in &alphas {
                let direct = quantization::epsilon_eval(&params, alpha, &pair)?;
                let dev = (poly.eval(alpha) - direct).norm() / direct.norm().max(1.0);
                worst = worst.max(dev);
            }
            let coeff_list = poly
                .coeffs
                .iter()
                .map(|c| complex_str(*c))
                .collect::<Vec<_>>()
                .join(", ");
            let report = CheckReport {
                suite: "expansion".into(),
                params: vec![(
                    "alphas".into(),
                    JsonValue::Array(alphas.iter().map(|&a| JsonValue::Float(a)).collect()),
                )],
                statistic: worst,
                bound: tol::EPSILON_SPREAD,
                pass: worst <= tol::EPSILON_SPREAD,
                n_samples: alphas.len() as u64,
                seed: 0,
                details: format!("monic coefficients (descending weight powers): [{coeff_list}]"),
            };
            let doc = RunDocument::new(
                "expansion",
                vec![
                    ("domain".into(), JsonValue::Str(args.cell.domain.clone())),
                    ("mu".into(), JsonValue::Float(args.cell.mu)),
                    (
                        "alphas".into(),
                        JsonValue::Array(alphas.iter().map(|&a| JsonValue::Float(a)).collect()),
                    ),
                    ("x".into(), point_json(&pair.x)),
                    ("y".into(), point_json(&pair.y)),
                ],
                vec![report],
            );
            emit(&doc, args.out.as_deref())
        }

        Command::Diastasis(args) => {
            let params = suite::build_params(&args.cell.domain, args.cell.mu)?;
            let pair = parse_pair(&params, &args.pair)?;
            let d_xy = hartogs::diastasis(&params, &pair.x, &pair.y)?;
            let d_yx = hartogs::diastasis(&params, &pair.y, &pair.x)?;
            let ratio = (-d_xy).exp();
            let bound = 1.0 + tol::CONDITION_A;
            let report = CheckReport {
                suite: "diastasis".into(),
                params: vec![],
                statistic: ratio,
                bound,
                pass: ratio <= bound && (d_xy - d_yx).abs() <= tol::EXACT_F64,
                n_samples: 1,
                seed: 0,
                details: format!(
                    "D(x, y) = {d_xy:.16e}; symmetry residual {:.3e}; kernel ratio exp(-D) = \
                     {ratio:.16e}",
                    (d_xy - d_yx).abs()
                ),
            };
            let doc = RunDocument::new(
                "diastasis",
                vec![
                    ("domain".into(), JsonValue::Str(args.cell.domain.clone())),
                    ("mu".into(), JsonValue::Float(args.cell.mu)),
                    ("x".into(), point_json(&pair.x)),
                    ("y".into(), point_json(&pair.y)),
                ],
                vec![report],
            );
            emit(&doc, args.out.as_deref())
        }

        Command::Embed(args) => {
            let params = suite::build_params(&args.cell.domain, args.cell.mu)?;
            let alpha = default_alpha(&params, args.alpha);
            let point = match &args.point {
                Some(text) => parse_point(&params, text)?,
                None => {
                    // A deterministic mildly-off-center interior point.
                    let mut coords = vec![C64::new(0.3, 0.1); params.dim()];
                    coords[params.dim() - 1] = C64::new(0.2, -0.2);
                    HartogsPoint::from_coords(&params, &coords)?
                }
            };
            let ni = embedding::norm_identity(&params, alpha, &point, args.order)?;
            let bound = 1e-8;
            let report = CheckReport {
                suite: "embed_norm_identity".into(),
                params: vec![
                    ("alpha".into(), JsonValue::Float(alpha)),
                    ("truncation".into(), JsonValue::UInt(args.order as u64)),
                ],
                statistic: ni.residual,
                bound,
                pass: ni.residual <= bound,
                n_samples: 1,
                seed: 0,
                details: format!(
                    "truncated norm^2 {:.16e} vs kernel diagonal {:.16e}; relative tail \
                     estimate {:.3e}",
                    ni.partial_sum, ni.closed_form, ni.tail_bound
                ),
            };
            let doc = RunDocument::new(
                "embed",
                vec![
                    ("domain".into(), JsonValue::Str(args.cell.domain.clone())),
                    ("mu".into(), JsonValue::Float(args.cell.mu)),
                    ("alpha".into(), JsonValue::Float(alpha)),
                    ("order".into(), JsonValue::UInt(args.order as u64)),
                    ("point".into(), point_json(&point)),
                ],
                vec![report],
            );
            emit(&doc, args.out.as_deref())
        }

        Command::Pullback(args) => {
            let params = suite::build_params(&args.cell.domain, args.cell.mu)?;
            let alpha = default_alpha(&params, args.alpha);
            let pair = match (&args.pair.x, &args.pair.y) {
                (None, None) => {
                    // A deterministic in-range default pair.
                    let x = HartogsPoint::from_coords(
                        &params,
                        &vec![C64::new(0.25, 0.1); params.dim()],
                    )?;
                    let y = HartogsPoint::from_coords(
                        &params,
                        &vec![C64::new(-0.2, 0.15); params.dim()],
                    )?;
                    PointPair { x, y }
                }
                _ => parse_pair(&params, &args.pair)?,
            };
            let residual = embedding::pullback_residual(&params, alpha, &pair, args.order)?;
            let report = CheckReport {
                suite: "pullback".into(),
                params: vec![
                    ("alpha".into(), JsonValue::Float(alpha)),
                    ("truncation".into(), JsonValue::UInt(args.order as u64)),
                ],
                statistic: residual,
                bound: tol::PULLBACK,
                pass: residual <= tol::PULLBACK,
                n_samples: 1,
                seed: 0,
                details: format!("|D_FS o f - alpha D| = {residual:.3e}"),
            };
            let doc = RunDocument::new(
                "pullback",
                vec![
                    ("domain".into(), JsonValue::Str(args.cell.domain.clone())),
                    ("mu".into(), JsonValue::Float(args.cell.mu)),
                    ("alpha".into(), JsonValue::Float(alpha)),
                    ("order".into(), JsonValue::UInt(args.order as u64)),
                    ("x".into(), point_json(&pair.x)),
                    ("y".into(), point_json(&pair.y)),
                ],
                vec![report],
            );
            emit(&doc, args.out.as_deref())
        }

        Command::Integrate(args) => {
            let params = suite::build_params(&args.cell.domain, args.cell.mu)?;
            let alpha = default_alpha(&params, args.alpha);
            let is_ball = matches!(params.base.dtype, domain::DomainType::TypeI { m: 1, .. });
            let report = if is_ball {
                integration::integral_comparison_report(&params, alpha, args.samples, args.seed)?
            } else {
                let est = integration::weighted_norm_integral_mc(
                    &params,
                    alpha,
                    args.samples,
                    args.seed,
                )?;
                let rel = est.stderr / est.value;
                CheckReport {
                    suite: "integral_mc".into(),
                    params: vec![
                        (
                            "domain".into(),
                            JsonValue::Str(params.base.dtype.to_string()),
                        ),
                        ("mu".into(), JsonValue::Float(params.mu)),
                        ("alpha".into(), JsonValue::Float(alpha)),
                    ],
                    statistic: rel,
                    bound: tol::MC_REL_STDERR,
                    pass: rel <= tol::MC_REL_STDERR,
                    n_samples: args.samples,
                    seed: args.seed,
                    details: format!(
                        "mc {:.10e} +- {:.3e} (acceptance {:.3}); no closed form for this base",
                        est.value, est.stderr, est.acceptance
                    ),
                }
            };
            let doc = RunDocument::new(
                "integrate",
                vec![
                    ("domain".into(), JsonValue::Str(args.cell.domain.clone())),
                    ("mu".into(), JsonValue::Float(args.cell.mu)),
                    ("alpha".into(), JsonValue::Float(alpha)),
                    ("samples".into(), JsonValue::UInt(args.samples)),
                    ("seed".into(), JsonValue::UInt(args.seed)),
                ],
                vec![report],
            );
            emit(&doc, args.out.as_deref())
        }
    }
}
