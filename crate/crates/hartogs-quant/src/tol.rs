//! Centralized numeric tolerances.
//!
//! Every check suite compares a computed statistic against one of these bounds;
//! the CLI can override individual values with `--tol <name>=<value>`. Bounds
//! are chosen from the arithmetic at hand (exact identities sit near machine
//! epsilon, finite-difference checks inherit the truncation order of the
//! stencil), not tuned to make tests pass.

/// Exact algebraic identities evaluated in f64 (dimension bookkeeping,
/// Hermitian symmetry of closed-form kernels). A few ulps of slack.
pub const EXACT_F64: f64 = 1e-13;

/// Discrete Wallach-point membership test on f64 input.
pub const WALLACH: f64 = 1e-12;

/// Relative error allowed on the two leading finite-difference identities of
/// the gamma-ratio polynomial. Alternating sums lose ~4 digits at d = 10.
pub const LEADING_IDENTITIES: f64 = 1e-9;

/// Slack on the global bound `e^(-D) <= 1` for the diastasis suite.
pub const CONDITION_A: f64 = 1e-12;

/// Agreement between the closed-form subleading coefficient B and the
/// alpha^d coefficient extracted from the exact epsilon polynomial.
pub const B_CROSS_CHECK: f64 = 1e-10;

/// Relative spread of `epsilon` over sampled points when the expansion is
/// X-independent (disk base at mu = 1).
pub const EPSILON_SPREAD: f64 = 1e-10;

/// Max-norm of `Ric + (d+2) g` at the Kaehler-Einstein exponent mu0.
pub const EINSTEIN: f64 = 1e-4;

/// Agreement between B on the diagonal and half the scalar curvature.
pub const HALF_SCALAR: f64 = 1e-3;

/// Spread of the determinant-identity residual `s(p)` over sampled points,
/// and relative mismatch of the fitted constant against the origin value.
pub const DET_IDENTITY: f64 = 1e-5;

/// Pullback residual `|D_FS o f - alpha * D|` at truncation order 40.
pub const PULLBACK: f64 = 1e-6;

/// Slack over the analytic bound 2 for the limit statistic `|X|`.
pub const LIMIT_STATISTIC: f64 = 1e-9;

/// Monte Carlo vs closed form: allowed deviation in units of standard error.
pub const MC_SIGMA: f64 = 3.0;

/// Required relative standard error of the Monte Carlo estimate.
pub const MC_REL_STDERR: f64 = 0.01;

/// Relative tolerance of the pole-order ratio test of the divergence guard.
pub const POLE_RATIO: f64 = 0.05;

/// Default finite-difference step for metric and curvature stencils.
pub const FD_STEP: f64 = 1e-4;

/// Condition-number ceiling on the metric before curvature traces.
pub const MAX_CONDITION: f64 = 1e12;

/// Imaginary part allowed on quantities that are real by symmetry.
pub const REAL_IMAG: f64 = 1e-12;
