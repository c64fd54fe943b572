//! The ε-function of a Cartan-Hartogs metric and its expansion in the weight.
//!
//! For a weight `alpha > d + 1` the reproducing kernel of the weighted Bergman
//! space factors through the ε-function
//!
//! ```text
//! ε(α, x, conj y) = μ^-d · Σ_{k=0..d} [D^k χ̃(d) / k!] · X^{d-k} · RF(α-d-1, k+1),
//! ```
//!
//! where `X = 1 - w_x conj(w_y) N(z_x, conj z_y)^-mu` is the two-point
//! invariant, `RF` is the rising factorial, and `χ̃` is the degree-`d`
//! polynomial
//!
//! ```text
//! χ̃(x) = Π_{i=1..r} RF(μx - γ + 1 + (i-1)a/2, 1 + b + (r-i)a)
//! ```
//!
//! (each Γ-ratio realized as a finite product of `1 + b + (r-i)a` linear
//! factors, so no Γ poles arise at nonpositive arguments). `D^k` is the
//! backward-difference power `D^k χ̃(d) = Σ_j C(k,j) (-1)^j χ̃(d-j)`.
//!
//! As a polynomial in `α`, ε is monic of degree `d+1`:
//!
//! ```text
//! ε(α) = α^{d+1} + B α^d + C(α) α^{d-1},
//! B     = -(d+1)(d+2)/2 + [d (μ(d+1) - γ) / (2μ)] X,
//! ```
//!
//! with `C(α)` bounded for `α ≥ d+2` (remaining coefficients are α-free).
//! The two leading identities pinning this shape are
//!
//! ```text
//! D^d χ̃(d) / d!       = μ^d,
//! D^{d-1} χ̃(d) / (d-1)! = μ^{d-1} d (μ(d+1) - γ) / 2,
//! ```
//!
//! and both are verified numerically by [`leading_identities`]. Coefficients
//! are extracted by exact polynomial algebra (integer convolution of the
//! linear rising-factorial factors), never by fitting.

use crate::error::HqError;
use crate::hartogs::{self, CartanHartogsParams, PointPair};
use crate::report::{CheckReport, JsonValue};
use crate::{tol, Result, C64};

/// Rising factorial `RF(t, k) = t (t+1) ... (t+k-1)` with `k` factors.
pub fn rising_factorial(t: f64, k: u32) -> f64 {
    let mut acc = 1.0;
    for j in 0..k {
        acc *= t + j as f64;
    }
    acc
}

/// Binomial coefficient `C(k, j)` for `j <= k`, as f64 (exact below 2^53).
fn binomial(k: usize, j: usize) -> f64 {
    let j = j.min(k - j);
    let mut acc = 1.0;
    for i in 1..=j {
        acc = acc * ((k - j + i) as f64) / (i as f64);
    }
    acc
}

/// The Γ-ratio polynomial `χ̃(x)` evaluated as a product of linear factors.
pub fn chi_tilde(params: &CartanHartogsParams, x: f64) -> f64 {
    let base = &params.base;
    let (r, a, b) = (base.r, base.a as f64, base.b);
    let mut acc = 1.0;
    for i in 1..=r {
        let start = params.mu * x - base.genus + 1.0 + (i as f64 - 1.0) * a / 2.0;
        let count = 1 + b + ((r - i) as u32) * base.a;
        acc *= rising_factorial(start, count);
    }
    acc
}

/// Backward-difference power `D^k χ̃(d) = Σ_{j=0..k} C(k,j) (-1)^j χ̃(d-j)`.
pub fn dk_chi(params: &CartanHartogsParams, k: usize) -> Result<f64> {
    let d = params.base.d;
    if k > d {
        return Err(HqError::Parameter(format!(
            "difference order k = {k} exceeds the polynomial degree d = {d}"
        )));
    }
    let mut acc = 0.0;
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(k, j) * chi_tilde(params, (d - j) as f64);
    }
    Ok(acc)
}

/// Difference weights `w_k = D^k χ̃(d) / k!` for `k = 0..=d`.
fn chi_diff_weights(params: &CartanHartogsParams) -> Vec<f64> {
    let d = params.base.d;
    let mut kfact = 1.0;
    (0..=d)
        .map(|k| {
            if k > 0 {
                kfact *= k as f64;
            }
            dk_chi(params, k).expect("k <= d by construction") / kfact
        })
        .collect()
}

/// Verifies the two leading identities of the difference weights.
///
/// The report statistic is the larger of the two relative errors
/// (denominator `max(1, |expected|)`, so the exactly-zero right-hand side at
/// `mu = mu0` stays well-defined); the bound is [`tol::LEADING_IDENTITIES`].
pub fn leading_identities(params: &CartanHartogsParams) -> CheckReport {
    let d = params.base.d as f64;
    let mu = params.mu;

    let lead = dk_chi(params, params.base.d).expect("k = d is valid") / factorial(params.base.d);
    let lead_want = mu.powi(params.base.d as i32);
    let err_lead = (lead - lead_want).abs() / lead_want.abs().max(1.0);

    let sub =
        dk_chi(params, params.base.d - 1).expect("k = d-1 is valid") / factorial(params.base.d - 1);
    let sub_want = mu.powi(params.base.d as i32 - 1) * d * params.einstein_gap() / 2.0;
    let err_sub = (sub - sub_want).abs() / sub_want.abs().max(1.0);

    CheckReport::from_statistic(
        "leading_identities",
        vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(mu)),
        ],
        err_lead.max(err_sub),
        tol::LEADING_IDENTITIES,
        2,
        0,
        format!(
            "top: {lead:.17e} vs {lead_want:.17e} (rel {err_lead:.3e}); \
             subleading: {sub:.17e} vs {sub_want:.17e} (rel {err_sub:.3e})"
        ),
    )
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn check_alpha(params: &CartanHartogsParams, alpha: f64) -> Result<()> {
    let threshold = params.base.d as f64 + 1.0;
    // NaN weights must be rejected too, so compare in the negative-safe order.
    if alpha.is_nan() || alpha <= threshold {
        return Err(HqError::Parameter(format!(
            "weight alpha = {alpha} must exceed d + 1 = {threshold}"
        )));
    }
    Ok(())
}

/// Evaluates `ε(α, x, conj y)` at a point pair.
///
/// Diagonal values are real positive; the rising factorial realizes the
/// factorial ratio so any real `α > d + 1` is admitted.
pub fn epsilon_eval(params: &CartanHartogsParams, alpha: f64, pair: &PointPair) -> Result<C64> {
    check_alpha(params, alpha)?;
    let x = hartogs::x_invariant(params, &pair.x, &pair.y)?;
    let d = params.base.d;
    let weights = chi_diff_weights(params);
    let mut acc = C64::new(0.0, 0.0);
    // Accumulate X^{d-k} downward so only one running power is needed.
    let mut xpow = C64::new(1.0, 0.0);
    for k in (0..=d).rev() {
        // entering iteration k, xpow = X^{d-k}
        acc += weights[k] * xpow * rising_factorial(alpha - d as f64 - 1.0, k as u32 + 1);
        xpow *= x;
    }
    Ok(acc * params.mu.powi(-(d as i32)))
}

/// Weighted Bergman kernel `K_α(x, conj y) = ε(α) · e^{α Φ(x, conj y)}`.
pub fn weighted_kernel(params: &CartanHartogsParams, alpha: f64, pair: &PointPair) -> Result<C64> {
    let eps = epsilon_eval(params, alpha, pair)?;
    let phi = hartogs::potential_ext(params, &pair.x, &pair.y)?;
    Ok(eps * (phi * alpha).exp())
}

/// ε as an explicit monic polynomial in the weight `α`, for a fixed pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonPolynomial {
    /// Coefficients in descending powers: `coeffs[k]` multiplies `α^{d+1-k}`,
    /// so `coeffs[0]` is the leading (monic) coefficient and `coeffs[1]` is
    /// the subleading block `B`. Length `d + 2`.
    pub coeffs: Vec<C64>,
    /// The pair the coefficients were extracted at.
    pub pair: PointPair,
}

impl EpsilonPolynomial {
    /// Polynomial degree `d + 1`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at a real weight.
    pub fn eval(&self, alpha: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in &self.coeffs {
            acc = acc * alpha + c;
        }
        acc
    }

    /// The subleading coefficient `B = coeffs[1]`.
    pub fn coefficient_b(&self) -> C64 {
        self.coeffs[1]
    }

    /// The α-free coefficient block below `B` (`coeffs[2..]`, the `C` block).
    pub fn c_block(&self) -> &[C64] {
        &self.coeffs[2..]
    }

    /// `C(α) = (ε(α) - α^{d+1} - B α^d) / α^{d-1}`, evaluated from the block:
    /// `Σ_j coeffs[2+j] α^{-j}`; bounded by `Σ |coeffs[2..]|` for `α ≥ 1`.
    pub fn c_value(&self, alpha: f64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.c_block().iter().rev() {
            acc = acc / alpha + c;
        }
        acc
    }
}

/// Extracts the ε coefficients exactly by expanding the rising factorials as
/// integer convolutions of their linear factors.
pub fn epsilon_alpha_polynomial(
    params: &CartanHartogsParams,
    pair: &PointPair,
) -> Result<EpsilonPolynomial> {
    let x = hartogs::x_invariant(params, &pair.x, &pair.y)?;
    let d = params.base.d;
    let weights = chi_diff_weights(params);
    let mu_scale = params.mu.powi(-(d as i32));

    // Ascending-order accumulator for Σ_k w_k X^{d-k} RF(α-d-1, k+1).
    let mut acc = vec![C64::new(0.0, 0.0); d + 2];
    // rf holds the ascending coefficients of RF(α-d-1, k+1) and is extended
    // by one linear factor (α - (d+1) + k) per iteration; all entries are
    // integers, so the convolution is exact.
    let mut rf = vec![0.0f64; d + 2];
    rf[0] = 1.0;
    let mut rf_len = 1usize;
    let mut xpow = vec![C64::new(1.0, 0.0); d + 1];
    for k in 1..=d {
        xpow[k] = xpow[k - 1] * x;
    }
    for k in 0..=d {
        let shift = k as f64 - (d as f64 + 1.0);
        // rf <- rf * (α + shift)
        for i in (0..rf_len).rev() {
            let v = rf[i];
            rf[i + 1] += v;
            rf[i] = v * shift;
        }
        rf_len += 1;
        let scale = weights[k] * mu_scale;
        for i in 0..rf_len {
            acc[i] += xpow[d - k] * (scale * rf[i]);
        }
    }
    acc.reverse();
    Ok(EpsilonPolynomial {
        coeffs: acc,
        pair: pair.clone(),
    })
}

/// Closed-form subleading coefficient
/// `B = -(d+1)(d+2)/2 + [d (μ(d+1) - γ) / (2μ)] X`.
pub fn coefficient_b(params: &CartanHartogsParams, pair: &PointPair) -> Result<C64> {
    let x = hartogs::x_invariant(params, &pair.x, &pair.y)?;
    let d = params.base.d as f64;
    let constant = -(d + 1.0) * (d + 2.0) / 2.0;
    let slope = d * params.einstein_gap() / (2.0 * params.mu);
    Ok(constant + slope * x)
}

/// Boundedness suite for the expansion coefficients and the two-point
/// invariant.
///
/// Over the supplied interior pairs (including near-boundary stress pairs)
/// and the integer weight set, the report gathers:
///
/// 1. `sup |X|` — the bounded-invariant statistic. This is the report's
///    `statistic`, with bound `2 + `[`tol::LIMIT_STATISTIC`].
/// 2. `sup |B|` over pairs (closed form).
/// 3. `sup |C(α, ·)|` with `C` reconstructed numerically as
///    `(ε - α^{d+1} - B α^d)/α^{d-1}`, reported for the integer weight set
///    and for a real-valued sweep between the same endpoints.
/// 4. Exact α-freeness of the coefficient block: the extracted polynomial
///    re-evaluates to `ε(α)` for every α in the set (relative error ≤ 1e-10).
/// 5. A boundary-growth probe: the least-squares slope of `|X|` against the
///    pair margin `min(F/N^μ)` must satisfy
///    `|slope| · margin-range < sup|X| / 2`.
///
/// The pass flag is the conjunction of 1, 4, 5, and finiteness of 2-3.
pub fn condition_bprime_report(
    params: &CartanHartogsParams,
    alphas: &[f64],
    pairs: &[PointPair],
    seed: u64,
) -> Result<CheckReport> {
    let d = params.base.d;
    if alphas.len() < d + 3 {
        return Err(HqError::Parameter(format!(
            "need at least d + 3 = {} weights, got {}",
            d + 3,
            alphas.len()
        )));
    }
    for &alpha in alphas {
        check_alpha(params, alpha)?;
        if alpha.fract() != 0.0 {
            return Err(HqError::Parameter(format!(
                "the weight set must consist of integers, got {alpha}"
            )));
        }
    }
    if pairs.is_empty() {
        return Err(HqError::Sampling("no pairs supplied".into()));
    }

    let mut sup_x: f64 = 0.0;
    let mut sup_b: f64 = 0.0;
    let mut sup_c_int: f64 = 0.0;
    let mut sup_c_real: f64 = 0.0;
    let mut worst_poly_dev: f64 = 0.0;
    // Accumulators for the |X|-vs-margin least-squares slope.
    let (mut s_m, mut s_mm, mut s_v, mut s_mv) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut margin_lo, mut margin_hi) = (f64::INFINITY, f64::NEG_INFINITY);

    // Real-α sweep: midpoints between consecutive integer weights.
    let real_sweep: Vec<f64> = alphas.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();

    for pair in pairs {
        let x = hartogs::x_invariant(params, &pair.x, &pair.y)?;
        let xabs = x.norm();
        sup_x = sup_x.max(xabs);

        let b = coefficient_b(params, pair)?;
        sup_b = sup_b.max(b.norm());

        let poly = epsilon_alpha_polynomial(params, pair)?;
        for &alpha in alphas {
            let eps = epsilon_eval(params, alpha, pair)?;
            let dev = (poly.eval(alpha) - eps).norm() / eps.norm().max(1.0);
            worst_poly_dev = worst_poly_dev.max(dev);
            let c = (eps - alpha.powi(d as i32 + 1) - b * alpha.powi(d as i32))
                / alpha.powi(d as i32 - 1);
            sup_c_int = sup_c_int.max(c.norm());
        }
        for &alpha in &real_sweep {
            let eps = epsilon_eval(params, alpha, pair)?;
            let c = (eps - alpha.powi(d as i32 + 1) - b * alpha.powi(d as i32))
                / alpha.powi(d as i32 - 1);
            sup_c_real = sup_c_real.max(c.norm());
        }

        let fx = hartogs::potential_argument(params, &pair.x)?;
        let fy = hartogs::potential_argument(params, &pair.y)?;
        let nx = hartogs::fiber_radius_sq(params, &pair.x.z)?;
        let ny = hartogs::fiber_radius_sq(params, &pair.y.z)?;
        let margin = (fx / nx).min(fy / ny);
        margin_lo = margin_lo.min(margin);
        margin_hi = margin_hi.max(margin);
        s_m += margin;
        s_mm += margin * margin;
        s_v += xabs;
        s_mv += margin * xabs;
    }

    let n = pairs.len() as f64;
    let denom = n * s_mm - s_m * s_m;
    let slope = if denom.abs() > 0.0 {
        (n * s_mv - s_m * s_v) / denom
    } else {
        0.0
    };
    let margin_range = margin_hi - margin_lo;
    let trend_ok = (slope * margin_range).abs() < sup_x * 0.5;

    let bound = 2.0 + tol::LIMIT_STATISTIC;
    let coeff_ok = worst_poly_dev <= 1e-10;
    let finite = sup_b.is_finite() && sup_c_int.is_finite() && sup_c_real.is_finite();
    let pass = sup_x <= bound && coeff_ok && trend_ok && finite;

    Ok(CheckReport {
        suite: "condition_bprime".into(),
        params: vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(params.mu)),
            (
                "alphas".into(),
                JsonValue::Array(alphas.iter().map(|&a| JsonValue::Float(a)).collect()),
            ),
        ],
        statistic: sup_x,
        bound,
        pass,
        n_samples: pairs.len() as u64,
        seed,
        details: format!(
            "sup|X| {sup_x:.6e}; sup|B| {sup_b:.6e}; sup|C| integer-weights {sup_c_int:.6e}, \
             real-sweep {sup_c_real:.6e}; polynomial-vs-direct max rel dev {worst_poly_dev:.3e}; \
             |X| margin slope {slope:.3e} over range {margin_range:.3e} (trend ok: {trend_ok})"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{BasePoint, CartanDomainSpec, DomainType};
    use crate::hartogs::HartogsPoint;

    fn params(dt: DomainType, mu: f64) -> CartanHartogsParams {
        CartanHartogsParams::new(CartanDomainSpec::new(dt).unwrap(), mu).unwrap()
    }

    fn disk(mu: f64) -> CartanHartogsParams {
        params(DomainType::TypeI { m: 1, n: 1 }, mu)
    }

    fn diag_pair(p: &HartogsPoint) -> PointPair {
        PointPair {
            x: p.clone(),
            y: p.clone(),
        }
    }

    fn origin_pair(pr: &CartanHartogsParams) -> PointPair {
        diag_pair(&HartogsPoint::origin(pr))
    }

    #[test]
    fn chi_tilde_worked_values() {
        let p = disk(1.0);
        assert_eq!(chi_tilde(&p, 1.0), 0.0);
        assert_eq!(chi_tilde(&p, 0.0), -1.0);

        let p = disk(2.0);
        assert_eq!(chi_tilde(&p, 1.0), 1.0);
        assert_eq!(chi_tilde(&p, 0.0), -1.0);

        // I(2,2), mu = 1: (x-3)(x-2)^2(x-1).
        let p = params(DomainType::TypeI { m: 2, n: 2 }, 1.0);
        assert_eq!(chi_tilde(&p, 4.0), 12.0);
        for x in [0.0, 0.5, 1.0, 2.5, 4.0, 7.0] {
            let want = (x - 3.0) * (x - 2.0) * (x - 2.0) * (x - 1.0);
            assert!(
                (chi_tilde(&p, x) - want).abs() < 1e-12 * want.abs().max(1.0),
                "x={x}"
            );
        }
    }

    #[test]
    fn dk_chi_worked_values() {
        let p = disk(1.0);
        assert_eq!(dk_chi(&p, 1).unwrap(), 1.0);
        assert_eq!(dk_chi(&p, 0).unwrap(), chi_tilde(&p, 1.0));
        let p = disk(2.0);
        assert_eq!(dk_chi(&p, 1).unwrap(), 2.0);

        // I(2,2), mu = 1, d = 4: leading difference d! * 1, next 3! * 2.
        let p = params(DomainType::TypeI { m: 2, n: 2 }, 1.0);
        assert_eq!(dk_chi(&p, 4).unwrap(), 24.0);
        assert_eq!(dk_chi(&p, 3).unwrap(), 12.0);
        assert!(dk_chi(&p, 5).is_err());
    }

    #[test]
    fn leading_identities_hold_across_types() {
        for (dt, mu) in [
            (DomainType::TypeI { m: 1, n: 1 }, 1.0),
            (DomainType::TypeI { m: 1, n: 1 }, 1.7),
            (DomainType::TypeI { m: 2, n: 2 }, 1.0),
            (DomainType::TypeII { n: 2 }, 0.5),
            (DomainType::TypeII { n: 2 }, 0.75), // mu0: zero subleading target
            (DomainType::TypeIII { n: 5 }, 2.0),
            (DomainType::TypeIV { n: 3 }, 0.75),
            (DomainType::TypeIV { n: 4 }, 1.7),
        ] {
            let report = leading_identities(&params(dt, mu));
            assert!(report.pass, "{dt} mu={mu}: {}", report.details);
        }
    }

    #[test]
    fn epsilon_matches_the_hand_worked_disk_values() {
        // mu = 2, alpha = 4, diagonal at the origin (X = 1): ε = 7.
        let p = disk(2.0);
        let pair = origin_pair(&p);
        let eps = epsilon_eval(&p, 4.0, &pair).unwrap();
        assert!((eps - C64::new(7.0, 0.0)).norm() < 1e-12 * 7.0);

        // mu = 1: ε = (α-1)(α-2) independent of the point.
        let p = disk(1.0);
        for re in [0.0, 0.3, -0.5] {
            let pt = HartogsPoint::new(BasePoint::from_re(&[re]), C64::new(0.2, 0.1));
            let pair = diag_pair(&pt);
            for alpha in [3.0, 4.0, 5.5] {
                let eps = epsilon_eval(&p, alpha, &pair).unwrap();
                let want = (alpha - 1.0) * (alpha - 2.0);
                assert!(
                    (eps - C64::new(want, 0.0)).norm() < 1e-12 * want,
                    "alpha={alpha}"
                );
            }
        }
    }

    #[test]
    fn epsilon_diagonal_is_real_and_alpha_threshold_enforced() {
        let p = params(DomainType::TypeIV { n: 3 }, 0.75);
        let pt = HartogsPoint::new(
            BasePoint::new(vec![
                C64::new(0.2, 0.1),
                C64::new(-0.1, 0.05),
                C64::new(0.0, 0.15),
            ]),
            C64::new(0.3, -0.2),
        );
        let pair = diag_pair(&pt);
        let eps = epsilon_eval(&p, 5.0, &pair).unwrap();
        assert!(eps.im.abs() < 1e-12, "im = {}", eps.im);
        assert!(eps.re > 0.0);

        assert!(matches!(
            epsilon_eval(&p, 4.0, &pair),
            Err(HqError::Parameter(_))
        ));
        assert!(matches!(
            epsilon_eval(&p, 3.0, &pair),
            Err(HqError::Parameter(_))
        ));
    }

    #[test]
    fn weighted_kernel_worked_values_and_symmetry() {
        let p = disk(1.0);
        let pair = origin_pair(&p);
        let k = weighted_kernel(&p, 3.0, &pair).unwrap();
        assert!((k - C64::new(2.0, 0.0)).norm() < 1e-13);

        let pt = HartogsPoint::new(BasePoint::from_re(&[0.0]), C64::new(0.5, 0.0));
        let k = weighted_kernel(&p, 3.0, &diag_pair(&pt)).unwrap();
        let want = 2.0 * 0.75f64.powi(-3);
        assert!((k - C64::new(want, 0.0)).norm() < 1e-12 * want);

        let x = HartogsPoint::new(BasePoint::from_re(&[0.3]), C64::new(0.2, -0.3));
        let y = HartogsPoint::new(BasePoint::from_re(&[-0.4]), C64::new(-0.1, 0.2));
        let kxy = weighted_kernel(
            &p,
            4.0,
            &PointPair {
                x: x.clone(),
                y: y.clone(),
            },
        )
        .unwrap();
        let kyx = weighted_kernel(&p, 4.0, &PointPair { x: y, y: x }).unwrap();
        assert!((kxy - kyx.conj()).norm() < 1e-10 * kxy.norm());
    }

    #[test]
    fn polynomial_coefficients_match_the_hand_expansions() {
        // Disk mu = 2, origin: α^2 - 2.5 α + 1.
        let p = disk(2.0);
        let poly = epsilon_alpha_polynomial(&p, &origin_pair(&p)).unwrap();
        let want = [1.0, -2.5, 1.0];
        assert_eq!(poly.coeffs.len(), 3);
        for (c, w) in poly.coeffs.iter().zip(want) {
            assert!((c - C64::new(w, 0.0)).norm() < 1e-14, "{c} vs {w}");
        }

        // Disk mu = 1: (α-1)(α-2) = α^2 - 3α + 2 at any pair.
        let p = disk(1.0);
        let pt = HartogsPoint::new(BasePoint::from_re(&[0.4]), C64::new(0.1, 0.2));
        let poly = epsilon_alpha_polynomial(&p, &diag_pair(&pt)).unwrap();
        for (c, w) in poly.coeffs.iter().zip([1.0, -3.0, 2.0]) {
            assert!((c - C64::new(w, 0.0)).norm() < 1e-13, "{c} vs {w}");
        }

        // Evaluation agrees with the direct sum formula.
        let p = params(DomainType::TypeII { n: 2 }, 1.7);
        let pt = HartogsPoint::new(
            BasePoint::new(vec![
                C64::new(0.2, 0.1),
                C64::new(-0.1, 0.2),
                C64::new(0.1, 0.0),
            ]),
            C64::new(0.25, -0.15),
        );
        let poly = epsilon_alpha_polynomial(&p, &diag_pair(&pt)).unwrap();
        assert_eq!(poly.degree(), p.base.d + 1);
        assert!((poly.coeffs[0] - C64::new(1.0, 0.0)).norm() < 1e-10);
        for alpha in [5.0, 6.0, 9.5] {
            let direct = epsilon_eval(&p, alpha, &diag_pair(&pt)).unwrap();
            assert!(
                (poly.eval(alpha) - direct).norm() < 1e-11 * direct.norm(),
                "alpha = {alpha}"
            );
        }
    }

    #[test]
    fn closed_form_b_matches_the_extracted_coefficient() {
        for (dt, mu) in [
            (DomainType::TypeI { m: 1, n: 1 }, 2.0),
            (DomainType::TypeI { m: 2, n: 2 }, 1.7),
            (DomainType::TypeIV { n: 3 }, 1.0),
        ] {
            let p = params(dt, mu);
            let scale = 0.4 / (p.base.d as f64).sqrt();
            let coords: Vec<C64> = (0..p.base.d)
                .map(|i| C64::new(scale / (i + 1) as f64, -scale / (i + 2) as f64))
                .collect();
            let pt = HartogsPoint::new(BasePoint::new(coords), C64::new(0.2, 0.1));
            let pair = diag_pair(&pt);
            let closed = coefficient_b(&p, &pair).unwrap();
            let extracted = epsilon_alpha_polynomial(&p, &pair).unwrap().coefficient_b();
            assert!(
                (closed - extracted).norm() < tol::B_CROSS_CHECK,
                "{dt} mu={mu}"
            );
        }

        // Worked value: disk mu = 2, X = 1 -> -2.5; mu = 1 diagonal -> -3.
        let p = disk(2.0);
        let b = coefficient_b(&p, &origin_pair(&p)).unwrap();
        assert!((b - C64::new(-2.5, 0.0)).norm() < 1e-14);
        let p = disk(1.0);
        let b = coefficient_b(&p, &origin_pair(&p)).unwrap();
        assert!((b - C64::new(-3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn b_is_constant_at_the_einstein_exponent() {
        let p = params(DomainType::TypeIV { n: 3 }, 0.75);
        let want = -((p.base.d as f64 + 1.0) * (p.base.d as f64 + 2.0)) / 2.0;
        for s in [0.0, 0.1, 0.25] {
            let pt = HartogsPoint::new(
                BasePoint::new(vec![C64::new(s, 0.05), C64::new(-s, 0.0), C64::new(0.0, s)]),
                C64::new(s, -s),
            );
            let b = coefficient_b(&p, &diag_pair(&pt)).unwrap();
            assert_eq!(b, C64::new(want, 0.0));
        }
    }

    #[test]
    fn bprime_report_runs_on_hand_built_pairs() {
        let p = disk(2.0);
        let mut pairs = Vec::new();
        for i in 0..8 {
            let t = i as f64 / 10.0;
            let x = HartogsPoint::new(BasePoint::from_re(&[0.5 - t / 2.0]), C64::new(t / 3.0, 0.1));
            let y = HartogsPoint::new(
                BasePoint::from_re(&[-0.2 + t / 4.0]),
                C64::new(0.0, -t / 3.0),
            );
            pairs.push(PointPair { x, y });
        }
        let alphas: Vec<f64> = (3..=8).map(|k| k as f64).collect();
        let report = condition_bprime_report(&p, &alphas, &pairs, 7).unwrap();
        assert!(report.pass, "{}", report.details);
        assert!(report.statistic <= report.bound);
        assert_eq!(report.n_samples, 8);

        // Too few weights: d + 3 = 4 needed.
        assert!(condition_bprime_report(&p, &[3.0, 4.0, 5.0], &pairs, 7).is_err());
        // Non-integer weights rejected.
        assert!(condition_bprime_report(&p, &[3.5, 4.0, 5.0, 6.0], &pairs, 7).is_err());
    }
}
