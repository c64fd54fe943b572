//! Truncated canonical embeddings of Cartan-Hartogs domains over the unit
//! ball and the Fubini-Study pullback comparison.
//!
//! For the ball-based family (type `I:1,d`, where the generic norm is
//! `N = 1 - |z|^2` and the genus equals `d + 1`) the weighted Bergman space
//! admits an explicit monomial orthonormal basis. The corresponding embedding
//! sends a point `(z, w)` to the coefficient vector with one component per
//! fiber degree `m` and base multi-index `q`:
//!
//! ```text
//! f_{m,q}(z, w) = sqrt(RF(alpha, m) / m!) * w^m
//!               * sqrt(RF(s_m, |q|) / q!) * z^q,      s_m = mu * (alpha + m)
//! ```
//!
//! (`RF` is the rising factorial and `q!` the multi-factorial; in general the
//! fiber weight is `s_m = (d+1) mu (alpha + m) / genus`, which reduces to
//! `mu (alpha + m)` here). The squared norm telescopes to the reproducing
//! kernel diagonal:
//!
//! ```text
//! sum |f_{m,q}(z, w)|^2 = (N^mu - |w|^2)^{-alpha},
//! ```
//!
//! so the pullback of the Fubini-Study diastasis under the embedding equals
//! `alpha` times the domain diastasis. This module evaluates the embedding
//! truncated at total degree `m + |q| <= T`, bounds the truncation tail with
//! an empirical geometric-ratio estimate, and measures the pullback residual
//! `|D_FS(f(x), f(y)) - alpha * D(x, y)|`.

use crate::domain::{cpow_u, DomainType};
use crate::error::HqError;
use crate::hartogs::{self, CartanHartogsParams, HartogsPoint, PointPair};
use crate::quantization::{factorial, rising_factorial};
use crate::report::{CheckReport, JsonValue};
use crate::{Result, C64};

/// Largest supported truncation degree; rising factorials at higher degrees
/// leave the comfortable range of f64.
pub const MAX_TRUNCATION: u32 = 64;

/// Largest number of monomial components a single embedding may carry.
pub const MAX_COMPONENTS: f64 = 2e6;

/// A truncated embedding vector: one complex component per basis monomial
/// `(m, q)` with `m + |q| <= truncation`, in a fixed deterministic order
/// (total degree ascending, then fiber degree ascending, then reverse
/// lexicographic base indices). The first component is the constant `1`
/// monomial, so the origin maps to `(1, 0, 0, ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    /// Monomial components in the canonical order.
    pub components: Vec<C64>,
    /// Total-degree truncation used to build the vector.
    pub truncation: u32,
    /// Squared norms of the degree blocks, `blocks[t] = sum of |f|^2 over
    /// components of total degree t`; the basis of the tail estimate.
    pub degree_blocks: Vec<f64>,
}

impl EmbeddingVector {
    /// Squared Euclidean norm of the truncated vector.
    pub fn squared_norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Hermitian inner product `<self, other> = sum self_j * conj(other_j)`.
    pub fn inner(&self, other: &EmbeddingVector) -> Result<C64> {
        if self.components.len() != other.components.len() || self.truncation != other.truncation {
            return Err(HqError::Parameter(format!(
                "embedding vectors have mismatched truncations ({} vs {})",
                self.truncation, other.truncation
            )));
        }
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    /// Empirical geometric bound on the squared-norm truncation tail: if the
    /// last two degree blocks decay with ratio `rho < 1`, the tail is bounded
    /// by `S_T * rho / (1 - rho)`. Zero when the top block vanishes exactly
    /// (the series has terminated); infinite when no decay is observed.
    pub fn tail_bound(&self) -> f64 {
        let t = self.degree_blocks.len();
        if t < 2 {
            return f64::INFINITY;
        }
        let last = self.degree_blocks[t - 1];
        let prev = self.degree_blocks[t - 2];
        if last == 0.0 {
            return 0.0;
        }
        if prev <= 0.0 || last >= prev {
            return f64::INFINITY;
        }
        let rho = last / prev;
        last * rho / (1.0 - rho)
    }
}

/// Checks the base is the unit ball `I:1,d` and returns `d`.
fn ball_dim(params: &CartanHartogsParams) -> Result<usize> {
    match params.base.dtype {
        DomainType::TypeI { m: 1, n } => Ok(n),
        other => Err(HqError::UnsupportedBase(format!(
            "explicit embedding bases are available only over the unit ball I:1,d, got {other}"
        ))),
    }
}

/// Appends all multi-indices `q` of length `d` with `|q| = k`, first entry
/// descending (a fixed order shared by every embedding of the same shape).
fn push_multi_indices(d: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if d == 1 {
        prefix.push(k);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=k).rev() {
        prefix.push(first);
        push_multi_indices(d - 1, k - first, prefix, out);
        prefix.pop();
    }
}

fn multi_indices(d: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    push_multi_indices(d, k, &mut Vec::new(), &mut out);
    out
}

/// Number of components `C(t_max + d + 1, d + 1)` as f64.
fn component_count(d: usize, t_max: u32) -> f64 {
    (1..=d + 1).fold(1.0, |acc, i| acc * (t_max as f64 + i as f64) / i as f64)
}

/// Evaluates the truncated embedding of `p` at weight `alpha`.
///
/// The base must be a unit ball `I:1,d`; `alpha` must be positive (so every
/// rising factorial under the square roots is positive) and the truncation
/// within [`MAX_TRUNCATION`].
pub fn embed_truncated(
    params: &CartanHartogsParams,
    alpha: f64,
    p: &HartogsPoint,
    t_max: u32,
) -> Result<EmbeddingVector> {
    let d = ball_dim(params)?;
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(HqError::Parameter(format!(
            "embedding weight must be positive and finite, got {alpha}"
        )));
    }
    if t_max > MAX_TRUNCATION {
        return Err(HqError::Parameter(format!(
            "truncation {t_max} exceeds the supported maximum {MAX_TRUNCATION}"
        )));
    }
    if component_count(d, t_max) > MAX_COMPONENTS {
        return Err(HqError::Parameter(format!(
            "truncation {t_max} over a {d}-dimensional base needs more than {MAX_COMPONENTS:.0} \
             components"
        )));
    }
    if p.z.coords.len() != d {
        return Err(HqError::Parameter(format!(
            "point has {} base coordinates, the ball I:1,{d} needs {d}",
            p.z.coords.len()
        )));
    }

    let mu = params.mu;
    let mut components = Vec::with_capacity(component_count(d, t_max) as usize);
    let mut degree_blocks = vec![0.0; t_max as usize + 1];
    for t in 0..=t_max {
        for m in 0..=t {
            let k = t - m;
            let s_m = mu * (alpha + m as f64);
            let fiber_coeff = rising_factorial(alpha, m) / factorial(m as usize);
            let fiber = cpow_u(p.w, m as u64) * fiber_coeff.sqrt();
            let rf_base = rising_factorial(s_m, k);
            for q in multi_indices(d, k) {
                let q_fact: f64 = q.iter().map(|&qi| factorial(qi as usize)).product();
                let mut z_pow = C64::new(1.0, 0.0);
                for (zi, &qi) in p.z.coords.iter().zip(&q) {
                    z_pow *= cpow_u(*zi, qi as u64);
                }
                let comp = fiber * z_pow * (rf_base / q_fact).sqrt();
                degree_blocks[t as usize] += comp.norm_sqr();
                components.push(comp);
            }
        }
    }
    Ok(EmbeddingVector {
        components,
        truncation: t_max,
        degree_blocks,
    })
}

/// Residual of the squared-norm identity at an interior point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormIdentity {
    /// Truncated squared norm of the embedding.
    pub partial_sum: f64,
    /// Closed-form target `(N^mu - |w|^2)^{-alpha}`.
    pub closed_form: f64,
    /// Relative residual `|partial - closed| / closed`.
    pub residual: f64,
    /// Empirical geometric bound on the omitted tail, relative to the target.
    pub tail_bound: f64,
}

/// Compares the truncated squared norm against `(N^mu - |w|^2)^{-alpha}`.
pub fn norm_identity(
    params: &CartanHartogsParams,
    alpha: f64,
    p: &HartogsPoint,
    t_max: u32,
) -> Result<NormIdentity> {
    let f = hartogs::potential_argument(params, p)?;
    let v = embed_truncated(params, alpha, p, t_max)?;
    let closed_form = f.powf(-alpha);
    let partial_sum = v.squared_norm();
    Ok(NormIdentity {
        partial_sum,
        closed_form,
        residual: (partial_sum - closed_form).abs() / closed_form,
        tail_bound: v.tail_bound() / closed_form,
    })
}

/// Fubini-Study diastasis between the projective classes of two embedding
/// vectors: `log(|u|^2 |v|^2 / |<u,v>|^2)`.
///
/// Orthogonal vectors lie on each other's hyperplane at infinity, where the
/// diastasis is undefined; that case is reported as an error rather than
/// infinity.
pub fn fs_diastasis(u: &EmbeddingVector, v: &EmbeddingVector) -> Result<f64> {
    let nu = u.squared_norm();
    let nv = v.squared_norm();
    if nu <= 0.0 || nv <= 0.0 {
        return Err(HqError::Parameter("embedding vector has zero norm".into()));
    }
    let inner = u.inner(v)?.norm_sqr();
    if inner < 1e-300 * nu * nv {
        return Err(HqError::HyperplaneAtInfinity);
    }
    Ok(nu.ln() + nv.ln() - inner.ln())
}

/// Largest coordinate modulus allowed by the pullback comparison; beyond it
/// the fixed truncation degrees stop dominating the tail.
pub const PULLBACK_COORD_CAP: f64 = 0.6;

fn check_pullback_range(p: &HartogsPoint) -> Result<()> {
    let worst = p.coords().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if worst > PULLBACK_COORD_CAP {
        return Err(HqError::Parameter(format!(
            "pullback comparison requires every coordinate modulus <= {PULLBACK_COORD_CAP}, \
             got {worst:.3}"
        )));
    }
    Ok(())
}

/// Residual `|D_FS(f(x), f(y)) - alpha * D(x, y)|` of the diastasis pullback
/// through the truncated embedding.
///
/// Both points must keep every coordinate modulus at or below
/// [`PULLBACK_COORD_CAP`] so the truncation tail stays negligible.
pub fn pullback_residual(
    params: &CartanHartogsParams,
    alpha: f64,
    pair: &PointPair,
    t_max: u32,
) -> Result<f64> {
    check_pullback_range(&pair.x)?;
    check_pullback_range(&pair.y)?;
    let fx = embed_truncated(params, alpha, &pair.x, t_max)?;
    let fy = embed_truncated(params, alpha, &pair.y, t_max)?;
    let fs = fs_diastasis(&fx, &fy)?;
    let dom = hartogs::diastasis(params, &pair.x, &pair.y)?;
    Ok((fs - alpha * dom).abs())
}

/// Injectivity probe: over all supplied pairs separated by at least
/// `separation` in coordinate distance, the Fubini-Study diastasis between
/// the embedded images must be strictly positive (the projective classes
/// stay distinct). The statistic is the minimum observed diastasis and the
/// check passes when it exceeds the zero bound.
pub fn injectivity_report(
    params: &CartanHartogsParams,
    alpha: f64,
    pairs: &[PointPair],
    t_max: u32,
    separation: f64,
    seed: u64,
) -> Result<CheckReport> {
    let mut min_fs = f64::INFINITY;
    let mut used = 0u64;
    for pair in pairs {
        if pair.x.distance(&pair.y) < separation {
            continue;
        }
        let fx = embed_truncated(params, alpha, &pair.x, t_max)?;
        let fy = embed_truncated(params, alpha, &pair.y, t_max)?;
        min_fs = min_fs.min(fs_diastasis(&fx, &fy)?);
        used += 1;
    }
    if used == 0 {
        return Err(HqError::Sampling(format!(
            "no pair exceeded the separation threshold {separation}"
        )));
    }
    let pass = min_fs.is_finite() && min_fs > 0.0;
    Ok(CheckReport {
        suite: "embedding_injectivity".into(),
        params: vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(params.mu)),
            ("alpha".into(), JsonValue::Float(alpha)),
            ("truncation".into(), JsonValue::UInt(t_max as u64)),
            ("separation".into(), JsonValue::Float(separation)),
        ],
        statistic: min_fs,
        bound: 0.0,
        pass,
        n_samples: used,
        seed,
        details: format!(
            "min Fubini-Study diastasis {min_fs:.6e} over {used} separated pairs (lower bound 0)"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{BasePoint, CartanDomainSpec, DomainType};
    use crate::sampling::{sample_pairs, PointClass};
    use crate::tol;

    fn ball(d: usize, mu: f64) -> CartanHartogsParams {
        CartanHartogsParams::new(
            CartanDomainSpec::new(DomainType::TypeI { m: 1, n: d }).unwrap(),
            mu,
        )
        .unwrap()
    }

    fn pt(z: &[f64], w: f64) -> HartogsPoint {
        HartogsPoint::new(BasePoint::from_re(z), C64::new(w, 0.0))
    }

    #[test]
    fn origin_embeds_to_the_first_basis_vector() {
        let p = ball(1, 1.0);
        let v = embed_truncated(&p, 3.0, &HartogsPoint::origin(&p), 10).unwrap();
        assert_eq!(v.components[0], C64::new(1.0, 0.0));
        assert!(v.components[1..].iter().all(|c| c.norm() == 0.0));
        assert_eq!(v.squared_norm(), 1.0);
        assert_eq!(v.tail_bound(), 0.0);
    }

    #[test]
    fn squared_norm_matches_the_kernel_diagonal() {
        // d = 1, mu = 1, alpha = 3 at (z, w) = (0.5, 0): norm^2 = 0.75^{-3}.
        let p = ball(1, 1.0);
        let ni = norm_identity(&p, 3.0, &pt(&[0.5], 0.0), 40).unwrap();
        let want = 0.75f64.powi(-3);
        assert!(
            (ni.partial_sum - want).abs() < 1e-8 * want,
            "{} vs {want}",
            ni.partial_sum
        );
        assert!(ni.residual < 1e-10);
        assert!(ni.tail_bound < 1e-10 && ni.residual <= ni.tail_bound * 10.0 + 1e-15);

        // A two-dimensional base with a nonzero fiber coordinate.
        let p = ball(2, 1.5);
        let x = HartogsPoint::new(
            BasePoint::new(vec![C64::new(0.3, 0.2), C64::new(-0.1, 0.25)]),
            C64::new(0.2, -0.3),
        );
        let ni = norm_identity(&p, 4.5, &x, 40).unwrap();
        assert!(ni.residual < 1e-9, "residual {}", ni.residual);
    }

    #[test]
    fn truncation_tail_shrinks_with_degree() {
        let p = ball(1, 1.0);
        let x = pt(&[0.5], 0.4);
        let r20 = norm_identity(&p, 3.0, &x, 20).unwrap().residual;
        let r40 = norm_identity(&p, 3.0, &x, 40).unwrap().residual;
        assert!(r40 < r20, "residual must decrease: {r20} -> {r40}");
    }

    #[test]
    fn fs_diastasis_is_symmetric_and_vanishes_on_equal_points() {
        let p = ball(1, 1.0);
        let u = embed_truncated(&p, 3.0, &pt(&[0.3], 0.2), 30).unwrap();
        let v = embed_truncated(&p, 3.0, &pt(&[-0.2], 0.4), 30).unwrap();
        let duv = fs_diastasis(&u, &v).unwrap();
        let dvu = fs_diastasis(&v, &u).unwrap();
        assert!((duv - dvu).abs() < 1e-14);
        assert!(duv > 0.0);
        assert!(fs_diastasis(&u, &u).unwrap().abs() < 1e-12);
    }

    #[test]
    fn orthogonal_vectors_report_hyperplane_at_infinity() {
        let mut u = EmbeddingVector {
            components: vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            truncation: 1,
            degree_blocks: vec![1.0, 0.0],
        };
        let v = EmbeddingVector {
            components: vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            truncation: 1,
            degree_blocks: vec![0.0, 1.0],
        };
        assert!(matches!(
            fs_diastasis(&u, &v),
            Err(HqError::HyperplaneAtInfinity)
        ));
        u.components[1] = C64::new(0.5, 0.0);
        assert!(fs_diastasis(&u, &v).is_ok());
    }

    #[test]
    fn pullback_matches_the_domain_diastasis() {
        // Base-only separation: x at the origin, y displaced along the fiber.
        let p = ball(1, 1.0);
        let pair = PointPair {
            x: pt(&[0.0], 0.0),
            y: pt(&[0.0], 0.5),
        };
        let res = pullback_residual(&p, 3.0, &pair, 40).unwrap();
        assert!(res < tol::PULLBACK, "residual {res}");

        // A generic pair with complex coordinates.
        let pair = PointPair {
            x: HartogsPoint::new(
                BasePoint::new(vec![C64::new(0.3, -0.2)]),
                C64::new(0.1, 0.3),
            ),
            y: HartogsPoint::new(
                BasePoint::new(vec![C64::new(-0.25, 0.1)]),
                C64::new(0.4, 0.0),
            ),
        };
        let res = pullback_residual(&p, 3.0, &pair, 40).unwrap();
        assert!(res < tol::PULLBACK, "residual {res}");
    }

    #[test]
    fn pullback_range_cap_is_enforced() {
        let p = ball(1, 1.0);
        let pair = PointPair {
            x: pt(&[0.7], 0.0),
            y: pt(&[0.0], 0.1),
        };
        assert!(matches!(
            pullback_residual(&p, 3.0, &pair, 30),
            Err(HqError::Parameter(_))
        ));
    }

    #[test]
    fn non_ball_bases_are_rejected() {
        let p = CartanHartogsParams::new(
            CartanDomainSpec::new(DomainType::TypeIV { n: 3 }).unwrap(),
            1.0,
        )
        .unwrap();
        let x = HartogsPoint::origin(&p);
        assert!(matches!(
            embed_truncated(&p, 5.0, &x, 10),
            Err(HqError::UnsupportedBase(_))
        ));
    }

    #[test]
    fn injectivity_probe_passes_on_sampled_pairs() {
        let p = ball(1, 1.0);
        let pairs = sample_pairs(&p, PointClass::Margin, 40, 99).unwrap();
        let report = injectivity_report(&p, 3.0, &pairs, 30, 0.01, 99).unwrap();
        assert!(report.pass, "{}", report.details);
        assert!(report.statistic > 0.0);
        assert!(report.n_samples > 0);
    }

    #[test]
    fn truncation_and_size_guards() {
        let p = ball(1, 1.0);
        let x = HartogsPoint::origin(&p);
        assert!(matches!(
            embed_truncated(&p, 3.0, &x, MAX_TRUNCATION + 1),
            Err(HqError::Parameter(_))
        ));
        let p5 = ball(6, 1.0);
        let x5 = HartogsPoint::origin(&p5);
        assert!(matches!(
            embed_truncated(&p5, 3.0, &x5, 60),
            Err(HqError::Parameter(_))
        ));
    }
}
