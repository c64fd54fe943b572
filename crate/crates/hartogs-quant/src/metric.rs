//! Finite-difference Kaehler metric, Ricci curvature, and the determinant
//! identity of Cartan-Hartogs metrics.
//!
//! The metric is the complex Hessian of the global potential,
//! `g_ij = d^2 Phi / (d zeta_i d conj zeta_j)` over the `d + 1` coordinates
//! `(z_1, ..., z_d, w)`, computed with 4-point central differences on the
//! real/imaginary parts and one Richardson extrapolation level
//! (`(4 D_{h/2} - D_h) / 3`, truncation `O(h^4)`). The raw stencil output is
//! projected onto its Hermitian part, which is exact for the true Hessian and
//! averages out the antisymmetric rounding noise.
//!
//! Because the potential satisfies the determinant identity
//!
//! ```text
//! det g = c * N^{mu (d+1) - genus} * (N^mu - |w|^2)^{-(d+2)},   c constant,
//! ```
//!
//! the Ricci tensor `-d d-bar log det g` splits semi-analytically as
//!
//! ```text
//! Ric = -(mu (d+1) - genus) * Hess(log N) - (d+2) * g,
//! ```
//!
//! so only the Hessians of `log N` and `Phi` are differenced (the constant
//! `c` drops out). At `mu = mu0` the first term vanishes and the metric is
//! Kaehler-Einstein with constant `-(d+2)`. [`det_identity_residual`]
//! verifies the identity itself by checking that
//! `s(p) = log det g - [(mu(d+1)-genus) log N - (d+2) log(N^mu - |w|^2)]`
//! is constant across sampled points and reports the fitted `c = exp(mean s)`.

use crate::domain::{self, is_hermitian_positive_definite};
use crate::error::HqError;
use crate::hartogs::{self, CartanHartogsParams, HartogsPoint};
use crate::report::{CheckReport, JsonValue};
use crate::{tol, Result, C64};
use nalgebra::DMatrix;

/// Shifts one real direction: even `u` moves `Re coords[u/2]`, odd moves `Im`.
fn shifted(coords: &[C64], u: usize, h: f64) -> Vec<C64> {
    let mut out = coords.to_vec();
    if u.is_multiple_of(2) {
        out[u / 2] += C64::new(h, 0.0);
    } else {
        out[u / 2] += C64::new(0.0, h);
    }
    out
}

/// Second partial in real directions `u`, `v` by central differences.
fn d2<F>(f: &F, coords: &[C64], u: usize, v: usize, h: f64) -> Result<f64>
where
    F: Fn(&[C64]) -> Result<f64>,
{
    if u == v {
        let plus = f(&shifted(coords, u, h))?;
        let center = f(coords)?;
        let minus = f(&shifted(coords, u, -h))?;
        Ok((plus - 2.0 * center + minus) / (h * h))
    } else {
        let pp = f(&shifted(&shifted(coords, u, h), v, h))?;
        let pm = f(&shifted(&shifted(coords, u, h), v, -h))?;
        let mp = f(&shifted(&shifted(coords, u, -h), v, h))?;
        let mm = f(&shifted(&shifted(coords, u, -h), v, -h))?;
        Ok((pp - pm - mp + mm) / (4.0 * h * h))
    }
}

/// Complex Hessian `H_ij = d^2 f / (d zeta_i d conj zeta_j)` of a real-valued
/// function of `n` complex coordinates, at a single step size.
fn complex_hessian_raw<F>(f: &F, coords: &[C64], n: usize, h: f64) -> Result<DMatrix<C64>>
where
    F: Fn(&[C64]) -> Result<f64>,
{
    let mut m = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    for i in 0..n {
        for j in 0..n {
            let xx = d2(f, coords, 2 * i, 2 * j, h)?;
            let yy = d2(f, coords, 2 * i + 1, 2 * j + 1, h)?;
            let xy = d2(f, coords, 2 * i, 2 * j + 1, h)?;
            let yx = d2(f, coords, 2 * i + 1, 2 * j, h)?;
            m[(i, j)] = C64::new((xx + yy) / 4.0, (xy - yx) / 4.0);
        }
    }
    Ok(m)
}

/// Richardson-extrapolated complex Hessian, projected onto its Hermitian part.
fn complex_hessian<F>(f: &F, coords: &[C64], n: usize, h: f64) -> Result<DMatrix<C64>>
where
    F: Fn(&[C64]) -> Result<f64>,
{
    let coarse = complex_hessian_raw(f, coords, n, h)?;
    let fine = complex_hessian_raw(f, coords, n, h / 2.0)?;
    let extrapolated = (fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0);
    Ok((&extrapolated + extrapolated.adjoint()) * C64::new(0.5, 0.0))
}

/// Kaehler metric `g_ij = d^2 Phi / (d zeta_i d conj zeta_j)` at `p`.
///
/// Requires an interior point whose boundary defect `N^mu - |w|^2` exceeds
/// `4 * step` (so every stencil node stays interior); a result that fails the
/// positive-definiteness check reports a numerical-degeneracy error (step too
/// large or point too close to the boundary).
pub fn metric_tensor(
    params: &CartanHartogsParams,
    p: &HartogsPoint,
    step: f64,
) -> Result<DMatrix<C64>> {
    if step <= 0.0 || !step.is_finite() {
        return Err(HqError::Parameter(format!(
            "step must be positive, got {step}"
        )));
    }
    let defect = hartogs::potential_argument(params, p)?;
    if defect <= 4.0 * step {
        return Err(HqError::Degeneracy(format!(
            "boundary defect {defect:.3e} is below the 4*step margin {:.3e}",
            4.0 * step
        )));
    }
    let n = params.dim();
    let f = |coords: &[C64]| -> Result<f64> {
        hartogs::potential(params, &HartogsPoint::from_coords(params, coords)?)
    };
    let g = complex_hessian(&f, &p.coords(), n, step)?;
    if !is_hermitian_positive_definite(&g) {
        return Err(HqError::Degeneracy(
            "finite-difference metric is not positive definite".into(),
        ));
    }
    Ok(g)
}

/// Ricci tensor and scalar curvature at `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curvature {
    /// Ricci tensor `Ric_ij = -d_i d_jbar log det g`, Hermitian.
    pub ricci: DMatrix<C64>,
    /// Scalar curvature, the holomorphic trace `g^{ij} Ric_ij`.
    pub scalar: f64,
}

/// Computes Ricci and scalar curvature semi-analytically through the
/// determinant identity: `Ric = -(mu(d+1)-genus) Hess(log N) - (d+2) g`.
///
/// `log N` does not involve the fiber coordinate, so its Hessian is computed
/// over the base block and embedded with zero fiber rows. Errors with a
/// numerical degeneracy when the metric condition number exceeds
/// [`tol::MAX_CONDITION`].
pub fn curvature(params: &CartanHartogsParams, p: &HartogsPoint, step: f64) -> Result<Curvature> {
    let g = metric_tensor(params, p, step)?;
    let n = params.dim();
    let d = params.base.d;

    let logn = |coords: &[C64]| -> Result<f64> {
        let z = crate::domain::BasePoint::new(coords.to_vec());
        let nz = domain::generic_norm(&params.base, &z, &z)?;
        if nz.re <= 0.0 {
            return Err(HqError::Singularity(
                "generic norm not positive at a stencil node".into(),
            ));
        }
        Ok(nz.re.ln())
    };
    let hess_base = complex_hessian(&logn, &p.z.coords, d, step)?;
    let mut hess_logn = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    hess_logn.view_mut((0, 0), (d, d)).copy_from(&hess_base);

    let beta = params.einstein_gap();
    let ricci = hess_logn * C64::new(-beta, 0.0) - &g * C64::new(d as f64 + 2.0, 0.0);

    let eigen: Vec<f64> = g.clone().symmetric_eigenvalues().iter().copied().collect();
    let (lo, hi) = eigen
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    if lo <= 0.0 || hi / lo > tol::MAX_CONDITION {
        return Err(HqError::Degeneracy(format!(
            "metric condition number {:.3e} exceeds the safe range",
            hi / lo
        )));
    }
    let g_inv = g
        .clone()
        .try_inverse()
        .ok_or_else(|| HqError::Degeneracy("metric not invertible".into()))?;
    let trace = (g_inv * &ricci).diagonal().sum();
    Ok(Curvature {
        ricci,
        scalar: trace.re,
    })
}

/// Verifies that `s(p) = log det g - [(mu(d+1)-genus) log N - (d+2) log F]`
/// is constant over the supplied points.
///
/// The report statistic is the max-min spread of `s`; the details carry the
/// fitted constant `c = exp(mean s)` and its deviation from the origin value
/// `det g(0)` (at the origin `N = F = 1`, so the identity pins `c` there).
/// The pass flag requires both the spread and the origin deviation to stay
/// within the bound.
pub fn det_identity_residual(
    params: &CartanHartogsParams,
    points: &[HartogsPoint],
    step: f64,
) -> Result<CheckReport> {
    if points.len() < 3 {
        return Err(HqError::Parameter(format!(
            "determinant-identity check needs at least 3 points, got {}",
            points.len()
        )));
    }
    let beta = params.einstein_gap();
    let dp2 = params.base.d as f64 + 2.0;
    let mut s_values = Vec::with_capacity(points.len());
    for p in points {
        let g = metric_tensor(params, p, step)?;
        let det = g.lu().determinant();
        if det.re <= 0.0 {
            return Err(HqError::Degeneracy(
                "metric determinant not positive".into(),
            ));
        }
        let nz = domain::generic_norm(&params.base, &p.z, &p.z)?.re;
        let f = hartogs::potential_argument(params, p)?;
        s_values.push(det.re.ln() - (beta * nz.ln() - dp2 * f.ln()));
    }
    let (lo, hi) = s_values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let spread = hi - lo;
    let mean = s_values.iter().sum::<f64>() / s_values.len() as f64;
    let c_fit = mean.exp();

    let origin = HartogsPoint::origin(params);
    let g0 = metric_tensor(params, &origin, step)?;
    let c_origin = g0.lu().determinant().re;
    let c_dev = (c_fit - c_origin).abs() / c_origin.abs().max(1.0);

    let bound = tol::DET_IDENTITY;
    let pass = spread <= bound && c_dev <= bound;
    Ok(CheckReport {
        suite: "det_identity".into(),
        params: vec![
            (
                "domain".into(),
                JsonValue::Str(params.base.dtype.to_string()),
            ),
            ("mu".into(), JsonValue::Float(params.mu)),
            ("step".into(), JsonValue::Float(step)),
        ],
        statistic: spread,
        bound,
        pass,
        n_samples: points.len() as u64,
        seed: 0,
        details: format!(
            "s spread {spread:.3e}; fitted c {c_fit:.12e}; origin det g {c_origin:.12e} \
             (rel dev {c_dev:.3e})"
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{BasePoint, CartanDomainSpec, DomainType};
    use crate::sampling::{sample_points, PointClass};

    fn params(dt: DomainType, mu: f64) -> CartanHartogsParams {
        CartanHartogsParams::new(CartanDomainSpec::new(dt).unwrap(), mu).unwrap()
    }

    fn disk(mu: f64) -> CartanHartogsParams {
        params(DomainType::TypeI { m: 1, n: 1 }, mu)
    }

    #[test]
    fn disk_metric_at_the_origin_is_diagonal() {
        for mu in [1.0, 2.0] {
            let p = disk(mu);
            let g = metric_tensor(&p, &HartogsPoint::origin(&p), tol::FD_STEP).unwrap();
            assert!(
                (g[(0, 0)] - C64::new(mu, 0.0)).norm() < 1e-7,
                "mu={mu}: {}",
                g[(0, 0)]
            );
            assert!((g[(1, 1)] - C64::new(1.0, 0.0)).norm() < 1e-7);
            assert!(g[(0, 1)].norm() < 1e-7);
        }
    }

    #[test]
    fn metric_is_hermitian_and_positive_definite_at_sampled_points() {
        for (dt, mu) in [
            (DomainType::TypeI { m: 2, n: 2 }, 1.0),
            (DomainType::TypeII { n: 2 }, 0.75),
            (DomainType::TypeIV { n: 3 }, 0.5),
        ] {
            let p = params(dt, mu);
            for pt in sample_points(&p, PointClass::Margin, 4, 17).unwrap() {
                let g = metric_tensor(&p, &pt, tol::FD_STEP).unwrap();
                let asym = (&g - g.adjoint()).norm();
                assert!(asym == 0.0, "{dt}: Hermitian projection must be exact");
                assert!(is_hermitian_positive_definite(&g), "{dt}");
            }
        }
    }

    #[test]
    fn margin_guard_rejects_points_too_close_to_the_boundary() {
        let p = disk(1.0);
        let close = HartogsPoint::new(BasePoint::from_re(&[0.0]), C64::new(0.9999, 0.0));
        assert!(matches!(
            metric_tensor(&p, &close, 1e-3),
            Err(HqError::Degeneracy(_))
        ));
    }

    #[test]
    fn disk_curvature_matches_the_hyperbolic_oracle() {
        // mu = mu0 = 1: Kaehler-Einstein with Ric = -3 g, scalar -6.
        let p = disk(1.0);
        let origin = HartogsPoint::origin(&p);
        let c = curvature(&p, &origin, tol::FD_STEP).unwrap();
        let g = metric_tensor(&p, &origin, tol::FD_STEP).unwrap();
        let dev = (&c.ricci + &g * C64::new(3.0, 0.0)).norm();
        assert!(dev < tol::EINSTEIN, "dev = {dev}");
        assert!(
            (c.scalar + 6.0).abs() < tol::HALF_SCALAR,
            "scalar = {}",
            c.scalar
        );

        // Also away from the origin.
        let pt = HartogsPoint::new(BasePoint::from_re(&[0.3]), C64::new(0.2, 0.1));
        let c = curvature(&p, &pt, tol::FD_STEP).unwrap();
        let g = metric_tensor(&p, &pt, tol::FD_STEP).unwrap();
        let dev = (&c.ricci + &g * C64::new(3.0, 0.0)).norm();
        assert!(dev < tol::EINSTEIN, "dev = {dev}");
    }

    #[test]
    fn disk_metric_and_curvature_match_closed_forms_off_the_critical_weight() {
        // For the disk family with F = N^mu - |w|^2, N = 1 - |z|^2:
        //   g_zz = [mu N^{mu-1} - mu (mu-1) |z|^2 N^{mu-2}] / F
        //          - mu^2 |z|^2 N^{2mu-2} / F^2
        //   g_zw = mu conj(z) w N^{mu-1} / F^2
        //   g_ww = N^mu / F^2
        // and the Ricci decomposition uses Hess(log N)_zz = -N^{-2}.
        let mu = 2.0;
        let p = disk(mu);
        let (z, w) = (C64::new(0.3, -0.1), C64::new(0.25, 0.15));
        let pt = HartogsPoint::new(BasePoint::new(vec![z]), w);
        let nn = 1.0 - z.norm_sqr();
        let f = nn.powf(mu) - w.norm_sqr();
        let g_zz = (mu * nn.powf(mu - 1.0) - mu * (mu - 1.0) * z.norm_sqr() * nn.powf(mu - 2.0))
            / f
            + mu * mu * z.norm_sqr() * nn.powf(2.0 * mu - 2.0) / (f * f);
        let g_zw = z.conj() * w * (mu * nn.powf(mu - 1.0) / (f * f));
        let g_ww = nn.powf(mu) / (f * f);

        let g = metric_tensor(&p, &pt, tol::FD_STEP).unwrap();
        assert!(
            (g[(0, 0)].re - g_zz).abs() < 1e-7,
            "{} vs {g_zz}",
            g[(0, 0)]
        );
        assert!((g[(0, 1)] - g_zw).norm() < 1e-7, "{} vs {g_zw}", g[(0, 1)]);
        assert!(
            (g[(1, 1)].re - g_ww).abs() < 1e-7,
            "{} vs {g_ww}",
            g[(1, 1)]
        );

        // beta = mu (d+1) - genus = 2: Ric = 2 N^{-2} e_zz - 3 g, nontrivial.
        let beta = p.einstein_gap();
        assert_eq!(beta, 2.0);
        let c = curvature(&p, &pt, tol::FD_STEP).unwrap();
        let ric_zz = beta / (nn * nn) - 3.0 * g_zz;
        let ric_zw = -g_zw * 3.0;
        let ric_ww = -3.0 * g_ww;
        assert!(
            (c.ricci[(0, 0)].re - ric_zz).abs() < 1e-6,
            "{} vs {ric_zz}",
            c.ricci[(0, 0)]
        );
        assert!((c.ricci[(0, 1)] - ric_zw).norm() < 1e-6);
        assert!((c.ricci[(1, 1)].re - ric_ww).abs() < 1e-6);
        let det = g_zz * g_ww - g_zw.norm_sqr();
        let scalar_want = beta / (nn * nn) * g_ww / det - 6.0;
        assert!(
            (c.scalar - scalar_want).abs() < 1e-5,
            "{} vs {scalar_want}",
            c.scalar
        );
    }

    #[test]
    fn einstein_property_holds_at_mu0_for_a_matrix_base() {
        // II(2): mu0 = 0.75, d = 3, Einstein constant -(d+2) = -5.
        let p = params(DomainType::TypeII { n: 2 }, 0.75);
        assert_eq!(p.einstein_gap(), 0.0);
        let pt = HartogsPoint::new(
            BasePoint::new(vec![
                C64::new(0.15, 0.1),
                C64::new(-0.1, 0.05),
                C64::new(0.2, 0.0),
            ]),
            C64::new(0.25, -0.2),
        );
        let c = curvature(&p, &pt, tol::FD_STEP).unwrap();
        let g = metric_tensor(&p, &pt, tol::FD_STEP).unwrap();
        let dev = (&c.ricci + &g * C64::new(5.0, 0.0)).norm();
        assert!(dev < tol::EINSTEIN, "dev = {dev}");
    }

    #[test]
    fn det_identity_constant_matches_the_disk_closed_form() {
        // det g = mu * N^{2 mu - 2} * F^{-3} on the disk family, so c = mu.
        for mu in [1.0, 2.0] {
            let p = disk(mu);
            let points = vec![
                HartogsPoint::origin(&p),
                HartogsPoint::new(BasePoint::from_re(&[0.3]), C64::new(0.1, 0.2)),
                HartogsPoint::new(BasePoint::from_re(&[-0.2]), C64::new(0.0, -0.35)),
                HartogsPoint::new(BasePoint::from_re(&[0.1]), C64::new(0.4, 0.0)),
            ];
            let report = det_identity_residual(&p, &points, tol::FD_STEP).unwrap();
            assert!(report.pass, "mu={mu}: {}", report.details);
            assert!(report.statistic < tol::DET_IDENTITY);
            assert!(
                report.details.contains(&format!("fitted c {:.12e}", mu)) || {
                    // The fitted constant should equal mu to well under the bound.
                    let c_fit: f64 = report
                        .details
                        .split("fitted c ")
                        .nth(1)
                        .unwrap()
                        .split(';')
                        .next()
                        .unwrap()
                        .trim()
                        .parse()
                        .unwrap();
                    (c_fit - mu).abs() < 1e-6
                }
            );
        }
    }

    #[test]
    fn too_few_points_is_a_parameter_error() {
        let p = disk(1.0);
        let pts = vec![HartogsPoint::origin(&p); 2];
        assert!(matches!(
            det_identity_residual(&p, &pts, tol::FD_STEP),
            Err(HqError::Parameter(_))
        ));
    }
}
