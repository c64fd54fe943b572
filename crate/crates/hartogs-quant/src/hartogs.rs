//! Cartan-Hartogs domains: membership, potential, and Calabi diastasis.
//!
//! The Cartan-Hartogs domain over a base `Omega` with fiber exponent `mu > 0`
//! in the Wallach set is
//!
//! ```text
//! M_Omega(mu) = { (z, w) in Omega x C : |w|^2 < N(z, conj z)^mu },
//! ```
//!
//! with global Kaehler potential `Phi(z, w) = -log(N(z, conj z)^mu - |w|^2)`.
//! The potential extends sesquianalytically to pairs of points,
//!
//! ```text
//! Phi(x, conj y) = -Log(N(z_x, conj z_y)^mu - w_x conj(w_y)),
//! ```
//!
//! (principal branch; exact polynomial power for integer `mu`), and the Calabi
//! diastasis is the branch-free real combination
//!
//! ```text
//! D(x, y) = Phi(x, conj x) + Phi(y, conj y) - Phi(x, conj y) - Phi(y, conj x)
//!         = log |F(x, conj y)|^2 - log F(x, conj x) - log F(y, conj y),
//! ```
//!
//! where `F = N^mu - w conj(w')` is the potential argument. `D >= 0`
//! (equivalently `exp(-D) <= 1`) is the kernel Cauchy-Schwarz bound that makes
//! the coherent-state machinery work, and it is one of the checks this crate
//! verifies by sampling.
//!
//! For non-integer `mu` the principal power `N^mu` is the correct analytic
//! extension only while `Re N > 0` (a simply connected neighborhood of the
//! diagonal values); evaluation outside that region reports a branch error and
//! samplers skip such pairs.

use crate::domain::{self, BasePoint, CartanDomainSpec};
use crate::error::HqError;
use crate::{Result, C64};

/// A Cartan base together with a validated fiber exponent.
#[derive(Debug, Clone)]
pub struct CartanHartogsParams {
    /// Base Cartan domain.
    pub base: CartanDomainSpec,
    /// Fiber exponent; positive and in the Wallach set of the base.
    pub mu: f64,
    /// `Some(k)` when `mu` is exactly the nonnegative integer `k`, enabling the
    /// branch-free polynomial power `N^k`.
    mu_integer: Option<u32>,
}

impl CartanHartogsParams {
    /// Validates `mu > 0` and `mu in W(Omega)` (floating-point Wallach test).
    pub fn new(base: CartanDomainSpec, mu: f64) -> Result<Self> {
        if mu <= 0.0 || !mu.is_finite() {
            return Err(HqError::Parameter(format!(
                "fiber exponent must be positive and finite, got {mu}"
            )));
        }
        if !domain::wallach_contains(&base, mu) {
            return Err(HqError::Parameter(format!(
                "mu = {mu} is not in the Wallach set of {}",
                base.dtype
            )));
        }
        Ok(Self {
            base,
            mu,
            mu_integer: integer_part_exact(mu),
        })
    }

    /// Validates `mu = p/q` with exact integer arithmetic for the Wallach test.
    pub fn new_rational(base: CartanDomainSpec, p: i64, q: i64) -> Result<Self> {
        if p <= 0 || q <= 0 {
            return Err(HqError::Parameter(format!(
                "fiber exponent must be positive, got {p}/{q}"
            )));
        }
        if !domain::wallach_contains_ratio(&base, p, q)? {
            return Err(HqError::Parameter(format!(
                "mu = {p}/{q} is not in the Wallach set of {}",
                base.dtype
            )));
        }
        let mu = p as f64 / q as f64;
        let mu_integer = if p % q == 0 && p / q <= u32::MAX as i64 {
            Some((p / q) as u32)
        } else {
            None
        };
        Ok(Self {
            base,
            mu,
            mu_integer,
        })
    }

    /// Total complex dimension `d + 1` of the Hartogs domain.
    pub fn dim(&self) -> usize {
        self.base.d + 1
    }

    /// Kaehler-Einstein exponent `mu0 = genus / (d + 1)` of the base.
    pub fn mu0(&self) -> f64 {
        self.base.mu0()
    }

    /// Einstein deviation `mu (d + 1) - genus`; zero exactly when `mu = mu0`.
    pub fn einstein_gap(&self) -> f64 {
        self.mu * (self.base.d as f64 + 1.0) - self.base.genus
    }

    /// `x^mu` for a complex `x`: exact polynomial power when `mu` is a
    /// nonnegative integer, principal power otherwise (caller must keep
    /// `Re x > 0` for the latter to agree with the analytic extension).
    pub fn norm_power(&self, x: C64) -> C64 {
        match self.mu_integer {
            Some(k) => cpow_u(x, k as u64),
            None => x.powf(self.mu),
        }
    }

    /// Whether the pair value `n = N(z_x, conj z_y)` is safe to raise to the
    /// `mu`-th power on the analytic branch through the diagonal.
    pub fn branch_safe(&self, n: C64) -> bool {
        self.mu_integer.is_some() || n.re > 0.0
    }
}

use crate::domain::cpow_u;

fn integer_part_exact(mu: f64) -> Option<u32> {
    if mu >= 0.0 && mu <= u32::MAX as f64 && mu.fract() == 0.0 {
        Some(mu as u32)
    } else {
        None
    }
}

/// A point `(z, w)` of a Cartan-Hartogs domain.
#[derive(Debug, Clone, PartialEq)]
pub struct HartogsPoint {
    /// Base point in packed coordinates.
    pub z: BasePoint,
    /// Fiber coordinate.
    pub w: C64,
}

impl HartogsPoint {
    /// Point with the given base point and fiber coordinate.
    pub fn new(z: BasePoint, w: C64) -> Self {
        HartogsPoint { z, w }
    }

    /// Origin `(0, 0)`.
    pub fn origin(params: &CartanHartogsParams) -> Self {
        HartogsPoint {
            z: BasePoint::origin(&params.base),
            w: C64::new(0.0, 0.0),
        }
    }

    /// Builds a point from `d + 1` flat coordinates (base coordinates first,
    /// fiber coordinate last).
    pub fn from_coords(params: &CartanHartogsParams, coords: &[C64]) -> Result<Self> {
        if coords.len() != params.dim() {
            return Err(HqError::Parameter(format!(
                "point has {} coordinates, Hartogs domain over {} has dimension {}",
                coords.len(),
                params.base.dtype,
                params.dim()
            )));
        }
        Ok(HartogsPoint {
            z: BasePoint::new(coords[..coords.len() - 1].to_vec()),
            w: coords[coords.len() - 1],
        })
    }

    /// Flat coordinates: base coordinates followed by the fiber coordinate.
    pub fn coords(&self) -> Vec<C64> {
        let mut v = self.z.coords.clone();
        v.push(self.w);
        v
    }

    /// Euclidean coordinate distance in `C^{d+1}`.
    pub fn distance(&self, other: &HartogsPoint) -> f64 {
        let base: f64 = self
            .z
            .coords
            .iter()
            .zip(&other.z.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (base + (self.w - other.w).norm_sqr()).sqrt()
    }
}

/// An ordered pair of Hartogs points, as consumed by two-point statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct PointPair {
    /// First point.
    pub x: HartogsPoint,
    /// Second point.
    pub y: HartogsPoint,
}

/// Potential argument on the diagonal: `F(x, conj x) = N(z, conj z)^mu - |w|^2`,
/// real and positive exactly on the domain.
pub fn potential_argument(params: &CartanHartogsParams, p: &HartogsPoint) -> Result<f64> {
    let n = domain::generic_norm(&params.base, &p.z, &p.z)?;
    // The diagonal norm is real; guard against a base point outside Omega,
    // where fractional powers stop being meaningful.
    if n.re <= 0.0 || !domain::domain_contains(&params.base, &p.z)? {
        return Err(HqError::Parameter(
            "base point lies outside the Cartan domain".into(),
        ));
    }
    Ok(params.norm_power(C64::new(n.re, 0.0)).re - p.w.norm_sqr())
}

/// Strict membership test: `z in Omega` and `|w|^2 < N(z, conj z)^mu`.
pub fn hartogs_contains(params: &CartanHartogsParams, p: &HartogsPoint) -> Result<bool> {
    if !domain::domain_contains(&params.base, &p.z)? {
        return Ok(false);
    }
    Ok(potential_argument(params, p)? > 0.0)
}

/// Kaehler potential `Phi(p) = -log(N^mu - |w|^2)` at a point of the domain.
pub fn potential(params: &CartanHartogsParams, p: &HartogsPoint) -> Result<f64> {
    let f = potential_argument(params, p)?;
    if f <= 0.0 {
        return Err(HqError::Parameter(
            "point lies outside the Hartogs domain".into(),
        ));
    }
    Ok(-f.ln())
}

/// Sesquianalytic pair value `F(x, conj y) = N(z_x, conj z_y)^mu - w_x conj(w_y)`.
///
/// Errors with a branch report for non-integer `mu` when `Re N <= 0`.
pub fn pair_argument(
    params: &CartanHartogsParams,
    x: &HartogsPoint,
    y: &HartogsPoint,
) -> Result<C64> {
    let n = domain::generic_norm(&params.base, &x.z, &y.z)?;
    if !params.branch_safe(n) {
        return Err(HqError::Singularity(format!(
            "principal power leaves the analytic branch (mu = {}, Re N = {:.3e} <= 0)",
            params.mu, n.re
        )));
    }
    Ok(params.norm_power(n) - x.w * y.w.conj())
}

/// Sesquianalytic potential extension `Phi(x, conj y) = -Log F(x, conj y)`
/// (principal logarithm).
pub fn potential_ext(
    params: &CartanHartogsParams,
    x: &HartogsPoint,
    y: &HartogsPoint,
) -> Result<C64> {
    let f = pair_argument(params, x, y)?;
    if f.norm() < 1e-300 {
        return Err(HqError::Singularity(
            "potential argument vanishes for this pair".into(),
        ));
    }
    Ok(-f.ln())
}

/// Calabi diastasis
/// `D(x, y) = Phi(x, conj x) + Phi(y, conj y) - Phi(x, conj y) - Phi(y, conj x)`.
///
/// The cross terms are conjugates, so the sum collapses to the real,
/// branch-insensitive combination
/// `log(|F(x, conj y)|^2 / (F(x, conj x) F(y, conj y)))`; the branch of
/// `N^mu` inside `F` is still guarded by [`pair_argument`]. A vanishing pair
/// value is a singularity (it cannot occur for interior pairs).
pub fn diastasis(params: &CartanHartogsParams, x: &HartogsPoint, y: &HartogsPoint) -> Result<f64> {
    let fx = potential_argument(params, x)?;
    let fy = potential_argument(params, y)?;
    if fx <= 0.0 || fy <= 0.0 {
        return Err(HqError::Parameter(
            "diastasis requires both points inside the domain".into(),
        ));
    }
    let fxy = pair_argument(params, x, y)?;
    let m2 = fxy.norm_sqr();
    if m2 < 1e-300 {
        return Err(HqError::Singularity(
            "potential argument vanishes for this pair".into(),
        ));
    }
    Ok(m2.ln() - fx.ln() - fy.ln())
}

/// Two-point invariant `X(x, y) = 1 - w_x conj(w_y) N(z_x, conj z_y)^-mu`.
///
/// This is the variable in which the weighted-kernel expansion coefficients
/// are polynomial; on the diagonal `X = F / N^mu in (0, 1]`, and for arbitrary
/// pairs of domain points `|X| < 2`.
pub fn x_invariant(
    params: &CartanHartogsParams,
    x: &HartogsPoint,
    y: &HartogsPoint,
) -> Result<C64> {
    let n = domain::generic_norm(&params.base, &x.z, &y.z)?;
    if !params.branch_safe(n) {
        return Err(HqError::Singularity(format!(
            "principal power leaves the analytic branch (mu = {}, Re N = {:.3e} <= 0)",
            params.mu, n.re
        )));
    }
    let nmu = params.norm_power(n);
    if nmu.norm() < 1e-300 {
        return Err(HqError::Singularity(
            "generic norm vanishes for this pair".into(),
        ));
    }
    Ok(C64::new(1.0, 0.0) - x.w * y.w.conj() / nmu)
}

/// Squared fiber radius over a base point: `N(z, conj z)^mu`.
pub fn fiber_radius_sq(params: &CartanHartogsParams, z: &BasePoint) -> Result<f64> {
    if !domain::domain_contains(&params.base, z)? {
        return Err(HqError::Parameter(
            "base point lies outside the Cartan domain".into(),
        ));
    }
    let n = domain::generic_norm(&params.base, z, z)?;
    Ok(params.norm_power(C64::new(n.re, 0.0)).re)
}
