//! Catalog of the classical Cartan domains (types I-IV).
//!
//! Each domain is used in its Harish-Chandra realization: a circled convex
//! bounded domain in `C^d` whose geometry is captured by the integer invariants
//! `(d, r, a, b)` and the genus `gamma = (r-1) a + b + 2`:
//!
//! | type     | realization                          | d          | r        | a   | b        |
//! |----------|--------------------------------------|------------|----------|-----|----------|
//! | I(m,n)   | m x n matrices, spectral norm < 1    | m n        | m        | 2   | n - m    |
//! | II(n)    | symmetric n x n, spectral norm < 1   | n(n+1)/2   | n        | 1   | 0        |
//! | III(n)   | skew n x n, spectral norm < 1        | n(n-1)/2   | floor(n/2) | 4 | 0 or 2   |
//! | IV(n)    | Lie ball in C^n                      | n          | 2        | n-2 | 0        |
//!
//! The generic norm `N(z, conj zeta)` is the sesquianalytic polynomial with
//! `N(0, 0) = 1` whose `-gamma` power is (up to the Euclidean volume) the
//! Bergman kernel, `K = N^-gamma / V(Omega)`. Matrix coordinates are packed
//! row-major: type I uses all `m n` entries, type II the upper triangle
//! including the diagonal, type III the strict upper triangle, and type IV is a
//! plain vector in `C^n`.

use crate::error::HqError;
use crate::{tol, Result, C64};
use nalgebra::DMatrix;

/// Classical Cartan domain types with their size parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainType {
    /// `m x n` complex matrices of spectral norm < 1, `1 <= m <= n`.
    TypeI { m: usize, n: usize },
    /// Symmetric `n x n` complex matrices of spectral norm < 1, `n >= 2`.
    TypeII { n: usize },
    /// Skew-symmetric `n x n` complex matrices of spectral norm < 1, `n >= 5`.
    TypeIII { n: usize },
    /// Lie ball in `C^n`, `n >= 3`.
    TypeIV { n: usize },
}

impl std::fmt::Display for DomainType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomainType::TypeI { m, n } => write!(f, "I:{m},{n}"),
            DomainType::TypeII { n } => write!(f, "II:{n}"),
            DomainType::TypeIII { n } => write!(f, "III:{n}"),
            DomainType::TypeIV { n } => write!(f, "IV:{n}"),
        }
    }
}

/// A Cartan domain together with its numeric invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanDomainSpec {
    /// Domain type and size parameters.
    pub dtype: DomainType,
    /// Complex dimension of the ambient space.
    pub d: usize,
    /// Rank.
    pub r: usize,
    /// Root multiplicity `a` (integral for all classical types).
    pub a: u32,
    /// Root multiplicity `b`.
    pub b: u32,
    /// Genus `gamma = (r-1) a + b + 2`.
    pub genus: f64,
    /// Euclidean volume of the realization in packed coordinates.
    pub volume: f64,
}

impl CartanDomainSpec {
    /// Builds the invariant table for a domain type.
    ///
    /// Rejects size parameters outside the classical (irreducible,
    /// non-redundant) ranges: type I needs `1 <= m <= n`, type II `n >= 2`,
    /// type III `n >= 5`, type IV `n >= 3`.
    pub fn new(dtype: DomainType) -> Result<Self> {
        let (d, r, a, b) = match dtype {
            DomainType::TypeI { m, n } => {
                if m < 1 || m > n {
                    return Err(HqError::Parameter(format!(
                        "type I requires 1 <= m <= n, got m={m}, n={n}"
                    )));
                }
                (m * n, m, 2, (n - m) as u32)
            }
            DomainType::TypeII { n } => {
                if n < 2 {
                    return Err(HqError::Parameter(format!(
                        "type II requires n >= 2, got n={n}"
                    )));
                }
                (n * (n + 1) / 2, n, 1, 0)
            }
            DomainType::TypeIII { n } => {
                if n < 5 {
                    return Err(HqError::Parameter(format!(
                        "type III requires n >= 5, got n={n}"
                    )));
                }
                (n * (n - 1) / 2, n / 2, 4, if n % 2 == 0 { 0 } else { 2 })
            }
            DomainType::TypeIV { n } => {
                if n < 3 {
                    return Err(HqError::Parameter(format!(
                        "type IV requires n >= 3, got n={n}"
                    )));
                }
                (n, 2, (n - 2) as u32, 0)
            }
        };
        let genus = ((r - 1) as f64) * (a as f64) + b as f64 + 2.0;
        debug_assert_eq!(d, r * (r - 1) * (a as usize) / 2 + r * (b as usize) + r);
        Ok(CartanDomainSpec {
            dtype,
            d,
            r,
            a,
            b,
            genus,
            volume: euclidean_volume(dtype),
        })
    }

    /// Parses a domain string: `I:m,n`, `II:n`, `III:n`, or `IV:n`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || {
            HqError::Usage(format!(
                "cannot parse domain '{s}' (expected I:m,n | II:n | III:n | IV:n)"
            ))
        };
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        let dtype = match head.trim() {
            "I" => {
                let (ms, ns) = tail.split_once(',').ok_or_else(bad)?;
                DomainType::TypeI {
                    m: ms.trim().parse().map_err(|_| bad())?,
                    n: ns.trim().parse().map_err(|_| bad())?,
                }
            }
            "II" => DomainType::TypeII {
                n: tail.trim().parse().map_err(|_| bad())?,
            },
            "III" => DomainType::TypeIII {
                n: tail.trim().parse().map_err(|_| bad())?,
            },
            "IV" => DomainType::TypeIV {
                n: tail.trim().parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        CartanDomainSpec::new(dtype).map_err(|e| HqError::Usage(e.to_string()))
    }

    /// Kaehler-Einstein fiber exponent `mu0 = genus / (d + 1)` of the
    /// Cartan-Hartogs domain over this base.
    pub fn mu0(&self) -> f64 {
        self.genus / (self.d as f64 + 1.0)
    }
}

/// Superfactorial `prod_{i=1}^{k} i!` in f64.
fn superfactorial(k: usize) -> f64 {
    let mut acc = 1.0;
    let mut fact = 1.0;
    for i in 1..=k {
        fact *= i as f64;
        acc *= fact;
    }
    acc
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Euclidean volume of the realization in packed coordinates.
///
/// Type I is the classical superfactorial ratio; types II-IV follow from the
/// Selberg / Laguerre radial integrals of the singular-value densities
/// (`|u_i - u_j|^a u^b`), with the packed-coordinate scaling for type II.
fn euclidean_volume(dtype: DomainType) -> f64 {
    use std::f64::consts::PI;
    match dtype {
        DomainType::TypeI { m, n } => {
            PI.powi((m * n) as i32) * superfactorial(m - 1) * superfactorial(n - 1)
                / superfactorial(m + n - 1)
        }
        DomainType::TypeII { n } => {
            let mut v = PI.powi((n * (n + 1) / 2) as i32) * 2f64.powi(n as i32);
            for j in 1..=n {
                v *= factorial(j) / factorial(2 * j);
            }
            v
        }
        DomainType::TypeIII { n } => {
            let r = n / 2;
            let b = if n % 2 == 0 { 0 } else { 2 };
            let mut v = PI.powi((n * (n - 1) / 2) as i32);
            for j in 0..r {
                v *= factorial(2 * j) / factorial(b + 1 + 2 * (r + j - 1));
            }
            v
        }
        DomainType::TypeIV { n } => PI.powi(n as i32) / (2f64.powi(n as i32 - 1) * factorial(n)),
    }
}

/// A point of the base domain in packed coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BasePoint {
    /// Packed coordinates; length must equal the dimension `d` of the domain.
    pub coords: Vec<C64>,
}

impl BasePoint {
    /// Point with the given packed coordinates.
    pub fn new(coords: Vec<C64>) -> Self {
        BasePoint { coords }
    }

    /// Origin of a domain.
    pub fn origin(spec: &CartanDomainSpec) -> Self {
        BasePoint {
            coords: vec![C64::new(0.0, 0.0); spec.d],
        }
    }

    /// Point with the given real parts and zero imaginary parts.
    pub fn from_re(re: &[f64]) -> Self {
        BasePoint {
            coords: re.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    fn check_shape(&self, spec: &CartanDomainSpec) -> Result<()> {
        if self.coords.len() != spec.d {
            return Err(HqError::Parameter(format!(
                "point has {} coordinates, domain {} has dimension {}",
                self.coords.len(),
                spec.dtype,
                spec.d
            )));
        }
        Ok(())
    }
}

/// Unpacks coordinates into the matrix realization (types I-III).
fn to_matrix(spec: &CartanDomainSpec, p: &BasePoint) -> DMatrix<C64> {
    let zero = C64::new(0.0, 0.0);
    match spec.dtype {
        DomainType::TypeI { m, n } => DMatrix::from_fn(m, n, |i, j| p.coords[i * n + j]),
        DomainType::TypeII { n } => {
            let mut z = DMatrix::from_element(n, n, zero);
            let mut k = 0;
            for i in 0..n {
                for j in i..n {
                    z[(i, j)] = p.coords[k];
                    z[(j, i)] = p.coords[k];
                    k += 1;
                }
            }
            z
        }
        DomainType::TypeIII { n } => {
            let mut z = DMatrix::from_element(n, n, zero);
            let mut k = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    z[(i, j)] = p.coords[k];
                    z[(j, i)] = -p.coords[k];
                    k += 1;
                }
            }
            z
        }
        DomainType::TypeIV { .. } => unreachable!("type IV has no matrix realization"),
    }
}

/// Exponentiation by squaring on complex numbers (exact polynomial power).
pub(crate) fn cpow_u(base: C64, mut k: u64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            acc *= b;
        }
        b *= b;
        k >>= 1;
    }
    acc
}

/// Positive-definiteness test for a Hermitian matrix via Cholesky pivots.
///
/// Library Cholesky factorizations of complex matrices cannot signal failure
/// (every nonzero complex pivot has a square root), so the strict pivot
/// positivity check is done by hand. The matrix is assumed Hermitian; only its
/// lower triangle is read.
pub(crate) fn is_hermitian_positive_definite(a: &DMatrix<C64>) -> bool {
    let n = a.nrows();
    let mut l = vec![vec![C64::new(0.0, 0.0); n]; n];
    for j in 0..n {
        let mut pivot = a[(j, j)].re;
        for v in &l[j][..j] {
            pivot -= v.norm_sqr();
        }
        // A NaN pivot must also reject the matrix.
        if pivot.is_nan() || pivot <= 0.0 {
            return false;
        }
        let d = pivot.sqrt();
        l[j][j] = C64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for (li, lj) in l[i][..j].iter().zip(&l[j][..j]) {
                s -= li * lj.conj();
            }
            l[i][j] = s / d;
        }
    }
    true
}

/// Coefficients `q_k` of `det(I - t M) = sum_k q_k t^k` from traces of powers
/// of `M` (Newton / Faddeev recursion `k q_k = -sum_i p_i q_{k-i}`).
fn det_pencil_coeffs(m: &DMatrix<C64>) -> Vec<C64> {
    let n = m.nrows();
    let mut acc = m.clone();
    let mut psums = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            acc *= m;
        }
        psums.push(acc.diagonal().sum());
    }
    let mut q = vec![C64::new(1.0, 0.0)];
    for k in 1..=n {
        let mut s = C64::new(0.0, 0.0);
        for i in 1..=k {
            s += psums[i - 1] * q[k - i];
        }
        q.push(-s / (k as f64));
    }
    q
}

/// Generic norm `N(z, conj zeta)` of the domain, sesquianalytic in `(z, zeta)`.
///
/// * Type I: `det(I_m - Z W^*)`.
/// * Type II: `det(I_n - Z W^*)` on the symmetric realization.
/// * Type III: the degree-`r` polynomial square root of `det(I_n - Z W^*)`,
///   extracted from the even-multiplicity spectrum of the pencil as a truncated
///   power-series square root (branch fixed by `N(0, 0) = 1`).
/// * Type IV: `1 - 2 <z, zeta> + (z.z) conj(zeta.zeta)`.
///
/// `N(z, conj z)` is real positive inside the domain, and
/// `N(zeta, conj z) = conj N(z, conj zeta)`.
pub fn generic_norm(spec: &CartanDomainSpec, z: &BasePoint, zeta: &BasePoint) -> Result<C64> {
    z.check_shape(spec)?;
    zeta.check_shape(spec)?;
    let one = C64::new(1.0, 0.0);
    match spec.dtype {
        DomainType::TypeI { m, .. } => {
            let pencil =
                DMatrix::identity(m, m) - to_matrix(spec, z) * to_matrix(spec, zeta).adjoint();
            Ok(pencil.lu().determinant())
        }
        DomainType::TypeII { n } => {
            let pencil =
                DMatrix::identity(n, n) - to_matrix(spec, z) * to_matrix(spec, zeta).adjoint();
            Ok(pencil.lu().determinant())
        }
        DomainType::TypeIII { .. } => {
            let m = to_matrix(spec, z) * to_matrix(spec, zeta).adjoint();
            let q = det_pencil_coeffs(&m);
            // det(I - tM) is an exact square of a degree-r polynomial in t;
            // recover it as the series square root with constant term 1.
            let mut s = vec![one];
            for j in 1..=spec.r {
                let mut cross = C64::new(0.0, 0.0);
                for i in 1..j {
                    cross += s[i] * s[j - i];
                }
                s.push((q[j] - cross) * 0.5);
            }
            Ok(s.iter().sum())
        }
        DomainType::TypeIV { .. } => {
            let pair: C64 = z
                .coords
                .iter()
                .zip(&zeta.coords)
                .map(|(zi, wi)| zi * wi.conj())
                .sum();
            let zz: C64 = z.coords.iter().map(|zi| zi * zi).sum();
            let ww: C64 = zeta.coords.iter().map(|wi| wi * wi).sum();
            Ok(one - 2.0 * pair + zz * ww.conj())
        }
    }
}

/// Strict membership test for the base domain (boundary excluded).
///
/// Matrix types test `I - Z Z^* > 0` (spectral norm < 1) by attempting a
/// Cholesky factorization; type IV tests the two Lie-ball inequalities.
pub fn domain_contains(spec: &CartanDomainSpec, z: &BasePoint) -> Result<bool> {
    z.check_shape(spec)?;
    match spec.dtype {
        DomainType::TypeI { .. } | DomainType::TypeII { .. } | DomainType::TypeIII { .. } => {
            let zm = to_matrix(spec, z);
            let m = zm.nrows();
            let pencil = DMatrix::identity(m, m) - &zm * zm.adjoint();
            Ok(is_hermitian_positive_definite(&pencil))
        }
        DomainType::TypeIV { .. } => {
            let zz: C64 = z.coords.iter().map(|zi| zi * zi).sum();
            let n2: f64 = z.coords.iter().map(|zi| zi.norm_sqr()).sum();
            Ok(zz.norm() < 1.0 && 1.0 - 2.0 * n2 + zz.norm_sqr() > 0.0)
        }
    }
}

/// Largest `t > 0` such that `t * z` stays in the domain (boundary radius
/// along the ray through `z`). Returns `+inf` for the zero direction.
pub fn boundary_radius(spec: &CartanDomainSpec, z: &BasePoint) -> Result<f64> {
    z.check_shape(spec)?;
    let norm2: f64 = z.coords.iter().map(|c| c.norm_sqr()).sum();
    if norm2 == 0.0 {
        return Ok(f64::INFINITY);
    }
    match spec.dtype {
        DomainType::TypeI { .. } | DomainType::TypeII { .. } | DomainType::TypeIII { .. } => {
            // sigma_max(z) by bisection on positivity of I - t^2 Z Z^*:
            // robust, deterministic, and cheap at these sizes.
            let zm = to_matrix(spec, z);
            let m = zm.nrows();
            let gram = &zm * zm.adjoint();
            let id = DMatrix::<C64>::identity(m, m);
            let inside =
                |t: f64| is_hermitian_positive_definite(&(&id - &gram * C64::new(t * t, 0.0)));
            // sigma_max >= ||Z||_F / sqrt(rank), rank <= nrows, gives a finite
            // upper bracket for the boundary crossing.
            let mut lo = 0.0f64;
            let mut hi = (m as f64).sqrt() / zm.norm() * 1.0000001;
            debug_assert!(inside(lo));
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if inside(mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        }
        DomainType::TypeIV { .. } => {
            let zz: C64 = z.coords.iter().map(|zi| zi * zi).sum();
            let azz = zz.norm();
            // Along t*z the defect is 1 - 2 t^2 |z|^2 + t^4 |z.z|^2; the first
            // positive root and the |t^2 z.z| < 1 constraint bound the ray.
            let quartic_root = if azz > 0.0 {
                let disc = (norm2 * norm2 - azz * azz).max(0.0).sqrt();
                ((norm2 - disc) / (azz * azz)).sqrt()
                // norm2 >= azz by Cauchy-Schwarz, so this root is real.
            } else {
                (1.0 / (2.0 * norm2)).sqrt()
            };
            let lie_root = if azz > 0.0 {
                1.0 / azz.sqrt()
            } else {
                f64::INFINITY
            };
            Ok(quartic_root.min(lie_root))
        }
    }
}

/// Bergman kernel `K(z, conj zeta) = N(z, conj zeta)^-genus / V(Omega)`.
///
/// Errors with a singularity if the generic norm vanishes (only possible on
/// or outside the boundary).
pub fn bergman_kernel(spec: &CartanDomainSpec, z: &BasePoint, zeta: &BasePoint) -> Result<C64> {
    let n = generic_norm(spec, z, zeta)?;
    if n.norm() < 1e-300 {
        return Err(HqError::Singularity(
            "generic norm vanishes; Bergman kernel undefined".into(),
        ));
    }
    // The genus is a positive integer, so N^-genus is the reciprocal of a
    // polynomial power: exact on every branch.
    Ok((cpow_u(n, spec.genus as u64) * spec.volume).inv())
}

/// Wallach set membership: `mu in {0, a/2, ..., (r-1) a/2} union ((r-1) a/2, inf)`.
///
/// Floating-point input is compared to the discrete points with tolerance
/// [`tol::WALLACH`]; see [`wallach_contains_ratio`] for the exact path.
pub fn wallach_contains(spec: &CartanDomainSpec, mu: f64) -> bool {
    if !mu.is_finite() || mu < -tol::WALLACH {
        return false;
    }
    let half_a = spec.a as f64 / 2.0;
    let top = (spec.r as f64 - 1.0) * half_a;
    if mu >= top - tol::WALLACH {
        return true;
    }
    (0..spec.r).any(|j| (mu - j as f64 * half_a).abs() <= tol::WALLACH)
}

/// Exact Wallach membership for rational `mu = p/q` (`q > 0`).
///
/// Uses integer arithmetic only: `p/q` is a discrete point iff `2 p r' = j q a`
/// for some integer `0 <= j <= r-1`; the continuous part is `p/q > (r-1) a/2`.
pub fn wallach_contains_ratio(spec: &CartanDomainSpec, p: i64, q: i64) -> Result<bool> {
    if q <= 0 {
        return Err(HqError::Parameter(format!(
            "denominator must be positive, got {q}"
        )));
    }
    if p < 0 {
        return Ok(false);
    }
    let a = spec.a as i64;
    let r = spec.r as i64;
    // continuous part: p/q > (r-1) a / 2  <=>  2 p > (r-1) a q
    if 2 * p >= (r - 1) * a * q {
        return Ok(true);
    }
    // discrete points j a/2, j = 0..r-1: p/q == j a/2  <=>  2 p == j a q
    for j in 0..r {
        if 2 * p == j * a * q {
            return Ok(true);
        }
    }
    Ok(false)
}
