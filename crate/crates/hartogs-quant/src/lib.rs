//! Geometry and quantization data of Cartan-Hartogs domains.
//!
//! A Cartan-Hartogs domain is the Hartogs-type domain
//!
//! ```text
//! M_Omega(mu) = { (z, w) in Omega x C : |w|^2 < N(z, conj z)^mu },
//! ```
//!
//! built over an irreducible bounded symmetric domain `Omega` (a Cartan domain of
//! one of the classical types I-IV in its Harish-Chandra realization) with generic
//! norm `N` and a positive fiber exponent `mu` in the Wallach set `W(Omega)`. It
//! carries the Kaehler metric `g(mu)` with global potential
//!
//! ```text
//! Phi(z, w) = -log(N(z, conj z)^mu - |w|^2),
//! ```
//!
//! which is Kaehler-Einstein exactly at `mu0 = genus / (d + 1)` where `d` is the
//! complex dimension of the base.
//!
//! The crate computes, over all four classical base types:
//!
//! * domain invariants `(d, r, a, b, genus)`, generic norms, Bergman kernels,
//!   Euclidean volumes, and Wallach-set membership ([`domain`]);
//! * the sesquianalytic potential extension, Calabi diastasis, and the finite
//!   difference metric / Ricci / scalar curvature machinery, including the
//!   determinant identity `det g = c * N^(mu(d+1)-genus) * (N^mu-|w|^2)^-(d+2)`
//!   ([`hartogs`], [`metric`]);
//! * the rational function `epsilon(alpha)` attached to the weighted kernels
//!   `K_alpha = epsilon * exp(alpha * Phi)`, its exact expansion
//!   `alpha^(d+1) + B alpha^d + C alpha^(d-1)`, and boundedness reports for the
//!   quantization conditions ([`quantization`]);
//! * truncated coherent-state embeddings into projective space over ball bases,
//!   Fubini-Study diastasis, and the pullback identity `D_FS o f = alpha * D`
//!   ([`embedding`]);
//! * Monte Carlo and closed-form evaluation of the weighted Bergman norm integral
//!   `int (N^mu - |w|^2)^(alpha-(d+2)) dV` ([`integration`]);
//! * deterministic seeded samplers and the orchestrated verification suite behind
//!   the `hartogs-quant` binary ([`sampling`], [`suite`], [`report`]).
//!
//! Every sampling operation takes an explicit seed and is deterministic for a
//! fixed seed regardless of shard count or thread count (`HARTOGS_QUANT_THREADS`
//! caps the worker pool). All numeric tolerances live in [`tol`].

pub mod domain;
pub mod embedding;
pub mod error;
pub mod hartogs;
pub mod integration;
pub mod metric;
pub mod quantization;
pub mod report;
pub mod sampling;
pub mod suite;
pub mod tol;

pub use domain::{BasePoint, CartanDomainSpec, DomainType};
pub use error::HqError;
pub use hartogs::{CartanHartogsParams, HartogsPoint, PointPair};
pub use quantization::EpsilonPolynomial;
pub use report::CheckReport;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// `Result` alias with the crate error type.
pub type Result<T> = std::result::Result<T, HqError>;
