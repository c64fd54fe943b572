//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by domain constructors, geometric evaluators, and suites.
#[derive(Debug, Clone, Error)]
pub enum HqError {
    /// Invalid constructor or operation parameters (wrong ranges, shape
    /// mismatches, exponents outside the admissible set).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A point lies outside the domain of definition of the requested quantity
    /// (boundary or exterior evaluation of a potential, kernel, or integral).
    #[error("singularity: {0}")]
    Singularity(String),

    /// The requested integral diverges for the supplied exponents.
    #[error("divergent integral: {0}")]
    Divergence(String),

    /// Operation only defined over ball bases `TypeI(1, d)`.
    #[error("unsupported base: {0}")]
    UnsupportedBase(String),

    /// Sampler could not produce the requested points (rejection rate above
    /// 0.999 or an inconsistent configuration).
    #[error("sampling failure: {0}")]
    Sampling(String),

    /// Finite-difference or linear-algebra step lost numerical validity
    /// (non positive-definite metric, condition number above 1e12, step too
    /// large for the boundary margin).
    #[error("numerical degeneracy: {0}")]
    Degeneracy(String),

    /// Fubini-Study distance undefined: the pairing of the two component
    /// vectors vanishes (one lies on the hyperplane at infinity of the other).
    #[error("hyperplane at infinity: pairing of component vectors vanishes")]
    HyperplaneAtInfinity,

    /// Command-line usage error (unknown domain string, malformed flags).
    #[error("usage error: {0}")]
    Usage(String),
}
