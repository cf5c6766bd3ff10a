use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum CoreError {
    /// Input violates a precondition (wrong degree, parity, zero input, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative numerical method failed to converge at the requested precision.
    #[error("precision error: {context} did not converge at {precision_bits} bits")]
    Precision { context: String, precision_bits: u32 },
    /// Inputs are degenerate (repeated roots, coincident points).
    #[error("degeneracy error: {0}")]
    Degeneracy(String),
    /// A linear system was too ill-conditioned to solve at working precision.
    #[error("conditioning error: numerical rank {rank} of {expected} in {context}")]
    Conditioning {
        context: String,
        rank: usize,
        expected: usize,
    },
    /// A term of the form z^a zbar^b y^{-(b+1)} integrates to a logarithm,
    /// which the closed function class cannot represent.
    #[error("calculus error: logarithmic term in the y-integral (z-power {zpow})")]
    LogObstruction { zpow: i64 },
    /// A y-integral diverges (not integrable at infinity in zbar).
    #[error("calculus error: divergent integral (z-power {zpow}, y-power {ypow})")]
    Divergence { zpow: i64, ypow: i64 },
    /// A dbar-solve hit a cohomological obstruction that should be absent.
    #[error("calculus error: obstructed dbar-solve, polar tail z^-{order} not removable for O({degree})")]
    Obstructed { order: i64, degree: i64 },
    /// Mixed z,zbar singular terms survived where smoothness was required.
    #[error("calculus error: irremovable mixed singularity at z=0 (z^-{zpow} zbar^{zbarpow})")]
    MixedSingularity { zpow: i64, zbarpow: i64 },
}

pub type Result<T> = std::result::Result<T, CoreError>;
