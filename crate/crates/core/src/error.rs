//! Error type shared by all modules.

use crate::zygmund::SpaceVariant;
use crate::Complex;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Evaluation requested at a point with `|z| >= 1` (or non-finite).
    #[error("point {z} lies outside the open unit disc")]
    PointOutsideDisc { z: Complex },

    /// A catalog closed form is numerically singular at the requested point.
    #[error("{label} is numerically singular at {z}")]
    EvaluationSingularity { label: String, z: Complex },

    /// A refinement loop stopped without the two finest levels agreeing.
    #[error("{context}: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    ConvergenceFailure {
        context: String,
        residual: f64,
        tolerance: f64,
    },

    /// Out-of-range parameters handed to a constructor.
    #[error("bad spec: {0}")]
    BadSpec(String),

    /// Renormalizing a composite automorphism produced `|a| >= 1`.
    #[error("degenerate composite automorphism: |a| = {a_modulus}")]
    DegenerateComposite { a_modulus: f64 },

    /// A flow sample failed to canonicalize into a disc automorphism.
    #[error("degenerate flow parameters: {0}")]
    DegenerateParameters(String),

    /// A flow denominator collapsed below the working precision floor.
    #[error("flow evaluation numerically singular at {z}")]
    NumericalSingularity { z: Complex },

    /// An operator was applied to a function outside its space.
    #[error("function {label} is not in {variant:?}: {reason}")]
    NotInSpace {
        label: String,
        variant: SpaceVariant,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
