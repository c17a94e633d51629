use thiserror::Error;

use crate::superpoly::SuperspaceConfig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live on different superspaces: {left} vs {right}")]
    ConfigMismatch {
        left: SuperspaceConfig,
        right: SuperspaceConfig,
    },
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("variable index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("polynomial is not homogeneous (degrees {degrees:?})")]
    NotHomogeneous { degrees: Vec<usize> },
    #[error("operator is not parity-homogeneous")]
    InhomogeneousParity,
    #[error("operator has no homogeneous degree shift")]
    InhomogeneousDegree,
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
    #[error("unknown operator `{0}` (expected laplace, euler, r2, casimir or L<i>,<j>)")]
    UnknownOperator(String),
    #[error("outside the domain of validity: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
