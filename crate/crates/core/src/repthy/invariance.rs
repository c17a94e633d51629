use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, Superspace};
use crate::operators::{all_lij, supercommutator_matrix, OperatorExpr};

/// The operators expected to commute with the `osp(m|2n)` action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantOperator {
    Laplace,
    Euler,
    R2,
    Casimir,
}

impl InvariantOperator {
    pub const ALL: [InvariantOperator; 4] = [
        InvariantOperator::Laplace,
        InvariantOperator::Euler,
        InvariantOperator::R2,
        InvariantOperator::Casimir,
    ];

    pub fn degree_shift(self) -> i64 {
        match self {
            InvariantOperator::Laplace => -2,
            InvariantOperator::R2 => 2,
            InvariantOperator::Euler | InvariantOperator::Casimir => 0,
        }
    }

    /// Matrix on `𝒫_k`.
    pub fn matrix(self, space: &Superspace, k: usize) -> Arc<SparseMatrix> {
        match self {
            InvariantOperator::Laplace => space.laplace(k),
            InvariantOperator::Euler => space.euler(k),
            InvariantOperator::R2 => space.r2(k),
            InvariantOperator::Casimir => space.casimir(k),
        }
    }
}

impl fmt::Display for InvariantOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvariantOperator::Laplace => "laplace",
            InvariantOperator::Euler => "euler",
            InvariantOperator::R2 => "r2",
            InvariantOperator::Casimir => "casimir",
        })
    }
}

impl FromStr for InvariantOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laplace" => Ok(InvariantOperator::Laplace),
            "euler" => Ok(InvariantOperator::Euler),
            "r2" => Ok(InvariantOperator::R2),
            "casimir" => Ok(InvariantOperator::Casimir),
            other => Err(Error::UnknownOperator(other.to_string())),
        }
    }
}

/// The first `L_ij` that fails to supercommute with `op` on `𝒫_k`, if any.
pub fn invariance_witness(
    space: &Superspace,
    op: InvariantOperator,
    k: usize,
) -> Option<(usize, usize)> {
    let target = k as i64 + op.degree_shift();
    let before = op.matrix(space, k);
    let d = space.config().num_vars();
    for i in 1..=d {
        for j in i..=d {
            let l_k = space.lij(i, j, k).expect("valid indices");
            // op is even, so the supercommutator is a plain commutator
            let lhs = before.mul(&l_k);
            let rhs = if target < 0 {
                SparseMatrix::zeros(0, space.dim(k))
            } else {
                space
                    .lij(i, j, target as usize)
                    .expect("valid indices")
                    .mul(&before)
            };
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// Whether `op` supercommutes with every `L_ij` on `𝒫_k`.
pub fn check_invariance(space: &Superspace, op: InvariantOperator, k: usize) -> bool {
    invariance_witness(space, op, k).is_none()
}

/// The same test for an arbitrary homogeneous operator expression.
pub fn check_invariance_expr(expr: &OperatorExpr, k: usize) -> Result<bool> {
    for (_, l) in all_lij(*expr.config()) {
        if !supercommutator_matrix(expr, &l, k)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
