//! Exact linear algebra on the homogeneous spaces `𝒫_k`.

mod basis;
mod echelon;
pub mod modp;
mod space;
mod sparse;
mod subspace;

pub use basis::{operator_matrix, operator_matrix_between, DegreeBasis};
pub use echelon::{linear_relations, rref_naive, EchelonBuilder, RowSpace, SpanSolver};
pub use space::Superspace;
pub use sparse::{SparseMatrix, SparseVector};
pub use subspace::{image, kernel, rank, Subspace};

use crate::error::Result;
use crate::superpoly::Polynomial;

/// Coefficients expressing `target` in the span of `vectors` (all in one
/// `𝒫_k`), or `None` if it lies outside. Unique when the vectors are
/// independent.
pub fn solve_in_span(
    vectors: &[Polynomial],
    target: &Polynomial,
) -> Result<Option<Vec<crate::Rational>>> {
    let config = *target.config();
    let degree = vectors
        .iter()
        .chain(std::iter::once(target))
        .find_map(Polynomial::homogeneous_degree)
        .unwrap_or(0);
    let basis = DegreeBasis::new(config, degree);
    let vs = vectors
        .iter()
        .map(|p| basis.vector(p))
        .collect::<Result<Vec<_>>>()?;
    let t = basis.vector(target)?;
    Ok(SpanSolver::new(basis.len(), &vs).solve(&t))
}
