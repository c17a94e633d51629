//! Formal operators on superspace polynomials.

mod expr;
mod named;

pub use expr::{derive, Atom, OperatorExpr};
pub use named::{
    all_lij, by_name, casimir, euler, euler_bosonic, euler_fermionic, laplace, laplace_bosonic,
    laplace_fermionic, lij, r2, r2_bosonic, theta2,
};

use crate::error::{Error, Result};
use crate::linalg::{operator_matrix, SparseMatrix};
use crate::rational::Rational;

/// Matrix of `[A, B] = AB − (−1)^{|A||B|} BA` on `𝒫_k`.
pub fn supercommutator_matrix(
    a: &OperatorExpr,
    b: &OperatorExpr,
    k: usize,
) -> Result<SparseMatrix> {
    let pa = a.parity().ok_or(Error::InhomogeneousParity)?;
    let pb = b.parity().ok_or(Error::InhomogeneousParity)?;
    let sa = a.degree_shift().ok_or(Error::InhomogeneousDegree)?;
    let sb = b.degree_shift().ok_or(Error::InhomogeneousDegree)?;
    let ab = compose_matrices(a, b, sb, k)?;
    let ba = compose_matrices(b, a, sa, k)?;
    let sign = Rational::from_integer(pa.koszul_sign(pb));
    Ok(ab.sub(&ba.scale(&sign)))
}

/// Matrix of `outer ∘ inner` on `𝒫_k`.
fn compose_matrices(
    outer: &OperatorExpr,
    inner: &OperatorExpr,
    inner_shift: i64,
    k: usize,
) -> Result<SparseMatrix> {
    let first = operator_matrix(inner, k)?;
    let mid = k as i64 + inner_shift;
    if mid < 0 {
        let target = operator_matrix(&outer.compose(inner)?, k)?;
        return Ok(SparseMatrix::zeros(target.rows(), target.cols()));
    }
    let second = operator_matrix(outer, mid as usize)?;
    Ok(second.mul(&first))
}
