//! The ℤ₂-graded polynomial algebra on ℝ^{m|2n}.

mod config;
mod monomial;
mod parse;
mod polynomial;

pub use config::{Parity, SuperspaceConfig, MAX_FERMIONIC_PAIRS};
pub use monomial::{monomials_of_degree, Monomial};
pub use polynomial::{binomial, dim_homogeneous, Polynomial};
