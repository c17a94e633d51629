//! Exact computations with polynomials on the superspace ℝ^{m|2n}: harmonic
//! analysis, the Fischer decomposition and its `osp(m|2n)` structure.

pub mod error;
pub mod fischer;
pub mod linalg;
pub mod operators;
pub mod rational;
pub mod repthy;
pub mod superpoly;

pub use error::{Error, Result};
pub use rational::Rational;
pub use superpoly::{Monomial, Parity, Polynomial, SuperspaceConfig};
