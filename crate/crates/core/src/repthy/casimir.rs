use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, SparseMatrix, Subspace, Superspace};
use crate::rational::Rational;
use crate::superpoly::{binomial, SuperspaceConfig};

use super::module::restrict;

/// `C|_V = s·Id + N` with `N = R²Δ|_V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasimirStructure {
    pub scalar: Rational,
    pub nilpotent_rank: usize,
    pub square_zero: bool,
    /// `C|_V − s·Id` equals `R²Δ|_V`.
    pub matches_r2_delta: bool,
}

impl CasimirStructure {
    pub fn holds(&self) -> bool {
        self.square_zero && self.matches_r2_delta
    }
}

/// `−k(M − 2 + k)`.
pub fn casimir_scalar(k: usize, superdimension: i64) -> Rational {
    let k = k as i64;
    Rational::from_integer(-k * (superdimension - 2 + k))
}

/// `None` when `v` is not stable under `C` and `R²Δ`.
pub fn casimir_structure(space: &Superspace, v: &Subspace) -> Option<CasimirStructure> {
    let k = v.degree();
    let s = casimir_scalar(k, space.config().superdimension());
    let c = restrict(v, &space.casimir(k))?;
    let n = restrict(v, &space.r2_delta(k))?;
    let shifted = c.sub(&SparseMatrix::scalar(v.dim(), &s));
    Some(CasimirStructure {
        nilpotent_rank: rank(&shifted),
        square_zero: shifted.mul(&shifted).is_zero(),
        matches_r2_delta: shifted == n,
        scalar: s,
    })
}

/// One term `dim H^b_{k−2ℓ−j} · dim H^f_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingCell {
    pub j: usize,
    pub l: usize,
    pub bosonic_degree: usize,
    pub bosonic_dim: usize,
    pub fermionic_dim: usize,
    pub product: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchingTable {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub cells: Vec<BranchingCell>,
    pub total: usize,
    /// `dim H_k` computed in the full superspace.
    pub harmonic_dim: usize,
}

impl BranchingTable {
    pub fn holds(&self) -> bool {
        self.total == self.harmonic_dim
    }
}

/// `dim H^f_j = C(2n, j) − C(2n, j − 2)`.
pub fn fermionic_harmonic_dim(n: usize, j: usize) -> usize {
    let below = if j >= 2 { binomial(2 * n, j - 2) } else { 0 };
    binomial(2 * n, j).saturating_sub(below)
}

/// Dimension count of `H_k` from its bosonic and fermionic factors, with
/// each factor computed as a kernel in the purely bosonic or purely
/// fermionic superspace.
pub fn branching_dims(config: SuperspaceConfig, k: usize) -> Result<BranchingTable> {
    let (m, n) = (config.m(), config.n());
    if m == 0 {
        return Err(Error::Domain(
            "the bosonic/fermionic branching needs m >= 1".to_string(),
        ));
    }
    let bosonic = Superspace::new(SuperspaceConfig::new(m, 0));
    let fermionic = Superspace::new(SuperspaceConfig::new(0, n));
    let full = Superspace::new(config);
    let mut cells = Vec::new();
    for j in 0..=n.min(k) {
        for l in 0..=(n - j).min((k - j) / 2) {
            let bd = k - 2 * l - j;
            let bosonic_dim = crate::fischer::harmonics(&bosonic, bd).dim();
            let fermionic_dim = crate::fischer::harmonics(&fermionic, j).dim();
            cells.push(BranchingCell {
                j,
                l,
                bosonic_degree: bd,
                bosonic_dim,
                fermionic_dim,
                product: bosonic_dim * fermionic_dim,
            });
        }
    }
    Ok(BranchingTable {
        m,
        n,
        k,
        total: cells.iter().map(|c| c.product).sum(),
        cells,
        harmonic_dim: crate::fischer::harmonics(&full, k).dim(),
    })
}
