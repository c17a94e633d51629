use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::operators::{self, OperatorExpr};
use crate::superpoly::{Polynomial, SuperspaceConfig};

use super::basis::{operator_matrix_between, DegreeBasis};
use super::sparse::{SparseMatrix, SparseVector};
use super::subspace::Subspace;

/// A superspace together with memoized bases and operator matrices.
///
/// Shared freely between threads; caches are filled on first use.
pub struct Superspace {
    config: SuperspaceConfig,
    bases: RwLock<HashMap<usize, Arc<DegreeBasis>>>,
    matrices: RwLock<HashMap<(OperatorExpr, usize, i64), Arc<SparseMatrix>>>,
    derived: RwLock<HashMap<(&'static str, usize), Arc<SparseMatrix>>>,
    subspaces: RwLock<HashMap<(&'static str, usize), Arc<Subspace>>>,
}

impl Superspace {
    pub fn new(config: SuperspaceConfig) -> Self {
        Superspace {
            config,
            bases: RwLock::new(HashMap::new()),
            matrices: RwLock::new(HashMap::new()),
            derived: RwLock::new(HashMap::new()),
            subspaces: RwLock::new(HashMap::new()),
        }
    }

    pub fn config(&self) -> &SuperspaceConfig {
        &self.config
    }

    pub fn basis(&self, k: usize) -> Arc<DegreeBasis> {
        if let Some(b) = self.bases.read().expect("cache lock").get(&k) {
            return Arc::clone(b);
        }
        let built = Arc::new(DegreeBasis::new(self.config, k));
        let mut guard = self.bases.write().expect("cache lock");
        Arc::clone(guard.entry(k).or_insert(built))
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis(k).len()
    }

    /// Matrix of `expr` on `𝒫_k`; a negative target degree gives no rows.
    pub fn matrix(&self, expr: &OperatorExpr, k: usize) -> Result<Arc<SparseMatrix>> {
        let shift = expr.degree_shift().ok_or(Error::InhomogeneousDegree)?;
        self.matrix_shifted(expr, k, shift)
    }

    /// As [`Superspace::matrix`] with the degree shift given explicitly, so
    /// that an operator which happens to vanish identically (as `Δ` does
    /// without variables) still gets the right codomain.
    fn matrix_shifted(
        &self,
        expr: &OperatorExpr,
        k: usize,
        shift: i64,
    ) -> Result<Arc<SparseMatrix>> {
        if *expr.config() != self.config {
            return Err(Error::ConfigMismatch {
                left: self.config,
                right: *expr.config(),
            });
        }
        let key = (expr.clone(), k, shift);
        if let Some(m) = self.matrices.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(m));
        }
        let target = k as i64 + shift;
        let domain = self.basis(k);
        let built = if target < 0 {
            SparseMatrix::zeros(0, domain.len())
        } else {
            operator_matrix_between(expr, &domain, &self.basis(target as usize))?
        };
        let mut guard = self.matrices.write().expect("cache lock");
        Ok(Arc::clone(
            guard.entry(key).or_insert_with(|| Arc::new(built)),
        ))
    }

    pub fn laplace(&self, k: usize) -> Arc<SparseMatrix> {
        self.matrix_shifted(&operators::laplace(self.config), k, -2)
            .expect("named operator")
    }

    pub fn r2(&self, k: usize) -> Arc<SparseMatrix> {
        self.matrix_shifted(&operators::r2(self.config), k, 2)
            .expect("named operator")
    }

    pub fn euler(&self, k: usize) -> Arc<SparseMatrix> {
        self.matrix(&operators::euler(self.config), k)
            .expect("named operator")
    }

    pub fn casimir(&self, k: usize) -> Arc<SparseMatrix> {
        self.matrix(&operators::casimir(self.config), k)
            .expect("named operator")
    }

    pub fn lij(&self, i: usize, j: usize, k: usize) -> Result<Arc<SparseMatrix>> {
        self.matrix(&operators::lij(self.config, i, j)?, k)
    }

    /// Memoizes a matrix built from other matrices under `(name, k)`.
    pub fn derived(
        &self,
        name: &'static str,
        k: usize,
        build: impl FnOnce() -> SparseMatrix,
    ) -> Arc<SparseMatrix> {
        if let Some(m) = self.derived.read().expect("cache lock").get(&(name, k)) {
            return Arc::clone(m);
        }
        let built = Arc::new(build());
        let mut guard = self.derived.write().expect("cache lock");
        Arc::clone(guard.entry((name, k)).or_insert(built))
    }

    /// Memoizes a subspace of `𝒫_k` under `(name, k)`.
    pub fn cached_subspace(
        &self,
        name: &'static str,
        k: usize,
        build: impl FnOnce() -> Subspace,
    ) -> Arc<Subspace> {
        if let Some(s) = self.subspaces.read().expect("cache lock").get(&(name, k)) {
            return Arc::clone(s);
        }
        let built = Arc::new(build());
        let mut guard = self.subspaces.write().expect("cache lock");
        Arc::clone(guard.entry((name, k)).or_insert(built))
    }

    /// `ΔR²` on `𝒫_k`.
    pub fn delta_r2(&self, k: usize) -> Arc<SparseMatrix> {
        self.derived("delta_r2", k, || self.laplace(k + 2).mul(&self.r2(k)))
    }

    /// `R²Δ` on `𝒫_k`.
    pub fn r2_delta(&self, k: usize) -> Arc<SparseMatrix> {
        self.derived("r2_delta", k, || {
            if k < 2 {
                SparseMatrix::zeros(self.dim(k), self.dim(k))
            } else {
                self.r2(k - 2).mul(&self.laplace(k))
            }
        })
    }

    /// `ΔR²Δ : 𝒫_k → 𝒫_{k−2}` (no rows when `k < 2`).
    pub fn delta_r2_delta(&self, k: usize) -> Arc<SparseMatrix> {
        self.derived("delta_r2_delta", k, || {
            if k < 2 {
                SparseMatrix::zeros(0, self.dim(k))
            } else {
                self.delta_r2(k - 2).mul(&self.laplace(k))
            }
        })
    }

    /// `R²ΔR² : 𝒫_k → 𝒫_{k+2}`.
    pub fn r2_delta_r2(&self, k: usize) -> Arc<SparseMatrix> {
        self.derived("r2_delta_r2", k, || self.r2(k).mul(&self.delta_r2(k)))
    }

    /// Coordinates of `p` in `𝒫_k`.
    pub fn vector(&self, k: usize, p: &Polynomial) -> Result<SparseVector> {
        self.basis(k).vector(p)
    }

    pub fn polynomial(&self, k: usize, v: &SparseVector) -> Polynomial {
        self.basis(k).polynomial(v)
    }

    /// `Ker_k(expr)`.
    pub fn kernel(&self, expr: &OperatorExpr, k: usize) -> Result<Subspace> {
        Ok(Subspace::kernel(self.config, k, &*self.matrix(expr, k)?))
    }

    /// `expr(𝒫_k)` inside `𝒫_{k+shift}`; `None` when the target degree is
    /// negative.
    pub fn image(&self, expr: &OperatorExpr, k: usize) -> Result<Option<Subspace>> {
        let shift = expr.degree_shift().ok_or(Error::InhomogeneousDegree)?;
        let target = k as i64 + shift;
        if target < 0 {
            return Ok(None);
        }
        Ok(Some(Subspace::image(
            self.config,
            target as usize,
            &*self.matrix(expr, k)?,
        )))
    }

    pub fn span(&self, k: usize, polys: &[Polynomial]) -> Result<Subspace> {
        Subspace::span(&self.basis(k), polys)
    }

    pub fn basis_polynomials(&self, s: &Subspace) -> Vec<Polynomial> {
        s.basis_polynomials(&self.basis(s.degree()))
    }

    pub fn contains(&self, s: &Subspace, p: &Polynomial) -> Result<bool> {
        s.contains(&self.basis(s.degree()), p)
    }
}
