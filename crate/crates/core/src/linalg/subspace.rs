use std::fmt;

use crate::error::{Error, Result};
use crate::superpoly::{dim_homogeneous, Polynomial, SuperspaceConfig};

use super::basis::DegreeBasis;
use super::echelon::RowSpace;
use super::sparse::{SparseMatrix, SparseVector};

/// A subspace of `𝒫_k`, stored as the canonical reduced row echelon form of
/// coordinate vectors in the monomial basis. Equal subspaces have identical
/// representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    config: SuperspaceConfig,
    degree: usize,
    space: RowSpace,
}

impl Subspace {
    pub fn new(config: SuperspaceConfig, degree: usize, space: RowSpace) -> Self {
        assert_eq!(
            space.ncols(),
            dim_homogeneous(&config, degree),
            "row space width"
        );
        Subspace {
            config,
            degree,
            space,
        }
    }

    pub fn zero(config: SuperspaceConfig, degree: usize) -> Self {
        Self::new(
            config,
            degree,
            RowSpace::zero(dim_homogeneous(&config, degree)),
        )
    }

    pub fn whole(config: SuperspaceConfig, degree: usize) -> Self {
        Self::new(
            config,
            degree,
            RowSpace::full(dim_homogeneous(&config, degree)),
        )
    }

    pub fn from_vectors(config: SuperspaceConfig, degree: usize, vectors: &[SparseVector]) -> Self {
        let width = dim_homogeneous(&config, degree);
        Self::new(config, degree, RowSpace::from_rows(width, vectors))
    }

    /// The span of homogeneous degree-`k` polynomials.
    pub fn span(basis: &DegreeBasis, polys: &[Polynomial]) -> Result<Self> {
        let vectors = polys
            .iter()
            .map(|p| basis.vector(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vectors(
            *basis.config(),
            basis.degree(),
            &vectors,
        ))
    }

    /// `{v ∈ 𝒫_k : Mx·v = 0}` for a matrix with columns indexed by `𝒫_k`.
    pub fn kernel(config: SuperspaceConfig, degree: usize, mx: &SparseMatrix) -> Self {
        Self::new(config, degree, kernel(mx))
    }

    /// The column space of `mx`, read as a subspace of `𝒫_k`.
    pub fn image(config: SuperspaceConfig, degree: usize, mx: &SparseMatrix) -> Self {
        Self::new(config, degree, image(mx))
    }

    pub fn config(&self) -> &SuperspaceConfig {
        &self.config
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.space
    }

    pub fn basis_vectors(&self) -> &[SparseVector] {
        self.space.rows()
    }

    pub fn pivots(&self) -> &[usize] {
        self.space.pivots()
    }

    pub fn basis_polynomials(&self, basis: &DegreeBasis) -> Vec<Polynomial> {
        self.check_basis(basis);
        self.space
            .rows()
            .iter()
            .map(|v| basis.polynomial(v))
            .collect()
    }

    fn check_basis(&self, basis: &DegreeBasis) {
        assert!(
            *basis.config() == self.config && basis.degree() == self.degree,
            "basis of a different 𝒫_k"
        );
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.config != other.config || self.degree != other.degree {
            Err(Error::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    pub fn contains_vector(&self, v: &SparseVector) -> bool {
        self.space.contains(v)
    }

    pub fn contains(&self, basis: &DegreeBasis, p: &Polynomial) -> Result<bool> {
        self.check_basis(basis);
        Ok(self.space.contains(&basis.vector(p)?))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace {
            config: self.config,
            degree: self.degree,
            space: self.space.sum(&other.space),
        })
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace {
            config: self.config,
            degree: self.degree,
            space: self.space.intersect(&other.space),
        })
    }

    /// Whether `self ∩ other = 0`.
    pub fn is_direct(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.space.sum(&other.space).dim() == self.dim() + other.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.space.is_subspace_of(&other.space))
    }

    /// Image under a linear map `𝒫_k → 𝒫_target`.
    pub fn map(&self, mx: &SparseMatrix, target_degree: usize) -> Subspace {
        assert_eq!(mx.cols(), self.ambient_dim(), "matrix domain");
        let images: Vec<SparseVector> = self.space.rows().iter().map(|v| mx.mul_vec(v)).collect();
        Subspace::from_vectors(self.config, target_degree, &images)
    }

    /// Whether `mx` maps the subspace into itself.
    pub fn is_invariant_under(&self, mx: &SparseMatrix) -> bool {
        self.space
            .rows()
            .iter()
            .all(|v| self.space.contains(&mx.mul_vec(v)))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace[{} k={} dim {}/{}]",
            self.config,
            self.degree,
            self.dim(),
            self.ambient_dim()
        )
    }
}

/// Null space of a matrix, as a subspace of its column index space.
pub fn kernel(mx: &SparseMatrix) -> RowSpace {
    RowSpace::from_rows(mx.cols(), &mx.row_vectors()).annihilator()
}

/// Column space of a matrix.
pub fn image(mx: &SparseMatrix) -> RowSpace {
    RowSpace::from_rows(mx.rows(), mx.columns())
}

pub fn rank(mx: &SparseMatrix) -> usize {
    image(mx).dim()
}
