use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::operators::OperatorExpr;
use crate::superpoly::{monomials_of_degree, Monomial, Polynomial, SuperspaceConfig};

use super::sparse::{SparseMatrix, SparseVector};

/// The canonical monomial basis of `𝒫_k`.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    config: SuperspaceConfig,
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(config: SuperspaceConfig, degree: usize) -> Self {
        let monomials = monomials_of_degree(&config, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        DegreeBasis {
            config,
            degree,
            monomials,
            index,
        }
    }

    pub fn config(&self) -> &SuperspaceConfig {
        &self.config
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial lying in `𝒫_k`.
    pub fn vector(&self, p: &Polynomial) -> Result<SparseVector> {
        if *p.config() != self.config {
            return Err(Error::ConfigMismatch {
                left: self.config,
                right: *p.config(),
            });
        }
        let mut entries = Vec::with_capacity(p.num_terms());
        for (m, c) in p.terms() {
            match self.index_of(m) {
                Some(i) => entries.push((i, c.clone())),
                None => {
                    let mut degrees: Vec<usize> = p.degrees().into_iter().collect();
                    if !degrees.contains(&self.degree) {
                        degrees.push(self.degree);
                        degrees.sort_unstable();
                    }
                    return Err(Error::NotHomogeneous { degrees });
                }
            }
        }
        Ok(SparseVector::from_pairs(entries))
    }

    pub fn polynomial(&self, v: &SparseVector) -> Polynomial {
        Polynomial::from_terms(
            self.config,
            v.entries()
                .iter()
                .map(|(i, c)| (self.monomials[*i].clone(), c.clone())),
        )
    }
}

/// Matrix of `expr` between two given bases (columns: domain).
pub fn operator_matrix_between(
    expr: &OperatorExpr,
    domain: &DegreeBasis,
    codomain: &DegreeBasis,
) -> Result<SparseMatrix> {
    let shift = expr.degree_shift().ok_or(Error::InhomogeneousDegree)?;
    if domain.config() != expr.config() || codomain.config() != expr.config() {
        return Err(Error::ConfigMismatch {
            left: *expr.config(),
            right: *domain.config(),
        });
    }
    if !expr.is_zero_expr() && domain.degree() as i64 + shift != codomain.degree() as i64 {
        return Err(Error::InhomogeneousDegree);
    }
    let expanded = expr.expand();
    let columns = domain
        .monomials()
        .iter()
        .map(|m| {
            let pairs = expanded
                .apply_monomial(m)
                .into_iter()
                .map(|(c, image)| (codomain.index_of(&image).expect("degree checked"), c))
                .collect();
            SparseVector::from_pairs(pairs)
        })
        .collect();
    Ok(SparseMatrix::from_columns(codomain.len(), columns))
}

/// Matrix of `expr : 𝒫_k → 𝒫_{k+shift}` in canonical bases. A negative
/// target degree gives a matrix with no rows.
pub fn operator_matrix(expr: &OperatorExpr, k: usize) -> Result<SparseMatrix> {
    let shift = expr.degree_shift().ok_or(Error::InhomogeneousDegree)?;
    let domain = DegreeBasis::new(*expr.config(), k);
    let target = k as i64 + shift;
    if target < 0 {
        return Ok(SparseMatrix::zeros(0, domain.len()));
    }
    let codomain = DegreeBasis::new(*expr.config(), target as usize);
    operator_matrix_between(expr, &domain, &codomain)
}
