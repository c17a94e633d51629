use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{image, SpanSolver, SparseVector, Subspace, Superspace};
use crate::rational::Rational;

use super::exceptional::{c_constant, is_nonpositive_even, ExceptionalIndexSet};

/// `H_k = Ker_k Δ`.
pub fn harmonics(space: &Superspace, k: usize) -> Arc<Subspace> {
    space.cached_subspace("harmonics", k, || {
        Subspace::kernel(*space.config(), k, &space.laplace(k))
    })
}

/// `H̃_k = Ker_k(ΔR²Δ)`.
pub fn tilde_harmonics(space: &Superspace, k: usize) -> Arc<Subspace> {
    space.cached_subspace("tilde_harmonics", k, || {
        Subspace::kernel(*space.config(), k, &space.delta_r2_delta(k))
    })
}

/// `Ker_k(ΔR²)`.
pub fn kernel_delta_r2(space: &Superspace, k: usize) -> Arc<Subspace> {
    space.cached_subspace("kernel_delta_r2", k, || {
        Subspace::kernel(*space.config(), k, &space.delta_r2(k))
    })
}

/// `H⁰_k = R² Ker_{k−2}(ΔR²)`; zero for `k < 2`.
pub fn h0(space: &Superspace, k: usize) -> Arc<Subspace> {
    space.cached_subspace("h0", k, || {
        if k < 2 {
            Subspace::zero(*space.config(), k)
        } else {
            kernel_delta_r2(space, k - 2).map(&space.r2(k - 2), k)
        }
    })
}

/// `R^{2e} S` for a subspace `S ⊆ 𝒫_d`.
pub fn r2_power_image(space: &Superspace, s: &Subspace, e: usize) -> Subspace {
    let mut cur = s.clone();
    for _ in 0..e {
        let d = cur.degree();
        cur = cur.map(&space.r2(d), d + 2);
    }
    cur
}

fn apply_r2_power(space: &Superspace, v: &SparseVector, from: usize, e: usize) -> SparseVector {
    let mut cur = v.clone();
    for step in 0..e {
        cur = space.r2(from + 2 * step).mul_vec(&cur);
    }
    cur
}

/// Checks `[Δ, R^{2j+2}] = C(j,k)·R^{2j}` on `𝒫_k`, column by column.
pub fn verify_commutator_lemma(space: &Superspace, j: usize, k: usize) -> bool {
    commutator_lemma_witness(space, j, k).is_none()
}

/// The first basis monomial of `𝒫_k` on which `[Δ, R^{2j+2}]` and
/// `C(j,k)·R^{2j}` differ.
pub fn commutator_lemma_witness(space: &Superspace, j: usize, k: usize) -> Option<usize> {
    let c = Rational::from_integer(c_constant(j, k, space.config().superdimension()));
    let top = k + 2 * j + 2;
    let delta_top = space.laplace(top);
    let delta_k = space.laplace(k);
    (0..space.dim(k)).find(|&col| {
        let e = SparseVector::unit(col);
        let first = delta_top.mul_vec(&apply_r2_power(space, &e, k, j + 1));
        let second = if k < 2 {
            SparseVector::zero()
        } else {
            apply_r2_power(space, &delta_k.mul_vec(&e), k - 2, j + 1)
        };
        let lhs = first.add_scaled(&-Rational::from_integer(1), &second);
        let rhs = apply_r2_power(space, &e, k, j).scale(&c);
        lhs != rhs
    })
}

/// `R² 𝒫_{k−2}` inside `𝒫_k`.
pub fn r2_image(space: &Superspace, k: usize) -> Arc<Subspace> {
    space.cached_subspace("r2_image", k, || {
        if k < 2 {
            Subspace::zero(*space.config(), k)
        } else {
            Subspace::image(*space.config(), k, &space.r2(k - 2))
        }
    })
}

/// `R²ΔR² 𝒫_{k−2}` inside `𝒫_k`.
pub fn r2_delta_r2_image(space: &Superspace, k: usize) -> Arc<Subspace> {
    space.cached_subspace("r2_delta_r2_image", k, || {
        if k < 2 {
            Subspace::zero(*space.config(), k)
        } else {
            Subspace::image(*space.config(), k, &space.r2_delta_r2(k - 2))
        }
    })
}

fn splits(a: &Subspace, b: &Subspace, ambient_dim: usize) -> bool {
    a.dim() + b.dim() == ambient_dim && a.is_direct(b).expect("same ambient")
}

/// Whether `𝒫_k = H_k ⊕ R²𝒫_{k−2}`, with no precondition.
pub fn harmonic_splitting_holds(space: &Superspace, k: usize) -> bool {
    splits(&harmonics(space, k), &r2_image(space, k), space.dim(k))
}

/// Whether `𝒫_k = H_k ⊕ R²𝒫_{k−2}` in the range where it is claimed:
/// `M ∉ −2ℕ₀`, or `k < 2 − M/2`.
pub fn verify_harmonic_splitting(space: &Superspace, k: usize) -> Result<bool> {
    let m = space.config().superdimension();
    if is_nonpositive_even(m) && 2 * k as i64 >= 4 - m {
        return Err(Error::Domain(format!(
            "H_k ⊕ R²P_(k-2) is only claimed for k < 2 - M/2 when M = {m} is a non-positive even integer (k = {k})"
        )));
    }
    Ok(harmonic_splitting_holds(space, k))
}

/// Whether `𝒫_k = H̃_k ⊕ R²ΔR² 𝒫_{k−2}`.
pub fn verify_tilde_splitting(space: &Superspace, k: usize) -> bool {
    splits(
        &tilde_harmonics(space, k),
        &r2_delta_r2_image(space, k),
        space.dim(k),
    )
}

/// The algebraic splitting lemma for `U = 𝒫_{k−2}`, `V = 𝒫_k`, `L = Δ`,
/// `K = R²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub k: usize,
    /// `U = Ker LK ⊕ Img LK`.
    pub hypothesis: bool,
    /// `V = Ker LKL ⊕ Img KLK`.
    pub conclusion: bool,
    /// Every basis vector splits as `(v − KLKu) + KLKu` with the first part
    /// in `Ker LKL`.
    pub constructive: bool,
    pub ker_lk_trivial: bool,
    /// When `Ker LK = 0`: `Ker LKL = Ker L` and `Img KLK = Img K`.
    pub trivial_kernel_consequences: Option<bool>,
}

impl SplittingReport {
    pub fn holds(&self) -> bool {
        self.hypothesis
            && self.conclusion
            && self.constructive
            && self.trivial_kernel_consequences.unwrap_or(true)
    }
}

pub fn verify_splitting_lemma(space: &Superspace, k: usize) -> SplittingReport {
    let cfg = *space.config();
    let conclusion = verify_tilde_splitting(space, k);
    if k < 2 {
        // U = 0: the hypothesis is vacuous and Ker LKL is all of V
        return SplittingReport {
            k,
            hypothesis: true,
            conclusion,
            constructive: tilde_harmonics(space, k).dim() == space.dim(k),
            ker_lk_trivial: true,
            trivial_kernel_consequences: Some(
                *tilde_harmonics(space, k) == *harmonics(space, k)
                    && *r2_delta_r2_image(space, k) == *r2_image(space, k),
            ),
        };
    }
    let u_deg = k - 2;
    let lk = space.delta_r2(u_deg);
    let ker_lk = kernel_delta_r2(space, u_deg);
    let img_lk = Subspace::image(cfg, u_deg, &lk);
    let hypothesis = splits(&ker_lk, &img_lk, space.dim(u_deg));

    // Lv = κ + (LK)²u with κ ∈ Ker LK, then v − KLKu ∈ Ker LKL
    let lk2 = lk.mul(&lk);
    let mut generators: Vec<SparseVector> = ker_lk.basis_vectors().to_vec();
    let offset = generators.len();
    generators.extend(lk2.columns().iter().cloned());
    let solver = SpanSolver::new(space.dim(u_deg), &generators);
    let l = space.laplace(k);
    let klk = space.r2_delta_r2(u_deg);
    let lkl = space.delta_r2_delta(k);
    let constructive = (0..space.dim(k)).all(|col| {
        let v = SparseVector::unit(col);
        let Some(coeffs) = solver.solve(&l.mul_vec(&v)) else {
            return false;
        };
        let u = SparseVector::from_dense(&coeffs[offset..]);
        let split = klk.mul_vec(&u);
        let rest = v.add_scaled(&-Rational::from_integer(1), &split);
        lkl.mul_vec(&rest).is_zero()
    });

    let ker_lk_trivial = ker_lk.is_zero();
    let trivial_kernel_consequences = ker_lk_trivial.then(|| {
        *tilde_harmonics(space, k) == *harmonics(space, k)
            && *r2_delta_r2_image(space, k) == *r2_image(space, k)
    });
    SplittingReport {
        k,
        hypothesis,
        conclusion,
        constructive,
        ker_lk_trivial,
        trivial_kernel_consequences,
    }
}

/// Whether `Δ : 𝒫_k → 𝒫_{k−2}` is onto.
pub fn laplace_is_onto(space: &Superspace, k: usize) -> bool {
    if k < 2 {
        return true;
    }
    image(&space.laplace(k)).dim() == space.dim(k - 2)
}

/// `I_M` for the superspace.
pub fn exceptional_indices(space: &Superspace) -> ExceptionalIndexSet {
    ExceptionalIndexSet::new(space.config().superdimension())
}
