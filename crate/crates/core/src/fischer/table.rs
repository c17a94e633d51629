use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{SpanSolver, SparseVector, Subspace, Superspace};
use crate::superpoly::{Polynomial, SuperspaceConfig};

use super::exceptional::ExceptionalIndexSet;
use super::spaces::{harmonics, r2_power_image, tilde_harmonics, verify_tilde_splitting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SummandKind {
    /// `(R²ΔR²)^j H̃_ℓ` with `H̃_ℓ ≠ H_ℓ`.
    Tilde,
    /// `(R²ΔR²)^j H_ℓ`.
    Plain,
    Zero,
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandKind::Tilde => "tilde",
            SummandKind::Plain => "plain",
            SummandKind::Zero => "zero",
        })
    }
}

/// The summand `(R²ΔR²)^j H̃_ℓ` of `𝒫_k`, `ℓ = k − 2j`.
#[derive(Debug, Clone)]
pub struct Summand {
    pub j: usize,
    pub source_degree: usize,
    pub kind: SummandKind,
    /// `dim H̃_ℓ`.
    pub source_dim: usize,
    pub space: Subspace,
}

impl Summand {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// `R^{2j}H_ℓ`, `R^{2j}H~_ℓ` or `0`.
    pub fn label(&self) -> String {
        summand_label(self.j, self.source_degree, self.kind)
    }
}

pub fn summand_label(j: usize, ell: usize, kind: SummandKind) -> String {
    let h = match kind {
        SummandKind::Zero => return "0".to_string(),
        SummandKind::Tilde => format!("H~_{ell}"),
        SummandKind::Plain => format!("H_{ell}"),
    };
    match j {
        0 => h,
        1 => format!("R^2 {h}"),
        _ => format!("R^{} {h}", 2 * j),
    }
}

/// The degree sets `N_k`, `J̃_k`, `J⁰_k` and `J_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSets {
    pub n: Vec<usize>,
    pub j_tilde: Vec<usize>,
    pub j_zero: Vec<usize>,
    pub j_plain: Vec<usize>,
}

impl IndexSets {
    pub fn new(k: usize, exceptional: &ExceptionalIndexSet) -> Self {
        let n: Vec<usize> = (0..=k / 2).map(|j| k - 2 * j).rev().collect();
        let j_tilde: Vec<usize> = n
            .iter()
            .copied()
            .filter(|&l| exceptional.contains(l))
            .collect();
        let mut j_zero: Vec<usize> = j_tilde
            .iter()
            .filter_map(|&l| exceptional.partner(l))
            .collect();
        j_zero.sort_unstable();
        let j_plain = n
            .iter()
            .copied()
            .filter(|l| !j_tilde.contains(l) && !j_zero.contains(l))
            .collect();
        IndexSets {
            n,
            j_tilde,
            j_zero,
            j_plain,
        }
    }
}

/// A summand of the refined form `R^{k−ℓ}H̃_ℓ` (`ℓ ∈ J̃_k`) or `R^{k−ℓ}H_ℓ`
/// (`ℓ ∈ J_k`).
#[derive(Debug, Clone)]
pub struct RefinedSummand {
    pub source_degree: usize,
    pub tilde: bool,
    pub space: Subspace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableChecks {
    /// Summands are independent and span `𝒫_k`.
    pub direct_sum: bool,
    /// The same for the refined form.
    pub refined_direct_sum: bool,
    /// Each nonzero summand equals `R^{2j}H̃_ℓ`.
    pub summands_are_powers: bool,
    /// Zero summands are exactly the predicted terminations.
    pub termination_as_predicted: bool,
    /// `𝒫_k = H̃_k ⊕ R²ΔR²𝒫_{k−2}`.
    pub two_term_split: bool,
}

impl TableChecks {
    pub fn all(&self) -> bool {
        self.direct_sum
            && self.refined_direct_sum
            && self.summands_are_powers
            && self.termination_as_predicted
            && self.two_term_split
    }
}

/// Whether `(R²ΔR²)^j H̃_ℓ` is predicted to vanish: `H̃_ℓ = H_ℓ ≠ 0` and
/// the chain has already passed a step with `2(ℓ + i) = −M`, `i < j`.
pub fn predicted_zero(
    superdimension: i64,
    ell: usize,
    j: usize,
    source_dim: usize,
    source_is_plain: bool,
) -> bool {
    if source_dim == 0 {
        return true;
    }
    source_is_plain && (0..j).any(|i| 2 * (ell + i) as i64 == -superdimension)
}

/// One component of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub j: usize,
    pub source_degree: usize,
    pub kind: SummandKind,
    pub polynomial: Polynomial,
}

impl Component {
    pub fn label(&self) -> String {
        summand_label(self.j, self.source_degree, self.kind)
    }
}

/// `𝒫_k = ⊕_j (R²ΔR²)^j H̃_{k−2j}`, with summands in decreasing `ℓ`.
pub struct FischerTable {
    config: SuperspaceConfig,
    k: usize,
    summands: Vec<Summand>,
    refined: Vec<RefinedSummand>,
    index_sets: IndexSets,
    exceptional: ExceptionalIndexSet,
    checks: TableChecks,
    solver: OnceLock<(SpanSolver, Vec<usize>)>,
}

impl fmt::Debug for FischerTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FischerTable")
            .field("config", &self.config)
            .field("k", &self.k)
            .field("summands", &self.summands)
            .field("checks", &self.checks)
            .finish()
    }
}

pub fn fischer_table(space: &Superspace, k: usize) -> FischerTable {
    let config = *space.config();
    let m = config.superdimension();
    let exceptional = ExceptionalIndexSet::new(m);
    let index_sets = IndexSets::new(k, &exceptional);
    let dim = space.dim(k);

    let mut summands = Vec::with_capacity(k / 2 + 1);
    let mut powers_ok = true;
    let mut termination_ok = true;
    for j in 0..=k / 2 {
        let ell = k - 2 * j;
        let tilde = tilde_harmonics(space, ell);
        let plain = *tilde == *harmonics(space, ell);
        let mut cur = (*tilde).clone();
        for step in 0..j {
            let d = ell + 2 * step;
            cur = cur.map(&space.r2_delta_r2(d), d + 2);
        }
        let kind = if cur.is_zero() {
            SummandKind::Zero
        } else if plain {
            SummandKind::Plain
        } else {
            SummandKind::Tilde
        };
        if !cur.is_zero() {
            powers_ok &= cur == r2_power_image(space, &tilde, j);
        }
        termination_ok &= cur.is_zero() == predicted_zero(m, ell, j, tilde.dim(), plain);
        summands.push(Summand {
            j,
            source_degree: ell,
            kind,
            source_dim: tilde.dim(),
            space: cur,
        });
    }

    let refined: Vec<RefinedSummand> = index_sets
        .n
        .iter()
        .rev()
        .filter(|l| !index_sets.j_zero.contains(l))
        .map(|&ell| {
            let tilde = index_sets.j_tilde.contains(&ell);
            let source = if tilde {
                tilde_harmonics(space, ell)
            } else {
                harmonics(space, ell)
            };
            RefinedSummand {
                source_degree: ell,
                tilde,
                space: r2_power_image(space, &source, (k - ell) / 2),
            }
        })
        .collect();

    let checks = TableChecks {
        direct_sum: spans_directly(summands.iter().map(|s| &s.space), dim),
        refined_direct_sum: spans_directly(refined.iter().map(|s| &s.space), dim),
        summands_are_powers: powers_ok,
        termination_as_predicted: termination_ok,
        two_term_split: verify_tilde_splitting(space, k),
    };
    FischerTable {
        config,
        k,
        summands,
        refined,
        index_sets,
        exceptional,
        checks,
        solver: OnceLock::new(),
    }
}

fn spans_directly<'a>(spaces: impl Iterator<Item = &'a Subspace>, dim: usize) -> bool {
    let mut total = 0;
    let mut vectors: Vec<SparseVector> = Vec::new();
    for s in spaces {
        total += s.dim();
        vectors.extend(s.basis_vectors().iter().cloned());
    }
    total == dim && crate::linalg::RowSpace::from_rows(dim, &vectors).dim() == dim
}

impl FischerTable {
    pub fn config(&self) -> &SuperspaceConfig {
        &self.config
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Summand `j`, i.e. the one coming from `H̃_{k−2j}`.
    pub fn summand(&self, j: usize) -> Option<&Summand> {
        self.summands.get(j)
    }

    pub fn refined(&self) -> &[RefinedSummand] {
        &self.refined
    }

    pub fn index_sets(&self) -> &IndexSets {
        &self.index_sets
    }

    pub fn exceptional(&self) -> &ExceptionalIndexSet {
        &self.exceptional
    }

    pub fn checks(&self) -> TableChecks {
        self.checks
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(Summand::dim).sum()
    }

    fn solver(&self) -> &(SpanSolver, Vec<usize>) {
        self.solver.get_or_init(|| {
            let mut vectors = Vec::new();
            let mut owner = Vec::new();
            for (idx, s) in self.summands.iter().enumerate() {
                for v in s.space.basis_vectors() {
                    vectors.push(v.clone());
                    owner.push(idx);
                }
            }
            let ambient = self.summands.first().map_or(0, |s| s.space.ambient_dim());
            (SpanSolver::new(ambient, &vectors), owner)
        })
    }

    /// Splits a homogeneous polynomial of degree `k` along the summands.
    /// Only nonzero components are returned, in summand order.
    pub fn decompose(&self, space: &Superspace, p: &Polynomial) -> Result<Vec<Component>> {
        if *p.config() != self.config {
            return Err(Error::ConfigMismatch {
                left: self.config,
                right: *p.config(),
            });
        }
        let degree = p.require_homogeneous(self.k)?;
        if degree != self.k {
            return Err(Error::NotHomogeneous {
                degrees: vec![degree],
            });
        }
        let target = space.vector(self.k, p)?;
        let (solver, owner) = self.solver();
        let coeffs = solver.solve(&target).ok_or_else(|| {
            Error::Domain(format!(
                "summands of degree {} do not span the input",
                self.k
            ))
        })?;
        let mut parts: Vec<SparseVector> = vec![SparseVector::zero(); self.summands.len()];
        let mut offset = 0;
        for (idx, s) in self.summands.iter().enumerate() {
            for v in s.space.basis_vectors() {
                let c = &coeffs[offset];
                if !num_traits::Zero::is_zero(c) {
                    parts[idx] = parts[idx].add_scaled(c, v);
                }
                offset += 1;
            }
        }
        debug_assert_eq!(offset, owner.len());
        Ok(parts
            .into_iter()
            .zip(&self.summands)
            .filter(|(v, _)| !v.is_zero())
            .map(|(v, s)| Component {
                j: s.j,
                source_degree: s.source_degree,
                kind: s.kind,
                polynomial: space.polynomial(self.k, &v),
            })
            .collect())
    }

    /// Serializable view; `with_basis` adds basis polynomials.
    pub fn summary(&self, space: &Superspace, with_basis: bool) -> TableSummary {
        TableSummary {
            m: self.config.m(),
            n: self.config.n(),
            k: self.k,
            superdimension: self.config.superdimension(),
            dim: space.dim(self.k),
            exceptional: self.exceptional.indices().to_vec(),
            index_sets: self.index_sets.clone(),
            summands: self
                .summands
                .iter()
                .map(|s| SummandSummary {
                    j: s.j,
                    source_degree: s.source_degree,
                    kind: s.kind,
                    label: s.label(),
                    dim: s.dim(),
                    basis: with_basis.then(|| {
                        space
                            .basis_polynomials(&s.space)
                            .iter()
                            .map(|p| p.to_string())
                            .collect()
                    }),
                })
                .collect(),
            checks: self.checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandSummary {
    pub j: usize,
    pub source_degree: usize,
    pub kind: SummandKind,
    pub label: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub superdimension: i64,
    pub dim: usize,
    pub exceptional: Vec<usize>,
    pub index_sets: IndexSets,
    pub summands: Vec<SummandSummary>,
    pub checks: TableChecks,
}

/// Decomposes `p` along the table of its own degree.
pub fn fischer_decompose(space: &Superspace, p: &Polynomial) -> Result<Vec<Component>> {
    let k = p.require_homogeneous(0)?;
    fischer_table(space, k).decompose(space, p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramCell {
    pub degree: usize,
    pub j: usize,
    pub kind: SummandKind,
    pub dim: usize,
    pub label: String,
}

/// The chain `H̃_ℓ → R²H̃_ℓ → …` up to the first zero cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRow {
    pub source_degree: usize,
    pub tilde: bool,
    pub cells: Vec<DiagramCell>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub m: usize,
    pub n: usize,
    pub k_max: usize,
    pub exceptional: Vec<usize>,
    pub rows: Vec<DiagramRow>,
}

/// Rows by source degree `ℓ ≤ k_max`; rows with `H̃_ℓ = 0` are left out.
pub fn diagram(space: &Superspace, k_max: usize) -> Diagram {
    let tables: Vec<FischerTable> = (0..=k_max).map(|k| fischer_table(space, k)).collect();
    let mut rows = Vec::new();
    for ell in 0..=k_max {
        let head = &tables[ell].summands[0];
        if head.source_dim == 0 {
            continue;
        }
        let mut cells = Vec::new();
        let mut j = 0;
        while ell + 2 * j <= k_max {
            let s = &tables[ell + 2 * j].summands[j];
            cells.push(DiagramCell {
                degree: ell + 2 * j,
                j,
                kind: s.kind,
                dim: s.dim(),
                label: s.label(),
            });
            if s.kind == SummandKind::Zero {
                break;
            }
            j += 1;
        }
        rows.push(DiagramRow {
            source_degree: ell,
            tilde: head.kind == SummandKind::Tilde,
            cells,
        });
    }
    Diagram {
        m: space.config().m(),
        n: space.config().n(),
        k_max,
        exceptional: ExceptionalIndexSet::new(space.config().superdimension())
            .indices()
            .to_vec(),
        rows,
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flat_map(|r| r.cells.iter().map(|c| c.label.len()))
            .max()
            .unwrap_or(1)
            .max(3);
        write!(f, "{:>4} |", "k")?;
        for k in 0..=self.k_max {
            write!(f, " {:^width$}", k)?;
        }
        writeln!(f)?;
        for row in &self.rows {
            write!(f, "{:>4} |", format!("l={}", row.source_degree))?;
            for k in 0..=self.k_max {
                let cell = row.cells.iter().find(|c| c.degree == k);
                match cell {
                    Some(c) => write!(f, " {:^width$}", c.label)?,
                    None => write!(f, " {:^width$}", "")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
