use serde::{Deserialize, Serialize};

use crate::fischer::{
    h0, harmonics, laplace_is_onto, r2_power_image, tilde_harmonics, ExceptionalIndexSet,
};
use crate::linalg::{Subspace, Superspace};
use crate::rational::Rational;

use super::casimir::{casimir_structure, CasimirStructure};
use super::commutant::{commutant_idempotent_certificate, CommutantCertificate};
use super::module::{submodule_lattice_probe, LatticeProbe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDims {
    pub polynomials: usize,
    pub harmonics: usize,
    pub tilde_harmonics: usize,
    pub h0: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub module_dims: Vec<usize>,
    /// `(a, b)` whenever module `a` is properly contained in module `b`.
    pub inclusions: Vec<(usize, usize)>,
    pub probes: usize,
    /// Each probe generated the module expected from where it lies.
    pub probes_as_expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionDims {
    pub expected: Vec<usize>,
    pub computed: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    /// `m = 0`: the structure result is not claimed there.
    OutsideHypothesis,
}

/// Everything checked about `H⁰_k ⊆ H_k ⊆ H̃_k` in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub superdimension: i64,
    pub exceptional: bool,
    pub spaces: SpaceDims,
    pub checks: Vec<NamedCheck>,
    pub lattice: LatticeSummary,
    pub composition: CompositionDims,
    pub commutant: CommutantCertificate,
    pub casimir: Option<CasimirStructure>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl StructureReport {
    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}

fn sub(a: &Subspace, b: &Subspace) -> bool {
    a.is_subspace_of(b).expect("same ambient")
}

fn proper(a: &Subspace, b: &Subspace) -> bool {
    sub(a, b) && a.dim() < b.dim()
}

/// Assembles the structure report for `𝒫_k`: subspace identities, a probe
/// of the submodule lattice of `H̃_k`, the commutant certificate and the
/// Casimir decomposition.
pub fn structure_report(space: &Superspace, k: usize, probes: usize, seed: u64) -> StructureReport {
    let cfg = *space.config();
    let big_m = cfg.superdimension();
    let exc = ExceptionalIndexSet::new(big_m);
    let exceptional = exc.contains(k);
    let h = harmonics(space, k);
    let ht = tilde_harmonics(space, k);
    let hz = h0(space, k);
    let mut checks: Vec<NamedCheck> = Vec::new();
    let mut push = |name: &str, holds: bool| {
        checks.push(NamedCheck {
            name: name.to_string(),
            holds,
        })
    };

    push("H_k ⊆ H̃_k", sub(&h, &ht));
    push("H⁰_k ⊆ H_k", sub(&hz, &h));
    push("Δ maps P_k onto P_(k-2)", laplace_is_onto(space, k));

    // R²Δ on H̃_k: image H⁰_k, kernel H_k
    let r2d = space.r2_delta(k);
    let image = ht.map(&r2d, k);
    push("R²Δ(H̃_k) = H⁰_k", image == *hz);
    let kernel_dim = ht.dim() - image.dim();
    let killed = h.basis_vectors().iter().all(|b| r2d.mul_vec(b).is_zero());
    push("Ker(R²Δ|H̃_k) = H_k", killed && kernel_dim == h.dim());

    let partner_dim = exc.partner(k).map(|p| harmonics(space, p).dim());
    let composition = CompositionDims {
        expected: match partner_dim {
            Some(p) => vec![p, h.dim().saturating_sub(p), p],
            None => vec![0, h.dim(), 0],
        },
        computed: vec![hz.dim(), h.dim() - hz.dim(), ht.dim() - h.dim()],
    };
    push(
        "composition factor dims",
        composition.expected == composition.computed,
    );

    if let Some(p) = exc.partner(k) {
        let e = (2 * k as i64 + big_m - 2) / 2;
        let expected = r2_power_image(space, &harmonics(space, p), e as usize);
        push("H⁰_k = R^(2k+M-2) H_(2-M-k)", *hz == expected);
        push(
            "0 ⊊ H⁰_k ⊊ H_k ⊊ H̃_k",
            !hz.is_zero() && proper(&hz, &h) && proper(&h, &ht),
        );
    } else {
        push("H̃_k = H_k", *ht == *h);
        push("H⁰_k = 0", hz.is_zero());
    }

    let lattice = submodule_lattice_probe(space, &ht, &[&hz, &h], probes, seed);
    let probes_as_expected = probes_match(&lattice, &hz, &h, &ht, exceptional);
    push("probed submodules", probes_as_expected);

    let commutant = commutant_idempotent_certificate(space, &ht);
    let mut complex_structure = false;
    if ht.dim() > 0 {
        push(
            "commutant has no nontrivial idempotent",
            commutant.indecomposable(),
        );
        if exceptional {
            let nil_ok = commutant.nilpotent.as_ref().is_some_and(|n| {
                n.square_zero && n.rank == hz.dim() && n.in_commutant && n.rank > 0
            });
            push("square-zero R²Δ in the commutant", nil_ok);
            push("commutant is ⟨Id, R²Δ⟩", commutant.commutant_dim == Some(2));
        } else {
            // over R an irreducible module may have commutant C; this is
            // what happens for m = 2, where so(2) is abelian
            let complex = commutant.commutant_dim == Some(2)
                && commutant
                    .discriminant
                    .as_ref()
                    .is_some_and(Rational::is_negative);
            complex_structure = complex;
            push(
                "commutant is Q or Q(√d) with d < 0",
                commutant.commutant_dim == Some(1) || complex,
            );
        }
    }

    let casimir = casimir_structure(space, &ht);
    let casimir_ok = casimir
        .as_ref()
        .is_some_and(|c| c.holds() && c.nilpotent_rank == if exceptional { hz.dim() } else { 0 });
    push("Casimir = scalar + square-zero R²Δ", casimir_ok);

    let mut notes = vec![
        "commutant computed over Q; indecomposability is certified over Q".to_string(),
        "composition factors are compared by dimension only".to_string(),
    ];
    if complex_structure {
        notes.push("commutant is Q(√d) with d < 0: irreducible over R but not over C".to_string());
    }
    let all = checks.iter().all(|c| c.holds);
    let verdict = if cfg.m() == 0 {
        notes
            .push("m = 0: the structure result is not claimed; checks are informative".to_string());
        Verdict::OutsideHypothesis
    } else if all {
        Verdict::Holds
    } else {
        Verdict::Fails
    };

    StructureReport {
        m: cfg.m(),
        n: cfg.n(),
        k,
        superdimension: big_m,
        exceptional,
        spaces: SpaceDims {
            polynomials: space.dim(k),
            harmonics: h.dim(),
            tilde_harmonics: ht.dim(),
            h0: hz.dim(),
        },
        checks,
        lattice: LatticeSummary {
            module_dims: lattice.dims(),
            inclusions: lattice.inclusions.clone(),
            probes: lattice.probes.len(),
            probes_as_expected,
        },
        composition,
        commutant,
        casimir,
        verdict,
        notes,
    }
}

/// Outside `I_M` every nonzero probe should generate `H_k`. Inside, the
/// probes should find exactly `H⁰_k`, `H_k`, `H̃_k`, each vector generating
/// the smallest of them that contains it.
fn probes_match(
    lattice: &LatticeProbe,
    hz: &Subspace,
    h: &Subspace,
    ht: &Subspace,
    exceptional: bool,
) -> bool {
    let expected_for = |v: &crate::linalg::SparseVector| -> Subspace {
        if v.is_zero() {
            Subspace::zero(*h.config(), h.degree())
        } else if exceptional && hz.contains_vector(v) {
            hz.clone()
        } else if h.contains_vector(v) {
            h.clone()
        } else {
            ht.clone()
        }
    };
    let each = lattice
        .probes
        .iter()
        .all(|p| lattice.modules[p.generates] == expected_for(&p.vector));
    let nonzero: Vec<&Subspace> = lattice.modules.iter().filter(|m| !m.is_zero()).collect();
    let found_all = if exceptional {
        nonzero.len() == 3
            && lattice.position(hz).is_some()
            && lattice.position(h).is_some()
            && lattice.position(ht).is_some()
    } else {
        nonzero.len() <= 1
    };
    each && found_all && lattice.is_chain()
}
