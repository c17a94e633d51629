//! Verification suites behind `superharm verify`.

use superharm::fischer::{
    commutator_lemma_witness, exceptional_indices, fischer_table, harmonic_splitting_holds,
    verify_harmonic_splitting, verify_splitting_lemma, verify_tilde_splitting,
};
use superharm::linalg::{SparseMatrix, SparseVector, Superspace};
use superharm::repthy::{invariance_witness, structure_report, InvariantOperator, Verdict};
use superharm::Rational;

use crate::args::Suite;
use crate::documents::{CheckResult, Witness};

fn q(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn first_difference(a: &SparseMatrix, b: &SparseMatrix) -> Option<usize> {
    (0..a.cols()).find(|&c| a.column(c) != b.column(c))
}

fn witness(space: &Superspace, operator: String, k: usize, column: usize) -> Witness {
    Witness {
        operator,
        degree: k,
        vector: space.polynomial(k, &SparseVector::unit(column)).to_string(),
    }
}

fn result(suite: Suite, k: usize, name: impl Into<String>, passed: bool) -> CheckResult {
    CheckResult {
        suite,
        k,
        name: name.into(),
        passed,
        witness: None,
        note: None,
    }
}

fn matrix_check(
    space: &Superspace,
    suite: Suite,
    k: usize,
    name: &str,
    lhs: &SparseMatrix,
    rhs: &SparseMatrix,
) -> CheckResult {
    let mut r = result(suite, k, name, true);
    if let Some(col) = first_difference(lhs, rhs) {
        r.passed = false;
        r.witness = Some(witness(space, name.to_string(), k, col));
    }
    r
}

/// `[Δ,R²] = (4k+2M)`, `[Δ, 𝔼+M/2] = 2Δ`, `[R², 𝔼+M/2] = −2R²` on `𝒫_k`.
pub fn sl2(space: &Superspace, k: usize) -> Vec<CheckResult> {
    let big_m = space.config().superdimension();
    let dim = space.dim(k);
    let lap = space.laplace(k);
    let r2 = space.r2(k);
    let e = |d: usize| space.euler(d);

    let mut dr = space.laplace(k + 2).mul(&r2);
    if k >= 2 {
        dr = dr.sub(&space.r2(k - 2).mul(&lap));
    }
    let expect = SparseMatrix::scalar(dim, &q(4 * k as i64 + 2 * big_m));
    let mut out = vec![matrix_check(
        space,
        Suite::Sl2,
        k,
        "[Δ,R²] = (4k+2M)·Id",
        &dr,
        &expect,
    )];

    // the shift by M/2 cancels in both commutators with 𝔼
    let de = if k >= 2 {
        lap.mul(&e(k)).sub(&e(k - 2).mul(&lap))
    } else {
        SparseMatrix::zeros(0, dim)
    };
    out.push(matrix_check(
        space,
        Suite::Sl2,
        k,
        "[Δ,𝔼+M/2] = 2Δ",
        &de,
        &lap.scale(&q(2)),
    ));
    let re = r2.mul(&e(k)).sub(&e(k + 2).mul(&r2));
    out.push(matrix_check(
        space,
        Suite::Sl2,
        k,
        "[R²,𝔼+M/2] = -2R²",
        &re,
        &r2.scale(&q(-2)),
    ));
    out
}

/// `Δ`, `𝔼`, `R²` and `C` supercommute with every `L_ij` on `𝒫_k`.
pub fn invariance(space: &Superspace, k: usize) -> Vec<CheckResult> {
    InvariantOperator::ALL
        .iter()
        .map(|&op| {
            let name = format!("{op} commutes with every L_ij");
            let mut r = result(Suite::Invariance, k, name, true);
            if let Some((i, j)) = invariance_witness(space, op, k) {
                r.passed = false;
                let target = k as i64 + op.degree_shift();
                let before = op.matrix(space, k);
                let lhs = before.mul(&space.lij(i, j, k).expect("valid indices"));
                let rhs = if target < 0 {
                    SparseMatrix::zeros(0, space.dim(k))
                } else {
                    space
                        .lij(i, j, target as usize)
                        .expect("valid indices")
                        .mul(&before)
                };
                let col = first_difference(&lhs, &rhs).unwrap_or(0);
                r.witness = Some(witness(space, format!("[{op},L{i},{j}]"), k, col));
            }
            r
        })
        .collect()
}

/// Commutator identities, the tilde splitting, table consistency, the
/// splitting lemma, and the classical splitting where it is claimed or
/// refuted.
pub fn fischer(space: &Superspace, k: usize) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for j in 0..=3 {
        let name = format!("[Δ,R^{}] = C({j},k)·R^{}", 2 * j + 2, 2 * j);
        let mut r = result(Suite::Fischer, k, name.clone(), true);
        if let Some(col) = commutator_lemma_witness(space, j, k) {
            r.passed = false;
            r.witness = Some(witness(space, name, k, col));
        }
        out.push(r);
    }
    out.push(result(
        Suite::Fischer,
        k,
        "P_k = H~_k ⊕ R²ΔR² P_(k-2)",
        verify_tilde_splitting(space, k),
    ));
    let checks = fischer_table(space, k).checks();
    for (name, holds) in [
        ("summands form a direct sum", checks.direct_sum),
        (
            "refined summands form a direct sum",
            checks.refined_direct_sum,
        ),
        ("summands are R^2j-images", checks.summands_are_powers),
        (
            "chains terminate as predicted",
            checks.termination_as_predicted,
        ),
        (
            "two-term split at exceptional degrees",
            checks.two_term_split,
        ),
    ] {
        out.push(result(Suite::Fischer, k, name, holds));
    }
    out.push(result(
        Suite::Fischer,
        k,
        "splitting lemma",
        verify_splitting_lemma(space, k).holds(),
    ));

    let exc = exceptional_indices(space);
    match verify_harmonic_splitting(space, k) {
        Ok(holds) => out.push(result(Suite::Fischer, k, "P_k = H_k ⊕ R² P_(k-2)", holds)),
        Err(_) if exc.contains(k) && space.config().m() > 0 => out.push(result(
            Suite::Fischer,
            k,
            "P_k ≠ H_k ⊕ R² P_(k-2) at an exceptional degree",
            !harmonic_splitting_holds(space, k),
        )),
        Err(_) => {}
    }
    out
}

/// The structure report for `H̃_k`, summarized as a single check.
pub fn structure(space: &Superspace, k: usize, probes: usize, seed: u64) -> Vec<CheckResult> {
    let report = structure_report(space, k, probes, seed);
    let s = report.spaces;
    let mut r = result(
        Suite::Structure,
        k,
        "structure of H0_k ⊆ H_k ⊆ H~_k",
        report.verdict != Verdict::Fails,
    );
    let mut note = format!("chain ({},{},{})", s.h0, s.harmonics, s.tilde_harmonics);
    if report.verdict == Verdict::OutsideHypothesis {
        note.push_str(", m = 0: not claimed");
    }
    let failed = report.failed_checks();
    if !failed.is_empty() {
        note.push_str(&format!(", failed: {}", failed.join("; ")));
    }
    r.note = Some(note);
    vec![r]
}

pub fn run_suite(
    space: &Superspace,
    suite: Suite,
    k: usize,
    probes: usize,
    seed: u64,
) -> Vec<CheckResult> {
    match suite {
        Suite::Sl2 => sl2(space, k),
        Suite::Invariance => invariance(space, k),
        Suite::Fischer => fischer(space, k),
        Suite::Structure => structure(space, k, probes, seed),
        Suite::All => Suite::All
            .expand()
            .into_iter()
            .flat_map(|s| run_suite(space, s, k, probes, seed))
            .collect(),
    }
}
