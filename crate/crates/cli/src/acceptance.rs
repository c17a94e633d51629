//! The acceptance criteria, each evaluated over the grid `m ≤ 4`, `n ≤ 3`.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use superharm::fischer::{
    c_constant, exceptional_indices, fischer_table, h0, harmonic_splitting_holds, harmonics,
    r2_power_image, tilde_harmonics, verify_commutator_lemma, verify_harmonic_splitting,
    verify_tilde_splitting, SummandKind,
};
use superharm::linalg::{SparseVector, Superspace};
use superharm::operators::{supercommutator_matrix, OperatorExpr};
use superharm::repthy::{
    branching_dims, casimir_structure, check_invariance, random_vector, structure_report,
    IdempotentVerdict, InvariantOperator, Verdict, DEFAULT_SEED,
};
use superharm::superpoly::binomial;
use superharm::{Polynomial, Rational, SuperspaceConfig};

use crate::commands;

pub const MAX_M: usize = 4;
pub const MAX_N: usize = 3;
pub const K_MAX: usize = 8;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AC{:<2} {} {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

/// One shared `Superspace` per grid cell, so caches carry over between
/// criteria.
pub struct Grid {
    spaces: BTreeMap<(usize, usize), Superspace>,
}

impl Grid {
    pub fn new(max_m: usize, max_n: usize) -> Self {
        let spaces = (0..=max_m)
            .flat_map(|m| (0..=max_n).map(move |n| (m, n)))
            .map(|(m, n)| ((m, n), Superspace::new(SuperspaceConfig::new(m, n))))
            .collect();
        Grid { spaces }
    }

    pub fn space(&self, m: usize, n: usize) -> &Superspace {
        &self.spaces[&(m, n)]
    }

    fn cells(&self) -> Vec<(usize, usize)> {
        self.spaces.keys().copied().collect()
    }

    /// Runs `f` on every cell and degree `k ≤ k_max`; returns the number of
    /// cases and the failures, each described by `f`.
    fn sweep<F>(&self, k_max: usize, f: F) -> (usize, Vec<String>)
    where
        F: Fn(&Superspace, usize) -> Result<(), String> + Sync,
    {
        let cases: Vec<((usize, usize), usize)> = self
            .cells()
            .into_iter()
            .flat_map(|c| (0..=k_max).map(move |k| (c, k)))
            .collect();
        let failures: Vec<String> = cases
            .par_iter()
            .filter_map(|&((m, n), k)| {
                f(self.space(m, n), k)
                    .err()
                    .map(|e| format!("({m},{n}) k={k}: {e}"))
            })
            .collect();
        (cases.len(), failures)
    }
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v)
}

fn verdict(
    id: usize,
    title: &'static str,
    cases: usize,
    failures: Vec<String>,
    extra: &str,
) -> Criterion {
    let passed = failures.is_empty();
    let mut detail = if passed {
        format!("{cases} cases")
    } else {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        format!(
            "{} of {cases} cases fail, e.g. {}",
            failures.len(),
            shown.join("; ")
        )
    };
    if !extra.is_empty() {
        detail.push_str("; ");
        detail.push_str(extra);
    }
    Criterion {
        id,
        title,
        passed,
        detail,
    }
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// `I_M` from its definition, written out independently.
fn closed_form_exceptional(big_m: i64) -> Vec<usize> {
    if big_m <= 0 && big_m % 2 == 0 {
        ((2 - big_m / 2)..=(2 - big_m))
            .map(|k| k as usize)
            .collect()
    } else {
        Vec::new()
    }
}

pub fn ac1_sl2(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(K_MAX, |s, k| {
        match crate::suites::sl2(s, k).into_iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(c.name),
        }
    });
    verdict(1, "sl(2) relations", cases, failures, "")
}

pub fn ac2_canonical(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(4, |s, k| {
        let cfg = *s.config();
        for i in 1..=cfg.num_vars() {
            for j in 1..=cfg.num_vars() {
                let d = OperatorExpr::derive_by(cfg, i).map_err(|e| e.to_string())?;
                let x = OperatorExpr::multiply_by(cfg, j).map_err(|e| e.to_string())?;
                let c = supercommutator_matrix(&d, &x, k).map_err(|e| e.to_string())?;
                let expect = q(i64::from(i == j));
                require(c.is_scalar(&expect), || format!("[∂_{i}, X_{j}]"))?;
            }
        }
        Ok(())
    });
    verdict(2, "canonical supercommutators", cases, failures, "")
}

pub fn ac3_invariance(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(6, |s, k| {
        for op in InvariantOperator::ALL {
            require(check_invariance(s, op, k), || op.to_string())?;
        }
        Ok(())
    });
    verdict(3, "invariance of Δ, 𝔼, R², C", cases, failures, "")
}

pub fn ac4_commutator_lemma(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(6, |s, k| {
        let big_m = s.config().superdimension();
        for j in 0..=3usize {
            let c = c_constant(j, k, big_m);
            let (ji, ki) = (j as i64, k as i64);
            require(c == (2 * ji + 2) * (2 * ki + big_m + 2 * ji), || {
                format!("C({j},k) = {c}")
            })?;
            require((c == 0) == (2 * (ki + ji) == -big_m), || {
                format!("C({j},k) zero pattern")
            })?;
            require(verify_commutator_lemma(s, j, k), || format!("j={j}"))?;
        }
        Ok(())
    });
    verdict(4, "[Δ, R^(2j+2)] = C(j,k) R^(2j)", cases, failures, "")
}

pub fn ac5_tilde_splitting(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(K_MAX, |s, k| {
        require(verify_tilde_splitting(s, k), || {
            "P_k = H~_k ⊕ R²ΔR² P_(k-2)".into()
        })?;
        let t = fischer_table(s, k);
        require(t.checks().direct_sum, || "summands not direct".into())?;
        require(t.total_dim() == s.dim(k), || {
            format!("summand dims {} vs dim P_k {}", t.total_dim(), s.dim(k))
        })
    });
    verdict(
        5,
        "P_k = H~_k + R^2 Delta R^2 P_{k-2} and the full decomposition",
        cases,
        failures,
        "",
    )
}

pub fn ac6_harmonic_splitting(grid: &Grid) -> Criterion {
    let m0_holding = std::sync::Mutex::new(Vec::new());
    let (cases, failures) = grid.sweep(K_MAX, |s, k| {
        let cfg = s.config();
        let exc = exceptional_indices(s);
        match verify_harmonic_splitting(s, k) {
            Ok(holds) => require(holds, || "P_k ≠ H_k ⊕ R² P_(k-2)".into()),
            Err(_) if exc.contains(k) => {
                let identity = harmonic_splitting_holds(s, k);
                if cfg.m() == 0 {
                    // the standing assumption m ≠ 0 excludes these cells
                    if identity {
                        m0_holding.lock().expect("lock").push(format!(
                            "({},{}) k={k}",
                            cfg.m(),
                            cfg.n()
                        ));
                    }
                    Ok(())
                } else {
                    require(!identity, || "classical splitting holds at k ∈ I_M".into())
                }
            }
            Err(_) => Ok(()),
        }
    });
    let mut failures = failures;
    if harmonic_splitting_holds(grid.space(2, 1), 2) {
        failures.push("(2,1) k=2: classical splitting holds".into());
    }
    let held = m0_holding.into_inner().expect("lock");
    let extra = if held.is_empty() {
        String::new()
    } else {
        format!(
            "m = 0 cells are outside the claim; there the splitting still holds at {}",
            held.join(", ")
        )
    };
    verdict(
        6,
        "P_k = H_k + R^2 P_{k-2} and its failure on I_M",
        cases,
        failures,
        &extra,
    )
}

pub fn ac7_exceptional(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(0, |s, _| {
        let cfg = s.config();
        let computed = exceptional_indices(s).indices().to_vec();
        let expected = closed_form_exceptional(cfg.superdimension());
        require(computed == expected, || {
            format!("I_M = {computed:?}, expected {expected:?}")
        })?;
        if cfg.m() > 0 {
            // degrees where H_k is properly contained in H~_k
            let observed: Vec<usize> = (0..=K_MAX)
                .filter(|&k| harmonics(s, k).dim() != tilde_harmonics(s, k).dim())
                .collect();
            let within: Vec<usize> = expected.iter().copied().filter(|&k| k <= K_MAX).collect();
            require(observed == within, || {
                format!("H_k ≠ H~_k exactly at {observed:?}")
            })?;
        }
        Ok(())
    });
    let mut failures = failures;
    let i23 = exceptional_indices(grid.space(2, 3)).indices().to_vec();
    if i23 != [4, 5, 6] {
        failures.push(format!("(2,3): I_M = {i23:?}"));
    }
    verdict(
        7,
        "exceptional index sets",
        cases,
        failures,
        "I_-4 = {4, 5, 6}",
    )
}

fn structure_battery(s: &Superspace, k: usize) -> Result<(), String> {
    let big_m = s.config().superdimension();
    let report = structure_report(s, k, 8, DEFAULT_SEED);
    require(report.verdict == Verdict::Holds, || {
        format!("failed checks {:?}", report.failed_checks())
    })?;
    for name in ["R²Δ(H̃_k) = H⁰_k", "Ker(R²Δ|H̃_k) = H_k"] {
        require(report.check(name) == Some(true), || name.to_string())?;
    }
    let c = &report.commutant;
    require(c.verdict == IdempotentVerdict::NoIdempotent, || {
        format!("commutant verdict {:?}", c.verdict)
    })?;
    let nilpotent = c.nilpotent.as_ref().ok_or("no nilpotent data")?;
    require(
        nilpotent.square_zero && nilpotent.in_commutant && nilpotent.rank > 0,
        || format!("nilpotent {nilpotent:?}"),
    )?;
    let partner = (2 - big_m - k as i64) as usize;
    require(h0(s, k).dim() == harmonics(s, partner).dim(), || {
        format!(
            "dim H0_k = {} vs dim H_(2-M-k) = {}",
            h0(s, k).dim(),
            harmonics(s, partner).dim()
        )
    })
}

pub fn ac8_structure(grid: &Grid) -> Criterion {
    let mut failures = Vec::new();
    let s = grid.space(2, 1);
    let dims = (
        h0(s, 2).dim(),
        harmonics(s, 2).dim(),
        tilde_harmonics(s, 2).dim(),
    );
    if dims != (1, 7, 8) {
        failures.push(format!("(2,1) k=2: dims {dims:?}"));
    }
    let r2 = Polynomial::parse(*s.config(), "x1^2 + x2^2 - theta1*theta2").expect("literal");
    let span = s.span(2, &[r2]).expect("degree 2");
    if *h0(s, 2) != span || *h0(s, 2) != r2_power_image(s, &harmonics(s, 0), 1) {
        failures.push("(2,1) k=2: H0_2 ≠ span{R²} = R² H_0".into());
    }
    let cases = [(2, 1, 2), (2, 3, 4), (2, 3, 5), (2, 3, 6)];
    failures.extend(
        cases
            .par_iter()
            .filter_map(|&(m, n, k)| {
                structure_battery(grid.space(m, n), k)
                    .err()
                    .map(|e| format!("({m},{n}) k={k}: {e}"))
            })
            .collect::<Vec<_>>(),
    );
    verdict(
        8,
        "structure of H~_k on I_M",
        cases.len(),
        failures,
        "(H0, H, H~) = (1, 7, 8) at (2,1,2)",
    )
}

pub fn ac9_branching(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(K_MAX, |s, k| {
        let cfg = *s.config();
        if cfg.m() == 0 {
            return Ok(());
        }
        let table = branching_dims(cfg, k).map_err(|e| e.to_string())?;
        require(
            table.holds() && table.total == harmonics(s, k).dim(),
            || format!("Σ = {} vs dim H_k = {}", table.total, harmonics(s, k).dim()),
        )
    });
    let mut failures = failures;
    for n in 0..=MAX_N {
        let s = grid.space(0, n);
        for j in 0..=2 * n {
            let kernel = harmonics(s, j).dim();
            let expected = if j <= n + 1 {
                binomial(2 * n, j) - if j >= 2 { binomial(2 * n, j - 2) } else { 0 }
            } else {
                0
            };
            if kernel != expected {
                failures.push(format!(
                    "dim H^f_{j} for n={n}: {kernel}, expected {expected}"
                ));
            }
        }
    }
    verdict(
        9,
        "branching dims",
        cases,
        failures,
        "fermionic factors match C(2n,j) - C(2n,j-2)",
    )
}

pub fn ac10_m1(grid: &Grid) -> Criterion {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 0..=MAX_N {
        let s = grid.space(1, n);
        for k in 0..=K_MAX {
            cases += 1;
            let nonzero = harmonics(s, k).dim() > 0;
            if nonzero != (k <= 2 * n + 1) {
                failures.push(format!(
                    "(1,{n}) k={k}: dim H_k = {}",
                    harmonics(s, k).dim()
                ));
            }
        }
    }
    verdict(10, "m = 1: H_k ≠ 0 iff k ≤ 2n+1", cases, failures, "")
}

pub fn ac11_diagrams(grid: &Grid) -> Criterion {
    let mut failures = Vec::new();
    let d = commands::diagram_doc(grid.space(2, 3), 8).diagram;
    match d.rows.iter().find(|r| r.source_degree == 0) {
        Some(row) => {
            let degrees: Vec<usize> = row.cells.iter().map(|c| c.degree).collect();
            let kinds: Vec<SummandKind> = row.cells.iter().map(|c| c.kind).collect();
            let ends_in_zero = kinds.last() == Some(&SummandKind::Zero)
                && kinds[..kinds.len() - 1]
                    .iter()
                    .all(|&k| k != SummandKind::Zero);
            if degrees != [0, 2, 4, 6] || !ends_in_zero {
                failures.push(format!("(2,3): row l=0 has cells {degrees:?} {kinds:?}"));
            }
        }
        None => failures.push("(2,3): no row l=0".into()),
    }
    for n in 0..=MAX_N {
        let rows = commands::diagram_doc(grid.space(0, n), 2 * n)
            .diagram
            .rows
            .len();
        if rows != n + 1 {
            failures.push(format!("(0,{n}) up to k={}: {rows} rows", 2 * n));
        }
    }
    verdict(
        11,
        "diagram reproduction",
        1 + MAX_N + 1,
        failures,
        "R^4 H_0 is followed by 0 at (2,3)",
    )
}

/// Number of random polynomials per cell and degree.
pub const ROUND_TRIPS: usize = 100;

pub fn ac12_round_trip(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(6, |s, k| {
        let cfg = s.config();
        let table = fischer_table(s, k);
        let units: Vec<SparseVector> = (0..s.dim(k)).map(SparseVector::unit).collect();
        let seed = DEFAULT_SEED ^ ((cfg.m() as u64) << 16 | (cfg.n() as u64) << 8 | k as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..ROUND_TRIPS {
            let p = s.polynomial(k, &random_vector(&units, &mut rng));
            let parts = table.decompose(s, &p).map_err(|e| e.to_string())?;
            let mut total = Polynomial::zero(*cfg);
            for c in &parts {
                let summand = table.summand(c.j).ok_or("untagged component")?;
                let v = s.vector(k, &c.polynomial).map_err(|e| e.to_string())?;
                require(summand.space.contains_vector(&v), || {
                    format!("trial {trial}: component outside {}", c.label())
                })?;
                total = total.try_add(&c.polynomial).map_err(|e| e.to_string())?;
            }
            require(total == p, || {
                format!("trial {trial}: components do not re-sum")
            })?;
        }
        Ok(())
    });
    verdict(
        12,
        "decomposition round trip",
        cases,
        failures,
        &format!("{ROUND_TRIPS} polynomials per (m,n,k)"),
    )
}

pub fn ac13_casimir(grid: &Grid) -> Criterion {
    let (cases, failures) = grid.sweep(K_MAX, |s, k| {
        let big_m = s.config().superdimension();
        let scalar = q(-(k as i64) * (big_m - 2 + k as i64));
        if exceptional_indices(s).contains(k) {
            let v = tilde_harmonics(s, k);
            let Some(cs) = casimir_structure(s, &v) else {
                return require(v.dim() == 0, || "no Casimir data on H~_k".into());
            };
            require(cs.scalar == scalar, || format!("scalar {}", cs.scalar))?;
            require(cs.square_zero, || "C - s is not square zero".into())?;
            require(cs.nilpotent_rank == h0(s, k).dim(), || {
                format!("rank {} vs dim H0_k {}", cs.nilpotent_rank, h0(s, k).dim())
            })
        } else {
            let v = harmonics(s, k);
            let Some(cs) = casimir_structure(s, &v) else {
                return require(v.dim() == 0, || "no Casimir data on H_k".into());
            };
            require(cs.scalar == scalar && cs.nilpotent_rank == 0, || {
                format!("C|H_k = {} + rank {}", cs.scalar, cs.nilpotent_rank)
            })
        }
    });
    verdict(13, "Casimir structure", cases, failures, "")
}

/// Every criterion, in order, printing each result through `report` as
/// soon as it is known.
pub fn run_all(grid: &Grid, mut report: impl FnMut(&Criterion)) -> Vec<Criterion> {
    let steps: [fn(&Grid) -> Criterion; 13] = [
        ac1_sl2,
        ac2_canonical,
        ac3_invariance,
        ac4_commutator_lemma,
        ac5_tilde_splitting,
        ac6_harmonic_splitting,
        ac7_exceptional,
        ac8_structure,
        ac9_branching,
        ac10_m1,
        ac11_diagrams,
        ac12_round_trip,
        ac13_casimir,
    ];
    steps
        .iter()
        .map(|step| {
            let c = step(grid);
            report(&c);
            c
        })
        .collect()
}
