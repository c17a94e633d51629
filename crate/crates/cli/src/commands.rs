use std::fmt::Write as _;

use rayon::prelude::*;
use superharm::fischer::{
    diagram, exceptional_indices, fischer_table, h0, harmonics, tilde_harmonics, Diagram,
    SummandKind,
};
use superharm::linalg::{SpanSolver, SparseVector, Subspace, Superspace};
use superharm::operators;
use superharm::repthy::{structure_report, IdempotentVerdict, StructureReport, Verdict};
use superharm::{Polynomial, SuperspaceConfig};

use crate::args::{Suite, MAX_K};
use crate::documents::{
    CheckResult, ComponentEntry, DecomposeDocument, DiagramDocument, DimsDocument, DimsRow,
    MatrixDump, StructureDocument, VerifyDocument, SCHEMA_VERSION,
};
use crate::CliError;

pub fn dims(space: &Superspace, k_max: usize) -> DimsDocument {
    let cfg = *space.config();
    let exc = exceptional_indices(space);
    let rows = (0..=k_max)
        .into_par_iter()
        .map(|k| DimsRow {
            k,
            polynomials: space.dim(k),
            harmonics: harmonics(space, k).dim(),
            tilde_harmonics: tilde_harmonics(space, k).dim(),
            h0: h0(space, k).dim(),
            exceptional: exc.contains(k),
        })
        .collect();
    DimsDocument {
        schema_version: SCHEMA_VERSION,
        m: cfg.m(),
        n: cfg.n(),
        k_max,
        superdimension: cfg.superdimension(),
        exceptional: exc.indices().to_vec(),
        rows,
    }
}

fn space_header(m: usize, n: usize, big_m: i64, exceptional: &[usize]) -> String {
    let set: Vec<String> = exceptional.iter().map(ToString::to_string).collect();
    format!(
        "R^({m}|{}), M = {big_m}, I_M = {{{}}}",
        2 * n,
        set.join(", ")
    )
}

pub fn dims_text(doc: &DimsDocument) -> String {
    let mut out = space_header(doc.m, doc.n, doc.superdimension, &doc.exceptional);
    out.push('\n');
    writeln!(
        out,
        "{:>3} {:>8} {:>8} {:>8} {:>8}",
        "k", "P_k", "H_k", "H~_k", "H0_k"
    )
    .unwrap();
    for r in &doc.rows {
        writeln!(
            out,
            "{:>3} {:>8} {:>8} {:>8} {:>8}{}",
            r.k,
            r.polynomials,
            r.harmonics,
            r.tilde_harmonics,
            r.h0,
            if r.exceptional { "  exceptional" } else { "" }
        )
        .unwrap();
    }
    out
}

pub fn parse_polynomial(
    config: SuperspaceConfig,
    text: &str,
) -> Result<(Polynomial, usize), CliError> {
    let p = Polynomial::parse(config, text).map_err(|e| CliError::Usage(e.to_string()))?;
    let k = p
        .require_homogeneous(0)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok((p, k))
}

pub fn matrix_dump(space: &Superspace, name: &str, k: usize) -> Result<MatrixDump, CliError> {
    let expr =
        operators::by_name(*space.config(), name).map_err(|e| CliError::Usage(e.to_string()))?;
    let m = space
        .matrix(&expr, k)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(MatrixDump {
        operator: name.to_string(),
        degree: k,
        rows: m.rows(),
        cols: m.cols(),
        entries: m
            .to_dense()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| format!("{}/{}", v.numer(), v.denom()))
                    .collect()
            })
            .collect(),
    })
}

pub fn matrix_text(d: &MatrixDump) -> String {
    let mut out = format!(
        "matrix of {} on P_{} ({}x{}):\n",
        d.operator, d.degree, d.rows, d.cols
    );
    for row in &d.entries {
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `h` in the source space with `R^{2j} h = v`, if it exists and is unique.
fn r2_source(
    space: &Superspace,
    source: &Subspace,
    j: usize,
    v: &SparseVector,
) -> Option<Polynomial> {
    let ell = source.degree();
    let images: Vec<SparseVector> = source
        .basis_vectors()
        .iter()
        .map(|b| {
            (0..j).fold(b.clone(), |acc, step| {
                space.r2(ell + 2 * step).mul_vec(&acc)
            })
        })
        .collect();
    let k = ell + 2 * j;
    let injective = Subspace::from_vectors(*space.config(), k, &images).dim() == images.len();
    if !injective {
        return None;
    }
    let coeffs = SpanSolver::new(space.dim(k), &images).solve(v)?;
    let h = source
        .basis_vectors()
        .iter()
        .zip(&coeffs)
        .fold(SparseVector::zero(), |acc, (b, c)| acc.add_scaled(c, b));
    Some(space.polynomial(ell, &h))
}

pub fn decompose(
    space: &Superspace,
    input: &str,
    p: &Polynomial,
    k: usize,
) -> Result<DecomposeDocument, CliError> {
    let cfg = *space.config();
    let table = fischer_table(space, k);
    let parts = table
        .decompose(space, p)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut total = Polynomial::zero(cfg);
    let mut components = Vec::new();
    for c in &parts {
        total = total.try_add(&c.polynomial).expect("same superspace");
        let source = match c.kind {
            SummandKind::Zero => None,
            _ if c.j == 0 => None,
            _ => {
                let v = space.vector(k, &c.polynomial).expect("degree k");
                let src = tilde_harmonics(space, c.source_degree);
                r2_source(space, &src, c.j, &v).map(|h| h.to_string())
            }
        };
        components.push(ComponentEntry {
            label: c.label(),
            source_degree: c.source_degree,
            j: c.j,
            kind: c.kind,
            polynomial: c.polynomial.to_string(),
            source,
        });
    }
    Ok(DecomposeDocument {
        schema_version: SCHEMA_VERSION,
        m: cfg.m(),
        n: cfg.n(),
        k,
        input: input.trim().to_string(),
        components,
        resum_ok: total == *p,
        matrix: None,
    })
}

pub fn decompose_text(doc: &DecomposeDocument) -> String {
    let mut out = format!(
        "P_{} on R^({}|{}): {}\n",
        doc.k,
        doc.m,
        2 * doc.n,
        doc.input
    );
    if doc.components.is_empty() {
        out.push_str("  (zero polynomial)\n");
    }
    for c in &doc.components {
        write!(
            out,
            "  [{}] (l={}, j={}, {}): {}",
            c.label, c.source_degree, c.j, c.kind, c.polynomial
        )
        .unwrap();
        if let Some(s) = &c.source {
            write!(out, " = R^{} * ({s})", 2 * c.j).unwrap();
        }
        out.push('\n');
    }
    writeln!(
        out,
        "re-sum: {}",
        if doc.resum_ok { "ok" } else { "MISMATCH" }
    )
    .unwrap();
    if let Some(m) = &doc.matrix {
        out.push_str(&matrix_text(m));
    }
    out
}

pub fn diagram_doc(space: &Superspace, k_max: usize) -> DiagramDocument {
    // fill the subspace caches concurrently; the diagram itself is cheap
    (0..=k_max).into_par_iter().for_each(|k| {
        tilde_harmonics(space, k);
        harmonics(space, k);
    });
    DiagramDocument {
        schema_version: SCHEMA_VERSION,
        diagram: diagram(space, k_max),
    }
}

pub fn diagram_text(d: &Diagram) -> String {
    let cell = |label: &str, dim: usize, kind: SummandKind| match kind {
        SummandKind::Zero => "0".to_string(),
        _ => format!("{label}[{dim}]"),
    };
    let width = d
        .rows
        .iter()
        .flat_map(|r| {
            r.cells
                .iter()
                .map(|c| cell(&c.label, c.dim, c.kind).chars().count())
        })
        .max()
        .unwrap_or(1)
        .max(4);
    let mut out = space_header(d.m, d.n, d.m as i64 - 2 * d.n as i64, &d.exceptional);
    out.push('\n');
    write!(out, "{:>5} |", "").unwrap();
    for k in 0..=d.k_max {
        write!(out, " {:<width$}", format!("P_{k}")).unwrap();
    }
    out.truncate(out.trim_end().len());
    out.push('\n');
    for row in &d.rows {
        write!(out, "{:>5} |", format!("l={}", row.source_degree)).unwrap();
        for k in 0..=d.k_max {
            let text = row
                .cells
                .iter()
                .find(|c| c.degree == k)
                .map(|c| cell(&c.label, c.dim, c.kind))
                .unwrap_or_default();
            write!(out, " {:<width$}", text).unwrap();
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    out
}

pub fn verify(
    space: &Superspace,
    k_max: usize,
    suite: Suite,
    probes: usize,
    seed: u64,
) -> VerifyDocument {
    let cfg = *space.config();
    let jobs: Vec<(Suite, usize)> = suite
        .expand()
        .into_iter()
        .flat_map(|s| (0..=k_max).map(move |k| (s, k)))
        .collect();
    let checks: Vec<CheckResult> = jobs
        .into_par_iter()
        .map(|(s, k)| crate::suites::run_suite(space, s, k, probes, seed))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let first_failure = checks.iter().find(|c| !c.passed).cloned();
    VerifyDocument {
        schema_version: SCHEMA_VERSION,
        m: cfg.m(),
        n: cfg.n(),
        k_max,
        suite,
        passed: first_failure.is_none(),
        checks,
        first_failure,
    }
}

fn check_line(c: &CheckResult) -> String {
    let mut line = format!(
        "{} {:<10} k={:<2} {}",
        if c.passed { "PASS" } else { "FAIL" },
        c.suite.name(),
        c.k,
        c.name
    );
    if let Some(n) = &c.note {
        write!(line, " ({n})").unwrap();
    }
    if let Some(w) = &c.witness {
        write!(
            line,
            "\n     witness: operator {}, degree {}, vector {}",
            w.operator, w.degree, w.vector
        )
        .unwrap();
    }
    line
}

pub fn verify_text(doc: &VerifyDocument) -> String {
    let mut out = format!(
        "verify {} on R^({}|{}), k <= {}\n",
        doc.suite.name(),
        doc.m,
        2 * doc.n,
        doc.k_max
    );
    for c in &doc.checks {
        out.push_str(&check_line(c));
        out.push('\n');
    }
    let passed = doc.checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} checks passed", doc.checks.len()).unwrap();
    if let Some(f) = &doc.first_failure {
        writeln!(out, "first failure:\n{}", check_line(f)).unwrap();
    }
    out
}

pub fn structure(space: &Superspace, k: usize, probes: usize, seed: u64) -> StructureDocument {
    StructureDocument {
        schema_version: SCHEMA_VERSION,
        report: structure_report(space, k, probes, seed),
        matrix: None,
    }
}

pub fn structure_text(doc: &StructureDocument) -> String {
    let r: &StructureReport = &doc.report;
    let mut out = format!(
        "structure of P_{} on R^({}|{}), M = {}{}\n",
        r.k,
        r.m,
        2 * r.n,
        r.superdimension,
        if r.exceptional {
            ", exceptional degree"
        } else {
            ""
        }
    );
    let s = r.spaces;
    writeln!(
        out,
        "dims: P_k {}, H~_k {}, H_k {}, H0_k {}",
        s.polynomials, s.tilde_harmonics, s.harmonics, s.h0
    )
    .unwrap();
    writeln!(
        out,
        "chain ({},{},{})",
        s.h0, s.harmonics, s.tilde_harmonics
    )
    .unwrap();
    out.push_str("checks:\n");
    for c in &r.checks {
        writeln!(
            out,
            "  [{}] {}",
            if c.holds { "ok" } else { "FAIL" },
            c.name
        )
        .unwrap();
    }
    let l = &r.lattice;
    writeln!(
        out,
        "lattice probe: module dims {:?}, {} probes, as expected: {}",
        l.module_dims,
        l.probes,
        if l.probes_as_expected { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(
        out,
        "composition factor dims: expected {:?}, computed {:?}",
        r.composition.expected, r.composition.computed
    )
    .unwrap();
    let c = &r.commutant;
    let dim = c
        .commutant_dim
        .map_or_else(|| "?".to_string(), |d| d.to_string());
    let verdict = match &c.verdict {
        IdempotentVerdict::Decomposable { rank } => format!("nontrivial idempotent of rank {rank}"),
        IdempotentVerdict::NoIdempotent => "no nontrivial idempotent".to_string(),
        IdempotentVerdict::Inconclusive { reason } => format!("inconclusive ({reason})"),
    };
    write!(out, "commutant of H~_k: dim {dim}, {verdict}").unwrap();
    if let Some(nd) = &c.nilpotent {
        write!(
            out,
            ", R²Δ of rank {}{}",
            nd.rank,
            if nd.square_zero {
                " with square zero"
            } else {
                ""
            }
        )
        .unwrap();
    }
    out.push('\n');
    if let Some(cs) = &r.casimir {
        writeln!(
            out,
            "casimir on H~_k: {} + nilpotent of rank {}{}",
            cs.scalar,
            cs.nilpotent_rank,
            if cs.square_zero { ", square zero" } else { "" }
        )
        .unwrap();
    }
    let verdict = match r.verdict {
        Verdict::Holds => "holds",
        Verdict::Fails => "FAILS",
        Verdict::OutsideHypothesis => "outside hypothesis (m = 0)",
    };
    writeln!(out, "verdict: {verdict}").unwrap();
    for n in &r.notes {
        writeln!(out, "note: {n}").unwrap();
    }
    if let Some(m) = &doc.matrix {
        out.push_str(&matrix_text(m));
    }
    out
}

pub fn check_degree(k: usize, unsafe_bounds: bool) -> Result<(), CliError> {
    if !unsafe_bounds && k > MAX_K {
        return Err(CliError::Usage(format!(
            "degree {k} exceeds the bound {MAX_K} (use --unsafe-bounds)"
        )));
    }
    Ok(())
}
