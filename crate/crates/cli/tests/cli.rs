use std::process::{Command, Output};

use superharm::fischer::SummandKind;
use superharm_cli::documents::{
    DecomposeDocument, DiagramDocument, DimsDocument, StructureDocument, VerifyDocument,
    SCHEMA_VERSION,
};

fn superharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superharm"))
        .args(args)
        .env_remove("SUPERHARM_FORMAT")
        .output()
        .expect("binary runs")
}

fn json<T: serde::de::DeserializeOwned>(args: &[&str]) -> (T, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = superharm(&all);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (doc, out.status.code().unwrap())
}

#[test]
fn dims_row_at_the_exceptional_degree() {
    let (doc, code) = json::<DimsDocument>(&["dims", "--m", "2", "--n", "1", "--kmax", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc.schema_version, SCHEMA_VERSION);
    assert_eq!(doc.exceptional, vec![2]);
    let row = &doc.rows[2];
    assert_eq!(
        (row.polynomials, row.harmonics, row.tilde_harmonics, row.h0),
        (8, 7, 8, 1)
    );
    assert!(row.exceptional);
}

#[test]
fn dims_marks_the_exceptional_window() {
    let (doc, _) = json::<DimsDocument>(&["dims", "--m", "2", "--n", "3", "--kmax", "8"]);
    let marked: Vec<usize> = doc
        .rows
        .iter()
        .filter(|r| r.exceptional)
        .map(|r| r.k)
        .collect();
    assert_eq!(marked, vec![4, 5, 6]);
    assert_eq!(doc.superdimension, -4);

    let (doc, _) = json::<DimsDocument>(&["dims", "--m", "3", "--n", "0", "--kmax", "2"]);
    assert!(doc.rows.iter().all(|r| !r.exceptional));
}

#[test]
fn decompose_splits_off_the_trace() {
    let (doc, code) = json::<DecomposeDocument>(&["decompose", "--m", "3", "--n", "0", "x1^2"]);
    assert_eq!(code, 0);
    assert!(doc.resum_ok);
    assert_eq!(doc.components.len(), 2);
    assert_eq!(
        doc.components[0].polynomial,
        "2/3*x1^2 - 1/3*x2^2 - 1/3*x3^2"
    );
    assert_eq!(doc.components[1].j, 1);
    assert_eq!(doc.components[1].source.as_deref(), Some("1/3"));

    // at the exceptional degree the square is not split
    let (doc, _) = json::<DecomposeDocument>(&["decompose", "--m", "2", "--n", "1", "x1^2"]);
    assert_eq!(doc.components.len(), 1);
    assert_eq!(doc.components[0].kind, SummandKind::Tilde);
}

#[test]
fn decompose_fermionic_square_is_a_single_component() {
    let (doc, _) =
        json::<DecomposeDocument>(&["decompose", "--m", "2", "--n", "1", "theta1*theta2"]);
    assert_eq!(doc.components.len(), 1);
    assert!(doc.components[0].label.starts_with("H~"));
}

#[test]
fn bad_polynomials_are_usage_errors() {
    let out = superharm(&["decompose", "--m", "2", "--n", "1", "x1 + x1^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not homogeneous"));

    let out = superharm(&["decompose", "--m", "2", "--n", "1", "x1 +* x2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = superharm(&["decompose", "--m", "2", "--n", "1", "x7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diagram_rows() {
    let (doc, _) = json::<DiagramDocument>(&["diagram", "--m", "2", "--n", "3", "--kmax", "8"]);
    let first = &doc.diagram.rows[0];
    assert_eq!(first.source_degree, 0);
    let labels: Vec<&str> = first.cells.iter().map(|c| c.label.as_str()).collect();
    assert_eq!(&labels[..3], &["H_0", "R^2 H_0", "R^4 H_0"]);
    assert_eq!(first.cells[3].kind, SummandKind::Zero);

    let (doc, _) = json::<DiagramDocument>(&["diagram", "--m", "0", "--n", "2", "--kmax", "4"]);
    assert_eq!(doc.diagram.rows.len(), 3);
}

#[test]
fn verify_sl2_passes() {
    let out = superharm(&[
        "verify", "--m", "2", "--n", "1", "--kmax", "6", "--suite", "sl2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("checks passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_structure_suite() {
    let (doc, code) = json::<VerifyDocument>(&[
        "verify",
        "--m",
        "2",
        "--n",
        "1",
        "--kmax",
        "4",
        "--suite",
        "structure",
    ]);
    assert_eq!(code, 0);
    assert!(doc.passed && doc.first_failure.is_none());
    let at_two = doc.checks.iter().find(|c| c.k == 2).unwrap();
    assert!(at_two.note.as_deref().unwrap().contains("(1,7,8)"));
}

#[test]
fn corrupted_metric_is_caught_with_a_witness() {
    let (doc, code) = json::<VerifyDocument>(&[
        "--corrupt-metric",
        "verify",
        "--m",
        "2",
        "--n",
        "1",
        "--kmax",
        "3",
        "--suite",
        "fischer",
    ]);
    assert_eq!(code, 1);
    assert!(!doc.passed);
    let first = doc.first_failure.unwrap();
    assert!(first.witness.is_some());
}

#[test]
fn structure_report_at_the_exceptional_degree() {
    let (doc, code) = json::<StructureDocument>(&["structure", "--m", "2", "--n", "1", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(doc.report.exceptional);
    let dims = &doc.report.spaces;
    assert_eq!((dims.h0, dims.harmonics, dims.tilde_harmonics), (1, 7, 8));
    assert_eq!(doc.report.composition.computed, vec![1, 6, 1]);
}

#[test]
fn bounds_are_enforced() {
    let out = superharm(&["dims", "--m", "9", "--n", "1", "--kmax", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = superharm(&["dims", "--m", "2", "--n", "1", "--kmax", "40"]);
    assert_eq!(out.status.code(), Some(2));
    let out = superharm(&[
        "dims",
        "--m",
        "5",
        "--n",
        "0",
        "--kmax",
        "2",
        "--unsafe-bounds",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "--format",
        "json",
        "structure",
        "--m",
        "1",
        "--n",
        "1",
        "--k",
        "3",
    ];
    let a = superharm(&args);
    let b = superharm(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = superharm(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn format_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_superharm"))
        .args(["dims", "--m", "1", "--n", "0", "--kmax", "2"])
        .env("SUPERHARM_FORMAT", "json")
        .output()
        .unwrap();
    let doc: DimsDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.rows.len(), 3);
}

#[test]
fn matrix_dump() {
    let (doc, _) = json::<DecomposeDocument>(&[
        "decompose",
        "--m",
        "2",
        "--n",
        "1",
        "x1^2",
        "--dump-matrix",
        "laplace",
    ]);
    let m = doc.matrix.unwrap();
    assert_eq!(m.entries.len(), m.rows);
    assert!(m.entries.iter().all(|r| r.len() == m.cols));
    assert_eq!(m.cols, 8);

    let out = superharm(&[
        "decompose",
        "--m",
        "2",
        "--n",
        "1",
        "x1^2",
        "--dump-matrix",
        "bogus",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn documents_round_trip() {
    let out = superharm(&[
        "--format", "json", "verify", "--m", "1", "--n", "1", "--kmax", "3",
    ]);
    let doc: VerifyDocument = serde_json::from_slice(&out.stdout).unwrap();
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again.as_bytes(), out.stdout.as_slice());
}
