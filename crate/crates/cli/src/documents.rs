//! JSON documents written by the CLI.
//!
//! Every document carries `schema_version`; the same types parse the
//! output back.

use serde::{Deserialize, Serialize};
use superharm::fischer::{Diagram, SummandKind};
use superharm::repthy::StructureReport;

use crate::args::Suite;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsRow {
    pub k: usize,
    pub polynomials: usize,
    pub harmonics: usize,
    pub tilde_harmonics: usize,
    pub h0: usize,
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsDocument {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub k_max: usize,
    pub superdimension: i64,
    pub exceptional: Vec<usize>,
    pub rows: Vec<DimsRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentEntry {
    pub label: String,
    pub source_degree: usize,
    pub j: usize,
    pub kind: SummandKind,
    pub polynomial: String,
    /// `h` with `polynomial = R^{2j} h`, when that `h` is unique.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub operator: String,
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    /// Row-major, entries as `p/q`.
    pub entries: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeDocument {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub input: String,
    pub components: Vec<ComponentEntry>,
    pub resum_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDump>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub schema_version: u32,
    pub diagram: Diagram,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub operator: String,
    pub degree: usize,
    pub vector: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub k: usize,
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub schema_version: u32,
    pub m: usize,
    pub n: usize,
    pub k_max: usize,
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDocument {
    pub schema_version: u32,
    pub report: StructureReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDump>,
}
