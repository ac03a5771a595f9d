//! Task-file schema.

use momentum_core::io::DataDoc;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<DataDoc>,
    pub task: TaskKind,
    #[serde(default)]
    pub parameters: Parameters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric_mode: Option<NumericMode>,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    Analyze,
    Profile,
    C0,
    Einstein,
    Table2,
    Extremal,
    Coords,
}

impl TaskKind {
    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Analyze => "analyze",
            TaskKind::Profile => "profile",
            TaskKind::C0 => "c0",
            TaskKind::Einstein => "einstein",
            TaskKind::Table2 => "table2",
            TaskKind::Extremal => "extremal",
            TaskKind::Coords => "coords",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum FamilyDoc {
    /// `φ(0) = 0`, `φ'(0) = 2` on `[0, ∞)`.
    #[default]
    A,
    /// `φ(0) = φ'(0) = 0` on `(0, ∞)`.
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ConventionDoc {
    #[default]
    Derived,
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    C,
    B,
    Lambda,
    /// Background `a` of vector-bundle data, swept towards the collapse `a → 0`.
    Collapse,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            SweepParameter::C => "c",
            SweepParameter::B => "b",
            SweepParameter::Lambda => "lambda",
            SweepParameter::Collapse => "a",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepDoc {
    pub parameter: SweepParameter,
    pub from: String,
    pub to: String,
    pub step: String,
}

/// Scalars are strings, as in data documents.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default)]
    pub family: FamilyDoc,
    pub c: Option<String>,
    pub lambda: Option<String>,
    pub b: Option<String>,
    /// `(φ'(−b), φ'(b))`; defaults to `(2, −2)`.
    pub slopes: Option<[String; 2]>,
    pub b_range: Option<[String; 2]>,
    #[serde(default)]
    pub convention: ConventionDoc,
    pub alpha: Option<String>,
    pub tau_samples: Option<Vec<f64>>,
    pub r_samples: Option<Vec<f64>>,
    pub sweep: Option<SweepDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NumericMode {
    Exact {},
    Float {
        #[serde(default = "default_epsilon")]
        epsilon: f64,
    },
}

pub fn default_epsilon() -> f64 {
    1e-10
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "default_report")]
    pub report: String,
    #[serde(default = "default_tables")]
    pub tables: String,
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { report: default_report(), tables: default_tables() }
    }
}

fn default_report() -> String {
    "report.json".into()
}

fn default_tables() -> String {
    "tables".into()
}
