//! Machine-readable report and its JSON schema.

use cubicdet::realgeom::{ConjKind, DefinitenessResult, LineKindTag, SegreType};
use cubicdet::scalars::ScalarKind;
use cubicdet::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::spec::{JScalar, Mode};

pub const SCHEMA_VERSION: &str = "1.0.0";
const SCHEMA_MAJOR: u64 = 1;

/// Row-major 3×3 matrix.
pub type JMatrix = Vec<Vec<JScalar>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceInfo {
    pub source: String,
    pub field: ScalarKind,
    pub mode: Mode,
    /// Coefficients in graded-lex order.
    pub cubic: Vec<JScalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineRecord {
    pub label: String,
    /// Two linear forms cutting out the line, in reduced echelon form.
    pub forms: Vec<Vec<JScalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub lines: [String; 3],
    pub coefficients: Vec<JScalar>,
    pub eckardt: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoubleSixRecord {
    pub upper: Vec<String>,
    pub lower: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub lines: Vec<LineRecord>,
    pub tritangent_planes: Vec<PlaneRecord>,
    pub double_sixes: Vec<DoubleSixRecord>,
    pub steiner_sets: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepresentationRecord {
    pub double_six: DoubleSixRecord,
    /// Lines induced by the columns (the upper row).
    pub column_lines: Vec<String>,
    /// Index of the representative equivalent to the transpose.
    pub transpose: usize,
    /// Coefficient matrices of `z0..z3`.
    pub coefficients: Vec<JMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjDoubleSixRecord {
    pub double_six: DoubleSixRecord,
    pub kind: ConjKind,
    pub tau: [usize; 6],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealRecord {
    pub segre_type: SegreType,
    /// Real, first-kind and second-kind line counts.
    pub counts: [usize; 3],
    pub line_kinds: Vec<LineKindTag>,
    pub self_conjugate_double_sixes: Vec<ConjDoubleSixRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfAdjointRecord {
    pub double_six: Option<DoubleSixRecord>,
    pub gamma: Option<JScalar>,
    pub coefficients: Vec<JMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefinitenessRecord {
    pub class: usize,
    pub result: DefinitenessResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefinitenessSummary {
    pub definite: usize,
    pub indefinite: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            value: None,
            detail: String::new(),
        }
    }
    pub fn value(mut self, v: f64) -> Self {
        self.value = Some(v);
        self
    }
    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Input,
    Verification,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Input => 2,
            ErrorKind::Verification => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub command: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configuration: Option<Configuration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representations: Option<Vec<RepresentationRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real: Option<RealRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selfadjoint: Option<Vec<SelfAdjointRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definiteness: Option<Vec<DefinitenessRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definiteness_summary: Option<DefinitenessSummary>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION.into(),
            command: command.into(),
            seed,
            surface: None,
            configuration: None,
            representations: None,
            real: None,
            selfadjoint: None,
            definiteness: None,
            definiteness_summary: None,
            checks: Vec::new(),
            error: None,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Parses a report, rejecting schema versions with another major number.
    pub fn from_json(s: &str) -> Result<Report> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        let ver = v
            .get("schema_version")
            .and_then(|x| x.as_str())
            .ok_or_else(|| Error::Schema("missing schema_version".into()))?;
        let major: u64 = ver
            .split('.')
            .next()
            .and_then(|m| m.parse().ok())
            .ok_or_else(|| Error::Schema(format!("bad schema_version `{ver}`")))?;
        if major != SCHEMA_MAJOR {
            return Err(Error::Schema(format!("unsupported schema major version {major}")));
        }
        serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))
    }
}

/// Any serializable value as JSON text.
pub fn to_json_value<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Schema(e.to_string()))
}
