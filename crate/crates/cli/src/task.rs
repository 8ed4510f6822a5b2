//! Input schema for `derivlab check` and `derivlab classify`.
//!
//! Every file carries `"schema": "derivlab/1"`. Coefficients are JSON integers
//! or strings such as `"-3/4"`.

use std::collections::BTreeMap;
use std::fmt;

use derivlab::{AlgebraKind, Coeff, Field};
use serde::Deserialize;

pub const SCHEMA: &str = "derivlab/1";
pub const DEFAULT_DEPTH: usize = 16;
pub const DEFAULT_DIM: usize = 64;
pub const DEFAULT_SAMPLES: usize = 16;

/// An input problem, tagged with the JSON path of the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError {
            field: field.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for InputError {}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
pub enum Coefficients {
    #[default]
    Q,
    Fp(u64),
}

impl Coefficients {
    pub fn field(self, path: &str) -> Result<Field, InputError> {
        match self {
            Coefficients::Q => Ok(Field::Rational),
            Coefficients::Fp(p) => Field::prime(p).map_err(|e| InputError::new(path, e)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn to_coeff(&self, field: Field, path: &str) -> Result<Coeff, InputError> {
        match self {
            Scalar::Int(n) => Ok(field.from_i64(*n)),
            Scalar::Text(s) => field.parse_coeff(s).map_err(|e| InputError::new(path, e)),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    #[serde(default)]
    pub coefficients: Coefficients,
    #[serde(default)]
    pub variables: Vec<String>,
}

/// An element: a polynomial expression, or a coordinate vector when the set
/// consists of matrices.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Expr(String),
    Vector(Vec<Scalar>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    #[serde(default)]
    pub preperiod: Vec<String>,
    pub period: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub i: BasisRef,
    pub j: BasisRef,
    pub k: BasisRef,
    pub c: Scalar,
}

/// Structure constants: `e_i · e_j` has coefficient `c` on `e_k`; entries
/// with the same `(i, j, k)` add up.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default)]
    pub schema: Option<String>,
    pub kind: AlgebraKind,
    #[serde(default)]
    pub coefficients: Coefficients,
    pub basis: Vec<String>,
    pub table: Vec<TableEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TaskKind {
    Deg {
        set: Vec<String>,
        element: ElementSpec,
        depth: Option<usize>,
    },
    NilMembership {
        set: Vec<String>,
        element: ElementSpec,
        schedule: Option<ScheduleSpec>,
        depth: Option<usize>,
    },
    SetLnd {
        set: Vec<String>,
        /// Defaults to the ring variables or the standard basis.
        generators: Option<Vec<ElementSpec>>,
        depth: Option<usize>,
    },
    LieUnil {
        set: Vec<String>,
        element: ElementSpec,
        depth: Option<usize>,
    },
    Classify {
        /// Defaults to the basis.
        generators: Option<Vec<Vec<Scalar>>>,
        samples: Option<usize>,
        seed: Option<u64>,
        depth: Option<usize>,
    },
    AdIndex {
        d: String,
        e: String,
        /// Defaults to the ring variables.
        separating: Option<Vec<String>>,
        depth: Option<usize>,
    },
    FgNilpotency {
        generators: Vec<String>,
        separating: Option<Vec<String>>,
        dim: Option<usize>,
        depth: Option<usize>,
    },
    Reproduce {
        example: String,
        n: Option<usize>,
        #[serde(rename = "char")]
        characteristic: Option<u64>,
        seed: Option<u64>,
        depth: Option<usize>,
    },
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::Deg { .. } => "deg",
            TaskKind::NilMembership { .. } => "nil-membership",
            TaskKind::SetLnd { .. } => "set-lnd",
            TaskKind::LieUnil { .. } => "lie-unil",
            TaskKind::Classify { .. } => "classify",
            TaskKind::AdIndex { .. } => "ad-index",
            TaskKind::FgNilpotency { .. } => "fg-nilpotency",
            TaskKind::Reproduce { .. } => "reproduce",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub schema: String,
    #[serde(default)]
    pub ring: RingSpec,
    /// Name to images of variables, `{"D": {"y": "x", "z": "y"}}`.
    #[serde(default)]
    pub derivations: BTreeMap<String, BTreeMap<String, String>>,
    /// Name to matrix rows over the ring's coefficient field.
    #[serde(default)]
    pub operators: BTreeMap<String, Vec<Vec<Scalar>>>,
    #[serde(default)]
    pub algebra: Option<AlgebraSpec>,
    pub task: TaskKind,
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let field = if path == "." { "(root)".to_string() } else { path };
        InputError::new(field, e.into_inner())
    })
}

fn check_schema(schema: Option<&str>, path: &str) -> Result<(), InputError> {
    match schema {
        Some(SCHEMA) => Ok(()),
        Some(other) => Err(InputError::new(path, format!("unsupported schema `{other}`, expected `{SCHEMA}`"))),
        None => Err(InputError::new(path, format!("missing, expected `{SCHEMA}`"))),
    }
}

impl TaskSpec {
    pub fn parse(text: &str) -> Result<TaskSpec, InputError> {
        let spec: TaskSpec = from_json(text)?;
        check_schema(Some(&spec.schema), "schema")?;
        if let Some(a) = &spec.algebra {
            if let Some(s) = &a.schema {
                check_schema(Some(s), "algebra.schema")?;
            }
        }
        Ok(spec)
    }
}

impl AlgebraSpec {
    /// A standalone algebra file; the schema tag is required there.
    pub fn parse(text: &str) -> Result<AlgebraSpec, InputError> {
        let spec: AlgebraSpec = from_json(text)?;
        check_schema(spec.schema.as_deref(), "schema")?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_deg_task() {
        let text = r#"{
            "schema": "derivlab/1",
            "ring": {"coefficients": {"Fp": 7}, "variables": ["x", "y"]},
            "derivations": {"D": {"x": "1"}},
            "task": {"kind": "deg", "set": ["D"], "element": "x^2"}
        }"#;
        let spec = TaskSpec::parse(text).unwrap();
        assert_eq!(spec.ring.coefficients, Coefficients::Fp(7));
        assert_eq!(spec.task.name(), "deg");
    }

    #[test]
    fn errors_name_the_field() {
        let text = r#"{"schema": "derivlab/1", "task": {"kind": "deg", "set": ["D"], "element": "x", "depht": 3}}"#;
        let err = TaskSpec::parse(text).unwrap_err();
        assert_eq!(err.field, "task");
        assert!(err.message.contains("depht"), "{err}");

        let text = r#"{"schema": "derivlab/1", "ring": {"coefficients": "R"}, "task": {"kind": "reproduce", "example": "x"}}"#;
        assert_eq!(TaskSpec::parse(text).unwrap_err().field, "ring.coefficients");

        let text = r#"{"schema": "derivlab/2", "task": {"kind": "reproduce", "example": "x"}}"#;
        assert_eq!(TaskSpec::parse(text).unwrap_err().field, "schema");
    }

    #[test]
    fn algebra_file_needs_schema() {
        let text = r#"{"kind": "lie", "basis": ["a"], "table": []}"#;
        assert_eq!(AlgebraSpec::parse(text).unwrap_err().field, "schema");
    }
}
