use std::fmt;

use serde::Serialize;

/// Severity of a report-style finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// A named violation produced by the report-style validators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub code: &'static str,
    pub severity: Severity,
    pub detail: String,
}

impl Finding {
    pub fn error(code: &'static str, detail: impl Into<String>) -> Self {
        Finding {
            code,
            severity: Severity::Error,
            detail: detail.into(),
        }
    }

    pub fn warning(code: &'static str, detail: impl Into<String>) -> Self {
        Finding {
            code,
            severity: Severity::Warning,
            detail: detail.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.detail)
    }
}

/// Collects findings; `is_ok` ignores warnings.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn push(&mut self, finding: Finding) {
        self.findings.push(finding);
    }

    pub fn is_ok(&self) -> bool {
        !self.findings.iter().any(Finding::is_error)
    }

    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has(&self, code: &str) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.is_error())
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.is_error())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot parse rational {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("label mismatch: {0}")]
    IndexMismatch(String),
    #[error("point is not in the skeleton: {0}")]
    NotInSkeleton(String),
    #[error("unknown stratum {0}")]
    UnknownStratum(String),
    #[error("unknown component {0:?}")]
    UnknownComponent(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("segment of edge {0:?} leaves the skeleton")]
    SegmentLeavesSkeleton(String),
    #[error("function for component {component:?} has no dominant term on the annulus: {detail}")]
    NotInvertible { component: String, detail: String },
    #[error("no Laurent data for component {0:?}")]
    MissingFunction(String),
    #[error("malformed Laurent data: {0}")]
    BadLaurent(String),
    #[error("no cycle data for stratum {0}")]
    MissingCycleData(String),
    #[error("restriction classes do not sum to zero: {0}")]
    RelationViolated(String),
    #[error("class vector has length {got}, expected {expected}")]
    ClassLength { expected: usize, got: usize },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("weight mismatch on edge {edge:?}: curve has {curve}, annuli give {computed}")]
    WeightMismatch {
        edge: String,
        curve: String,
        computed: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("validation failed: {}", join_findings(.0))]
    Validation(Vec<Finding>),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn join_findings(findings: &[Finding]) -> String {
    findings
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// Stable machine-readable code for the error object emitted by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "E_PARSE",
            Error::IndexMismatch(_) => "E_INDEX_MISMATCH",
            Error::NotInSkeleton(_) => "E_NOT_IN_SKELETON",
            Error::UnknownStratum(_) => "E_UNKNOWN_STRATUM",
            Error::UnknownComponent(_) => "E_UNKNOWN_COMPONENT",
            Error::UnknownVertex(_) => "E_UNKNOWN_VERTEX",
            Error::UnknownEdge(_) => "E_UNKNOWN_EDGE",
            Error::SegmentLeavesSkeleton(_) => "E_SEGMENT_LEAVES_SKELETON",
            Error::NotInvertible { .. } => "E_NOT_INVERTIBLE",
            Error::MissingFunction(_) => "E_MISSING_FUNCTION",
            Error::BadLaurent(_) => "E_BAD_LAURENT",
            Error::MissingCycleData(_) => "E_MISSING_CYCLE_DATA",
            Error::RelationViolated(_) => "E_RELATION_VIOLATED",
            Error::ClassLength { .. } => "E_CLASS_LENGTH",
            Error::UnknownFixture(_) => "E_UNKNOWN_FIXTURE",
            Error::WeightMismatch { .. } => "E_WEIGHT_MISMATCH",
            Error::Invalid(_) => "E_INVALID",
            Error::Validation(findings) => findings
                .iter()
                .find(|f| f.is_error())
                .map_or("E_VALIDATION", |f| f.code),
            Error::Json(_) => "E_JSON",
            Error::Io(_) => "E_IO",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
