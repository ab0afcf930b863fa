//! Per-vertex decision of the generalized balancing condition: the sum of
//! away-oriented weights at a non-boundary vertex must lie in the rational
//! image of α for the stratum whose relative interior contains the vertex.
//!
//! This is a necessary condition only. A balanced verdict means the vertex is
//! consistent with the condition, never that the curve is realizable.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chow::StratumCycleData;
use crate::complex::{j_set, locate, validate_complex, IntersectionComplex, Stratum};
use crate::error::{Error, Finding};
use crate::ratlinalg::{solve_membership, IntVector, RatVector, Verdict};
use crate::tropcurve::{incident_weights, normalize, validate_curve, TropicalCurve};

pub type CycleDataMap = BTreeMap<Stratum, StratumCycleData>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexStatus {
    Balanced,
    Violated,
    SkippedBoundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexVerdict {
    pub vertex: String,
    pub face: Vec<String>,
    pub sigma: IntVector,
    pub status: VertexStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RatVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<RatVector>,
    pub notes: Vec<String>,
}

impl VertexVerdict {
    pub fn summary(&self) -> &'static str {
        match self.status {
            VertexStatus::Balanced => "consistent with the balancing condition",
            VertexStatus::Violated => "violates the balancing condition",
            VertexStatus::SkippedBoundary => "skipped (boundary vertex)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    AllBalanced,
    HasViolation,
    HasErrors,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub overall: Overall,
    pub verdicts: Vec<VertexVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<Finding>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<Finding>,
}

impl BalanceReport {
    pub fn verdict(&self, vertex: &str) -> Option<&VertexVerdict> {
        self.verdicts.iter().find(|v| v.vertex == vertex)
    }

    pub fn violated(&self) -> impl Iterator<Item = &VertexVerdict> {
        self.verdicts
            .iter()
            .filter(|v| v.status == VertexStatus::Violated)
    }
}

/// `σ_v`: sum of the weights at `v`, each oriented away from `v`.
pub fn sigma(t: &TropicalCurve, v: &str) -> Result<IntVector, Error> {
    let mut total = IntVector::default();
    for w in incident_weights(t, v)? {
        total.add_assign(&w);
    }
    Ok(total)
}

pub fn check_vertex(
    c: &IntersectionComplex,
    cycle_data: &CycleDataMap,
    t: &TropicalCurve,
    v: &str,
) -> Result<VertexVerdict, Error> {
    let vertex = t.vertex(v)?;
    let face = locate(c, &vertex.coords)?;
    let raw = sigma(t, v)?;
    raw.check_labels(c.components())?;
    let sigma = raw.aligned(c.components());

    let mut verdict = VertexVerdict {
        vertex: v.to_string(),
        face: c.names(&face),
        sigma,
        status: VertexStatus::SkippedBoundary,
        witness: None,
        certificate: None,
        notes: Vec::new(),
    };
    if vertex.boundary {
        return Ok(verdict);
    }

    let data = cycle_data
        .get(&face)
        .ok_or_else(|| Error::MissingCycleData(c.display(&face)))?;
    if !data.projective {
        verdict.notes.push(format!(
            "stratum {} is not attested projective; the condition need not hold",
            c.display(&face)
        ));
    }
    let reach = j_set(c, &face)?;
    let outside: Vec<&str> = verdict
        .sigma
        .support()
        .into_iter()
        .filter(|name| c.index_of(name).map(|i| !reach.contains(i)).unwrap_or(true))
        .collect();
    if !outside.is_empty() {
        verdict.notes.push(format!(
            "sigma has support on {outside:?} outside J = {}",
            c.display(&reach)
        ));
    }

    let result = solve_membership(&data.alpha, &verdict.sigma.to_rational())?;
    match result.verdict {
        Verdict::Member => {
            verdict.status = VertexStatus::Balanced;
            let witness = result.witness.expect("member carries a witness");
            if !witness.is_empty() && witness.iter().all(|(_, x)| x.is_integer()) {
                verdict
                    .notes
                    .push("an integral preimage exists (beyond the rational condition)".into());
            }
            verdict.witness = Some(witness);
        }
        Verdict::NonMember => {
            verdict.status = VertexStatus::Violated;
            verdict.certificate = result.certificate;
        }
    }
    Ok(verdict)
}

/// Normalizes and validates the curve, then checks every vertex in id order.
pub fn check_curve(
    c: &IntersectionComplex,
    cycle_data: &CycleDataMap,
    t: &TropicalCurve,
    strict: bool,
) -> BalanceReport {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let mut sort = |findings: Vec<Finding>, errors: &mut Vec<Finding>| {
        for f in findings {
            if f.is_error() {
                errors.push(f);
            } else {
                warnings.push(f);
            }
        }
    };

    sort(validate_complex(c).findings, &mut errors);
    for data in cycle_data.values() {
        sort(data.check_relation(c, strict), &mut errors);
    }

    let mut verdicts = Vec::new();
    if errors.is_empty() {
        match normalize(c, t) {
            Err(e) => sort(vec![Finding::error(e.code(), e.to_string())], &mut errors),
            Ok(curve) => {
                let report = validate_curve(c, &curve, strict);
                let ok = report.is_ok();
                sort(report.findings, &mut errors);
                if ok {
                    let mut ids: Vec<&str> = curve.vertices.iter().map(|v| v.id.as_str()).collect();
                    ids.sort_unstable();
                    for id in ids {
                        match check_vertex(c, cycle_data, &curve, id) {
                            Ok(v) => verdicts.push(v),
                            Err(e) => sort(
                                vec![Finding::error(e.code(), format!("vertex {id}: {e}"))],
                                &mut errors,
                            ),
                        }
                    }
                }
            }
        }
    }

    let overall = if !errors.is_empty() {
        Overall::HasErrors
    } else if verdicts.iter().any(|v| v.status == VertexStatus::Violated) {
        Overall::HasViolation
    } else {
        Overall::AllBalanced
    };
    BalanceReport {
        overall,
        verdicts,
        errors,
        warnings,
    }
}
