//! JSON interchange formats: degenerations, curves, annulus data, and outputs.

use std::path::Path;

use indexmap::IndexMap;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::balance::CycleDataMap;
use crate::chow::{alpha_from_surface, BlownPlane, StratumCycleData};
use crate::complex::{EmbeddedFace, IntersectionComplex, Stratum};
use crate::error::Error;
use crate::newton::{edge_weight, AnnulusData, LaurentData, LaurentTerm, ValInterval};
use crate::ratlinalg::{IntVector, RatMatrix, RatVector, Rational};
use crate::tropcurve::{TropicalCurve, TropicalEdge, TropicalVertex};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerationFile {
    pub name: String,
    pub components: Vec<String>,
    pub strata: Vec<StratumEntry>,
    pub maximal_faces: Vec<FaceEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumEntry {
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycle_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrictions: Option<IndexMap<String, Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    pub components: Vec<String>,
    pub val_a: Rational,
}

/// An intersection complex together with the α data of its strata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneration {
    pub complex: IntersectionComplex,
    pub cycle_data: CycleDataMap,
}

impl Degeneration {
    /// `strict` makes surface models with non-cancelling restriction classes an error.
    pub fn from_file(file: DegenerationFile, strict: bool) -> Result<Self, Error> {
        let complex = IntersectionComplex::new(
            file.name,
            file.components,
            file.strata.iter().map(|s| s.components.clone()).collect(),
            file.maximal_faces
                .into_iter()
                .map(|f| (f.components, f.val_a))
                .collect(),
        )?;
        let mut cycle_data = CycleDataMap::new();
        for entry in file.strata {
            let stratum = complex.stratum_of(&entry.components)?;
            let shown = complex.display(&stratum);
            let mut data = match (
                entry.alpha,
                entry.cycle_basis,
                entry.surface,
                entry.restrictions,
            ) {
                (None, None, None, None) => continue,
                (Some(_), _, Some(_), _) | (Some(_), _, _, Some(_)) => {
                    return Err(Error::Invalid(format!(
                        "stratum {shown} gives both inline alpha and a surface model"
                    )))
                }
                (alpha, Some(basis), None, None) => {
                    let rows = match alpha {
                        Some(rows) => rows,
                        None if basis.is_empty() => {
                            vec![Vec::new(); complex.components().len()]
                        }
                        None => {
                            return Err(Error::Invalid(format!(
                                "stratum {shown} has a cycle basis but no alpha"
                            )))
                        }
                    };
                    StratumCycleData::new(&complex, stratum.clone(), basis, rows)?
                }
                (Some(_), None, None, None) => {
                    return Err(Error::Invalid(format!(
                        "stratum {shown} has alpha but no cycle_basis"
                    )))
                }
                (None, basis, Some(surface), restrictions) => {
                    if surface.kind != "blown_plane" {
                        return Err(Error::Invalid(format!(
                            "unknown surface type {:?}",
                            surface.kind
                        )));
                    }
                    let plane = BlownPlane::new(surface.n_points);
                    if basis.is_some_and(|b| b != plane.basis_names()) {
                        return Err(Error::Invalid(format!(
                            "stratum {shown}: cycle_basis must be the blown-plane basis"
                        )));
                    }
                    let restrictions = restrictions
                        .unwrap_or_default()
                        .into_iter()
                        .map(|(k, v)| (k, v.into_iter().map(BigInt::from).collect()))
                        .collect();
                    alpha_from_surface(&complex, stratum.clone(), plane, restrictions, strict)?
                }
                (None, _, None, Some(_)) => {
                    return Err(Error::Invalid(format!(
                        "stratum {shown} has restrictions but no surface"
                    )))
                }
            };
            data.projective = entry.projective.unwrap_or(true);
            data.note = entry.note;
            if cycle_data.insert(stratum, data).is_some() {
                return Err(Error::Invalid(format!("stratum {shown} listed twice")));
            }
        }
        Ok(Degeneration {
            complex,
            cycle_data,
        })
    }

    pub fn to_file(&self) -> DegenerationFile {
        let c = &self.complex;
        let strata = c
            .strata()
            .map(|s| {
                let mut entry = StratumEntry {
                    components: c.names(s),
                    cycle_basis: None,
                    alpha: None,
                    surface: None,
                    restrictions: None,
                    projective: None,
                    note: None,
                };
                if let Some(data) = self.cycle_data.get(s) {
                    match &data.model {
                        Some(model) => {
                            entry.surface = Some(SurfaceEntry {
                                kind: "blown_plane".into(),
                                n_points: model.surface.n_points,
                            });
                            entry.restrictions = Some(
                                model
                                    .restrictions
                                    .iter()
                                    .map(|(k, v)| {
                                        (k.clone(), v.iter().map(bigint_to_i64).collect())
                                    })
                                    .collect(),
                            );
                        }
                        None => {
                            entry.cycle_basis = Some(data.basis_names.clone());
                            if !data.basis_names.is_empty() {
                                entry.alpha = Some(data.alpha.rows());
                            }
                        }
                    }
                    entry.projective = (!data.projective).then_some(false);
                    entry.note = data.note.clone();
                }
                entry
            })
            .collect();
        DegenerationFile {
            name: c.name().to_string(),
            components: c.components().to_vec(),
            strata,
            maximal_faces: c
                .maximal_faces()
                .iter()
                .map(|f| FaceEntry {
                    components: c.names(&f.stratum),
                    val_a: f.val_a.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str, strict: bool) -> Result<Self, Error> {
        Self::from_file(serde_json::from_str(text)?, strict)
    }

    pub fn load(path: &Path, strict: bool) -> Result<Self, Error> {
        Self::from_json(&std::fs::read_to_string(path)?, strict)
    }

    pub fn to_json(&self) -> String {
        to_pretty_json(&self.to_file())
    }

    /// Looks up cycle data by a comma-separated component list such as `"D0,D1"`.
    pub fn stratum_data(&self, names: &str) -> Result<(Stratum, &StratumCycleData), Error> {
        let names: Vec<&str> = names
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let s = self.complex.stratum_of(&names)?;
        if !self.complex.is_stratum(&s) {
            return Err(Error::UnknownStratum(self.complex.display(&s)));
        }
        let data = self
            .cycle_data
            .get(&s)
            .ok_or_else(|| Error::MissingCycleData(self.complex.display(&s)))?;
        Ok((s, data))
    }
}

fn bigint_to_i64(v: &BigInt) -> i64 {
    i64::try_from(v).expect("class vector entries fit in i64")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub coords: RatVector,
    #[serde(default)]
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub id: String,
    pub from: String,
    pub to: String,
    pub weight: IntVector,
}

impl From<CurveFile> for TropicalCurve {
    fn from(file: CurveFile) -> Self {
        TropicalCurve {
            vertices: file
                .vertices
                .into_iter()
                .map(|v| TropicalVertex {
                    id: v.id,
                    coords: v.coords,
                    boundary: v.boundary,
                })
                .collect(),
            edges: file
                .edges
                .into_iter()
                .map(|e| TropicalEdge {
                    id: e.id,
                    from: e.from,
                    to: e.to,
                    weight: e.weight,
                })
                .collect(),
        }
    }
}

impl From<&TropicalCurve> for CurveFile {
    fn from(t: &TropicalCurve) -> Self {
        CurveFile {
            vertices: t
                .vertices
                .iter()
                .map(|v| VertexEntry {
                    id: v.id.clone(),
                    coords: v.coords.clone(),
                    boundary: v.boundary,
                })
                .collect(),
            edges: t
                .edges
                .iter()
                .map(|e| EdgeEntry {
                    id: e.id.clone(),
                    from: e.from.clone(),
                    to: e.to.clone(),
                    weight: e.weight.clone(),
                })
                .collect(),
        }
    }
}

pub fn curve_from_json(text: &str) -> Result<TropicalCurve, Error> {
    Ok(serde_json::from_str::<CurveFile>(text)?.into())
}

pub fn curve_to_json(t: &TropicalCurve) -> String {
    to_pretty_json(&CurveFile::from(t))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnuliFile {
    pub components: Vec<String>,
    pub edges: Vec<EdgeAnnuli>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeAnnuli {
    pub edge_id: String,
    pub annuli: Vec<AnnulusEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnnulusEntry {
    pub val_z_interval: (Rational, Rational),
    pub functions: IndexMap<String, Vec<TermEntry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub m: i64,
    pub val: Rational,
}

impl AnnulusEntry {
    pub fn to_data(&self) -> Result<AnnulusData, Error> {
        let (lo, hi) = self.val_z_interval.clone();
        let functions = self
            .functions
            .iter()
            .map(|(k, terms)| {
                let data = LaurentData::new(
                    terms
                        .iter()
                        .map(|t| LaurentTerm {
                            exponent: t.m,
                            val: t.val.clone(),
                        })
                        .collect(),
                )
                .map_err(|e| Error::BadLaurent(format!("component {k}: {e}")))?;
                Ok((k.clone(), data))
            })
            .collect::<Result<_, Error>>()?;
        Ok(AnnulusData {
            interval: ValInterval::new(lo, hi)?,
            functions,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeWeight {
    pub edge_id: String,
    pub weight: IntVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightsOutput {
    pub edges: Vec<EdgeWeight>,
}

impl AnnuliFile {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }

    /// Per-edge weights in file order.
    pub fn weights(&self) -> Result<WeightsOutput, Error> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let annuli = e
                    .annuli
                    .iter()
                    .map(AnnulusEntry::to_data)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(EdgeWeight {
                    edge_id: e.edge_id.clone(),
                    weight: edge_weight(&annuli, &self.components)?,
                })
            })
            .collect::<Result<_, Error>>()?;
        Ok(WeightsOutput { edges })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonFace {
    pub face: Vec<String>,
    pub val_a: Rational,
    pub vertices: Vec<RatVector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkeletonOutput {
    pub name: String,
    pub faces: Vec<SkeletonFace>,
}

impl SkeletonOutput {
    pub fn new(c: &IntersectionComplex, faces: Vec<EmbeddedFace>) -> Self {
        SkeletonOutput {
            name: c.name().to_string(),
            faces: faces
                .into_iter()
                .map(|f| SkeletonFace {
                    face: c.names(&f.stratum),
                    val_a: f.val_a,
                    vertices: f.vertices,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaOutput<'a> {
    pub stratum: Vec<String>,
    pub alpha: &'a RatMatrix,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocateOutput {
    pub face: Vec<String>,
}

/// All three files of a fixture in one document.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutput<'a> {
    pub degeneration: &'a DegenerationFile,
    pub curve: &'a CurveFile,
    pub annuli: &'a AnnuliFile,
}

/// Machine-readable error object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorObject {
    pub error: String,
    pub detail: String,
}

impl From<&Error> for ErrorObject {
    fn from(e: &Error) -> Self {
        ErrorObject {
            error: e.code().to_string(),
            detail: e.to_string(),
        }
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Parses `"D0=1/2,D1=1/2"` into a point.
pub fn parse_point(text: &str) -> Result<RatVector, Error> {
    let pairs = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|part| {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected name=value, got {part:?}")))?;
            Ok((k.trim().to_string(), crate::ratlinalg::rat_parse(v)?))
        })
        .collect::<Result<Vec<(String, Rational)>, Error>>()?;
    RatVector::from_pairs(pairs)
}
