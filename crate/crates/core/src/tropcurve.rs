//! Tropical curves: weighted oriented graphs piecewise linearly embedded in the skeleton.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::complex::{locate, IntersectionComplex};
use crate::error::{Error, Finding, ValidationReport};
use crate::ratlinalg::{IntVector, RatVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalVertex {
    pub id: String,
    pub coords: RatVector,
    /// The vertex lies in the image of the curve's boundary; it is exempt from balancing.
    pub boundary: bool,
}

/// An oriented edge. `weight` is the tropical weight for the orientation `from → to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub weight: IntVector,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TropicalCurve {
    pub vertices: Vec<TropicalVertex>,
    pub edges: Vec<TropicalEdge>,
}

impl TropicalCurve {
    pub fn vertex(&self, id: &str) -> Result<&TropicalVertex, Error> {
        self.vertices
            .iter()
            .find(|v| v.id == id)
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, id: &str) -> Result<&TropicalEdge, Error> {
        self.edges
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn edge_mut(&mut self, id: &str) -> Result<&mut TropicalEdge, Error> {
        self.edges
            .iter_mut()
            .find(|e| e.id == id)
            .ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    fn has_id(&self, id: &str) -> bool {
        self.vertices.iter().any(|v| v.id == id) || self.edges.iter().any(|e| e.id == id)
    }

    fn fresh_id(&self, base: String) -> String {
        let mut id = base;
        while self.has_id(&id) {
            id.push('\'');
        }
        id
    }
}

/// Swaps the endpoints and negates the weight.
pub fn reverse_edge(e: &TropicalEdge) -> TropicalEdge {
    TropicalEdge {
        id: e.id.clone(),
        from: e.to.clone(),
        to: e.from.clone(),
        weight: e.weight.neg(),
    }
}

/// How the weight relates to the displacement `to - from`.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Direction {
    /// `weight = λ · displacement` with the given λ (zero for a zero weight).
    Parallel(Rational),
    NotParallel,
}

fn direction(weight: &[Rational], displacement: &[Rational]) -> Direction {
    if weight.iter().all(Rational::is_zero) {
        return Direction::Parallel(Rational::zero());
    }
    let Some(k) = displacement.iter().position(|d| !d.is_zero()) else {
        return Direction::NotParallel;
    };
    let lambda = &weight[k] / &displacement[k];
    if weight
        .iter()
        .zip(displacement)
        .all(|(w, d)| *w == &lambda * d)
    {
        Direction::Parallel(lambda)
    } else {
        Direction::NotParallel
    }
}

/// Checks the structural and edge invariants of a curve on a valid complex.
///
/// Negative orientation is always an error; zero weights are errors only in
/// strict mode and warnings otherwise.
pub fn validate_curve(
    c: &IntersectionComplex,
    t: &TropicalCurve,
    strict: bool,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let comps = c.components();

    let mut ids = BTreeSet::new();
    for id in t
        .vertices
        .iter()
        .map(|v| &v.id)
        .chain(t.edges.iter().map(|e| &e.id))
    {
        if !ids.insert(id) {
            report.push(Finding::error(
                "E_DUPLICATE_ID",
                format!("id {id:?} is used twice"),
            ));
        }
    }

    for v in &t.vertices {
        if let Err(e) = locate(c, &v.coords) {
            report.push(Finding::error(
                "E_OFF_SKELETON",
                format!("vertex {}: {e}", v.id),
            ));
        }
    }

    for e in &t.edges {
        let (from, to) = match (t.vertex(&e.from), t.vertex(&e.to)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(err), _) | (_, Err(err)) => {
                report.push(Finding::error(
                    "E_UNKNOWN_VERTEX",
                    format!("edge {}: {err}", e.id),
                ));
                continue;
            }
        };
        if e.from == e.to {
            report.push(Finding::error("E_LOOP", format!("edge {} is a loop", e.id)));
            continue;
        }
        if let Err(err) = e.weight.check_labels(comps) {
            report.push(Finding::error(
                "E_WEIGHT_SUPPORT",
                format!("edge {}: {err}", e.id),
            ));
            continue;
        }
        let (Ok(a), Ok(b)) = (c.coords(&from.coords), c.coords(&to.coords)) else {
            // Reported as E_OFF_SKELETON above.
            continue;
        };

        let span = c.support(&from.coords).union(&c.support(&to.coords));
        if !c.is_stratum(&span) {
            report.push(Finding::error(
                "E_EDGE_SPANS_FACES",
                format!(
                    "edge {} spans {}, which is not a stratum",
                    e.id,
                    c.display(&span)
                ),
            ));
        }

        let w: Vec<Rational> = comps
            .iter()
            .map(|l| Rational::from(e.weight.get(l)))
            .collect();
        let outside: Vec<&str> = comps
            .iter()
            .enumerate()
            .filter(|&(i, _)| !w[i].is_zero() && !span.contains(i))
            .map(|(_, l)| l.as_str())
            .collect();
        if !outside.is_empty() {
            report.push(Finding::error(
                "E_WEIGHT_SUPPORT",
                format!(
                    "edge {} has weight on {:?} outside its face {}",
                    e.id,
                    outside,
                    c.display(&span)
                ),
            ));
        }
        if !e.weight.sum().is_zero() {
            report.push(Finding::error(
                "E_WEIGHT_SUM",
                format!("edge {} weight sums to {}", e.id, e.weight.sum()),
            ));
        }

        let d: Vec<Rational> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
        match direction(&w, &d) {
            Direction::NotParallel => report.push(Finding::error(
                "E_NOT_PARALLEL",
                format!("edge {} weight is not parallel to its direction", e.id),
            )),
            Direction::Parallel(lambda) if lambda.is_negative() => report.push(Finding::error(
                "E_ORIENTATION",
                format!("edge {} weight points against its orientation", e.id),
            )),
            Direction::Parallel(lambda) if lambda.is_zero() => {
                let detail = format!("edge {} has zero weight", e.id);
                report.push(if strict {
                    Finding::error("E_ZERO_WEIGHT", detail)
                } else {
                    Finding::warning("E_ZERO_WEIGHT", detail)
                });
            }
            Direction::Parallel(_) => {}
        }
    }
    report
}

/// Parameters in the open interval (0, 1) where some coordinate of `a + τ·d` changes sign.
fn support_breakpoints(a: &[Rational], d: &[Rational]) -> Vec<Rational> {
    let mut taus: Vec<Rational> = a
        .iter()
        .zip(d)
        .filter(|(_, di)| !di.is_zero())
        .map(|(ai, di)| -(ai / di))
        .filter(|tau| tau.is_positive() && *tau < Rational::one())
        .collect();
    taus.sort();
    taus.dedup();
    taus
}

fn along(a: &[Rational], d: &[Rational], tau: &Rational) -> Vec<Rational> {
    a.iter().zip(d).map(|(x, y)| x + &(y * tau)).collect()
}

/// Subdivides every edge where its support changes, so each open edge lies in
/// the relative interior of one face. Inserted vertices are non-boundary and
/// both halves keep the edge's weight and orientation.
pub fn normalize(c: &IntersectionComplex, t: &TropicalCurve) -> Result<TropicalCurve, Error> {
    let mut out = TropicalCurve {
        vertices: t.vertices.clone(),
        edges: Vec::with_capacity(t.edges.len()),
    };
    for e in &t.edges {
        let a = c.coords(&t.vertex(&e.from)?.coords)?;
        let b = c.coords(&t.vertex(&e.to)?.coords)?;
        let d: Vec<Rational> = b.iter().zip(&a).map(|(x, y)| x - y).collect();
        let cuts = support_breakpoints(&a, &d);

        let mut params = vec![Rational::zero()];
        params.extend(cuts.iter().cloned());
        params.push(Rational::one());
        for w in params.windows(2) {
            let mid = (&w[0] + &w[1]) / Rational::from(2);
            if locate(c, &c.point(along(&a, &d, &mid))).is_err() {
                return Err(Error::SegmentLeavesSkeleton(e.id.clone()));
            }
        }
        if cuts.is_empty() {
            out.edges.push(e.clone());
            continue;
        }

        let mut prev = e.from.clone();
        for (k, tau) in cuts.iter().enumerate() {
            let vid = out.fresh_id(format!("{}@{}", e.id, k + 1));
            out.vertices.push(TropicalVertex {
                id: vid.clone(),
                coords: c.point(along(&a, &d, tau)),
                boundary: false,
            });
            let eid = out.fresh_id(format!("{}#{}", e.id, k + 1));
            out.edges.push(TropicalEdge {
                id: eid,
                from: prev,
                to: vid.clone(),
                weight: e.weight.clone(),
            });
            prev = vid;
        }
        let eid = out.fresh_id(format!("{}#{}", e.id, cuts.len() + 1));
        out.edges.push(TropicalEdge {
            id: eid,
            from: prev,
            to: e.to.clone(),
            weight: e.weight.clone(),
        });
    }
    Ok(out)
}

/// Splits one edge at `from + tau·(to - from)` for `0 < tau < 1`, inserting a
/// non-boundary vertex; both halves keep the weight.
pub fn subdivide(
    c: &IntersectionComplex,
    t: &TropicalCurve,
    edge_id: &str,
    tau: &Rational,
) -> Result<TropicalCurve, Error> {
    if !tau.is_positive() || *tau >= Rational::one() {
        return Err(Error::Invalid(format!(
            "subdivision parameter {tau} is not in (0, 1)"
        )));
    }
    let e = t.edge(edge_id)?.clone();
    let a = c.coords(&t.vertex(&e.from)?.coords)?;
    let b = c.coords(&t.vertex(&e.to)?.coords)?;
    let d: Vec<Rational> = b.iter().zip(&a).map(|(x, y)| x - y).collect();

    let mut out = t.clone();
    let vid = out.fresh_id(format!("{edge_id}+"));
    out.vertices.push(TropicalVertex {
        id: vid.clone(),
        coords: c.point(along(&a, &d, tau)),
        boundary: false,
    });
    let second = out.fresh_id(format!("{edge_id}~"));
    let pos = out
        .edges
        .iter()
        .position(|x| x.id == edge_id)
        .expect("edge exists");
    out.edges[pos].to = vid.clone();
    out.edges.insert(
        pos + 1,
        TropicalEdge {
            id: second,
            from: vid,
            to: e.to,
            weight: e.weight,
        },
    );
    Ok(out)
}

/// Weights of the edges at `v`, each oriented away from `v`.
pub fn incident_weights(t: &TropicalCurve, v: &str) -> Result<Vec<IntVector>, Error> {
    t.vertex(v)?;
    let mut out = Vec::new();
    for e in &t.edges {
        if e.from == v {
            out.push(e.weight.clone());
        }
        if e.to == v {
            out.push(e.weight.neg());
        }
    }
    Ok(out)
}
