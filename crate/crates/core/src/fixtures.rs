//! Built-in example degenerations with sample curves.
//!
//! `k3-quartic` models the special fiber of `x0 x1 x2 x3 + t P4 = 0` after the
//! small resolution that blows up `D0, D1, D2, D3` in turn: the components are
//! ℙ² blown up at 0, 4, 8 and 12 points, and the skeleton is a hollow
//! tetrahedron with unit scales. `toric-simplex` is a single triangle on which
//! balancing reduces to the classical condition.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use num_bigint::BigInt;

use crate::balance::CycleDataMap;
use crate::chow::{
    alpha_from_surface, restrict_to_curve, BlownPlane, ClassVector, StratumCycleData,
};
use crate::complex::{IntersectionComplex, Stratum};
use crate::error::Error;
use crate::io::{AnnuliFile, AnnulusEntry, Degeneration, EdgeAnnuli, TermEntry};
use crate::ratlinalg::{IntVector, RatVector, Rational};
use crate::tropcurve::{TropicalCurve, TropicalEdge, TropicalVertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    K3Quartic,
    ToricSimplex,
}

impl FixtureName {
    pub const ALL: [FixtureName; 2] = [FixtureName::K3Quartic, FixtureName::ToricSimplex];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureName::K3Quartic => "k3-quartic",
            FixtureName::ToricSimplex => "toric-simplex",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        FixtureName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: FixtureName,
    pub degeneration: Degeneration,
    /// A curve that passes strict validation and is balanced at every vertex.
    pub curve: TropicalCurve,
    /// Laurent data reproducing the curve's edge weights.
    pub annuli: AnnuliFile,
}

pub fn fixture(name: FixtureName) -> Fixture {
    match name {
        FixtureName::K3Quartic => k3_quartic(),
        FixtureName::ToricSimplex => toric_simplex(),
    }
}

const K3_COMPONENTS: [&str; 4] = ["D0", "D1", "D2", "D3"];
const BLOWUP_NOTE: &str = "derived from the blow-up order D0, D1, D2, D3";

/// Intersection-theoretic model of the resolved K3 special fiber.
///
/// Component `k` is ℙ² blown up at `4k` points: for each `j < k` the points
/// `E_{4j+1..4j+4}` lie on the double curve with component `j`.
pub struct K3Model;

impl K3Model {
    pub fn surface(k: usize) -> BlownPlane {
        BlownPlane::new(4 * k)
    }

    /// Class of the divisor `D_j` restricted to component `k`.
    pub fn restriction(k: usize, j: usize) -> ClassVector {
        let s = Self::surface(k);
        let mut class = vec![BigInt::from(0); s.rank()];
        if j == k {
            class[0] = BigInt::from(-3);
            for e in &mut class[1..] {
                *e = BigInt::from(1);
            }
        } else if j < k {
            class = s.line_through(4 * j + 1..=4 * j + 4);
        } else {
            class[0] = BigInt::from(1);
        }
        class
    }

    /// Degree of `D_divisor` on the double curve `D_i ∩ D_j`, computed inside component `side`.
    pub fn edge_degree(divisor: usize, i: usize, j: usize, side: usize) -> Rational {
        assert!(
            side == i || side == j,
            "side must be an endpoint of the edge"
        );
        let other = if side == i { j } else { i };
        let s = Self::surface(side);
        let curve = Self::restriction(side, other);
        restrict_to_curve(&s, &curve, &Self::restriction(side, divisor))
            .expect("classes match the surface rank")
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn subsets(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s| s.len() <= max_len)
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn label_sets(comps: &[&str], sets: &[Vec<usize>]) -> Vec<Vec<String>> {
    sets.iter()
        .map(|s| s.iter().map(|&i| comps[i].to_string()).collect())
        .collect()
}

fn point(comps: &[&str], coords: &[&str]) -> RatVector {
    RatVector::from_values(
        comps,
        coords
            .iter()
            .map(|s| s.parse().expect("fixture coordinate"))
            .collect(),
    )
}

fn star_edges(
    comps: &[&str],
    curve: &mut TropicalCurve,
    center: (&str, &[&str]),
    legs: &[(&str, &[&str], &[i64])],
) {
    curve.vertices.push(TropicalVertex {
        id: center.0.to_string(),
        coords: point(comps, center.1),
        boundary: false,
    });
    for (id, coords, w) in legs {
        curve.vertices.push(TropicalVertex {
            id: id.to_string(),
            coords: point(comps, coords),
            boundary: true,
        });
        curve.edges.push(TropicalEdge {
            id: format!("{}>{}", center.0, id),
            from: center.0.to_string(),
            to: id.to_string(),
            weight: IntVector::from_i64(comps, w),
        });
    }
}

/// One annulus per edge on `val(z) ∈ (0, 1)`. Nonzero weight coordinates `w`
/// come from `z^w + t^2`, whose `z^w` term dominates there.
fn annuli_for(comps: &[&str], curve: &TropicalCurve) -> AnnuliFile {
    let edges = curve
        .edges
        .iter()
        .map(|e| {
            let functions = comps
                .iter()
                .map(|c| {
                    let w = i64::try_from(e.weight.get(c)).expect("small fixture weight");
                    let mut terms = vec![TermEntry {
                        m: w,
                        val: Rational::zero(),
                    }];
                    if w != 0 {
                        terms.push(TermEntry {
                            m: 0,
                            val: Rational::from(2),
                        });
                    }
                    (c.to_string(), terms)
                })
                .collect();
            EdgeAnnuli {
                edge_id: e.id.clone(),
                annuli: vec![AnnulusEntry {
                    val_z_interval: (Rational::zero(), Rational::one()),
                    functions,
                }],
            }
        })
        .collect();
    AnnuliFile {
        components: names(comps),
        edges,
    }
}

pub fn k3_quartic() -> Fixture {
    let comps = &K3_COMPONENTS;
    let strata = subsets(4, 3);
    let faces: Vec<(Vec<String>, Rational)> = label_sets(comps, &strata)
        .into_iter()
        .filter(|s| s.len() == 3)
        .map(|s| (s, Rational::one()))
        .collect();
    let complex = IntersectionComplex::new(
        "k3-quartic",
        names(comps),
        label_sets(comps, &strata),
        faces,
    )
    .expect("fixture complex");

    let mut cycle_data = CycleDataMap::new();
    for s in &strata {
        let stratum = Stratum::new(s.iter().copied());
        let data = match *s.as_slice() {
            [k] => {
                let restrictions: IndexMap<String, ClassVector> = (0..4)
                    .map(|j| (comps[j].to_string(), K3Model::restriction(k, j)))
                    .collect();
                let mut d = alpha_from_surface(
                    &complex,
                    stratum.clone(),
                    K3Model::surface(k),
                    restrictions,
                    true,
                )
                .expect("restriction classes cancel");
                if k != 0 {
                    d.note = Some(BLOWUP_NOTE.to_string());
                }
                d
            }
            [i, j] => {
                let column: Vec<Vec<Rational>> = (0..4)
                    .map(|k| {
                        let here = K3Model::edge_degree(k, i, j, i);
                        debug_assert_eq!(here, K3Model::edge_degree(k, i, j, j));
                        vec![here]
                    })
                    .collect();
                let mut d =
                    StratumCycleData::new(&complex, stratum.clone(), names(&["pt-class"]), column)
                        .expect("edge alpha");
                if (i, j) != (0, 1) {
                    d.note = Some(BLOWUP_NOTE.to_string());
                }
                d
            }
            _ => StratumCycleData::new(&complex, stratum.clone(), Vec::new(), vec![Vec::new(); 4])
                .expect("empty alpha"),
        };
        cycle_data.insert(stratum, data);
    }

    let mut curve = TropicalCurve::default();
    // At the vertex D0: three unit legs along the skeleton edges, σ = (-3,1,1,1).
    star_edges(
        comps,
        &mut curve,
        ("d0", &["1", "0", "0", "0"]),
        &[
            ("d0.1", &["3/4", "1/4", "0", "0"], &[-1, 1, 0, 0]),
            ("d0.2", &["3/4", "0", "1/4", "0"], &[-1, 0, 1, 0]),
            ("d0.3", &["3/4", "0", "0", "1/4"], &[-1, 0, 0, 1]),
        ],
    );
    // Inside the edge {D0,D1}: legs into the two adjacent triangles, σ = 2·(-3,1,1,1).
    star_edges(
        comps,
        &mut curve,
        ("m01", &["1/3", "2/3", "0", "0"]),
        &[
            ("m01.2", &["1/12", "3/4", "1/6", "0"], &[-3, 1, 2, 0]),
            ("m01.3", &["1/12", "3/4", "0", "1/6"], &[-3, 1, 0, 2]),
        ],
    );
    // Inside the triangle {D1,D2,D3}: a classically balanced tripod.
    star_edges(
        comps,
        &mut curve,
        ("f123", &["0", "1/3", "1/3", "1/3"]),
        &[
            ("f123.1", &["0", "1/2", "1/4", "1/4"], &[0, 2, -1, -1]),
            ("f123.2", &["0", "1/4", "1/2", "1/4"], &[0, -1, 2, -1]),
            ("f123.3", &["0", "1/4", "1/4", "1/2"], &[0, -1, -1, 2]),
        ],
    );

    let annuli = annuli_for(comps, &curve);
    Fixture {
        name: FixtureName::K3Quartic,
        degeneration: Degeneration {
            complex,
            cycle_data,
        },
        curve,
        annuli,
    }
}

pub fn toric_simplex() -> Fixture {
    let comps: &[&str] = &["D0", "D1", "D2"];
    let strata = subsets(3, 3);
    let complex = IntersectionComplex::new(
        "toric-simplex",
        names(comps),
        label_sets(comps, &strata),
        vec![(names(comps), Rational::one())],
    )
    .expect("fixture complex");
    let top = Stratum::new(0..3);
    let mut cycle_data = CycleDataMap::new();
    cycle_data.insert(
        top.clone(),
        StratumCycleData::new(&complex, top, Vec::new(), vec![Vec::new(); 3]).expect("empty alpha"),
    );

    let mut curve = TropicalCurve::default();
    star_edges(
        comps,
        &mut curve,
        ("c", &["1/3", "1/3", "1/3"]),
        &[
            ("c.0", &["1/2", "1/4", "1/4"], &[2, -1, -1]),
            ("c.1", &["1/4", "1/2", "1/4"], &[-1, 2, -1]),
            ("c.2", &["1/4", "1/4", "1/2"], &[-1, -1, 2]),
        ],
    );
    let annuli = annuli_for(comps, &curve);
    Fixture {
        name: FixtureName::ToricSimplex,
        degeneration: Degeneration {
            complex,
            cycle_data,
        },
        curve,
        annuli,
    }
}
