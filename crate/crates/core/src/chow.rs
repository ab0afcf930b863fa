//! Curve-class data on strata and the intersection map α.
//!
//! For a stratum `D_I`, α sends a curve class `L` to `(L · L_i)_i`, where `L_i`
//! is the restriction of `O(D_i)`. It is stored as a matrix with one row per
//! component and one column per basis class.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{IntersectionComplex, Stratum};
use crate::error::{Error, Finding};
use crate::ratlinalg::{RatMatrix, Rational};

/// Integer class vector over a fixed basis, e.g. `(H, E_1, ..., E_n)`.
pub type ClassVector = Vec<BigInt>;

/// ℙ² blown up at `n_points` points, with basis `(H, E_1..E_n)` and intersection
/// form `diag(1, -1, ..., -1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlownPlane {
    pub n_points: usize,
}

impl BlownPlane {
    pub fn new(n_points: usize) -> Self {
        BlownPlane { n_points }
    }

    pub fn rank(&self) -> usize {
        self.n_points + 1
    }

    pub fn basis_names(&self) -> Vec<String> {
        std::iter::once("H".to_string())
            .chain((1..=self.n_points).map(|j| format!("E{j}")))
            .collect()
    }

    fn self_intersection(&self, k: usize) -> i64 {
        if k == 0 {
            1
        } else {
            -1
        }
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), Error> {
        if v.len() != self.rank() {
            return Err(Error::ClassLength {
                expected: self.rank(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Intersection pairing of two class vectors.
    pub fn pairing(&self, a: &[BigInt], b: &[BigInt]) -> Result<BigInt, Error> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(a.iter()
            .zip(b)
            .enumerate()
            .map(|(k, (x, y))| x * y * self.self_intersection(k))
            .sum())
    }

    /// `H - E_{from} - ... - E_{to}` (1-based, inclusive); the strict transform of a
    /// line through those points.
    pub fn line_through(&self, points: std::ops::RangeInclusive<usize>) -> ClassVector {
        let mut v = vec![BigInt::zero(); self.rank()];
        v[0] = BigInt::from(1);
        for j in points {
            v[j] = BigInt::from(-1);
        }
        v
    }
}

/// Degree of a divisor class on a curve class, `⟨divisor, curve⟩`.
pub fn restrict_to_curve(
    surface: &BlownPlane,
    curve_class: &[BigInt],
    divisor_class: &[BigInt],
) -> Result<Rational, Error> {
    surface
        .pairing(divisor_class, curve_class)
        .map(Rational::from)
}

/// A declared surface model for a stratum, retained so it can be written back out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub surface: BlownPlane,
    /// Restriction class of each component divisor, by component name. Absent
    /// components restrict to zero.
    pub restrictions: IndexMap<String, ClassVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCycleData {
    pub stratum: Stratum,
    pub basis_names: Vec<String>,
    /// Rows over all components, columns over `basis_names`.
    pub alpha: RatMatrix,
    /// Input attestation that the closed stratum is projective.
    pub projective: bool,
    pub model: Option<SurfaceModel>,
    /// Free-form provenance tag carried through the JSON schema.
    pub note: Option<String>,
}

impl StratumCycleData {
    pub fn new(
        complex: &IntersectionComplex,
        stratum: Stratum,
        basis_names: Vec<String>,
        rows: Vec<Vec<Rational>>,
    ) -> Result<Self, Error> {
        let alpha = RatMatrix::from_rows(complex.components().to_vec(), basis_names.clone(), rows)?;
        Ok(StratumCycleData {
            stratum,
            basis_names,
            alpha,
            projective: true,
            model: None,
            note: None,
        })
    }

    /// Column-sum-zero check. Columns that fail become errors in strict mode and
    /// warnings otherwise.
    pub fn check_relation(&self, complex: &IntersectionComplex, strict: bool) -> Vec<Finding> {
        self.alpha
            .column_sums()
            .iter()
            .zip(&self.basis_names)
            .filter(|(s, _)| !s.is_zero())
            .map(|(s, b)| {
                let detail = format!(
                    "alpha column {b} of stratum {} sums to {s}",
                    complex.display(&self.stratum)
                );
                if strict {
                    Finding::error("E_RELATION_VIOLATED", detail)
                } else {
                    Finding::warning("E_RELATION_VIOLATED", detail)
                }
            })
            .collect()
    }

    pub fn has_integer_entries(&self) -> bool {
        self.alpha.rows().iter().flatten().all(Rational::is_integer)
    }
}

/// The α matrix of a stratum; a components × 0 matrix when the basis is empty.
pub fn alpha_map(data: &StratumCycleData) -> RatMatrix {
    data.alpha.clone()
}

/// Builds cycle data over the basis `(H, E_1..E_n)` of a blown-up plane, with
/// `alpha[i][b] = ⟨restriction_i, b⟩`. In strict mode the restriction classes
/// must sum to zero.
pub fn alpha_from_surface(
    complex: &IntersectionComplex,
    stratum: Stratum,
    surface: BlownPlane,
    restrictions: IndexMap<String, ClassVector>,
    strict: bool,
) -> Result<StratumCycleData, Error> {
    for (name, class) in &restrictions {
        complex.index_of(name)?;
        surface.check_len(class)?;
    }
    if strict {
        let mut total = vec![BigInt::zero(); surface.rank()];
        for class in restrictions.values() {
            for (t, x) in total.iter_mut().zip(class) {
                *t += x;
            }
        }
        if total.iter().any(|x| !x.is_zero()) {
            let shown: Vec<String> = total.iter().map(ToString::to_string).collect();
            return Err(Error::RelationViolated(format!(
                "restriction classes on {} sum to ({})",
                complex.display(&stratum),
                shown.join(", ")
            )));
        }
    }

    let basis_names = surface.basis_names();
    let zero = vec![BigInt::zero(); surface.rank()];
    let mut rows = Vec::with_capacity(complex.components().len());
    for name in complex.components() {
        let class = restrictions.get(name).unwrap_or(&zero);
        let row = (0..surface.rank())
            .map(|b| {
                let mut basis = zero.clone();
                basis[b] = BigInt::from(1);
                restrict_to_curve(&surface, &basis, class)
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let mut data = StratumCycleData::new(complex, stratum, basis_names, rows)?;
    data.model = Some(SurfaceModel {
        surface,
        restrictions,
    });
    Ok(data)
}
