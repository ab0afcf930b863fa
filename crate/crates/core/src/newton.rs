//! Tropical weights from truncated Laurent data on annuli.
//!
//! With `val = -log|·|`, a term `f_m z^m` has valuation `val(f_m) + m·s` at
//! `val(z) = s`. A function is invertible on the open annulus `s ∈ (lo, hi)`
//! exactly when one term line lies strictly below all others there; its
//! exponent is the weight coordinate.

use std::collections::BTreeSet;

use indexmap::IndexMap;
use num_bigint::BigInt;

use crate::error::Error;
use crate::ratlinalg::{IntVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentTerm {
    pub exponent: i64,
    pub val: Rational,
}

/// Finitely many terms of `Σ f_m z^m`, recorded through `val(f_m)`. Absent terms
/// have infinite valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentData {
    terms: Vec<LaurentTerm>,
}

impl LaurentData {
    pub fn new(terms: Vec<LaurentTerm>) -> Result<Self, Error> {
        if terms.is_empty() {
            return Err(Error::BadLaurent("no terms".into()));
        }
        let mut seen = BTreeSet::new();
        if let Some(t) = terms.iter().find(|t| !seen.insert(t.exponent)) {
            return Err(Error::BadLaurent(format!(
                "exponent {} repeats",
                t.exponent
            )));
        }
        Ok(LaurentData { terms })
    }

    /// Convenience constructor from `(exponent, val)` pairs.
    pub fn from_pairs(pairs: &[(i64, Rational)]) -> Result<Self, Error> {
        Self::new(
            pairs
                .iter()
                .map(|(m, v)| LaurentTerm {
                    exponent: *m,
                    val: v.clone(),
                })
                .collect(),
        )
    }

    pub fn monomial(exponent: i64) -> Self {
        LaurentData {
            terms: vec![LaurentTerm {
                exponent,
                val: Rational::zero(),
            }],
        }
    }

    pub fn terms(&self) -> &[LaurentTerm] {
        &self.terms
    }
}

/// Open interval `(lo, hi)` of values of `val(z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValInterval {
    lo: Rational,
    hi: Rational,
}

impl ValInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, Error> {
        if lo >= hi {
            return Err(Error::Invalid(format!(
                "empty annulus interval ({lo}, {hi})"
            )));
        }
        Ok(ValInterval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnulusData {
    pub interval: ValInterval,
    pub functions: IndexMap<String, LaurentData>,
}

fn line_value(term: &LaurentTerm, s: &Rational) -> Rational {
    &term.val + &(Rational::from(term.exponent) * s)
}

/// Selects among the lines minimal at `s` the one with extreme slope.
fn envelope_at(f: &LaurentData, s: &Rational, largest_slope: bool) -> i64 {
    let values: Vec<Rational> = f.terms.iter().map(|t| line_value(t, s)).collect();
    let min = values.iter().min().expect("nonempty terms");
    let slopes = f
        .terms
        .iter()
        .zip(&values)
        .filter(|(_, v)| *v == min)
        .map(|(t, _)| t.exponent);
    if largest_slope {
        slopes.max()
    } else {
        slopes.min()
    }
    .expect("some line attains the minimum")
}

/// The exponent whose term line is strictly below all others on the open interval.
///
/// Just right of `lo` the lower envelope follows the smallest-slope minimizer at
/// `lo`; just left of `hi` it follows the largest-slope minimizer at `hi`. Since
/// slopes are distinct and the envelope is concave, one line dominates throughout
/// exactly when the two coincide.
pub fn dominant_exponent(f: &LaurentData, interval: &ValInterval) -> Result<i64, Error> {
    let left = envelope_at(f, &interval.lo, false);
    let right = envelope_at(f, &interval.hi, true);
    if left == right {
        Ok(left)
    } else {
        Err(Error::NotInvertible {
            component: String::new(),
            detail: format!(
                "dominant term changes from z^{left} to z^{right} inside ({}, {})",
                interval.lo, interval.hi
            ),
        })
    }
}

/// Weight of one annulus: the dominant exponent of each component function.
pub fn annulus_weight<S: AsRef<str>>(
    a: &AnnulusData,
    components: &[S],
) -> Result<IntVector, Error> {
    components
        .iter()
        .map(|c| {
            let c = c.as_ref();
            let f = a
                .functions
                .get(c)
                .ok_or_else(|| Error::MissingFunction(c.to_string()))?;
            let m = dominant_exponent(f, &a.interval).map_err(|e| match e {
                Error::NotInvertible { detail, .. } => Error::NotInvertible {
                    component: c.to_string(),
                    detail,
                },
                other => other,
            })?;
            Ok((c.to_string(), BigInt::from(m)))
        })
        .collect()
}

/// Sum of the annulus weights over all annuli of an edge.
pub fn edge_weight<S: AsRef<str>>(
    annuli: &[AnnulusData],
    components: &[S],
) -> Result<IntVector, Error> {
    let mut total = IntVector::zeros(components);
    for a in annuli {
        total.add_assign(&annulus_weight(a, components)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::rat_parse;

    const K3: [&str; 4] = ["D0", "D1", "D2", "D3"];

    fn r(s: &str) -> Rational {
        rat_parse(s).unwrap()
    }

    fn interval(lo: &str, hi: &str) -> ValInterval {
        ValInterval::new(r(lo), r(hi)).unwrap()
    }

    /// `t + z`: the constant term has valuation 1, the linear term valuation 0.
    fn t_plus_z() -> LaurentData {
        LaurentData::from_pairs(&[(0, r("1")), (1, r("0"))]).unwrap()
    }

    #[test]
    fn worked_triple() {
        let f = t_plus_z();
        assert_eq!(dominant_exponent(&f, &interval("0", "1")).unwrap(), 1);
        assert_eq!(dominant_exponent(&f, &interval("1", "2")).unwrap(), 0);
        let err = dominant_exponent(&f, &interval("1/2", "3/2")).unwrap_err();
        assert_eq!(err.code(), "E_NOT_INVERTIBLE");
    }

    #[test]
    fn malformed_data() {
        assert_eq!(
            LaurentData::new(vec![]).unwrap_err().code(),
            "E_BAD_LAURENT"
        );
        assert!(LaurentData::from_pairs(&[(1, r("0")), (1, r("2"))]).is_err());
        assert!(ValInterval::new(r("1"), r("1")).is_err());
        assert!(ValInterval::new(r("2"), r("1")).is_err());
    }

    fn annulus(lo: &str, hi: &str, fs: Vec<LaurentData>) -> AnnulusData {
        AnnulusData {
            interval: interval(lo, hi),
            functions: K3.iter().map(|s| s.to_string()).zip(fs).collect(),
        }
    }

    #[test]
    fn monomial_annulus() {
        let a = annulus(
            "0",
            "5",
            vec![
                LaurentData::monomial(-1),
                LaurentData::monomial(1),
                LaurentData::monomial(0),
                LaurentData::monomial(0),
            ],
        );
        assert_eq!(
            annulus_weight(&a, &K3).unwrap(),
            IntVector::from_i64(&K3, &[-1, 1, 0, 0])
        );

        let constant = annulus("-1", "1", vec![LaurentData::monomial(0); 4]);
        assert!(annulus_weight(&constant, &K3).unwrap().is_zero());
    }

    #[test]
    fn envelope_annulus() {
        let f1 = LaurentData::from_pairs(&[(0, r("1")), (-1, r("0"))]).unwrap();
        let a = annulus(
            "0",
            "1",
            vec![
                t_plus_z(),
                f1,
                LaurentData::monomial(0),
                LaurentData::monomial(0),
            ],
        );
        assert_eq!(
            annulus_weight(&a, &K3).unwrap(),
            IntVector::from_i64(&K3, &[1, -1, 0, 0])
        );
    }

    #[test]
    fn annulus_errors_name_the_component() {
        let a = annulus(
            "1/2",
            "3/2",
            vec![
                LaurentData::monomial(0),
                t_plus_z(),
                LaurentData::monomial(0),
            ],
        );
        match annulus_weight(&a, &K3).unwrap_err() {
            Error::NotInvertible { component, .. } => assert_eq!(component, "D1"),
            other => panic!("unexpected {other:?}"),
        }
        let b = annulus("0", "1", vec![LaurentData::monomial(0); 3]);
        assert_eq!(
            annulus_weight(&b, &K3).unwrap_err().code(),
            "E_MISSING_FUNCTION"
        );
    }

    #[test]
    fn edge_weights_add() {
        let unit = || {
            annulus(
                "0",
                "1",
                vec![
                    LaurentData::monomial(-1),
                    LaurentData::monomial(1),
                    LaurentData::monomial(0),
                    LaurentData::monomial(0),
                ],
            )
        };
        let double = annulus(
            "0",
            "1",
            vec![
                LaurentData::monomial(-2),
                LaurentData::monomial(2),
                LaurentData::monomial(0),
                LaurentData::monomial(0),
            ],
        );
        assert_eq!(
            edge_weight(&[unit(), unit()], &K3).unwrap(),
            IntVector::from_i64(&K3, &[-2, 2, 0, 0])
        );
        assert!(edge_weight(&[], &K3).unwrap().is_zero());
        assert_eq!(
            edge_weight(&[unit(), double], &K3).unwrap(),
            IntVector::from_i64(&K3, &[-3, 3, 0, 0])
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn laurent() -> impl Strategy<Value = LaurentData> {
            proptest::collection::btree_map(-6i64..6, (-20i64..20, 1i64..5), 1..6).prop_map(|m| {
                LaurentData::new(
                    m.into_iter()
                        .map(|(e, (p, q))| LaurentTerm {
                            exponent: e,
                            val: Rational::new(p, q).unwrap(),
                        })
                        .collect(),
                )
                .unwrap()
            })
        }

        proptest! {
            #[test]
            fn shift_and_scale(f in laurent(), k in -5i64..5, c in -10i64..10, lo in -4i64..4, len in 1i64..4) {
                let iv = ValInterval::new(Rational::from(lo), Rational::from(lo + len)).unwrap();
                let base = dominant_exponent(&f, &iv).ok();
                let shifted = LaurentData::new(f.terms().iter().map(|t| LaurentTerm {
                    exponent: t.exponent + k,
                    val: t.val.clone(),
                }).collect()).unwrap();
                prop_assert_eq!(dominant_exponent(&shifted, &iv).ok(), base.map(|m| m + k));
                let scaled = LaurentData::new(f.terms().iter().map(|t| LaurentTerm {
                    exponent: t.exponent,
                    val: &t.val + &Rational::from(c),
                }).collect()).unwrap();
                prop_assert_eq!(dominant_exponent(&scaled, &iv).ok(), base);
            }
        }
    }
}
