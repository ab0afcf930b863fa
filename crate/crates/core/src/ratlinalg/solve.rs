use serde::Serialize;

use super::{RatMatrix, RatVector, Rational};
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
}

/// Outcome of deciding `target ∈ colspan(M)` over ℚ.
///
/// A member carries a witness `x` over the column labels with `M·x = target`.
/// A non-member carries a covector `y` over the row labels with `yᵀM = 0` and
/// `yᵀ·target ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipResult {
    pub verdict: Verdict,
    pub witness: Option<RatVector>,
    pub certificate: Option<RatVector>,
}

impl MembershipResult {
    pub fn is_member(&self) -> bool {
        self.verdict == Verdict::Member
    }
}

/// Reduced row echelon form of `M`, with the row operations recorded in `transform`
/// so that `transform · M = reduced` and `transform · target = rhs`.
struct Elimination {
    reduced: Vec<Vec<Rational>>,
    transform: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    pivots: Vec<(usize, usize)>,
}

/// Gauss-Jordan elimination. In each column the pivot is the first row (in current
/// order, at or below the next pivot slot) holding a nonzero entry; columns are
/// visited in label order. This fixes witnesses and certificates deterministically.
fn eliminate(rows: Vec<Vec<Rational>>, ncols: usize, target: Vec<Rational>) -> Elimination {
    let m = rows.len();
    let mut a = rows;
    let mut rhs = target;
    let mut e: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;

    for col in 0..ncols {
        if next == m {
            break;
        }
        let Some(p) = (next..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, next);
        e.swap(p, next);
        rhs.swap(p, next);

        let inv = a[next][col].recip();
        for v in a[next].iter_mut().chain(e[next].iter_mut()) {
            *v = &*v * &inv;
        }
        rhs[next] = &rhs[next] * &inv;

        for r in 0..m {
            if r == next || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let (pivot_row, pivot_e) = (a[next].clone(), e[next].clone());
            for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                *x -= &(&factor * p);
            }
            for (x, p) in e[r].iter_mut().zip(&pivot_e) {
                *x -= &(&factor * p);
            }
            let delta = &factor * &rhs[next];
            rhs[r] -= &delta;
        }
        pivots.push((next, col));
        next += 1;
    }

    Elimination {
        reduced: a,
        transform: e,
        rhs,
        pivots,
    }
}

/// Exact rank over ℚ.
pub fn rank(m: &RatMatrix) -> usize {
    let zeros = vec![Rational::zero(); m.nrows()];
    eliminate(m.rows(), m.ncols(), zeros).pivots.len()
}

/// Decides whether `target` lies in the column span of `m` over ℚ.
///
/// `target` must be labeled by exactly the row labels of `m` (missing labels are
/// not filled in). With zero columns the span is `{0}`.
pub fn solve_membership(m: &RatMatrix, target: &RatVector) -> Result<MembershipResult, Error> {
    check_target_labels(m, target)?;
    let t = target.aligned(m.row_labels());
    let elim = eliminate(m.rows(), m.ncols(), t);
    let rank = elim.pivots.len();

    if let Some(r) = (rank..m.nrows()).find(|&r| !elim.rhs[r].is_zero()) {
        debug_assert!(elim.reduced[r].iter().all(Rational::is_zero));
        let certificate = RatVector::from_values(m.row_labels(), elim.transform[r].clone());
        return Ok(MembershipResult {
            verdict: Verdict::NonMember,
            witness: None,
            certificate: Some(certificate),
        });
    }

    let mut x = vec![Rational::zero(); m.ncols()];
    for &(row, col) in &elim.pivots {
        x[col] = elim.rhs[row].clone();
    }
    Ok(MembershipResult {
        verdict: Verdict::Member,
        witness: Some(RatVector::from_values(m.col_labels(), x)),
        certificate: None,
    })
}

fn check_target_labels(m: &RatMatrix, target: &RatVector) -> Result<(), Error> {
    let rows = m.row_labels();
    let mismatch = target.len() != rows.len()
        || target.labels().any(|l| !rows.iter().any(|r| r == l))
        || rows.iter().any(|r| !target.labels().any(|l| l == r));
    if mismatch {
        let got: Vec<&str> = target.labels().collect();
        return Err(Error::IndexMismatch(format!(
            "target labels {got:?} do not match matrix rows {rows:?}"
        )));
    }
    Ok(())
}
