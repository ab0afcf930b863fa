//! Exact verification of generalized tropical balancing conditions.
//!
//! A strictly semistable degeneration is described combinatorially by its dual
//! intersection complex (embedded as a skeleton in ℚ^{components}) together
//! with, for each stratum, the matrix α of intersection numbers between curve
//! classes on the stratum and the restricted component divisors. A tropical
//! curve in the skeleton satisfies the condition at a non-boundary vertex `v`
//! when the sum `σ_v` of its away-oriented edge weights lies in the rational
//! image of α for the face containing `v`.
//!
//! All arithmetic is exact. Decisions come with a preimage witness or a
//! separating covector.

pub mod balance;
pub mod chow;
pub mod cli;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod newton;
pub mod ratlinalg;
pub mod tropcurve;

pub use balance::{
    check_curve, check_vertex, sigma, BalanceReport, Overall, VertexStatus, VertexVerdict,
};
pub use complex::{embed_faces, j_set, locate, validate_complex, IntersectionComplex, Stratum};
pub use error::{Error, Finding, Result, ValidationReport};
pub use io::Degeneration;
pub use ratlinalg::{rank, rat_parse, solve_membership, IntVector, RatMatrix, RatVector, Rational};
pub use tropcurve::{TropicalCurve, TropicalEdge, TropicalVertex};
