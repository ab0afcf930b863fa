//! Exact rational arithmetic and certificate-producing linear algebra.

mod matrix;
mod rational;
mod solve;
mod vector;

pub use matrix::RatMatrix;
pub use rational::{rat_parse, Rational};
pub use solve::{rank, solve_membership, MembershipResult, Verdict};
pub use vector::{IntVector, RatVector};
