//! Exact scalars and sparse linear algebra.

mod matrix;
mod rational;

pub use matrix::{Inconsistent, RationalMatrix, SparseVec};
pub use rational::{ParseRationalError, Rational};
