//! Exact arithmetic for lambda-determinants and Aztec diamond tilings.
//!
//! The crate computes lambda-determinants and their generalizations by
//! Dodgson condensation, evaluates weighted partition functions of perfect
//! matchings of Aztec graphs, and cross-checks the two against direct
//! alternating-sign-matrix summation formulas. Everything is carried out in
//! exact arithmetic over multivariate rational functions with
//! arbitrary-precision rational coefficients.

pub use num;

pub mod apps;
pub mod asm;
pub mod aztec;
pub mod condense;
pub mod error;
pub mod matrix;
pub mod periodic;
pub mod rr;
pub mod scalar;
pub mod shuffle;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use scalar::Scalar;
