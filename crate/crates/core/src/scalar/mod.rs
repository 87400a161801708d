//! Exact scalar arithmetic: arbitrary-precision rationals and multivariate
//! rational functions in named indeterminates.

mod parse;
mod poly;
mod rational;
pub mod vars;

pub use parse::parse;
pub use poly::{Monomial, Poly};
pub use rational::Scalar;
pub use vars::{fresh_var, var, var_name, VarId};
