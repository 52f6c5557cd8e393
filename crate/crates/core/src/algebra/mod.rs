//! Exact arithmetic: Gaussian rationals and sparse polynomials in `x, y, ξ, η`.

mod parse;
pub mod poly;
pub mod rational;
pub mod serial;

pub use poly::{Monomial, MultiPoly, Substitution, Var, VarSet};
pub use rational::{format_rational, parse_rational, rat, GaussianRational, Rational};
