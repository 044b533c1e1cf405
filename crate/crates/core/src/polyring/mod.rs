//! Exact sparse multivariate polynomial arithmetic.

pub mod gcd;
pub mod int;
pub mod intpoly;
pub mod modp;
pub mod mono;
mod polynomial;
mod text;
mod varset;

pub use int::Int;
pub use intpoly::IntPoly;
pub use mono::{Mono, MAX_DEGREE, MAX_VARS};
pub use polynomial::{Combine, Evaluated, Polynomial, Rational};
pub use text::parse;
pub use varset::VarSet;
