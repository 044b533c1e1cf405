//! Variable elimination: Sylvester resultants, Dixon matrices and factored
//! determinants.

mod dixon;
mod edf;
mod factors;
mod matrix;
mod resultant;

pub use dixon::{dixon_matrix, dixon_polynomial, PolySystem};
pub use edf::{edf_determinant, edf_determinant_with, random_rational_point, select_maximal_minor, verify, EdfOptions, EdfOutcome};
pub use factors::{product, strip_known_factors, Factor, FactorList, Provenance};
pub use matrix::{bareiss, rational_determinant, PolyMatrix};
pub use resultant::{sylvester_resultant, univariate_resultant};
