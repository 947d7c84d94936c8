//! Sums of powers of binary Hermitian forms over the Euclidean imaginary quadratic
//! rings O_d (d = 1, 2, 3, 7, 11), their transfer polynomials and cocycle spaces, and
//! special values of L(χ_{d_K}, s).

pub mod cfrac;
pub mod cli;
pub mod error;
pub mod field;
pub mod forms;
pub mod hsum;
pub mod lfun;
pub mod polyspace;

pub use error::{Error, Result};
pub use field::{Field, QuadElem, QuadInt};
pub use forms::{HermitianForm, Mat2};
