//! Alexander polynomials, determinants, colorings and metacyclic
//! representations of balanced spatial graphs.
//!
//! Everything numeric is generic over an exact integer type (see
//! [`scalar::Coeff`]); the aliases below fix it to `BigInt`.

pub mod cli;
pub mod coloring;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod laurent;
pub mod matrix;
pub mod metacyclic;
pub mod scalar;
pub mod wirtinger;

use num_bigint::BigInt;

pub use diagram::Diagram;
pub use error::{Error, Result};

pub type Laurent = laurent::LaurentPoly<BigInt>;
pub type AlexMatrix = wirtinger::AlexMatrix<BigInt>;
pub type IntMatrix = matrix::Matrix<BigInt>;
pub type LaurentMatrix = matrix::Matrix<Laurent>;
pub type DetAt = invariants::DetAt<BigInt>;
pub type Snf = invariants::Snf<BigInt>;
