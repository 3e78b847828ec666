//! Exact computation of N-rank and r-order invariants of integer matrices,
//! the regular/exceptional classification derived from the multiplicative
//! dependence of eigenvalues, and the elliptic-curve experiments built on
//! Frobenius traces and group structures.
//!
//! Matrices and polynomials are generic over their scalar ring; the aliases
//! below fix the instantiations used throughout.

pub mod algnum;
pub mod ec;
pub mod error;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod order;
pub mod poly;
pub mod scalar;
pub mod spectral;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};

pub type IntegerMatrix = linalg::Matrix<BigInt>;
pub type RationalMatrix = linalg::Matrix<BigRational>;
pub type IntegerPoly = poly::Poly<BigInt>;
pub type RationalPoly = poly::Poly<BigRational>;
