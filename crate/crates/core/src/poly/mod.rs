//! Exact univariate polynomial algebra.

mod charpoly;
mod factor;
pub mod modp;
#[allow(clippy::module_inception)]
mod poly;
mod resultant;

pub use charpoly::{
    char_poly, char_poly_generic, characteristic_matrix, eval_at_matrix, invariant_factors, InvariantFactors,
};
pub use factor::{
    cyclotomic_poly, euler_phi, factor_over_q, factor_over_q_with_cap, factor_squarefree_z, is_cyclotomic,
    FactoredPoly, DEFAULT_DEGREE_CAP,
};
pub use poly::{parse_rational_poly, Poly};
pub use resultant::{
    interpolate, power_resultant, product_resultant, resultant, sylvester_matrix, sylvester_resultant,
};
