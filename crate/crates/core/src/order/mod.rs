//! r-orders modulo N, gcd growth of minors of `A^n - I` and the invariant
//! order built from the characteristic polynomial.

mod growth;
mod invariant;
mod ord;

pub use growth::{
    exceptional_witness_series, gcd_growth_series, minor_gcd, GrowthPoint, GrowthSeries, SlopeFit,
    WitnessSeries,
};
pub use invariant::{alpha_invariants, k_invariant, lemma_gcd_check, lemma_minor};
pub use ord::{matrix_order_mod, ord0_matches_matrix_order, ord_r, Ord0Check, OrderResult};
