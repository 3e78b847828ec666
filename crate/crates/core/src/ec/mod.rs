//! Finite fields, elliptic curves in short Weierstrass form, Frobenius
//! traces and group structures.

mod curve;
mod field;
mod structure;
mod trace;

pub use curve::{ec_add, ec_mul, point_count_naive, ECPoint, EllipticCurve, NAIVE_COUNT_LIMIT};
pub use field::{find_irreducible, FiniteField, Fq};
pub use structure::{
    exponent_growth_experiment, exponent_ratio, group_structure, group_structure_with, point_order,
    random_point, ExponentPoint, GroupStructure, StructureConfig, StructureMode,
};
pub use trace::{
    card_extension, closure_exponent, frobenius_matrix, frobenius_pair_matrix, gcd_orders_experiment,
    is_isogenous, is_isogenous_closure, is_ordinary, satisfies_hasse, trace, trace_power, TraceSequence,
    CLOSURE_EXPONENTS,
};
