//! Exact integer matrix algebra: products and powers, minors, exterior
//! powers, Smith normal forms, determinant ideals and the N-rank.

mod matrix;
mod minors;
mod smith;

pub use matrix::Matrix;
pub use minors::{
    all_minors, binomial, combinations, det_cofactor, determinant_ideal_gen, exterior_power, minor_det,
    n_rank_by_minors, Combinations, MinorIndex,
};
pub use smith::{n_rank, smith_normal_form, SmithNormalForm};
