//! Eigenvalues as exact algebraic numbers.

mod dependence;
pub mod intfactor;
pub mod isolate;
mod number;

pub use dependence::{
    dependence_classes, dependence_classes_with, mult_dependent, mult_dependent_with, torus_rank_of,
    torus_rank_rational, Dependence, DependenceClasses, DependenceConfig, DependenceWitness,
};
pub use number::{weil_height, AlgebraicNumber};
