//! Characteristic polynomials and invariant factors of integer matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::poly::Poly;
use crate::linalg::{smith_normal_form, Matrix};
use crate::scalar::ExactDiv;

/// `det(xI - A)` by the Faddeev-LeVerrier recursion. Every division is exact
/// over any ring containing the integers, so no fractions appear.
pub fn char_poly_generic<T: ExactDiv>(a: &Matrix<T>) -> Poly<T> {
    let n = a.nrows();
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m = Matrix::<T>::zeros(n, n);
    let mut k_t = T::zero();
    for k in 1..=n {
        k_t = k_t + T::one();
        // M_k = A M_{k-1} + c_{n-k+1} I
        m = &(a * &m) + &Matrix::<T>::identity(n).scale(&coeffs[n - k + 1]);
        let tr = (a * &m).trace();
        coeffs[n - k] = -tr.exact_div(&k_t);
    }
    Poly::new(coeffs)
}

/// Monic characteristic polynomial with integer coefficients.
pub fn char_poly(a: &Matrix<BigInt>) -> Poly<BigRational> {
    char_poly_generic(a).to_rational()
}

/// Invariant factors `f_1 | f_2 | ... | f_s` of `xI - A` over `Q[x]`, with
/// the trivial factors `1` dropped. The last one is the minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<Poly<BigRational>>,
}

impl InvariantFactors {
    pub fn minimal_polynomial(&self) -> Poly<BigRational> {
        self.factors.last().cloned().unwrap_or_else(Poly::one)
    }

    pub fn product(&self) -> Poly<BigRational> {
        self.factors.iter().fold(Poly::one(), |acc, f| &acc * f)
    }

    /// Number of invariant factors divisible by `g`, which equals the number
    /// of Jordan blocks belonging to any root of the irreducible `g`.
    pub fn blocks_for(&self, g: &Poly<BigRational>) -> usize {
        self.factors.iter().filter(|f| g.divides(f)).count()
    }

    /// True when `A` is cyclic (one nontrivial invariant factor).
    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }
}

pub fn characteristic_matrix(a: &Matrix<BigInt>) -> Matrix<Poly<BigRational>> {
    let n = a.nrows();
    let mut m = Matrix::<Poly<BigRational>>::zeros(n, a.ncols());
    for i in 0..n {
        for j in 0..a.ncols() {
            let c = Poly::constant(-BigRational::from_integer(a[(i, j)].clone()));
            m[(i, j)] = if i == j { &Poly::x() + &c } else { c };
        }
    }
    m
}

pub fn invariant_factors(a: &Matrix<BigInt>) -> InvariantFactors {
    let snf = smith_normal_form(&characteristic_matrix(a));
    InvariantFactors {
        factors: snf.diag.into_iter().filter(|f| !f.is_constant()).collect(),
    }
}

/// Evaluate a polynomial at a square matrix exactly (Horner).
pub fn eval_at_matrix(p: &Poly<BigRational>, a: &Matrix<BigInt>) -> Matrix<BigRational> {
    let aq = a.map(|x| BigRational::from_integer(x.clone()));
    let n = a.nrows();
    let mut acc = Matrix::<BigRational>::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * &aq) + &Matrix::identity(n).scale(c);
    }
    acc
}
