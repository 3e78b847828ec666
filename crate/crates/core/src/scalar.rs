//! Scalar traits the matrix and polynomial code is generic over.
//!
//! Everything in this crate is exact: the intended instantiations are
//! `BigInt`, `BigRational`, machine integers, and polynomials over a field
//! (which form a Euclidean domain and can sit inside a matrix).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// A commutative ring element with value semantics.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
        + Neg<Output = Self>
{
}

/// Ring with exact division: `a.exact_div(b)` is only called when `b | a`.
pub trait ExactDiv: Scalar {
    fn exact_div(&self, other: &Self) -> Self;
}

macro_rules! exact_div_int {
    ($($t:ty),*) => {$(
        impl ExactDiv for $t {
            fn exact_div(&self, other: &Self) -> Self {
                debug_assert!((self.clone() % other.clone()).is_zero(), "inexact division");
                self.clone() / other.clone()
            }
        }
    )*};
}

exact_div_int!(i64, i128, BigInt);

impl<T: Clone + Integer + Signed + Debug> ExactDiv for Ratio<T> {
    fn exact_div(&self, other: &Self) -> Self {
        self.clone() / other.clone()
    }
}

/// Marker for exact fields.
pub trait Field: ExactDiv {
    fn inv(&self) -> Self;
}

impl<T: Clone + Integer + Signed + Debug> Field for Ratio<T> {
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Euclidean domain: the setting for Smith normal forms over `Z` and `Q[x]`.
pub trait EuclideanDomain: Scalar {
    type Norm: Ord;

    /// Euclidean size; only called on nonzero elements.
    fn norm(&self) -> Self::Norm;

    /// Division with remainder, `self = q * other + r` and `r` zero or of
    /// smaller norm than `other`.
    fn div_rem_euclid(&self, other: &Self) -> (Self, Self);

    /// Canonical associate (nonnegative integer, monic polynomial).
    fn unit_normal(&self) -> Self;

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem_euclid(self).1.is_zero()
    }
}

macro_rules! euclid_int {
    ($($t:ty => $n:ty),*) => {$(
        impl EuclideanDomain for $t {
            type Norm = $n;
            fn norm(&self) -> $n {
                self.unsigned_abs()
            }
            fn div_rem_euclid(&self, other: &Self) -> (Self, Self) {
                self.div_mod_floor(other)
            }
            fn unit_normal(&self) -> Self {
                self.abs()
            }
        }
    )*};
}

euclid_int!(i64 => u64, i128 => u128);

impl EuclideanDomain for BigInt {
    type Norm = BigUint;
    fn norm(&self) -> BigUint {
        self.magnitude().clone()
    }
    fn div_rem_euclid(&self, other: &Self) -> (Self, Self) {
        self.div_mod_floor(other)
    }
    fn unit_normal(&self) -> Self {
        self.abs()
    }
}

/// Convert an exact rational to `f64` (for reporting only).
pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let shift = r.numer().bits() as i64 - r.denom().bits() as i64;
    let scaled = if shift > 0 {
        r / BigRational::from_integer(BigInt::one() << shift as usize)
    } else {
        r * BigRational::from_integer(BigInt::one() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Natural logarithm of a positive big integer as `f64`.
pub fn ln_bigint(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    assert!(x.is_positive(), "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
