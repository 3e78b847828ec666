use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{EuclideanDomain, ExactDiv, Field, Scalar};

/// Dense univariate polynomial, coefficients in ascending degree. The
/// representation is normalized: no trailing zero coefficients, so the zero
/// polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    /// `c * x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - a`.
    pub fn linear_root(a: T) -> Self {
        Poly {
            coeffs: vec![-a, T::one()],
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, treating the zero polynomial as degree 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `p(x) -> p(-x)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Reciprocal polynomial `x^deg p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// Composition `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * other) + &Self::constant(c.clone())
        })
    }

    pub fn map<U: Scalar, F: FnMut(&T) -> U>(&self, f: F) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Poly<T> {
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv();
        self.scale(&inv)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(n) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n < dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd].clone() * inv.clone();
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * di.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; the caller guarantees `d | self`.
    pub fn exact_quotient(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inv();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        self.degree()
            .is_some_and(|_| self.gcd(&self.derivative()).is_constant())
    }

    /// Yun's squarefree decomposition of a nonzero polynomial over a field of
    /// characteristic zero: returns `(a_1, a_2, ...)` with `monic(self) =
    /// prod a_i^i`, each `a_i` squarefree and pairwise coprime (some may be 1).
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let f = self.monic();
        let fp = f.derivative();
        let a = f.gcd(&fp);
        let mut b = f.exact_quotient(&a);
        let mut c = fp.exact_quotient(&a);
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        while !b.is_constant() {
            let g = b.gcd(&d);
            out.push(g.clone());
            b = b.exact_quotient(&g);
            c = d.exact_quotient(&g);
            d = &c - &b.derivative();
        }
        out
    }
}

impl Poly<BigRational> {
    /// Scale to a primitive integer polynomial with positive leading coefficient.
    pub fn to_primitive_integer(&self) -> Poly<BigInt> {
        if self.is_zero() {
            return Poly::zero();
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = Poly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        );
        ints.primitive_part()
    }

    /// Integer coefficients if every coefficient is integral.
    pub fn to_integer(&self) -> Option<Poly<BigInt>> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(self.map(|c| c.to_integer()))
        } else {
            None
        }
    }
}

impl Poly<BigInt> {
    pub fn to_rational(&self) -> Poly<BigRational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.map(|c| c / &g)
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Exact division over `Z`, `None` if `d` does not divide `self`.
    pub fn div_exact_z(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.to_rational().div_rem(&d.to_rational());
        if !r.is_zero() {
            return None;
        }
        q.to_integer()
    }
}

impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

// Owned operator forms, so `Poly<T>` satisfies `Scalar` and can be a matrix entry.
impl<T: Scalar> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<T: Field> ExactDiv for Poly<T> {
    fn exact_div(&self, other: &Self) -> Self {
        self.exact_quotient(other)
    }
}

impl<T: Field> EuclideanDomain for Poly<T> {
    type Norm = usize;
    fn norm(&self) -> usize {
        self.deg()
    }
    fn div_rem_euclid(&self, other: &Self) -> (Self, Self) {
        self.div_rem(other)
    }
    fn unit_normal(&self) -> Self {
        self.monic()
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Poly<T> {
    /// Comma-separated ascending coefficients, `"6,-5,1"` for `x^2 - 5x + 6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Parse the comma-separated ascending-coefficient format. Coefficients are
/// exact rationals such as `-3`, `7/2`.
pub fn parse_rational_poly(s: &str) -> Result<Poly<BigRational>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let coeffs = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<BigRational>()
                .map_err(|e| Error::Parse(format!("bad coefficient {tok:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn normalization_and_degree() {
        let p = qp(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(qp(&[0, 0]).degree(), None);
        assert!(qp(&[]).is_zero());
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = qp(&[6, -5, 1]);
        let b = qp(&[-2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, qp(&[-3, 1]));
        assert!(r.is_zero());
        let (q, r) = qp(&[1, 0, 0, 1]).div_rem(&qp(&[1, 1, 1]));
        assert_eq!(&(&q * &qp(&[1, 1, 1])) + &r, qp(&[1, 0, 0, 1]));
    }

    #[test]
    fn gcd_and_ext_gcd() {
        let a = &qp(&[-1, 1]) * &qp(&[-2, 1]);
        let b = &qp(&[-1, 1]) * &qp(&[3, 1]);
        assert_eq!(a.gcd(&b), qp(&[-1, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn squarefree_decomposition_of_example_charpoly() {
        // (x-2)(x-3)^3(x-9)
        let f = &(&(&qp(&[-2, 1]) * &qp(&[-3, 1]).pow(3)) * &qp(&[-9, 1])) * &Poly::one();
        let parts = f.squarefree_decomposition();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], &qp(&[-2, 1]) * &qp(&[-9, 1]));
        assert!(parts[1].is_one());
        assert_eq!(parts[2], qp(&[-3, 1]));
    }

    #[test]
    fn text_format_roundtrip() {
        let p = parse_rational_poly("6,-5,1").unwrap();
        assert_eq!(p, qp(&[6, -5, 1]));
        assert_eq!(p.to_string(), "6,-5,1");
        let half = parse_rational_poly("1/2, 0, 3").unwrap();
        assert_eq!(half.to_string(), "1/2,0,3");
        assert!(parse_rational_poly("1,x").is_err());
    }

    #[test]
    fn primitive_integer_scaling() {
        let p = parse_rational_poly("1/2,-1/3").unwrap();
        let z = p.to_primitive_integer();
        assert_eq!(z, Poly::new(vec![BigInt::from(-3), BigInt::from(2)]));
    }

    #[test]
    fn compose_and_reverse() {
        let p = qp(&[1, 2, 3]);
        assert_eq!(p.compose(&qp(&[1, 1])), qp(&[6, 8, 3]));
        assert_eq!(p.reverse(), qp(&[3, 2, 1]));
        assert_eq!(p.negate_variable(), qp(&[1, -2, 3]));
    }
}
