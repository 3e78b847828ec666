use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::isolate::{isolate_roots, pow2_neg, RootBox};
use crate::error::{Error, Result};
use crate::interval::{ln_enclosure, ComplexBox, Interval};
use crate::poly::{factor_over_q, is_cyclotomic, Poly};

/// An algebraic number given by its monic irreducible minimal polynomial
/// over `Q` and an isolating region for the particular root.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraicNumber {
    minpoly: Poly<BigRational>,
    root: RootBox,
}

impl AlgebraicNumber {
    pub fn from_rational(x: BigRational) -> Self {
        AlgebraicNumber {
            minpoly: Poly::linear_root(x.clone()),
            root: RootBox::Exact(x),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// All roots of an irreducible polynomial (made monic), each isolated.
    pub fn conjugates(minpoly: &Poly<BigRational>) -> Result<Vec<Self>> {
        if minpoly.is_zero() || minpoly.is_constant() {
            return Err(Error::InvalidArgument(
                "minimal polynomial must have positive degree".into(),
            ));
        }
        let m = minpoly.monic();
        Ok(isolate_roots(&m)
            .into_iter()
            .map(|root| AlgebraicNumber {
                minpoly: m.clone(),
                root,
            })
            .collect())
    }

    /// All roots of `p`, grouped by irreducible factor, repeated roots once.
    pub fn roots_of(p: &Poly<BigRational>) -> Result<Vec<Self>> {
        let f = factor_over_q(p)?;
        let mut out = Vec::new();
        for (g, _) in &f.factors {
            out.extend(Self::conjugates(g)?);
        }
        Ok(out)
    }

    /// The root of `minpoly` whose isolating region contains the point
    /// `(re, im)`, if exactly one does once isolated.
    pub fn root_near(minpoly: &Poly<BigRational>, re: f64, im: f64) -> Result<Self> {
        let roots = Self::conjugates(minpoly)?;
        let mut width = BigRational::new(1.into(), 16.into());
        for _ in 0..60 {
            let hits: Vec<&Self> = roots
                .iter()
                .filter(|r| {
                    let b = r.root.refine(&r.minpoly, &width).enclosure();
                    let (a, c) = b.re.to_f64();
                    let (e, f) = b.im.to_f64();
                    a - 1e-9 <= re && re <= c + 1e-9 && e - 1e-9 <= im && im <= f + 1e-9
                })
                .collect();
            if hits.len() == 1 {
                return Ok(hits[0].clone());
            }
            width /= BigRational::from_integer(16.into());
        }
        Err(Error::InvalidArgument(format!(
            "no unique root of {minpoly} near {re}+{im}i"
        )))
    }

    pub fn minpoly(&self) -> &Poly<BigRational> {
        &self.minpoly
    }

    pub fn root_box(&self) -> &RootBox {
        &self.root
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.root {
            RootBox::Exact(x) => Some(x.clone()),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self.root, RootBox::Complex(_))
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|x| x.is_zero())
    }

    /// Current isolating region.
    pub fn enclosure(&self) -> ComplexBox {
        self.root.enclosure()
    }

    /// Enclosure of side below `2^-bits`.
    pub fn enclosure_bits(&self, bits: u32) -> ComplexBox {
        self.root.refine(&self.minpoly, &pow2_neg(bits)).enclosure()
    }

    /// Refine the stored region in place.
    pub fn refine(&mut self, bits: u32) {
        self.root = self.root.refine(&self.minpoly, &pow2_neg(bits));
    }

    /// Minimal polynomial scaled to a primitive integer polynomial.
    pub fn integer_minpoly(&self) -> Poly<BigInt> {
        self.minpoly.to_primitive_integer()
    }

    /// True if the minimal polynomial has integer coefficients.
    pub fn is_algebraic_integer(&self) -> bool {
        self.minpoly.to_integer().is_some()
    }

    /// Order `n` if this is a primitive `n`-th root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        is_cyclotomic(&self.minpoly)
    }

    /// Same number: equal minimal polynomials and intersecting regions,
    /// refined until the answer is certain.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.minpoly != other.minpoly {
            return false;
        }
        // roots of one polynomial are isolated from a single run here only
        // if the regions coincide; otherwise refine to separate them
        let mut bits = 8;
        loop {
            let a = self.enclosure_bits(bits);
            let b = other.enclosure_bits(bits);
            if !a.intersects(&b) {
                return false;
            }
            let all = Self::conjugates(&self.minpoly).expect("nonconstant");
            let hits = all
                .iter()
                .filter(|r| r.enclosure_bits(bits).intersects(&a))
                .count();
            if hits == 1 {
                return true;
            }
            bits *= 2;
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({} @ {:?})", self.minpoly, self.enclosure())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(x) = self.as_rational() {
            return write!(f, "{x}");
        }
        let e = self.enclosure();
        let (re, im) = (e.re.mid_f64(), e.im.mid_f64());
        if self.is_real() {
            write!(f, "~{re:.6} [{}]", self.minpoly)
        } else {
            write!(f, "~{re:.6}{im:+.6}i [{}]", self.minpoly)
        }
    }
}

/// Enclosure of the absolute logarithmic Weil height,
/// `h = (log |lc| + sum log+ |alpha_i|) / deg` over the primitive integer
/// minimal polynomial, of width below `2^(1 - precision/2)`. Exactly zero
/// for roots of unity and `0`.
pub fn weil_height(alpha: &AlgebraicNumber, precision: u32) -> Interval {
    let precision = precision.max(32);
    if alpha.is_zero() || alpha.root_of_unity_order().is_some() {
        return Interval::zero();
    }
    let target = BigRational::new(2.into(), BigInt::one() << (precision / 2));
    if let Some(x) = alpha.as_rational() {
        let m = x.numer().abs().max(x.denom().clone());
        if m.is_one() {
            return Interval::zero();
        }
        return ln_enclosure(&BigRational::from_integer(m), precision / 2 + 4);
    }
    let f = alpha.integer_minpoly();
    let deg = f.deg();
    let degq = BigRational::from_integer(deg.into());
    let lc = BigRational::from_integer(f.lc().abs());
    let roots = isolate_roots(&alpha.minpoly);
    let half = BigRational::new(1.into(), 2.into());
    let mut bits = precision / 2 + 8 + deg as u32;
    loop {
        let ln_bits = bits + 4;
        let mut sum = ln_enclosure(&lc, ln_bits);
        for r in &roots {
            // a conjugate pair shares its modulus: count the upper root twice
            let weight = match r {
                RootBox::Complex(b) if b.im.hi.is_negative() => continue,
                RootBox::Complex(_) => BigRational::one(),
                _ => half.clone(),
            };
            let b = r.refine(&alpha.minpoly, &pow2_neg(bits)).enclosure();
            let m2 = b.abs2();
            if m2.hi <= BigRational::one() {
                continue;
            }
            let clipped = m2.max_with(&BigRational::one());
            sum = sum.add(&clipped.ln(ln_bits).scale(&weight));
        }
        let h = sum.scale(&degq.recip());
        if h.width() < target {
            return h;
        }
        bits += bits / 2 + 4;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    #[test]
    fn heights_of_rationals() {
        let h2 = weil_height(&AlgebraicNumber::from_int(2), 64);
        let (lo, hi) = h2.to_f64();
        assert!(lo - 1e-15 <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= hi + 1e-15);
        assert!(h2.width() < BigRational::new(1.into(), BigInt::one() << 31));
        assert!(weil_height(&AlgebraicNumber::from_int(-1), 64).is_point());
        assert!(weil_height(&AlgebraicNumber::from_int(0), 64).is_point());
        let h = weil_height(
            &AlgebraicNumber::from_rational(BigRational::new(3.into(), 4.into())),
            64,
        );
        assert!((h.mid_f64() - 4f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn height_of_silver_ratio() {
        let roots = AlgebraicNumber::conjugates(&qp(&[-1, -2, 1])).unwrap();
        let expected = 0.5 * (1.0 + 2f64.sqrt()).ln();
        for r in &roots {
            let h = weil_height(r, 64);
            let (lo, hi) = h.to_f64();
            assert!(lo - 1e-15 <= expected && expected <= hi + 1e-15, "{h:?}");
            assert!(hi - lo < 2f64.powi(-31));
        }
    }

    #[test]
    fn roots_of_unity_have_zero_height() {
        for c in [&[1i64, 1][..], &[1, 1, 1], &[1, 0, 1], &[1, -1, 1]] {
            let z = &AlgebraicNumber::conjugates(&qp(c)).unwrap()[0];
            assert!(z.root_of_unity_order().is_some());
            assert!(weil_height(z, 64).is_point());
        }
        let g = &AlgebraicNumber::conjugates(&qp(&[-1, -1, 1])).unwrap()[0];
        assert_eq!(g.root_of_unity_order(), None);
    }

    #[test]
    fn non_monic_height_includes_leading_coefficient() {
        // 2x^2 - 3x + 2: roots of modulus 1, height (log 2)/2
        let roots = AlgebraicNumber::conjugates(&qp(&[2, -3, 2])).unwrap();
        let h = weil_height(&roots[0], 80);
        assert!((h.mid_f64() - 0.5 * 2f64.ln()).abs() < 1e-12, "{h:?}");
    }

    #[test]
    fn root_near_picks_the_right_conjugate() {
        let r = AlgebraicNumber::root_near(&qp(&[-2, 0, 1]), -std::f64::consts::SQRT_2, 0.0).unwrap();
        assert!(r.enclosure_bits(20).re.hi < BigRational::zero());
    }
}
