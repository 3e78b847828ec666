use std::fmt;

use super::field::{FiniteField, Fq};
use crate::error::{Error, Result};

/// `y^2 = x^3 + a x + b` over `F_q`, characteristic at least 5.
#[derive(Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    field: FiniteField,
    a: Fq,
    b: Fq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine(Fq, Fq),
}

impl ECPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }
}

impl fmt::Debug for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "y^2 = x^3 + {:?} x + {:?} over {:?}",
            self.a.coeffs(),
            self.b.coeffs(),
            self.field
        )
    }
}

impl EllipticCurve {
    pub fn new(field: FiniteField, a: Fq, b: Fq) -> Result<Self> {
        if field.p() < 5 {
            return Err(Error::InvalidCurve("characteristic must be at least 5".into()));
        }
        if !field.contains(&a) || !field.contains(&b) {
            return Err(Error::FieldMismatch);
        }
        let f = &field;
        // 4 a^3 + 27 b^2
        let disc = f.add(
            &f.mul(&f.from_int(4), &f.mul(&a, &f.square(&a))),
            &f.mul(&f.from_int(27), &f.square(&b)),
        );
        if disc.is_zero() {
            return Err(Error::InvalidCurve("singular curve".into()));
        }
        Ok(EllipticCurve { field, a, b })
    }

    /// Curve with integer coefficients over `F_{p^k}`.
    pub fn from_ints(p: u64, k: u32, a: i64, b: i64) -> Result<Self> {
        let field = FiniteField::new(p, k)?;
        let (fa, fb) = (field.from_int(a), field.from_int(b));
        Self::new(field, fa, fb)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn a(&self) -> &Fq {
        &self.a
    }

    pub fn b(&self) -> &Fq {
        &self.b
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// `x^3 + a x + b`.
    pub fn rhs(&self, x: &Fq) -> Fq {
        let f = &self.field;
        f.add(&f.mul(&f.add(&f.square(x), &self.a), x), &self.b)
    }

    pub fn contains(&self, pt: &ECPoint) -> bool {
        match pt {
            ECPoint::Infinity => true,
            ECPoint::Affine(x, y) => {
                self.field.contains(x) && self.field.contains(y) && self.field.square(y) == self.rhs(x)
            }
        }
    }

    pub fn point(&self, x: Fq, y: Fq) -> Result<ECPoint> {
        let pt = ECPoint::Affine(x, y);
        if self.contains(&pt) {
            Ok(pt)
        } else {
            Err(Error::OffCurve)
        }
    }

    /// The same equation over the degree-`n` extension of the base field.
    pub fn base_change(&self, n: u32) -> Result<Self> {
        if n == 1 {
            return Ok(self.clone());
        }
        let big = self.field.extension(n)?;
        let a = big.embed(&self.field, &self.a)?;
        let b = big.embed(&self.field, &self.b)?;
        Self::new(big, a, b)
    }

    /// `y^2 = x^3 + a d^2 x + b d^3` for the first non-square `d`.
    pub fn quadratic_twist(&self) -> Result<Self> {
        let f = &self.field;
        let d = f
            .non_residue()
            .ok_or_else(|| Error::InvalidCurve("no non-square in the field".into()))?
            .clone();
        let d2 = f.square(&d);
        let d3 = f.mul(&d2, &d);
        Self::new(f.clone(), f.mul(&self.a, &d2), f.mul(&self.b, &d3))
    }

    pub fn neg(&self, pt: &ECPoint) -> ECPoint {
        match pt {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine(x, y) => ECPoint::Affine(x.clone(), self.field.neg(y)),
        }
    }

    /// Chord-and-tangent sum without membership checks.
    pub fn add_unchecked(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let f = &self.field;
        let (ECPoint::Affine(x1, y1), ECPoint::Affine(x2, y2)) = (p, q) else {
            return if p.is_infinity() { q.clone() } else { p.clone() };
        };
        let lambda = if x1 == x2 {
            if f.add(y1, y2).is_zero() {
                return ECPoint::Infinity;
            }
            let num = f.add(&f.mul(&f.from_int(3), &f.square(x1)), &self.a);
            let den = f.add(y1, y1);
            f.mul(&num, &f.inv(&den).expect("nonzero"))
        } else {
            let den = f.sub(x2, x1);
            f.mul(&f.sub(y2, y1), &f.inv(&den).expect("nonzero"))
        };
        let x3 = f.sub(&f.sub(&f.square(&lambda), x1), x2);
        let y3 = f.sub(&f.mul(&lambda, &f.sub(x1, &x3)), y1);
        ECPoint::Affine(x3, y3)
    }

    /// `k P` by double-and-add.
    pub fn mul_unchecked(&self, pt: &ECPoint, k: u64) -> ECPoint {
        let mut acc = ECPoint::Infinity;
        for i in (0..64 - k.leading_zeros()).rev() {
            acc = self.add_unchecked(&acc, &acc);
            if (k >> i) & 1 == 1 {
                acc = self.add_unchecked(&acc, pt);
            }
        }
        acc
    }

    /// All rational points, the point at infinity first.
    pub fn points(&self) -> Vec<ECPoint> {
        let f = &self.field;
        let mut out = vec![ECPoint::Infinity];
        for x in f.elements() {
            let r = self.rhs(&x);
            if let Some(y) = f.sqrt(&r) {
                if y.is_zero() {
                    out.push(ECPoint::Affine(x, y));
                } else {
                    let ny = f.neg(&y);
                    out.push(ECPoint::Affine(x.clone(), y));
                    out.push(ECPoint::Affine(x, ny));
                }
            }
        }
        out
    }
}

pub fn ec_add(e: &EllipticCurve, p: &ECPoint, q: &ECPoint) -> Result<ECPoint> {
    if !e.contains(p) || !e.contains(q) {
        return Err(Error::OffCurve);
    }
    Ok(e.add_unchecked(p, q))
}

pub fn ec_mul(e: &EllipticCurve, p: &ECPoint, k: u64) -> Result<ECPoint> {
    if !e.contains(p) {
        return Err(Error::OffCurve);
    }
    Ok(e.mul_unchecked(p, k))
}

/// Largest field handled by exhaustive counting.
pub const NAIVE_COUNT_LIMIT: u64 = 10_000_000;

/// `1 + sum_x (1 + chi(x^3 + a x + b))` over every `x` in the field.
pub fn point_count_naive(e: &EllipticCurve) -> Result<u64> {
    let q = e.q();
    if q > NAIVE_COUNT_LIMIT {
        return Err(Error::Budget(format!("naive count over a field of size {q}")));
    }
    let f = e.field();
    let mut n: i64 = 1;
    for x in f.elements() {
        n += 1 + f.chi(&e.rhs(&x)) as i64;
    }
    Ok(n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: i64, b: i64) -> EllipticCurve {
        EllipticCurve::from_ints(5, 1, a, b).unwrap()
    }

    fn pt(e: &EllipticCurve, x: i64, y: i64) -> ECPoint {
        e.point(e.field().from_int(x), e.field().from_int(y)).unwrap()
    }

    #[test]
    fn group_law_examples() {
        let e = curve(1, 1);
        let p = pt(&e, 0, 1);
        assert_eq!(ec_add(&e, &p, &ECPoint::Infinity).unwrap(), p);
        assert_eq!(ec_add(&e, &p, &e.neg(&p)).unwrap(), ECPoint::Infinity);
        assert_eq!(ec_add(&e, &p, &p).unwrap(), pt(&e, 4, 2));
        let off = ECPoint::Affine(e.field().from_int(0), e.field().from_int(2));
        assert_eq!(ec_add(&e, &off, &p), Err(Error::OffCurve));
        assert_eq!(ec_mul(&e, &p, 9).unwrap(), ECPoint::Infinity);
    }

    #[test]
    fn naive_counts() {
        assert_eq!(point_count_naive(&curve(1, 1)).unwrap(), 9);
        assert_eq!(point_count_naive(&curve(0, 2)).unwrap(), 6);
        assert_eq!(curve(1, 1).points().len(), 9);
        let e25 = curve(1, 1).base_change(2).unwrap();
        assert_eq!(point_count_naive(&e25).unwrap(), 27);
    }

    #[test]
    fn twist_and_invalid_curves() {
        let t = curve(1, 1).quadratic_twist().unwrap();
        assert_eq!((t.a().coeff(0), t.b().coeff(0)), (4, 3));
        assert!(EllipticCurve::from_ints(5, 1, 0, 0).is_err());
        assert!(EllipticCurve::from_ints(3, 1, 1, 1).is_err());
    }

    #[test]
    fn associativity_over_f25() {
        let e = curve(1, 1).base_change(2).unwrap();
        let pts = e.points();
        for a in pts.iter().take(6) {
            for b in pts.iter().skip(3).take(6) {
                for c in pts.iter().skip(10).take(4) {
                    let l = e.add_unchecked(&e.add_unchecked(a, b), c);
                    let r = e.add_unchecked(a, &e.add_unchecked(b, c));
                    assert_eq!(l, r);
                    assert!(e.contains(&l));
                }
            }
        }
    }
}
