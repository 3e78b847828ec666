//! Interval arithmetic with exact rational endpoints, and a rigorous
//! enclosure of the natural logarithm.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::rational_to_f64;

/// Closed real interval `[lo, hi]` with rational endpoints.
#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn overlaps(&self, o: &Self) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn hull(&self, o: &Self) -> Self {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// `x^2`, tight when the interval straddles zero.
    pub fn square(&self) -> Self {
        let (a, b) = (&self.lo * &self.lo, &self.hi * &self.hi);
        if self.contains_zero() {
            Interval {
                lo: BigRational::zero(),
                hi: a.max(b),
            }
        } else {
            Interval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }

    /// Reciprocal; `None` if the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        Some(self.mul(&o.recip()?))
    }

    pub fn max_with(&self, x: &BigRational) -> Self {
        Interval {
            lo: self.lo.clone().max(x.clone()),
            hi: self.hi.clone().max(x.clone()),
        }
    }

    /// Widen outward to endpoints on the grid `2^-bits`, bounding the size
    /// of the endpoint representations.
    pub fn round_outward(&self, bits: u32) -> Self {
        let scale = BigInt::one() << bits;
        let lo = (&self.lo * BigRational::from_integer(scale.clone())).floor();
        let hi = (&self.hi * BigRational::from_integer(scale.clone())).ceil();
        Interval {
            lo: lo / BigRational::from_integer(scale.clone()),
            hi: hi / BigRational::from_integer(scale),
        }
    }

    /// Enclosure of `ln x` over a positive interval, each endpoint within
    /// `2^-bits` of the true value before outward rounding.
    pub fn ln(&self, bits: u32) -> Self {
        assert!(self.lo.is_positive(), "ln of a non-positive interval");
        if self.is_point() {
            return ln_enclosure(&self.lo, bits);
        }
        Interval {
            lo: ln_enclosure(&self.lo, bits).lo,
            hi: ln_enclosure(&self.hi, bits).hi,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.lo), rational_to_f64(&self.hi))
    }

    pub fn mid_f64(&self) -> f64 {
        rational_to_f64(&self.mid())
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64();
        write!(f, "[{a:.12e}, {b:.12e}]")
    }
}

/// `atanh(z) * 2^w` for rational `0 <= z <= 1/3`, as `(value, error)` in
/// units of `2^-w`. Each truncated product loses at most a few units; the
/// series is cut once the tail drops below one unit.
fn atanh_fixed(z: &BigRational, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let zf = (z.numer() << w).div_floor(z.denom());
    let z2 = (&zf * &zf) >> w;
    let mut power = zf;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut j = 0u64;
    loop {
        sum += &power / BigInt::from(2 * j + 1);
        terms += 1;
        j += 1;
        power = (&power * &z2) >> w;
        // power bounds z^(2j+1) * 2^w up to 3 units; tail <= power * 9/8
        if power <= BigInt::from(3) {
            break;
        }
        debug_assert!(power < one);
    }
    // per-term error <= 5 units, tail <= 4 units
    let err = BigInt::from(5 * terms + 5);
    (sum, err)
}

/// Rigorous enclosure of `ln x` for rational `x > 0` with radius about
/// `2^-bits` (before outward rounding to that grid).
pub fn ln_enclosure(x: &BigRational, bits: u32) -> Interval {
    assert!(x.is_positive(), "ln of non-positive value");
    if x.is_one() {
        return Interval::zero();
    }
    // x = 2^k * y with 1 <= y < 2
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(2.into());
    let pow2 = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(BigInt::one() << e as usize)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
        }
    };
    let mut y = x / pow2(k);
    while y >= two {
        y /= &two;
        k += 1;
    }
    while y < BigRational::one() {
        y *= &two;
        k -= 1;
    }
    let guard = 16 + (64 - (k.unsigned_abs().max(1)).leading_zeros());
    let w = bits + guard;
    let one = BigRational::one();
    let z = (&y - &one) / (&y + &one);
    let (ay, ey) = atanh_fixed(&z, w);
    let (a2, e2) = atanh_fixed(&BigRational::new(1.into(), 3.into()), w);
    // ln y = 2 atanh(z), ln 2 = 2 atanh(1/3)
    let center = BigInt::from(2) * (ay + BigInt::from(k) * a2);
    let err = BigInt::from(2) * (ey + BigInt::from(k.abs()) * e2) + 2;
    let denom = BigInt::one() << w;
    Interval {
        lo: BigRational::new(&center - &err, denom.clone()),
        hi: BigRational::new(&center + &err, denom),
    }
    .round_outward(bits + 2)
}

/// Axis-parallel complex rectangle `re x im`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexBox {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexBox { re, im }
    }

    pub fn real_point(x: BigRational) -> Self {
        ComplexBox {
            re: Interval::point(x),
            im: Interval::zero(),
        }
    }

    pub fn one() -> Self {
        Self::real_point(BigRational::one())
    }

    pub fn width(&self) -> BigRational {
        self.re.width().max(self.im.width())
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }

    pub fn conj(&self) -> Self {
        ComplexBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Enclosure of `|z|^2` over the box.
    pub fn abs2(&self) -> Interval {
        self.re.square().add(&self.im.square())
    }

    /// `1 / z`, `None` when the box may contain zero.
    pub fn recip(&self) -> Option<Self> {
        let n = self.abs2().recip()?;
        Some(ComplexBox {
            re: self.re.mul(&n),
            im: self.im.neg().mul(&n),
        })
    }

    /// `z^e` for `e >= 0` by square-and-multiply, endpoints rounded to
    /// `2^-bits` after each product to bound their size.
    pub fn pow(&self, mut e: u64, bits: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).round_outward(bits);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).round_outward(bits);
            }
        }
        result
    }

    /// `z^e` for any integer `e`.
    pub fn powi(&self, e: i64, bits: u32) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u64, bits))
        } else {
            Some(self.recip()?.round_outward(bits).pow(e.unsigned_abs(), bits))
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Enclosure of `sum c_i z^i` over the box by Horner's rule, rounded
    /// outward to `2^-bits` at each step.
    pub fn eval_poly(&self, coeffs: &[BigRational], bits: u32) -> Self {
        let mut acc = ComplexBox::real_point(BigRational::zero());
        for c in coeffs.iter().rev() {
            acc = acc
                .mul(self)
                .add(&ComplexBox::real_point(c.clone()))
                .round_outward(bits);
        }
        acc
    }

    pub fn round_outward(&self, bits: u32) -> Self {
        ComplexBox {
            re: self.re.round_outward(bits),
            im: self.im.round_outward(bits),
        }
    }
}

impl fmt::Debug for ComplexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} + i{:?}", self.re, self.im)
    }
}
