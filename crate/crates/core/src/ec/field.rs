use std::fmt;

use crate::error::{Error, Result};
use crate::poly::modp::{is_prime_u64, FpPoly};

/// Element of `F_{p^k}`: a polynomial over `F_p` reduced modulo the field's
/// defining polynomial.
pub type Fq = FpPoly;

/// `F_{p^k}` as `F_p[x] / (f)` for an irreducible monic `f` of degree `k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    modulus: FpPoly,
    /// First non-square, for odd `q`.
    non_residue: Option<Fq>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus.coeffs())
    }
}

/// Monic irreducible polynomial of degree `k` over `F_p`: the first one in
/// the order of the lower coefficients read as base-`p` digits.
pub fn find_irreducible(p: u64, k: u32) -> FpPoly {
    if k == 1 {
        return FpPoly::x(p);
    }
    let mut idx = 0u64;
    loop {
        let mut c = Vec::with_capacity(k as usize + 1);
        let mut v = idx;
        for _ in 0..k {
            c.push(v % p);
            v /= p;
        }
        c.push(1);
        let f = FpPoly::new(p, c);
        if f.is_irreducible() {
            return f;
        }
        idx += 1;
    }
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidCurve("extension degree must be positive".into()));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidCurve(format!("{p} is not prime")));
        }
        Self::with_modulus(find_irreducible(p, k))
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn with_modulus(modulus: FpPoly) -> Result<Self> {
        let p = modulus.p();
        let k = modulus.deg() as u32;
        if !modulus.is_irreducible() {
            return Err(Error::InvalidCurve("field modulus is reducible".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q < 1 << 62)
            .ok_or_else(|| Error::Budget(format!("field size {p}^{k} too large")))?;
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus: modulus.monic(),
            non_residue: None,
        };
        if q % 2 == 1 {
            field.non_residue = (1..q).map(|i| field.from_index(i)).find(|x| field.chi(x) == -1);
        }
        Ok(field)
    }

    /// Field of degree `k * n` over `F_p`.
    pub fn extension(&self, n: u32) -> Result<Self> {
        Self::new(self.p, self.k * n)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.modulus
    }

    pub fn zero(&self) -> Fq {
        FpPoly::zero(self.p)
    }

    pub fn one(&self) -> Fq {
        FpPoly::one(self.p)
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fq {
        FpPoly::from_i64(self.p, &[n])
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Fq {
        FpPoly::new(self.p, coeffs).rem(&self.modulus)
    }

    /// Element with base-`p` digits of `idx` as coefficients.
    pub fn from_index(&self, mut idx: u64) -> Fq {
        let mut c = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            c.push(idx % self.p);
            idx /= self.p;
        }
        FpPoly::new(self.p, c)
    }

    pub fn index(&self, x: &Fq) -> u64 {
        x.coeffs().iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.q).map(|i| self.from_index(i))
    }

    pub fn contains(&self, x: &Fq) -> bool {
        x.p() == self.p && x.degree().is_none_or(|d| d < self.k as usize)
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        a.add(b)
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        a.sub(b)
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        self.zero().sub(a)
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        a.mul_mod(b, &self.modulus)
    }

    pub fn square(&self, a: &Fq) -> Fq {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Fq, e: u64) -> Fq {
        a.pow_mod_u64(e, &self.modulus)
    }

    pub fn inv(&self, a: &Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        // the gcd with the irreducible modulus is 1
        let (_, s, _) = a.ext_gcd(&self.modulus);
        Some(s.rem(&self.modulus))
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn chi(&self, a: &Fq) -> i8 {
        if a.is_zero() {
            return 0;
        }
        if self.pow(a, (self.q - 1) / 2).is_one() {
            1
        } else {
            -1
        }
    }

    /// First non-square in index order (odd `q`).
    pub fn non_residue(&self) -> Option<&Fq> {
        self.non_residue.as_ref()
    }

    /// A square root by Tonelli-Shanks, `None` for non-squares.
    pub fn sqrt(&self, a: &Fq) -> Option<Fq> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if self.chi(a) != 1 {
            return None;
        }
        let mut s = 0;
        let mut t = self.q - 1;
        while t.is_multiple_of(2) {
            t /= 2;
            s += 1;
        }
        let z = self.non_residue.as_ref()?;
        let mut m = s;
        let mut c = self.pow(z, t);
        let mut r = self.pow(a, t.div_ceil(2));
        let mut u = self.pow(a, t);
        while !u.is_one() {
            let mut i = 0;
            let mut v = u.clone();
            while !v.is_one() {
                v = self.square(&v);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..m - i - 1 {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            r = self.mul(&r, &b);
            u = self.mul(&u, &c);
        }
        Some(r)
    }

    /// Image of `x` from `sub` in this field, when `sub` is a subfield.
    pub fn embed(&self, sub: &FiniteField, x: &Fq) -> Result<Fq> {
        if sub.p != self.p || !self.k.is_multiple_of(sub.k) {
            return Err(Error::FieldMismatch);
        }
        if x.degree().is_none_or(|d| d == 0) || sub == self {
            return Ok(x.clone());
        }
        // send the generator of `sub` to a root of its modulus here
        let root = self
            .elements()
            .find(|r| self.eval(sub.modulus(), r).is_zero())
            .ok_or(Error::FieldMismatch)?;
        Ok(self.eval(x, &root))
    }

    /// Evaluate a polynomial over `F_p` at a field element.
    pub fn eval(&self, f: &FpPoly, x: &Fq) -> Fq {
        f.coeffs().iter().rev().fold(self.zero(), |acc, &c| {
            self.mul(&acc, x).add(&FpPoly::new(self.p, vec![c]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_of_25() {
        let f = FiniteField::new(5, 2).unwrap();
        assert_eq!(f.q(), 25);
        let nonzero: Vec<Fq> = f.elements().skip(1).collect();
        for a in &nonzero {
            let ai = f.inv(a).unwrap();
            assert!(f.mul(a, &ai).is_one());
            assert!(f.pow(a, 24).is_one());
        }
        assert_eq!(nonzero.iter().filter(|a| f.chi(a) == 1).count(), 12);
        for a in &nonzero {
            if let Some(r) = f.sqrt(a) {
                assert_eq!(&f.square(&r), a);
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let f = FiniteField::new(7, 3).unwrap();
        for i in [0, 1, 6, 7, 48, 342] {
            assert_eq!(f.index(&f.from_index(i)), i);
        }
        assert!(FiniteField::new(6, 1).is_err());
    }

    #[test]
    fn sqrt_with_high_two_adicity() {
        // 17 - 1 = 2^4
        let f = FiniteField::prime(17).unwrap();
        for a in 1..17 {
            let x = f.from_int(a);
            if let Some(r) = f.sqrt(&x) {
                assert_eq!(f.square(&r), x);
            }
        }
    }

    #[test]
    fn embedding_respects_arithmetic() {
        let small = FiniteField::new(3, 2).unwrap();
        let big = FiniteField::new(3, 4).unwrap();
        let g = small.element(vec![0, 1]);
        let eg = big.embed(&small, &g).unwrap();
        let lhs = big.embed(&small, &small.mul(&g, &g)).unwrap();
        assert_eq!(big.mul(&eg, &eg), lhs);
    }
}
