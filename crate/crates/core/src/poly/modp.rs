//! Polynomials over a prime field `F_p` with word-sized `p`.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

/// Arithmetic in `Z/pZ`, `p < 2^63` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        Zp { p }
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element (panics on zero).
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        let (mut r0, mut r1) = (self.p as i128, a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(self.p as i128) as u64
    }
}

/// Dense polynomial over `F_p`, ascending coefficients, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub f: Zp,
    c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, c: Vec<u64>) -> Self {
        let f = Zp::new(p);
        let mut c: Vec<u64> = c.into_iter().map(|x| x % p).collect();
        trim(&mut c);
        FpPoly { f, c }
    }

    pub fn from_i64(p: u64, c: &[i64]) -> Self {
        let f = Zp::new(p);
        Self::new(p, c.iter().map(|&x| f.reduce_i64(x)).collect())
    }

    fn raw(f: Zp, mut c: Vec<u64>) -> Self {
        trim(&mut c);
        FpPoly { f, c }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly {
            f: Zp::new(p),
            c: Vec::new(),
        }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.f.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.f.inv(self.lc());
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::raw(self.f, self.c.iter().map(|&a| self.f.mul(a, k)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::raw(
            self.f,
            (0..n).map(|i| self.f.add(self.coeff(i), o.coeff(i))).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::raw(
            self.f,
            (0..n).map(|i| self.f.sub(self.coeff(i), o.coeff(i))).collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p());
        }
        let p = self.f.p as u128;
        let mut acc = vec![0u128; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::raw(self.f, acc.into_iter().map(|x| x as u64).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial mod p");
        let Some(n) = self.degree() else {
            return (self.clone(), self.clone());
        };
        if n < dd {
            return (Self::zero(self.p()), self.clone());
        }
        let inv = self.f.inv(d.lc());
        let mut r = self.c.clone();
        let mut q = vec![0u64; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = self.f.mul(r[k + dd], inv);
            if c == 0 {
                continue;
            }
            for (i, &di) in d.c.iter().enumerate() {
                r[k + i] = self.f.sub(r[k + i], self.f.mul(c, di));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::raw(self.f, q), Self::raw(self.f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p();
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = self.f.inv(r0.lc());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        Self::raw(
            self.f,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| self.f.mul(a, i as u64 % self.f.p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &a| self.f.add(self.f.mul(acc, x), a))
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p()).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(&result, m);
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
        }
        result
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Self) -> Self {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// `x^(p^k) mod m` by repeated `p`-th powering.
    pub fn frobenius_power_of_x(m: &Self, k: usize) -> Self {
        let p = m.p();
        let pe = BigUint::from(p);
        let mut x = Self::x(p).rem(m);
        for _ in 0..k {
            x = x.pow_mod(&pe, m);
        }
        x
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// Rabin's irreducibility test for a polynomial of degree `n >= 1`:
    /// `x^(p^n) = x mod f` and `gcd(x^(p^(n/q)) - x, f) = 1` for every
    /// prime `q | n`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let p = f.p();
        let x = Self::x(p);
        for q in prime_divisors(n) {
            let h = Self::frobenius_power_of_x(&f, n / q).sub(&x);
            if f.gcd(&h).deg() != 0 {
                return false;
            }
        }
        Self::frobenius_power_of_x(&f, n).sub(&x).rem(&f).is_zero()
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree_factor(&self) -> Vec<(Self, usize)> {
        let p = self.p();
        let x = Self::x(p);
        let pe = BigUint::from(p);
        let mut f = self.monic();
        let mut out = Vec::new();
        let mut h = x.clone();
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pe, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        if f.deg() > 0 {
            let d = f.deg();
            out.push((f, d));
        }
        out
    }

    /// Cantor-Zassenhaus equal-degree splitting (odd `p`) of a monic
    /// squarefree product of irreducibles of degree `d`.
    pub fn equal_degree_factor<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<Self> {
        let n = self.deg();
        if n <= d {
            return vec![self.monic()];
        }
        let p = self.p();
        assert!(p % 2 == 1, "equal-degree splitting needs odd p");
        let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
        loop {
            let a = Self::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let g = self.gcd(&a);
            let cand = if g.deg() > 0 {
                g
            } else {
                let b = a.pow_mod(&e, self).sub(&Self::one(p));
                self.gcd(&b)
            };
            if cand.deg() > 0 && cand.deg() < n {
                let rest = self.div_rem(&cand).0;
                let mut out = cand.equal_degree_factor(d, rng);
                out.extend(rest.monic().equal_degree_factor(d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted.
    pub fn factor_squarefree<R: Rng>(&self, rng: &mut R) -> Vec<Self> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree_factor() {
            out.extend(g.equal_degree_factor(d, rng));
        }
        out.sort_by(|a, b| (a.deg(), &a.c).cmp(&(b.deg(), &b.c)));
        out
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let z = Zp::new(n);
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = z.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = z.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
