use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::algnum::intfactor::factor_u64;
use crate::error::{Error, Result};
use crate::linalg::{n_rank, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderResult {
    Finite(u64),
    /// `A^k mod N` entered a cycle of the given period after `preperiod`
    /// powers without meeting the rank condition.
    Infinite {
        period: u64,
        preperiod: u64,
    },
}

/// Square matrix over `Z/N` with entries in `[0, N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ModMatrix {
    d: usize,
    n: u64,
    e: Vec<u64>,
}

impl ModMatrix {
    fn from_matrix(a: &Matrix<BigInt>, n: u64) -> Self {
        let nb = BigInt::from(n);
        let e = a
            .entries()
            .iter()
            .map(|x| x.mod_floor(&nb).to_u64().expect("reduced below n"))
            .collect();
        ModMatrix { d: a.nrows(), n, e }
    }

    fn identity(d: usize, n: u64) -> Self {
        let mut e = vec![0; d * d];
        for i in 0..d {
            e[i * d + i] = 1 % n;
        }
        ModMatrix { d, n, e }
    }

    fn mul(&self, o: &Self) -> Self {
        let (d, n) = (self.d, self.n as u128);
        let mut e = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut s = 0u128;
                for k in 0..d {
                    s = (s + self.e[i * d + k] as u128 * o.e[k * d + j] as u128) % n;
                }
                e[i * d + j] = s as u64;
            }
        }
        ModMatrix { d, n: self.n, e }
    }

    fn pow(&self, k: &BigUint) -> Self {
        let mut result = Self::identity(self.d, self.n);
        for i in (0..k.bits()).rev() {
            result = result.mul(&result);
            if k.bit(i) {
                result = result.mul(self);
            }
        }
        result
    }

    fn is_identity(&self) -> bool {
        *self == Self::identity(self.d, self.n)
    }

    /// `self - I` lifted to integers.
    fn minus_identity(&self) -> Matrix<BigInt> {
        let d = self.d;
        let entries = (0..d * d)
            .map(|idx| {
                let v = BigInt::from(self.e[idx]);
                if idx / d == idx % d {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        Matrix::from_vec(d, d, entries).expect("square")
    }
}

/// Least `k >= 1` with `N-rank(A^k - I) <= r`, iterating `A^k mod N` until
/// the sequence of residues repeats.
pub fn ord_r(a: &Matrix<BigInt>, n: u64, r: usize) -> Result<OrderResult> {
    let d = a.require_square()?;
    if n < 2 {
        return Err(Error::BadModulus(n.to_string()));
    }
    if r > d {
        return Err(Error::RankOutOfRange { r, max: d });
    }
    if r == d {
        return Ok(OrderResult::Finite(1));
    }
    let nb = BigInt::from(n);
    let base = ModMatrix::from_matrix(a, n);
    let mut seen: HashMap<ModMatrix, u64> = HashMap::new();
    let mut cur = base.clone();
    let mut k = 1u64;
    loop {
        if n_rank(&cur.minus_identity(), &nb) <= r {
            return Ok(OrderResult::Finite(k));
        }
        if let Some(&j) = seen.get(&cur) {
            return Ok(OrderResult::Infinite {
                period: k - j,
                preperiod: j - 1,
            });
        }
        seen.insert(cur.clone(), k);
        cur = cur.mul(&base);
        k += 1;
    }
}

/// Prime factorization of `|GL_d(Z/N)|`.
fn gl_order_factors(d: usize, n: u64) -> Vec<(u64, u64)> {
    let mut exps: HashMap<u64, u64> = HashMap::new();
    for (p, e) in factor_u64(n) {
        // |GL_d(Z/p^e)| = p^(d^2 (e-1)) * prod_{i<d} (p^d - p^i)
        let dd = d as u64;
        *exps.entry(p).or_default() += dd * dd * (e as u64 - 1) + dd * (dd - 1) / 2;
        for j in 1..=d as u32 {
            let m = p.checked_pow(j).expect("p^d fits in u64") - 1;
            for (q, f) in factor_u64(m) {
                *exps.entry(q).or_default() += f as u64;
            }
        }
    }
    let mut v: Vec<(u64, u64)> = exps.into_iter().filter(|&(_, e)| e > 0).collect();
    v.sort();
    v
}

/// Multiplicative order of `A` in `GL_d(Z/N)`, found by stripping prime
/// factors from the group order.
pub fn matrix_order_mod(a: &Matrix<BigInt>, n: u64) -> Result<u64> {
    let d = a.require_square()?;
    if n < 2 {
        return Err(Error::BadModulus(n.to_string()));
    }
    if !a.det().gcd(&BigInt::from(n)).is_one() {
        return Err(Error::SingularModulo(n.to_string()));
    }
    let m = ModMatrix::from_matrix(a, n);
    let factors = gl_order_factors(d, n);
    let mut order = factors.iter().fold(BigUint::one(), |acc, &(p, e)| {
        acc * BigUint::from(p).pow(e as u32)
    });
    for &(p, e) in &factors {
        let pb = BigUint::from(p);
        for _ in 0..e {
            let smaller = &order / &pb;
            if m.pow(&smaller).is_identity() {
                order = smaller;
            } else {
                break;
            }
        }
    }
    order
        .to_u64()
        .ok_or_else(|| Error::Budget(format!("matrix order {order} exceeds u64")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ord0Check {
    pub ord0: OrderResult,
    pub group_order: u64,
}

impl Ord0Check {
    pub fn matches(&self) -> bool {
        self.ord0 == OrderResult::Finite(self.group_order)
    }
}

/// Compare `ord(A, N, 0)` with the order of `A` in `GL_d(Z/N)`.
pub fn ord0_matches_matrix_order(a: &Matrix<BigInt>, n: u64) -> Result<Ord0Check> {
    let group_order = matrix_order_mod(a, n)?;
    Ok(Ord0Check {
        ord0: ord_r(a, n, 0)?,
        group_order,
    })
}
