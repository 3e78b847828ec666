//! Integer factorization for the rational dependence test: trial division,
//! then Pollard's rho (Brent's variant) with an iteration cap.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const TRIAL_LIMIT: u64 = 1_000_000;
pub const RHO_ITERATIONS: u64 = 2_000_000;

/// Miller-Rabin with the first twelve prime bases: deterministic below
/// `3.3 * 10^24`, probabilistic beyond.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        let b = BigInt::from(b);
        if n == &b {
            return true;
        }
        if n.is_multiple_of(&b) {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn rho(n: &BigInt, c: u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r = 1u64;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut iters = 0u64;
    let m = 64u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (&q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += m;
            iters += m.min(r);
        }
        r *= 2;
        if iters > RHO_ITERATIONS {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_composite(n: &BigInt, out: &mut BTreeMap<BigInt, u32>) -> Result<()> {
    if is_probable_prime(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return Ok(());
    }
    for c in 1..=8u64 {
        if let Some(d) = rho(n, c) {
            split_composite(&d, out)?;
            split_composite(&(n / &d), out)?;
            return Ok(());
        }
    }
    Err(Error::FactorizationFailed(format!("rho gave up on {n}")))
}

/// Prime factorization of `|n|`, `n != 0`.
pub fn factor_integer(n: &BigInt) -> Result<BTreeMap<BigInt, u32>> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("cannot factor zero".into()));
    }
    let mut m = n.abs();
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        if m.is_multiple_of(&bp) {
            let mut e = 0;
            while m.is_multiple_of(&bp) {
                m /= &bp;
                e += 1;
            }
            out.insert(bp, e);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    if m.to_u64().is_some_and(|v| v < TRIAL_LIMIT * TRIAL_LIMIT) || is_probable_prime(&m) {
        *out.entry(m).or_insert(0) += 1;
        return Ok(out);
    }
    split_composite(&m, &mut out)?;
    Ok(out)
}

/// Factorization of a machine integer (used for group orders).
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u128) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_factorizations() {
        let f = factor_integer(&big(360)).unwrap();
        let v: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(v, vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factor_integer(&big(1)).unwrap().is_empty());
        assert_eq!(factor_integer(&BigInt::from(-9)).unwrap().len(), 1);
    }

    #[test]
    fn rho_splits_semiprime_beyond_trial_range() {
        // two primes above 10^6
        let p = big(1_000_003);
        let q = big(2_147_483_647);
        let n = &p * &q * &q;
        let f = factor_integer(&n).unwrap();
        assert_eq!(f.get(&p), Some(&1));
        assert_eq!(f.get(&q), Some(&2));
    }

    #[test]
    fn primality_of_mersenne_numbers() {
        assert!(is_probable_prime(&((BigInt::one() << 61) - 1)));
        assert!(!is_probable_prime(&((BigInt::one() << 67) - 1)));
        assert!(is_probable_prime(&((BigInt::one() << 127) - 1)));
    }

    #[test]
    fn machine_factor() {
        assert_eq!(factor_u64(15552), vec![(2, 6), (3, 5)]);
        assert_eq!(factor_u64(97), vec![(97, 1)]);
    }
}
