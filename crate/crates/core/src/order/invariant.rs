use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::growth::{GrowthPoint, GrowthSeries};
use crate::algnum::{mult_dependent, AlgebraicNumber, Dependence};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::char_poly_generic;

/// `alpha_{n,k}` for `k = 1..=d`: with `M = A^n - I`,
/// `det(xI - M) = sum_k (-1)^k alpha_{n,k} x^(d-k)`.
pub fn alpha_invariants(a: &Matrix<BigInt>, n: u64) -> Result<Vec<BigInt>> {
    let d = a.require_square()?;
    let cp = char_poly_generic(&a.pow(n).sub_identity());
    Ok((1..=d)
        .map(|k| {
            let c = cp.coeff(d - k);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect())
}

fn factorial(d: usize) -> u64 {
    (1..=d as u64).product()
}

/// Least `n <= n_max` with `N | alpha_{n,k}^(d!/k)` for every `k`, or
/// `None` if there is none.
pub fn k_invariant(a: &Matrix<BigInt>, modulus: &BigInt, n_max: u64) -> Result<Option<u64>> {
    let d = a.require_square()?;
    if modulus < &BigInt::from(2) {
        return Err(Error::BadModulus(modulus.to_string()));
    }
    let df = factorial(d);
    let mut p = Matrix::identity(d);
    for n in 1..=n_max {
        p = &p * a;
        let cp = char_poly_generic(&p.sub_identity());
        let ok = (1..=d).all(|k| {
            let alpha = cp.coeff(d - k).abs();
            let e = BigInt::from(df / k as u64);
            alpha.modpow(&e, modulus).is_zero()
        });
        if ok {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn binomial(n: u64, j: u64) -> BigInt {
    if j > n {
        return BigInt::zero();
    }
    let mut b = BigInt::one();
    for i in 0..j {
        b = b * (n - i) / (i + 1);
    }
    b
}

/// `det C_{n,k}(eta)`: the minor of `B(eta)^n - I` on rows `1..=k` and
/// columns `2..=k+1`, where `B(eta)` is the Jordan block of order `k + 1`.
/// Entries of `B(eta)^n` are `C(n, j) eta^(n-j)` on the `j`-th superdiagonal.
pub fn lemma_minor(eta: &BigInt, k: usize, n: u64) -> BigInt {
    let mut m = Matrix::<BigInt>::zeros(k, k);
    for i in 0..k {
        for c in 0..k {
            let col = c + 1;
            m[(i, c)] = if col > i {
                let j = (col - i) as u64;
                if j > n {
                    BigInt::zero()
                } else {
                    binomial(n, j) * eta.pow((n - j) as u32)
                }
            } else if col == i {
                eta.pow(n as u32) - 1
            } else {
                BigInt::zero()
            };
        }
    }
    m.det()
}

/// Series of `gcd(lambda^n - 1, det C_{n,k}(eta))` for `n = 1..=n_max`.
pub fn lemma_gcd_check(lambda: &BigInt, eta: &BigInt, k: usize, n_max: u64) -> Result<GrowthSeries> {
    if lambda.abs() < BigInt::from(2) {
        return Err(Error::InvalidDependence(format!(
            "lambda = {lambda} is a root of unity or zero"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("block order k must be positive".into()));
    }
    if eta.is_zero() {
        return Err(Error::InvalidDependence("eta = 0".into()));
    }
    if !eta.abs().is_one() {
        let q = |x: &BigInt| AlgebraicNumber::from_rational(BigRational::from_integer(x.clone()));
        if let Dependence::Independent { .. } = mult_dependent(&q(lambda), &q(eta), 64)? {
            return Err(Error::InvalidDependence(format!(
                "{lambda} and {eta} are independent"
            )));
        }
    }
    let mut power = BigInt::one();
    let mut points = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        power *= lambda;
        let g = (&power - 1u32).gcd(&lemma_minor(eta, k, n));
        points.push(GrowthPoint::new(n, g));
    }
    Ok(GrowthSeries { points })
}
