use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::curve::{point_count_naive, EllipticCurve};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::order::{GrowthPoint, GrowthSeries};

/// Frobenius traces `t_n` over `F_{q^n}` from `t_0 = 2`, `t_1 = t`,
/// `t_n = t t_{n-1} - q t_{n-2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceSequence {
    pub t: i64,
    pub q: u64,
}

impl TraceSequence {
    pub fn new(t: i64, q: u64) -> Self {
        TraceSequence { t, q }
    }

    pub fn of_curve(e: &EllipticCurve) -> Result<Self> {
        Ok(TraceSequence::new(trace(e)?, e.q()))
    }

    /// `t_0, ..., t_n_max`.
    pub fn values(&self, n_max: u64) -> Vec<BigInt> {
        let t = BigInt::from(self.t);
        let q = BigInt::from(self.q);
        let mut v = vec![BigInt::from(2), t.clone()];
        while (v.len() as u64) <= n_max {
            let k = v.len();
            let next = &t * &v[k - 1] - &q * &v[k - 2];
            v.push(next);
        }
        v.truncate(n_max as usize + 1);
        v
    }

    pub fn trace_power(&self, n: u64) -> BigInt {
        self.values(n).pop().expect("nonempty")
    }

    /// `#E(F_{q^n}) = q^n + 1 - t_n`.
    pub fn card_extension(&self, n: u64) -> BigInt {
        BigInt::from(self.q).pow(n as u32) + 1 - self.trace_power(n)
    }

    /// `#E(F_{q^n})` for `n = 1..=n_max`.
    pub fn cards(&self, n_max: u64) -> Vec<BigInt> {
        let t = self.values(n_max);
        let q = BigInt::from(self.q);
        let mut qn = BigInt::one();
        (1..=n_max as usize)
            .map(|n| {
                qn *= &q;
                &qn + 1 - &t[n]
            })
            .collect()
    }
}

pub fn trace_power(ts: &TraceSequence, n: u64) -> BigInt {
    ts.trace_power(n)
}

pub fn card_extension(ts: &TraceSequence, n: u64) -> BigInt {
    ts.card_extension(n)
}

/// `q + 1 - #E(F_q)` from a naive count.
pub fn trace(e: &EllipticCurve) -> Result<i64> {
    Ok(e.q() as i64 + 1 - point_count_naive(e)? as i64)
}

/// Ordinary iff the trace is prime to `p`.
pub fn is_ordinary(e: &EllipticCurve) -> Result<bool> {
    Ok(trace(e)?.gcd(&(e.field().p() as i64)) == 1)
}

fn same_field(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<()> {
    if e1.field() != e2.field() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// Isogenous over the base field iff the point counts agree.
pub fn is_isogenous(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<bool> {
    same_field(e1, e2)?;
    Ok(trace(e1)? == trace(e2)?)
}

/// Extension degrees checked for isogeny over the algebraic closure.
pub const CLOSURE_EXPONENTS: [u64; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

/// Least exponent `a` in [`CLOSURE_EXPONENTS`] with equal traces over
/// `F_{q^a}`.
pub fn closure_exponent(ts1: &TraceSequence, ts2: &TraceSequence) -> Option<u64> {
    CLOSURE_EXPONENTS
        .into_iter()
        .find(|&a| ts1.trace_power(a) == ts2.trace_power(a))
}

pub fn is_isogenous_closure(e1: &EllipticCurve, e2: &EllipticCurve) -> Result<Option<u64>> {
    same_field(e1, e2)?;
    Ok(closure_exponent(
        &TraceSequence::of_curve(e1)?,
        &TraceSequence::of_curve(e2)?,
    ))
}

/// `log gcd(#E1(F_{q^n}), #E2(F_{q^n}))` for `n = 1..=n_max`.
pub fn gcd_orders_experiment(ts1: &TraceSequence, ts2: &TraceSequence, n_max: u64) -> Result<GrowthSeries> {
    if ts1.q != ts2.q {
        return Err(Error::FieldMismatch);
    }
    let c1 = ts1.cards(n_max);
    let c2 = ts2.cards(n_max);
    Ok(GrowthSeries {
        points: c1
            .iter()
            .zip(&c2)
            .enumerate()
            .map(|(i, (a, b))| GrowthPoint::new(i as u64 + 1, a.gcd(b)))
            .collect(),
    })
}

/// Companion matrix `[[0, -q], [1, t]]` of `x^2 - t x + q`.
pub fn frobenius_matrix(ts: &TraceSequence) -> Matrix<BigInt> {
    Matrix::companion(&[BigInt::from(ts.q), BigInt::from(-ts.t)])
}

/// Block-diagonal Frobenius of a pair of curves.
pub fn frobenius_pair_matrix(ts1: &TraceSequence, ts2: &TraceSequence) -> Matrix<BigInt> {
    Matrix::block_diagonal(&[frobenius_matrix(ts1), frobenius_matrix(ts2)])
}

/// Hasse bound `t^2 <= 4 q` in exact integers.
pub fn satisfies_hasse(t: &BigInt, q: &BigInt) -> bool {
    t.abs().pow(2) <= q * 4u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_examples() {
        let ts = TraceSequence::new(-3, 5);
        assert_eq!(ts.trace_power(0), BigInt::from(2));
        assert_eq!(ts.trace_power(1), BigInt::from(-3));
        assert_eq!(ts.trace_power(2), BigInt::from(-1));
        assert_eq!(ts.card_extension(2), BigInt::from(27));
        assert_eq!(ts.card_extension(6), BigInt::from(15552));
        assert_eq!(ts.cards(6)[5], BigInt::from(15552));
    }

    #[test]
    fn traces_and_ordinarity() {
        let e = EllipticCurve::from_ints(5, 1, 1, 1).unwrap();
        assert_eq!(trace(&e).unwrap(), -3);
        assert!(is_ordinary(&e).unwrap());
        let s = EllipticCurve::from_ints(5, 1, 0, 2).unwrap();
        assert_eq!(trace(&s).unwrap(), 0);
        assert!(!is_ordinary(&s).unwrap());
        let tw = e.quadratic_twist().unwrap();
        assert_eq!(trace(&tw).unwrap(), 3);
        assert!(is_ordinary(&tw).unwrap());
    }

    #[test]
    fn isogeny_tests() {
        let e = EllipticCurve::from_ints(5, 1, 1, 1).unwrap();
        let tw = e.quadratic_twist().unwrap();
        let s = EllipticCurve::from_ints(5, 1, 0, 2).unwrap();
        assert!(is_isogenous(&e, &e).unwrap());
        assert_eq!(is_isogenous_closure(&e, &e).unwrap(), Some(1));
        assert!(!is_isogenous(&e, &tw).unwrap());
        assert_eq!(is_isogenous_closure(&e, &tw).unwrap(), Some(2));
        assert!(!is_isogenous(&e, &s).unwrap());
        assert_eq!(is_isogenous_closure(&e, &s).unwrap(), None);
        let other = EllipticCurve::from_ints(7, 1, 1, 1).unwrap();
        assert_eq!(is_isogenous(&e, &other), Err(Error::FieldMismatch));
    }

    #[test]
    fn frobenius_companion() {
        let m = frobenius_matrix(&TraceSequence::new(-3, 5));
        let expect = Matrix::from_rows(vec![
            vec![BigInt::from(0), BigInt::from(-5)],
            vec![BigInt::from(1), BigInt::from(-3)],
        ])
        .unwrap();
        assert_eq!(m, expect);
        assert_eq!(
            frobenius_pair_matrix(&TraceSequence::new(-3, 5), &TraceSequence::new(1, 5)).dim(),
            4
        );
    }

    #[test]
    fn gcd_of_equal_curves() {
        let ts = TraceSequence::new(-3, 5);
        let s = gcd_orders_experiment(&ts, &ts, 10).unwrap();
        for (p, c) in s.points.iter().zip(ts.cards(10)) {
            assert_eq!(p.gcd, c);
        }
    }
}
