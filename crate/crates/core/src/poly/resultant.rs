//! Resultants over `Q`, plus the bivariate resultants that produce
//! polynomials vanishing at `alpha^t` and at `alpha * beta`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `Res(f, g)` by the Euclidean recursion
/// `Res(f, g) = (-1)^(mn) lc(g)^(m - deg r) Res(g, r)` with `r = f mod g`.
pub fn resultant(f: &Poly<BigRational>, g: &Poly<BigRational>) -> Result<BigRational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut f, mut g) = (f.clone(), g.clone());
    let mut acc = BigRational::one();
    loop {
        let (m, n) = (f.deg(), g.deg());
        if n == 0 {
            return Ok(acc * pow(&g.lc(), m));
        }
        if m == 0 {
            return Ok(acc * pow(&f.lc(), n));
        }
        let r = f.rem(&g);
        if r.is_zero() {
            return Ok(BigRational::zero());
        }
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow(&g.lc(), m - r.deg());
        f = g;
        g = r;
    }
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), size `m + n`.
pub fn sylvester_matrix(f: &Poly<BigRational>, g: &Poly<BigRational>) -> Matrix<BigRational> {
    let (m, n) = (f.deg(), g.deg());
    let size = m + n;
    let mut s = Matrix::zeros(size, size);
    for i in 0..n {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            s[(i, i + j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            s[(n + i, i + j)] = c.clone();
        }
    }
    s
}

/// Resultant as the Sylvester determinant; independent of [`resultant`].
pub fn sylvester_resultant(f: &Poly<BigRational>, g: &Poly<BigRational>) -> BigRational {
    let s = sylvester_matrix(f, g);
    if s.nrows() == 0 {
        return BigRational::one();
    }
    s.det()
}

/// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Poly<BigRational> {
    let n = points.len();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = num / den;
        }
    }
    let mut result = Poly::zero();
    for i in (0..n).rev() {
        result = &(&result * &Poly::linear_root(points[i].0.clone())) + &Poly::constant(dd[i].clone());
    }
    result
}

fn evaluate_and_interpolate<F>(degree: usize, mut at: F) -> Result<Poly<BigRational>>
where
    F: FnMut(&BigRational) -> Result<BigRational>,
{
    let mut pts = Vec::with_capacity(degree + 1);
    for i in 0..=degree {
        let x0 = BigRational::from_integer(BigInt::from(i));
        let y = at(&x0)?;
        pts.push((x0, y));
    }
    Ok(interpolate(&pts))
}

/// `Res_y(P(y), x - y^t) = lc(P)^t prod (x - alpha_i^t)`, a polynomial of
/// degree `deg P` whose roots are the `t`-th powers of the roots of `P`.
pub fn power_resultant(p: &Poly<BigRational>, t: u32) -> Result<Poly<BigRational>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(t >= 1);
    let yt = Poly::monomial(BigRational::one(), t as usize);
    evaluate_and_interpolate(p.deg(), |x0| {
        let q = &Poly::constant(x0.clone()) - &yt;
        resultant(p, &q)
    })
}

/// `Res_y(P(y), y^n Q(x / y))` with `n = deg Q`: up to a constant,
/// `prod_{i,j} (x - alpha_i beta_j)`, degree `deg P * deg Q`. Requires
/// `Q(0) != 0`.
pub fn product_resultant(p: &Poly<BigRational>, q: &Poly<BigRational>) -> Result<Poly<BigRational>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.coeff(0).is_zero() {
        return Err(Error::InvalidArgument("product resultant needs Q(0) != 0".into()));
    }
    let n = q.deg();
    evaluate_and_interpolate(p.deg() * n, |x0| {
        // y^n Q(x0 / y) = sum_j q_j x0^j y^(n - j)
        let mut coeffs = vec![BigRational::zero(); n + 1];
        let mut xp = BigRational::one();
        for j in 0..=n {
            coeffs[n - j] = q.coeff(j) * &xp;
            xp *= x0;
        }
        resultant(p, &Poly::new(coeffs))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::char_poly;

    fn qp(c: &[i64]) -> Poly<BigRational> {
        Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&qp(&[-5, 1]), &qp(&[-2, 1])).unwrap(), q(3));
        assert_eq!(resultant(&qp(&[-2, 0, 1]), &qp(&[-3, 0, 1])).unwrap(), q(1));
        let f = qp(&[1, 2, 3]);
        assert!(resultant(&f, &f).unwrap().is_zero());
        assert!(resultant(&Poly::zero(), &f).is_err());
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (qp(&[1, 2, 3]), qp(&[-1, 0, 4, 1])),
            (qp(&[5, 0, 0, 2]), qp(&[7, -1])),
            (qp(&[3]), qp(&[1, 1, 1])),
            (qp(&[-2, 0, 1]), qp(&[-3, 0, 1])),
            (qp(&[2, -3, 0, 1, 5]), qp(&[1, 1, -2])),
        ];
        for (f, g) in cases {
            assert_eq!(
                resultant(&f, &g).unwrap(),
                sylvester_resultant(&f, &g),
                "{f:?} {g:?}"
            );
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = qp(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (q(i), p.eval(&q(i)))).collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn power_resultant_matches_companion_power() {
        // roots of x^2 - 2x - 1 are 1 +- sqrt 2; squares satisfy x^2 - 6x + 1
        let p = qp(&[-1, -2, 1]);
        assert_eq!(power_resultant(&p, 2).unwrap(), qp(&[1, -6, 1]));
        // oracle: charpoly of C^t for a cubic
        let f = qp(&[2, -1, 0, 1]);
        let c = crate::linalg::Matrix::<BigInt>::companion(&[2.into(), (-1).into(), 0.into()]);
        for t in 1..5u32 {
            assert_eq!(power_resultant(&f, t).unwrap(), char_poly(&c.pow(t as u64)));
        }
    }

    #[test]
    fn product_resultant_matches_kronecker() {
        let f = qp(&[-2, 0, 1]);
        let g = qp(&[-3, 0, 1]);
        let r = product_resultant(&f, &g).unwrap();
        let cf = crate::linalg::Matrix::<BigInt>::companion(&[(-2).into(), 0.into()]);
        let cg = crate::linalg::Matrix::<BigInt>::companion(&[(-3).into(), 0.into()]);
        assert_eq!(r.monic(), char_poly(&cf.kronecker(&cg)));
    }
}
