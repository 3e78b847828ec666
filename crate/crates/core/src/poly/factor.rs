//! Factorization over `Q`: squarefree decomposition, factorization modulo a
//! small prime, quadratic Hensel lifting and Zassenhaus recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{is_prime_u64, FpPoly};
use super::poly::Poly;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: usize = 24;

/// `unit * prod f_i^{e_i}` with monic irreducible `f_i`, sorted by degree
/// then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: BigRational,
    pub factors: Vec<(Poly<BigRational>, u32)>,
}

impl FactoredPoly {
    pub fn expand(&self) -> Poly<BigRational> {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(f, e)| f.deg() * *e as usize).sum()
    }
}

pub fn factor_over_q(p: &Poly<BigRational>) -> Result<FactoredPoly> {
    factor_over_q_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_over_q_with_cap(p: &Poly<BigRational>, cap: usize) -> Result<FactoredPoly> {
    let Some(deg) = p.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if deg > cap {
        return Err(Error::DegreeCapExceeded { degree: deg, cap });
    }
    let unit = p.lc();
    let mut factors = Vec::new();
    for (i, part) in p.squarefree_decomposition().into_iter().enumerate() {
        if part.is_constant() {
            continue;
        }
        for g in factor_squarefree_z(&part.to_primitive_integer()) {
            factors.push((g.to_rational().monic(), i as u32 + 1));
        }
    }
    factors.sort_by(|(a, _), (b, _)| poly_order(a, b));
    Ok(FactoredPoly { unit, factors })
}

fn poly_order(a: &Poly<BigRational>, b: &Poly<BigRational>) -> std::cmp::Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive integer polynomial of positive degree.
pub fn factor_squarefree_z(f: &Poly<BigInt>) -> Vec<Poly<BigInt>> {
    let mut out = Vec::new();
    let mut f = f.primitive_part();
    // Pull out the factor x first; the rest has nonzero constant term.
    if f.coeff(0).is_zero() {
        out.push(Poly::x());
        f = Poly::new(f.coeffs()[1..].to_vec());
    }
    if f.deg() == 0 {
        return out;
    }
    if f.deg() == 1 {
        out.push(f);
        return out;
    }
    let Some((p, modular)) = choose_prime(&f) else {
        unreachable!("no good prime for a squarefree polynomial");
    };
    if modular.len() == 1 {
        out.push(f);
        return out;
    }
    let bound = coefficient_bound(&f);
    let mut modulus = BigInt::from(p);
    let mut steps = 0u32;
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = hensel_lift(&f, &modular, p, steps);
    out.extend(recombine(f, lifted, &modulus));
    out
}

/// Bound `B` such that every coefficient of `lc(f)/lc(g) * g` for a factor
/// `g | f` has absolute value at most `B / 2`.
fn coefficient_bound(f: &Poly<BigInt>) -> BigInt {
    let n = f.deg();
    BigInt::from(2) * f.lc().abs() * (BigInt::one() << n) * f.l1_norm()
}

/// Try the first few primes that keep `f` squarefree and its degree, and keep
/// the one giving the fewest modular factors.
fn choose_prime(f: &Poly<BigInt>) -> Option<(u64, Vec<FpPoly>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 6 && p < 10_000 {
        p += 1;
        if !is_prime_u64(p) {
            continue;
        }
        let bp = BigInt::from(p);
        if f.lc().is_multiple_of(&bp) {
            continue;
        }
        let fp = to_fp(f, p);
        if !fp.is_squarefree() {
            continue;
        }
        tried += 1;
        let facs = fp.monic().factor_squarefree(&mut rng);
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            let done = facs.len() == 1;
            best = Some((p, facs));
            if done {
                break;
            }
        }
    }
    best
}

fn to_fp(f: &Poly<BigInt>, p: u64) -> FpPoly {
    let bp = BigInt::from(p);
    FpPoly::new(
        p,
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().unwrap())
            .collect(),
    )
}

fn from_fp(f: &FpPoly) -> Poly<BigInt> {
    Poly::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

fn reduce(f: &Poly<BigInt>, m: &BigInt) -> Poly<BigInt> {
    f.map(|c| c.mod_floor(m))
}

fn symmetric(f: &Poly<BigInt>, m: &BigInt) -> Poly<BigInt> {
    let half = m >> 1;
    f.map(|c| {
        let r = c.mod_floor(m);
        if r > half {
            r - m
        } else {
            r
        }
    })
}

/// Division by a monic polynomial modulo `m`.
fn div_rem_monic(a: &Poly<BigInt>, b: &Poly<BigInt>, m: &BigInt) -> (Poly<BigInt>, Poly<BigInt>) {
    let a = reduce(a, m);
    let db = b.deg();
    let Some(da) = a.degree() else {
        return (Poly::zero(), Poly::zero());
    };
    if da < db {
        return (Poly::zero(), a);
    }
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.coeffs().iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * bi).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (Poly::new(q), Poly::new(r))
}

fn mul_mod(a: &Poly<BigInt>, b: &Poly<BigInt>, m: &BigInt) -> Poly<BigInt> {
    reduce(&(a * b), m)
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m`
/// (with `h` monic) to the same relations modulo `m^2`.
fn hensel_step(
    f: &Poly<BigInt>,
    g: &Poly<BigInt>,
    h: &Poly<BigInt>,
    s: &Poly<BigInt>,
    t: &Poly<BigInt>,
    m: &BigInt,
) -> [Poly<BigInt>; 4] {
    let m2 = m * m;
    let e = reduce(&(f - &(g * h)), &m2);
    let (q, r) = div_rem_monic(&mul_mod(s, &e, &m2), h, &m2);
    let g_new = reduce(&(&(g + &(t * &e)) + &(&q * g)), &m2);
    let h_new = reduce(&(h + &r), &m2);
    let b = reduce(&(&(&(s * &g_new) + &(t * &h_new)) - &Poly::one()), &m2);
    let (c, d) = div_rem_monic(&mul_mod(s, &b, &m2), &h_new, &m2);
    let s_new = reduce(&(s - &d), &m2);
    let t_new = reduce(&(&(t - &(t * &b)) - &(&c * &g_new)), &m2);
    [g_new, h_new, s_new, t_new]
}

/// Lift the monic modular factorization `f = lc(f) prod u_i (mod p)` to
/// modulus `p^(2^steps)` along a balanced factor tree.
fn hensel_lift(f: &Poly<BigInt>, factors: &[FpPoly], p: u64, steps: u32) -> Vec<Poly<BigInt>> {
    if factors.len() == 1 {
        let mut m = BigInt::from(p);
        for _ in 0..steps {
            m = &m * &m;
        }
        let lc_inv = f.lc().modinv(&m).expect("lc invertible mod p");
        return vec![reduce(&f.map(|c| c * &lc_inv), &m)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(p), |a, b| a.mul(b));
    let lc_p = to_fp(&Poly::constant(f.lc()), p).coeff(0);
    let g0 = prod(left).scale(lc_p);
    let h0 = prod(right);
    let (one, s0, t0) = g0.ext_gcd(&h0);
    debug_assert!(one.is_one());
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = BigInt::from(p);
    for _ in 0..steps {
        [g, h, s, t] = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = hensel_lift(&g, left, p, steps);
    out.extend(hensel_lift(&h, right, p, steps));
    out
}

/// Zassenhaus recombination of lifted monic factors modulo `m`.
fn recombine(mut f: Poly<BigInt>, mut u: Vec<Poly<BigInt>>, m: &BigInt) -> Vec<Poly<BigInt>> {
    let mut out = Vec::new();
    let mut k = 1;
    while 2 * k <= u.len() {
        let mut found = None;
        for subset in crate::linalg::combinations(u.len(), k) {
            let lc = f.lc();
            // cheap constant-term filter before the full product
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| (acc * u[i].coeff(0)).mod_floor(m));
            let c0 = symmetric(&Poly::constant(c0), m).coeff(0);
            if !c0.is_zero() && !(&lc * f.coeff(0)).is_multiple_of(&c0) {
                continue;
            }
            let g = subset
                .iter()
                .fold(Poly::constant(lc.clone()), |acc, &i| mul_mod(&acc, &u[i], m));
            let g = symmetric(&g, m).primitive_part();
            if let Some(q) = f.div_exact_z(&g) {
                found = Some((subset, g, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g);
                f = q.primitive_part();
                for &i in subset.iter().rev() {
                    u.remove(i);
                }
            }
            None => k += 1,
        }
    }
    if f.deg() > 0 {
        out.push(f);
    }
    out
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            while n.is_multiple_of(q) {
                n /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `n`-th cyclotomic polynomial, by exact division of `x^n - 1` by
/// `Phi_d` for the proper divisors `d`.
pub fn cyclotomic_poly(n: u64) -> Poly<BigInt> {
    assert!(n >= 1);
    let mut f = Poly::monomial(BigInt::one(), n as usize);
    f = &f - &Poly::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            f = f.div_exact_z(&cyclotomic_poly(d)).expect("cyclotomic division");
        }
    }
    f
}

/// `Some(n)` when `f` (irreducible, monic, integral) equals `Phi_n`.
pub fn is_cyclotomic(f: &Poly<BigRational>) -> Option<u64> {
    let fz = f.to_integer()?;
    if !f.is_monic() {
        return None;
    }
    let deg = fz.deg() as u64;
    if deg == 0 {
        return None;
    }
    // Cheap necessary conditions: |f(0)| = 1 and all roots of modulus 1
    // force a palindromic shape for deg >= 2.
    if deg >= 2 && !fz.coeff(0).is_one() {
        return None;
    }
    let limit = 2 * deg * deg + 1;
    (1..=limit)
        .filter(|&n| euler_phi(n) == deg)
        .find(|&n| cyclotomic_poly(n) == fz)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> Poly<BigInt> {
        Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn qp(c: &[i64]) -> Poly<BigRational> {
        zp(c).to_rational()
    }

    #[test]
    fn factor_small_examples() {
        let f = factor_over_q(&qp(&[6, -5, 1])).unwrap();
        assert_eq!(f.factors, vec![(qp(&[-3, 1]), 1), (qp(&[-2, 1]), 1)]);
        let g = factor_over_q(&qp(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            g.factors,
            vec![(qp(&[-1, 1]), 1), (qp(&[1, 1]), 1), (qp(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn factor_with_multiplicities() {
        let f = &(&(&qp(&[-2, 1]) * &qp(&[-3, 1]).pow(3)) * &qp(&[-9, 1]));
        let fac = factor_over_q(f).unwrap();
        let mults: Vec<u32> = fac.factors.iter().map(|(_, e)| *e).collect();
        assert_eq!(mults, vec![1, 3, 1]);
        assert_eq!(&fac.expand(), f);
    }

    #[test]
    fn swinnerton_dyer_style_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        let f = factor_over_q(&qp(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.factors.len(), 1);
        // x^4 + 1 likewise
        assert_eq!(factor_over_q(&qp(&[1, 0, 0, 0, 1])).unwrap().factors.len(), 1);
    }

    #[test]
    fn non_monic_and_rational_input() {
        // (2x - 1)(3x + 2)(x^2 + 1) / 5
        let f = (&(&zp(&[-1, 2]) * &zp(&[2, 3])) * &zp(&[1, 0, 1]))
            .to_rational()
            .scale(&BigRational::new(1.into(), 5.into()));
        let fac = factor_over_q(&f).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = Poly::monomial(BigRational::one(), 30);
        assert!(matches!(
            factor_over_q(&f),
            Err(Error::DegreeCapExceeded { degree: 30, cap: 24 })
        ));
        assert!(matches!(factor_over_q(&Poly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn cyclotomic_detection() {
        assert_eq!(is_cyclotomic(&qp(&[1, 1])), Some(2));
        assert_eq!(is_cyclotomic(&qp(&[-1, 1])), Some(1));
        assert_eq!(is_cyclotomic(&qp(&[1, 0, 1])), Some(4));
        assert_eq!(is_cyclotomic(&qp(&[1, 1, 1])), Some(3));
        assert_eq!(is_cyclotomic(&qp(&[1, -3, 1])), None);
        assert_eq!(is_cyclotomic(&qp(&[-1, -1, 1])), None);
        assert_eq!(cyclotomic_poly(12), zp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_values() {
        let v: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(v, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
