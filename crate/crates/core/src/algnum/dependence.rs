//! Multiplicative dependence of pairs of algebraic numbers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intfactor::factor_integer;
use super::number::{weil_height, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::interval::{ComplexBox, Interval};
use crate::linalg::Matrix;
use crate::poly::{cyclotomic_poly, euler_phi, power_resultant, product_resultant, Poly};

/// Exponents with `alpha^a1 * beta^a2 = 1`, not both zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DependenceWitness {
    pub a1: i64,
    pub a2: i64,
}

impl DependenceWitness {
    fn normalized(a1: i64, a2: i64) -> Self {
        if a1 < 0 || (a1 == 0 && a2 < 0) {
            DependenceWitness { a1: -a1, a2: -a2 }
        } else {
            DependenceWitness { a1, a2 }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    Dependent(DependenceWitness),
    /// No relation exists (`searched_bound: None`, proven) or none with
    /// height-ratio denominator up to the bound.
    Independent {
        searched_bound: Option<u32>,
    },
}

impl Dependence {
    pub fn witness(&self) -> Option<DependenceWitness> {
        match self {
            Dependence::Dependent(w) => Some(*w),
            Dependence::Independent { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DependenceConfig {
    /// Largest denominator tried when reconstructing the height ratio.
    pub bound: u32,
    pub start_precision: u32,
    pub max_precision: u32,
}

impl Default for DependenceConfig {
    fn default() -> Self {
        DependenceConfig {
            bound: 64,
            start_precision: 64,
            max_precision: 2048,
        }
    }
}

impl DependenceConfig {
    pub fn with_bound(bound: u32) -> Self {
        DependenceConfig {
            bound,
            ..Self::default()
        }
    }
}

pub fn mult_dependent(alpha: &AlgebraicNumber, beta: &AlgebraicNumber, bound: u32) -> Result<Dependence> {
    mult_dependent_with(alpha, beta, &DependenceConfig::with_bound(bound))
}

pub fn mult_dependent_with(
    alpha: &AlgebraicNumber,
    beta: &AlgebraicNumber,
    cfg: &DependenceConfig,
) -> Result<Dependence> {
    dependence_cached(alpha, beta, cfg, &mut HeightCache::default())
}

fn dependence_cached(
    alpha: &AlgebraicNumber,
    beta: &AlgebraicNumber,
    cfg: &DependenceConfig,
    heights: &mut HeightCache,
) -> Result<Dependence> {
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidArgument("dependence of zero".into()));
    }
    if let Some(n) = alpha.root_of_unity_order() {
        return Ok(Dependence::Dependent(DependenceWitness { a1: n as i64, a2: 0 }));
    }
    if let Some(n) = beta.root_of_unity_order() {
        return Ok(Dependence::Dependent(DependenceWitness { a1: 0, a2: n as i64 }));
    }
    if let (Some(a), Some(b)) = (alpha.as_rational(), beta.as_rational()) {
        match rational_dependence(&a, &b) {
            Ok(d) => return Ok(d),
            Err(Error::FactorizationFailed(_)) => {}
            Err(e) => return Err(e),
        }
    }
    general_dependence(alpha, beta, cfg, heights)
}

fn prime_exponents(x: &BigRational) -> Result<BTreeMap<BigInt, i64>> {
    let mut v = BTreeMap::new();
    for (p, e) in factor_integer(x.numer())? {
        *v.entry(p).or_insert(0) += e as i64;
    }
    for (p, e) in factor_integer(x.denom())? {
        *v.entry(p).or_insert(0) -= e as i64;
    }
    Ok(v)
}

/// Exact decision for nonzero rationals other than `+-1`.
fn rational_dependence(a: &BigRational, b: &BigRational) -> Result<Dependence> {
    let va = prime_exponents(a)?;
    let vb = prime_exponents(b)?;
    let primes: BTreeSet<&BigInt> = va.keys().chain(vb.keys()).collect();
    let get = |v: &BTreeMap<BigInt, i64>, p: &BigInt| v.get(p).copied().unwrap_or(0);
    // a1 va + a2 vb = 0 needs va, vb proportional: take the first prime
    // where va is nonzero.
    let Some(p0) = primes.iter().find(|p| get(&va, p) != 0) else {
        unreachable!("|a| = 1 is a root of unity");
    };
    let (x, y) = (get(&va, p0), get(&vb, p0));
    if y == 0 {
        return Ok(Dependence::Independent { searched_bound: None });
    }
    // a1 x + a2 y = 0 with (a1, a2) primitive
    let g = x.gcd(&y);
    let (mut a1, mut a2) = (y / g, -x / g);
    if primes.iter().any(|p| a1 * get(&va, p) + a2 * get(&vb, p) != 0) {
        return Ok(Dependence::Independent { searched_bound: None });
    }
    // sign: a^a1 b^a2 = +-1
    let neg = (a.is_negative() && a1 % 2 != 0) != (b.is_negative() && a2 % 2 != 0);
    if neg {
        a1 *= 2;
        a2 *= 2;
    }
    Ok(Dependence::Dependent(DependenceWitness::normalized(a1, a2)))
}

/// Fractions `s / t` inside `iv` with `1 <= t <= bound`, `s >= 1`, in lowest
/// terms; stops after two.
fn small_fractions(iv: &Interval, bound: u32) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for t in 1..=bound as i64 {
        let tq = BigRational::from_integer(t.into());
        let lo = (&iv.lo * &tq).ceil().to_integer();
        let hi = (&iv.hi * &tq).floor().to_integer();
        let lo = lo.max(BigInt::one());
        let mut s = lo;
        while s <= hi {
            let si = s.to_i64().unwrap_or(i64::MAX);
            if si.gcd(&t) == 1 && !out.contains(&(si, t)) {
                out.push((si, t));
                if out.len() > 1 {
                    return out;
                }
            }
            s += 1;
        }
    }
    out
}

/// Heights by minimal polynomial and precision; conjugates share them.
#[derive(Default)]
struct HeightCache {
    entries: Vec<(Poly<BigRational>, u32, Interval)>,
}

impl HeightCache {
    fn get(&mut self, x: &AlgebraicNumber, prec: u32) -> Interval {
        if let Some((_, _, h)) = self
            .entries
            .iter()
            .find(|(p, b, _)| *b == prec && p == x.minpoly())
        {
            return h.clone();
        }
        let h = weil_height(x, prec);
        self.entries.push((x.minpoly().clone(), prec, h.clone()));
        h
    }
}

fn general_dependence(
    alpha: &AlgebraicNumber,
    beta: &AlgebraicNumber,
    cfg: &DependenceConfig,
    heights: &mut HeightCache,
) -> Result<Dependence> {
    let mut prec = cfg.start_precision.max(32);
    loop {
        let ha = heights.get(alpha, prec);
        let hb = heights.get(beta, prec);
        if let Some(ratio) = ha.div(&hb) {
            let cands = small_fractions(&ratio, cfg.bound);
            match cands.as_slice() {
                [] => {
                    return Ok(Dependence::Independent {
                        searched_bound: Some(cfg.bound),
                    })
                }
                [(s, t)] => {
                    return Ok(match test_candidate(alpha, beta, *s, *t, cfg.max_precision)? {
                        Some(w) => Dependence::Dependent(w),
                        None => Dependence::Independent {
                            searched_bound: Some(cfg.bound),
                        },
                    })
                }
                _ => {}
            }
        }
        if prec >= cfg.max_precision {
            return Err(Error::PrecisionExhausted {
                bits: prec,
                context: "height ratio does not isolate a small fraction".into(),
            });
        }
        prec = (prec * 2).min(cfg.max_precision);
    }
}

/// Polynomial whose roots are the `e`-th powers of the roots of `p` (`e`
/// may be negative).
fn power_poly(p: &Poly<BigRational>, e: i64) -> Result<Poly<BigRational>> {
    let r = power_resultant(p, e.unsigned_abs() as u32)?;
    Ok(if e < 0 { r.reverse().monic() } else { r.monic() })
}

fn squarefree_part(p: &Poly<BigRational>) -> Poly<BigRational> {
    p.exact_quotient(&p.gcd(&p.derivative())).monic()
}

/// Is `alpha^t * beta^(sigma s)` a root of unity for one sign `sigma`? If
/// so, return the witness `(t T, sigma s T)` with `T` its order.
fn test_candidate(
    alpha: &AlgebraicNumber,
    beta: &AlgebraicNumber,
    s: i64,
    t: i64,
    max_bits: u32,
) -> Result<Option<DependenceWitness>> {
    let pa = power_poly(alpha.minpoly(), t)?;
    for sigma in [-1i64, 1] {
        let pb = power_poly(beta.minpoly(), sigma * s)?;
        let r = squarefree_part(&product_resultant(&pa, &pb)?);
        let deg = r.deg() as u64;
        let mut cyclo = Vec::new();
        let mut rest = r.clone();
        let limit = 2 * deg * deg + 1;
        for n in 1..=limit.max(2) {
            if euler_phi(n) > deg {
                continue;
            }
            let phi = cyclotomic_poly(n).to_rational();
            if phi.divides(&rest) {
                rest = rest.exact_quotient(&phi);
                cyclo.push((n, phi));
            }
        }
        if cyclo.is_empty() {
            continue;
        }
        // mu is a root of exactly one factor; narrow its enclosure until
        // every other factor is bounded away from zero on it
        let mut factors: Vec<(Option<u64>, Poly<BigRational>)> =
            cyclo.into_iter().map(|(n, phi)| (Some(n), phi)).collect();
        if rest.deg() > 0 {
            factors.push((None, rest));
        }
        let mut bits = 16u32;
        let order = loop {
            let mu = mu_enclosure(alpha, beta, t, sigma * s, bits)?;
            let alive: Vec<Option<u64>> = factors
                .iter()
                .filter(|(_, p)| mu.eval_poly(p.coeffs(), bits + 16).contains_zero())
                .map(|(n, _)| *n)
                .collect();
            if alive.len() == 1 {
                break alive[0];
            }
            if alive.is_empty() || bits >= max_bits * 2 {
                return Err(Error::PrecisionExhausted {
                    bits,
                    context: "could not identify the candidate product among the roots".into(),
                });
            }
            bits *= 2;
        };
        if let Some(order) = order {
            let o = order as i64;
            return Ok(Some(DependenceWitness::normalized(t * o, sigma * s * o)));
        }
    }
    Ok(None)
}

fn mu_enclosure(
    alpha: &AlgebraicNumber,
    beta: &AlgebraicNumber,
    ea: i64,
    eb: i64,
    bits: u32,
) -> Result<ComplexBox> {
    // extra input accuracy to absorb the growth from the powers
    let extra = 8 + (64 - (ea.unsigned_abs() + eb.unsigned_abs()).leading_zeros()) * 4;
    let work = bits + extra;
    let a = alpha.enclosure_bits(work);
    let b = beta.enclosure_bits(work);
    let pa = a.powi(ea, work + 16).ok_or_else(zero_enclosure)?;
    let pb = b.powi(eb, work + 16).ok_or_else(zero_enclosure)?;
    Ok(pa.mul(&pb))
}

fn zero_enclosure() -> Error {
    Error::PrecisionExhausted {
        bits: 0,
        context: "enclosure of a nonzero number contains zero".into(),
    }
}

/// Partition of a list of algebraic numbers into classes of pairwise
/// multiplicative dependence, with the witnesses found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependenceClasses {
    pub classes: Vec<Vec<usize>>,
    /// `(i, j, w)` with `nums[i]^a1 * nums[j]^a2 = 1`, `i < j`.
    pub witnesses: Vec<(usize, usize, DependenceWitness)>,
    /// `Some(bound)` if any pair was declared independent only up to the
    /// bound.
    pub searched_bound: Option<u32>,
}

impl DependenceClasses {
    pub fn class_of(&self, i: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&i))
            .expect("index in partition")
    }

    pub fn witness(&self, i: usize, j: usize) -> Option<DependenceWitness> {
        self.witnesses.iter().find_map(|&(a, b, w)| {
            if (a, b) == (i, j) {
                Some(w)
            } else if (a, b) == (j, i) {
                Some(DependenceWitness { a1: w.a2, a2: w.a1 })
            } else {
                None
            }
        })
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut j = i;
    while parent[j] != r {
        let next = parent[j];
        parent[j] = r;
        j = next;
    }
    r
}

const PRE_REFINE_BITS: u32 = 40;

pub fn dependence_classes(nums: &[AlgebraicNumber], bound: u32) -> Result<DependenceClasses> {
    dependence_classes_with(nums, &DependenceConfig::with_bound(bound))
}

pub fn dependence_classes_with(
    nums: &[AlgebraicNumber],
    cfg: &DependenceConfig,
) -> Result<DependenceClasses> {
    if let Some(z) = nums.iter().find(|a| a.root_of_unity_order().is_some()) {
        return Err(Error::InvalidArgument(format!(
            "root of unity {z} passed to dependence_classes"
        )));
    }
    // shrink the isolating regions once so later enclosures start small
    let nums: Vec<AlgebraicNumber> = nums
        .iter()
        .map(|x| {
            let mut x = x.clone();
            x.refine(PRE_REFINE_BITS);
            x
        })
        .collect();
    let mut heights = HeightCache::default();
    let n = nums.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut witnesses = Vec::new();
    let mut searched_bound = None;
    for i in 0..n {
        for j in i + 1..n {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            let d = if nums[i] == nums[j] {
                Dependence::Dependent(DependenceWitness { a1: 1, a2: -1 })
            } else {
                dependence_cached(&nums[i], &nums[j], cfg, &mut heights)?
            };
            match d {
                Dependence::Dependent(w) => {
                    witnesses.push((i, j, w));
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri.max(rj)] = ri.min(rj);
                }
                Dependence::Independent { searched_bound: b } => {
                    if b.is_some() {
                        searched_bound = b;
                    }
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort();
    Ok(DependenceClasses {
        classes,
        witnesses,
        searched_bound,
    })
}

/// Rank of the multiplicative group generated by nonzero rationals: the
/// rank of their prime-exponent vectors (signs are torsion).
pub fn torus_rank_rational(nums: &[BigRational]) -> Result<usize> {
    let mut vecs = Vec::with_capacity(nums.len());
    for x in nums {
        if x.is_zero() {
            return Err(Error::InvalidArgument("torus rank of zero".into()));
        }
        vecs.push(prime_exponents(x)?);
    }
    let primes: BTreeSet<BigInt> = vecs.iter().flat_map(|v| v.keys().cloned()).collect();
    if primes.is_empty() || vecs.is_empty() {
        return Ok(0);
    }
    let rows: Vec<Vec<BigInt>> = vecs
        .iter()
        .map(|v| {
            primes
                .iter()
                .map(|p| BigInt::from(v.get(p).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows)?.rank())
}

/// Torus rank for algebraic numbers that must all be rational.
pub fn torus_rank_of(nums: &[AlgebraicNumber]) -> Result<usize> {
    let qs = nums
        .iter()
        .map(|a| a.as_rational().ok_or_else(|| Error::NonRational(format!("{a}"))))
        .collect::<Result<Vec<_>>>()?;
    torus_rank_rational(&qs)
}
