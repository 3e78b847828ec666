use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::curve::{ECPoint, EllipticCurve};
use super::trace::TraceSequence;
use crate::algnum::intfactor::factor_u64;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureMode {
    /// Every point enumerated.
    Exhaustive,
    /// Random points until an element of order `l` certifies the split.
    Sampled,
    /// Only `m | gcd(card, q^n - 1, t_n - 2)` is known: `m` is an upper
    /// bound and `l` a lower bound.
    UpperBound,
}

/// `E(F_{q^n}) = Z/m x Z/l` with `m | l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupStructure {
    pub m: u64,
    pub l: u64,
    pub card: u64,
    pub mode: StructureMode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureConfig {
    /// Largest `q^n` enumerated exhaustively.
    pub exhaustive_limit: u64,
    /// Largest `q^n` handled by point sampling.
    pub sampling_limit: u64,
    pub seed: u64,
    pub max_samples: usize,
    /// Extra samples that must leave the exponent unchanged after the
    /// divisibility conditions first hold.
    pub confirm_samples: usize,
}

impl Default for StructureConfig {
    fn default() -> Self {
        StructureConfig {
            exhaustive_limit: 100_000,
            sampling_limit: 10_000_000,
            seed: 0,
            max_samples: 400,
            confirm_samples: 24,
        }
    }
}

/// Order of `pt` in a group of order `card` with the given factorization.
pub fn point_order(e: &EllipticCurve, pt: &ECPoint, card: u64, factors: &[(u64, u32)]) -> u64 {
    let mut order = card;
    for &(p, k) in factors {
        for _ in 0..k {
            if e.mul_unchecked(pt, order / p).is_infinity() {
                order /= p;
            } else {
                break;
            }
        }
    }
    order
}

pub fn random_point<R: Rng>(e: &EllipticCurve, rng: &mut R) -> ECPoint {
    let f = e.field();
    loop {
        let x = f.from_index(rng.gen_range(0..f.q()));
        if let Some(y) = f.sqrt(&e.rhs(&x)) {
            let y = if rng.gen_bool(0.5) { f.neg(&y) } else { y };
            return ECPoint::Affine(x, y);
        }
    }
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Budget(format!("group order {x} exceeds u64")))
}

fn upper_bound(card: &BigInt, qn: &BigInt, tn: &BigInt) -> Result<GroupStructure> {
    let g = card.gcd(&(qn - 1u32)).gcd(&(tn - 2u32).abs());
    let card = to_u64(card)?;
    let m = to_u64(&g)?;
    Ok(GroupStructure {
        m,
        l: card / m,
        card,
        mode: StructureMode::UpperBound,
    })
}

/// Structure of `E(F_{q^n})`.
pub fn group_structure(e: &EllipticCurve, n: u32) -> Result<GroupStructure> {
    group_structure_with(e, n, &StructureConfig::default())
}

pub fn group_structure_with(e: &EllipticCurve, n: u32, cfg: &StructureConfig) -> Result<GroupStructure> {
    if n == 0 {
        return Err(Error::InvalidArgument("extension degree must be positive".into()));
    }
    let ts = TraceSequence::of_curve(e)?;
    let card_big = ts.card_extension(n as u64);
    let qn_big = BigInt::from(e.q()).pow(n);
    let tn = ts.trace_power(n as u64);
    let qn = match qn_big.to_u64() {
        Some(v) if v <= cfg.sampling_limit => v,
        _ => return upper_bound(&card_big, &qn_big, &tn),
    };
    let card = to_u64(&card_big)?;
    let factors = factor_u64(card);
    let en = e.base_change(n)?;
    let certified = |l: u64| {
        let m = card / l;
        l.is_multiple_of(m) && (qn - 1) % m == 0
    };
    if qn <= cfg.exhaustive_limit {
        let pts = en.points();
        if pts.len() as u64 != card {
            return Err(Error::InvalidCurve(format!(
                "enumerated {} points but the trace recurrence gives {card}",
                pts.len()
            )));
        }
        let mut l = 1u64;
        for pt in &pts {
            if !en.mul_unchecked(pt, l).is_infinity() {
                l = l.lcm(&point_order(&en, pt, card, &factors));
            }
        }
        return Ok(GroupStructure {
            m: card / l,
            l,
            card,
            mode: StructureMode::Exhaustive,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut l = 1u64;
    let mut stable = 0usize;
    for _ in 0..cfg.max_samples {
        let pt = random_point(&en, &mut rng);
        let before = l;
        if !en.mul_unchecked(&pt, l).is_infinity() {
            l = l.lcm(&point_order(&en, &pt, card, &factors));
        }
        if l != before || !certified(l) {
            stable = 0;
            continue;
        }
        stable += 1;
        if stable >= cfg.confirm_samples {
            return Ok(GroupStructure {
                m: card / l,
                l,
                card,
                mode: StructureMode::Sampled,
            });
        }
    }
    upper_bound(&card_big, &qn_big, &tn)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentPoint {
    pub n: u32,
    pub structure: GroupStructure,
    /// `log l / (n log q)`.
    pub ratio: f64,
}

pub fn exponent_ratio(l: u64, n: u32, q: u64) -> f64 {
    (l as f64).ln() / (n as f64 * (q as f64).ln())
}

/// `log l(q^n) / (n log q)` for `n = 1..=n_max`.
pub fn exponent_growth_experiment(
    e: &EllipticCurve,
    n_max: u32,
    cfg: &StructureConfig,
) -> Result<Vec<ExponentPoint>> {
    (1..=n_max)
        .map(|n| {
            let s = group_structure_with(e, n, cfg)?;
            Ok(ExponentPoint {
                n,
                structure: s,
                ratio: exponent_ratio(s.l, n, e.q()),
            })
        })
        .collect()
}
