//! Exact root isolation for squarefree rational polynomials.
//!
//! Real roots are separated with Sturm sequences. Non-real roots are counted
//! in rectangles by the argument principle: along each edge the value
//! `c * P(z(s)) = U(s) + i V(s)` is tracked through the Cauchy index of
//! `U / V`, computed from a Sturm sequence, where `c = 1 + k i` is a rotation
//! chosen so that no corner value lies on an axis. Everything is rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::interval::{ComplexBox, Interval};
use crate::poly::Poly;

type Q = BigRational;
type QPoly = Poly<BigRational>;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn qr(a: i64, b: i64) -> Q {
    Q::new(a.into(), b.into())
}

/// Cut positions tried in turn when a split line meets a root.
const CUTS: [(i64, i64); 8] = [
    (1, 2),
    (31, 58),  // 1/2 + 1/29
    (29, 62),  // 1/2 - 1/31
    (39, 74),  // 1/2 + 1/37
    (39, 82),  // 1/2 - 1/41
    (45, 86),  // 1/2 + 1/43
    (45, 94),  // 1/2 - 1/47
    (55, 106), // 1/2 + 1/53
];

fn cut_point(a: &Q, b: &Q, idx: usize) -> Q {
    let (n, d) = CUTS[idx % CUTS.len()];
    let f = if idx < CUTS.len() {
        qr(n, d)
    } else {
        // fall back to a deterministic sequence of distinct fractions
        qr(1, 2) + qr(1, 59 + 2 * idx as i64)
    };
    a + (b - a) * f
}

pub fn sturm_sequence(p0: &QPoly, p1: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p0.clone(), p1.clone()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign_variations(values: impl Iterator<Item = Q>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for v in values {
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[QPoly], x: &Q) -> usize {
    sign_variations(seq.iter().map(|p| p.eval(x)))
}

/// Number of distinct real roots of `p` in `(a, b]`, for `p(a) != 0`.
pub fn count_real_roots(p: &QPoly, a: &Q, b: &Q) -> usize {
    let seq = sturm_sequence(p, &p.derivative());
    variations_at(&seq, a).saturating_sub(variations_at(&seq, b))
}

/// Power of two strictly above every root modulus (Cauchy bound).
pub fn root_bound(p: &QPoly) -> Q {
    let lc = p.lc().abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.deg())
        .map(|c| c.abs() / &lc)
        .fold(Q::zero(), |a, b| a.max(b));
    let b = m + Q::one();
    let mut r = Q::one();
    while r <= b {
        r *= q(2);
    }
    r
}

/// Isolating intervals for the real roots of squarefree `p`, ascending.
/// Endpoints are never roots.
pub fn isolate_real_roots(p: &QPoly) -> Vec<Interval> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(p, &p.derivative());
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = variations_at(&seq, &lo) - variations_at(&seq, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(Interval::new(lo, hi));
            continue;
        }
        let mid = (0..)
            .map(|i| cut_point(&lo, &hi, i))
            .find(|m| !p.eval(m).is_zero())
            .unwrap();
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Shrink an isolating interval of a real root below `width` by bisection.
pub fn refine_real_root(p: &QPoly, iv: &Interval, width: &Q) -> Interval {
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    if lo == hi {
        return iv.clone();
    }
    let slo = p.eval(&lo).is_positive();
    while &(&hi - &lo) >= width {
        let mid = (0..)
            .map(|i| cut_point(&lo, &hi, i))
            .find(|m| !p.eval(m).is_zero());
        let Some(mid) = mid else { unreachable!() };
        if p.eval(&mid).is_positive() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

/// `P(a + d s)` as real and imaginary parts in `Q[s]`.
fn along_edge(p: &QPoly, a: (&Q, &Q), d: (&Q, &Q)) -> (QPoly, QPoly) {
    let lre = Poly::new(vec![a.0.clone(), d.0.clone()]);
    let lim = Poly::new(vec![a.1.clone(), d.1.clone()]);
    let mut re = QPoly::zero();
    let mut im = QPoly::zero();
    for c in p.coeffs().iter().rev() {
        let nre = &(&re * &lre) - &(&im * &lim);
        let nim = &(&re * &lim) + &(&im * &lre);
        re = &nre + &Poly::constant(c.clone());
        im = nim;
    }
    (re, im)
}

fn eval_complex(p: &QPoly, re: &Q, im: &Q) -> (Q, Q) {
    let (mut a, mut b) = (Q::zero(), Q::zero());
    for c in p.coeffs().iter().rev() {
        let na = &a * re - &b * im + c;
        let nb = &a * im + &b * re;
        a = na;
        b = nb;
    }
    (a, b)
}

fn has_root_in_unit_interval(g: &QPoly) -> bool {
    if g.deg() == 0 {
        return false;
    }
    let (zero, one) = (Q::zero(), Q::one());
    if g.eval(&zero).is_zero() || g.eval(&one).is_zero() {
        return true;
    }
    count_real_roots(g, &zero, &one) > 0
}

/// Number of roots of `p` inside the closed rectangle, or `None` if a root
/// lies on its boundary.
pub fn count_in_box(p: &QPoly, b: &ComplexBox) -> Option<usize> {
    let (x0, x1, y0, y1) = (&b.re.lo, &b.re.hi, &b.im.lo, &b.im.hi);
    let corners = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    let mut edges = Vec::with_capacity(4);
    for i in 0..4 {
        let (a, e) = (corners[i], corners[(i + 1) % 4]);
        let d = (e.0 - a.0, e.1 - a.1);
        let (u, v) = along_edge(p, a, (&d.0, &d.1));
        if has_root_in_unit_interval(&u.gcd(&v)) {
            return None;
        }
        edges.push((u, v));
    }
    let values: Vec<(Q, Q)> = corners.iter().map(|(x, y)| eval_complex(p, x, y)).collect();
    let k = (1i64..)
        .map(q)
        .find(|k| {
            values
                .iter()
                .all(|(u, v)| !(u - k * v).is_zero() && !(k * u + v).is_zero())
        })
        .unwrap();
    let mut total: i64 = 0;
    for (u, v) in &edges {
        let ur = u - &v.scale(&k);
        let vr = &u.scale(&k) + v;
        let seq = sturm_sequence(&vr, &ur);
        total += variations_at(&seq, &Q::zero()) as i64 - variations_at(&seq, &Q::one()) as i64;
    }
    debug_assert!(total >= 0 && total % 2 == 0, "odd winding sum {total}");
    Some((total / 2) as usize)
}

fn split(b: &ComplexBox, idx: usize) -> (ComplexBox, ComplexBox) {
    if b.re.width() >= b.im.width() {
        let c = cut_point(&b.re.lo, &b.re.hi, idx);
        (
            ComplexBox::new(Interval::new(b.re.lo.clone(), c.clone()), b.im.clone()),
            ComplexBox::new(Interval::new(c, b.re.hi.clone()), b.im.clone()),
        )
    } else {
        let c = cut_point(&b.im.lo, &b.im.hi, idx);
        (
            ComplexBox::new(b.re.clone(), Interval::new(b.im.lo.clone(), c.clone())),
            ComplexBox::new(b.re.clone(), Interval::new(c, b.im.hi.clone())),
        )
    }
}

/// Isolating boxes for the roots of squarefree `p` with positive imaginary
/// part, sorted by real then imaginary lower corner.
pub fn isolate_upper_roots(p: &QPoly, expected: usize) -> Vec<ComplexBox> {
    if expected == 0 {
        return Vec::new();
    }
    let b = root_bound(p);
    let re = Interval::new(-&b - qr(1, 7), &b + qr(1, 5));
    let top = &b + qr(1, 3);
    let mut y0 = qr(1, 8);
    let mut attempt = 0usize;
    let start = loop {
        let bx = ComplexBox::new(re.clone(), Interval::new(y0.clone(), top.clone()));
        match count_in_box(p, &bx) {
            Some(n) if n == expected => break bx,
            Some(_) => y0 /= q(16),
            None => {
                attempt += 1;
                y0 = &y0 * qr(29, 31 + attempt as i64);
            }
        }
    };
    let mut out = Vec::new();
    let mut work = vec![(start, expected)];
    while let Some((bx, n)) = work.pop() {
        if n == 1 {
            out.push(bx);
            continue;
        }
        for idx in 0.. {
            let (l, r) = split(&bx, idx);
            if let (Some(a), Some(c)) = (count_in_box(p, &l), count_in_box(p, &r)) {
                debug_assert_eq!(a + c, n);
                if a > 0 {
                    work.push((l, a));
                }
                if c > 0 {
                    work.push((r, c));
                }
                break;
            }
        }
    }
    out.sort_by(|a, b| (&a.re.lo, &a.im.lo).cmp(&(&b.re.lo, &b.im.lo)));
    out
}

/// Nearest multiple of `2^-bits`.
fn round_dyadic(x: &Q, bits: u32) -> Q {
    let scale = BigInt::one() << bits;
    Q::new((x * &scale).round().to_integer(), scale)
}

/// Bits `k` with `2^-k <= w`, i.e. roughly `-log2 w`.
fn bits_below(w: &Q) -> u32 {
    if w.is_zero() {
        return u32::MAX;
    }
    let bits = |x: &BigInt| x.bits() as i64;
    (bits(w.denom()) - bits(w.numer()) - 1).max(0) as u32
}

fn intersect(a: &Interval, b: &Interval) -> Option<Interval> {
    let lo = a.lo.clone().max(b.lo.clone());
    let hi = a.hi.clone().min(b.hi.clone());
    (lo < hi).then(|| Interval::new(lo, hi))
}

/// One Newton step from the centre of `bx` followed by a box of roughly
/// squared width around the iterate, kept if it still holds the root.
fn newton_step(p: &QPoly, dp: &QPoly, bx: &ComplexBox, width: &Q) -> Option<ComplexBox> {
    let k = bits_below(&bx.width());
    let target = bits_below(width) + 2;
    let want = (2 * k).saturating_sub(4).min(target).max(k + 1);
    let prec = want + 8;
    let (x, y) = (bx.re.mid(), bx.im.mid());
    let (pr, pi) = eval_complex(p, &x, &y);
    let (dr, di) = eval_complex(dp, &x, &y);
    let n2 = &dr * &dr + &di * &di;
    if n2.is_zero() {
        return None;
    }
    // p / p' = p * conj(p') / |p'|^2
    let qr_ = (&pr * &dr + &pi * &di) / &n2;
    let qi_ = (&pi * &dr - &pr * &di) / &n2;
    let zx = round_dyadic(&(&x - qr_), prec);
    let zy = round_dyadic(&(&y - qi_), prec);
    let h = pow2_neg(want + 1);
    let re = intersect(&Interval::new(&zx - &h, &zx + &h), &bx.re)?;
    let im = intersect(&Interval::new(&zy - &h, &zy + &h), &bx.im)?;
    let cand = ComplexBox::new(re, im);
    (count_in_box(p, &cand) == Some(1)).then_some(cand)
}

/// Shrink a box holding exactly one root until both sides are below `width`.
/// Newton steps are certified by a root count; bisection is the fallback.
pub fn refine_complex_root(p: &QPoly, bx: &ComplexBox, width: &Q) -> ComplexBox {
    let mut bx = bx.clone();
    let dp = p.derivative();
    while &bx.width() >= width {
        if let Some(nb) = newton_step(p, &dp, &bx, width) {
            if nb.width() < bx.width() {
                bx = nb;
                continue;
            }
        }
        for idx in 0.. {
            let (l, r) = split(&bx, idx);
            match count_in_box(p, &l) {
                Some(1) => {
                    bx = l;
                    break;
                }
                Some(0) => {
                    bx = r;
                    break;
                }
                _ => continue,
            }
        }
    }
    bx
}

/// Isolation data for one root of a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootBox {
    /// Exactly known rational root.
    Exact(Q),
    /// Real root in an open interval whose endpoints are not roots.
    Real(Interval),
    /// Non-real root, alone in the closed rectangle.
    Complex(ComplexBox),
}

impl RootBox {
    pub fn enclosure(&self) -> ComplexBox {
        match self {
            RootBox::Exact(x) => ComplexBox::real_point(x.clone()),
            RootBox::Real(iv) => ComplexBox::new(iv.clone(), Interval::zero()),
            RootBox::Complex(b) => b.clone(),
        }
    }

    pub fn width(&self) -> Q {
        self.enclosure().width()
    }

    pub fn refine(&self, p: &QPoly, width: &Q) -> RootBox {
        match self {
            RootBox::Exact(_) => self.clone(),
            RootBox::Real(iv) => RootBox::Real(refine_real_root(p, iv, width)),
            RootBox::Complex(b) => RootBox::Complex(refine_complex_root(p, b, width)),
        }
    }
}

/// All roots of a squarefree polynomial: real ones ascending, then each
/// upper-half-plane root followed by its conjugate.
pub fn isolate_roots(p: &QPoly) -> Vec<RootBox> {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let d = p.deg();
    if d == 0 {
        return Vec::new();
    }
    if d == 1 {
        return vec![RootBox::Exact(-p.coeff(0) / p.coeff(1))];
    }
    let real = isolate_real_roots(p);
    let nonreal = d - real.len();
    let mut out: Vec<RootBox> = real.into_iter().map(RootBox::Real).collect();
    for b in isolate_upper_roots(p, nonreal / 2) {
        let c = b.conj();
        out.push(RootBox::Complex(b));
        out.push(RootBox::Complex(ComplexBox::new(c.re, c.im)));
    }
    out
}

/// Point `2^-bits` as a rational.
pub fn pow2_neg(bits: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QPoly {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    fn boxed(b: &ComplexBox, re: f64, im: f64) -> bool {
        let (a, c) = b.re.to_f64();
        let (e, f) = b.im.to_f64();
        a - 1e-12 <= re && re <= c + 1e-12 && e - 1e-12 <= im && im <= f + 1e-12
    }

    #[test]
    fn real_roots_of_cubic() {
        // (x - 1)(x + 2)(x - 5/2) cleared: 2x^3 - 3x^2 - 9x + 10... use x^3 - 3x + 1
        let p = qp(&[1, -3, 0, 1]);
        let r = isolate_real_roots(&p);
        assert_eq!(r.len(), 3);
        let w = pow2_neg(40);
        let expect = [-1.879385241571817, 0.347296355333861, 1.532088886237956];
        for (iv, e) in r.iter().zip(expect) {
            let fine = refine_real_root(&p, iv, &w);
            let (a, b) = fine.to_f64();
            assert!(a - 1e-12 <= e && e <= b + 1e-12);
        }
    }

    #[test]
    fn count_in_box_for_i() {
        let p = qp(&[1, 0, 1]);
        let around_i = ComplexBox::new(
            Interval::new(qr(-1, 3), qr(1, 2)),
            Interval::new(qr(1, 2), qr(3, 2)),
        );
        assert_eq!(count_in_box(&p, &around_i), Some(1));
        let big = ComplexBox::new(Interval::new(q(-2), q(3)), Interval::new(q(-3), q(2)));
        assert_eq!(count_in_box(&p, &big), Some(2));
        let on_edge = ComplexBox::new(Interval::new(q(0), q(1)), Interval::new(q(0), q(2)));
        assert_eq!(count_in_box(&p, &on_edge), None);
    }

    #[test]
    fn complex_roots_of_unity_and_beyond() {
        // x^4 + x^3 + x^2 + x + 1: four primitive fifth roots of unity
        let p = qp(&[1, 1, 1, 1, 1]);
        let roots = isolate_roots(&p);
        assert_eq!(roots.len(), 4);
        let w = pow2_neg(30);
        let targets: Vec<(f64, f64)> = (1..5)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
                (t.cos(), t.sin())
            })
            .collect();
        for r in &roots {
            let fine = r.refine(&p, &w).enclosure();
            assert_eq!(targets.iter().filter(|(a, b)| boxed(&fine, *a, *b)).count(), 1);
        }
    }

    #[test]
    fn mixed_real_and_complex() {
        // (x^2 - 2)(x^2 + x + 1)(x - 3)
        let p = &(&qp(&[-2, 0, 1]) * &qp(&[1, 1, 1])) * &qp(&[-3, 1]);
        let roots = isolate_roots(&p);
        assert_eq!(roots.len(), 5);
        assert_eq!(roots.iter().filter(|r| matches!(r, RootBox::Real(_))).count(), 3);
    }
}
