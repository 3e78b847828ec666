use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nrank_core::ec::{
    ec_add, ec_mul, group_structure, group_structure_with, is_isogenous, point_count_naive, random_point,
    satisfies_hasse, trace, ECPoint, EllipticCurve, StructureConfig, StructureMode, TraceSequence,
};

const PRIMES: [u64; 9] = [5, 7, 11, 13, 17, 19, 23, 29, 31];

/// Points counted from a table of square roots, without the quadratic character.
fn count_by_squares(e: &EllipticCurve) -> u64 {
    let f = e.field();
    let mut roots = vec![0u64; f.q() as usize];
    for y in f.elements() {
        roots[f.index(&f.square(&y)) as usize] += 1;
    }
    1 + f
        .elements()
        .map(|x| roots[f.index(&e.rhs(&x)) as usize])
        .sum::<u64>()
}

fn curves_over(p: u64) -> Vec<EllipticCurve> {
    let mut v = Vec::new();
    for a in 0..p as i64 {
        for b in 0..p as i64 {
            if let Ok(e) = EllipticCurve::from_ints(p, 1, a, b) {
                v.push(e);
            }
        }
    }
    v
}

fn curve() -> impl Strategy<Value = EllipticCurve> {
    (prop::sample::select(PRIMES.to_vec()), 0i64..31, 0i64..31)
        .prop_filter_map("singular", |(p, a, b)| EllipticCurve::from_ints(p, 1, a, b).ok())
}

#[test]
fn recurrence_matches_counting_up_to_1e5() {
    for (p, a, b) in [(5u64, 1i64, 1i64), (7, 3, 2), (11, 0, 3), (13, 2, 5), (17, 1, 0)] {
        let e = EllipticCurve::from_ints(p, 1, a, b).unwrap();
        let ts = TraceSequence::of_curve(&e).unwrap();
        let mut n = 1u32;
        while p.pow(n) <= 100_000 {
            let en = e.base_change(n).unwrap();
            let want = count_by_squares(&en);
            assert_eq!(ts.card_extension(n as u64), BigInt::from(want), "p = {p} n = {n}");
            assert_eq!(point_count_naive(&en).unwrap(), want);
            n += 1;
        }
    }
}

#[test]
fn hasse_bound_holds_to_degree_500() {
    for p in [5u64, 7, 11, 13] {
        for e in curves_over(p) {
            let ts = TraceSequence::of_curve(&e).unwrap();
            let q = BigInt::from(p);
            let mut qn = BigInt::from(1);
            for (n, t) in ts.values(500).iter().enumerate().skip(1) {
                qn *= &q;
                assert!(satisfies_hasse(t, &qn), "{e:?} n = {n}");
            }
        }
    }
}

#[test]
fn supersingular_curves_pinch_at_degree_two() {
    let mut seen = 0;
    for p in PRIMES {
        for e in curves_over(p) {
            if trace(&e).unwrap() != 0 {
                continue;
            }
            seen += 1;
            let ts = TraceSequence::of_curve(&e).unwrap();
            assert_eq!(ts.card_extension(2), BigInt::from((p + 1).pow(2)));
            let s = group_structure(&e, 2).unwrap();
            assert_eq!((s.m, s.l), (p + 1, p + 1), "{e:?}");
        }
    }
    assert!(seen > 0);
}

#[test]
fn isogeny_classes_match_point_counts() {
    for p in [5u64, 7, 11] {
        let curves = curves_over(p);
        let counts: Vec<u64> = curves.iter().map(count_by_squares).collect();
        for i in 0..curves.len() {
            for j in i..curves.len() {
                assert_eq!(
                    is_isogenous(&curves[i], &curves[j]).unwrap(),
                    counts[i] == counts[j]
                );
            }
        }
        // equal counts persist over the quadratic extension
        for i in 0..curves.len().min(6) {
            for j in 0..curves.len().min(6) {
                if counts[i] == counts[j] {
                    let (a, b) = (
                        curves[i].base_change(2).unwrap(),
                        curves[j].base_change(2).unwrap(),
                    );
                    assert_eq!(count_by_squares(&a), count_by_squares(&b));
                }
            }
        }
    }
}

#[test]
fn twist_negates_the_trace() {
    for p in [7u64, 13, 19] {
        for e in curves_over(p).into_iter().take(20) {
            let tw = e.quadratic_twist().unwrap();
            assert_eq!(trace(&tw).unwrap(), -trace(&e).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn structure_divisibilities(e in curve(), n in 1u32..=4) {
        let q = e.q();
        prop_assume!(q.pow(n) <= 30_000);
        let s = group_structure(&e, n).unwrap();
        let ts = TraceSequence::of_curve(&e).unwrap();
        prop_assert_eq!(s.mode, StructureMode::Exhaustive);
        prop_assert_eq!(BigInt::from(s.card), ts.card_extension(n as u64));
        prop_assert_eq!(s.m * s.l, s.card);
        prop_assert!(s.l.is_multiple_of(s.m));
        prop_assert!((q.pow(n) - 1) % s.m == 0);
        let tn2: BigInt = ts.trace_power(n as u64) - 2;
        prop_assert_eq!(tn2 % BigInt::from(s.m), BigInt::from(0));
    }

    #[test]
    fn sampling_agrees_with_enumeration(e in curve(), n in 1u32..=3, seed in 0u64..1000) {
        prop_assume!(e.q().pow(n) <= 30_000);
        let full = group_structure(&e, n).unwrap();
        let cfg = StructureConfig { exhaustive_limit: 0, seed, ..StructureConfig::default() };
        let s = group_structure_with(&e, n, &cfg).unwrap();
        if s.mode == StructureMode::Sampled {
            prop_assert_eq!((s.m, s.l), (full.m, full.l));
        } else {
            prop_assert_eq!(s.mode, StructureMode::UpperBound);
            prop_assert!(full.m <= s.m);
        }
    }

    #[test]
    fn group_law(e in curve(), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let card = count_by_squares(&e);
        let (p, q, r) = (random_point(&e, &mut rng), random_point(&e, &mut rng), random_point(&e, &mut rng));
        let add = |x: &ECPoint, y: &ECPoint| ec_add(&e, x, y).unwrap();
        prop_assert_eq!(add(&add(&p, &q), &r), add(&p, &add(&q, &r)));
        prop_assert_eq!(add(&p, &q), add(&q, &p));
        prop_assert_eq!(add(&p, &ECPoint::Infinity), p.clone());
        prop_assert!(add(&p, &e.neg(&p)).is_infinity());
        prop_assert!(e.contains(&add(&p, &q)));
        prop_assert!(ec_mul(&e, &p, card).unwrap().is_infinity());
        prop_assert_eq!(ec_mul(&e, &p, 3).unwrap(), add(&p, &add(&p, &p)));
    }

    #[test]
    fn twist_cards_sum_on_odd_degrees(e in curve(), n in 1u64..=60) {
        let ts = TraceSequence::of_curve(&e).unwrap();
        let tw = TraceSequence::new(-ts.t, ts.q);
        let qn = BigInt::from(ts.q).pow(n as u32);
        let total = ts.card_extension(n) + tw.card_extension(n);
        if n % 2 == 1 {
            prop_assert_eq!(total, (qn + 1) * 2);
        } else {
            prop_assert_eq!(ts.card_extension(n), tw.card_extension(n));
        }
    }
}
