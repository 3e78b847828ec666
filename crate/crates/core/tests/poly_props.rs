use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use nrank_core::linalg::{det_cofactor, Matrix};
use nrank_core::poly::{
    char_poly, cyclotomic_poly, eval_at_matrix, factor_over_q, invariant_factors, is_cyclotomic, resultant,
    sylvester_resultant, Poly,
};
use nrank_core::{IntegerMatrix, RationalPoly};

fn qp(c: &[i64]) -> RationalPoly {
    Poly::new(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
}

/// Small monic irreducibles over `Q`.
fn irreducibles() -> Vec<RationalPoly> {
    vec![
        qp(&[-2, 1]),
        qp(&[3, 1]),
        qp(&[1, 0, 1]),
        qp(&[-2, 0, 1]),
        qp(&[1, 1, 1]),
        qp(&[-1, -1, 1]),
        qp(&[-2, 0, 0, 1]),
        qp(&[1, 0, 0, 0, 1]),
        qp(&[5, 3, 1]),
        qp(&[-1, 1, 0, 1]),
    ]
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1).prop_map(|c| qp(&c))
}

fn square(max_d: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_d).prop_flat_map(move |d| {
        prop::collection::vec(-bound..=bound, d * d)
            .prop_map(move |v| Matrix::from_vec(d, d, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn example_one() -> IntegerMatrix {
    Matrix::from_rows(
        [
            [21, -10, 2, -12, 1],
            [15, -7, 5, -15, 3],
            [3, -2, 4, -3, 1],
            [9, -4, -1, 0, -1],
            [-2, 1, 1, 2, 2],
        ]
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect(),
    )
    .unwrap()
}

#[test]
fn example_one_characteristic_data() {
    let a = example_one();
    let expected = &(&qp(&[-2, 1]) * &qp(&[-3, 1]).pow(3)) * &qp(&[-9, 1]);
    assert_eq!(char_poly(&a), expected);
    let inv = invariant_factors(&a);
    assert_eq!(inv.factors, vec![expected.clone()]);
    let f = factor_over_q(&expected).unwrap();
    let mults: Vec<(RationalPoly, u32)> = vec![(qp(&[-9, 1]), 1), (qp(&[-3, 1]), 3), (qp(&[-2, 1]), 1)];
    let mut got = f.factors.clone();
    got.sort_by_key(|(g, _)| g.coeff(0));
    assert_eq!(got, mults);
}

#[test]
fn cyclotomic_detection_up_to_sixty() {
    for n in 1..=60u64 {
        let phi = cyclotomic_poly(n).to_rational();
        assert_eq!(is_cyclotomic(&phi), Some(n), "n = {n}");
        let shifted = &phi + &qp(&[3]);
        assert_eq!(is_cyclotomic(&shifted), None, "n = {n} shifted");
    }
    assert_eq!(is_cyclotomic(&qp(&[1, -3, 1])), None);
}

#[test]
fn resultant_examples() {
    // (x^2 - 2, x^2 - 3): product over roots of (sqrt2 -+ sqrt3) pairs
    assert_eq!(
        resultant(&qp(&[-2, 0, 1]), &qp(&[-3, 0, 1])).unwrap(),
        BigRational::from_integer(1.into())
    );
    assert!(resultant(&qp(&[-1, 0, 1]), &qp(&[1, 1])).unwrap().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorization_round_trip(
        picks in prop::collection::vec((0usize..10, 1u32..=2), 1..=3),
        unit in prop_oneof![Just(1i64), Just(-3), Just(7)],
    ) {
        let irr = irreducibles();
        let mut p = qp(&[unit]);
        for (i, e) in &picks {
            p = &p * &irr[*i].pow(*e);
        }
        let f = factor_over_q(&p).unwrap();
        prop_assert_eq!(f.expand(), p.clone());
        for (g, _) in &f.factors {
            prop_assert!(g.is_monic());
            prop_assert!(irr.contains(g));
        }
    }

    #[test]
    fn invariant_factor_identities(a in square(4, 4)) {
        let inv = invariant_factors(&a);
        let cp = char_poly(&a);
        prop_assert_eq!(inv.product(), cp.clone());
        for w in inv.factors.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert!(eval_at_matrix(&inv.minimal_polynomial(), &a).is_zero());
        let minpoly = inv.minimal_polynomial();
        for (g, m) in factor_over_q(&cp).unwrap().factors {
            let blocks = inv.blocks_for(&g);
            prop_assert!(blocks <= m as usize);
            let semisimple = !(&g * &g).divides(&minpoly);
            prop_assert_eq!(blocks == m as usize, semisimple);
        }
    }

    #[test]
    fn char_poly_matches_cofactor_determinant(a in square(5, 6), x in -4i64..=4) {
        let d = a.dim();
        let xi = Matrix::<BigInt>::identity(d).scale(&BigInt::from(x));
        let det = det_cofactor(&(&xi - &a));
        let value = char_poly(&a).eval(&BigRational::from_integer(x.into()));
        prop_assert_eq!(value, BigRational::from_integer(det));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in small_poly(3), g in small_poly(3), h in small_poly(1)) {
        prop_assume!(f.deg() >= 1 && g.deg() >= 1);
        let r = resultant(&f, &g).unwrap();
        prop_assert_eq!(r.is_zero(), f.gcd(&g).deg() >= 1);
        prop_assert_eq!(r, sylvester_resultant(&f, &g));
        if h.deg() == 1 {
            let (fh, gh) = (&f * &h, &g * &h);
            prop_assert!(resultant(&fh, &gh).unwrap().is_zero());
        }
    }
}
