use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use nrank_core::linalg::{
    all_minors, det_cofactor, determinant_ideal_gen, exterior_power, n_rank, n_rank_by_minors,
    smith_normal_form, Matrix,
};
use nrank_core::scalar::EuclideanDomain;
use nrank_core::IntegerMatrix;

fn square(max_d: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max_d).prop_flat_map(move |d| {
        prop::collection::vec(-bound..=bound, d * d)
            .prop_map(move |v| Matrix::from_vec(d, d, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn sized(d: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-bound..=bound, d * d)
        .prop_map(move |v| Matrix::from_vec(d, d, v.into_iter().map(BigInt::from).collect()).unwrap())
}

/// Product of elementary matrices `I + c E_ij`, `i != j`.
fn unimodular(d: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec((0..d, 0..d, -3i64..=3), 0..8).prop_map(move |ops| {
        let mut u = Matrix::<BigInt>::identity(d);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            let mut e = Matrix::<BigInt>::identity(d);
            e[(i, j)] = BigInt::from(c);
            u = &u * &e;
        }
        u
    })
}

fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

#[test]
fn example_one_determinant_matches_jordan_form() {
    let a = Matrix::from_rows(
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
    .unwrap();
    // eigenvalues 2, 3, 3, 3, 9
    assert_eq!(a.det(), BigInt::from(2 * 27 * 9));
    assert_eq!(det_cofactor(&a), a.det());
}

#[test]
fn level_zero_and_zero_matrix_conventions() {
    let a = Matrix::diagonal(&[BigInt::from(2), BigInt::from(4)]);
    assert!(determinant_ideal_gen(&a, 0).is_one());
    let n = BigInt::from(6);
    assert_eq!(n_rank(&Matrix::<BigInt>::identity(3).scale(&n), &n), 0);
    assert_eq!(n_rank(&a, &BigInt::from(8)), 1);
    assert_eq!(n_rank_by_minors(&a, &BigInt::from(8)), 1);
}

#[test]
fn machine_and_big_integers_agree() {
    let small: Matrix<i64> = Matrix::from_rows(vec![vec![4, 6, 2], vec![2, 8, -4], vec![6, 0, 10]]).unwrap();
    let big = small.map(|&x| BigInt::from(x));
    let s1 = smith_normal_form(&small);
    let s2 = smith_normal_form(&big);
    assert_eq!(
        s1.diag.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(),
        s2.diag
    );
    assert_eq!(n_rank(&small, &4), n_rank(&big, &BigInt::from(4)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_chain_and_ideal_generators(a in square(5, 9)) {
        let snf = smith_normal_form(&a);
        for w in snf.diag.windows(2) {
            prop_assert!(divides(&w[0], &w[1]));
        }
        for r in 0..=a.dim() {
            prop_assert_eq!(snf.ideal_generator(r), determinant_ideal_gen(&a, r));
        }
    }

    #[test]
    fn ideal_chain_is_decreasing(a in square(4, 9)) {
        for r in 0..a.dim() {
            let lo = determinant_ideal_gen(&a, r);
            let hi = determinant_ideal_gen(&a, r + 1);
            if !hi.is_zero() {
                prop_assert!(divides(&lo, &hi));
            }
        }
    }

    #[test]
    fn n_rank_matches_minor_enumeration(a in square(4, 9), n in 2i64..=50) {
        let n = BigInt::from(n);
        prop_assert_eq!(n_rank(&a, &n), n_rank_by_minors(&a, &n));
    }

    #[test]
    fn n_rank_is_unimodular_invariant(
        (a, p, q) in (1usize..=4).prop_flat_map(|d| (sized(d, 9), unimodular(d), unimodular(d))),
        n in 2i64..=50,
    ) {
        let n = BigInt::from(n);
        let paq = &(&p * &a) * &q;
        prop_assert_eq!(n_rank(&paq, &n), n_rank(&a, &n));
    }

    #[test]
    fn n_rank_depends_only_on_residues(
        (a, r) in (1usize..=4).prop_flat_map(|d| (sized(d, 9), sized(d, 5))),
        n in 2i64..=50,
    ) {
        let n = BigInt::from(n);
        let shifted = &a + &r.scale(&n);
        prop_assert_eq!(n_rank(&shifted, &n), n_rank(&a, &n));
    }

    #[test]
    fn exterior_power_is_multiplicative(
        (a, b) in (3usize..=4).prop_flat_map(|d| (sized(d, 5), sized(d, 5))),
    ) {
        let ab = &a * &b;
        for r in 1..=a.dim() {
            let lhs = exterior_power(&ab, r).unwrap();
            let rhs = &exterior_power(&a, r).unwrap() * &exterior_power(&b, r).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion(a in square(6, 9)) {
        prop_assert_eq!(a.det(), det_cofactor(&a));
    }

    #[test]
    fn minors_of_top_order_are_the_determinant(a in square(4, 9)) {
        let d = a.dim();
        let top: Vec<BigInt> = all_minors(&a, d).collect();
        prop_assert_eq!(top, vec![a.det()]);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.ideal_generator(d), a.det().unit_normal());
    }
}
