use num_bigint::BigInt;
use proptest::prelude::*;

use nrank_core::linalg::Matrix;
use nrank_core::order::{exceptional_witness_series, gcd_growth_series};
use nrank_core::spectral::{
    classify, classify_all, classify_with_profile, corollary_check_with_profile, spectral_profile,
    TableEntry, Verdict,
};
use nrank_core::IntegerMatrix;

fn int_matrix(rows: &[&[i64]]) -> IntegerMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .unwrap()
}

fn example_one() -> IntegerMatrix {
    int_matrix(&[
        &[21, -10, 2, -12, 1],
        &[15, -7, 5, -15, 3],
        &[3, -2, 4, -3, 1],
        &[9, -4, -1, 0, -1],
        &[-2, 1, 1, 2, 2],
    ])
}

/// Upper triangular with a nonzero rational spectrum.
fn triangular(max_d: usize) -> impl Strategy<Value = IntegerMatrix> {
    let eig = prop::sample::select(vec![-1i64, 1, 2, -2, 3, 4, 6, 8, 9, -3]);
    (2..=max_d).prop_flat_map(move |d| {
        (
            prop::collection::vec(eig.clone(), d),
            prop::collection::vec(-2i64..=2, d * d),
        )
            .prop_map(move |(diag, upper)| {
                let mut m = Matrix::<BigInt>::zeros(d, d);
                for i in 0..d {
                    m[(i, i)] = BigInt::from(diag[i]);
                    for j in i + 1..d {
                        m[(i, j)] = BigInt::from(upper[i * d + j]);
                    }
                }
                m
            })
    })
}

/// A unimodular `P` with its inverse, from elementary operations.
fn unimodular_pair(d: usize) -> impl Strategy<Value = (IntegerMatrix, IntegerMatrix)> {
    prop::collection::vec((0..d, 0..d, -2i64..=2), 1..6).prop_map(move |ops| {
        let mut p = Matrix::<BigInt>::identity(d);
        let mut inv = Matrix::<BigInt>::identity(d);
        for (i, j, c) in ops {
            if i == j {
                continue;
            }
            let mut e = Matrix::<BigInt>::identity(d);
            e[(i, j)] = BigInt::from(c);
            let mut f = Matrix::<BigInt>::identity(d);
            f[(i, j)] = BigInt::from(-c);
            p = &p * &e;
            inv = &f * &inv;
        }
        (p, inv)
    })
}

fn non_regular(v: &Verdict) -> bool {
    !v.is_regular()
}

#[test]
fn worked_example_table() {
    let rows = classify_all(&example_one()).unwrap();
    let entries: Vec<TableEntry> = rows.into_iter().map(|r| r.entry).collect();
    assert!(matches!(entries[0], TableEntry::Verdict(Verdict::Regular { .. })));
    assert!(matches!(entries[1], TableEntry::Verdict(Verdict::Regular { .. })));
    assert!(matches!(entries[2], TableEntry::Verdict(Verdict::Regular { .. })));
    assert!(matches!(
        entries[3],
        TableEntry::Verdict(Verdict::Exceptional { .. })
    ));
    assert_eq!(entries[4], TableEntry::ExceptionalByTheory);
    assert_eq!(entries[5], TableEntry::Trivial);
}

#[test]
fn post_corollary_example_profile() {
    let a = Matrix::diagonal(&[BigInt::from(3), BigInt::from(5), BigInt::from(15)]);
    let p = spectral_profile(&a, 64).unwrap();
    let data: Vec<(usize, usize)> = p.classes.iter().map(|c| (c.h, c.h_bar)).collect();
    assert_eq!(data, vec![(1, 0); 3]);
    assert!(classify(&a, 1).unwrap().verdict.is_regular());
}

#[test]
fn growth_agrees_with_verdicts() {
    // exceptional: linear growth along the witness subsequence
    let w = exceptional_witness_series(&example_one(), 3, 60).unwrap();
    let fit = w.series.fit_slope().unwrap();
    assert!(
        fit.slope >= 0.9 * w.reference_slope,
        "{fit:?} vs {}",
        w.reference_slope
    );
    // regular: sublinear growth
    let a = Matrix::diagonal(&[BigInt::from(2), BigInt::from(3)]);
    assert!(classify(&a, 0).unwrap().verdict.is_regular());
    let s = gcd_growth_series(&a, 0, 120).unwrap().fit_slope().unwrap();
    assert!(s.slope < 0.1, "{s:?}");
    let r2 = gcd_growth_series(&example_one(), 2, 60)
        .unwrap()
        .fit_slope()
        .unwrap();
    assert!(r2.slope < 0.1, "{r2:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdicts_are_monotone_in_r(a in triangular(5)) {
        let d = a.dim();
        let p = spectral_profile(&a, 64).unwrap();
        for r in 0..d.saturating_sub(2) {
            let lo = classify_with_profile(&a, &p, r).unwrap().verdict;
            if non_regular(&lo) && r < d - 2 {
                let hi = classify_with_profile(&a, &p, r + 1).unwrap().verdict;
                prop_assert!(non_regular(&hi), "r={} {:?} then {:?}", r, lo, hi);
            }
        }
    }

    #[test]
    fn profile_bookkeeping(a in triangular(5)) {
        let p = spectral_profile(&a, 64).unwrap();
        let h_total: usize = p.classes.iter().map(|c| c.h).sum();
        prop_assert_eq!(h_total + p.l, p.d);
        for c in &p.classes {
            prop_assert!(!c.members.is_empty());
            prop_assert!(c.h_bar < c.h);
        }
        if p.l > 0 {
            prop_assert!(p.l_bar < p.l);
        }
    }

    #[test]
    fn corollary_never_contradicted(a in triangular(5)) {
        let p = spectral_profile(&a, 64).unwrap();
        let c = corollary_check_with_profile(&a, &p).unwrap().unwrap();
        for r in 0..p.d.saturating_sub(1) {
            if c.e + c.f > r + 1 {
                prop_assert!(classify_with_profile(&a, &p, r).unwrap().verdict.is_regular());
            }
        }
        prop_assert!(c.consistent);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdicts_survive_conjugation(
        (a, (p, pinv)) in (3usize..=4).prop_flat_map(|d| (
            triangular(d).prop_filter("size", move |m| m.dim() == d),
            unimodular_pair(d),
        )),
    ) {
        prop_assert!((&p * &pinv).is_identity());
        let b = &(&p * &a) * &pinv;
        for r in 0..=a.dim() - 2 {
            let va = classify(&a, r).unwrap().verdict;
            let vb = classify(&b, r).unwrap().verdict;
            prop_assert_eq!(std::mem::discriminant(&va), std::mem::discriminant(&vb));
            if let (Verdict::FiniteGlobalOrder { k: ka }, Verdict::FiniteGlobalOrder { k: kb }) = (&va, &vb) {
                prop_assert_eq!(ka, kb);
            }
        }
    }
}

fn general_matrix(d: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-3i64..=3, d * d)
        .prop_map(move |v| Matrix::from_vec(d, d, v.into_iter().map(BigInt::from).collect()).unwrap())
        .prop_filter("invertible", |m| m.det() != BigInt::from(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn general_spectra_bookkeeping_and_conjugation(
        (a, (p, pinv)) in (general_matrix(4), unimodular_pair(4)),
    ) {
        let prof = spectral_profile(&a, 64).unwrap();
        let h_total: usize = prof.classes.iter().map(|c| c.h).sum();
        prop_assert_eq!(h_total + prof.l, 4);
        let b = &(&p * &a) * &pinv;
        let prof_b = spectral_profile(&b, 64).unwrap();
        for r in 0..=2 {
            let va = classify_with_profile(&a, &prof, r).unwrap().verdict;
            let vb = classify_with_profile(&b, &prof_b, r).unwrap().verdict;
            prop_assert_eq!(std::mem::discriminant(&va), std::mem::discriminant(&vb));
            if r < 2 && non_regular(&va) {
                prop_assert!(non_regular(&classify_with_profile(&a, &prof, r + 1).unwrap().verdict));
            }
        }
    }
}
