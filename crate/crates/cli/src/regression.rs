//! Worked examples checked against their published values, plus the slope
//! checks whose thresholds come from the run configuration.

use num_bigint::BigInt;
use num_rational::BigRational;

use nrank_core::algnum::{
    dependence_classes, mult_dependent, torus_rank_rational, AlgebraicNumber, Dependence,
};
use nrank_core::ec::{
    exponent_ratio, gcd_orders_experiment, group_structure_with, point_count_naive, EllipticCurve,
    TraceSequence,
};
use nrank_core::linalg::{determinant_ideal_gen, exterior_power, n_rank, Matrix};
use nrank_core::order::{gcd_growth_series, ord_r, OrderResult};
use nrank_core::poly::{char_poly, factor_over_q, parse_rational_poly};
use nrank_core::spectral::{
    classify_all_with_profile, classify_with_profile, corollary_check_with_profile, spectral_profile_with,
    SpectralProfile, TableEntry, Verdict,
};
use nrank_core::{IntegerMatrix, Result};

use crate::config::RunConfig;
use crate::output::{fmt_real, Table};

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn mat(rows: &[&[i64]]) -> IntegerMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
    .expect("fixture rows are square")
}

fn diag(d: &[i64]) -> IntegerMatrix {
    Matrix::diagonal(&d.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

pub fn example_one() -> IntegerMatrix {
    mat(&[
        &[21, -10, 2, -12, 1],
        &[15, -7, 5, -15, 3],
        &[3, -2, 4, -3, 1],
        &[9, -4, -1, 0, -1],
        &[-2, 1, 1, 2, 2],
    ])
}

pub fn example_two() -> IntegerMatrix {
    Matrix::block_diagonal(&[diag(&[1, -1]), mat(&[&[2, 1], &[0, 2]]), diag(&[4])])
}

/// Entries in `[-4, 4]` from a splitmix stream, so the check follows the seed.
fn seeded_matrix(d: usize, state: &mut u64) -> IntegerMatrix {
    let entries = (0..d * d)
        .map(|_| {
            *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = *state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            z ^= z >> 31;
            BigInt::from((z % 9) as i64 - 4)
        })
        .collect();
    Matrix::from_vec(d, d, entries).expect("square")
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ints(xs: &[i64]) -> Vec<AlgebraicNumber> {
    xs.iter().map(|&x| AlgebraicNumber::from_int(x)).collect()
}

/// Classes as sorted eigenvalue lists with `(h, h_bar)`, in sorted order.
fn class_data(p: &SpectralProfile) -> Vec<(Vec<BigRational>, usize, usize)> {
    let mut data: Vec<(Vec<BigRational>, usize, usize)> = p
        .classes
        .iter()
        .map(|c| {
            let mut values: Vec<BigRational> = c
                .members
                .iter()
                .filter_map(|&i| p.eigen[i].value.as_rational())
                .collect();
            values.sort();
            (values, c.h, c.h_bar)
        })
        .collect();
    data.sort();
    data
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Regular { .. } => "Regular",
        Verdict::Exceptional { .. } => "Exceptional",
        Verdict::FiniteGlobalOrder { .. } => "FiniteGlobalOrder",
    }
}

fn entry_name(e: &TableEntry) -> &'static str {
    match e {
        TableEntry::Verdict(v) => verdict_name(v),
        TableEntry::ExceptionalByTheory => "ExceptionalByTheory",
        TableEntry::Trivial => "Trivial",
    }
}

type CheckFn = fn(&RunConfig) -> Result<(bool, String)>;

fn exterior_power_is_multiplicative(cfg: &RunConfig) -> Result<(bool, String)> {
    let mut state = cfg.seed;
    let (a, b) = (seeded_matrix(3, &mut state), seeded_matrix(3, &mut state));
    let lhs = exterior_power(&(&a * &b), 2)?;
    let rhs = &exterior_power(&a, 2)? * &exterior_power(&b, 2)?;
    Ok((lhs == rhs, format!("3x3 pair from seed {}", cfg.seed)))
}

fn level_zero_ideal_is_everything(_: &RunConfig) -> Result<(bool, String)> {
    let g = determinant_ideal_gen(&example_one(), 0);
    Ok((g == BigInt::from(1), format!("I_0 generator {g}")))
}

fn scalar_multiple_of_n_has_rank_zero(_: &RunConfig) -> Result<(bool, String)> {
    let n = BigInt::from(12);
    let r = n_rank(&Matrix::<BigInt>::identity(4).scale(&n), &n);
    Ok((r == 0, format!("12-rank of 12 I_4 = {r}")))
}

fn example_one_char_poly(_: &RunConfig) -> Result<(bool, String)> {
    let want = parse_rational_poly("-486,783,-486,144,-20,1")?;
    let got = char_poly(&example_one());
    Ok((got == want, format!("{got}")))
}

fn example_one_multiplicities(_: &RunConfig) -> Result<(bool, String)> {
    let f = factor_over_q(&char_poly(&example_one()))?;
    let mut got: Vec<(String, u32)> = f.factors.iter().map(|(g, m)| (g.to_string(), *m)).collect();
    got.sort();
    let want = vec![
        ("-2,1".to_string(), 1),
        ("-3,1".to_string(), 3),
        ("-9,1".to_string(), 1),
    ];
    Ok((got == want, format!("{got:?}")))
}

fn three_and_nine_are_dependent(cfg: &RunConfig) -> Result<(bool, String)> {
    let d = mult_dependent(
        &AlgebraicNumber::from_int(3),
        &AlgebraicNumber::from_int(9),
        cfg.bound,
    )?;
    let w = d.witness().map(|w| (w.a1, w.a2));
    Ok((w == Some((2, -1)), format!("{w:?}")))
}

fn two_and_three_are_independent(cfg: &RunConfig) -> Result<(bool, String)> {
    let d = mult_dependent(
        &AlgebraicNumber::from_int(2),
        &AlgebraicNumber::from_int(3),
        cfg.bound,
    )?;
    let ok = matches!(d, Dependence::Independent { .. });
    Ok((ok, format!("{d:?}")))
}

fn classes_of_two_three_nine(cfg: &RunConfig) -> Result<(bool, String)> {
    let c = dependence_classes(&ints(&[2, 3, 9]), cfg.bound)?;
    Ok((c.classes == vec![vec![0], vec![1, 2]], format!("{:?}", c.classes)))
}

fn classes_of_three_five_fifteen(cfg: &RunConfig) -> Result<(bool, String)> {
    let c = dependence_classes(&ints(&[3, 5, 15]), cfg.bound)?;
    Ok((
        c.classes == vec![vec![0], vec![1], vec![2]],
        format!("{:?}", c.classes),
    ))
}

fn torus_rank_three_five_fifteen(_: &RunConfig) -> Result<(bool, String)> {
    let e = torus_rank_rational(&[q(3), q(5), q(15)])?;
    Ok((e == 2, format!("rank {e}")))
}

fn example_one_profile(cfg: &RunConfig) -> Result<(bool, String)> {
    let p = spectral_profile_with(&example_one(), &cfg.spectral())?;
    let data = class_data(&p);
    let want = vec![(vec![q(2)], 1, 0), (vec![q(3), q(9)], 4, 2)];
    let ok = p.l == 0 && p.l_bar == 0 && data == want;
    let shown: Vec<String> = data
        .iter()
        .map(|(v, h, hb)| {
            let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("{{{}}} h={h} h_bar={hb}", v.join(" "))
        })
        .collect();
    Ok((ok, format!("l={} l_bar={} {}", p.l, p.l_bar, shown.join("; "))))
}

fn diagonal_three_five_fifteen_profile(cfg: &RunConfig) -> Result<(bool, String)> {
    let p = spectral_profile_with(&diag(&[3, 5, 15]), &cfg.spectral())?;
    let hs: Vec<(usize, usize)> = p.classes.iter().map(|c| (c.h, c.h_bar)).collect();
    Ok((hs == vec![(1, 0); 3], format!("{hs:?}")))
}

fn example_one_verdicts(cfg: &RunConfig) -> Result<(bool, String)> {
    let a = example_one();
    let p = spectral_profile_with(&a, &cfg.spectral())?;
    let v3 = classify_with_profile(&a, &p, 3)?.verdict;
    let v2 = classify_with_profile(&a, &p, 2)?.verdict;
    let three = (0..p.eigen.len()).find(|&i| p.eigen[i].value.as_rational() == Some(q(3)));
    let ok = match v3 {
        Verdict::Exceptional { class } => three.and_then(|i| p.class_of(i)) == Some(class) && v2.is_regular(),
        _ => false,
    };
    Ok((
        ok,
        format!("r=3 {}, r=2 {}", verdict_name(&v3), verdict_name(&v2)),
    ))
}

fn example_two_verdicts(cfg: &RunConfig) -> Result<(bool, String)> {
    let a = example_two();
    let p = spectral_profile_with(&a, &cfg.spectral())?;
    let hs: Vec<(usize, usize)> = p.classes.iter().map(|c| (c.h, c.h_bar)).collect();
    let v1 = classify_with_profile(&a, &p, 1)?.verdict;
    let v0 = classify_with_profile(&a, &p, 0)?.verdict;
    let ok = p.l == 2
        && p.l_bar == 0
        && hs == vec![(3, 1)]
        && matches!(v1, Verdict::Exceptional { .. })
        && v0.is_regular();
    let detail = format!(
        "l={} l_bar={} {hs:?} r=1 {} r=0 {}",
        p.l,
        p.l_bar,
        verdict_name(&v1),
        verdict_name(&v0)
    );
    Ok((ok, detail))
}

fn example_one_table(cfg: &RunConfig) -> Result<(bool, String)> {
    let a = example_one();
    let p = spectral_profile_with(&a, &cfg.spectral())?;
    let names: Vec<&str> = classify_all_with_profile(&a, &p)?
        .iter()
        .map(|r| entry_name(&r.entry))
        .collect();
    let want = [
        "Regular",
        "Regular",
        "Regular",
        "Exceptional",
        "ExceptionalByTheory",
        "Trivial",
    ];
    Ok((names == want, names.join(" ")))
}

fn corollary_counterexample(cfg: &RunConfig) -> Result<(bool, String)> {
    let a = diag(&[3, 5, 15]);
    let p = spectral_profile_with(&a, &cfg.spectral())?;
    let c = corollary_check_with_profile(&a, &p)?;
    let r1 = classify_with_profile(&a, &p, 1)?.verdict;
    let ok = r1.is_regular() && c.is_some_and(|c| c.e == 2 && c.f == 0 && c.consistent);
    Ok((ok, format!("r=1 {} {c:?}", verdict_name(&r1))))
}

fn exponent_floor(cfg: &RunConfig) -> Result<(bool, String)> {
    let e = EllipticCurve::from_ints(5, 1, 1, 1)?;
    let mut worst = f64::INFINITY;
    for n in 1..=6u32 {
        let s = group_structure_with(&e, n, &cfg.structure())?;
        let q = 5f64;
        let floor = (q.powf(n as f64 / 2.0) - 1.0).ln() / (n as f64 * q.ln());
        worst = worst.min(exponent_ratio(s.l, n, 5) - floor);
    }
    Ok((
        worst >= 0.0,
        format!("least margin over n<=6: {}", fmt_real(worst)),
    ))
}

fn quadratic_extension_count(_: &RunConfig) -> Result<(bool, String)> {
    let e = EllipticCurve::from_ints(5, 1, 1, 1)?;
    let rec = TraceSequence::of_curve(&e)?.card_extension(2);
    let naive = point_count_naive(&e.base_change(2)?)?;
    Ok((
        rec == BigInt::from(naive) && naive == 27,
        format!("recurrence {rec}, naive {naive}"),
    ))
}

fn ord_of_two_mod_two(_: &RunConfig) -> Result<(bool, String)> {
    let o = ord_r(&diag(&[2]), 2, 0)?;
    Ok((
        o == OrderResult::Infinite {
            period: 1,
            preperiod: 0,
        },
        format!("{o:?}"),
    ))
}

fn exceptional_growth_slope(cfg: &RunConfig) -> Result<(bool, String)> {
    let s = gcd_growth_series(&example_one(), 3, 60)?;
    let fit = s.fit_slope_range(30, 60);
    let need = cfg.thresholds.exceptional_slope_factor * 3f64.ln();
    let slope = fit.map_or(f64::NAN, |f| f.slope);
    Ok((
        slope >= need,
        format!("slope {} (need >= {})", fmt_real(slope), fmt_real(need)),
    ))
}

fn regular_growth_slope(cfg: &RunConfig) -> Result<(bool, String)> {
    let s = gcd_growth_series(&example_one(), 2, 60)?;
    let slope = s.fit_slope_range(30, 60).map_or(f64::NAN, |f| f.slope);
    let max = cfg.thresholds.regular_slope_max;
    Ok((
        slope <= max,
        format!("slope {} (need <= {})", fmt_real(slope), fmt_real(max)),
    ))
}

fn point_count_gcd_slope(cfg: &RunConfig) -> Result<(bool, String)> {
    let s = gcd_orders_experiment(&TraceSequence::new(-3, 5), &TraceSequence::new(0, 5), 200)?;
    let slope = s.fit_slope().map_or(f64::NAN, |f| f.slope);
    let max = cfg.thresholds.gcd_slope_factor * 5f64.ln();
    Ok((
        slope <= max,
        format!("slope {} (need <= {})", fmt_real(slope), fmt_real(max)),
    ))
}

const CHECKS: [(&str, CheckFn); 22] = [
    (
        "exterior power is multiplicative",
        exterior_power_is_multiplicative,
    ),
    ("level-zero determinant ideal", level_zero_ideal_is_everything),
    ("N-rank of N times identity", scalar_multiple_of_n_has_rank_zero),
    ("example 1 characteristic polynomial", example_one_char_poly),
    ("example 1 eigenvalue multiplicities", example_one_multiplicities),
    ("3 and 9 dependent", three_and_nine_are_dependent),
    ("2 and 3 independent", two_and_three_are_independent),
    ("classes of 2, 3, 9", classes_of_two_three_nine),
    ("classes of 3, 5, 15", classes_of_three_five_fifteen),
    ("torus rank of 3, 5, 15", torus_rank_three_five_fifteen),
    ("example 1 profile", example_one_profile),
    ("diag(3,5,15) profile", diagonal_three_five_fifteen_profile),
    ("example 1 verdicts", example_one_verdicts),
    ("example 2 verdicts", example_two_verdicts),
    ("example 1 verdict table", example_one_table),
    ("diag(3,5,15) corollary", corollary_counterexample),
    ("exponent ratio floor", exponent_floor),
    ("F_25 point count", quadratic_extension_count),
    ("ord of [[2]] mod 2", ord_of_two_mod_two),
    ("example 1 exceptional slope", exceptional_growth_slope),
    ("example 1 regular slope", regular_growth_slope),
    ("point-count gcd slope", point_count_gcd_slope),
];

pub fn run(cfg: &RunConfig) -> Vec<Check> {
    CHECKS
        .iter()
        .map(|&(name, f)| match f(cfg) {
            Ok((pass, detail)) => Check { name, pass, detail },
            Err(e) => Check {
                name,
                pass: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}

pub fn table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["check", "status", "detail"]);
    for c in checks {
        t.push(vec![
            c.name.into(),
            (if c.pass { "pass" } else { "FAIL" }).into(),
            c.detail.clone().into(),
        ]);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    t.note("passed", checks.len() - failed);
    t.note("failed", failed);
    t
}
