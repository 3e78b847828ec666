//! One function per subcommand. Each returns a table or a JSON document.

use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};

use nrank_core::ec::{
    closure_exponent, exponent_growth_experiment, gcd_orders_experiment, group_structure_with, trace,
    EllipticCurve, StructureMode, TraceSequence,
};
use nrank_core::io::{parse_curve_spec, parse_matrix, CurveSpec};
use nrank_core::linalg::n_rank;
use nrank_core::order::{
    exceptional_witness_series, gcd_growth_series, k_invariant, lemma_gcd_check, ord_r, GrowthSeries,
    OrderResult,
};
use nrank_core::spectral::{
    classify_all_with_profile, corollary_check_with_profile, spectral_profile_with, SpectralProfile,
    TableEntry, Verdict,
};
use nrank_core::IntegerMatrix;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, Output, Table};

/// Read a matrix from a file, or from stdin when the path is `-`.
pub fn read_matrix(path: &Path) -> Result<IntegerMatrix, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::parse("read matrix", e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::parse("read matrix", format!("{}: {e}", path.display())))?
    };
    parse_matrix(&text).map_err(CliError::at("parse matrix"))
}

/// Curve from either a spec string or separate field and coefficient values.
#[derive(Clone, Debug, Default)]
pub struct CurveInput {
    pub spec: Option<String>,
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub a: Option<i64>,
    pub b: Option<i64>,
}

impl CurveInput {
    pub fn resolve(&self) -> Result<CurveSpec, CliError> {
        match (&self.spec, self.p, self.a, self.b) {
            (Some(s), None, None, None) => parse_curve_spec(s).map_err(CliError::at("parse curve")),
            (None, Some(p), Some(a), Some(b)) => Ok(CurveSpec {
                p,
                k: self.k.unwrap_or(1),
                a,
                b,
            }),
            _ => Err(CliError::usage(
                "give a curve either as --curve p^k:a,b or as --p, --a, --b (and optionally --k)".into(),
            )),
        }
    }

    pub fn curve(&self) -> Result<EllipticCurve, CliError> {
        self.resolve()?.curve().map_err(CliError::at("build curve"))
    }
}

fn real(x: Option<f64>) -> Cell {
    x.map_or(Cell::Empty, Cell::Real)
}

fn series_table(series: &GrowthSeries) -> Table {
    let mut t = Table::new(&["n", "gcd", "log_gcd"]);
    for p in &series.points {
        t.push(vec![p.n.into(), p.gcd.clone().into(), real(p.log_gcd)]);
    }
    t
}

/// Fit over `[from, to]`, defaulting to the upper half of the series.
fn add_fit(t: &mut Table, series: &GrowthSeries, range: (Option<u64>, Option<u64>)) {
    let last = series.points.last().map_or(0, |p| p.n);
    let from = range
        .0
        .unwrap_or_else(|| series.points.get(series.points.len() / 2).map_or(0, |p| p.n));
    let to = range.1.unwrap_or(last);
    t.note("fit_from", from);
    t.note("fit_to", to);
    match series.fit_slope_range(from, to) {
        Some(f) => {
            t.note("slope", f.slope);
            t.note("intercept", f.intercept);
            t.note("residual", f.residual);
            t.note("points", f.points);
        }
        None => t.note("slope", Cell::Empty),
    }
}

fn verdict_json(r: usize, entry: &TableEntry) -> Value {
    match entry {
        TableEntry::Trivial => json!({ "r": r, "verdict": "Trivial" }),
        TableEntry::ExceptionalByTheory => json!({ "r": r, "verdict": "ExceptionalByTheory" }),
        TableEntry::Verdict(Verdict::Regular { searched_bound }) => {
            json!({ "r": r, "verdict": "Regular", "searched_bound": searched_bound })
        }
        TableEntry::Verdict(Verdict::Exceptional { class }) => {
            json!({ "r": r, "verdict": "Exceptional", "class": class })
        }
        TableEntry::Verdict(Verdict::FiniteGlobalOrder { k }) => {
            json!({ "r": r, "verdict": "FiniteGlobalOrder", "k": k })
        }
    }
}

fn approx(x: f64) -> Value {
    Cell::Real(x).json()
}

fn profile_json(p: &SpectralProfile) -> Value {
    let eigen: Vec<Value> = p
        .eigen
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let b = e.value.enclosure_bits(64);
            let minpoly: Vec<String> = e
                .value
                .integer_minpoly()
                .coeffs()
                .iter()
                .map(|c| c.to_string())
                .collect();
            json!({
                "index": i,
                "minpoly": minpoly,
                "re": approx(b.re.mid_f64()),
                "im": approx(b.im.mid_f64()),
                "alg_mult": e.alg_mult,
                "blocks": e.blocks,
                "unity_order": e.unity_order,
                "class": p.class_of(i),
            })
        })
        .collect();
    let classes: Vec<Value> = p
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| json!({ "index": i, "members": c.members, "h": c.h, "h_bar": c.h_bar }))
        .collect();
    let witnesses: Vec<Value> = p
        .witnesses
        .iter()
        .map(|(i, j, w)| json!({ "i": i, "j": j, "a1": w.a1, "a2": w.a2 }))
        .collect();
    json!({
        "d": p.d,
        "l": p.l,
        "l_bar": p.l_bar,
        "eigenvalues": eigen,
        "classes": classes,
        "witnesses": witnesses,
        "searched_bound": p.searched_bound,
    })
}

pub fn classify_document(a: &IntegerMatrix, cfg: &RunConfig) -> Result<Value, CliError> {
    let p = spectral_profile_with(a, &cfg.spectral()).map_err(CliError::at("spectral profile"))?;
    let rows = classify_all_with_profile(a, &p).map_err(CliError::at("verdict table"))?;
    let corollary = corollary_check_with_profile(a, &p).map_err(CliError::at("corollary check"))?;
    let verdicts: Vec<Value> = rows.iter().map(|row| verdict_json(row.r, &row.entry)).collect();
    Ok(json!({
        "profile": profile_json(&p),
        "verdicts": verdicts,
        "corollary": corollary.map(|c| json!({ "e": c.e, "f": c.f, "consistent": c.consistent })),
    }))
}

pub fn classify(path: &Path, cfg: &RunConfig) -> Result<Output, CliError> {
    let a = read_matrix(path)?;
    Ok(Output::Document(classify_document(&a, cfg)?))
}

pub fn nrank(path: &Path, moduli: &[BigInt]) -> Result<Output, CliError> {
    let a = read_matrix(path)?;
    let mut t = Table::new(&["modulus", "n_rank"]);
    for n in moduli {
        if n < &BigInt::from(1) {
            return Err(CliError::usage(format!("modulus {n} must be positive")));
        }
        t.push(vec![n.clone().into(), n_rank(&a, n).into()]);
    }
    Ok(Output::Table(t))
}

pub fn ord(path: &Path, moduli: &[u64], r: Option<usize>, cfg: &RunConfig) -> Result<Output, CliError> {
    let a = read_matrix(path)?;
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (0..=a.dim()).collect(),
    };
    let mut t = Table::new(&["modulus", "r", "kind", "order", "period", "preperiod"]);
    for &n in moduli {
        if n > cfg.modulus_budget {
            return Err(CliError::resource(
                "ord",
                format!("modulus {n} exceeds modulus_budget {}", cfg.modulus_budget),
            ));
        }
        for &r in &rs {
            let row = match ord_r(&a, n, r).map_err(CliError::at("ord"))? {
                OrderResult::Finite(k) => vec![
                    n.into(),
                    r.into(),
                    "Finite".into(),
                    k.into(),
                    Cell::Empty,
                    Cell::Empty,
                ],
                OrderResult::Infinite { period, preperiod } => vec![
                    n.into(),
                    r.into(),
                    "Infinite".into(),
                    Cell::Empty,
                    period.into(),
                    preperiod.into(),
                ],
            };
            t.push(row);
        }
    }
    Ok(Output::Table(t))
}

pub fn growth(
    path: &Path,
    r: usize,
    range: (Option<u64>, Option<u64>),
    cfg: &RunConfig,
) -> Result<Output, CliError> {
    let a = read_matrix(path)?;
    let series = gcd_growth_series(&a, r, cfg.n_max).map_err(CliError::at("growth"))?;
    let mut t = series_table(&series);
    add_fit(&mut t, &series, range);
    Ok(Output::Table(t))
}

pub fn kinv(path: &Path, moduli: &[BigInt], cfg: &RunConfig) -> Result<Output, CliError> {
    let a = read_matrix(path)?;
    let mut t = Table::new(&["modulus", "n_max", "k"]);
    for n in moduli {
        let k = k_invariant(&a, n, cfg.n_max).map_err(CliError::at("kinv"))?;
        t.push(vec![n.clone().into(), cfg.n_max.into(), k.into()]);
    }
    Ok(Output::Table(t))
}

pub fn lemma_check(lambda: &BigInt, eta: &BigInt, k: usize, cfg: &RunConfig) -> Result<Output, CliError> {
    let series = lemma_gcd_check(lambda, eta, k, cfg.n_max).map_err(CliError::at("lemma-check"))?;
    let mut t = Table::new(&["n", "gcd", "log_gcd", "ratio"]);
    let mut max_ratio: Option<f64> = None;
    for p in &series.points {
        let ratio = match (p.n, p.log_gcd) {
            (n, Some(lg)) if n >= 2 => Some(lg / (n as f64).ln()),
            _ => None,
        };
        if let Some(x) = ratio {
            max_ratio = Some(max_ratio.map_or(x, |m: f64| m.max(x)));
        }
        t.push(vec![
            p.n.into(),
            p.gcd.clone().into(),
            real(p.log_gcd),
            real(ratio),
        ]);
    }
    t.note("max_ratio", real(max_ratio));
    Ok(Output::Table(t))
}

pub fn witness(
    path: &Path,
    r: usize,
    range: (Option<u64>, Option<u64>),
    cfg: &RunConfig,
) -> Result<Output, CliError> {
    let a = read_matrix(path)?;
    let w = exceptional_witness_series(&a, r, cfg.n_max).map_err(CliError::at("witness"))?;
    let mut t = series_table(&w.series);
    t.note("step", w.m);
    t.note("class", w.class);
    t.note("representative", w.representative);
    t.note("reference_slope", w.reference_slope);
    add_fit(&mut t, &w.series, range);
    Ok(Output::Table(t))
}

fn mode_name(m: StructureMode) -> &'static str {
    match m {
        StructureMode::Exhaustive => "exhaustive",
        StructureMode::Sampled => "sampled",
        StructureMode::UpperBound => "upper_bound",
    }
}

pub fn ec_structure(curve: &CurveInput, degrees: &[u32], cfg: &RunConfig) -> Result<Output, CliError> {
    let e = curve.curve()?;
    let mut t = Table::new(&["n", "q_n", "card", "m", "l", "mode"]);
    for &n in degrees {
        let s = group_structure_with(&e, n, &cfg.structure()).map_err(CliError::at("ec-structure"))?;
        let qn = BigInt::from(e.q()).pow(n);
        t.push(vec![
            n.into(),
            qn.into(),
            s.card.into(),
            s.m.into(),
            s.l.into(),
            mode_name(s.mode).into(),
        ]);
    }
    Ok(Output::Table(t))
}

pub fn ec_growth(curve: &CurveInput, cfg: &RunConfig) -> Result<Output, CliError> {
    let e = curve.curve()?;
    let n_max = u32::try_from(cfg.n_max).map_err(|_| CliError::usage("n_max too large".into()))?;
    let pts = exponent_growth_experiment(&e, n_max, &cfg.structure()).map_err(CliError::at("ec-growth"))?;
    let mut t = Table::new(&["n", "card", "m", "l", "mode", "ratio"]);
    for p in pts {
        let s = p.structure;
        t.push(vec![
            p.n.into(),
            s.card.into(),
            s.m.into(),
            s.l.into(),
            mode_name(s.mode).into(),
            p.ratio.into(),
        ]);
    }
    Ok(Output::Table(t))
}

/// Second curve of a pair: its own spec, new coefficients over the first
/// curve's field, or the quadratic twist of the first.
#[derive(Clone, Debug, Default)]
pub struct PairInput {
    pub first: CurveInput,
    pub spec2: Option<String>,
    pub a2: Option<i64>,
    pub b2: Option<i64>,
    pub twist: bool,
}

impl PairInput {
    pub fn curves(&self) -> Result<(EllipticCurve, EllipticCurve), CliError> {
        let spec = self.first.resolve()?;
        let e1 = spec.curve().map_err(CliError::at("build curve"))?;
        let e2 = match (&self.spec2, self.a2, self.b2, self.twist) {
            (Some(s), None, None, false) => parse_curve_spec(s)
                .map_err(CliError::at("parse curve"))?
                .curve()
                .map_err(CliError::at("build curve"))?,
            (None, Some(a), Some(b), false) => CurveSpec { a, b, ..spec }
                .curve()
                .map_err(CliError::at("build curve"))?,
            (None, None, None, true) => e1.quadratic_twist().map_err(CliError::at("twist"))?,
            _ => {
                return Err(CliError::usage(
                    "give the second curve as --curve2, as --a2 and --b2, or with --twist".into(),
                ))
            }
        };
        Ok((e1, e2))
    }

    pub fn traces(&self) -> Result<(TraceSequence, TraceSequence), CliError> {
        let (e1, e2) = self.curves()?;
        let t1 = TraceSequence::of_curve(&e1).map_err(CliError::at("trace"))?;
        let t2 = TraceSequence::of_curve(&e2).map_err(CliError::at("trace"))?;
        Ok((t1, t2))
    }
}

/// Traces given directly, bypassing point counting.
#[derive(Clone, Copy, Debug, Default)]
pub struct TraceInput {
    pub t1: Option<i64>,
    pub t2: Option<i64>,
    pub q: Option<u64>,
}

pub fn ec_gcd(
    pair: &PairInput,
    traces: &TraceInput,
    range: (Option<u64>, Option<u64>),
    cfg: &RunConfig,
) -> Result<Output, CliError> {
    let (ts1, ts2) = match (traces.t1, traces.t2, traces.q) {
        (Some(t1), Some(t2), Some(q)) => (TraceSequence::new(t1, q), TraceSequence::new(t2, q)),
        (None, None, None) => pair.traces()?,
        _ => return Err(CliError::usage("--t1, --t2 and --q go together".into())),
    };
    let series = gcd_orders_experiment(&ts1, &ts2, cfg.n_max).map_err(CliError::at("ec-gcd"))?;
    let c1 = ts1.cards(cfg.n_max);
    let c2 = ts2.cards(cfg.n_max);
    let mut t = Table::new(&["n", "card1", "card2", "gcd", "log_gcd"]);
    for (i, p) in series.points.iter().enumerate() {
        t.push(vec![
            p.n.into(),
            c1[i].clone().into(),
            c2[i].clone().into(),
            p.gcd.clone().into(),
            real(p.log_gcd),
        ]);
    }
    t.note("log_q", (ts1.q as f64).ln());
    add_fit(&mut t, &series, range);
    Ok(Output::Table(t))
}

pub fn ec_isogeny(pair: &PairInput) -> Result<Output, CliError> {
    let (e1, e2) = pair.curves()?;
    if e1.field() != e2.field() {
        return Err(CliError::usage("the curves must share a field".into()));
    }
    let t1 = trace(&e1).map_err(CliError::at("trace"))?;
    let t2 = trace(&e2).map_err(CliError::at("trace"))?;
    let closure = closure_exponent(&TraceSequence::new(t1, e1.q()), &TraceSequence::new(t2, e2.q()));
    let mut t = Table::new(&["t1", "t2", "isogenous", "closure_exponent"]);
    t.push(vec![
        t1.into(),
        t2.into(),
        (if t1 == t2 { "true" } else { "false" }).into(),
        closure.into(),
    ]);
    Ok(Output::Table(t))
}
