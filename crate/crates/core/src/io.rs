//! Text formats: integer matrices and curve specifications.
//!
//! A matrix file holds one row per line, entries separated by whitespace or
//! commas. An optional first line with a single integer gives the dimension.
//! Text after `#` is ignored.

use std::fmt::Write;

use num_bigint::BigInt;

use crate::ec::EllipticCurve;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

fn parse_row(line: &str) -> Result<Vec<BigInt>> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<Matrix<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .filter(|l| !l.trim().is_empty())
        .map(parse_row)
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix".into()));
    }
    if rows.len() > 1 && rows[0].len() == 1 {
        let d: usize = rows[0][0]
            .to_string()
            .parse()
            .map_err(|_| Error::Parse("bad dimension header".into()))?;
        rows.remove(0);
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::Parse(format!("expected {d} rows of {d} entries")));
        }
    }
    let d = rows.len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::Parse(
            "matrix must be square with equal row lengths".into(),
        ));
    }
    Matrix::from_rows(rows)
}

pub fn format_matrix(m: &Matrix<BigInt>) -> String {
    let mut s = format!("{}\n", m.nrows());
    for row in m.rows_iter() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(s, "{}", cells.join(" ")).expect("write to string");
    }
    s
}

/// Curve given as `p^k:a,b` (or `p:a,b`) with integer coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u64,
    pub k: u32,
    pub a: i64,
    pub b: i64,
}

impl CurveSpec {
    pub fn curve(&self) -> Result<EllipticCurve> {
        EllipticCurve::from_ints(self.p, self.k, self.a, self.b)
    }
}

impl std::fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}:{},{}", self.p, self.k, self.a, self.b)
    }
}

pub fn parse_curve_spec(s: &str) -> Result<CurveSpec> {
    let bad = || Error::Parse(format!("curve spec {s:?} is not of the form p^k:a,b"));
    let (field, coeffs) = s.trim().split_once(':').ok_or_else(bad)?;
    let (p, k) = match field.split_once('^') {
        Some((p, k)) => (p, k),
        None => (field, "1"),
    };
    let (a, b) = coeffs.split_once(',').ok_or_else(bad)?;
    Ok(CurveSpec {
        p: p.trim().parse().map_err(|_| bad())?,
        k: k.trim().parse().map_err(|_| bad())?,
        a: a.trim().parse().map_err(|_| bad())?,
        b: b.trim().parse().map_err(|_| bad())?,
    })
}
