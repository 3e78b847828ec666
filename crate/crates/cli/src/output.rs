//! Tables rendered as CSV or JSON. Reals carry 12 significant digits and
//! integers are written exactly.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(BigInt),
    Real(f64),
    Text(String),
    Empty,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v.into())
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// `x` with 12 significant digits: positional for moderate exponents,
/// scientific otherwise.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{m}e{exp}");
    }
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(x) => fmt_real(*x),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn json(&self) -> Value {
        match self {
            Cell::Int(v) => v
                .to_i64()
                .map_or_else(|| Value::String(v.to_string()), Value::from),
            Cell::Real(x) => fmt_real(*x).parse::<f64>().map_or(Value::Null, Value::from),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

/// A table plus named summary values such as fitted slopes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Table::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    pub fn csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    /// Summary lines for stderr in CSV mode.
    pub fn summary_lines(&self) -> String {
        self.summary
            .iter()
            .map(|(k, v)| format!("# {k}={}\n", v.csv()))
            .collect()
    }

    pub fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        json!({ "columns": self.columns, "rows": rows, "summary": summary })
    }
}

/// What a command produced.
pub enum Output {
    Table(Table),
    Document(Value),
}

impl Output {
    /// Text for stdout and stderr.
    pub fn render(&self, format: Format) -> (String, String) {
        match (self, format) {
            (Output::Table(t), Format::Csv) => (t.csv(), t.summary_lines()),
            (Output::Table(t), Format::Json) => (pretty(&t.json()), String::new()),
            (Output::Document(v), _) => (pretty(v), String::new()),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_have_twelve_digits() {
        assert_eq!(fmt_real(std::f64::consts::PI), "3.14159265359");
        assert_eq!(fmt_real(1.0), "1");
        assert_eq!(fmt_real(-0.5), "-0.5");
        assert_eq!(fmt_real(1.0986122886681098), "1.09861228867");
        assert_eq!(fmt_real(1.5e-9), "1.5e-9");
        assert_eq!(fmt_real(123456.0), "123456");
        assert_eq!(fmt_real(2.5e14), "2.5e14");
        for x in [0.1, 7.25, 1e-3, 98765.4321, -3.3e-7] {
            let back: f64 = fmt_real(x).parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs());
        }
    }

    #[test]
    fn csv_and_json_shapes() {
        let mut t = Table::new(&["n", "gcd", "log_gcd", "note"]);
        t.push(vec![
            1u64.into(),
            BigInt::from(10).pow(30).into(),
            0.5.into(),
            "a,b".into(),
        ]);
        t.push(vec![2u64.into(), Cell::Empty, Cell::Empty, "x".into()]);
        t.note("slope", 0.25);
        assert_eq!(
            t.csv(),
            "n,gcd,log_gcd,note\n1,1000000000000000000000000000000,0.5,\"a,b\"\n2,,,x\n"
        );
        assert_eq!(t.summary_lines(), "# slope=0.25\n");
        let j = t.json();
        assert_eq!(
            j["rows"][0][1],
            Value::String("1000000000000000000000000000000".into())
        );
        assert_eq!(j["rows"][1][1], Value::Null);
        assert_eq!(j["summary"]["slope"], json!(0.25));
    }
}
