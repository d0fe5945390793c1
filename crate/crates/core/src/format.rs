//! Tagged CSV/JSON tables, α files and OEIS b-files.
//!
//! Every emitted file starts with a tag naming what it holds, `# plethys:<kind>:1`
//! in CSV and `"kind": "plethys:<kind>:1"` in JSON. Readers of α files check
//! the tag, so a coefficient table cannot be fed back as targets by mistake.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::alpha::AlphaSequence;
use crate::bigcomplex::{float_from_rational, BigComplex, Precision};
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, rational_to_f64, Backend, CoefficientScalar};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Alphas,
    Coefficients,
    Verification,
    Roots,
    Heatmap,
    Sequence,
    Table1,
    Zeta,
    Check,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Alphas,
        Kind::Coefficients,
        Kind::Verification,
        Kind::Roots,
        Kind::Heatmap,
        Kind::Sequence,
        Kind::Table1,
        Kind::Zeta,
        Kind::Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Alphas => "alphas",
            Kind::Coefficients => "coefficients",
            Kind::Verification => "verification",
            Kind::Roots => "roots",
            Kind::Heatmap => "heatmap",
            Kind::Sequence => "sequence",
            Kind::Table1 => "table1",
            Kind::Zeta => "zeta",
            Kind::Check => "check",
        }
    }

    pub fn tag(self) -> String {
        format!("plethys:{}:{FORMAT_VERSION}", self.name())
    }

    /// Parses `plethys:<kind>:<version>`.
    pub fn from_tag(tag: &str) -> Result<Kind> {
        let mut parts = tag.trim().splitn(3, ':');
        let (Some("plethys"), Some(name), Some(version)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::input(format!("not a plethys file tag: {tag:?}")));
        };
        if version.trim() != FORMAT_VERSION.to_string() {
            return Err(Error::input(format!("unsupported format version {version:?}")));
        }
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::input(format!("unknown file kind {name:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    /// Exact or preformatted values, e.g. `"19/120"`.
    Text(String),
    Float(f64),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn rational(q: &BigRational) -> Cell {
        Cell::Text(format_rational(q))
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => csv_escape(s),
            Cell::Float(x) => float_text(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Float(x) if x.is_finite() => json!(x + 0.0),
            Cell::Float(_) | Cell::Empty => Value::Null,
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest round-trip decimal; non-finite values as `nan`, `inf`, `-inf`.
pub fn float_text(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else if x == 0.0 {
        "0.0".into()
    } else {
        format!("{x:?}")
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: Kind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra `key: value` pairs, `# key=value` lines in CSV.
    pub meta: Vec<(String, String)>,
}

impl Table {
    pub fn new(kind: Kind, columns: &[&str]) -> Self {
        Table {
            kind,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# {}\n", self.kind.tag());
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let meta: serde_json::Map<String, Value> =
            self.meta.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let doc = json!({
            "kind": self.kind.tag(),
            "meta": meta,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// A target value as written, before a backend is chosen.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaEntry {
    pub re: BigRational,
    pub im: BigRational,
}

impl AlphaEntry {
    pub fn real(re: BigRational) -> Self {
        AlphaEntry {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Real entries stay exact; complex ones become floats of the target
    /// backend, which the rational backend cannot hold.
    pub fn to_scalar(&self, backend: Backend) -> Result<CoefficientScalar> {
        if self.is_real() {
            return Ok(CoefficientScalar::Rational(self.re.clone()));
        }
        match backend {
            Backend::Rational => Err(Error::Backend(format!(
                "complex target {} is not representable in the rational backend",
                self.render()
            ))),
            Backend::Complex64 => Ok(CoefficientScalar::Complex64(Complex64::new(
                rational_to_f64(&self.re),
                rational_to_f64(&self.im),
            ))),
            Backend::BigComplex { precision_bits } => {
                let prec = Precision::new(precision_bits)?;
                Ok(CoefficientScalar::BigComplex(BigComplex::new(
                    float_from_rational(&self.re, prec.bits()),
                    float_from_rational(&self.im, prec.bits()),
                    prec,
                )))
            }
        }
    }

    fn render(&self) -> String {
        if self.is_real() {
            format_rational(&self.re)
        } else {
            format!("{}{}{}i", format_rational(&self.re), if self.im.is_negative() { "" } else { "+" }, format_rational(&self.im))
        }
    }
}

/// Builds an explicit sequence for `backend`.
pub fn alpha_sequence(entries: &[AlphaEntry], backend: Backend) -> Result<AlphaSequence> {
    Ok(AlphaSequence::Explicit(
        entries.iter().map(|e| e.to_scalar(backend)).collect::<Result<_>>()?,
    ))
}

fn json_number(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::input(format!("{what}: expected a number, got {other}"))),
    }
}

fn json_entry(v: &Value, index: usize) -> Result<AlphaEntry> {
    let what = format!("alpha entry {}", index + 1);
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(AlphaEntry {
            re: json_number(&pair[0], &what)?,
            im: json_number(&pair[1], &what)?,
        }),
        Value::Object(map) => {
            let re = map.get("re").ok_or_else(|| Error::input(format!("{what}: missing \"re\"")))?;
            let im = map.get("im").map_or(Ok(BigRational::zero()), |im| json_number(im, &what))?;
            Ok(AlphaEntry {
                re: json_number(re, &what)?,
                im,
            })
        }
        other => Ok(AlphaEntry::real(json_number(other, &what)?)),
    }
}

/// Parses an inline list such as `[1, "1/3", 0.5, [0, 1], {"re": 1, "im": -2}]`.
/// Decimal literals are read exactly as written.
pub fn parse_inline_alphas(text: &str) -> Result<Vec<AlphaEntry>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::input(format!("alpha list is not valid JSON: {e}")))?;
    let Value::Array(items) = v else {
        return Err(Error::input("alpha list must be a JSON array"));
    };
    items.iter().enumerate().map(|(i, v)| json_entry(v, i)).collect()
}

/// An α table with columns `k, re, im`.
pub fn alphas_table(entries: &[AlphaEntry]) -> Table {
    let mut t = Table::new(Kind::Alphas, &["k", "re", "im"]);
    for (i, e) in entries.iter().enumerate() {
        t.push(vec![(i + 1).into(), Cell::rational(&e.re), Cell::rational(&e.im)]);
    }
    t
}

/// Reads a tagged α file in CSV or JSON. Files of any other kind are rejected.
pub fn parse_alpha_file(text: &str) -> Result<Vec<AlphaEntry>> {
    if text.trim_start().starts_with('{') {
        parse_alpha_json(text)
    } else {
        parse_alpha_csv(text)
    }
}

fn expect_alphas(kind: Kind) -> Result<()> {
    if kind == Kind::Alphas {
        Ok(())
    } else {
        Err(Error::input(format!(
            "expected an alphas file, found kind {:?}; coefficient and report files are not targets",
            kind.name()
        )))
    }
}

fn parse_alpha_json(text: &str) -> Result<Vec<AlphaEntry>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::input(format!("invalid JSON: {e}")))?;
    let tag = doc
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::input("JSON file has no \"kind\" tag"))?;
    expect_alphas(Kind::from_tag(tag)?)?;
    let rows = doc
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::input("alphas file has no \"rows\" array"))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let cells = row.as_array().filter(|c| c.len() == 3).ok_or_else(|| {
                Error::input(format!("row {}: expected [k, re, im]", i + 1))
            })?;
            check_index(cells[0].as_u64().map(|k| k as usize), i)?;
            json_entry(&Value::Array(cells[1..].to_vec()), i)
        })
        .collect()
}

fn check_index(k: Option<usize>, i: usize) -> Result<()> {
    if k == Some(i + 1) {
        Ok(())
    } else {
        Err(Error::input(format!("row {}: expected k = {}", i + 1, i + 1)))
    }
}

fn parse_alpha_csv(text: &str) -> Result<Vec<AlphaEntry>> {
    let mut lines = text.lines();
    let first = lines.next().unwrap_or_default();
    let tag = first
        .strip_prefix('#')
        .ok_or_else(|| Error::input("file does not start with a \"# plethys:<kind>:1\" tag"))?;
    expect_alphas(Kind::from_tag(tag)?)?;
    let mut body = lines.filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = body.next().ok_or_else(|| Error::input("alphas file has no header row"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != ["k", "re", "im"] {
        return Err(Error::input(format!("alphas header must be k,re,im, found {header:?}")));
    }
    body.enumerate()
        .map(|(i, line)| {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != 3 {
                return Err(Error::input(format!("row {}: expected 3 fields", i + 1)));
            }
            check_index(cells[0].parse().ok(), i)?;
            let im = if cells[2].is_empty() {
                BigRational::zero()
            } else {
                parse_rational(cells[2])?
            };
            Ok(AlphaEntry {
                re: parse_rational(cells[1])?,
                im,
            })
        })
        .collect()
}

/// Whitespace-separated `index value` lines; `#` comments and blank lines skipped.
pub fn parse_bfile(text: &str) -> Result<Vec<(usize, BigInt)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::input(format!("b-file line {}: expected \"index value\", got {line:?}", lineno + 1));
        let mut parts = line.split_whitespace();
        let (Some(i), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        out.push((i.parse().map_err(|_| bad())?, v.parse().map_err(|_| bad())?));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermStatus {
    Match,
    /// The reference equals the negated value.
    SignFlip,
    Mismatch,
    /// The b-file has no term at this index.
    Missing,
}

impl TermStatus {
    pub fn name(self) -> &'static str {
        match self {
            TermStatus::Match => "match",
            TermStatus::SignFlip => "sign-flip",
            TermStatus::Mismatch => "mismatch",
            TermStatus::Missing => "missing",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermComparison {
    pub index: usize,
    pub computed: BigInt,
    pub reference: Option<BigInt>,
    pub status: TermStatus,
}

/// Compares `computed[j]` with the b-file term of index `j + offset`.
pub fn compare_bfile(computed: &[BigInt], bfile: &[(usize, BigInt)], offset: usize) -> Vec<TermComparison> {
    computed
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let index = j + offset;
            let reference = bfile.iter().find(|(i, _)| *i == index).map(|(_, v)| v.clone());
            let status = match &reference {
                None => TermStatus::Missing,
                Some(r) if r == c => TermStatus::Match,
                Some(r) if !r.is_zero() && *r == -c => TermStatus::SignFlip,
                Some(_) => TermStatus::Mismatch,
            };
            TermComparison {
                index,
                computed: c.clone(),
                reference,
                status,
            }
        })
        .collect()
}
