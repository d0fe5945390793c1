//! Result tables shared by the command-line tool and the browser demo.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::alpha::AlphaSequence;
use crate::bigcomplex::{float_to_f64, BigComplex, Precision};
use crate::construct::{build_polynomial, scaled_integer_coefficients, PolynomialRealization};
use crate::error::{Error, Result};
use crate::format::{Cell, Kind, Table, TermComparison};
use crate::polylog::{family_table, ZetaConvergenceRecord};
use crate::roots::{find_roots, RootMultiset, RootSolveConfig};
use crate::scalar::{Backend, Coeff, ComplexFloat};
use crate::verify::{error_matrix, verification_table, ErrorMatrix, PowerSumReport, VerificationTable, AGREEMENT_THRESHOLD};

/// Decimal text of an extended-precision value, all stored digits.
pub fn big_text(x: &BigFloat) -> String {
    x.to_string().replace(".e", ".0e")
}

/// A value rendered as one or two cells (`re`, `im`).
trait Cells: Coeff {
    fn value_cells(&self) -> Vec<Cell>;
    fn value_columns(base: &str) -> Vec<String>;
}

impl Cells for BigRational {
    fn value_cells(&self) -> Vec<Cell> {
        vec![Cell::rational(self)]
    }
    fn value_columns(base: &str) -> Vec<String> {
        vec![base.to_string()]
    }
}

impl Cells for Complex64 {
    fn value_cells(&self) -> Vec<Cell> {
        vec![Cell::Float(self.re), Cell::Float(self.im)]
    }
    fn value_columns(base: &str) -> Vec<String> {
        vec![format!("{base}_re"), format!("{base}_im")]
    }
}

impl Cells for BigComplex {
    fn value_cells(&self) -> Vec<Cell> {
        vec![Cell::Text(big_text(self.re())), Cell::Text(big_text(self.im()))]
    }
    fn value_columns(base: &str) -> Vec<String> {
        Complex64::value_columns(base)
    }
}

fn table_with(kind: Kind, columns: Vec<String>) -> Table {
    let cols: Vec<&str> = columns.iter().map(String::as_str).collect();
    Table::new(kind, &cols)
}

fn coefficient_rows<C: Cells>(real: &PolynomialRealization<C>, backend: Backend) -> Table {
    let mut columns = vec!["j".to_string()];
    columns.extend(C::value_columns("a_j"));
    let mut t = table_with(Kind::Coefficients, columns)
        .with_meta("backend", backend)
        .with_meta("n", real.nominal_degree())
        .with_meta("effective_degree", real.effective_degree());
    for (j, a) in real.coeffs().iter().enumerate() {
        let mut row = vec![Cell::from(j)];
        row.extend(a.value_cells());
        t.push(row);
    }
    t
}

/// Rows `(j, a_j)` of `P_n`.
pub fn coefficients(alpha: &AlphaSequence, n: usize, backend: Backend) -> Result<Table> {
    match backend {
        Backend::Rational => Ok(coefficient_rows(&build_polynomial::<BigRational>(alpha, n, ())?, backend)),
        Backend::Complex64 => Ok(coefficient_rows(&build_polynomial::<Complex64>(alpha, n, ())?, backend)),
        Backend::BigComplex { precision_bits } => {
            let prec = Precision::new(precision_bits)?;
            Ok(coefficient_rows(&build_polynomial::<BigComplex>(alpha, n, prec)?, backend))
        }
    }
}

/// Grid cell of a power sum: exact text, or the real part when the
/// imaginary part is below the agreement threshold.
fn grid_cell<C: Coeff + GridValue>(v: &C) -> Cell {
    v.grid_cell()
}

trait GridValue {
    fn grid_cell(&self) -> Cell;
}

impl GridValue for BigRational {
    fn grid_cell(&self) -> Cell {
        Cell::rational(self)
    }
}

fn complex_grid_cell(z: Complex64) -> Cell {
    if z.im.abs() <= AGREEMENT_THRESHOLD * z.re.abs().max(1.0) {
        Cell::Float(z.re)
    } else {
        Cell::Text(format!("{}{:+}i", crate::format::float_text(z.re), z.im))
    }
}

impl GridValue for Complex64 {
    fn grid_cell(&self) -> Cell {
        complex_grid_cell(*self)
    }
}

impl GridValue for BigComplex {
    fn grid_cell(&self) -> Cell {
        let z = self.to_c64();
        if z.im.abs() <= AGREEMENT_THRESHOLD * z.re.abs().max(1.0) {
            Cell::Text(big_text(self.re()))
        } else {
            complex_grid_cell(z)
        }
    }
}

fn grid_rows<C: Coeff + GridValue>(reports: &[PowerSumReport<C>], table: &mut Table) {
    for r in reports {
        let mut row = vec![Cell::from(r.n)];
        row.extend(r.values.iter().map(grid_cell));
        let exact = (1..=r.n.min(r.k_max)).all(|k| r.matches(k));
        row.push(Cell::Bool(exact));
        table.push(row);
    }
}

/// Power sums `p_{-k}` of each `P_n`, one row per `n`. The `exact` column
/// says whether every `k <= n` entry reproduces its target: by identity in
/// the rational backend, within `1e-8` otherwise.
pub fn verification(
    alpha: &AlphaSequence,
    n_list: &[usize],
    k_max: usize,
    backend: Backend,
    cfg: &RootSolveConfig,
) -> Result<Table> {
    let mut columns = vec!["n".to_string()];
    columns.extend((1..=k_max).map(|k| format!("p_{k}")));
    columns.push("exact".into());
    let mut t = table_with(Kind::Verification, columns).with_meta("backend", backend);
    match verification_table(alpha, n_list, k_max, backend, cfg)? {
        VerificationTable::Rational(r) => grid_rows(&r, &mut t),
        VerificationTable::Complex64(r) => grid_rows(&r, &mut t),
        VerificationTable::BigComplex(r) => grid_rows(&r, &mut t),
    }
    Ok(t)
}

fn float_backend(backend: Backend, what: &str) -> Result<()> {
    if backend.is_float() {
        Ok(())
    } else {
        Err(Error::Backend(format!("{what} needs a floating backend (complex64 or bigcomplex)")))
    }
}

fn root_rows<C: ComplexFloat + Cells>(
    alpha: &AlphaSequence,
    n_list: &[usize],
    ctx: C::Ctx,
    cfg: &RootSolveConfig,
    t: &mut Table,
) -> Result<()> {
    for &n in n_list {
        let tag = |e| Error::AtDegree { n, source: Box::new(e) };
        let real = build_polynomial::<C>(alpha, n, ctx).map_err(tag)?;
        let rm: RootMultiset<C> = find_roots(&real, cfg).map_err(tag)?;
        for ((z, m), res) in rm.roots().iter().zip(rm.multiplicities()).zip(rm.residuals()) {
            let mut row = vec![Cell::from(n)];
            row.extend(z.value_cells());
            row.push(Cell::from(*m));
            row.push(Cell::Float(*res));
            t.push(row);
        }
    }
    Ok(())
}

/// Rows `(n, re, im, multiplicity, residual)` for every `n` in `n_list`.
pub fn roots(alpha: &AlphaSequence, n_list: &[usize], backend: Backend, cfg: &RootSolveConfig) -> Result<Table> {
    float_backend(backend, "root extraction")?;
    cfg.validate()?;
    let mut t = Table::new(Kind::Roots, &["n", "re", "im", "multiplicity", "residual"]).with_meta("backend", backend);
    match backend {
        Backend::Complex64 => root_rows::<Complex64>(alpha, n_list, (), cfg, &mut t)?,
        Backend::BigComplex { precision_bits } => {
            root_rows::<BigComplex>(alpha, n_list, Precision::new(precision_bits)?, cfg, &mut t)?
        }
        Backend::Rational => unreachable!(),
    }
    Ok(t)
}

/// The error matrix and its `(n, k, log10_error)` triples.
pub fn heatmap(
    alpha: &AlphaSequence,
    n_max: usize,
    k_max: usize,
    backend: Backend,
    cfg: &RootSolveConfig,
) -> Result<(Table, ErrorMatrix)> {
    float_backend(backend, "the error heatmap")?;
    let m = match backend {
        Backend::Complex64 => error_matrix::<Complex64>(alpha, n_max, k_max, (), cfg)?,
        Backend::BigComplex { precision_bits } => {
            error_matrix::<BigComplex>(alpha, n_max, k_max, Precision::new(precision_bits)?, cfg)?
        }
        Backend::Rational => unreachable!(),
    };
    let mut t = Table::new(Kind::Heatmap, &["n", "k", "log10_error"]).with_meta("backend", backend);
    for n in 1..=n_max {
        for k in 1..=k_max {
            t.push(vec![n.into(), k.into(), m.get(n, k).into()]);
        }
    }
    Ok((t, m))
}

/// `b_j = j! a_j` for `alpha_k = k^(1-s)`, `j = 0..=count`.
pub fn integer_sequence(s: i64, count: usize) -> Result<Vec<BigInt>> {
    if s > 0 {
        return Err(Error::Domain(format!("integer sequences need s <= 0, got s = {s}")));
    }
    let real = build_polynomial::<BigRational>(&AlphaSequence::polylog(s as f64), count, ())?;
    scaled_integer_coefficients(&real)
}

pub fn sequence_table(s: i64, values: &[BigInt]) -> Table {
    let mut t = Table::new(Kind::Sequence, &["j", "b_j"]).with_meta("s", s);
    for (j, b) in values.iter().enumerate() {
        t.push(vec![j.into(), Cell::Text(b.to_string())]);
    }
    t
}

pub fn bfile_table(s: i64, comparisons: &[TermComparison]) -> Table {
    let mut t = Table::new(Kind::Sequence, &["j", "b_j", "reference", "status"]).with_meta("s", s);
    for c in comparisons {
        t.push(vec![
            c.index.into(),
            Cell::Text(c.computed.to_string()),
            c.reference.as_ref().map_or(Cell::Empty, |r| Cell::Text(r.to_string())),
            c.status.name().into(),
        ]);
    }
    t
}

/// The polylogarithm family for `s = -3..=3` through `x^4`.
pub fn table1() -> Result<Table> {
    let mut t = Table::new(
        Kind::Table1,
        &["s", "alpha_k", "generating_function", "a_0", "a_1", "a_2", "a_3", "a_4"],
    );
    for row in family_table(-3..=3, 4)? {
        let mut cells = vec![Cell::Int(row.s), row.alpha_label.into(), row.generating_label.into()];
        cells.extend(row.coeffs.iter().map(Cell::rational));
        t.push(cells);
    }
    Ok(t)
}

pub fn zeta_table(rec: &ZetaConvergenceRecord, precision_bits: u32) -> Table {
    let mut t = Table::new(Kind::Zeta, &["n", "P_n(1)", "target", "deviation"])
        .with_meta("s", crate::format::float_text(rec.s))
        .with_meta("bits", precision_bits);
    for r in &rec.rows {
        t.push(vec![
            r.n.into(),
            Cell::Text(big_text(&r.value)),
            Cell::Text(big_text(&rec.target)),
            Cell::Float(float_to_f64(&r.deviation)),
        ]);
    }
    t
}

/// A matplotlib script drawing the heatmap CSV at `csv_path`.
pub fn heatmap_plot_script(csv_path: &str) -> String {
    format!(
        r##"#!/usr/bin/env python3
# Reads the (n, k, log10_error) triples written by `plethys heatmap`.
import csv
import math

import matplotlib.pyplot as plt
import numpy as np

PATH = {csv_path:?}

rows = []
with open(PATH) as fh:
    for line in fh:
        if line.startswith("#"):
            continue
        rows.append(line)
reader = csv.DictReader(rows)
cells = [(int(r["n"]), int(r["k"]), float(r["log10_error"])) for r in reader]
n_max = max(c[0] for c in cells)
k_max = max(c[1] for c in cells)
grid = np.full((n_max, k_max), np.nan)
for n, k, e in cells:
    grid[n - 1, k - 1] = e if not math.isnan(e) else np.nan

fig, ax = plt.subplots(figsize=(6, 5))
im = ax.imshow(grid, origin="lower", aspect="auto", cmap="viridis",
               extent=(0.5, k_max + 0.5, 0.5, n_max + 0.5))
ax.plot([1, min(n_max, k_max)], [1, min(n_max, k_max)], color="white", lw=0.8)
ax.set_xlabel("k")
ax.set_ylabel("n")
fig.colorbar(im, ax=ax, label="log10 |p_(-k) - alpha_k|")
fig.tight_layout()
fig.savefig(PATH.rsplit(".", 1)[0] + ".png", dpi=150)
"##
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::OutputFormat;

    #[test]
    fn coefficient_table_layouts() {
        let a = AlphaSequence::polylog(0.0);
        let t = coefficients(&a, 5, Backend::Rational).unwrap();
        assert_eq!(t.rows.last().unwrap()[1], Cell::Text("19/120".into()));
        let t = coefficients(&a, 2, Backend::Complex64).unwrap();
        assert_eq!(t.columns, ["j", "a_j_re", "a_j_im"]);
        let t = coefficients(&a, 2, Backend::big(128).unwrap()).unwrap();
        assert_eq!(t.rows[0][1], Cell::Text("1.0e+0".into()));
    }

    #[test]
    fn verification_grid() {
        let t = verification(
            &AlphaSequence::explicit_integers(&[1]),
            &[1],
            4,
            Backend::Rational,
            &RootSolveConfig::default(),
        )
        .unwrap();
        assert_eq!(t.columns, ["n", "p_1", "p_2", "p_3", "p_4", "exact"]);
        let want: Vec<Cell> = vec![1usize.into(), "1".into(), "1".into(), "1".into(), "1".into(), true.into()];
        assert_eq!(t.rows, vec![want]);
    }

    #[test]
    fn roots_need_float_backend() {
        let a = AlphaSequence::explicit_integers(&[1]);
        assert!(matches!(
            roots(&a, &[1], Backend::Rational, &RootSolveConfig::default()),
            Err(Error::Backend(_))
        ));
        let t = roots(&a, &[1], Backend::Complex64, &RootSolveConfig::default()).unwrap();
        assert_eq!(t.to_csv(), "# plethys:roots:1\n# backend=complex64\nn,re,im,multiplicity,residual\n1,1.0,0.0,1,0.0\n");
    }

    #[test]
    fn sequences() {
        let b = integer_sequence(0, 5).unwrap();
        let want: Vec<BigInt> = [1, -1, -1, -1, 1, 19].into_iter().map(BigInt::from).collect();
        assert_eq!(b, want);
        assert!(matches!(integer_sequence(1, 5), Err(Error::Domain(_))));
    }

    #[test]
    fn table1_renders() {
        let csv = table1().unwrap().render(OutputFormat::Csv);
        assert!(csv.contains("\n3,1/k^2,Li_3(x),1,-1,3/8,-17/216,29/3456\n"), "{csv}");
        assert!(csv.contains("\n-3,k^4,x(1+4x+x^2)/(1-x)^4,1,-1,-15/2,-115/6,-215/24\n"), "{csv}");
    }
}
