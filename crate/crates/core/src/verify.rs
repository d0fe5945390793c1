//! Independent checks that the roots of `P_n` realize the targets.
//!
//! Two routes compute the negative power sums `p_{-k} = sum_i rho_i^{-k}`:
//! from extracted roots ([`power_sums_from_roots`]) and, without any root
//! extraction, from Newton's identities on the reversed polynomial
//! ([`power_sums_newton`]). [`log_series_check`] compares `log P_n` against
//! `-alpha_k / k` coefficient by coefficient.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::alpha::AlphaSequence;
use crate::bigcomplex::{BigComplex, Precision};
use crate::construct::{build_polynomial, PolynomialRealization};
use crate::error::{Error, Result};
use crate::roots::{find_roots, RootMultiset, RootSolveConfig};
use crate::scalar::{Backend, Coeff, ComplexFloat};

/// Deviations below this are treated as agreement in floating backends.
pub const AGREEMENT_THRESHOLD: f64 = 1e-8;

/// log10 value stored for deviations below `10^ERROR_FLOOR` (or exact zeros).
pub const ERROR_FLOOR: f64 = -16.0;

/// `sum_i m_i rho_i^{-k}` for `k = 1..=k_max`, by repeated multiplication
/// of the reciprocals.
pub fn power_sums_from_roots<C: ComplexFloat>(
    rm: &RootMultiset<C>,
    k_max: usize,
    ctx: C::Ctx,
) -> Vec<C> {
    let one = C::one(ctx);
    let recips: Vec<C> = rm.roots().iter().map(|r| one.div(r)).collect();
    let mut powers = recips.clone();
    let mut sums = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let mut s = C::zero(ctx);
        for ((p, m), r) in powers.iter_mut().zip(rm.multiplicities()).zip(&recips) {
            s = s.add(&p.mul_int(*m as i64));
            *p = p.mul(r);
        }
        sums.push(s);
    }
    sums
}

/// Negative power sums of the roots of `P`, root-free.
///
/// The reversed polynomial `Q(y) = sum_j a_j y^(d-j)` is monic with roots
/// `1/rho_i` and elementary symmetric functions `e_j = (-1)^j a_j`, so
/// Newton's identities `p_k = sum_{i<k} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k`
/// become `p_k = -sum_{i<k} a_i p_{k-i} - k a_k` with `a_j = 0` for `j > d`.
pub fn power_sums_newton<C: Coeff>(real: &PolynomialRealization<C>, k_max: usize) -> Vec<C> {
    let d = real.effective_degree();
    let a = &real.coeffs()[..=d];
    let ctx = a[0].ctx();
    let mut p: Vec<C> = Vec::with_capacity(k_max + 1);
    p.push(C::zero(ctx));
    for k in 1..=k_max {
        let mut s = if k <= d { a[k].mul_int(k as i64) } else { C::zero(ctx) };
        for i in 1..k.min(d + 1) {
            s = s.add(&a[i].mul(&p[k - i]));
        }
        p.push(s.neg());
    }
    p.remove(0);
    p
}

/// Outcome of comparing `log P_n` with `-alpha_k / k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogSeriesCheck {
    pub passed: bool,
    /// Smallest `k` whose coefficient disagrees.
    pub first_failure: Option<usize>,
}

pub fn log_series_check(
    real: &PolynomialRealization<BigRational>,
    alpha: &AlphaSequence,
) -> Result<LogSeriesCheck> {
    let n = real.nominal_degree();
    let log = real.poly().log()?;
    for k in 1..=n {
        let target: BigRational = alpha.term(k, ())?;
        if log.coeff(k) != &(-target / BigRational::from_integer(k.into())) {
            return Ok(LogSeriesCheck {
                passed: false,
                first_failure: Some(k),
            });
        }
    }
    Ok(LogSeriesCheck {
        passed: true,
        first_failure: None,
    })
}

/// Power sums of one `P_n` against the targets, `k = 1..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSumReport<C> {
    pub n: usize,
    pub k_max: usize,
    /// `values[k - 1] = p_{-k}`.
    pub values: Vec<C>,
    /// `None` where a finite provider has no `alpha_k`.
    pub targets: Vec<Option<C>>,
    /// `|p_{-k} - alpha_k|` (complex modulus).
    pub deviations: Vec<Option<f64>>,
}

impl<C: Coeff> PowerSumReport<C> {
    fn new(n: usize, values: Vec<C>, targets: Vec<Option<C>>) -> Self {
        let deviations = values
            .iter()
            .zip(&targets)
            .map(|(v, t)| t.as_ref().map(|t| v.sub(t).magnitude()))
            .collect();
        PowerSumReport {
            n,
            k_max: values.len(),
            values,
            targets,
            deviations,
        }
    }

    /// Agreement at `k` (1-based): identity in the rational backend,
    /// deviation below [`AGREEMENT_THRESHOLD`] otherwise.
    pub fn matches(&self, k: usize) -> bool {
        let (Some(value), Some(Some(target))) = (self.values.get(k - 1), self.targets.get(k - 1))
        else {
            return false;
        };
        if value.backend().is_float() {
            self.deviations[k - 1].is_some_and(|d| d < AGREEMENT_THRESHOLD)
        } else {
            value == target
        }
    }
}

fn targets_for<C: Coeff>(alpha: &AlphaSequence, k_max: usize, ctx: C::Ctx) -> Result<Vec<Option<C>>> {
    let mut t: Vec<Option<C>> = alpha.available_terms(k_max, ctx)?.into_iter().map(Some).collect();
    t.resize(k_max, None);
    Ok(t)
}

/// Reports for each `n`, exact Newton sums in the rational backend.
pub fn verification_table_exact(
    alpha: &AlphaSequence,
    n_list: &[usize],
    k_max: usize,
) -> Result<Vec<PowerSumReport<BigRational>>> {
    if n_list.is_empty() {
        return Err(Error::input("n_list must not be empty"));
    }
    let targets = targets_for::<BigRational>(alpha, k_max, ())?;
    n_list
        .iter()
        .map(|&n| {
            let real = build_polynomial::<BigRational>(alpha, n, ())?;
            Ok(PowerSumReport::new(n, power_sums_newton(&real, k_max), targets.clone()))
        })
        .collect()
}

/// Reports for each `n` from extracted roots in a floating backend.
pub fn verification_table_roots<C: ComplexFloat>(
    alpha: &AlphaSequence,
    n_list: &[usize],
    k_max: usize,
    ctx: C::Ctx,
    cfg: &RootSolveConfig,
) -> Result<Vec<PowerSumReport<C>>> {
    if n_list.is_empty() {
        return Err(Error::input("n_list must not be empty"));
    }
    let targets = targets_for::<C>(alpha, k_max, ctx)?;
    n_list
        .iter()
        .map(|&n| {
            let real = build_polynomial::<C>(alpha, n, ctx)?;
            let roots = find_roots(&real, cfg)?;
            let values = power_sums_from_roots(&roots, k_max, ctx);
            Ok(PowerSumReport::new(n, values, targets.clone()))
        })
        .collect()
}

/// Reports in whichever backend is requested.
#[derive(Debug, Clone, PartialEq)]
pub enum VerificationTable {
    Rational(Vec<PowerSumReport<BigRational>>),
    Complex64(Vec<PowerSumReport<Complex64>>),
    BigComplex(Vec<PowerSumReport<BigComplex>>),
}

pub fn verification_table(
    alpha: &AlphaSequence,
    n_list: &[usize],
    k_max: usize,
    backend: Backend,
    cfg: &RootSolveConfig,
) -> Result<VerificationTable> {
    match backend {
        Backend::Rational => verification_table_exact(alpha, n_list, k_max).map(VerificationTable::Rational),
        Backend::Complex64 => {
            per_degree::<Complex64>(alpha, n_list, k_max, (), cfg).map(VerificationTable::Complex64)
        }
        Backend::BigComplex { precision_bits } => {
            let prec = Precision::new(precision_bits)?;
            per_degree::<BigComplex>(alpha, n_list, k_max, prec, cfg).map(VerificationTable::BigComplex)
        }
    }
}

/// Like [`verification_table_roots`], tagging a failure with its degree.
fn per_degree<C: ComplexFloat>(
    alpha: &AlphaSequence,
    n_list: &[usize],
    k_max: usize,
    ctx: C::Ctx,
    cfg: &RootSolveConfig,
) -> Result<Vec<PowerSumReport<C>>> {
    if n_list.is_empty() {
        return Err(Error::input("n_list must not be empty"));
    }
    let mut out = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let report = verification_table_roots::<C>(alpha, &[n], k_max, ctx, cfg).map_err(|e| Error::AtDegree {
            n,
            source: Box::new(e),
        })?;
        out.extend(report);
    }
    Ok(out)
}

/// `log10 |p_{-k}^{(n)} - alpha_k|` over `n = 1..=n_max`, `k = 1..=k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorMatrix {
    pub n_max: usize,
    pub k_max: usize,
    /// Row-major, `entries[(n - 1) * k_max + (k - 1)]`; NaN marks a failed
    /// root solve or a missing target.
    pub entries: Vec<f64>,
    /// Degrees whose root solve failed.
    pub failed: Vec<usize>,
}

impl ErrorMatrix {
    pub fn get(&self, n: usize, k: usize) -> f64 {
        self.entries[(n - 1) * self.k_max + (k - 1)]
    }

    /// Largest entry of the `k <= n` triangle (NaN if any entry is NaN).
    pub fn max_lower_triangle(&self) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for n in 1..=self.n_max {
            for k in 1..=n.min(self.k_max) {
                let e = self.get(n, k);
                if e.is_nan() {
                    return f64::NAN;
                }
                worst = worst.max(e);
            }
        }
        worst
    }
}

pub fn clamp_log10(deviation: f64) -> f64 {
    if deviation.is_nan() {
        return f64::NAN;
    }
    if deviation <= 0.0 {
        return ERROR_FLOOR;
    }
    deviation.log10().max(ERROR_FLOOR)
}

pub fn error_matrix<C: ComplexFloat>(
    alpha: &AlphaSequence,
    n_max: usize,
    k_max: usize,
    ctx: C::Ctx,
    cfg: &RootSolveConfig,
) -> Result<ErrorMatrix> {
    cfg.validate()?;
    let targets = targets_for::<C>(alpha, k_max, ctx)?;
    let row = |n: usize| -> Option<Vec<f64>> {
        let real = build_polynomial::<C>(alpha, n, ctx).ok()?;
        let roots = find_roots(&real, cfg).ok()?;
        let sums = power_sums_from_roots(&roots, k_max, ctx);
        Some(
            sums.iter()
                .zip(&targets)
                .map(|(p, t)| t.as_ref().map_or(f64::NAN, |t| clamp_log10(p.sub(t).magnitude())))
                .collect(),
        )
    };

    #[cfg(feature = "parallel")]
    let rows: Vec<Option<Vec<f64>>> = {
        use rayon::prelude::*;
        (1..=n_max).into_par_iter().map(row).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Option<Vec<f64>>> = (1..=n_max).map(row).collect();

    let mut entries = Vec::with_capacity(n_max * k_max);
    let mut failed = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        match r {
            Some(r) => entries.extend(r),
            None => {
                failed.push(i + 1);
                entries.extend(std::iter::repeat_n(f64::NAN, k_max));
            }
        }
    }
    Ok(ErrorMatrix {
        n_max,
        k_max,
        entries,
        failed,
    })
}
