//! The family `alpha_k = k^(1 - s)`, whose log-generating function is the
//! polylogarithm `Li_s(x)`.
//!
//! For `s = -m` the polylogarithm is rational, `Li_{-m}(x) = x A_m(x) / (1 - x)^(m+1)`
//! with `A_m` the Eulerian polynomial. For `s > 1` the values `P_n(1)` tend
//! to `exp(-zeta(s))`; [`zeta_value`] evaluates zeta by Euler–Maclaurin
//! summation, independently of the polynomial machinery.

use astro_float::{BigFloat, RoundingMode};
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alpha::AlphaSequence;
use crate::bigcomplex::{float_from_rational, with_consts, BigComplex, Precision};
use crate::construct::build_polynomial;
use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::series::Series;

const RM: RoundingMode = RoundingMode::ToEven;

/// `A_m(x) = sum_j <m, j> x^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianPolynomial {
    pub m: usize,
    pub coeffs: Vec<BigInt>,
}

impl EulerianPolynomial {
    /// Rendering such as `1+4x+x^2`.
    pub fn label(&self) -> String {
        poly_label(&self.coeffs)
    }
}

fn poly_label(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        let coef = if c.is_one() && j > 0 { String::new() } else { c.to_string() };
        out.push_str(&match j {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{j}"),
        });
    }
    out
}

/// Eulerian numbers from `<m, j> = (j + 1) <m-1, j> + (m - j) <m-1, j-1>`.
pub fn eulerian_polynomial(m: usize) -> EulerianPolynomial {
    let mut row = vec![BigInt::one()];
    for level in 1..=m {
        let width = level;
        let mut next = vec![BigInt::zero(); width];
        for (j, slot) in next.iter_mut().enumerate() {
            let keep = row.get(j).map_or_else(BigInt::zero, |v| v * (j + 1));
            let shift = if j > 0 {
                row.get(j - 1).map_or_else(BigInt::zero, |v| v * (level - j))
            } else {
                BigInt::zero()
            };
            *slot = keep + shift;
        }
        row = next;
    }
    EulerianPolynomial { m, coeffs: row }
}

/// `x A_m(x) / (1 - x)^(m+1)` expanded to `order`.
pub fn polylog_series_closed_form(m: usize, order: usize) -> Series<BigRational> {
    let a = eulerian_polynomial(m);
    // [x^i] (1 - x)^{-(m+1)} = C(i + m, m)
    let coeffs = (0..=order)
        .map(|k| {
            let mut c = BigInt::zero();
            for (j, e) in a.coeffs.iter().enumerate() {
                if k > j {
                    let i = k - 1 - j;
                    c += e * binomial(BigInt::from(i + m), BigInt::from(m));
                }
            }
            BigRational::from_integer(c)
        })
        .collect();
    Series::new(coeffs).expect("order + 1 coefficients")
}

/// Bernoulli numbers B_2 .. B_12.
const BERNOULLI: [(i64, i64); 6] = [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730)];

/// `zeta(s)` for real `s > 1`.
///
/// Sums `k^{-s}` for `k < N`, then adds `N^{1-s}/(s-1) + N^{-s}/2` and the
/// Euler–Maclaurin corrections through B_12. `N` is chosen so the first
/// omitted correction is below `2^-(bits+8)`, which keeps the total error
/// under `2^(8-bits)`.
pub fn zeta_value(s: f64, precision_bits: u32) -> Result<BigFloat> {
    if !s.is_finite() || s <= 1.0 {
        return Err(Error::domain(format!(
            "zeta({s}) is divergent or needs analytic continuation; s must exceed 1"
        )));
    }
    let out_prec = Precision::new(precision_bits)?;
    let p = out_prec.bits() as usize + 64;
    let cutoff = euler_maclaurin_cutoff(s, out_prec.bits());
    let sf = BigFloat::from_f64(s, p);
    let integer_s = s.fract() == 0.0 && s <= u32::MAX as f64;

    with_consts(|cc| {
        let mut neg_power = |k: u64| -> BigFloat {
            let kf = BigFloat::from_u64(k, p);
            if integer_s {
                kf.powi(s as usize, p, RM).reciprocal(p, RM)
            } else {
                kf.ln(p, RM, cc).mul(&sf, p, RM).neg().exp(p, RM, cc)
            }
        };
        let mut sum = BigFloat::from_word(0, p);
        for k in 1..cutoff {
            sum = sum.add(&neg_power(k), p, RM);
        }
        let n = BigFloat::from_u64(cutoff, p);
        let n_pow = neg_power(cutoff);
        // N^{1-s} / (s - 1)
        let one = BigFloat::from_word(1, p);
        let tail = n_pow
            .mul(&n, p, RM)
            .div(&sf.sub(&one, p, RM), p, RM);
        sum = sum.add(&tail, p, RM);
        sum = sum.add(&n_pow.div(&BigFloat::from_word(2, p), p, RM), p, RM);

        // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
        let n_sq = n.mul(&n, p, RM);
        let mut rising = sf.clone();
        let mut factorial = BigFloat::from_word(2, p);
        let mut n_term = n_pow.div(&n, p, RM);
        for (j, &(num, den)) in BERNOULLI.iter().enumerate() {
            let jj = (j + 1) as u64;
            if j > 0 {
                // extend the rising product by (s + 2j - 3)(s + 2j - 2)
                let a = sf.add(&BigFloat::from_u64(2 * jj - 3, p), p, RM);
                let b = sf.add(&BigFloat::from_u64(2 * jj - 2, p), p, RM);
                rising = rising.mul(&a, p, RM).mul(&b, p, RM);
                let f = BigFloat::from_u64((2 * jj - 1) * (2 * jj), p);
                factorial = factorial.mul(&f, p, RM);
                n_term = n_term.div(&n_sq, p, RM);
            }
            let b = float_from_rational(&BigRational::new(num.into(), den.into()), p as u32);
            let term = b.mul(&rising, p, RM).mul(&n_term, p, RM).div(&factorial, p, RM);
            sum = sum.add(&term, p, RM);
        }
        let mut out = sum;
        out.set_precision(out_prec.bits() as usize, RM)
            .map_err(|e| Error::Backend(format!("rounding zeta: {e:?}")))?;
        Ok(out)
    })
}

/// Smallest `N >= 8` with the first omitted term, `|B_14|/14! (s)_13 N^{-s-13}`,
/// below `2^-(bits+8)`.
fn euler_maclaurin_cutoff(s: f64, bits: u32) -> u64 {
    let mut log2_coeff = (7.0f64 / 6.0).log2();
    for i in 0..13 {
        log2_coeff += (s + i as f64).log2() - ((i + 2) as f64).log2();
    }
    let target = -((bits + 8) as f64);
    // log2_coeff - (s + 13) log2 N <= target
    let log2_n = (log2_coeff - target) / (s + 13.0);
    (log2_n.exp2().ceil() as u64).max(8)
}

#[derive(Debug, Clone)]
pub struct ZetaRow {
    pub n: usize,
    pub value: BigFloat,
    pub deviation: BigFloat,
}

/// `P_n(1)` against `exp(-zeta(s))` for each requested `n`.
#[derive(Debug, Clone)]
pub struct ZetaConvergenceRecord {
    pub s: f64,
    pub target: BigFloat,
    pub rows: Vec<ZetaRow>,
}

pub fn zeta_convergence(s: f64, n_list: &[usize], precision_bits: u32) -> Result<ZetaConvergenceRecord> {
    let zeta = zeta_value(s, precision_bits)?;
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("n values must be strictly ascending"));
    }
    let prec = Precision::new(precision_bits)?;
    let p = prec.bits() as usize;
    let target = with_consts(|cc| zeta.neg().exp(p, RM, cc));
    let n_max = n_list.last().copied().unwrap_or(0);
    // P_n is a prefix of P_{n_max}
    let real = build_polynomial::<BigComplex>(&AlphaSequence::polylog(s), n_max, prec)?;
    let mut rows = Vec::with_capacity(n_list.len());
    let mut partial = BigComplex::zero(prec);
    let mut next = 0;
    for &n in n_list {
        while next <= n {
            partial = partial.add(&real.coeffs()[next]);
            next += 1;
        }
        let value = partial.re().clone();
        let deviation = value.sub(&target, p, RM).abs();
        rows.push(ZetaRow { n, value, deviation });
    }
    Ok(ZetaConvergenceRecord { s, target, rows })
}

/// One row of the polylogarithm family summary for integer `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRow {
    pub s: i64,
    pub alpha_label: String,
    pub generating_label: String,
    /// `a_0 .. a_4` as exact rationals.
    pub coeffs: Vec<BigRational>,
}

fn alpha_label(s: i64) -> String {
    match 1 - s {
        0 => "1".into(),
        1 => "k".into(),
        e if e > 1 => format!("k^{e}"),
        -1 => "1/k".into(),
        e => format!("1/k^{}", -e),
    }
}

fn generating_label(s: i64) -> String {
    match s {
        1 => "-log(1-x)".into(),
        s if s > 1 => format!("Li_{s}(x)"),
        s => {
            let m = (-s) as usize;
            let a = eulerian_polynomial(m);
            let num = if a.coeffs.len() == 1 {
                "x".to_string()
            } else {
                format!("x({})", a.label())
            };
            if m == 0 {
                format!("{num}/(1-x)")
            } else {
                format!("{num}/(1-x)^{}", m + 1)
            }
        }
    }
}

/// Rows for `s` in `s_range`, coefficients of `exp(-Li_s(x))` through `x^order`.
pub fn family_table(s_range: impl IntoIterator<Item = i64>, order: usize) -> Result<Vec<FamilyRow>> {
    s_range
        .into_iter()
        .map(|s| {
            let real = build_polynomial::<BigRational>(&AlphaSequence::polylog(s as f64), order, ())?;
            Ok(FamilyRow {
                s,
                alpha_label: alpha_label(s),
                generating_label: generating_label(s),
                coeffs: real.coeffs().to_vec(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigcomplex::float_to_f64;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(eulerian_polynomial(0).coeffs, ints(&[1]));
        assert_eq!(eulerian_polynomial(1).coeffs, ints(&[1]));
        assert_eq!(eulerian_polynomial(2).coeffs, ints(&[1, 1]));
        assert_eq!(eulerian_polynomial(3).coeffs, ints(&[1, 4, 1]));
        assert_eq!(eulerian_polynomial(4).coeffs, ints(&[1, 11, 11, 1]));
    }

    #[test]
    fn eulerian_sum_and_symmetry() {
        let mut factorial = BigInt::one();
        for m in 1..=12usize {
            factorial *= m;
            let a = eulerian_polynomial(m);
            let total: BigInt = a.coeffs.iter().sum();
            assert_eq!(total, factorial, "m = {m}");
            let rev: Vec<_> = a.coeffs.iter().rev().cloned().collect();
            assert_eq!(a.coeffs, rev, "m = {m}");
        }
    }

    #[test]
    fn closed_form_examples() {
        let r = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
        assert_eq!(polylog_series_closed_form(1, 4).coeffs(), r(&[0, 1, 2, 3, 4]));
        assert_eq!(polylog_series_closed_form(0, 3).coeffs(), r(&[0, 1, 1, 1]));
        assert_eq!(polylog_series_closed_form(3, 4).coeffs(), r(&[0, 1, 8, 27, 64]));
    }

    #[test]
    fn closed_form_matches_definition() {
        for m in 0..=6u32 {
            let s = polylog_series_closed_form(m as usize, 50);
            for k in 1..=50u64 {
                let want = BigRational::from_integer(BigInt::from(k).pow(m));
                assert_eq!(s.coeff(k as usize), &want, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn zeta_known_values() {
        let z2 = float_to_f64(&zeta_value(2.0, 128).unwrap());
        assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-15);
        let z4 = float_to_f64(&zeta_value(4.0, 128).unwrap());
        assert!((z4 - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-15);
        let z3 = float_to_f64(&zeta_value(3.0, 128).unwrap());
        assert!((z3 - 1.202_056_903_159_594_3).abs() < 1e-15);
        let z25 = float_to_f64(&zeta_value(2.5, 128).unwrap());
        assert!((z25 - 1.341_487_257_250_917).abs() < 1e-14);
    }

    #[test]
    fn zeta_rejects_divergent() {
        assert!(matches!(zeta_value(1.0, 128), Err(Error::Domain(_))));
        assert!(matches!(zeta_value(0.5, 128), Err(Error::Domain(_))));
        assert!(matches!(zeta_convergence(1.0, &[10], 128), Err(Error::Domain(_))));
    }

    #[test]
    fn zeta_convergence_decreases() {
        let rec = zeta_convergence(2.0, &[10, 20, 40, 80], 128).unwrap();
        assert!((float_to_f64(&rec.target) - 0.193_025_289_139_898).abs() < 1e-14);
        let dev: Vec<f64> = rec.rows.iter().map(|r| float_to_f64(&r.deviation)).collect();
        assert!(dev.windows(2).all(|w| w[1] < w[0]), "{dev:?}");
        assert!(zeta_convergence(2.0, &[20, 10], 128).is_err());
    }

    #[test]
    fn labels() {
        let rows = family_table(-3..=3, 4).unwrap();
        let labels: Vec<_> = rows.iter().map(|r| (r.alpha_label.as_str(), r.generating_label.as_str())).collect();
        assert_eq!(
            labels,
            vec![
                ("k^4", "x(1+4x+x^2)/(1-x)^4"),
                ("k^3", "x(1+x)/(1-x)^3"),
                ("k^2", "x/(1-x)^2"),
                ("k", "x/(1-x)"),
                ("1", "-log(1-x)"),
                ("1/k", "Li_2(x)"),
                ("1/k^2", "Li_3(x)"),
            ]
        );
    }
}
