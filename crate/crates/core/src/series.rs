//! Truncated formal power series.
//!
//! A [`Series`] of order `n` holds exactly `n + 1` coefficients, index `j`
//! being the coefficient of `x^j`. `exp` and `log` are computed by the
//! differential recurrences `f' = h' f` and `g' = f' / f`, both O(n^2).

use num_complex::Complex64;
use num_rational::BigRational;

use crate::bigcomplex::BigComplex;
use crate::error::{Error, Result};
use crate::scalar::{Backend, Coeff};

#[derive(Debug, Clone, PartialEq)]
pub struct Series<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Builds a series from its coefficients; order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::input("a series needs at least one coefficient"));
        };
        let ctx = first.ctx();
        if let Some(odd) = coeffs.iter().find(|c| c.ctx() != ctx) {
            return Err(Error::BackendMismatch {
                left: C::backend_of(ctx),
                right: odd.backend(),
            });
        }
        Ok(Series { coeffs })
    }

    pub fn zero(order: usize, ctx: C::Ctx) -> Self {
        Series {
            coeffs: vec![C::zero(ctx); order + 1],
        }
    }

    pub fn one(order: usize, ctx: C::Ctx) -> Self {
        let mut s = Self::zero(order, ctx);
        s.coeffs[0] = C::one(ctx);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &C {
        &self.coeffs[j]
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn ctx(&self) -> C::Ctx {
        self.coeffs[0].ctx()
    }

    pub fn backend(&self) -> Backend {
        C::backend_of(self.ctx())
    }

    /// Keeps coefficients up to `order`, padding with zeros if needed.
    pub fn truncate(&self, order: usize) -> Self {
        let ctx = self.ctx();
        let coeffs = (0..=order)
            .map(|j| self.coeffs.get(j).cloned().unwrap_or_else(|| C::zero(ctx)))
            .collect();
        Series { coeffs }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ctx() != other.ctx() {
            return Err(Error::BackendMismatch {
                left: self.backend(),
                right: other.backend(),
            });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add(b)).collect();
        Ok(Series { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.sub(b)).collect();
        Ok(Series { coeffs })
    }

    /// Cauchy product truncated to the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let ctx = self.ctx();
        let coeffs = (0..=self.order())
            .map(|j| {
                (0..=j).fold(C::zero(ctx), |acc, i| {
                    acc.add(&self.coeffs[i].mul(&other.coeffs[j - i]))
                })
            })
            .collect();
        Ok(Series { coeffs })
    }

    /// Term-by-term derivative; order drops by one, order 0 maps to the
    /// order-0 zero series.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0, self.ctx());
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(j, c)| c.mul_int(j as i64 + 1))
            .collect();
        Series { coeffs }
    }

    /// `exp(h)` for `h(0) = 0`, via `k f_k = sum_{j=1..k} j h_j f_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain("exp needs a series with zero constant term"));
        }
        let ctx = self.ctx();
        let n = self.order();
        // j h_j, the coefficients of x h'(x)
        let weighted: Vec<C> = (0..=n).map(|j| self.coeffs[j].mul_int(j as i64)).collect();
        let mut f = Vec::with_capacity(n + 1);
        f.push(C::one(ctx));
        for k in 1..=n {
            let acc = (1..=k).fold(C::zero(ctx), |acc, j| acc.add(&weighted[j].mul(&f[k - j])));
            f.push(acc.div_int(k as i64));
        }
        Ok(Series { coeffs: f })
    }

    /// `log(f)` for `f(0) = 1`, via `k g_k = k f_k - sum_{j=1..k-1} j g_j f_{k-j}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::domain("log needs a series with constant term 1"));
        }
        let ctx = self.ctx();
        let n = self.order();
        let f = &self.coeffs;
        let mut weighted: Vec<C> = Vec::with_capacity(n + 1);
        weighted.push(C::zero(ctx));
        for k in 1..=n {
            let conv = (1..k).fold(C::zero(ctx), |acc, j| acc.add(&weighted[j].mul(&f[k - j])));
            weighted.push(f[k].mul_int(k as i64).sub(&conv));
        }
        let coeffs = weighted
            .iter()
            .enumerate()
            .map(|(k, w)| if k == 0 { C::zero(ctx) } else { w.div_int(k as i64) })
            .collect();
        Ok(Series { coeffs })
    }
}

/// A series whose backend is chosen at run time.
#[derive(Debug, Clone, PartialEq)]
pub enum TruncatedSeries {
    Rational(Series<BigRational>),
    Complex64(Series<Complex64>),
    BigComplex(Series<BigComplex>),
}

macro_rules! dispatch {
    ($value:expr, $s:ident => $body:expr) => {
        match $value {
            TruncatedSeries::Rational($s) => TruncatedSeries::Rational($body),
            TruncatedSeries::Complex64($s) => TruncatedSeries::Complex64($body),
            TruncatedSeries::BigComplex($s) => TruncatedSeries::BigComplex($body),
        }
    };
}

macro_rules! dispatch_pair {
    ($a:expr, $b:expr, ($x:ident, $y:ident) => $body:expr) => {
        match ($a, $b) {
            (TruncatedSeries::Rational($x), TruncatedSeries::Rational($y)) => {
                TruncatedSeries::Rational($body)
            }
            (TruncatedSeries::Complex64($x), TruncatedSeries::Complex64($y)) => {
                TruncatedSeries::Complex64($body)
            }
            (TruncatedSeries::BigComplex($x), TruncatedSeries::BigComplex($y)) => {
                TruncatedSeries::BigComplex($body)
            }
            (l, r) => {
                return Err(Error::BackendMismatch {
                    left: l.backend(),
                    right: r.backend(),
                })
            }
        }
    };
}

impl TruncatedSeries {
    pub fn backend(&self) -> Backend {
        match self {
            TruncatedSeries::Rational(s) => s.backend(),
            TruncatedSeries::Complex64(s) => s.backend(),
            TruncatedSeries::BigComplex(s) => s.backend(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            TruncatedSeries::Rational(s) => s.order(),
            TruncatedSeries::Complex64(s) => s.order(),
            TruncatedSeries::BigComplex(s) => s.order(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(dispatch_pair!(self, other, (a, b) => a.mul(b)?))
    }

    pub fn exp(&self) -> Result<Self> {
        Ok(dispatch!(self, s => s.exp()?))
    }

    pub fn log(&self) -> Result<Self> {
        Ok(dispatch!(self, s => s.log()?))
    }

    pub fn derivative(&self) -> Self {
        dispatch!(self, s => s.derivative())
    }

    /// Explicit backend conversion. Allowed: rational to either float
    /// backend, and big complex to machine complex (or another precision).
    pub fn convert(&self, target: Backend) -> Result<Self> {
        let from = self.backend();
        if from == target {
            return Ok(self.clone());
        }
        let unsupported = Error::UnsupportedConversion { from, to: target };
        match (self, target) {
            (TruncatedSeries::Rational(s), Backend::Complex64) => {
                Ok(TruncatedSeries::Complex64(convert_coeffs(s, ())?))
            }
            (TruncatedSeries::Rational(s), Backend::BigComplex { .. }) => Ok(
                TruncatedSeries::BigComplex(convert_coeffs(s, BigComplex::ctx_for(target)?)?),
            ),
            (TruncatedSeries::BigComplex(s), Backend::Complex64) => {
                Ok(TruncatedSeries::Complex64(convert_coeffs(s, ())?))
            }
            (TruncatedSeries::BigComplex(s), Backend::BigComplex { .. }) => Ok(
                TruncatedSeries::BigComplex(convert_coeffs(s, BigComplex::ctx_for(target)?)?),
            ),
            _ => Err(unsupported),
        }
    }
}

fn convert_coeffs<A: Coeff, B: Coeff>(s: &Series<A>, ctx: B::Ctx) -> Result<Series<B>> {
    let coeffs = s
        .coeffs()
        .iter()
        .map(|c| B::from_scalar(&c.to_scalar(), ctx))
        .collect::<Result<Vec<_>>>()?;
    Series::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigcomplex::{float_from_rational, Precision};
    use crate::scalar::ComplexFloat;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rs(v: &[(i64, i64)]) -> Series<BigRational> {
        Series::new(v.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn mul_examples() {
        let a = rs(&[(1, 1), (1, 1), (0, 1)]);
        let b = rs(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), rs(&[(1, 1), (0, 1), (-1, 1)]));
        let c = rs(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(c.mul(&c).unwrap(), rs(&[(1, 1), (-2, 1), (1, 1)]));
        let d = rs(&[(1, 1), (-1, 1), (-1, 2)]);
        assert_eq!(d.mul(&Series::one(2, ())).unwrap(), d);
    }

    #[test]
    fn mul_rejects_mismatches() {
        let a = rs(&[(1, 1), (1, 1)]);
        let b = rs(&[(1, 1), (1, 1), (1, 1)]);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch { left: 1, right: 2 })));
        let x = TruncatedSeries::Rational(a.clone());
        let y = TruncatedSeries::Complex64(Series::one(1, ()));
        assert!(matches!(x.mul(&y), Err(Error::BackendMismatch { .. })));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Series::<BigRational>::zero(3, ()).exp().unwrap(), Series::one(3, ()));
        let log1mx = rs(&[(0, 1), (-1, 1), (-1, 2), (-1, 3)]);
        assert_eq!(log1mx.exp().unwrap(), rs(&[(1, 1), (-1, 1), (0, 1), (0, 1)]));
        let h = rs(&[(0, 1), (-1, 1), (-1, 1), (-1, 1), (-1, 1), (-1, 1)]);
        assert_eq!(
            h.exp().unwrap(),
            rs(&[(1, 1), (-1, 1), (-1, 2), (-1, 6), (1, 24), (19, 120)])
        );
        assert!(matches!(Series::<BigRational>::one(2, ()).exp(), Err(Error::Domain(_))));
    }

    #[test]
    fn log_examples() {
        assert_eq!(Series::<BigRational>::one(4, ()).log().unwrap(), Series::zero(4, ()));
        assert_eq!(
            rs(&[(1, 1), (-1, 1), (0, 1), (0, 1)]).log().unwrap(),
            rs(&[(0, 1), (-1, 1), (-1, 2), (-1, 3)])
        );
        // power sums 1, 2, 5/2 of 1 - x - x^2/2 give -p_k / k
        assert_eq!(
            rs(&[(1, 1), (-1, 1), (-1, 2), (0, 1)]).log().unwrap(),
            rs(&[(0, 1), (-1, 1), (-1, 1), (-5, 6)])
        );
        assert!(matches!(rs(&[(2, 1), (1, 1)]).log(), Err(Error::Domain(_))));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rs(&[(1, 1), (-1, 1), (-1, 2)]).derivative(), rs(&[(-1, 1), (-1, 1)]));
        assert_eq!(rs(&[(1, 1)]).derivative(), rs(&[(0, 1)]));
        assert_eq!(rs(&[(0, 1), (0, 1), (0, 1), (1, 1)]).derivative(), rs(&[(0, 1), (0, 1), (3, 1)]));
    }

    #[test]
    fn conversions() {
        let s = TruncatedSeries::Rational(rs(&[(1, 3), (19, 120), (4, 1)]));
        let TruncatedSeries::Complex64(c) = s.convert(Backend::Complex64).unwrap() else {
            panic!()
        };
        assert_eq!(c.coeff(1).re, 19.0 / 120.0);
        assert_eq!(c.coeff(2).re, 4.0);
        let big = Backend::big(128).unwrap();
        let TruncatedSeries::BigComplex(b) = s.convert(big).unwrap() else {
            panic!()
        };
        assert_eq!(b.coeff(0).re(), &float_from_rational(&q(1, 3), 128));
        assert_eq!(b.coeff(2).to_c64(), Complex64::new(4.0, 0.0));
        let back = TruncatedSeries::BigComplex(b).convert(Backend::Complex64).unwrap();
        assert_eq!(back, TruncatedSeries::Complex64(c.clone()));
        assert!(matches!(
            TruncatedSeries::Complex64(c).convert(Backend::Rational),
            Err(Error::UnsupportedConversion { .. })
        ));
        assert!(Precision::new(128).is_ok());
    }

}
