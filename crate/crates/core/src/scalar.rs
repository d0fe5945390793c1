//! Coefficient backends.
//!
//! Three arithmetic backends share the [`Coeff`] trait: exact rationals
//! ([`BigRational`]), machine complex numbers ([`Complex64`]) and
//! arbitrary-precision complex floats ([`BigComplex`]). Values of different
//! backends never mix; conversions go through [`Coeff::from_scalar`] and only
//! along the directions that cannot silently invent precision.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bigcomplex::BigComplex;
use crate::error::{Error, Result};

/// Smallest precision accepted by the arbitrary-precision backend.
pub const MIN_PRECISION_BITS: u32 = 64;

/// Backend tag carried by every series and scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Complex64,
    BigComplex { precision_bits: u32 },
}

impl Backend {
    /// Arbitrary-precision backend. Precision is rounded up to a multiple of
    /// 64 bits so results do not depend on the host word size.
    pub fn big(precision_bits: u32) -> Result<Self> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::Backend(format!(
                "precision must be at least {MIN_PRECISION_BITS} bits, got {precision_bits}"
            )));
        }
        Ok(Backend::BigComplex {
            precision_bits: precision_bits.div_ceil(64) * 64,
        })
    }

    pub fn is_float(&self) -> bool {
        !matches!(self, Backend::Rational)
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Rational => f.write_str("rational"),
            Backend::Complex64 => f.write_str("complex64"),
            Backend::BigComplex { precision_bits } => write!(f, "bigcomplex({precision_bits})"),
        }
    }
}

/// A single value tagged with its backend.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientScalar {
    Rational(BigRational),
    Complex64(Complex64),
    BigComplex(BigComplex),
}

impl CoefficientScalar {
    pub fn backend(&self) -> Backend {
        match self {
            CoefficientScalar::Rational(_) => Backend::Rational,
            CoefficientScalar::Complex64(_) => Backend::Complex64,
            CoefficientScalar::BigComplex(z) => Backend::BigComplex {
                precision_bits: z.precision_bits(),
            },
        }
    }

    pub fn integer(v: i64) -> Self {
        CoefficientScalar::Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        CoefficientScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Display for CoefficientScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientScalar::Rational(q) => f.write_str(&format_rational(q)),
            CoefficientScalar::Complex64(z) => write!(f, "{z}"),
            CoefficientScalar::BigComplex(z) => write!(f, "{z}"),
        }
    }
}

/// `num/den` for non-integers, plain integer otherwise.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `7`, `-3/4`, `0.125` or `1e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::input(format!("not a rational number: {text:?}"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::input(format!("zero denominator in {text:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp10) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = exp10 - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut q = BigRational::from_integer(all);
    if scale >= 0 {
        q *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -q } else { q })
}

/// Field operations shared by every backend.
pub trait Coeff: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// Per-value context: nothing for fixed backends, the precision for
    /// [`BigComplex`].
    type Ctx: Copy + fmt::Debug + PartialEq + Send + Sync;

    fn backend_of(ctx: Self::Ctx) -> Backend;
    fn ctx(&self) -> Self::Ctx;
    fn ctx_for(backend: Backend) -> Result<Self::Ctx>;

    fn from_i64(v: i64, ctx: Self::Ctx) -> Self;
    fn from_rational(q: &BigRational, ctx: Self::Ctx) -> Self;
    fn from_scalar(s: &CoefficientScalar, ctx: Self::Ctx) -> Result<Self>;
    fn to_scalar(&self) -> CoefficientScalar;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;
    /// |self| rounded to f64.
    fn magnitude(&self) -> f64;

    /// `base^exponent` for a real or complex exponent (principal branch).
    fn power_of_integer(base: u64, exponent: Complex64, ctx: Self::Ctx) -> Result<Self>;

    fn backend(&self) -> Backend {
        Self::backend_of(self.ctx())
    }

    fn zero(ctx: Self::Ctx) -> Self {
        Self::from_i64(0, ctx)
    }

    fn one(ctx: Self::Ctx) -> Self {
        Self::from_i64(1, ctx)
    }

    fn is_one(&self) -> bool {
        self.sub(&Self::one(self.ctx())).is_zero()
    }

    fn mul_int(&self, k: i64) -> Self {
        self.mul(&Self::from_i64(k, self.ctx()))
    }

    fn div_int(&self, k: i64) -> Self {
        self.div(&Self::from_i64(k, self.ctx()))
    }
}

/// Extra operations for the floating backends used by root finding.
pub trait ComplexFloat: Coeff {
    fn from_c64(z: Complex64, ctx: Self::Ctx) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Unit roundoff of the working precision.
    fn unit_roundoff(ctx: Self::Ctx) -> f64;
}

fn mismatch(from: Backend, to: Backend) -> Error {
    Error::UnsupportedConversion { from, to }
}

impl Coeff for BigRational {
    type Ctx = ();

    fn backend_of(_: ()) -> Backend {
        Backend::Rational
    }

    fn ctx(&self) {}

    fn ctx_for(backend: Backend) -> Result<()> {
        match backend {
            Backend::Rational => Ok(()),
            other => Err(Error::BackendMismatch {
                left: Backend::Rational,
                right: other,
            }),
        }
    }

    fn from_i64(v: i64, _: ()) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &BigRational, _: ()) -> Self {
        q.clone()
    }

    fn from_scalar(s: &CoefficientScalar, _: ()) -> Result<Self> {
        match s {
            CoefficientScalar::Rational(q) => Ok(q.clone()),
            other => Err(mismatch(other.backend(), Backend::Rational)),
        }
    }

    fn to_scalar(&self) -> CoefficientScalar {
        CoefficientScalar::Rational(self.clone())
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn power_of_integer(base: u64, exponent: Complex64, _: ()) -> Result<Self> {
        let e = exponent.re;
        if exponent.im != 0.0 || e.fract() != 0.0 || e.abs() > i32::MAX as f64 {
            return Err(Error::Backend(format!(
                "exponent {exponent} is not an integer; the rational backend needs integer polylog order"
            )));
        }
        let b = BigRational::from_integer(BigInt::from(base));
        Ok(num_traits::pow::Pow::pow(&b, e as i32))
    }

    fn mul_int(&self, k: i64) -> Self {
        self * BigInt::from(k)
    }

    fn div_int(&self, k: i64) -> Self {
        self / BigInt::from(k)
    }
}

impl Coeff for Complex64 {
    type Ctx = ();

    fn backend_of(_: ()) -> Backend {
        Backend::Complex64
    }

    fn ctx(&self) {}

    fn ctx_for(backend: Backend) -> Result<()> {
        match backend {
            Backend::Complex64 => Ok(()),
            other => Err(Error::BackendMismatch {
                left: Backend::Complex64,
                right: other,
            }),
        }
    }

    fn from_i64(v: i64, _: ()) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_rational(q: &BigRational, _: ()) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn from_scalar(s: &CoefficientScalar, _: ()) -> Result<Self> {
        match s {
            CoefficientScalar::Rational(q) => Ok(Self::from_rational(q, ())),
            CoefficientScalar::Complex64(z) => Ok(*z),
            CoefficientScalar::BigComplex(z) => Ok(z.to_c64()),
        }
    }

    fn to_scalar(&self) -> CoefficientScalar {
        CoefficientScalar::Complex64(*self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn power_of_integer(base: u64, exponent: Complex64, _: ()) -> Result<Self> {
        if exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() < 1024.0 {
            return Ok(Complex64::new((base as f64).powi(exponent.re as i32), 0.0));
        }
        Ok((exponent * (base as f64).ln()).exp())
    }

    fn mul_int(&self, k: i64) -> Self {
        self * k as f64
    }

    fn div_int(&self, k: i64) -> Self {
        self / k as f64
    }
}

impl ComplexFloat for Complex64 {
    fn from_c64(z: Complex64, _: ()) -> Self {
        z
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn unit_roundoff(_: ()) -> f64 {
        f64::EPSILON / 2.0
    }
}

/// Correctly rounded rational to f64.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let x = q(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&x), "-3/2");
        assert_eq!(format_rational(&q(8, 2)), "4");
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational(" -3/4 ").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("0.125").unwrap(), q(1, 8));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("1e3").unwrap(), q(1000, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn big_backend_precision_rules() {
        assert!(Backend::big(32).is_err());
        assert_eq!(
            Backend::big(100).unwrap(),
            Backend::BigComplex { precision_bits: 128 }
        );
        assert_eq!(Backend::big(256).unwrap().to_string(), "bigcomplex(256)");
    }

    #[test]
    fn no_conversion_out_of_floats_into_rationals() {
        let z = CoefficientScalar::Complex64(Complex64::new(1.0, 0.0));
        assert!(matches!(
            BigRational::from_scalar(&z, ()),
            Err(Error::UnsupportedConversion { .. })
        ));
    }

    #[test]
    fn rational_to_f64_is_correctly_rounded() {
        assert_eq!(rational_to_f64(&q(19, 120)), 19.0 / 120.0);
        assert_eq!(rational_to_f64(&q(1, 3)), 1.0 / 3.0);
        assert_eq!(rational_to_f64(&q(4, 1)), 4.0);
    }

    #[test]
    fn integer_powers() {
        let p = BigRational::power_of_integer(3, Complex64::new(-2.0, 0.0), ()).unwrap();
        assert_eq!(p, q(1, 9));
        assert!(BigRational::power_of_integer(3, Complex64::new(0.5, 0.0), ()).is_err());
        let z = Complex64::power_of_integer(4, Complex64::new(0.5, 0.0), ()).unwrap();
        assert!((z - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }
}
