//! Arbitrary-precision complex numbers on top of `astro_float::BigFloat`.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Backend, CoefficientScalar, Coeff, ComplexFloat, MIN_PRECISION_BITS};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("allocating astro-float constant cache"));
}

/// Runs `f` with this thread's constant cache (pi, ln 2, ...).
pub(crate) fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Precision context for [`BigComplex`]: number of mantissa bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Precision(u32);

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        match Backend::big(bits)? {
            Backend::BigComplex { precision_bits } => Ok(Precision(precision_bits)),
            _ => unreachable!(),
        }
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    fn p(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    prec: Precision,
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.re == other.re && self.im == other.im
    }
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: Precision) -> Self {
        BigComplex { re, im, prec }
    }

    pub fn from_real(re: BigFloat, prec: Precision) -> Self {
        BigComplex {
            re,
            im: zero_float(prec),
            prec,
        }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec.bits()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
            prec: self.prec,
        }
    }

    /// Exact |z|^2 rounded once per operation.
    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec.p();
        self.re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec.p(), RM)
    }

    pub fn reciprocal(&self) -> Self {
        Self::one(self.prec).div(self)
    }

    pub fn exp(&self) -> Self {
        let p = self.prec.p();
        with_consts(|cc| {
            let r = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            BigComplex {
                re: r.mul(&c, p, RM),
                im: r.mul(&s, p, RM),
                prec: self.prec,
            }
        })
    }

    fn with_prec(&self, prec: Precision) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        // zero values report an error from set_precision; they need no rounding
        let _ = re.set_precision(prec.p(), RM);
        let _ = im.set_precision(prec.p(), RM);
        BigComplex { re, im, prec }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.neg())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

fn zero_float(prec: Precision) -> BigFloat {
    BigFloat::from_word(0, prec.p())
}

/// Exact conversion of an integer (precision grows to fit every bit).
pub fn float_from_int(n: &BigInt) -> BigFloat {
    if n.is_zero() {
        return BigFloat::from_word(0, 64);
    }
    let words: Vec<Word> = if WORD_BIT_SIZE == 64 {
        n.magnitude().to_u64_digits().into_iter().map(|d| d as Word).collect()
    } else {
        n.magnitude().to_u32_digits().into_iter().map(|d| d as Word).collect()
    };
    let sign = if n.is_negative() { Sign::Neg } else { Sign::Pos };
    BigFloat::from_words(&words, sign, (words.len() * WORD_BIT_SIZE) as Exponent)
}

/// Rational to binary float with a single rounding at `bits`.
pub fn float_from_rational(q: &BigRational, bits: u32) -> BigFloat {
    let num = float_from_int(q.numer());
    let den = float_from_int(q.denom());
    num.div(&den, bits as usize, RM)
}

/// Correctly rounded (nearest, ties to even) conversion to f64.
pub fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, exponent, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    if words.iter().all(|w| *w == 0) {
        return 0.0;
    }
    // top 128 mantissa bits, value = top / 2^128 * 2^exponent
    let mut top: u128 = 0;
    let mut taken = 0usize;
    let mut sticky = false;
    for w in words.iter().rev() {
        if taken < 128 {
            top |= (*w as u128) << (128 - WORD_BIT_SIZE - taken);
            taken += WORD_BIT_SIZE;
        } else if *w != 0 {
            sticky = true;
        }
    }
    const SHIFT: u32 = 128 - 53;
    let mut mant = (top >> SHIFT) as u64;
    let rem = top & ((1u128 << SHIFT) - 1);
    let half = 1u128 << (SHIFT - 1);
    if rem > half || (rem == half && (sticky || mant & 1 == 1)) {
        mant += 1;
    }
    let mut e = exponent as i64;
    if mant == 1 << 53 {
        mant >>= 1;
        e += 1;
    }
    let magnitude = ldexp(mant as f64, e - 53);
    if sign == Sign::Neg {
        -magnitude
    } else {
        magnitude
    }
}

fn ldexp(mut v: f64, mut e: i64) -> f64 {
    while e > 1000 {
        v *= 2f64.powi(1000);
        e -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while e < -1000 {
        v *= 2f64.powi(-1000);
        e += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(e as i32)
}

impl Coeff for BigComplex {
    type Ctx = Precision;

    fn backend_of(ctx: Precision) -> Backend {
        Backend::BigComplex {
            precision_bits: ctx.bits(),
        }
    }

    fn ctx(&self) -> Precision {
        self.prec
    }

    fn ctx_for(backend: Backend) -> Result<Precision> {
        match backend {
            Backend::BigComplex { precision_bits } => Precision::new(precision_bits),
            other => Err(Error::BackendMismatch {
                left: Backend::BigComplex {
                    precision_bits: MIN_PRECISION_BITS,
                },
                right: other,
            }),
        }
    }

    fn from_i64(v: i64, prec: Precision) -> Self {
        Self::from_real(BigFloat::from_i64(v, prec.p()), prec)
    }

    fn from_rational(q: &BigRational, prec: Precision) -> Self {
        Self::from_real(float_from_rational(q, prec.bits()), prec)
    }

    fn from_scalar(s: &CoefficientScalar, prec: Precision) -> Result<Self> {
        match s {
            CoefficientScalar::Rational(q) => Ok(Self::from_rational(q, prec)),
            CoefficientScalar::BigComplex(z) => Ok(z.with_prec(prec)),
            CoefficientScalar::Complex64(_) => Err(Error::UnsupportedConversion {
                from: Backend::Complex64,
                to: Self::backend_of(prec),
            }),
        }
    }

    fn to_scalar(&self) -> CoefficientScalar {
        CoefficientScalar::BigComplex(self.clone())
    }

    fn add(&self, o: &Self) -> Self {
        let p = self.prec.p();
        BigComplex {
            re: self.re.add(&o.re, p, RM),
            im: self.im.add(&o.im, p, RM),
            prec: self.prec,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        let p = self.prec.p();
        BigComplex {
            re: self.re.sub(&o.re, p, RM),
            im: self.im.sub(&o.im, p, RM),
            prec: self.prec,
        }
    }

    fn mul(&self, o: &Self) -> Self {
        let p = self.prec.p();
        if self.im.is_zero() && o.im.is_zero() {
            return BigComplex {
                re: self.re.mul(&o.re, p, RM),
                im: zero_float(self.prec),
                prec: self.prec,
            };
        }
        let ac = self.re.mul(&o.re, p, RM);
        let bd = self.im.mul(&o.im, p, RM);
        let ad = self.re.mul(&o.im, p, RM);
        let bc = self.im.mul(&o.re, p, RM);
        BigComplex {
            re: ac.sub(&bd, p, RM),
            im: ad.add(&bc, p, RM),
            prec: self.prec,
        }
    }

    fn div(&self, o: &Self) -> Self {
        let p = self.prec.p();
        if o.im.is_zero() {
            return BigComplex {
                re: self.re.div(&o.re, p, RM),
                im: self.im.div(&o.re, p, RM),
                prec: self.prec,
            };
        }
        let den = o.norm_sqr();
        let ac = self.re.mul(&o.re, p, RM);
        let bd = self.im.mul(&o.im, p, RM);
        let bc = self.im.mul(&o.re, p, RM);
        let ad = self.re.mul(&o.im, p, RM);
        BigComplex {
            re: ac.add(&bd, p, RM).div(&den, p, RM),
            im: bc.sub(&ad, p, RM).div(&den, p, RM),
            prec: self.prec,
        }
    }

    fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
            prec: self.prec,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn magnitude(&self) -> f64 {
        float_to_f64(&self.re).hypot(float_to_f64(&self.im))
    }

    fn power_of_integer(base: u64, exponent: Complex64, prec: Precision) -> Result<Self> {
        if exponent.im == 0.0 && exponent.re.fract() == 0.0 && exponent.re.abs() <= i32::MAX as f64 {
            let q = <BigRational as Coeff>::power_of_integer(base, exponent, ())?;
            return Ok(Self::from_rational(&q, prec));
        }
        let p = prec.p();
        let ln_base = with_consts(|cc| BigFloat::from_u64(base, p).ln(p, RM, cc));
        let w = BigComplex {
            re: BigFloat::from_f64(exponent.re, p),
            im: BigFloat::from_f64(exponent.im, p),
            prec,
        };
        Ok(w.mul(&Self::from_real(ln_base, prec)).exp())
    }

    fn mul_int(&self, k: i64) -> Self {
        let p = self.prec.p();
        let kf = BigFloat::from_i64(k, p);
        BigComplex {
            re: self.re.mul(&kf, p, RM),
            im: self.im.mul(&kf, p, RM),
            prec: self.prec,
        }
    }

    fn div_int(&self, k: i64) -> Self {
        let p = self.prec.p();
        let kf = BigFloat::from_i64(k, p);
        BigComplex {
            re: self.re.div(&kf, p, RM),
            im: self.im.div(&kf, p, RM),
            prec: self.prec,
        }
    }
}

impl ComplexFloat for BigComplex {
    fn from_c64(z: Complex64, prec: Precision) -> Self {
        BigComplex {
            re: BigFloat::from_f64(z.re, prec.p()),
            im: BigFloat::from_f64(z.im, prec.p()),
            prec,
        }
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(float_to_f64(&self.re), float_to_f64(&self.im))
    }

    fn unit_roundoff(prec: Precision) -> f64 {
        2f64.powi(-(prec.bits() as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prec(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn integers_convert_exactly() {
        let big: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let f = float_from_int(&big);
        let back = f.format(astro_float::Radix::Dec, RM, &mut Consts::new().unwrap()).unwrap();
        assert!(back.starts_with("1.23456789012345678901234567890123456789e+38"), "{back}");
        assert_eq!(float_to_f64(&float_from_int(&BigInt::from(-4))), -4.0);
    }

    #[test]
    fn f64_rounding_matches_native_division() {
        for (n, d) in [(1i64, 3i64), (19, 120), (-2, 7), (1, 10), (123456789, 1000)] {
            let q = BigRational::new(n.into(), d.into());
            let f = float_from_rational(&q, 256);
            assert_eq!(float_to_f64(&f), n as f64 / d as f64, "{n}/{d}");
        }
    }

    #[test]
    fn one_third_at_128_bits_is_nearest() {
        let q = BigRational::new(1.into(), 3.into());
        let x = float_from_rational(&q, 128);
        // 3x - 1 must be within one half-ulp (2^-129 relative) of zero
        let err = x
            .mul(&BigFloat::from_u8(3, 256), 256, RM)
            .sub(&BigFloat::from_u8(1, 256), 256, RM)
            .abs();
        assert!(float_to_f64(&err) <= 3.0 * 2f64.powi(-130));
        assert!(float_to_f64(&err) > 0.0);
    }

    #[test]
    fn field_operations() {
        let p = prec(128);
        let a = BigComplex::from_c64(Complex64::new(1.5, -2.0), p);
        let b = BigComplex::from_c64(Complex64::new(-0.25, 3.0), p);
        let za = Complex64::new(1.5, -2.0);
        let zb = Complex64::new(-0.25, 3.0);
        assert_eq!(a.add(&b).to_c64(), za + zb);
        assert_eq!(a.mul(&b).to_c64(), za * zb);
        assert!((a.div(&b).to_c64() - za / zb).norm() < 1e-15);
        assert!(a.div(&b).mul(&b).sub(&a).magnitude() < 1e-35);
        assert!((a.abs().to_string().parse::<f64>().unwrap() - 2.5).abs() < 1e-15);
    }

    #[test]
    fn complex_power() {
        let p = prec(192);
        // 4^(1/2 + i*pi/ln4) = 2 * e^{i pi} = -2
        let e = Complex64::new(0.5, std::f64::consts::PI / 4f64.ln());
        let z = BigComplex::power_of_integer(4, e, p).unwrap().to_c64();
        assert!((z - Complex64::new(-2.0, 0.0)).norm() < 1e-14);
        let r = BigComplex::power_of_integer(5, Complex64::new(-2.0, 0.0), p).unwrap();
        assert_eq!(r.to_c64(), Complex64::new(0.04, 0.0));
    }

    #[test]
    fn rejects_machine_complex_input() {
        let z = CoefficientScalar::Complex64(Complex64::new(1.0, 1.0));
        assert!(BigComplex::from_scalar(&z, prec(128)).is_err());
    }
}
