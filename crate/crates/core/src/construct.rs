//! Construction of `P_n` from power-sum targets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::alpha::AlphaSequence;
use crate::error::{Error, Result};
use crate::roots::{find_roots, RootMultiset, RootSolveConfig};
use crate::scalar::{CoefficientScalar, Coeff, ComplexFloat};
use crate::series::Series;

/// Coefficients with `|a_j| <= DEGENERACY_THRESHOLD * max_i |a_i|` do not
/// count towards the degree in floating backends.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// `P_n` with its degree bookkeeping and optionally its roots.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialRealization<C: Coeff> {
    poly: Series<C>,
    effective_degree: usize,
    roots: Option<RootMultiset<C>>,
}

impl<C: Coeff> PolynomialRealization<C> {
    /// Wraps a polynomial whose constant term is exactly one.
    pub fn new(poly: Series<C>) -> Result<Self> {
        if !poly.coeff(0).is_one() {
            return Err(Error::domain("P_n must have constant term exactly 1"));
        }
        let effective_degree = effective_degree(poly.coeffs());
        Ok(PolynomialRealization {
            poly,
            effective_degree,
            roots: None,
        })
    }

    pub fn poly(&self) -> &Series<C> {
        &self.poly
    }

    pub fn coeffs(&self) -> &[C] {
        self.poly.coeffs()
    }

    pub fn nominal_degree(&self) -> usize {
        self.poly.order()
    }

    pub fn effective_degree(&self) -> usize {
        self.effective_degree
    }

    pub fn roots(&self) -> Option<&RootMultiset<C>> {
        self.roots.as_ref()
    }

    /// Attaches a root multiset; its total multiplicity must equal the
    /// effective degree.
    pub fn with_roots(mut self, roots: RootMultiset<C>) -> Result<Self> {
        if roots.total_multiplicity() != self.effective_degree {
            return Err(Error::input(format!(
                "{} roots given for a polynomial of effective degree {}",
                roots.total_multiplicity(),
                self.effective_degree
            )));
        }
        if roots.roots().iter().any(|r| r.is_zero()) {
            return Err(Error::ZeroRoot);
        }
        self.roots = Some(roots);
        Ok(self)
    }
}

/// Index of the last nonzero coefficient. Exact backends test for zero,
/// floating ones compare against [`DEGENERACY_THRESHOLD`].
pub fn effective_degree<C: Coeff>(coeffs: &[C]) -> usize {
    if coeffs.is_empty() {
        return 0;
    }
    if !coeffs[0].backend().is_float() {
        return coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
    }
    let max = coeffs.iter().map(Coeff::magnitude).fold(0.0, f64::max);
    let cutoff = DEGENERACY_THRESHOLD * max;
    coeffs.iter().rposition(|c| c.magnitude() > cutoff).unwrap_or(0)
}

/// Coefficients of `P_n` by `a_0 = 1`, `a_k = -(1/k) sum_{j=1..k} alpha_j a_{k-j}`.
///
/// This is Θ(n²) multiply-adds: coefficient `k` needs `k` products.
pub fn build_polynomial<C: Coeff>(
    alpha: &AlphaSequence,
    n: usize,
    ctx: C::Ctx,
) -> Result<PolynomialRealization<C>> {
    let targets: Vec<C> = alpha.terms(n, ctx)?;
    PolynomialRealization::new(Series::new(recurrence(&targets, ctx))?)
}

/// Recurrence core on a slice of targets, `targets[j - 1] = alpha_j`.
pub fn recurrence<C: Coeff>(targets: &[C], ctx: C::Ctx) -> Vec<C> {
    let n = targets.len();
    let mut a: Vec<C> = Vec::with_capacity(n + 1);
    a.push(C::one(ctx));
    for k in 1..=n {
        let mut acc = C::zero(ctx);
        for j in 1..=k {
            acc = acc.add(&targets[j - 1].mul(&a[k - j]));
        }
        a.push(acc.div_int(k as i64).neg());
    }
    a
}

/// The same polynomial as [`build_polynomial`], computed literally as the
/// truncation of `exp(-sum_k alpha_k x^k / k)`.
pub fn build_via_series<C: Coeff>(
    alpha: &AlphaSequence,
    n: usize,
    ctx: C::Ctx,
) -> Result<PolynomialRealization<C>> {
    let targets: Vec<C> = alpha.terms(n, ctx)?;
    let mut h = Vec::with_capacity(n + 1);
    h.push(C::zero(ctx));
    h.extend(
        targets
            .iter()
            .enumerate()
            .map(|(i, t)| t.div_int(i as i64 + 1).neg()),
    );
    PolynomialRealization::new(Series::new(h)?.exp()?)
}

/// `b_j = j! a_j`, required to be integers.
pub fn scaled_integer_coefficients(
    real: &PolynomialRealization<BigRational>,
) -> Result<Vec<BigInt>> {
    let mut factorial = BigInt::one();
    real.coeffs()
        .iter()
        .enumerate()
        .map(|(j, a)| {
            if j > 0 {
                factorial *= j;
            }
            let b = a * &factorial;
            if b.is_integer() {
                Ok(b.to_integer())
            } else {
                Err(Error::Integrality {
                    index: j,
                    value: crate::scalar::format_rational(&b),
                })
            }
        })
        .collect()
}

/// The map sending `(alpha_1, ..., alpha_n)` to the roots of `P_n`.
pub fn phi_embedding<C: ComplexFloat>(
    alpha_values: &[CoefficientScalar],
    ctx: C::Ctx,
    cfg: &RootSolveConfig,
) -> Result<PolynomialRealization<C>> {
    if alpha_values.is_empty() {
        return Err(Error::input("the embedding needs at least one alpha value"));
    }
    let alpha = AlphaSequence::Explicit(alpha_values.to_vec());
    let real = build_polynomial::<C>(&alpha, alpha_values.len(), ctx)?;
    let roots = find_roots(&real, cfg)?;
    real.with_roots(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rationals(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(n, d)| q(n, d)).collect()
    }

    #[test]
    fn constant_one_collapses_to_linear() {
        let a = AlphaSequence::Constant(CoefficientScalar::integer(1));
        let p = build_polynomial::<BigRational>(&a, 5, ()).unwrap();
        assert_eq!(p.coeffs(), rationals(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(p.nominal_degree(), 5);
        assert_eq!(p.effective_degree(), 1);
    }

    #[test]
    fn polylog_examples() {
        let p = build_polynomial::<BigRational>(&AlphaSequence::polylog(0.0), 5, ()).unwrap();
        assert_eq!(
            p.coeffs(),
            rationals(&[(1, 1), (-1, 1), (-1, 2), (-1, 6), (1, 24), (19, 120)])
        );
        let p = build_polynomial::<BigRational>(&AlphaSequence::polylog(-2.0), 4, ()).unwrap();
        assert_eq!(
            p.coeffs(),
            rationals(&[(1, 1), (-1, 1), (-7, 2), (-31, 6), (-23, 24)])
        );
    }

    #[test]
    fn zero_targets_give_one() {
        let p = build_polynomial::<BigRational>(&AlphaSequence::zeros(4), 4, ()).unwrap();
        assert_eq!(p.coeffs(), rationals(&[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]));
        assert_eq!(p.effective_degree(), 0);
    }

    #[test]
    fn build_errors() {
        let short = AlphaSequence::explicit_integers(&[1, 2]);
        assert!(matches!(build_polynomial::<BigRational>(&short, 3, ()), Err(Error::Input(_))));
        let half = AlphaSequence::polylog(0.5);
        assert!(matches!(build_polynomial::<BigRational>(&half, 3, ()), Err(Error::Backend(_))));
        assert!(build_polynomial::<Complex64>(&half, 3, ()).is_ok());
    }

    #[test]
    fn series_path_agrees() {
        for alpha in [
            AlphaSequence::Constant(CoefficientScalar::integer(1)),
            AlphaSequence::polylog(0.0),
            AlphaSequence::polylog(-3.0),
        ] {
            let a = build_polynomial::<BigRational>(&alpha, 5, ()).unwrap();
            let b = build_via_series::<BigRational>(&alpha, 5, ()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn scaled_integers() {
        let b = |s: f64, n| {
            let p = build_polynomial::<BigRational>(&AlphaSequence::polylog(s), n, ()).unwrap();
            scaled_integer_coefficients(&p).unwrap()
        };
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(b(0.0, 5), ints(&[1, -1, -1, -1, 1, 19]));
        assert_eq!(b(-1.0, 4), ints(&[1, -1, -3, -7, 1]));
        assert_eq!(b(-3.0, 4), ints(&[1, -1, -15, -115, -215]));
        let p = build_polynomial::<BigRational>(&AlphaSequence::polylog(2.0), 3, ()).unwrap();
        assert!(matches!(
            scaled_integer_coefficients(&p),
            Err(Error::Integrality { index: 2, .. })
        ));
    }

    #[test]
    fn float_effective_degree_uses_threshold() {
        let c = |re: f64| Complex64::new(re, 0.0);
        assert_eq!(effective_degree(&[c(1.0), c(-1.0), c(1e-13)]), 1);
        assert_eq!(effective_degree(&[c(1.0), c(-1.0), c(1e-11)]), 2);
        assert_eq!(effective_degree(&[c(1.0)]), 0);
    }

    #[test]
    fn constant_term_must_be_one() {
        let s = Series::new(rationals(&[(2, 1), (1, 1)])).unwrap();
        assert!(matches!(PolynomialRealization::new(s), Err(Error::Domain(_))));
    }

    #[test]
    fn embedding_examples() {
        let cfg = RootSolveConfig::default();
        let one = [CoefficientScalar::integer(1)];
        let r = phi_embedding::<Complex64>(&one, (), &cfg).unwrap();
        let roots = r.roots().unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots.roots()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        let r = phi_embedding::<Complex64>(
            &[CoefficientScalar::integer(1), CoefficientScalar::integer(2)],
            (),
            &cfg,
        )
        .unwrap();
        let got = r.roots().unwrap().roots();
        let s3 = 3f64.sqrt();
        assert!((got[0] - Complex64::new(-1.0 - s3, 0.0)).norm() < 1e-12);
        assert!((got[1] - Complex64::new(-1.0 + s3, 0.0)).norm() < 1e-12);

        let r = phi_embedding::<Complex64>(
            &[CoefficientScalar::integer(1), CoefficientScalar::integer(1)],
            (),
            &cfg,
        )
        .unwrap();
        assert_eq!(r.effective_degree(), 1);
        assert_eq!(r.roots().unwrap().total_multiplicity(), 1);
        assert!((r.roots().unwrap().roots()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        assert!(phi_embedding::<Complex64>(&[], (), &cfg).is_err());
    }
}
