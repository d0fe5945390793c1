//! Providers of power-sum targets `alpha_1, alpha_2, ...`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{CoefficientScalar, Coeff};

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaSequence {
    /// A finite list; `term(k)` exists for `k <= len`.
    Explicit(Vec<CoefficientScalar>),
    /// `alpha_k = c` for every `k`.
    Constant(CoefficientScalar),
    /// `alpha_k = k^(1 - s)`, whose log-generating function is `Li_s(x)`.
    Polylog { s: Complex64 },
}

impl AlphaSequence {
    pub fn polylog(s: f64) -> Self {
        AlphaSequence::Polylog {
            s: Complex64::new(s, 0.0),
        }
    }

    pub fn zeros(len: usize) -> Self {
        AlphaSequence::Explicit(vec![CoefficientScalar::integer(0); len])
    }

    pub fn explicit_integers(values: &[i64]) -> Self {
        AlphaSequence::Explicit(values.iter().map(|&v| CoefficientScalar::integer(v)).collect())
    }

    /// Number of terms available, `None` for infinite providers.
    pub fn len(&self) -> Option<usize> {
        match self {
            AlphaSequence::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// `alpha_k` (1-based) in the backend described by `ctx`.
    pub fn term<C: Coeff>(&self, k: usize, ctx: C::Ctx) -> Result<C> {
        if k == 0 {
            return Err(Error::input("alpha terms are indexed from 1"));
        }
        match self {
            AlphaSequence::Explicit(values) => {
                let v = values.get(k - 1).ok_or_else(|| {
                    Error::input(format!(
                        "explicit alpha sequence has {} terms, term {k} requested",
                        values.len()
                    ))
                })?;
                C::from_scalar(v, ctx)
            }
            AlphaSequence::Constant(c) => C::from_scalar(c, ctx),
            AlphaSequence::Polylog { s } => {
                C::power_of_integer(k as u64, Complex64::new(1.0, 0.0) - s, ctx)
            }
        }
    }

    /// `alpha_1 ..= alpha_n`.
    pub fn terms<C: Coeff>(&self, n: usize, ctx: C::Ctx) -> Result<Vec<C>> {
        (1..=n).map(|k| self.term(k, ctx)).collect()
    }

    /// As [`Self::terms`] but stops at the end of a finite provider.
    pub fn available_terms<C: Coeff>(&self, n: usize, ctx: C::Ctx) -> Result<Vec<C>> {
        let n = self.len().map_or(n, |len| len.min(n));
        self.terms(n, ctx)
    }
}
