//! Polynomials with prescribed negative power sums.
//!
//! Given targets `alpha_1, alpha_2, ...`, the polynomial
//! `P_n(x) = [exp(-sum_k alpha_k x^k / k)]_{<= n}` has roots `rho_i` with
//! `sum_i rho_i^{-k} = alpha_k` for every `k <= n`. This crate builds `P_n`
//! in exact rational, `f64` complex or arbitrary-precision complex
//! arithmetic, extracts its roots and checks the power sums by several
//! independent routes.
//!
//! ```
//! use plethys::{build_polynomial, power_sums_newton, AlphaSequence};
//! use num_rational::BigRational;
//!
//! let alpha = AlphaSequence::polylog(0.0); // alpha_k = k
//! let p = build_polynomial::<BigRational>(&alpha, 5, ()).unwrap();
//! assert_eq!(p.coeffs()[5].to_string(), "19/120");
//! let sums = power_sums_newton(&p, 5);
//! assert_eq!(sums[4], BigRational::from_integer(5.into()));
//! ```

pub mod alpha;
pub mod bigcomplex;
pub mod construct;
pub mod error;
pub mod format;
pub mod polylog;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod series;
pub mod verify;

pub use alpha::AlphaSequence;
pub use bigcomplex::{BigComplex, Precision};
pub use construct::{build_polynomial, scaled_integer_coefficients, PolynomialRealization};
pub use error::{Error, Result};
pub use polylog::{eulerian_polynomial, zeta_convergence, zeta_value};
pub use roots::{find_roots, RootMethod, RootMultiset, RootSolveConfig};
pub use scalar::{Backend, Coeff, CoefficientScalar, ComplexFloat};
pub use series::{Series, TruncatedSeries};
pub use verify::{error_matrix, log_series_check, power_sums_newton, verification_table, ErrorMatrix};

pub use astro_float::BigFloat;
