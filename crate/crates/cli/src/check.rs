//! Random targets through every route: exact Newton sums, the log-series
//! comparison and, in `f64`, the sums over extracted roots.

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plethys::format::{Cell, Kind, Table};
use plethys::scalar::{rational_to_f64, CoefficientScalar};
use plethys::verify::{log_series_check, power_sums_from_roots};
use plethys::{build_polynomial, find_roots, power_sums_newton, AlphaSequence, RootSolveConfig};

/// Returns the report and the number of cases where an exact route failed.
pub fn run(seed: u64, cases: usize, n_max: usize) -> plethys::Result<(Table, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cfg = RootSolveConfig::default();
    let mut table = Table::new(
        Kind::Check,
        &["case", "n", "newton_exact", "log_exact", "root_max_deviation"],
    )
    .with_meta("seed", seed);
    let mut failures = 0;
    for case in 0..cases {
        let n = rng.gen_range(1..=n_max.max(1));
        let alpha: Vec<BigRational> = (0..n)
            .map(|_| BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()))
            .collect();
        let seq = AlphaSequence::Explicit(alpha.iter().cloned().map(CoefficientScalar::Rational).collect());

        let exact = build_polynomial::<BigRational>(&seq, n, ())?;
        let newton_ok = power_sums_newton(&exact, n) == alpha;
        let log_ok = log_series_check(&exact, &seq)?.passed;
        if !(newton_ok && log_ok) {
            failures += 1;
        }

        let approx = build_polynomial::<Complex64>(&seq, n, ())?;
        let deviation = match find_roots(&approx, &cfg) {
            Ok(r) => power_sums_from_roots(&r, n, ())
                .iter()
                .zip(&alpha)
                .map(|(s, a)| (s - Complex64::new(rational_to_f64(a), 0.0)).norm())
                .fold(0.0, f64::max),
            Err(_) => f64::NAN,
        };
        table.push(vec![
            case.into(),
            n.into(),
            newton_ok.into(),
            log_ok.into(),
            Cell::Float(deviation),
        ]);
    }
    Ok((table, failures))
}
