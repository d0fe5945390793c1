use std::f64::consts::TAU;

use num_complex::Complex64;

use super::RootSolveConfig;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, ComplexFloat};

/// Angular offset of the initial circle, keeps seeds off the real axis.
const SEED_ANGLE_OFFSET: f64 = 0.4;

/// `(P(z), P'(z))` by Horner's rule; `coeffs[j]` multiplies `z^j`.
fn horner<C: Coeff>(coeffs: &[C], z: &C) -> (C, C) {
    let d = coeffs.len() - 1;
    let mut p = coeffs[d].clone();
    let mut dp = C::zero(z.ctx());
    for a in coeffs[..d].iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(a);
    }
    (p, dp)
}

fn magnitude_sum(abs_coeffs: &[f64], r: f64) -> f64 {
    abs_coeffs.iter().rev().fold(0.0, |acc, a| acc * r + a)
}

/// `(|P(z)|, sum_j |a_j| |z|^j)`.
pub(super) fn residual<C: Coeff>(coeffs: &[C], z: &C) -> (f64, f64) {
    let abs: Vec<f64> = coeffs.iter().map(Coeff::magnitude).collect();
    let (p, _) = horner(coeffs, z);
    (p.magnitude(), magnitude_sum(&abs, z.magnitude()))
}

/// Points on the circle of radius `|a_0 / a_d|^(1/d)`, the geometric mean of
/// the root magnitudes.
fn circle_seeds(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let log_r = (coeffs[0].norm().ln() - coeffs[d].norm().ln()) / d as f64;
    let r = log_r.exp();
    (0..d)
        .map(|i| Complex64::from_polar(r, TAU * i as f64 / d as f64 + SEED_ANGLE_OFFSET))
        .collect()
}

/// Starting points: the circle for machine precision; for extended
/// precision, the result of a machine-precision pass when it is finite.
pub(super) fn seeds<C: ComplexFloat>(coeffs: &[C], cfg: &RootSolveConfig) -> Vec<C> {
    let ctx = coeffs[0].ctx();
    let c64: Vec<Complex64> = coeffs.iter().map(|c| c.to_c64()).collect();
    let circle = circle_seeds(&c64);
    let start = if C::unit_roundoff(ctx) < f64::EPSILON / 4.0 {
        let (rough, _) = iterate(&c64, circle.clone(), cfg.convergence_tol, cfg.max_iterations);
        if rough.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            rough
        } else {
            circle
        }
    } else {
        circle
    };
    start.into_iter().map(|z| C::from_c64(z, ctx)).collect()
}

/// Runs Aberth–Ehrlich until every root satisfies the backward-error test.
pub(super) fn solve<C: ComplexFloat>(
    coeffs: &[C],
    seeds: Vec<C>,
    tol: f64,
    max_iterations: usize,
) -> Result<Vec<C>> {
    let (mut roots, converged) = iterate(coeffs, seeds, tol, max_iterations);
    if converged {
        polish_clusters(coeffs, &mut roots);
        Ok(roots)
    } else {
        Err(convergence_error(coeffs, &roots, max_iterations))
    }
}

fn convergence_error<C: ComplexFloat>(coeffs: &[C], roots: &[C], iterations: usize) -> Error {
    Error::Convergence {
        iterations,
        best: roots.iter().map(|z| z.to_c64()).collect(),
        residuals: roots.iter().map(|z| residual(coeffs, z).0).collect(),
    }
}

/// Gauss–Seidel Aberth sweeps. A root is frozen once it passes the
/// backward-error test; returns the iterate and whether all roots passed.
fn iterate<C: ComplexFloat>(
    coeffs: &[C],
    mut z: Vec<C>,
    tol: f64,
    max_iterations: usize,
) -> (Vec<C>, bool) {
    let d = z.len();
    let ctx = coeffs[0].ctx();
    let one = C::one(ctx);
    let abs: Vec<f64> = coeffs.iter().map(Coeff::magnitude).collect();
    let mut done = vec![false; d];

    for _ in 0..max_iterations {
        let mut active = false;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(coeffs, &z[i]);
            if p.magnitude() <= tol * magnitude_sum(&abs, z[i].magnitude()) {
                done[i] = true;
                continue;
            }
            active = true;
            if dp.is_zero() {
                // stationary point: nudge off it
                let nudge = C::from_c64(Complex64::new(1e-3, 1e-3), ctx);
                z[i] = z[i].add(&nudge.mul(&one.add(&z[i])));
                continue;
            }
            let newton = p.div(&dp);
            let mut repulsion = C::zero(ctx);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let diff = z[i].sub(zj);
                    if !diff.is_zero() {
                        repulsion = repulsion.add(&one.div(&diff));
                    }
                }
            }
            let denom = one.sub(&newton.mul(&repulsion));
            let step = if denom.is_zero() { newton } else { newton.div(&denom) };
            z[i] = z[i].sub(&step);
        }
        if !active {
            return (z, true);
        }
    }
    let converged = z
        .iter()
        .all(|zi| horner(coeffs, zi).0.magnitude() <= tol * magnitude_sum(&abs, zi.magnitude()));
    (z, converged)
}

/// Close neighbours this far apart (relative to the largest root) get extra sweeps.
const CLUSTER_WATCH: f64 = 1e-4;
const POLISH_SWEEPS: usize = 16;

/// Near a multiple root the backward-error test is met while the copies are
/// still about `sqrt(tol)` apart. Further Aberth steps on those roots are
/// kept only while they lower `|P|`.
fn polish_clusters<C: ComplexFloat>(coeffs: &[C], z: &mut [C]) {
    let d = z.len();
    let approx: Vec<Complex64> = z.iter().map(|r| r.to_c64()).collect();
    let scale = approx.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let watched: Vec<usize> = (0..d)
        .filter(|&i| (0..d).any(|j| j != i && (approx[i] - approx[j]).norm() < CLUSTER_WATCH * scale))
        .collect();
    if watched.is_empty() {
        return;
    }
    let ctx = coeffs[0].ctx();
    let one = C::one(ctx);
    let mut active = vec![true; d];
    for _ in 0..POLISH_SWEEPS {
        let mut moved = false;
        for &i in &watched {
            if !active[i] {
                continue;
            }
            let (p, dp) = horner(coeffs, &z[i]);
            if p.is_zero() || dp.is_zero() {
                active[i] = false;
                continue;
            }
            let newton = p.div(&dp);
            let mut repulsion = C::zero(ctx);
            for (j, zj) in z.iter().enumerate() {
                let diff = z[i].sub(zj);
                if j != i && !diff.is_zero() {
                    repulsion = repulsion.add(&one.div(&diff));
                }
            }
            let denom = one.sub(&newton.mul(&repulsion));
            let step = if denom.is_zero() { newton } else { newton.div(&denom) };
            let candidate = z[i].sub(&step);
            if horner(coeffs, &candidate).0.magnitude() < p.magnitude() {
                z[i] = candidate;
                moved = true;
            } else {
                active[i] = false;
            }
        }
        if !moved {
            break;
        }
    }
}

/// Independent Newton refinement of each seed.
pub(super) fn newton_polish<C: ComplexFloat>(
    coeffs: &[C],
    mut z: Vec<C>,
    tol: f64,
    max_iterations: usize,
) -> Result<Vec<C>> {
    let abs: Vec<f64> = coeffs.iter().map(Coeff::magnitude).collect();
    for zi in z.iter_mut() {
        let mut ok = false;
        for _ in 0..max_iterations {
            let (p, dp) = horner(coeffs, zi);
            if p.magnitude() <= tol * magnitude_sum(&abs, zi.magnitude()) {
                ok = true;
                break;
            }
            if dp.is_zero() {
                break;
            }
            *zi = zi.sub(&p.div(&dp));
        }
        if !ok {
            let roots = z.clone();
            return Err(convergence_error(coeffs, &roots, max_iterations));
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_value_and_derivative() {
        let c = |x: f64| Complex64::new(x, 0.0);
        // 1 - x - x^2/2 at x = 2: -3, derivative -1 - 2 = -3
        let (p, dp) = horner(&[c(1.0), c(-1.0), c(-0.5)], &c(2.0));
        assert_eq!(p, c(-3.0));
        assert_eq!(dp, c(-3.0));
    }

    #[test]
    fn circle_radius_is_geometric_mean() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let s = circle_seeds(&[c(4.0), c(0.0), c(1.0)]);
        assert_eq!(s.len(), 2);
        for z in s {
            assert!((z.norm() - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn reports_best_iterate_on_failure() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let coeffs = [c(1.0), c(-3.0), c(0.5), c(2.0)];
        let seeds = circle_seeds(&coeffs);
        match solve(&coeffs, seeds, 1e-14, 1) {
            Err(Error::Convergence { best, residuals, iterations }) => {
                assert_eq!(iterations, 1);
                assert_eq!(best.len(), 3);
                assert_eq!(residuals.len(), 3);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }
}
