//! Complex root extraction for `P_n`.
//!
//! The default method is Aberth–Ehrlich simultaneous iteration run in the
//! polynomial's own precision. Extended-precision solves are seeded from a
//! machine-precision pass. The companion-matrix method computes eigenvalues
//! with a shifted QR iteration and polishes them by Newton steps; it exists
//! as an independent cross-check.

mod aberth;
mod companion;

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::construct::PolynomialRealization;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, ComplexFloat};
use crate::series::Series;

pub use companion::companion_eigenvalues;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootMethod {
    Aberth,
    Companion,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSolveConfig {
    pub method: RootMethod,
    pub max_iterations: usize,
    /// Backward-error tolerance: a root `z` is accepted once
    /// `|P(z)| <= convergence_tol * sum_j |a_j| |z|^j`.
    pub convergence_tol: f64,
    /// Working precision for extended-precision runs.
    pub precision_bits: u32,
}

impl Default for RootSolveConfig {
    fn default() -> Self {
        RootSolveConfig {
            method: RootMethod::Aberth,
            max_iterations: 200,
            convergence_tol: 1e-14,
            precision_bits: 256,
        }
    }
}

impl RootSolveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.convergence_tol > 0.0) {
            return Err(Error::input("convergence tolerance must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::input("max_iterations must be at least 1"));
        }
        Ok(())
    }

    /// Tolerance actually used to stop: never looser than the configured
    /// one, tighter when the working precision allows it.
    pub(crate) fn stopping_tol<C: ComplexFloat>(&self, ctx: C::Ctx, degree: usize) -> f64 {
        let floor = 256.0 * degree.max(1) as f64 * C::unit_roundoff(ctx);
        self.convergence_tol.min(floor.max(C::unit_roundoff(ctx)))
    }
}

/// Roots with multiplicities and residual diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset<C> {
    roots: Vec<C>,
    multiplicities: Vec<usize>,
    /// `|P(root)|`.
    residuals: Vec<f64>,
    /// `sum_j |a_j| |root|^j`, the scale of the backward-error test.
    residual_scales: Vec<f64>,
}

impl<C: Coeff> RootMultiset<C> {
    pub fn empty() -> Self {
        RootMultiset {
            roots: Vec::new(),
            multiplicities: Vec::new(),
            residuals: Vec::new(),
            residual_scales: Vec::new(),
        }
    }

    /// Simple roots with unknown residuals.
    pub fn from_simple_roots(roots: Vec<C>) -> Self {
        let k = roots.len();
        RootMultiset {
            roots,
            multiplicities: vec![1; k],
            residuals: vec![f64::NAN; k],
            residual_scales: vec![f64::NAN; k],
        }
    }

    pub fn roots(&self) -> &[C] {
        &self.roots
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn residual_scales(&self) -> &[f64] {
        &self.residual_scales
    }

    /// Number of distinct roots.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Whether every root passes `|P(z)| <= tol * sum_j |a_j| |z|^j`.
    pub fn within_backward_bound(&self, tol: f64) -> bool {
        self.residuals
            .iter()
            .zip(&self.residual_scales)
            .all(|(r, s)| *r <= tol * s)
    }
}

impl<C: ComplexFloat> RootMultiset<C> {
    pub fn to_c64(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.to_c64()).collect()
    }
}

/// All roots of `P_n` (its effective-degree part), sorted by real then
/// imaginary part.
pub fn find_roots<C: ComplexFloat>(
    real: &PolynomialRealization<C>,
    cfg: &RootSolveConfig,
) -> Result<RootMultiset<C>> {
    cfg.validate()?;
    let degree = real.effective_degree();
    if degree == 0 {
        return Ok(RootMultiset::empty());
    }
    let coeffs = &real.coeffs()[..=degree];
    let ctx = coeffs[0].ctx();
    let tol = cfg.stopping_tol::<C>(ctx, degree);
    let roots = match cfg.method {
        RootMethod::Aberth => {
            let seeds = aberth::seeds(coeffs, cfg);
            aberth::solve(coeffs, seeds, tol, cfg.max_iterations)?
        }
        RootMethod::Companion => {
            let c64: Vec<Complex64> = coeffs.iter().map(|c| c.to_c64()).collect();
            let eig = companion_eigenvalues(&c64, cfg.max_iterations.max(30) * degree)?;
            let seeds = eig.into_iter().map(|z| C::from_c64(z, ctx)).collect();
            aberth::newton_polish(coeffs, seeds, tol, cfg.max_iterations)?
        }
    };
    Ok(assemble(coeffs, roots))
}

const CLUSTER_RADIUS: f64 = 1e-7;

/// Groups nearly coincident roots, evaluates residuals and sorts.
fn assemble<C: ComplexFloat>(coeffs: &[C], roots: Vec<C>) -> RootMultiset<C> {
    let approx: Vec<Complex64> = roots.iter().map(|r| r.to_c64()).collect();
    let scale = approx.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let radius = CLUSTER_RADIUS * scale;

    let mut parent: Vec<usize> = (0..roots.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (approx[i] - approx[j]).norm() < radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; roots.len()];
    for i in 0..roots.len() {
        let r = find(&mut parent, i);
        if group_of[r] == usize::MAX {
            group_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[r]].push(i);
    }

    let mut entries: Vec<(C, usize, f64, f64)> = groups
        .into_iter()
        .map(|members| {
            let ctx = roots[members[0]].ctx();
            let sum = members
                .iter()
                .fold(C::zero(ctx), |acc, &i| acc.add(&roots[i]));
            let center = sum.div_int(members.len() as i64);
            let (residual, scale) = aberth::residual(coeffs, &center);
            (center, members.len(), residual, scale)
        })
        .collect();
    entries.sort_by(|a, b| compare_c64(a.0.to_c64(), b.0.to_c64()));

    let mut out = RootMultiset::empty();
    for (root, mult, residual, scale) in entries {
        out.roots.push(root);
        out.multiplicities.push(mult);
        out.residuals.push(residual);
        out.residual_scales.push(scale);
    }
    out
}

fn compare_c64(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Expands `prod_i (1 - x / root_i)^{m_i}`.
pub fn reconstruct_from_roots<C: ComplexFloat>(
    rm: &RootMultiset<C>,
    ctx: C::Ctx,
) -> Result<Series<C>> {
    let order = rm.total_multiplicity();
    let mut coeffs = vec![C::zero(ctx); order + 1];
    coeffs[0] = C::one(ctx);
    let mut degree = 0;
    for (root, &mult) in rm.roots.iter().zip(&rm.multiplicities) {
        if root.is_zero() {
            return Err(Error::ZeroRoot);
        }
        let inv = C::one(ctx).div(root);
        for _ in 0..mult {
            degree += 1;
            for j in (1..=degree).rev() {
                coeffs[j] = coeffs[j].sub(&coeffs[j - 1].mul(&inv));
            }
        }
    }
    Series::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::AlphaSequence;
    use crate::bigcomplex::{BigComplex, Precision};
    use crate::construct::build_polynomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn realization(coeffs: &[f64]) -> PolynomialRealization<Complex64> {
        let s = Series::new(coeffs.iter().map(|&x| c(x, 0.0)).collect()).unwrap();
        PolynomialRealization::new(s).unwrap()
    }

    #[test]
    fn linear_and_quadratic() {
        let cfg = RootSolveConfig::default();
        for method in [RootMethod::Aberth, RootMethod::Companion] {
            let cfg = RootSolveConfig { method, ..cfg.clone() };
            let r = find_roots(&realization(&[1.0, -1.0]), &cfg).unwrap();
            assert_eq!(r.total_multiplicity(), 1);
            assert!((r.roots()[0] - c(1.0, 0.0)).norm() < 1e-15);

            let r = find_roots(&realization(&[1.0, -1.0, -0.5]), &cfg).unwrap();
            let s3 = 3f64.sqrt();
            assert!((r.roots()[0] - c(-1.0 - s3, 0.0)).norm() < 1e-12, "{method:?}");
            assert!((r.roots()[1] - c(-1.0 + s3, 0.0)).norm() < 1e-12, "{method:?}");
            assert!(r.within_backward_bound(cfg.convergence_tol));
        }
    }

    #[test]
    fn degree_zero_is_empty() {
        let r = find_roots(&realization(&[1.0, 0.0, 0.0]), &RootSolveConfig::default()).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn double_root_is_clustered() {
        // (1 - x)^2 from alpha = (2, 2)
        let a = AlphaSequence::explicit_integers(&[2, 2]);
        let p = build_polynomial::<Complex64>(&a, 2, ()).unwrap();
        let r = find_roots(&p, &RootSolveConfig::default()).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.multiplicities(), &[2]);
        assert!((r.roots()[0] - c(1.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn reconstruct_examples() {
        let one = RootMultiset::from_simple_roots(vec![c(1.0, 0.0)]);
        let s = reconstruct_from_roots(&one, ()).unwrap();
        assert_eq!(s.coeffs(), &[c(1.0, 0.0), c(-1.0, 0.0)]);

        let s3 = 3f64.sqrt();
        let two = RootMultiset::from_simple_roots(vec![c(-1.0 + s3, 0.0), c(-1.0 - s3, 0.0)]);
        let s = reconstruct_from_roots(&two, ()).unwrap();
        for (got, want) in s.coeffs().iter().zip([1.0, -1.0, -0.5]) {
            assert!((got - c(want, 0.0)).norm() < 1e-12);
        }

        let empty = RootMultiset::<Complex64>::empty();
        assert_eq!(reconstruct_from_roots(&empty, ()).unwrap().coeffs(), &[c(1.0, 0.0)]);

        let zero = RootMultiset::from_simple_roots(vec![c(0.0, 0.0)]);
        assert!(matches!(reconstruct_from_roots(&zero, ()), Err(Error::ZeroRoot)));
    }

    #[test]
    fn polylog_quintic_power_sum() {
        let p = build_polynomial::<Complex64>(&AlphaSequence::polylog(0.0), 5, ()).unwrap();
        let r = find_roots(&p, &RootSolveConfig::default()).unwrap();
        assert_eq!(r.total_multiplicity(), 5);
        let s: Complex64 = r.roots().iter().map(|z| 1.0 / z).sum();
        assert!((s - c(1.0, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn deterministic_output() {
        let p = build_polynomial::<Complex64>(&AlphaSequence::polylog(0.0), 30, ()).unwrap();
        let a = find_roots(&p, &RootSolveConfig::default()).unwrap();
        let b = find_roots(&p, &RootSolveConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn extended_precision_solve() {
        let prec = Precision::new(256).unwrap();
        let p = build_polynomial::<BigComplex>(&AlphaSequence::polylog(0.0), 40, prec).unwrap();
        let r = find_roots(&p, &RootSolveConfig::default()).unwrap();
        assert_eq!(r.total_multiplicity(), 40);
        assert!(r.within_backward_bound(1e-60));
    }

    #[test]
    fn methods_agree() {
        let p = build_polynomial::<Complex64>(&AlphaSequence::polylog(0.0), 25, ()).unwrap();
        let a = find_roots(&p, &RootSolveConfig::default()).unwrap();
        let cfg = RootSolveConfig {
            method: RootMethod::Companion,
            ..RootSolveConfig::default()
        };
        let b = find_roots(&p, &cfg).unwrap();
        assert_eq!(a.len(), b.len());
        // conjugate pairs may swap order, so match each root to its nearest partner
        for x in a.roots() {
            let d = b.roots().iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-9 * x.norm().max(1.0), "{x} has no partner, nearest at {d}");
        }
    }

    #[test]
    fn invalid_config() {
        let cfg = RootSolveConfig {
            convergence_tol: 0.0,
            ..RootSolveConfig::default()
        };
        assert!(find_roots(&realization(&[1.0, -1.0]), &cfg).is_err());
    }
}
