use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues of the companion matrix of `sum_j coeffs[j] x^j`, by
/// single-shift complex QR on the (balanced) upper Hessenberg form.
pub fn companion_eigenvalues(coeffs: &[Complex64], max_sweeps: usize) -> Result<Vec<Complex64>> {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    if lead.norm() == 0.0 {
        return Err(Error::domain("leading coefficient is zero"));
    }
    // first row -c_{d-1} .. -c_0 of the monic polynomial, ones below the diagonal
    let mut h = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for j in 0..d {
        h[0][j] = -coeffs[d - 1 - j] / lead;
    }
    for i in 1..d {
        h[i][i - 1] = Complex64::new(1.0, 0.0);
    }
    balance(&mut h);
    hessenberg_qr(h, max_sweeps)
}

/// Parlett–Reinsch diagonal scaling by powers of two.
fn balance(a: &mut [Vec<Complex64>]) {
    const RADIX: f64 = 2.0;
    let n = a.len();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j][i].l1_norm();
                    r += a[i][j].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    a[i][j] /= f;
                }
                for row in a.iter_mut() {
                    row[i] *= f;
                }
            }
        }
    }
}

fn hessenberg_qr(mut h: Vec<Vec<Complex64>>, max_sweeps: usize) -> Result<Vec<Complex64>> {
    let n = h.len();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let eps = f64::EPSILON;
    loop {
        if hi == 0 {
            eig[0] = h[0][0];
            break;
        }
        let mut lo = hi;
        while lo > 0 {
            let s = h[lo - 1][lo - 1].l1_norm() + h[lo][lo].l1_norm();
            if h[lo][lo - 1].l1_norm() <= eps * s {
                h[lo][lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > max_sweeps {
            return Err(Error::Convergence {
                iterations: total,
                best: eig,
                residuals: Vec::new(),
            });
        }
        let shift = if iter.is_multiple_of(10) {
            // exceptional shift to break cycles
            h[hi][hi] + Complex64::new(h[hi][hi - 1].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(h[hi - 1][hi - 1], h[hi - 1][hi], h[hi][hi - 1], h[hi][hi])
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    Ok(eig)
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let m1 = (a + d) * 0.5 + disc;
    let m2 = (a + d) * 0.5 - disc;
    if (m1 - d).norm() < (m2 - d).norm() {
        m1
    } else {
        m2
    }
}

/// One shifted QR step on the active block `lo..=hi` using Givens rotations.
fn qr_sweep(h: &mut [Vec<Complex64>], lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[k][k] -= shift;
    }
    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[k][k];
        let b = h[k + 1][k];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (a / r, b / r)
        };
        for j in k..=hi {
            let x = h[k][j];
            let y = h[k + 1][j];
            h[k][j] = c.conj() * x + s.conj() * y;
            h[k + 1][j] = -s * x + c * y;
        }
        rotations.push((c, s));
    }
    for (idx, (c, s)) in rotations.into_iter().enumerate() {
        let k = lo + idx;
        for row in h.iter_mut().take((k + 2).min(hi) + 1).skip(lo) {
            let x = row[k];
            let y = row[k + 1];
            row[k] = x * c + y * s;
            row[k + 1] = -x * s.conj() + y * c.conj();
        }
    }
    for k in lo..=hi {
        h[k][k] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn cubic_with_complex_roots() {
        // (x - 2)(x^2 + 1) = x^3 - 2x^2 + x - 2
        let c = |x: f64| Complex64::new(x, 0.0);
        let eig = sorted(companion_eigenvalues(&[c(-2.0), c(1.0), c(-2.0), c(1.0)], 1000).unwrap());
        let want = [Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), c(2.0)];
        for (g, w) in eig.iter().zip(want) {
            assert!((g - w).norm() < 1e-12, "{g} vs {w}");
        }
    }

    #[test]
    fn complex_coefficients() {
        // (x - i)(x + 1 + i) = x^2 + x + (1 - i)... expand: x^2 + (1+i-i)x - i(1+i)
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let coeffs = [-i * (one + i), one, one];
        let eig = companion_eigenvalues(&coeffs, 1000).unwrap();
        for z in eig {
            let p = coeffs[0] + coeffs[1] * z + coeffs[2] * z * z;
            assert!(p.norm() < 1e-12);
        }
    }
}
