//! Eigenvalues of a general complex square matrix: Householder reduction to
//! upper Hessenberg form, then single-shift complex QR with deflation.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<Complex64>> {
    if !a.is_square() {
        return Err(Error::argument(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut h = a.clone();
    hessenberg(&mut h);
    qr_eigenvalues(h, n, a.fro_norm())
}

fn hessenberg(h: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        let mut v = x;
        v[0] += phase * norm;
        let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        // H ← P H P with P = I - 2vv*/vv on rows/cols k+1..n
        for j in 0..n {
            let mut dot = ZERO;
            for (i, vi) in v.iter().enumerate() {
                dot += vi.conj() * h[(k + 1 + i, j)];
            }
            let f = dot * (2.0 / vv);
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, j)] -= vi * f;
            }
        }
        for i in 0..n {
            let mut dot = ZERO;
            for (j, vj) in v.iter().enumerate() {
                dot += h[(i, k + 1 + j)] * vj;
            }
            let f = dot * (2.0 / vv);
            for (j, vj) in v.iter().enumerate() {
                h[(i, k + 1 + j)] -= f * vj.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

/// Eigenvalue of the trailing 2×2 block `[[a, b], [c, d]]` closer to `d`.
fn wilkinson(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let r1 = d - b * c / (half + disc);
    let r2 = d - b * c / (half - disc);
    let pick = if (half + disc).norm() >= (half - disc).norm() {
        r1
    } else {
        r2
    };
    if pick.re.is_finite() && pick.im.is_finite() {
        pick
    } else {
        d
    }
}

fn qr_eigenvalues(mut h: ComplexMatrix, n: usize, norm: f64) -> Result<Vec<Complex64>> {
    let mut out = vec![ZERO; n];
    let eps = f64::EPSILON;
    let cap = 60 * n.max(1);
    let mut hi = n;
    let mut iter = 0;
    let mut since_deflation = 0;
    while hi > 0 {
        if hi == 1 {
            out[0] = h[(0, 0)];
            break;
        }
        // Find the active block [lo, hi).
        let mut lo = hi - 1;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let scale = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let scale = if scale == 0.0 { norm } else { scale };
            if sub <= eps * scale {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            out[hi - 1] = h[(hi - 1, hi - 1)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        iter += 1;
        since_deflation += 1;
        if iter > cap {
            return Err(Error::NoConvergence {
                norm,
                iterations: iter - 1,
            });
        }
        let m = hi - 1;
        let mu = if since_deflation % 11 == 10 {
            // exceptional shift to break cycles
            h[(m, m)] + Complex64::new(h[(m, m - 1)].norm(), 0.0) * 0.75
        } else {
            wilkinson(h[(m - 1, m - 1)], h[(m - 1, m)], h[(m, m - 1)], h[(m, m)])
        };

        // One explicit shifted QR step on the block, via Givens rotations.
        for i in lo..hi {
            h[(i, i)] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - lo - 1);
        for k in lo..hi - 1 {
            let a = h[(k, k)];
            let b = h[(k + 1, k)];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), ZERO)
            } else {
                (a / r, b / r)
            };
            // G = [[c*, s*], [-s, c]] applied to rows k, k+1
            for j in k..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c.conj() * x + s.conj() * y;
                h[(k + 1, j)] = -s * x + c * y;
            }
            rots.push((c, s));
        }
        for (idx, k) in (lo..hi - 1).enumerate() {
            let (c, s) = rots[idx];
            // right-multiply by G* on columns k, k+1
            for i in 0..=(k + 1).min(hi - 1) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s;
                h[(i, k + 1)] = -x * s.conj() + y * c.conj();
            }
        }
        for i in lo..hi {
            h[(i, i)] += mu;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::BlockKind;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn triangular_spectrum() {
        let j = ComplexMatrix::block(BlockKind::Jordan(Complex64::new(3.0, 0.0)), 3).unwrap();
        for z in eigenvalues(&j).unwrap() {
            assert!((z - Complex64::new(3.0, 0.0)).norm() < 1e-4);
        }
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let a = ComplexMatrix::from_real_rows(&[&[0., -1.], &[1., 0.]]);
        let ev = sorted(eigenvalues(&a).unwrap());
        assert!((ev[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((ev[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let a = ComplexMatrix::from_real_rows(&[&[6., -11., 6.], &[1., 0., 0.], &[0., 1., 0.]]);
        let ev = sorted(eigenvalues(&a).unwrap());
        for (z, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((z - Complex64::new(want, 0.0)).norm() < 1e-10, "{z}");
        }
    }

    #[test]
    fn empty_and_non_square() {
        assert!(eigenvalues(&ComplexMatrix::zeros(0, 0)).unwrap().is_empty());
        assert!(eigenvalues(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
