use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::svd::svd;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Householder QR of a square matrix: `A = Q·R` with `Q` unitary and `R`
/// upper triangular.
pub fn qr(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !a.is_square() {
        return Err(Error::argument("qr expects a square matrix"));
    }
    let n = a.rows();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let x: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
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
        for j in 0..n {
            let mut dot = ZERO;
            for (i, vi) in v.iter().enumerate() {
                dot += vi.conj() * r[(k + i, j)];
            }
            let f = dot * (2.0 / vv);
            for (i, vi) in v.iter().enumerate() {
                r[(k + i, j)] -= vi * f;
            }
        }
        for i in 0..n {
            let mut dot = ZERO;
            for (j, vj) in v.iter().enumerate() {
                dot += q[(i, k + j)] * vj;
            }
            let f = dot * (2.0 / vv);
            for (j, vj) in v.iter().enumerate() {
                q[(i, k + j)] -= f * vj.conj();
            }
        }
        for i in k + 1..n {
            r[(i, k)] = ZERO;
        }
    }
    Ok((q, r))
}

/// Inverse through the SVD. Fails when `σ_min ≤ tau`.
pub fn inverse(a: &ComplexMatrix, tau: f64) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::argument(format!(
            "cannot invert a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let s = svd(a)?;
    let smin = s.sigma.last().copied().unwrap_or(f64::INFINITY);
    if smin <= tau {
        return Err(Error::argument(format!(
            "matrix is numerically singular (sigma_min {smin:e} <= {tau:e})"
        )));
    }
    let n = a.rows();
    let mut vs = s.v.clone();
    for (k, &sk) in s.sigma.iter().enumerate() {
        for i in 0..n {
            vs[(i, k)] /= sk;
        }
    }
    Ok(vs.matmul(&s.u.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qr_reconstructs() {
        let a = ComplexMatrix::from_fn(4, 4, |i, j| {
            Complex64::new((i * 3 + j) as f64 % 5.0, (i + j) as f64 % 2.0)
        });
        let (q, r) = qr(&a).unwrap();
        assert!(q.unitarity_defect() < 1e-13);
        assert!(q.matmul(&r).sub(&a).fro_norm() < 1e-12);
        for i in 0..4 {
            for j in 0..i {
                assert_eq!(r[(i, j)], ZERO);
            }
        }
    }

    #[test]
    fn inverse_of_two_by_two() {
        let a = ComplexMatrix::from_real_rows(&[&[2., 1.], &[1., 1.]]);
        let inv = inverse(&a, 1e-12).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[1., -1.], &[-1., 2.]]);
        assert!(inv.sub(&want).fro_norm() < 1e-13);
        assert!(inverse(&ComplexMatrix::zeros(2, 2), 1e-12).is_err());
        assert_eq!(
            inverse(&ComplexMatrix::zeros(0, 0), 1e-12).unwrap().shape(),
            (0, 0)
        );
    }
}
