//! Complex SVD: Householder bidiagonalization, a diagonal phase scaling that
//! makes the bidiagonal real, then implicit-shift QR on the real bidiagonal.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `A = U · diag(sigma) · V*` with `U` rows×rows and `V` cols×cols unitary
/// and `sigma` nonincreasing of length `min(rows, cols)`.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl Svd {
    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    /// Rebuilds `U · diag(sigma) · V*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.u.rows(), self.v.rows());
        let mut us = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.sigma.iter().enumerate() {
            for i in 0..m {
                us[(i, k)] = self.u[(i, k)] * s;
            }
        }
        us.matmul(&self.v.adjoint())
    }
}

pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    if a.rows() < a.cols() {
        let t = svd_tall(&a.adjoint())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }
    svd_tall(a)
}

/// Singular values only (still computes the factors; matrices here are small).
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(svd(a)?.sigma)
}

/// Hermitian reflector `H = I - 2vv*/(v*v)` with `H x = -e^{i arg x_0} ‖x‖ e_1`.
/// Returns `None` when `x` is already zero below its head and needs no work.
fn reflector(x: &[Complex64]) -> Option<Vec<Complex64>> {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
    if tail == 0.0 {
        return None;
    }
    let head = x[0];
    let phase = if head.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        head / head.norm()
    };
    let mut v = x.to_vec();
    v[0] += phase * norm;
    Some(v)
}

/// `rows[r0..] ← H rows[r0..]` on columns `c0..`, `H` built from `v`.
fn reflect_rows(b: &mut ComplexMatrix, v: &[Complex64], r0: usize, c0: usize) {
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    for j in c0..b.cols() {
        let mut dot = ZERO;
        for (i, vi) in v.iter().enumerate() {
            dot += vi.conj() * b[(r0 + i, j)];
        }
        let f = dot * (2.0 / vv);
        for (i, vi) in v.iter().enumerate() {
            b[(r0 + i, j)] -= vi * f;
        }
    }
}

/// `cols[c0..] ← cols[c0..] H` on all rows, `H` built from `v`.
fn reflect_cols(b: &mut ComplexMatrix, v: &[Complex64], c0: usize) {
    let vv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    for i in 0..b.rows() {
        let mut dot = ZERO;
        for (j, vj) in v.iter().enumerate() {
            dot += b[(i, c0 + j)] * vj;
        }
        let f = dot * (2.0 / vv);
        for (j, vj) in v.iter().enumerate() {
            b[(i, c0 + j)] -= f * vj.conj();
        }
    }
}

fn rotate_cols(m: &mut ComplexMatrix, i: usize, j: usize, c: f64, s: f64) {
    for r in 0..m.rows() {
        let a = m[(r, i)];
        let b = m[(r, j)];
        m[(r, i)] = a * c + b * s;
        m[(r, j)] = b * c - a * s;
    }
}

fn svd_tall(a: &ComplexMatrix) -> Result<Svd> {
    let (m, n) = a.shape();
    let mut b = a.clone();
    let mut u = ComplexMatrix::identity(m);
    let mut v = ComplexMatrix::identity(n);

    for k in 0..n {
        let col: Vec<Complex64> = (k..m).map(|i| b[(i, k)]).collect();
        if let Some(h) = reflector(&col) {
            reflect_rows(&mut b, &h, k, k);
            reflect_cols(&mut u, &h, k);
        }
        for i in k + 1..m {
            b[(i, k)] = ZERO;
        }
        if k + 2 <= n {
            let row: Vec<Complex64> = (k + 1..n).map(|j| b[(k, j)].conj()).collect();
            if let Some(h) = reflector(&row) {
                reflect_cols(&mut b, &h, k + 1);
                reflect_cols(&mut v, &h, k + 1);
            }
            for j in k + 2..n {
                b[(k, j)] = ZERO;
            }
        }
    }

    // Phase scaling: rotate row k so the diagonal is real, then column k+1 so
    // the superdiagonal is real.
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    for k in 0..n {
        let z = b[(k, k)];
        if z.norm() > 0.0 {
            let p = z / z.norm();
            for i in 0..m {
                u[(i, k)] *= p;
            }
            b[(k, k)] = Complex64::new(z.norm(), 0.0);
            if k + 1 < n {
                b[(k, k + 1)] *= p.conj();
            }
        }
        d[k] = b[(k, k)].re;
        if k + 1 < n {
            let w = b[(k, k + 1)];
            if w.norm() > 0.0 {
                let q = w / w.norm();
                for i in 0..n {
                    v[(i, k + 1)] *= q.conj();
                }
                b[(k + 1, k + 1)] *= q.conj();
            }
            e[k] = w.norm();
        }
    }

    bidiagonal_qr(&mut d, &mut e, &mut u, &mut v, a.fro_norm())?;

    for (k, dk) in d.iter_mut().enumerate() {
        if *dk < 0.0 {
            *dk = -*dk;
            for i in 0..n {
                v[(i, k)] = -v[(i, k)];
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| d[y].total_cmp(&d[x]));
    let sigma: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let u_sorted = ComplexMatrix::from_fn(
        m,
        m,
        |i, j| {
            if j < n {
                u[(i, order[j])]
            } else {
                u[(i, j)]
            }
        },
    );
    let v_sorted = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Svd {
        u: u_sorted,
        sigma,
        v: v_sorted,
    })
}

/// Diagonalizes the real upper bidiagonal `(d, e)` in place, accumulating the
/// left rotations into the leading columns of `u` and right rotations into `v`.
fn bidiagonal_qr(
    d: &mut [f64],
    e: &mut [f64],
    u: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    norm: f64,
) -> Result<()> {
    let n = d.len();
    if n < 2 {
        return Ok(());
    }
    let eps = f64::EPSILON;
    let anorm = (0..n)
        .map(|i| d[i].abs() + if i + 1 < n { e[i].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let cap = 100 * n;
    let mut sweeps = 0;

    loop {
        for i in 0..n - 1 {
            if e[i].abs() <= eps * (d[i].abs() + d[i + 1].abs()) || e[i].abs() <= eps * eps * anorm
            {
                e[i] = 0.0;
            }
        }
        for di in d.iter_mut() {
            if di.abs() <= eps * anorm {
                *di = 0.0;
            }
        }

        // Trailing unreduced block [p, q].
        let mut q = n - 1;
        while q > 0 && e[q - 1] == 0.0 {
            q -= 1;
        }
        if q == 0 {
            return Ok(());
        }
        let mut p = q - 1;
        while p > 0 && e[p - 1] != 0.0 {
            p -= 1;
        }

        sweeps += 1;
        if sweeps > cap {
            return Err(Error::NoConvergence {
                norm,
                iterations: sweeps - 1,
            });
        }

        if let Some(i) = (p..q).find(|&i| d[i] == 0.0) {
            chase_row(d, e, u, i, q);
            continue;
        }
        if d[q] == 0.0 {
            chase_col(d, e, v, p, q);
            continue;
        }
        qr_sweep(d, e, u, v, p, q);
    }
}

/// `d[i] = 0`: annihilate `e[i]` with left rotations moving the bulge right.
fn chase_row(d: &mut [f64], e: &mut [f64], u: &mut ComplexMatrix, i: usize, q: usize) {
    let mut x = e[i];
    e[i] = 0.0;
    for j in i + 1..=q {
        let r = d[j].hypot(x);
        let (c, s) = (d[j] / r, x / r);
        d[j] = r;
        // rows (j, i): row_j' = c row_j + s row_i, row_i' = -s row_j + c row_i
        rotate_cols(u, j, i, c, s);
        if j < q {
            x = -s * e[j];
            e[j] *= c;
        }
    }
}

/// `d[q] = 0`: annihilate `e[q-1]` with right rotations moving the bulge up.
fn chase_col(d: &mut [f64], e: &mut [f64], v: &mut ComplexMatrix, p: usize, q: usize) {
    let mut x = e[q - 1];
    e[q - 1] = 0.0;
    for j in (p..q).rev() {
        let r = d[j].hypot(x);
        let (c, s) = (d[j] / r, x / r);
        d[j] = r;
        rotate_cols(v, j, q, c, s);
        if j > p {
            x = -s * e[j - 1];
            e[j - 1] *= c;
        }
    }
}

/// One Golub–Kahan step with a Wilkinson shift on the block `[p, q]`.
fn qr_sweep(
    d: &mut [f64],
    e: &mut [f64],
    u: &mut ComplexMatrix,
    v: &mut ComplexMatrix,
    p: usize,
    q: usize,
) {
    let e_prev = if q - 1 > p { e[q - 2] } else { 0.0 };
    let t11 = d[q - 1] * d[q - 1] + e_prev * e_prev;
    let t12 = d[q - 1] * e[q - 1];
    let t22 = d[q] * d[q] + e[q - 1] * e[q - 1];
    let half = 0.5 * (t11 - t22);
    let root = half.hypot(t12);
    let mu = if half >= 0.0 {
        t22 - t12 * t12 / (half + root)
    } else {
        t22 + t12 * t12 / (root - half)
    };
    let mu = if mu.is_finite() { mu } else { t22 };

    let mut y = d[p] * d[p] - mu;
    let mut z = d[p] * e[p];
    for k in p..q {
        let r = y.hypot(z);
        let (c, s) = if r == 0.0 { (1.0, 0.0) } else { (y / r, z / r) };
        if k > p {
            e[k - 1] = r;
        }
        let dk = d[k];
        let ek = e[k];
        d[k] = c * dk + s * ek;
        e[k] = c * ek - s * dk;
        let bulge = s * d[k + 1];
        d[k + 1] *= c;
        rotate_cols(v, k, k + 1, c, s);

        y = d[k];
        z = bulge;
        let r = y.hypot(z);
        let (c, s) = if r == 0.0 { (1.0, 0.0) } else { (y / r, z / r) };
        d[k] = r;
        let ek = e[k];
        let dk1 = d[k + 1];
        e[k] = c * ek + s * dk1;
        d[k + 1] = c * dk1 - s * ek;
        rotate_cols(u, k, k + 1, c, s);
        if k + 1 < q {
            y = e[k];
            z = s * e[k + 1];
            e[k + 1] *= c;
        }
    }
}
