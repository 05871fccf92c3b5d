//! Rank decisions and the unitary compressions built on them.

use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::svd::{svd, Svd};
use crate::error::{Error, Result};

/// Rank threshold `τ = max(abs_floor, rel_factor · scale)`.
///
/// For a single matrix the scale is its largest singular value. The quiver
/// algorithms pass one scale for a whole representation instead (see
/// [`TolerancePolicy::threshold`]).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub abs_floor: f64,
    pub rel_factor: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            abs_floor: 1e-12,
            rel_factor: 1e-8,
        }
    }
}

impl TolerancePolicy {
    pub fn new(abs_floor: f64, rel_factor: f64) -> Result<Self> {
        if !(abs_floor >= 0.0
            && abs_floor.is_finite()
            && rel_factor >= 0.0
            && rel_factor.is_finite())
        {
            return Err(Error::argument(format!(
                "tolerances must be finite and nonnegative (abs {abs_floor}, rel {rel_factor})"
            )));
        }
        Ok(Self {
            abs_floor,
            rel_factor,
        })
    }

    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs_floor.max(self.rel_factor * scale)
    }

    /// `τ(A)` for one matrix.
    pub fn tau(&self, a: &ComplexMatrix) -> Result<f64> {
        Ok(self.threshold(sigma_max(a)?))
    }
}

pub fn sigma_max(a: &ComplexMatrix) -> Result<f64> {
    if a.is_empty() {
        return Ok(0.0);
    }
    Ok(svd(a)?.sigma_max())
}

/// Smallest singular value of a square matrix; `+∞` for the 0×0 matrix so
/// that empty blocks count as nonsingular.
pub fn sigma_min(a: &ComplexMatrix) -> Result<f64> {
    if a.is_empty() {
        return Ok(f64::INFINITY);
    }
    Ok(svd(a)?.sigma.last().copied().unwrap_or(0.0))
}

fn rank_of(s: &Svd, tau: f64) -> usize {
    s.sigma.iter().take_while(|&&x| x > tau).count()
}

pub fn numerical_rank(a: &ComplexMatrix, tol: &TolerancePolicy) -> Result<usize> {
    let s = svd(a)?;
    Ok(rank_of(&s, tol.threshold(s.sigma_max())))
}

pub fn rank_above(a: &ComplexMatrix, tau: f64) -> Result<usize> {
    Ok(rank_of(&svd(a)?, tau))
}

/// A unitary transform together with the rank it revealed.
#[derive(Clone, Debug)]
pub struct Compression {
    pub transform: ComplexMatrix,
    pub rank: usize,
    pub tau: f64,
}

/// `Q` with `Q·A = [0; R]`, the zero block on top and `R` of full row rank.
pub fn row_compress(a: &ComplexMatrix, tol: &TolerancePolicy) -> Result<Compression> {
    let s = svd(a)?;
    let tau = tol.threshold(s.sigma_max());
    Ok(row_compression_from(&s, tau))
}

pub fn row_compress_above(a: &ComplexMatrix, tau: f64) -> Result<Compression> {
    Ok(row_compression_from(&svd(a)?, tau))
}

fn row_compression_from(s: &Svd, tau: f64) -> Compression {
    let m = s.u.rows();
    let k = rank_of(s, tau);
    let order: Vec<usize> = (k..m).chain(0..k).collect();
    let transform = ComplexMatrix::from_fn(m, m, |i, j| s.u[(j, order[i])].conj());
    Compression {
        transform,
        rank: k,
        tau,
    }
}

/// `W` with `A·W = [C | 0]`, `C` of full column rank.
pub fn col_compress(a: &ComplexMatrix, tol: &TolerancePolicy) -> Result<Compression> {
    let s = svd(a)?;
    let tau = tol.threshold(s.sigma_max());
    Ok(Compression {
        rank: rank_of(&s, tau),
        transform: s.v,
        tau,
    })
}

pub fn col_compress_above(a: &ComplexMatrix, tau: f64) -> Result<Compression> {
    let s = svd(a)?;
    Ok(Compression {
        rank: rank_of(&s, tau),
        transform: s.v,
        tau,
    })
}

/// `P*·A·S = [[0, H], [0, 0]]` with `H` the leading `k×k` block in the
/// top-right corner.
#[derive(Clone, Debug)]
pub struct TwoSided {
    pub p: ComplexMatrix,
    pub s: ComplexMatrix,
    pub rank: usize,
    pub tau: f64,
}

pub fn two_sided_reduce(a: &ComplexMatrix, tol: &TolerancePolicy) -> Result<TwoSided> {
    let s = svd(a)?;
    let tau = tol.threshold(s.sigma_max());
    Ok(two_sided_from(s, tau))
}

pub fn two_sided_reduce_above(a: &ComplexMatrix, tau: f64) -> Result<TwoSided> {
    Ok(two_sided_from(svd(a)?, tau))
}

fn two_sided_from(s: Svd, tau: f64) -> TwoSided {
    let n = s.v.rows();
    let k = rank_of(&s, tau);
    let order: Vec<usize> = (k..n).chain(0..k).collect();
    let right = ComplexMatrix::from_fn(n, n, |i, j| s.v[(i, order[j])]);
    TwoSided {
        p: s.u,
        s: right,
        rank: k,
        tau,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StripAxis {
    /// Strips are groups of columns, processed left to right.
    Vertical,
    /// Strips are groups of rows, processed bottom to top.
    Horizontal,
}

/// Result of [`staircase_reduce`]. The reduced matrix is
/// `row_transform · A · col_transform`.
#[derive(Clone, Debug)]
pub struct Staircase {
    /// Unitary on the axis orthogonal to the strips (rows for vertical strips).
    pub outer: ComplexMatrix,
    /// One unitary per strip acting inside it: a right factor for vertical
    /// strips, a left factor for horizontal ones.
    pub per_strip: Vec<ComplexMatrix>,
    pub block_sizes: Vec<usize>,
    pub row_transform: ComplexMatrix,
    pub col_transform: ComplexMatrix,
    pub tau: f64,
}

impl Staircase {
    pub fn apply(&self, a: &ComplexMatrix) -> ComplexMatrix {
        self.row_transform.matmul(a).matmul(&self.col_transform)
    }
}

/// Reduces `A` to echelon form with a nonsingular block `H_i` per strip.
///
/// Vertical: `H_i` sits in the rightmost `l_i` columns of strip `i`, in the
/// rows directly below `H_1..H_{i-1}`; strip `i` is zero in all lower rows
/// outside `H_i`. Horizontal: mirrored, with strips taken from the bottom;
/// `H_i` occupies the top `l_i` rows of strip `i` and the columns directly
/// left of `H_{i+1}..H_r`, and strip `i` is zero in every column left of that.
pub fn staircase_reduce(
    a: &ComplexMatrix,
    strip_sizes: &[usize],
    axis: StripAxis,
    tau: f64,
) -> Result<Staircase> {
    let (m, n) = a.shape();
    let total: usize = strip_sizes.iter().sum();
    let expected = match axis {
        StripAxis::Vertical => n,
        StripAxis::Horizontal => m,
    };
    if total != expected {
        return Err(Error::argument(format!(
            "strip sizes sum to {total}, matrix has {expected} {}",
            if axis == StripAxis::Vertical {
                "columns"
            } else {
                "rows"
            }
        )));
    }

    let mut cur = a.clone();
    let mut block_sizes = vec![0; strip_sizes.len()];
    let mut per_strip: Vec<ComplexMatrix> = strip_sizes
        .iter()
        .map(|&k| ComplexMatrix::identity(k))
        .collect();
    let offsets: Vec<usize> = strip_sizes
        .iter()
        .scan(0, |acc, &k| {
            let o = *acc;
            *acc += k;
            Some(o)
        })
        .collect();

    match axis {
        StripAxis::Vertical => {
            let mut outer = ComplexMatrix::identity(m);
            let mut pinned = 0;
            for (i, &k) in strip_sizes.iter().enumerate() {
                let c0 = offsets[i];
                let free_rows: Vec<usize> = (pinned..m).collect();
                let strip_cols: Vec<usize> = (c0..c0 + k).collect();
                let sub = cur.select(&free_rows, &strip_cols);
                let red = two_sided_reduce_above(&sub, tau)?;
                let left = ComplexMatrix::embed(m, &free_rows, &red.p.adjoint());
                let right = ComplexMatrix::embed(n, &strip_cols, &red.s);
                cur = left.matmul(&cur).matmul(&right);
                outer = left.matmul(&outer);
                per_strip[i] = red.s;
                block_sizes[i] = red.rank;
                pinned += red.rank;
            }
            let col_transform = ComplexMatrix::block_diag(per_strip.iter());
            Ok(Staircase {
                row_transform: outer.clone(),
                outer,
                per_strip,
                block_sizes,
                col_transform,
                tau,
            })
        }
        StripAxis::Horizontal => {
            let mut outer = ComplexMatrix::identity(n);
            let mut free = n;
            for i in (0..strip_sizes.len()).rev() {
                let r0 = offsets[i];
                let strip_rows: Vec<usize> = (r0..r0 + strip_sizes[i]).collect();
                let free_cols: Vec<usize> = (0..free).collect();
                let sub = cur.select(&strip_rows, &free_cols);
                let red = two_sided_reduce_above(&sub, tau)?;
                let left = ComplexMatrix::embed(m, &strip_rows, &red.p.adjoint());
                let right = ComplexMatrix::embed(n, &free_cols, &red.s);
                cur = left.matmul(&cur).matmul(&right);
                outer = outer.matmul(&right);
                per_strip[i] = red.p.adjoint();
                block_sizes[i] = red.rank;
                free -= red.rank;
            }
            let row_transform = ComplexMatrix::block_diag(per_strip.iter());
            Ok(Staircase {
                col_transform: outer.clone(),
                outer,
                per_strip,
                block_sizes,
                row_transform,
                tau,
            })
        }
    }
}

/// Position of one nonsingular block of a staircase form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPos {
    pub row: usize,
    pub col: usize,
    pub size: usize,
}

/// Positions of `H_1..H_r` for the given strip and block sizes.
pub fn staircase_blocks(
    shape: (usize, usize),
    strip_sizes: &[usize],
    block_sizes: &[usize],
    axis: StripAxis,
) -> Vec<BlockPos> {
    let mut out = Vec::with_capacity(strip_sizes.len());
    let mut offset = 0;
    let mut pinned = 0;
    let total_l: usize = block_sizes.iter().sum();
    for (&k, &l) in strip_sizes.iter().zip(block_sizes) {
        out.push(match axis {
            StripAxis::Vertical => BlockPos {
                row: pinned,
                col: offset + k - l,
                size: l,
            },
            StripAxis::Horizontal => BlockPos {
                row: offset,
                col: shape.1 - total_l + pinned,
                size: l,
            },
        });
        offset += k;
        pinned += l;
    }
    out
}

/// Mask of the entries a staircase form requires to vanish.
pub fn staircase_zero_mask(
    shape: (usize, usize),
    strip_sizes: &[usize],
    block_sizes: &[usize],
    axis: StripAxis,
) -> Vec<Vec<bool>> {
    let (m, n) = shape;
    let mut mask = vec![vec![false; n]; m];
    let blocks = staircase_blocks(shape, strip_sizes, block_sizes, axis);
    let mut offset = 0;
    for (&k, h) in strip_sizes.iter().zip(&blocks) {
        let in_h = |i: usize, j: usize| {
            i >= h.row && i < h.row + h.size && j >= h.col && j < h.col + h.size
        };
        match axis {
            StripAxis::Vertical => {
                for (i, row) in mask.iter_mut().enumerate().skip(h.row) {
                    for (j, cell) in row.iter_mut().enumerate().skip(offset).take(k) {
                        *cell = !in_h(i, j);
                    }
                }
            }
            StripAxis::Horizontal => {
                for (i, row) in mask.iter_mut().enumerate().skip(offset).take(k) {
                    for (j, cell) in row.iter_mut().enumerate().take(h.col + h.size) {
                        *cell = !in_h(i, j);
                    }
                }
            }
        }
        offset += k;
    }
    mask
}

/// Frobenius norm of the entries selected by `mask`.
pub fn masked_norm(a: &ComplexMatrix, mask: &[Vec<bool>]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in mask.iter().enumerate() {
        for (j, &on) in row.iter().enumerate() {
            if on {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tol() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            numerical_rank(&ComplexMatrix::identity(4), &tol()).unwrap(),
            4
        );
        assert_eq!(
            numerical_rank(&ComplexMatrix::zeros(3, 3), &tol()).unwrap(),
            0
        );
        assert_eq!(
            numerical_rank(&ComplexMatrix::zeros(0, 3), &tol()).unwrap(),
            0
        );
        let f3 = ComplexMatrix::from_real_rows(&[&[1., 0., 0.], &[0., 1., 0.]]);
        assert_eq!(numerical_rank(&f3, &tol()).unwrap(), 2);
    }

    #[test]
    fn row_compress_examples() {
        let c = row_compress(&ComplexMatrix::zeros(3, 2), &tol()).unwrap();
        assert_eq!(c.rank, 0);
        assert_eq!(
            c.transform.matmul(&ComplexMatrix::zeros(3, 2)).max_abs(),
            0.0
        );

        let c = row_compress(&ComplexMatrix::identity(2), &tol()).unwrap();
        assert_eq!(c.rank, 2);

        let ones = ComplexMatrix::from_real_rows(&[&[1., 1.], &[1., 1.]]);
        let c = row_compress(&ones, &tol()).unwrap();
        assert_eq!(c.rank, 1);
        let qa = c.transform.matmul(&ones);
        assert!(qa.block_at(0, 0, 1, 2).fro_norm() <= c.tau);
        assert!(c.transform.unitarity_defect() <= 1e-12 * 2.0);
    }

    #[test]
    fn col_compress_examples() {
        let ones = ComplexMatrix::from_real_rows(&[&[1., 1.], &[1., 1.]]);
        let c = col_compress(&ones, &tol()).unwrap();
        assert_eq!(c.rank, 1);
        assert!(ones.matmul(&c.transform).block_at(0, 1, 2, 1).fro_norm() <= c.tau);
        assert_eq!(
            col_compress(&ComplexMatrix::identity(2), &tol())
                .unwrap()
                .rank,
            2
        );
        assert_eq!(
            col_compress(&ComplexMatrix::zeros(2, 3), &tol())
                .unwrap()
                .rank,
            0
        );
    }

    #[test]
    fn two_sided_diag() {
        let a = ComplexMatrix::from_real_rows(&[&[2., 0.], &[0., 0.]]);
        let r = two_sided_reduce(&a, &tol()).unwrap();
        assert_eq!(r.rank, 1);
        let b = r.p.adjoint().matmul(&a).matmul(&r.s);
        assert!((b[(0, 1)].norm() - 2.0).abs() < 1e-14);
        assert!(b[(0, 0)].norm() < 1e-14 && b[(1, 0)].norm() < 1e-14 && b[(1, 1)].norm() < 1e-14);
    }

    #[test]
    fn two_sided_empty() {
        let r = two_sided_reduce(&ComplexMatrix::zeros(0, 3), &tol()).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.s.shape(), (3, 3));
        assert_eq!(r.p.shape(), (0, 0));
    }

    #[test]
    fn staircase_single_strip_matches_two_sided() {
        let a = ComplexMatrix::from_fn(3, 4, |i, j| Complex64::new((i + j) as f64, (i * j) as f64));
        let tau = tol().tau(&a).unwrap();
        let st = staircase_reduce(&a, &[4], StripAxis::Vertical, tau).unwrap();
        let ts = two_sided_reduce_above(&a, tau).unwrap();
        assert_eq!(st.block_sizes, vec![ts.rank]);
        let mask = staircase_zero_mask(a.shape(), &[4], &st.block_sizes, StripAxis::Vertical);
        assert!(masked_norm(&st.apply(&a), &mask) <= 1e-12 * a.fro_norm());
        let st0 = staircase_reduce(&a, &[0, 4, 0], StripAxis::Vertical, tau).unwrap();
        assert_eq!(st0.block_sizes, vec![0, ts.rank, 0]);
    }

    #[test]
    fn staircase_rejects_bad_strips() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(staircase_reduce(&a, &[1, 1], StripAxis::Vertical, 1e-12).is_err());
        assert!(staircase_reduce(&a, &[3], StripAxis::Horizontal, 1e-12).is_err());
    }

    #[test]
    fn horizontal_blocks_positions() {
        let blocks = staircase_blocks((4, 5), &[2, 2], &[1, 2], StripAxis::Horizontal);
        assert_eq!(
            blocks[0],
            BlockPos {
                row: 0,
                col: 2,
                size: 1
            }
        );
        assert_eq!(
            blocks[1],
            BlockPos {
                row: 2,
                col: 3,
                size: 2
            }
        );
    }
}
