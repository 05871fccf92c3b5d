//! Dense complex linear algebra used by the quiver algorithms.

mod compress;
mod eigen;
mod matrix;
mod qr;
mod svd;

pub use compress::{
    col_compress, col_compress_above, masked_norm, numerical_rank, rank_above, row_compress,
    row_compress_above, sigma_max, sigma_min, staircase_blocks, staircase_reduce,
    staircase_zero_mask, two_sided_reduce, two_sided_reduce_above, BlockPos, Compression,
    Staircase, StripAxis, TolerancePolicy, TwoSided,
};
pub use eigen::eigenvalues;
pub use matrix::{BlockKind, ComplexMatrix};
pub use qr::{inverse, qr};
pub use svd::{singular_values, svd, Svd};
