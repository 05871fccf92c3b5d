//! Canonical decomposition of chain representations into intervals `L(i,j)`
//! by unitary staircase reductions, one arrow at a time from left to right.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    masked_norm, staircase_reduce, staircase_zero_mask, ComplexMatrix, StripAxis, TolerancePolicy,
};
use crate::quiver::{
    apply_unitary, direct_sum_all, make_l, IndecomposableLabel, Isomorphism, Orientation,
    QuiverKind, QuiverShape, Representation,
};

/// Multiplicities `m_ij` of the intervals `L(i,j)` (1-based, `i ≤ j`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCanonicalForm {
    pub multiplicities: BTreeMap<(usize, usize), usize>,
}

impl ChainCanonicalForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, j: usize, count: usize) {
        if count > 0 {
            *self.multiplicities.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn from_labels(labels: &[(usize, usize)]) -> Self {
        let mut f = Self::new();
        for &(i, j) in labels {
            f.add(i, j, 1);
        }
        f
    }

    pub fn count(&self, i: usize, j: usize) -> usize {
        self.multiplicities.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Every interval repeated by its multiplicity, in lexicographic order.
    pub fn labels(&self) -> Vec<IndecomposableLabel> {
        self.multiplicities
            .iter()
            .flat_map(|(&(i, j), &m)| std::iter::repeat_n(IndecomposableLabel::L(i, j), m))
            .collect()
    }

    pub fn total(&self) -> usize {
        self.multiplicities.values().sum()
    }

    /// `Σ_{i ≤ v ≤ j} m_ij` for every vertex `v` of a chain with `t` vertices.
    pub fn dims(&self, t: usize) -> Vec<usize> {
        let mut d = vec![0; t];
        for (&(i, j), &m) in &self.multiplicities {
            for dv in d.iter_mut().take(j.min(t)).skip(i - 1) {
                *dv += m;
            }
        }
        d
    }

    pub fn merge(&mut self, other: &ChainCanonicalForm) {
        for (&(i, j), &m) in &other.multiplicities {
            self.add(i, j, m);
        }
    }
}

/// What one staircase step did.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainStep {
    /// 0-based arrow index.
    pub arrow: usize,
    pub axis: StripAxis,
    /// `k_i`: sizes of the strips the arrow's matrix was cut into.
    pub strip_sizes: Vec<usize>,
    /// `l_i`: sizes of the nonsingular blocks found.
    pub block_sizes: Vec<usize>,
    /// Start vertex (1-based) of the chain each strip continues.
    pub starts: Vec<usize>,
    pub tau: f64,
}

#[derive(Clone, Debug)]
pub struct ChainTrace {
    /// Accumulated unitary at every vertex.
    pub transform: Isomorphism,
    pub steps: Vec<ChainStep>,
    pub tau: f64,
    /// Scale the threshold was derived from.
    pub scale: f64,
    /// Norm of the entries the staircase pattern requires to vanish, measured
    /// on the input with `transform` applied.
    pub residual: f64,
}

pub fn canon_chain(
    a: &Representation,
    tol: &TolerancePolicy,
) -> Result<(ChainCanonicalForm, ChainTrace)> {
    canon_chain_scaled(a, tol, a.sigma_scale()?)
}

/// As [`canon_chain`], with the rank threshold derived from `scale` instead of
/// the largest singular value of `a`. Used when `a` is a piece of a larger
/// representation whose scale should govern rank decisions.
pub fn canon_chain_scaled(
    a: &Representation,
    tol: &TolerancePolicy,
    scale: f64,
) -> Result<(ChainCanonicalForm, ChainTrace)> {
    let shape = a.shape();
    if shape.kind() != QuiverKind::Chain {
        return Err(Error::argument(
            "canon_chain expects a chain representation",
        ));
    }
    let t = shape.t();
    let dims = a.dims().to_vec();
    let tau = tol.threshold(scale);

    let mut cur = a.clone();
    let mut transform = Isomorphism::identity(&dims);
    let mut form = ChainCanonicalForm::new();
    let mut steps = Vec::with_capacity(t.saturating_sub(1));
    let mut masks = Vec::with_capacity(t.saturating_sub(1));
    // (start vertex, count) for the coordinate groups of the current vertex,
    // stored contiguously in this order.
    let mut groups: Vec<(usize, usize)> = vec![(1, dims[0])];

    for r in 0..t.saturating_sub(1) {
        let strips: Vec<usize> = groups.iter().map(|g| g.1).collect();
        let starts: Vec<usize> = groups.iter().map(|g| g.0).collect();
        let orientation = shape.orientation(r);
        let axis = match orientation {
            Orientation::Clockwise => StripAxis::Vertical,
            Orientation::Counterclockwise => StripAxis::Horizontal,
        };
        let m_shape = cur.matrix(r).shape();
        let st = staircase_reduce(cur.matrix(r), &strips, axis, tau)
            .map_err(|e| e.at_step("chain step", r + 1))?;
        let l = &st.block_sizes;
        let kept: usize = l.iter().sum();
        let fresh = dims[r + 1] - kept;

        for (g, &li) in groups.iter().zip(l) {
            form.add(g.0, r + 1, g.1 - li);
        }
        let continued = groups.iter().zip(l).map(|(g, &li)| (g.0, li));
        groups = match orientation {
            Orientation::Clockwise => continued.chain(std::iter::once((r + 2, fresh))).collect(),
            Orientation::Counterclockwise => {
                std::iter::once((r + 2, fresh)).chain(continued).collect()
            }
        };

        let (s_left, s_right) = match orientation {
            Orientation::Clockwise => (st.col_transform.adjoint(), st.row_transform.clone()),
            Orientation::Counterclockwise => (st.row_transform.clone(), st.col_transform.adjoint()),
        };
        let mut step = Isomorphism::identity(&dims);
        step.maps[r] = s_left;
        step.maps[r + 1] = s_right;
        cur = apply_unitary(&cur, &step);
        transform = transform.then(&step);

        masks.push(staircase_zero_mask(m_shape, &strips, &st.block_sizes, axis));
        steps.push(ChainStep {
            arrow: r,
            axis,
            strip_sizes: strips,
            block_sizes: st.block_sizes.clone(),
            starts,
            tau,
        });
    }
    for (p, k) in groups {
        form.add(p, t, k);
    }

    let check = apply_unitary(a, &transform);
    let residual = masks
        .iter()
        .enumerate()
        .map(|(r, mask)| masked_norm(check.matrix(r), mask))
        .fold(0.0, f64::max);

    Ok((
        form,
        ChainTrace {
            transform,
            steps,
            tau,
            scale,
            residual,
        },
    ))
}

/// `⊕ L(i,j)^{m_ij}` in lexicographic order of `(i,j)`.
pub fn assemble_canonical(
    form: &ChainCanonicalForm,
    shape: &QuiverShape,
) -> Result<Representation> {
    let mut parts = Vec::with_capacity(form.total());
    for label in form.labels() {
        if let IndecomposableLabel::L(i, j) = label {
            parts.push(make_l(i, j, shape)?);
        }
    }
    direct_sum_all(shape, &parts)
}

/// Matrix of the staircase form predicted by the block sizes, with identity
/// blocks in place of each `H_i`. Handy for building test inputs.
pub fn staircase_template(
    shape: (usize, usize),
    strip_sizes: &[usize],
    block_sizes: &[usize],
    axis: StripAxis,
) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(shape.0, shape.1);
    for b in crate::linalg::staircase_blocks(shape, strip_sizes, block_sizes, axis) {
        m.set_block(b.row, b.col, &ComplexMatrix::identity(b.size));
    }
    m
}
