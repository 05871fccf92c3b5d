//! Regularizing decomposition of cycle representations.
//!
//! A shave pass walks around the cycle compressing one arrow at a time and
//! peels off a chain representation (the primed vertices `(l+1)'..(n+1)'`)
//! whose push-down is a sum of walk representations `G(l,r)`. Shaving the
//! input and then the transpose of what remains leaves a regular part; the
//! two peeled chains are canonicalized with the chain algorithm.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chain::{canon_chain_scaled, ChainCanonicalForm};
use crate::error::{Error, Result};
use crate::linalg::{
    col_compress_above, eigenvalues, inverse, rank_above, row_compress_above, sigma_max,
    ComplexMatrix, TolerancePolicy,
};
use crate::quiver::{
    apply_unitary, regularity_defect, transpose_rep, IndecomposableLabel, Isomorphism, Orientation,
    QuiverKind, QuiverShape, Representation,
};

/// Coordinates (in the transformed basis) owned by one primed vertex `j'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimedBlock {
    /// Walk index `j` of the primed vertex; it sits over cycle vertex `[j]`.
    pub index: usize,
    /// 0-based cycle vertex `[j] - 1`.
    pub vertex: usize,
    pub coords: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ShaveResult {
    /// Chain on `(l+1)', …, (n+1)'`; local vertex `k` (0-based) is
    /// `(l+1+k)'` and local arrow `k` carries the orientation of cycle arrow
    /// `[l+1+k]`. `None` when no arrow violated the row condition.
    pub a_prime: Option<Representation>,
    pub a_tilde: Representation,
    /// First clockwise arrow (1-based) without full row rank, or `t+1`.
    pub l: usize,
    /// Step at which the pass stopped (`t` when `l = t+1`).
    pub n: usize,
    /// Accumulated unitary at every cycle vertex.
    pub trace: Isomorphism,
    pub primed: Vec<PrimedBlock>,
    /// Coordinates of `a_tilde` at each vertex, in the transformed basis.
    pub unprimed: Vec<Vec<usize>>,
    pub tau: f64,
    pub scale: f64,
    /// Norm of everything in the transformed input that the split into
    /// push-down plus remainder does not account for (see [`split_residual`]).
    pub split_residual: f64,
}

impl ShaveResult {
    pub fn steps(&self) -> usize {
        if self.l > self.n {
            0
        } else {
            self.n - self.l + 1
        }
    }

    /// `push_down(a_prime)` on the cycle, or the zero representation.
    pub fn pushed(&self, shape: &QuiverShape) -> Result<Representation> {
        match &self.a_prime {
            Some(b) => push_down(b, self.l, self.n, shape),
            None => Representation::zero(shape.clone(), vec![0; shape.t()]),
        }
    }
}

pub fn shave(a: &Representation, tol: &TolerancePolicy) -> Result<ShaveResult> {
    shave_scaled(a, tol, a.sigma_scale()?)
}

pub fn shave_scaled(a: &Representation, tol: &TolerancePolicy, scale: f64) -> Result<ShaveResult> {
    let shape = a.shape().clone();
    if !shape.is_cycle() {
        return Err(Error::argument("shave expects a cycle representation"));
    }
    let t = shape.t();
    let dims = a.dims().to_vec();
    let tau = tol.threshold(scale);

    let mut first_bad = None;
    for k in 0..t {
        if shape.orientation(k) == Orientation::Clockwise {
            let m = a.matrix(k);
            if rank_above(m, tau)? < m.rows() {
                first_bad = Some(k + 1);
                break;
            }
        }
    }
    let Some(l) = first_bad else {
        return Ok(ShaveResult {
            a_prime: None,
            a_tilde: a.clone(),
            l: t + 1,
            n: t,
            trace: Isomorphism::identity(&dims),
            primed: Vec::new(),
            unprimed: dims.iter().map(|&d| (0..d).collect()).collect(),
            tau,
            scale,
            split_residual: 0.0,
        });
    };

    let mut cur = a.clone();
    let mut trace = Isomorphism::identity(&dims);
    let mut unprimed: Vec<Vec<usize>> = dims.iter().map(|&d| (0..d).collect()).collect();
    let mut primed: Vec<PrimedBlock> = Vec::new();
    let cap = t + 2 * a.total_dim();

    let mut r = l;
    let n = loop {
        if r - l > cap {
            return Err(Error::Internal(format!(
                "shave did not stop within {cap} steps; rank decisions are inconsistent"
            )));
        }
        let arrow = shape.wrap(r) - 1;
        let va = arrow;
        let vb = (arrow + 1) % t;
        let prev: Vec<usize> = primed
            .iter()
            .find(|p| p.index == r)
            .map(|p| p.coords.clone())
            .unwrap_or_default();
        let ub = unprimed[vb].clone();
        let m = cur.matrix(arrow);

        let (s_b, split) = match shape.orientation(arrow) {
            Orientation::Clockwise => {
                let block = m.select(&ub, &unprimed[va]);
                let c = row_compress_above(&block, tau).map_err(|e| e.at_step("shave step", r))?;
                (c.transform, ub.len() - c.rank)
            }
            Orientation::Counterclockwise => {
                let block = m.select(&prev, &ub);
                let c = col_compress_above(&block, tau).map_err(|e| e.at_step("shave step", r))?;
                (c.transform.adjoint(), c.rank)
            }
        };
        let mut step = Isomorphism::identity(&dims);
        step.maps[vb] = ComplexMatrix::embed(dims[vb], &ub, &s_b);
        cur = apply_unitary(&cur, &step);
        trace = trace.then(&step);
        primed.push(PrimedBlock {
            index: r + 1,
            vertex: vb,
            coords: ub[..split].to_vec(),
        });
        unprimed[vb] = ub[split..].to_vec();

        if r >= t {
            let next = shape.wrap(r + 1) - 1;
            let vc = (next + 1) % t;
            let new = &primed.last().expect("just pushed").coords;
            let block = match shape.orientation(next) {
                Orientation::Clockwise => cur.matrix(next).select(&unprimed[vc], new),
                Orientation::Counterclockwise => cur.matrix(next).select(new, &unprimed[vc]),
            };
            if block.is_empty() || sigma_max(&block)? <= tau {
                break r;
            }
        }
        r += 1;
    };

    let a_prime = extract_chain(&cur, &primed, l, n)?;
    let a_tilde = cur.restrict(&unprimed);
    let mut out = ShaveResult {
        a_prime: Some(a_prime),
        a_tilde,
        l,
        n,
        trace,
        primed,
        unprimed,
        tau,
        scale,
        split_residual: 0.0,
    };
    out.split_residual = split_residual(a, &out)?;
    Ok(out)
}

fn block_of(primed: &[PrimedBlock], j: usize) -> &[usize] {
    primed
        .iter()
        .find(|p| p.index == j)
        .map(|p| p.coords.as_slice())
        .unwrap_or(&[])
}

fn extract_chain(
    cur: &Representation,
    primed: &[PrimedBlock],
    l: usize,
    n: usize,
) -> Result<Representation> {
    let shape = cur.shape();
    let m = n - l + 1;
    let mut dims = Vec::with_capacity(m);
    for k in 0..m {
        dims.push(block_of(primed, l + 1 + k).len());
    }
    let mut orientations = Vec::with_capacity(m - 1);
    let mut matrices = Vec::with_capacity(m - 1);
    for k in 0..m - 1 {
        let j = l + 1 + k;
        let arrow = shape.wrap(j) - 1;
        let (from, to) = (block_of(primed, j), block_of(primed, j + 1));
        let o = shape.orientation(arrow);
        orientations.push(o);
        matrices.push(match o {
            Orientation::Clockwise => cur.matrix(arrow).select(to, from),
            Orientation::Counterclockwise => cur.matrix(arrow).select(from, to),
        });
    }
    Representation::new(QuiverShape::chain(orientations), dims, matrices)
}

/// Creation order of a coordinate group: primed `j'` at `j`, the remainder last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Owner {
    Primed(usize),
    Remainder,
}

/// How far `trace` applied to `a` is from `push_down(a_prime) ⊕ a_tilde`.
///
/// The matrices produced by a shave are block triangular with respect to the
/// order in which coordinate groups were created (primed vertices by walk
/// index, the remainder last). Blocks from an earlier group into a later one
/// are couplings that a further triangular change of basis removes without
/// touching the rest, so they are not counted. Counted are: the remainder
/// blocks against `a_tilde`, chain arrows against `a_prime`, every block from
/// a later group into an earlier one, and the arrow out of `(n+1)'` that the
/// stopping rule requires to vanish.
pub fn split_residual(a: &Representation, s: &ShaveResult) -> Result<f64> {
    let shape = a.shape();
    let t = shape.t();
    let tr = apply_unitary(a, &s.trace);
    let mut groups: Vec<Vec<(Owner, &[usize])>> = vec![Vec::new(); t];
    for p in &s.primed {
        groups[p.vertex].push((Owner::Primed(p.index), &p.coords));
    }
    for (v, u) in s.unprimed.iter().enumerate() {
        groups[v].push((Owner::Remainder, u));
    }
    let mut worst: f64 = 0.0;
    for k in 0..t {
        let (src, dst) = shape.ends(k);
        let m = tr.matrix(k);
        let mut acc = 0.0;
        for &(og, rows) in &groups[dst] {
            for &(os, cols) in &groups[src] {
                if rows.is_empty() || cols.is_empty() {
                    continue;
                }
                let block = m.select(rows, cols);
                let miss = match (os, og) {
                    (Owner::Remainder, Owner::Remainder) => {
                        let want = s.a_tilde.matrix(k);
                        block.sub(want).fro_norm()
                    }
                    (Owner::Primed(js), Owner::Primed(jg)) if chain_arrow(shape, k, js, jg) => {
                        let lo = js.min(jg);
                        if lo < s.l + 1 || lo + 1 > s.n + 1 {
                            block.fro_norm()
                        } else {
                            let b = s.a_prime.as_ref().expect("primed blocks imply a chain");
                            block.sub(b.matrix(lo - s.l - 1)).fro_norm()
                        }
                    }
                    (Owner::Primed(js), Owner::Remainder)
                        if js == s.n + 1 && shape.wrap(s.n + 1) - 1 == k =>
                    {
                        block.fro_norm()
                    }
                    (Owner::Remainder, Owner::Primed(_)) => block.fro_norm(),
                    (Owner::Primed(js), Owner::Primed(jg)) if js > jg => block.fro_norm(),
                    _ => 0.0,
                };
                acc += miss * miss;
            }
        }
        worst = worst.max(acc.sqrt());
    }
    Ok(worst)
}

/// Arrow `k` joins primed vertices `js` and `jg` as the chain arrow between `j'` and `(j+1)'`.
fn chain_arrow(shape: &QuiverShape, k: usize, js: usize, jg: usize) -> bool {
    let lo = js.min(jg);
    js.abs_diff(jg) == 1 && shape.wrap(lo) - 1 == k
}

/// Glues a chain on `(l+1)'..(n+1)'` back onto the cycle: the space at vertex
/// `i` is the sum of the spaces `j'` with `[j] = i`, ordered by `j`, and the
/// matrix of arrow `i` is the block-diagonal sum of the chain arrows
/// between `j'` and `(j+1)'` over it, with zero-dimensional ends at `l'` and `(n+2)'`.
pub fn push_down(
    b: &Representation,
    l: usize,
    n: usize,
    cycle: &QuiverShape,
) -> Result<Representation> {
    if !cycle.is_cycle() || b.shape().kind() != QuiverKind::Chain {
        return Err(Error::argument(
            "push_down maps a chain representation to a cycle",
        ));
    }
    let t = cycle.t();
    if l == 0 || n + 1 < l || b.shape().t() != n - l + 1 {
        return Err(Error::argument(format!(
            "chain with {} vertices does not match l = {l}, n = {n}",
            b.shape().t()
        )));
    }
    for k in 0..b.shape().num_arrows() {
        if b.shape().orientation(k) != cycle.orientation(cycle.wrap(l + 1 + k) - 1) {
            return Err(Error::argument(format!(
                "chain arrow {} is not oriented like cycle arrow {}",
                k + 1,
                cycle.wrap(l + 1 + k)
            )));
        }
    }
    let dim_of = |j: usize| -> usize {
        if j > l && j <= n + 1 {
            b.dims()[j - l - 1]
        } else {
            0
        }
    };
    let mut dims = vec![0; t];
    for j in l + 1..=n + 1 {
        dims[cycle.wrap(j) - 1] += dim_of(j);
    }
    let mut matrices = vec![ComplexMatrix::zeros(0, 0); t];
    for (k, slot) in matrices.iter_mut().enumerate() {
        let o = cycle.orientation(k);
        let mut blocks = Vec::new();
        for j in l..=n + 1 {
            if cycle.wrap(j) - 1 != k {
                continue;
            }
            let inner = j > l && j < n + 1;
            let m = if inner {
                b.matrix(j - l - 1).clone()
            } else {
                let (from, to) = (dim_of(j), dim_of(j + 1));
                match o {
                    Orientation::Clockwise => ComplexMatrix::zeros(to, from),
                    Orientation::Counterclockwise => ComplexMatrix::zeros(from, to),
                }
            };
            blocks.push(m);
        }
        *slot = ComplexMatrix::block_diag(blocks.iter());
    }
    Representation::new(cycle.clone(), dims, matrices)
}

/// Walk label of `push_down(L(i,j))` for a chain starting at `(l+1)'`.
pub fn chain_label_to_walk(i: usize, j: usize, l: usize, t: usize) -> IndecomposableLabel {
    let start = l + i;
    let shift = (start - 1) / t * t;
    IndecomposableLabel::G(start - shift, l + j - shift)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pass {
    /// Shave of the input.
    First,
    /// Shave of the transposed remainder.
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub label: IndecomposableLabel,
    pub pass: Pass,
}

/// Summary of one shave pass for reports.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PassReport {
    pub l: usize,
    pub n: usize,
    pub steps: usize,
    pub split_residual: f64,
    pub chain_residual: f64,
    pub chain_form: ChainCanonicalForm,
}

#[derive(Clone, Debug)]
pub struct RegularizingDecomposition {
    /// Walk summands sorted by label, each tagged with the pass that found it.
    pub summands: Vec<Summand>,
    pub regular_part: Representation,
    pub monodromy: ComplexMatrix,
    pub monodromy_eigenvalues: Vec<Complex64>,
    /// Accumulated unitary at every vertex of the input.
    pub trace: Isomorphism,
    /// Coordinates of the regular part in the transformed basis.
    pub regular_coords: Vec<Vec<usize>>,
    pub residual: f64,
    pub tau: f64,
    pub scale: f64,
    pub passes: [PassReport; 2],
}

impl RegularizingDecomposition {
    pub fn labels(&self) -> Vec<IndecomposableLabel> {
        self.summands.iter().map(|s| s.label).collect()
    }

    pub fn regular_dim(&self) -> usize {
        self.regular_part.dims().first().copied().unwrap_or(0)
    }
}

pub fn regularize(a: &Representation, tol: &TolerancePolicy) -> Result<RegularizingDecomposition> {
    let shape = a.shape().clone();
    if !shape.is_cycle() {
        return Err(Error::argument("regularize expects a cycle representation"));
    }
    let t = shape.t();
    let scale = a.sigma_scale()?;
    let tau = tol.threshold(scale);

    let first = shave_scaled(a, tol, scale).map_err(|e| e.at_step("pass", 1))?;
    let b = transpose_rep(&first.a_tilde);
    let second = shave_scaled(&b, tol, scale).map_err(|e| e.at_step("pass", 2))?;

    let mut summands = Vec::new();
    let mut reports = Vec::with_capacity(2);
    for (pass, s, transposed) in [(Pass::First, &first, false), (Pass::Second, &second, true)] {
        let mut report = PassReport {
            l: s.l,
            n: s.n,
            steps: s.steps(),
            split_residual: s.split_residual,
            chain_residual: 0.0,
            chain_form: ChainCanonicalForm::new(),
        };
        if let Some(chain) = &s.a_prime {
            let chain = if transposed {
                transpose_rep(chain)
            } else {
                chain.clone()
            };
            let (form, trace) = canon_chain_scaled(&chain, tol, scale)?;
            for label in form.labels() {
                if let IndecomposableLabel::L(i, j) = label {
                    summands.push(Summand {
                        label: chain_label_to_walk(i, j, s.l, t),
                        pass,
                    });
                }
            }
            report.chain_residual = trace.residual;
            report.chain_form = form;
        }
        reports.push(report);
    }
    summands.sort_by_key(|s| (s.label, s.pass as u8));

    let regular_part = transpose_rep(&second.a_tilde);
    let d = regular_part.dims();
    if let Some(k) = (0..t).find(|&k| d[k] != d[(k + 1) % t]) {
        return Err(Error::Inconsistency {
            arrow: k + 1,
            sigma_min: 0.0,
            tau,
        });
    }
    if let Some((k, sigma_min)) = regularity_defect(&regular_part, tau)? {
        return Err(Error::Inconsistency {
            arrow: k + 1,
            sigma_min,
            tau,
        });
    }
    let (mono, eig) = monodromy(&regular_part, tol)?;

    // The second pass acts on the first remainder's transpose; on the input
    // side its unitary W becomes conj(W) on the remainder coordinates.
    let lift = Isomorphism {
        maps: (0..t)
            .map(|v| {
                ComplexMatrix::embed(
                    a.dims()[v],
                    &first.unprimed[v],
                    &second.trace.maps[v].conj(),
                )
            })
            .collect(),
    };
    let trace = first.trace.then(&lift);
    let regular_coords: Vec<Vec<usize>> = (0..t)
        .map(|v| {
            second.unprimed[v]
                .iter()
                .map(|&i| first.unprimed[v][i])
                .collect()
        })
        .collect();
    let check = apply_unitary(a, &trace).restrict(&regular_coords);
    let regular_miss = (0..t)
        .map(|k| check.matrix(k).sub(regular_part.matrix(k)).fro_norm())
        .fold(0.0, f64::max);
    let residual = first
        .split_residual
        .max(second.split_residual)
        .max(regular_miss);

    let [p1, p2]: [PassReport; 2] = reports.try_into().expect("two passes");
    Ok(RegularizingDecomposition {
        summands,
        regular_part,
        monodromy: mono,
        monodromy_eigenvalues: eig,
        trace,
        regular_coords,
        residual,
        tau,
        scale,
        passes: [p1, p2],
    })
}

/// Product of the arrows once around the cycle starting at vertex 1, with
/// counterclockwise arrows inverted, and its eigenvalues.
pub fn monodromy(
    p: &Representation,
    tol: &TolerancePolicy,
) -> Result<(ComplexMatrix, Vec<Complex64>)> {
    if !p.shape().is_cycle() {
        return Err(Error::argument("monodromy is defined for cycles"));
    }
    let scale = p.sigma_scale()?;
    let tau = tol.threshold(scale);
    let d = p.dims()[0];
    if p.dims().iter().any(|&x| x != d) {
        return Err(Error::argument(
            "monodromy needs equal dimensions at every vertex",
        ));
    }
    let mut prod = ComplexMatrix::identity(d);
    for k in 0..p.shape().t() {
        let m = p.matrix(k);
        let step = match p.shape().orientation(k) {
            Orientation::Clockwise => {
                let s = crate::linalg::sigma_min(m)?;
                if s <= tau {
                    return Err(Error::argument(format!("arrow {} is singular", k + 1)));
                }
                m.clone()
            }
            Orientation::Counterclockwise => inverse(m, tau)
                .map_err(|_| Error::argument(format!("arrow {} is singular", k + 1)))?,
        };
        prod = step.matmul(&prod);
    }
    let eig = eigenvalues(&prod)?;
    Ok((prod, eig))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::BlockKind;
    use crate::quiver::{direct_sum, make_g, make_l};

    fn cyc(s: &str) -> QuiverShape {
        QuiverShape::parse(QuiverKind::Cycle, s.len(), s).unwrap()
    }

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn identities_are_left_alone() {
        let shape = cyc(">><");
        let a =
            Representation::new(shape, vec![2; 3], vec![ComplexMatrix::identity(2); 3]).unwrap();
        let s = shave(&a, &TolerancePolicy::default()).unwrap();
        assert_eq!(s.l, 4);
        assert!(s.a_prime.is_none());
        assert_eq!(s.a_tilde, a);
    }

    #[test]
    fn zero_row_matrix_on_clockwise_arrow() {
        let shape = cyc(">>");
        let a = Representation::new(
            shape,
            vec![2, 0],
            vec![ComplexMatrix::zeros(0, 2), ComplexMatrix::zeros(2, 0)],
        )
        .unwrap();
        let s = shave(&a, &TolerancePolicy::default()).unwrap();
        assert_eq!(s.l, 2);
        assert_eq!(s.split_residual, 0.0);
    }

    #[test]
    fn nilpotent_summand_is_shaved_completely() {
        let shape = cyc(">>>");
        let g = make_g(1, 1 + 2 * 3, &shape).unwrap();
        let s = shave(&g, &TolerancePolicy::default()).unwrap();
        assert_eq!(s.a_tilde.dims(), &[0, 0, 0]);
        assert_eq!(s.pushed(&shape).unwrap().dims(), g.dims());
        assert!(s.split_residual < 1e-12);
    }

    #[test]
    fn push_down_of_intervals_matches_walks() {
        for orient in [">>", "><", "<>", ">><", "<><"] {
            let shape = cyc(orient);
            let t = shape.t();
            for l in 1..=t {
                for len in 1..=3 * t {
                    let n = l + len - 1;
                    let chain_orients: Vec<Orientation> = (0..len - 1)
                        .map(|k| shape.orientation(shape.wrap(l + 1 + k) - 1))
                        .collect();
                    let chain = QuiverShape::chain(chain_orients);
                    for i in 1..=len {
                        for j in i..=len {
                            let b = make_l(i, j, &chain).unwrap();
                            let d = push_down(&b, l, n, &shape).unwrap();
                            let IndecomposableLabel::G(gl, gr) = chain_label_to_walk(i, j, l, t)
                            else {
                                unreachable!()
                            };
                            assert_eq!(
                                d,
                                make_g(gl, gr, &shape).unwrap(),
                                "{orient} l={l} n={n} L({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn push_down_of_single_vertex() {
        let shape = cyc("><");
        let b = Representation::zero(QuiverShape::chain(vec![]), vec![1]).unwrap();
        let d = push_down(&b, 1, 1, &shape).unwrap();
        assert_eq!(d.dims(), &[0, 1]);
        assert_eq!(d.matrix(0).shape(), (1, 0));
        assert_eq!(d.matrix(1).shape(), (1, 0));
    }

    #[test]
    fn regular_input_has_no_summands() {
        let shape = cyc(">>");
        let j = ComplexMatrix::block(BlockKind::Jordan(c(3.0)), 2).unwrap();
        let a =
            Representation::new(shape, vec![2, 2], vec![ComplexMatrix::identity(2), j]).unwrap();
        let r = regularize(&a, &TolerancePolicy::default()).unwrap();
        assert!(r.summands.is_empty());
        assert_eq!(r.regular_dim(), 2);
        for z in &r.monodromy_eigenvalues {
            assert!((z - c(3.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn walk_plus_regular() {
        let shape = cyc(">><");
        let g = make_g(2, 5, &shape).unwrap();
        let reg = Representation::new(
            shape.clone(),
            vec![2; 3],
            vec![ComplexMatrix::identity(2); 3],
        )
        .unwrap();
        let a = direct_sum(&g, &reg).unwrap();
        let r = regularize(&a, &TolerancePolicy::default()).unwrap();
        assert_eq!(r.labels(), vec![IndecomposableLabel::G(2, 5)]);
        assert_eq!(r.regular_dim(), 2);
        assert!(r.residual < 1e-12);
        assert!(r.trace.unitarity_defect() < 1e-12);
    }

    #[test]
    fn counterclockwise_monodromy_uses_inverse() {
        let shape = cyc("><");
        let m = ComplexMatrix::from_real_rows(&[&[2., 1.], &[1., 1.]]);
        let p =
            Representation::new(shape, vec![2, 2], vec![ComplexMatrix::identity(2), m]).unwrap();
        let (prod, _) = monodromy(&p, &TolerancePolicy::default()).unwrap();
        let want = ComplexMatrix::from_real_rows(&[&[1., -1.], &[-1., 2.]]);
        assert!(prod.sub(&want).fro_norm() < 1e-13);
    }
}
