//! Chain and cycle quivers, their matrix representations, and the
//! indecomposable representations `L(i,j)` and `G(l,r)`.
//!
//! Vertices and arrows are 0-based in this API except inside
//! [`IndecomposableLabel`], which uses the conventional 1-based numbering.
//! Arrow `k` joins vertex `k` and vertex `k+1` (mod `t` on a cycle).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inverse, sigma_max, sigma_min, ComplexMatrix, TolerancePolicy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuiverKind {
    Chain,
    Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// Arrow `k` maps vertex `k` to vertex `k+1`.
    Clockwise,
    /// Arrow `k` maps vertex `k+1` to vertex `k`.
    Counterclockwise,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::Counterclockwise,
            Orientation::Counterclockwise => Orientation::Clockwise,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Clockwise => '>',
            Orientation::Counterclockwise => '<',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverShape {
    kind: QuiverKind,
    t: usize,
    orientations: Vec<Orientation>,
}

impl QuiverShape {
    pub fn new(kind: QuiverKind, t: usize, orientations: Vec<Orientation>) -> Result<Self> {
        let expected = match kind {
            QuiverKind::Chain => {
                if t == 0 {
                    return Err(Error::argument("a chain needs at least one vertex"));
                }
                t - 1
            }
            QuiverKind::Cycle => {
                if t < 2 {
                    return Err(Error::argument("a cycle needs at least two vertices"));
                }
                t
            }
        };
        if orientations.len() != expected {
            return Err(Error::argument(format!(
                "a {kind:?} with {t} vertices has {expected} arrows, got {} orientations",
                orientations.len()
            )));
        }
        Ok(Self {
            kind,
            t,
            orientations,
        })
    }

    pub fn chain(orientations: Vec<Orientation>) -> Self {
        let t = orientations.len() + 1;
        Self {
            kind: QuiverKind::Chain,
            t,
            orientations,
        }
    }

    pub fn cycle(orientations: Vec<Orientation>) -> Result<Self> {
        Self::new(QuiverKind::Cycle, orientations.len(), orientations)
    }

    /// Parses a string of `>` (clockwise) and `<` (counterclockwise).
    pub fn parse(kind: QuiverKind, t: usize, arrows: &str) -> Result<Self> {
        let orientations = parse_orientations(arrows)?;
        Self::new(kind, t, orientations)
    }

    pub fn kind(&self) -> QuiverKind {
        self.kind
    }

    pub fn is_cycle(&self) -> bool {
        self.kind == QuiverKind::Cycle
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn orientations(&self) -> &[Orientation] {
        &self.orientations
    }

    pub fn orientation(&self, arrow: usize) -> Orientation {
        self.orientations[arrow]
    }

    pub fn num_arrows(&self) -> usize {
        self.orientations.len()
    }

    pub fn orientation_string(&self) -> String {
        self.orientations.iter().map(|o| o.symbol()).collect()
    }

    /// `(source, target)` of an arrow.
    pub fn ends(&self, arrow: usize) -> (usize, usize) {
        let a = arrow;
        let b = (arrow + 1) % self.t;
        match self.orientations[arrow] {
            Orientation::Clockwise => (a, b),
            Orientation::Counterclockwise => (b, a),
        }
    }

    /// Every arrow reversed.
    pub fn transpose(&self) -> Self {
        Self {
            kind: self.kind,
            t: self.t,
            orientations: self.orientations.iter().map(|o| o.flipped()).collect(),
        }
    }

    /// `[n]` for a 1-based walk index: the vertex in `1..=t` congruent to `n`.
    pub fn wrap(&self, n: usize) -> usize {
        (n + self.t - 1) % self.t + 1
    }
}

pub fn parse_orientations(arrows: &str) -> Result<Vec<Orientation>> {
    arrows
        .chars()
        .map(|c| match c {
            '>' => Ok(Orientation::Clockwise),
            '<' => Ok(Orientation::Counterclockwise),
            other => Err(Error::argument(format!(
                "orientation characters must be '>' or '<', found {other:?}"
            ))),
        })
        .collect()
}

impl fmt::Display for QuiverShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            QuiverKind::Chain => "chain",
            QuiverKind::Cycle => "cycle",
        };
        write!(f, "{kind}(t={}, \"{}\")", self.t, self.orientation_string())
    }
}

/// One matrix per arrow; arrow `u → v` carries a `dims[v] × dims[u]` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    shape: QuiverShape,
    dims: Vec<usize>,
    matrices: Vec<ComplexMatrix>,
}

impl Representation {
    pub fn new(shape: QuiverShape, dims: Vec<usize>, matrices: Vec<ComplexMatrix>) -> Result<Self> {
        if dims.len() != shape.t() {
            return Err(Error::argument(format!(
                "expected {} dimensions, got {}",
                shape.t(),
                dims.len()
            )));
        }
        if matrices.len() != shape.num_arrows() {
            return Err(Error::argument(format!(
                "expected {} matrices, got {}",
                shape.num_arrows(),
                matrices.len()
            )));
        }
        for (k, m) in matrices.iter().enumerate() {
            let (u, v) = shape.ends(k);
            if m.shape() != (dims[v], dims[u]) {
                return Err(Error::argument(format!(
                    "arrow {} ({} -> {}) needs a {}x{} matrix, got {}x{}",
                    k + 1,
                    u + 1,
                    v + 1,
                    dims[v],
                    dims[u],
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_finite() {
                return Err(Error::argument(format!(
                    "arrow {} has non-finite entries",
                    k + 1
                )));
            }
        }
        Ok(Self {
            shape,
            dims,
            matrices,
        })
    }

    /// All-zero matrices of the sizes `dims` dictates.
    pub fn zero(shape: QuiverShape, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != shape.t() {
            return Err(Error::argument(
                "dimension vector length does not match the quiver",
            ));
        }
        let matrices = (0..shape.num_arrows())
            .map(|k| {
                let (u, v) = shape.ends(k);
                ComplexMatrix::zeros(dims[v], dims[u])
            })
            .collect();
        Ok(Self {
            shape,
            dims,
            matrices,
        })
    }

    pub fn shape(&self) -> &QuiverShape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, arrow: usize) -> &ComplexMatrix {
        &self.matrices[arrow]
    }

    /// Largest Frobenius norm over the arrows.
    pub fn max_norm(&self) -> f64 {
        self.matrices
            .iter()
            .map(|m| m.fro_norm())
            .fold(0.0, f64::max)
    }

    /// Largest singular value over the arrows. The algorithms scale their rank
    /// threshold by this value.
    pub fn sigma_scale(&self) -> Result<f64> {
        let mut s: f64 = 0.0;
        for m in &self.matrices {
            s = s.max(sigma_max(m)?);
        }
        Ok(s)
    }

    /// Sub-representation on the given coordinates of each vertex.
    pub fn restrict(&self, coords: &[Vec<usize>]) -> Self {
        let dims = coords.iter().map(|c| c.len()).collect();
        let matrices = (0..self.shape.num_arrows())
            .map(|k| {
                let (u, v) = self.shape.ends(k);
                self.matrices[k].select(&coords[v], &coords[u])
            })
            .collect();
        Self {
            shape: self.shape.clone(),
            dims,
            matrices,
        }
    }
}

pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if a.shape != b.shape {
        return Err(Error::argument(format!(
            "cannot add representations of {} and {}",
            a.shape, b.shape
        )));
    }
    Ok(Representation {
        shape: a.shape.clone(),
        dims: a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect(),
        matrices: a
            .matrices
            .iter()
            .zip(&b.matrices)
            .map(|(x, y)| x.direct_sum(y))
            .collect(),
    })
}

/// Direct sum of any number of representations of `shape`.
pub fn direct_sum_all<'a>(
    shape: &QuiverShape,
    parts: impl IntoIterator<Item = &'a Representation>,
) -> Result<Representation> {
    let mut acc = Representation::zero(shape.clone(), vec![0; shape.t()])?;
    for p in parts {
        acc = direct_sum(&acc, p)?;
    }
    Ok(acc)
}

/// Transposes every matrix (no conjugation) and reverses every arrow.
pub fn transpose_rep(a: &Representation) -> Representation {
    Representation {
        shape: a.shape.transpose(),
        dims: a.dims.clone(),
        matrices: a.matrices.iter().map(|m| m.transpose()).collect(),
    }
}

/// One invertible matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Isomorphism {
    pub maps: Vec<ComplexMatrix>,
}

impl Isomorphism {
    pub fn identity(dims: &[usize]) -> Self {
        Self {
            maps: dims.iter().map(|&d| ComplexMatrix::identity(d)).collect(),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.maps.iter().map(|m| m.rows()).collect()
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Isomorphism) -> Isomorphism {
        Isomorphism {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(s, o)| o.matmul(s))
                .collect(),
        }
    }

    /// Largest `‖S_v*S_v − I‖_F / max(1, d_v)` over the vertices.
    pub fn unitarity_defect(&self) -> f64 {
        self.maps
            .iter()
            .map(|m| m.unitarity_defect() / (m.rows().max(1) as f64))
            .fold(0.0, f64::max)
    }

    pub fn adjoint(&self) -> Isomorphism {
        Isomorphism {
            maps: self.maps.iter().map(|m| m.adjoint()).collect(),
        }
    }
}

/// `A'_α = S_v · A_α · S_u^{-1}` for every arrow `u → v`.
pub fn apply_isomorphism(
    a: &Representation,
    s: &Isomorphism,
    tol: &TolerancePolicy,
) -> Result<Representation> {
    check_iso_dims(a, s)?;
    let mut inverses = Vec::with_capacity(s.maps.len());
    for (v, m) in s.maps.iter().enumerate() {
        let tau = tol.threshold(sigma_max(m)?);
        inverses.push(
            inverse(m, tau).map_err(|_| {
                Error::argument(format!("transform at vertex {} is singular", v + 1))
            })?,
        );
    }
    let matrices = (0..a.shape.num_arrows())
        .map(|k| {
            let (u, v) = a.shape.ends(k);
            s.maps[v].matmul(&a.matrices[k]).matmul(&inverses[u])
        })
        .collect();
    Ok(Representation {
        shape: a.shape.clone(),
        dims: a.dims.clone(),
        matrices,
    })
}

/// Same as [`apply_isomorphism`] for unitary `S`, using `S_u*` as the inverse.
pub fn apply_unitary(a: &Representation, s: &Isomorphism) -> Representation {
    let matrices = (0..a.shape.num_arrows())
        .map(|k| {
            let (u, v) = a.shape.ends(k);
            s.maps[v]
                .matmul(&a.matrices[k])
                .matmul(&s.maps[u].adjoint())
        })
        .collect();
    Representation {
        shape: a.shape.clone(),
        dims: a.dims.clone(),
        matrices,
    }
}

fn check_iso_dims(a: &Representation, s: &Isomorphism) -> Result<()> {
    if s.maps.len() != a.dims.len() {
        return Err(Error::argument(
            "isomorphism has the wrong number of vertices",
        ));
    }
    for (v, (m, &d)) in s.maps.iter().zip(&a.dims).enumerate() {
        if m.shape() != (d, d) {
            return Err(Error::argument(format!(
                "transform at vertex {} must be {d}x{d}, got {}x{}",
                v + 1,
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(())
}

/// `max_α ‖S_v·A_α − A'_α·S_u‖_F`.
pub fn iso_residual(a: &Representation, a2: &Representation, s: &Isomorphism) -> Result<f64> {
    if a.shape != a2.shape || a.dims != a2.dims {
        return Err(Error::argument(
            "representations differ in shape or dimensions",
        ));
    }
    check_iso_dims(a, s)?;
    Ok((0..a.shape.num_arrows())
        .map(|k| {
            let (u, v) = a.shape.ends(k);
            s.maps[v]
                .matmul(&a.matrices[k])
                .sub(&a2.matrices[k].matmul(&s.maps[u]))
                .fro_norm()
        })
        .fold(0.0, f64::max))
}

/// A summand of a canonical decomposition; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IndecomposableLabel {
    /// Interval `i..=j` of a chain.
    L(usize, usize),
    /// Walk `l..=r` around a cycle, `1 ≤ l ≤ t`, `r ≥ l`.
    G(usize, usize),
    /// Regular part of the given dimension.
    Regular(usize),
}

impl fmt::Display for IndecomposableLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecomposableLabel::L(i, j) => write!(f, "L({i},{j})"),
            IndecomposableLabel::G(l, r) => write!(f, "G({l},{r})"),
            IndecomposableLabel::Regular(n) => write!(f, "Regular({n})"),
        }
    }
}

impl IndecomposableLabel {
    /// Dimension vector of the summand on `shape`.
    pub fn dims(&self, shape: &QuiverShape) -> Result<Vec<usize>> {
        let t = shape.t();
        match *self {
            IndecomposableLabel::L(i, j) => {
                check_interval(i, j, shape)?;
                Ok((1..=t).map(|v| usize::from(v >= i && v <= j)).collect())
            }
            IndecomposableLabel::G(l, r) => {
                check_walk(l, r, shape)?;
                let mut d = vec![0; t];
                for n in l..=r {
                    d[shape.wrap(n) - 1] += 1;
                }
                Ok(d)
            }
            IndecomposableLabel::Regular(n) => {
                if !shape.is_cycle() {
                    return Err(Error::argument("regular summands exist only on cycles"));
                }
                Ok(vec![n; t])
            }
        }
    }
}

fn check_interval(i: usize, j: usize, shape: &QuiverShape) -> Result<()> {
    if shape.kind() != QuiverKind::Chain {
        return Err(Error::argument("L(i,j) is defined on chains"));
    }
    if !(1 <= i && i <= j && j <= shape.t()) {
        return Err(Error::argument(format!(
            "L({i},{j}) needs 1 <= i <= j <= {}",
            shape.t()
        )));
    }
    Ok(())
}

fn check_walk(l: usize, r: usize, shape: &QuiverShape) -> Result<()> {
    if !shape.is_cycle() {
        return Err(Error::argument("G(l,r) is defined on cycles"));
    }
    if !(1 <= l && l <= shape.t() && r >= l) {
        return Err(Error::argument(format!(
            "G({l},{r}) needs 1 <= l <= {} and r >= l",
            shape.t()
        )));
    }
    Ok(())
}

/// The interval representation: `C` on vertices `i..=j` (1-based), identity
/// maps inside the interval, zero spaces elsewhere.
pub fn make_l(i: usize, j: usize, shape: &QuiverShape) -> Result<Representation> {
    check_interval(i, j, shape)?;
    let dims: Vec<usize> = IndecomposableLabel::L(i, j).dims(shape)?;
    let matrices = (0..shape.num_arrows())
        .map(|k| {
            let (u, v) = shape.ends(k);
            if dims[u] == 1 && dims[v] == 1 {
                ComplexMatrix::identity(1)
            } else {
                ComplexMatrix::zeros(dims[v], dims[u])
            }
        })
        .collect();
    Ok(Representation {
        shape: shape.clone(),
        dims,
        matrices,
    })
}

/// The walk representation: one basis vector per walk index `n ∈ l..=r`,
/// placed at vertex `[n]` and ordered by increasing `n` within each vertex.
/// The step `n → n+1` is carried by arrow `[n]` in its own direction.
pub fn make_g(l: usize, r: usize, shape: &QuiverShape) -> Result<Representation> {
    check_walk(l, r, shape)?;
    let t = shape.t();
    let mut dims = vec![0; t];
    // position of walk index n within its vertex
    let pos: Vec<usize> = (l..=r)
        .map(|n| {
            let v = shape.wrap(n) - 1;
            dims[v] += 1;
            dims[v] - 1
        })
        .collect();
    let mut matrices: Vec<ComplexMatrix> = (0..t)
        .map(|k| {
            let (u, v) = shape.ends(k);
            ComplexMatrix::zeros(dims[v], dims[u])
        })
        .collect();
    let one = num_complex::Complex64::new(1.0, 0.0);
    for n in l..r {
        let arrow = shape.wrap(n) - 1;
        let (p_from, p_to) = (pos[n - l], pos[n + 1 - l]);
        match shape.orientation(arrow) {
            Orientation::Clockwise => matrices[arrow][(p_to, p_from)] = one,
            Orientation::Counterclockwise => matrices[arrow][(p_from, p_to)] = one,
        }
    }
    Ok(Representation {
        shape: shape.clone(),
        dims,
        matrices,
    })
}

/// Representation of a single label; `Regular(n)` gives the identity
/// representation of dimension `n`.
pub fn make_label(label: IndecomposableLabel, shape: &QuiverShape) -> Result<Representation> {
    match label {
        IndecomposableLabel::L(i, j) => make_l(i, j, shape),
        IndecomposableLabel::G(l, r) => make_g(l, r, shape),
        IndecomposableLabel::Regular(n) => {
            label.dims(shape)?;
            Representation::new(
                shape.clone(),
                vec![n; shape.t()],
                vec![ComplexMatrix::identity(n); shape.num_arrows()],
            )
        }
    }
}

/// First arrow that keeps `a` from being regular, with its `σ_min`
/// (zero when the matrix is not square). `None` when `a` is regular.
pub fn regularity_defect(a: &Representation, tau: f64) -> Result<Option<(usize, f64)>> {
    for (k, m) in a.matrices.iter().enumerate() {
        if !m.is_square() {
            return Ok(Some((k, 0.0)));
        }
        let s = sigma_min(m)?;
        if s <= tau {
            return Ok(Some((k, s)));
        }
    }
    Ok(None)
}

/// All dimensions equal and every matrix square with `σ_min > τ`, where `τ`
/// is scaled by the largest singular value in the representation.
pub fn is_regular(a: &Representation, tol: &TolerancePolicy) -> Result<bool> {
    if !a.shape.is_cycle() {
        return Err(Error::argument("regularity is defined for cycles"));
    }
    if a.dims.windows(2).any(|w| w[0] != w[1]) {
        return Ok(false);
    }
    let tau = tol.threshold(a.sigma_scale()?);
    Ok(regularity_defect(a, tau)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::BlockKind;
    use num_complex::Complex64;

    fn cyc(s: &str) -> QuiverShape {
        QuiverShape::parse(QuiverKind::Cycle, s.len(), s).unwrap()
    }

    #[test]
    fn g_1_9_on_six_cycle() {
        let shape = cyc("><<>><");
        let g = make_g(1, 9, &shape).unwrap();
        assert_eq!(g.dims(), &[2, 2, 2, 1, 1, 1]);
        let col = ComplexMatrix::from_real_rows(&[&[1.], &[0.]]);
        let row = ComplexMatrix::from_real_rows(&[&[0., 1.]]);
        let want = [
            ComplexMatrix::identity(2),
            ComplexMatrix::identity(2),
            col,
            ComplexMatrix::identity(1),
            ComplexMatrix::identity(1),
            row,
        ];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(g.matrix(k), w, "arrow {}", k + 1);
        }
    }

    #[test]
    fn g_nilpotent_summand() {
        // G(l, l-1+p·t) carries a nilpotent Jordan block on arrow [l-1]. With
        // the increasing walk-index basis it is the lower shift; reversing the
        // basis at every vertex turns it into J_p(0) and keeps the identities.
        let shape = cyc(">>>");
        let g = make_g(2, 1 + 2 * 3, &shape).unwrap();
        assert_eq!(g.dims(), &[2, 2, 2]);
        let j2 = ComplexMatrix::block(BlockKind::Jordan(Complex64::new(0.0, 0.0)), 2).unwrap();
        assert_eq!(g.matrix(0), &j2.transpose());
        let rev = ComplexMatrix::from_real_rows(&[&[0., 1.], &[1., 0.]]);
        assert_eq!(rev.matmul(g.matrix(0)).matmul(&rev), j2);
        assert_eq!(g.matrix(1), &ComplexMatrix::identity(2));
        assert_eq!(g.matrix(2), &ComplexMatrix::identity(2));
    }

    #[test]
    fn g_1_1_is_a_point() {
        let g = make_g(1, 1, &cyc(">><")).unwrap();
        assert_eq!(g.dims(), &[1, 0, 0]);
    }

    #[test]
    fn l_examples() {
        let shape = QuiverShape::chain(vec![Orientation::Clockwise]);
        let l11 = make_l(1, 1, &shape).unwrap();
        assert_eq!(l11.dims(), &[1, 0]);
        assert_eq!(l11.matrix(0).shape(), (0, 1));
        let chain4 = QuiverShape::parse(QuiverKind::Chain, 4, "><>").unwrap();
        assert_eq!(make_l(2, 3, &chain4).unwrap().dims(), &[0, 1, 1, 0]);
        let full = make_l(1, 4, &chain4).unwrap();
        assert!(full
            .matrices()
            .iter()
            .all(|m| *m == ComplexMatrix::identity(1)));
        assert!(make_l(3, 2, &chain4).is_err());
        assert!(make_l(1, 5, &chain4).is_err());
    }

    #[test]
    fn direct_sum_of_identity_pairs() {
        let shape = cyc(">>");
        let a = make_label(IndecomposableLabel::Regular(1), &shape).unwrap();
        let s = direct_sum(&a, &a).unwrap();
        assert_eq!(s.matrix(0), &ComplexMatrix::identity(2));
        let zero = Representation::zero(shape.clone(), vec![0, 0]).unwrap();
        assert_eq!(direct_sum(&a, &zero).unwrap(), a);
        assert!(direct_sum(
            &a,
            &make_label(IndecomposableLabel::Regular(1), &cyc("><")).unwrap()
        )
        .is_err());
    }

    #[test]
    fn transpose_flips_orientation() {
        let shape = cyc(">>");
        let a = Representation::new(
            shape,
            vec![1, 2],
            vec![
                ComplexMatrix::from_real_rows(&[&[1.], &[2.]]),
                ComplexMatrix::from_real_rows(&[&[3., 4.]]),
            ],
        )
        .unwrap();
        let at = transpose_rep(&a);
        assert_eq!(at.shape().orientation_string(), "<<");
        assert_eq!(at.matrix(0), &ComplexMatrix::from_real_rows(&[&[1., 2.]]));
        assert_eq!(transpose_rep(&at), a);
    }

    #[test]
    fn regularity() {
        let shape = cyc(">>");
        let tol = TolerancePolicy::default();
        let id = make_label(IndecomposableLabel::Regular(3), &shape).unwrap();
        assert!(is_regular(&id, &tol).unwrap());
        let j0 = ComplexMatrix::block(BlockKind::Jordan(Complex64::new(0.0, 0.0)), 2).unwrap();
        let sing = Representation::new(
            shape.clone(),
            vec![2, 2],
            vec![ComplexMatrix::identity(2), j0],
        )
        .unwrap();
        assert!(!is_regular(&sing, &tol).unwrap());
        let j2 = ComplexMatrix::block(BlockKind::Jordan(Complex64::new(2.0, 0.0)), 2).unwrap();
        let reg =
            Representation::new(shape, vec![2, 2], vec![ComplexMatrix::identity(2), j2]).unwrap();
        assert!(is_regular(&reg, &tol).unwrap());
    }

    #[test]
    fn shape_validation() {
        assert!(Representation::new(
            cyc(">>"),
            vec![1, 1],
            vec![ComplexMatrix::zeros(2, 1), ComplexMatrix::zeros(1, 1)]
        )
        .is_err());
        assert!(QuiverShape::parse(QuiverKind::Cycle, 1, ">").is_err());
        assert!(QuiverShape::parse(QuiverKind::Chain, 3, ">x").is_err());
    }

    #[test]
    fn iso_residual_against_zero() {
        let shape = cyc(">>");
        let a = make_g(1, 2, &shape).unwrap();
        let zero = Representation::zero(shape, a.dims().to_vec()).unwrap();
        let r = iso_residual(&a, &zero, &Isomorphism::identity(a.dims())).unwrap();
        assert!((r - 1.0).abs() < 1e-15);
    }
}
