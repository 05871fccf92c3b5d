//! Planted instances with known decompositions, and checks that a computed
//! decomposition recovers them.
//!
//! Randomness comes from ChaCha8 seeded with the plant seed. Each vertex `v`
//! (0-based) draws its scrambling unitary from stream `v + 1`; additive noise
//! uses stream [`NOISE_STREAM`]. Streams are independent, so adding a vertex
//! never changes the draws of the others.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::chain::{ChainCanonicalForm, ChainTrace};
use crate::cycle::RegularizingDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{qr, ComplexMatrix, TolerancePolicy};
use crate::quiver::{
    apply_isomorphism, apply_unitary, direct_sum, make_label, IndecomposableLabel, Isomorphism,
    Orientation, QuiverKind, QuiverShape, Representation,
};

pub const NOISE_STREAM: u64 = u64::MAX;
const GENERAL_STREAM_BASE: u64 = 1 << 32;

/// Smallest modulus accepted for a planted regular eigenvalue.
pub const MIN_EIGENVALUE: f64 = 1e-9;

/// How planted instances are disguised.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum Scramble {
    #[default]
    Unitary,
    /// `S_v = U_v · diag(s) · W_v` with `s` in `[1, max_cond]`, so every
    /// vertex transform has condition number at most `max_cond`.
    General { max_cond: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlantSpec {
    pub kind: QuiverKind,
    pub t: usize,
    /// `>` clockwise, `<` counterclockwise, one character per arrow.
    pub orientations: String,
    pub labels: Vec<IndecomposableLabel>,
    /// Eigenvalues of the regular summand (cycles only).
    #[serde(default)]
    pub regular_eigs: Vec<Complex64>,
    pub seed: u64,
    #[serde(default)]
    pub scramble: Scramble,
    /// Entrywise Gaussian noise, relative to the largest arrow spectral norm.
    #[serde(default)]
    pub noise: f64,
}

impl PlantSpec {
    pub fn shape(&self) -> Result<QuiverShape> {
        QuiverShape::parse(self.kind, self.t, &self.orientations)
    }

    pub fn validate(&self) -> Result<QuiverShape> {
        let shape = self.shape()?;
        for label in &self.labels {
            if matches!(label, IndecomposableLabel::Regular(_)) {
                return Err(Error::argument(
                    "give the regular part through regular_eigs",
                ));
            }
            label.dims(&shape)?;
            if let IndecomposableLabel::G(l, _) = label {
                if *l > self.t {
                    return Err(Error::argument(format!(
                        "{label} must start at a vertex <= t"
                    )));
                }
            }
        }
        if !shape.is_cycle() && !self.regular_eigs.is_empty() {
            return Err(Error::argument("chains have no regular part"));
        }
        if let Some(z) = self
            .regular_eigs
            .iter()
            .find(|z| z.norm().is_nan() || z.norm() <= MIN_EIGENVALUE)
        {
            return Err(Error::argument(format!(
                "regular eigenvalue {z} is too close to zero (|λ| must exceed {MIN_EIGENVALUE:e})"
            )));
        }
        if !(self.noise >= 0.0 && self.noise.is_finite()) {
            return Err(Error::argument("noise must be finite and nonnegative"));
        }
        if let Scramble::General { max_cond } = self.scramble {
            if !(max_cond >= 1.0 && max_cond.is_finite()) {
                return Err(Error::argument("max_cond must be at least 1"));
            }
        }
        Ok(shape)
    }

    pub fn regular_dim(&self) -> usize {
        self.regular_eigs.len()
    }

    /// Dimension vector of the planted representation.
    pub fn dims(&self) -> Result<Vec<usize>> {
        let shape = self.shape()?;
        let mut d = vec![self.regular_dim(); self.t];
        for l in &self.labels {
            for (x, y) in d.iter_mut().zip(l.dims(&shape)?) {
                *x += y;
            }
        }
        Ok(d)
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub fn random_unitary_from(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| gaussian(rng));
    let (mut q, r) = qr(&g).expect("square input");
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Haar-distributed unitary from the QR factorization of a complex Gaussian
/// matrix, with the phases of `R`'s diagonal moved into `Q`.
pub fn random_unitary(n: usize, seed: u64) -> ComplexMatrix {
    random_unitary_from(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Direct sum of the planted summands before any scrambling.
pub fn plant_unscrambled(spec: &PlantSpec) -> Result<Representation> {
    let shape = spec.validate()?;
    let mut rep = Representation::zero(shape.clone(), vec![0; shape.t()])?;
    for &label in &spec.labels {
        rep = direct_sum(&rep, &make_label(label, &shape)?)?;
    }
    if !spec.regular_eigs.is_empty() {
        let n = spec.regular_eigs.len();
        let last = shape.t() - 1;
        let matrices = (0..shape.t())
            .map(|k| {
                if k != last {
                    return ComplexMatrix::identity(n);
                }
                match shape.orientation(k) {
                    Orientation::Clockwise => ComplexMatrix::diagonal(&spec.regular_eigs),
                    Orientation::Counterclockwise => {
                        let inv: Vec<Complex64> =
                            spec.regular_eigs.iter().map(|z| z.inv()).collect();
                        ComplexMatrix::diagonal(&inv)
                    }
                }
            })
            .collect();
        let reg = Representation::new(shape.clone(), vec![n; shape.t()], matrices)?;
        rep = direct_sum(&rep, &reg)?;
    }
    Ok(rep)
}

/// Planted representation and its ground truth (a copy of `spec`).
pub fn plant(spec: &PlantSpec) -> Result<(Representation, PlantSpec)> {
    let base = plant_unscrambled(spec)?;
    let dims = base.dims().to_vec();
    let unitary = Isomorphism {
        maps: dims
            .iter()
            .enumerate()
            .map(|(v, &d)| random_unitary_from(d, &mut stream(spec.seed, v as u64 + 1)))
            .collect(),
    };
    let mut rep = match spec.scramble {
        Scramble::Unitary => apply_unitary(&base, &unitary),
        Scramble::General { max_cond } => {
            let maps = dims
                .iter()
                .enumerate()
                .map(|(v, &d)| {
                    let mut rng = stream(spec.seed, GENERAL_STREAM_BASE + v as u64);
                    let w = random_unitary_from(d, &mut rng);
                    let s: Vec<Complex64> = (0..d)
                        .map(|_| Complex64::new(max_cond.powf(rng.random::<f64>()), 0.0))
                        .collect();
                    unitary.maps[v]
                        .matmul(&ComplexMatrix::diagonal(&s))
                        .matmul(&w)
                })
                .collect();
            apply_isomorphism(
                &base,
                &Isomorphism { maps },
                &TolerancePolicy::new(0.0, 0.0)?,
            )?
        }
    };
    if spec.noise > 0.0 {
        rep = add_noise(&rep, spec.noise, spec.seed)?;
    }
    Ok((rep, spec.clone()))
}

/// Adds circular complex Gaussian noise to every entry, with standard
/// deviation `relative · max_α ‖A_α‖₂` (so `E|z|² = σ²`). The spectral norm is
/// the same scale the rank threshold is measured against.
pub fn add_noise(a: &Representation, relative: f64, seed: u64) -> Result<Representation> {
    let mut rng = stream(seed, NOISE_STREAM);
    let scale = relative * a.sigma_scale()? * std::f64::consts::FRAC_1_SQRT_2;
    let matrices = a
        .matrices()
        .iter()
        .map(|m| {
            m.add(&ComplexMatrix::from_fn(m.rows(), m.cols(), |_, _| {
                gaussian(&mut rng) * scale
            }))
        })
        .collect();
    Representation::new(a.shape().clone(), a.dims().to_vec(), matrices)
}

const REGULAR_EIGS: [Complex64; 6] = [
    Complex64::new(2.0, 0.0),
    Complex64::new(-2.0, 0.0),
    Complex64::new(3.0, 0.0),
    Complex64::new(-3.0, 0.0),
    Complex64::new(1.0, 1.0),
    Complex64::new(1.0, -1.0),
];

fn random_orientations(rng: &mut ChaCha8Rng, arrows: usize) -> String {
    (0..arrows)
        .map(|_| if rng.random::<bool>() { '>' } else { '<' })
        .collect()
}

/// Random cycle plant: `t ∈ 2..=6`, total dimension at most 40, every summand
/// of dimension at most 8, regular eigenvalues drawn from `{±2, ±3, 1±i}`.
pub fn sample_cycle_spec(seed: u64) -> PlantSpec {
    let mut rng = stream(seed, 0);
    let t = rng.random_range(2..=6);
    let orientations = random_orientations(&mut rng, t);
    let reg = rng.random_range(0..=4usize);
    let regular_eigs: Vec<Complex64> = (0..reg)
        .map(|_| REGULAR_EIGS[rng.random_range(0..6)])
        .collect();
    let mut budget = 40 - reg * t;
    let mut labels = Vec::new();
    for _ in 0..rng.random_range(1..=6) {
        let l = rng.random_range(1..=t);
        let len = rng.random_range(1..=8usize);
        if len > budget {
            continue;
        }
        budget -= len;
        labels.push(IndecomposableLabel::G(l, l + len - 1));
    }
    PlantSpec {
        kind: QuiverKind::Cycle,
        t,
        orientations,
        labels,
        regular_eigs,
        seed,
        scramble: Scramble::Unitary,
        noise: 0.0,
    }
}

/// Random chain plant: `t ∈ 2..=8`, random orientations, every vertex of
/// dimension at most 12.
pub fn sample_chain_spec(seed: u64) -> PlantSpec {
    let mut rng = stream(seed, 0);
    let t = rng.random_range(2..=8);
    let orientations = random_orientations(&mut rng, t - 1);
    let mut dims = vec![0usize; t];
    let mut labels = Vec::new();
    for _ in 0..rng.random_range(1..=20) {
        let i = rng.random_range(1..=t);
        let j = rng.random_range(i..=t);
        if (i..=j).any(|v| dims[v - 1] >= 12) {
            continue;
        }
        for v in i..=j {
            dims[v - 1] += 1;
        }
        labels.push(IndecomposableLabel::L(i, j));
    }
    PlantSpec {
        kind: QuiverKind::Chain,
        t,
        orientations,
        labels,
        regular_eigs: Vec::new(),
        seed,
        scramble: Scramble::Unitary,
        noise: 0.0,
    }
}

/// A decomposition to check against a plant.
#[derive(Clone, Copy, Debug)]
pub enum Outcome<'a> {
    Chain(&'a ChainCanonicalForm, &'a ChainTrace),
    Cycle(&'a RegularizingDecomposition),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub labels_match: bool,
    pub expected_labels: Vec<IndecomposableLabel>,
    pub recovered_labels: Vec<IndecomposableLabel>,
    pub residual: f64,
    pub unitarity_defect: f64,
    /// Relative Hausdorff distance between eigenvalue multisets (cycles).
    pub eigenvalue_distance: f64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Thresholds used by [`verify`].
pub const RESIDUAL_FACTOR: f64 = 1e-8;
pub const UNITARITY_LIMIT: f64 = 1e-12;
pub const EIGENVALUE_LIMIT: f64 = 1e-6;

fn check(name: &str, measured: f64, threshold: f64) -> Check {
    Check {
        name: name.to_string(),
        passed: measured <= threshold,
        measured,
        threshold,
    }
}

/// Hausdorff distance between two multisets divided by the largest modulus
/// in `truth`; infinite when the counts differ.
pub fn relative_hausdorff(found: &[Complex64], truth: &[Complex64]) -> f64 {
    if found.len() != truth.len() {
        return f64::INFINITY;
    }
    if truth.is_empty() {
        return 0.0;
    }
    let one_way = |a: &[Complex64], b: &[Complex64]| {
        a.iter()
            .map(|x| {
                b.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    let scale = truth
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    one_way(found, truth).max(one_way(truth, found)) / scale
}

fn sorted(mut v: Vec<IndecomposableLabel>) -> Vec<IndecomposableLabel> {
    v.sort();
    v
}

pub fn verify(
    a: &Representation,
    outcome: Outcome<'_>,
    truth: &PlantSpec,
) -> Result<VerificationReport> {
    let shape = truth.shape()?;
    if &shape != a.shape() {
        return Err(Error::argument(format!(
            "truth describes {shape} but the input is {}",
            a.shape()
        )));
    }
    let expected = sorted(truth.labels.clone());
    let residual_limit = RESIDUAL_FACTOR * a.max_norm();
    let mut checks = Vec::new();

    let (recovered, residual, unitarity, found_dims, eig_dist, regular_dim) = match outcome {
        Outcome::Chain(form, trace) => (
            sorted(form.labels()),
            trace.residual,
            trace.transform.unitarity_defect(),
            form.dims(shape.t()),
            0.0,
            None,
        ),
        Outcome::Cycle(dec) => {
            let mut d = vec![dec.regular_dim(); shape.t()];
            for s in &dec.summands {
                for (x, y) in d.iter_mut().zip(s.label.dims(&shape)?) {
                    *x += y;
                }
            }
            (
                sorted(dec.labels()),
                dec.residual,
                dec.trace.unitarity_defect(),
                d,
                relative_hausdorff(&dec.monodromy_eigenvalues, &truth.regular_eigs),
                Some(dec.regular_dim()),
            )
        }
    };

    let mismatched = label_mismatch(&recovered, &expected);
    checks.push(check("labels", mismatched as f64, 0.0));
    if let Some(rd) = regular_dim {
        checks.push(check(
            "regular_dim",
            rd.abs_diff(truth.regular_dim()) as f64,
            0.0,
        ));
        checks.push(check("eigenvalues", eig_dist, EIGENVALUE_LIMIT));
    }
    let dim_gap: usize = found_dims
        .iter()
        .zip(a.dims())
        .map(|(x, y)| x.abs_diff(*y))
        .sum();
    checks.push(check("dimension_conservation", dim_gap as f64, 0.0));
    checks.push(check("residual", residual, residual_limit));
    checks.push(check("unitarity", unitarity, UNITARITY_LIMIT));

    Ok(VerificationReport {
        labels_match: mismatched == 0,
        expected_labels: expected,
        recovered_labels: recovered,
        residual,
        unitarity_defect: unitarity,
        eigenvalue_distance: eig_dist,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

/// Size of the symmetric difference of two sorted multisets.
fn label_mismatch(a: &[IndecomposableLabel], b: &[IndecomposableLabel]) -> usize {
    let (mut i, mut j, mut miss) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                miss += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                miss += 1;
                j += 1;
            }
        }
    }
    miss + (a.len() - i) + (b.len() - j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::canon_chain;
    use crate::cycle::regularize;

    #[test]
    fn unitary_basics() {
        assert_eq!(random_unitary(0, 1).shape(), (0, 0));
        let q = random_unitary(5, 7);
        assert!(q.unitarity_defect() < 1e-13);
        assert_eq!(q, random_unitary(5, 7));
    }

    #[test]
    fn distinct_seeds_differ() {
        let qs: Vec<ComplexMatrix> = (0..100).map(|s| random_unitary(3, s)).collect();
        let mut min = f64::INFINITY;
        for i in 0..qs.len() {
            for j in i + 1..qs.len() {
                min = min.min(qs[i].sub(&qs[j]).fro_norm());
            }
        }
        assert!(min > 1e-3, "closest pair {min}");
    }

    fn cycle_spec(
        labels: Vec<IndecomposableLabel>,
        eigs: Vec<Complex64>,
        orient: &str,
    ) -> PlantSpec {
        PlantSpec {
            kind: QuiverKind::Cycle,
            t: orient.len(),
            orientations: orient.into(),
            labels,
            regular_eigs: eigs,
            seed: 11,
            scramble: Scramble::Unitary,
            noise: 0.0,
        }
    }

    #[test]
    fn plant_examples() {
        let spec = cycle_spec(vec![IndecomposableLabel::G(1, 7)], vec![], ">>>");
        let (a, truth) = plant(&spec).unwrap();
        assert_eq!(a.dims(), &[3, 2, 2]);
        assert_eq!(truth, spec);
        assert_eq!(plant(&spec).unwrap().0, a);

        let spec = cycle_spec(
            vec![],
            vec![Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)],
            "><",
        );
        assert_eq!(plant(&spec).unwrap().0.dims(), &[2, 2]);

        let chain = PlantSpec {
            kind: QuiverKind::Chain,
            t: 2,
            orientations: ">".into(),
            labels: vec![IndecomposableLabel::L(1, 2), IndecomposableLabel::L(2, 2)],
            regular_eigs: vec![],
            seed: 3,
            scramble: Scramble::Unitary,
            noise: 0.0,
        };
        assert_eq!(plant(&chain).unwrap().0.dims(), &[1, 2]);
    }

    #[test]
    fn plant_rejects_tiny_eigenvalue() {
        let spec = cycle_spec(vec![], vec![Complex64::new(1e-10, 0.0)], ">>");
        assert!(plant(&spec).is_err());
    }

    #[test]
    fn self_consistent_and_tampered_truth() {
        let tol = TolerancePolicy::default();
        let spec = cycle_spec(
            vec![IndecomposableLabel::G(2, 5), IndecomposableLabel::G(1, 1)],
            vec![Complex64::new(-2.0, 0.0), Complex64::new(1.0, 1.0)],
            "><>",
        );
        let (a, truth) = plant(&spec).unwrap();
        let dec = regularize(&a, &tol).unwrap();
        let report = verify(&a, Outcome::Cycle(&dec), &truth).unwrap();
        assert!(report.passed, "{report:#?}");

        let mut wrong = truth.clone();
        wrong.labels[0] = IndecomposableLabel::G(2, 4);
        let report = verify(&a, Outcome::Cycle(&dec), &wrong).unwrap();
        assert!(!report.labels_match && !report.passed);
    }

    #[test]
    fn chain_verification() {
        let spec = sample_chain_spec(5);
        let (a, truth) = plant(&spec).unwrap();
        let (form, trace) = canon_chain(&a, &TolerancePolicy::default()).unwrap();
        let report = verify(&a, Outcome::Chain(&form, &trace), &truth).unwrap();
        assert!(report.passed, "{report:#?}");
    }

    #[test]
    fn hausdorff() {
        let a = [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)];
        let b = [Complex64::new(3.0, 0.0), Complex64::new(2.0, 0.0)];
        assert_eq!(relative_hausdorff(&a, &b), 0.0);
        assert_eq!(relative_hausdorff(&a, &b[..1]), f64::INFINITY);
    }
}
