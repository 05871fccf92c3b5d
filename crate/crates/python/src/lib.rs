//! Python bindings. Matrices cross the boundary as lists of rows of Python
//! `complex` values; labels as tuples such as `("G", 1, 7)`.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use quiver_canon::chain::{canon_chain, ChainCanonicalForm, ChainTrace};
use quiver_canon::cycle::{regularize as regularize_rs, Pass, RegularizingDecomposition};
use quiver_canon::io;
use quiver_canon::oracle::{self, PlantSpec};
use quiver_canon::quiver::{
    self, IndecomposableLabel, QuiverKind, QuiverShape, Representation as Rep,
};
use quiver_canon::{ComplexMatrix, Error, TolerancePolicy};

fn to_py(e: Error) -> PyErr {
    if e.is_argument() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

fn rows_of(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn matrix_from(rows: usize, cols: usize, data: &[Vec<Complex64>]) -> PyResult<ComplexMatrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err(format!(
            "expected a {rows}x{cols} matrix"
        )));
    }
    ComplexMatrix::from_vec(rows, cols, data.concat()).map_err(to_py)
}

fn label_tuple(l: IndecomposableLabel) -> (String, usize, usize) {
    match l {
        IndecomposableLabel::L(i, j) => ("L".into(), i, j),
        IndecomposableLabel::G(l, r) => ("G".into(), l, r),
        IndecomposableLabel::Regular(n) => ("Regular".into(), n, n),
    }
}

fn parse_kind(kind: &str) -> PyResult<QuiverKind> {
    match kind {
        "chain" => Ok(QuiverKind::Chain),
        "cycle" => Ok(QuiverKind::Cycle),
        other => Err(PyValueError::new_err(format!(
            "kind must be 'chain' or 'cycle', got {other:?}"
        ))),
    }
}

fn policy(tol_abs: f64, tol_rel: f64) -> PyResult<TolerancePolicy> {
    TolerancePolicy::new(tol_abs, tol_rel).map_err(to_py)
}

/// A matrix representation of a chain or cycle quiver.
#[pyclass(
    name = "Representation",
    module = "quivercanon",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
pub struct PyRepresentation {
    inner: Rep,
}

#[pymethods]
impl PyRepresentation {
    /// `orientations` has one `>` (clockwise, k to k+1) or `<` per arrow;
    /// a chain has one vertex more than arrows, a cycle as many.
    #[new]
    fn new(
        kind: &str,
        orientations: &str,
        dims: Vec<usize>,
        matrices: Vec<Vec<Vec<Complex64>>>,
    ) -> PyResult<Self> {
        let kind = parse_kind(kind)?;
        let t = match kind {
            QuiverKind::Chain => orientations.chars().count() + 1,
            QuiverKind::Cycle => orientations.chars().count(),
        };
        let shape = QuiverShape::parse(kind, t, orientations).map_err(to_py)?;
        if dims.len() != t || matrices.len() != shape.num_arrows() {
            return Err(PyValueError::new_err(format!(
                "expected {t} dimensions and {} matrices",
                shape.num_arrows()
            )));
        }
        let mut mats = Vec::with_capacity(matrices.len());
        for (k, m) in matrices.iter().enumerate() {
            let (src, dst) = shape.ends(k);
            mats.push(
                matrix_from(dims[dst], dims[src], m)
                    .map_err(|e| PyValueError::new_err(format!("matrix {}: {}", k + 1, e)))?,
            );
        }
        Ok(Self {
            inner: Rep::new(shape, dims, mats).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: io::parse_representation(text).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        io::representation_to_json(&self.inner)
    }

    /// Interval `L(i,j)` (chains) or walk `G(l,r)` (cycles).
    #[staticmethod]
    fn indecomposable(
        kind: &str,
        orientations: &str,
        label: &str,
        a: usize,
        b: usize,
    ) -> PyResult<Self> {
        let kind = parse_kind(kind)?;
        let t = match kind {
            QuiverKind::Chain => orientations.chars().count() + 1,
            QuiverKind::Cycle => orientations.chars().count(),
        };
        let shape = QuiverShape::parse(kind, t, orientations).map_err(to_py)?;
        let label = match label {
            "L" => IndecomposableLabel::L(a, b),
            "G" => IndecomposableLabel::G(a, b),
            other => {
                return Err(PyValueError::new_err(format!(
                    "label must be 'L' or 'G', got {other:?}"
                )))
            }
        };
        Ok(Self {
            inner: quiver::make_label(label, &shape).map_err(to_py)?,
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.shape().kind() {
            QuiverKind::Chain => "chain",
            QuiverKind::Cycle => "cycle",
        }
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.shape().t()
    }

    #[getter]
    fn orientations(&self) -> String {
        self.inner.shape().orientation_string()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner.dims().to_vec()
    }

    #[getter]
    fn matrices(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.inner.matrices().iter().map(rows_of).collect()
    }

    fn transpose(&self) -> Self {
        Self {
            inner: quiver::transpose_rep(&self.inner),
        }
    }

    fn direct_sum(&self, other: &PyRepresentation) -> PyResult<Self> {
        Ok(Self {
            inner: quiver::direct_sum(&self.inner, &other.inner).map_err(to_py)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Representation(kind={:?}, orientations={:?}, dims={:?})",
            self.kind(),
            self.orientations(),
            self.dims()
        )
    }
}

/// Result of decomposing a chain representation.
#[pyclass(name = "ChainDecomposition", module = "quivercanon", frozen)]
pub struct PyChainDecomposition {
    form: ChainCanonicalForm,
    trace: ChainTrace,
}

#[pymethods]
impl PyChainDecomposition {
    /// `[("L", i, j), ...]`, repeated by multiplicity.
    #[getter]
    fn labels(&self) -> Vec<(String, usize, usize)> {
        self.form.labels().into_iter().map(label_tuple).collect()
    }

    /// `{(i, j): multiplicity}`
    #[getter]
    fn multiplicities(&self) -> std::collections::BTreeMap<(usize, usize), usize> {
        self.form.multiplicities.clone()
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.trace.residual
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.trace.tau
    }

    /// Accumulated unitary at every vertex.
    #[getter]
    fn transforms(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.trace.transform.maps.iter().map(rows_of).collect()
    }

    fn __repr__(&self) -> String {
        format!("ChainDecomposition({} summands)", self.form.total())
    }
}

/// Result of splitting a cycle representation into walks and a regular part.
#[pyclass(name = "RegularizingDecomposition", module = "quivercanon", frozen)]
pub struct PyRegularizingDecomposition {
    inner: RegularizingDecomposition,
}

#[pymethods]
impl PyRegularizingDecomposition {
    /// `[("G", l, r), ...]`
    #[getter]
    fn labels(&self) -> Vec<(String, usize, usize)> {
        self.inner.labels().into_iter().map(label_tuple).collect()
    }

    /// Which of the two passes found each summand: 1 or 2.
    #[getter]
    fn passes(&self) -> Vec<u8> {
        self.inner
            .summands
            .iter()
            .map(|s| match s.pass {
                Pass::First => 1,
                Pass::Second => 2,
            })
            .collect()
    }

    #[getter]
    fn regular_dim(&self) -> usize {
        self.inner.regular_dim()
    }

    #[getter]
    fn regular_part(&self) -> PyRepresentation {
        PyRepresentation {
            inner: self.inner.regular_part.clone(),
        }
    }

    #[getter]
    fn eigenvalues(&self) -> Vec<Complex64> {
        self.inner.monodromy_eigenvalues.clone()
    }

    #[getter]
    fn monodromy(&self) -> Vec<Vec<Complex64>> {
        rows_of(&self.inner.monodromy)
    }

    #[getter]
    fn residual(&self) -> f64 {
        self.inner.residual
    }

    #[getter]
    fn tau(&self) -> f64 {
        self.inner.tau
    }

    #[getter]
    fn transforms(&self) -> Vec<Vec<Vec<Complex64>>> {
        self.inner.trace.maps.iter().map(rows_of).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "RegularizingDecomposition({} singular summands, regular dimension {})",
            self.inner.summands.len(),
            self.inner.regular_dim()
        )
    }
}

#[pyfunction]
#[pyo3(signature = (rep, tol_abs = 1e-12, tol_rel = 1e-8))]
fn canon(rep: &PyRepresentation, tol_abs: f64, tol_rel: f64) -> PyResult<PyChainDecomposition> {
    let (form, trace) = canon_chain(&rep.inner, &policy(tol_abs, tol_rel)?).map_err(to_py)?;
    Ok(PyChainDecomposition { form, trace })
}

#[pyfunction]
#[pyo3(signature = (rep, tol_abs = 1e-12, tol_rel = 1e-8))]
fn regularize(
    rep: &PyRepresentation,
    tol_abs: f64,
    tol_rel: f64,
) -> PyResult<PyRegularizingDecomposition> {
    Ok(PyRegularizingDecomposition {
        inner: regularize_rs(&rep.inner, &policy(tol_abs, tol_rel)?).map_err(to_py)?,
    })
}

/// Haar-distributed unitary, deterministic per seed.
#[pyfunction]
fn random_unitary(n: usize, seed: u64) -> Vec<Vec<Complex64>> {
    rows_of(&oracle::random_unitary(n, seed))
}

/// Planted representation from a JSON spec (the truth-file fields).
/// Returns the representation and the ground truth as JSON.
#[pyfunction]
fn plant(spec_json: &str) -> PyResult<(PyRepresentation, String)> {
    let spec: PlantSpec = serde_json::from_str(spec_json)
        .map_err(|e| PyValueError::new_err(format!("invalid spec: {e}")))?;
    let (rep, truth) = oracle::plant(&spec).map_err(to_py)?;
    let truth =
        serde_json::to_string(&truth).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((PyRepresentation { inner: rep }, truth))
}

#[pymodule]
fn quivercanon(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRepresentation>()?;
    m.add_class::<PyChainDecomposition>()?;
    m.add_class::<PyRegularizingDecomposition>()?;
    m.add_function(wrap_pyfunction!(canon, m)?)?;
    m.add_function(wrap_pyfunction!(regularize, m)?)?;
    m.add_function(wrap_pyfunction!(random_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(plant, m)?)?;
    Ok(())
}
