//! JSON file formats: representations, ground-truth sidecars, and the
//! version tag shared by every report.
//!
//! A representation file looks like
//!
//! ```json
//! {"version": 1, "kind": "cycle", "t": 2, "orientations": "><",
//!  "dims": [1, 1],
//!  "matrices": [{"rows": 1, "cols": 1, "data": [[1.0, 0.0]]},
//!               {"rows": 1, "cols": 1, "data": [[2.0, 0.5]]}]}
//! ```
//!
//! `">"` marks a clockwise arrow `k → k+1` and `"<"` the reverse. Matrix data
//! is row-major, one `[re, im]` pair per entry. Floats are written with
//! shortest round-trip formatting, so a write/read cycle is bit-exact.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::oracle::PlantSpec;
use crate::quiver::{QuiverKind, QuiverShape, Representation};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let data = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub version: u32,
    pub kind: QuiverKind,
    pub t: usize,
    pub orientations: String,
    pub dims: Vec<usize>,
    pub matrices: Vec<MatrixFile>,
}

impl RepresentationFile {
    pub fn from_representation(a: &Representation) -> Self {
        Self {
            version: FORMAT_VERSION,
            kind: a.shape().kind(),
            t: a.shape().t(),
            orientations: a.shape().orientation_string(),
            dims: a.dims().to_vec(),
            matrices: a.matrices().iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    /// Checks every field and names the first offending one.
    pub fn to_representation(&self) -> Result<Representation> {
        check_version(self.version)?;
        let shape = QuiverShape::parse(self.kind, self.t, &self.orientations)
            .map_err(|e| field_error("orientations", e))?;
        if self.dims.len() != shape.t() {
            return Err(Error::argument(format!(
                "field `dims`: expected {} entries, found {}",
                shape.t(),
                self.dims.len()
            )));
        }
        if self.matrices.len() != shape.num_arrows() {
            return Err(Error::argument(format!(
                "field `matrices`: expected {} matrices for {} arrows, found {}",
                shape.num_arrows(),
                shape.num_arrows(),
                self.matrices.len()
            )));
        }
        let mut matrices = Vec::with_capacity(self.matrices.len());
        for (k, m) in self.matrices.iter().enumerate() {
            let (src, dst) = shape.ends(k);
            let want = (self.dims[dst], self.dims[src]);
            if (m.rows, m.cols) != want {
                return Err(Error::argument(format!(
                    "field `matrices[{k}]`: arrow {} maps vertex {} to vertex {}, so it must be {}x{}, found {}x{}",
                    k + 1,
                    src + 1,
                    dst + 1,
                    want.0,
                    want.1,
                    m.rows,
                    m.cols
                )));
            }
            if m.data.len() != m.rows * m.cols {
                return Err(Error::argument(format!(
                    "field `matrices[{k}].data`: expected {} entries, found {}",
                    m.rows * m.cols,
                    m.data.len()
                )));
            }
            matrices.push(
                m.to_matrix()
                    .map_err(|e| field_error(&format!("matrices[{k}]"), e))?,
            );
        }
        Representation::new(shape, self.dims.clone(), matrices)
    }
}

/// Ground truth written next to a generated representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruthFile {
    pub version: u32,
    #[serde(flatten)]
    pub spec: PlantSpec,
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return Err(Error::argument(format!(
            "field `version`: unsupported version {v} (this build reads {FORMAT_VERSION})"
        )));
    }
    Ok(())
}

fn field_error(field: &str, e: Error) -> Error {
    match e.root() {
        Error::Argument(msg) => Error::argument(format!("field `{field}`: {msg}")),
        _ => e,
    }
}

fn parse_error(path: &Path, e: serde_json::Error) -> Error {
    Error::argument(format!(
        "{}: line {}, column {}: {e}",
        path.display(),
        e.line(),
        e.column()
    ))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::argument(format!("cannot read {}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)
        .map_err(|e| Error::argument(format!("cannot write {}: {e}", path.display())))
}

pub fn parse_representation(text: &str) -> Result<Representation> {
    let file: RepresentationFile =
        serde_json::from_str(text).map_err(|e| parse_error(Path::new("<input>"), e))?;
    file.to_representation()
}

pub fn read_representation(path: &Path) -> Result<Representation> {
    let file: RepresentationFile =
        serde_json::from_str(&read_text(path)?).map_err(|e| parse_error(path, e))?;
    file.to_representation()
        .map_err(|e| Error::argument(format!("{}: {}", path.display(), strip_prefix(&e))))
}

pub fn representation_to_json(a: &Representation) -> String {
    serde_json::to_string_pretty(&RepresentationFile::from_representation(a))
        .expect("plain data serializes")
}

pub fn write_representation(path: &Path, a: &Representation) -> Result<()> {
    write_text(path, &representation_to_json(a))
}

pub fn read_truth(path: &Path) -> Result<PlantSpec> {
    let file: TruthFile =
        serde_json::from_str(&read_text(path)?).map_err(|e| parse_error(path, e))?;
    check_version(file.version)
        .map_err(|e| Error::argument(format!("{}: {}", path.display(), strip_prefix(&e))))?;
    file.spec
        .validate()
        .map_err(|e| Error::argument(format!("{}: {}", path.display(), strip_prefix(&e))))?;
    Ok(file.spec)
}

pub fn write_truth(path: &Path, spec: &PlantSpec) -> Result<()> {
    let file = TruthFile {
        version: FORMAT_VERSION,
        spec: spec.clone(),
    };
    write_text(
        path,
        &serde_json::to_string_pretty(&file).expect("plain data serializes"),
    )
}

/// A plant spec file: the same fields as a truth file, with `version` optional.
pub fn read_spec(path: &Path) -> Result<PlantSpec> {
    #[derive(Deserialize)]
    struct SpecFile {
        #[serde(default = "default_version")]
        version: u32,
        #[serde(flatten)]
        spec: PlantSpec,
    }
    fn default_version() -> u32 {
        FORMAT_VERSION
    }
    let file: SpecFile =
        serde_json::from_str(&read_text(path)?).map_err(|e| parse_error(path, e))?;
    check_version(file.version)?;
    Ok(file.spec)
}

/// `out.json` → `out.truth.json`.
pub fn truth_path(output: &Path) -> PathBuf {
    let stem = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    output.with_file_name(format!("{stem}.truth.json"))
}

fn strip_prefix(e: &Error) -> String {
    match e.root() {
        Error::Argument(msg) => msg.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{make_g, Orientation};

    fn sample() -> Representation {
        let shape = QuiverShape::cycle(vec![Orientation::Clockwise, Orientation::Counterclockwise])
            .unwrap();
        let mut a = make_g(1, 4, &shape).unwrap();
        let m = ComplexMatrix::from_fn(a.dims()[1], a.dims()[0], |i, j| {
            Complex64::new(0.1 + i as f64 / 3.0, -(j as f64).sqrt() * 1e-17)
        });
        let mut mats = a.matrices().to_vec();
        mats[0] = m;
        a = Representation::new(shape, a.dims().to_vec(), mats).unwrap();
        a
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let a = sample();
        let back = parse_representation(&representation_to_json(&a)).unwrap();
        assert_eq!(back, a);
        for (x, y) in back.matrices().iter().zip(a.matrices()) {
            for (p, q) in x.as_slice().iter().zip(y.as_slice()) {
                assert_eq!(p.re.to_bits(), q.re.to_bits());
                assert_eq!(p.im.to_bits(), q.im.to_bits());
            }
        }
    }

    #[test]
    fn empty_shapes_stay_distinct() {
        let shape = QuiverShape::chain(vec![Orientation::Clockwise]);
        let a = Representation::zero(shape, vec![3, 0]).unwrap();
        let json = representation_to_json(&a);
        assert!(json.contains("\"rows\": 0"));
        assert_eq!(
            parse_representation(&json).unwrap().matrix(0).shape(),
            (0, 3)
        );
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad_shape = r#"{"version":1,"kind":"chain","t":2,"orientations":">","dims":[1,2],
            "matrices":[{"rows":1,"cols":1,"data":[[1,0]]}]}"#;
        let msg = parse_representation(bad_shape).unwrap_err().to_string();
        assert!(msg.contains("matrices[0]") && msg.contains("2x1"), "{msg}");

        let bad_orient =
            r#"{"version":1,"kind":"cycle","t":2,"orientations":">","dims":[1,1],"matrices":[]}"#;
        assert!(parse_representation(bad_orient)
            .unwrap_err()
            .to_string()
            .contains("orientations"));

        let syntax = "{\"version\": 1,\n \"kind\": \"cycle\",\n oops}";
        let msg = parse_representation(syntax).unwrap_err().to_string();
        assert!(msg.contains("line 3"), "{msg}");

        let version =
            r#"{"version":7,"kind":"chain","t":1,"orientations":"","dims":[0],"matrices":[]}"#;
        assert!(parse_representation(version)
            .unwrap_err()
            .to_string()
            .contains("version"));
    }

    #[test]
    fn truth_sidecar_name() {
        assert_eq!(
            truth_path(Path::new("/tmp/x/rep.json")),
            Path::new("/tmp/x/rep.truth.json")
        );
    }
}
