use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quiver_canon::io::{read_representation, representation_to_json, write_representation};
use quiver_canon::linalg::BlockKind;
use quiver_canon::oracle::{plant, random_unitary, PlantSpec, Scramble};
use quiver_canon::quiver::{
    apply_unitary, direct_sum, IndecomposableLabel, Isomorphism, QuiverKind, QuiverShape,
    Representation,
};
use quiver_canon::ComplexMatrix;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quiver-canon"));
    c.env_remove("QUIVER_CANON_TOL_ABS")
        .env_remove("QUIVER_CANON_TOL_REL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, a: &Representation) -> PathBuf {
    let p = dir.path().join(name);
    write_representation(&p, a).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn chain_identity(t: usize, n: usize) -> Representation {
    let shape = QuiverShape::parse(QuiverKind::Chain, t, &">".repeat(t - 1)).unwrap();
    Representation::new(shape, vec![n; t], vec![ComplexMatrix::identity(n); t - 1]).unwrap()
}

#[test]
fn canon_identity_file() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "id.json", &chain_identity(4, 3));
    let o = run(&["canon", s(&p), "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["summands"].as_array().unwrap().len(), 1);
    assert_eq!(v["summands"][0]["label"], serde_json::json!({"L": [1, 4]}));
    assert_eq!(v["summands"][0]["multiplicity"], 3);
    assert_eq!(v["tolerance"]["rel"], 1e-8);
    assert_eq!(v["dims_match"], true);
}

#[test]
fn canon_zero_file_text() {
    let dir = TempDir::new().unwrap();
    let shape = QuiverShape::parse(QuiverKind::Chain, 3, "><").unwrap();
    let p = write(
        &dir,
        "z.json",
        &Representation::zero(shape, vec![2, 1, 3]).unwrap(),
    );
    let o = run(&["canon", s(&p)]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for line in ["L(1,1) x2", "L(2,2) x1", "L(3,3) x3", "tau"] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn regularize_regular_and_pencil_files() {
    let dir = TempDir::new().unwrap();
    let shape = QuiverShape::parse(QuiverKind::Cycle, 2, "><").unwrap();
    let d = ComplexMatrix::diagonal(&[2.0.into(), num_complex::Complex64::new(1.0, 1.0)]);
    let reg = Representation::new(
        shape.clone(),
        vec![2, 2],
        vec![ComplexMatrix::identity(2), d],
    )
    .unwrap();
    let p = write(&dir, "reg.json", &reg);
    let o = run(&["regularize", s(&p)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("no singular summands") && out.contains("monodromy eigenvalues"),
        "{out}"
    );

    // (F_3, G_3) ⊕ (I_2, J_2(0)), scrambled
    let f = ComplexMatrix::block(BlockKind::F, 3).unwrap();
    let g = ComplexMatrix::block(BlockKind::G, 3).unwrap();
    let p1 = Representation::new(shape.clone(), vec![3, 2], vec![f, g]).unwrap();
    let j = ComplexMatrix::block(BlockKind::Jordan(0.0.into()), 2).unwrap();
    let p2 = Representation::new(shape, vec![2, 2], vec![ComplexMatrix::identity(2), j]).unwrap();
    let a = direct_sum(&p1, &p2).unwrap();
    let u = Isomorphism {
        maps: vec![random_unitary(5, 1), random_unitary(4, 2)],
    };
    let p = write(&dir, "pencil.json", &apply_unitary(&a, &u));
    let o = run(&["regularize", s(&p), "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summands"].as_array().unwrap().len(), 2);
    assert_eq!(v["regular_dim"], 0);
}

#[test]
fn bit_exact_round_trip() {
    let spec = PlantSpec {
        kind: QuiverKind::Cycle,
        t: 3,
        orientations: "<>>".into(),
        labels: vec![IndecomposableLabel::G(2, 6)],
        regular_eigs: vec![num_complex::Complex64::new(1.0, -1.0)],
        seed: 9,
        scramble: Scramble::Unitary,
        noise: 0.0,
    };
    let (a, _) = plant(&spec).unwrap();
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "a.json", &a);
    let back = read_representation(&p).unwrap();
    for (x, y) in back.matrices().iter().zip(a.matrices()) {
        assert!(x
            .as_slice()
            .iter()
            .zip(y.as_slice())
            .all(|(p, q)| p.re.to_bits() == q.re.to_bits() && p.im.to_bits() == q.im.to_bits()));
    }
    assert_eq!(representation_to_json(&back), representation_to_json(&a));
}

#[test]
fn gen_then_verify() {
    let dir = TempDir::new().unwrap();
    let spec_path = dir.path().join("spec.json");
    std::fs::write(
        &spec_path,
        r#"{"kind":"cycle","t":3,"orientations":">>>","labels":[{"G":[1,7]}],"seed":4}"#,
    )
    .unwrap();
    let out = dir.path().join("nil.json");
    let o = run(&["gen", "--spec", s(&spec_path), "--output", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let truth = dir.path().join("nil.truth.json");
    assert!(truth.exists());

    let o = run(&["verify", s(&out), s(&truth), "--json"]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    for c in v["checks"].as_array().unwrap() {
        assert!(c.get("measured").is_some() && c.get("threshold").is_some());
    }

    for (kind, seed) in [("cycle", "3"), ("chain", "8")] {
        let out = dir.path().join(format!("{kind}.json"));
        assert_eq!(
            code(&run(&[
                "gen",
                "--sample",
                kind,
                "--seed",
                seed,
                "-o",
                s(&out)
            ])),
            0
        );
        let o = run(&[
            "verify",
            s(&out),
            s(&dir.path().join(format!("{kind}.truth.json"))),
        ]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
    }
}

#[test]
fn noisy_input_verifies_at_defaults() {
    let dir = TempDir::new().unwrap();
    for seed in 0..10 {
        let out = dir.path().join(format!("n{seed}.json"));
        let seed = seed.to_string();
        assert_eq!(
            code(&run(&[
                "gen",
                "--sample",
                "cycle",
                "--seed",
                &seed,
                "--noise",
                "1e-10",
                "-o",
                s(&out)
            ])),
            0
        );
        let truth = out.with_file_name(format!("n{seed}.truth.json"));
        let o = run(&["verify", s(&out), s(&truth)]);
        assert_eq!(code(&o), 0, "seed {seed}: {}", stdout(&o));
    }
}

#[test]
fn tampered_truth_exits_one() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("a.json");
    assert_eq!(
        code(&run(&[
            "gen",
            "--sample",
            "cycle",
            "--seed",
            "5",
            "-o",
            s(&out)
        ])),
        0
    );
    let truth = dir.path().join("a.truth.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&truth).unwrap()).unwrap();
    let labels = v["labels"].as_array_mut().unwrap();
    if labels.is_empty() {
        labels.push(serde_json::json!({"G": [1, 1]}));
    } else {
        labels.pop();
    }
    std::fs::write(&truth, v.to_string()).unwrap();
    let o = run(&["verify", s(&out), s(&truth)]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        "{\n  \"version\": 1,\n  \"kind\": \"chain\"\n  \"t\": 2\n}",
    )
    .unwrap();
    let o = run(&["canon", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));

    let shape = r#"{"version":1,"kind":"chain","t":2,"orientations":">","dims":[1,2],"matrices":[{"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}]}"#;
    std::fs::write(&bad, shape).unwrap();
    let o = run(&["canon", s(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("matrices[0]"), "{}", stderr(&o));

    assert_eq!(code(&run(&["canon", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);

    // wrong kind for the command
    let p = write(&dir, "id.json", &chain_identity(2, 1));
    assert_eq!(code(&run(&["regularize", s(&p)])), 2);
    assert_eq!(code(&run(&["canon", s(&p), "--tol-rel", "-1"])), 2);

    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{"kind":"cycle","t":2,"orientations":">>","labels":[],"regular_eigs":[[0,0]],"seed":1}"#,
    )
    .unwrap();
    assert_eq!(
        code(&run(&[
            "gen",
            "--spec",
            s(&spec),
            "-o",
            s(&dir.path().join("x.json"))
        ])),
        2
    );
}

#[test]
fn numeric_failure_exits_three() {
    // Finite entries whose norms overflow: the SVD cannot converge.
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("huge.json");
    std::fs::write(
        &p,
        r#"{"version":1,"kind":"chain","t":2,"orientations":">","dims":[2,2],
            "matrices":[{"rows":2,"cols":2,"data":[[1e308,0],[1e308,0],[-1e308,1e308],[1e308,0]]}]}"#,
    )
    .unwrap();
    let o = run(&["canon", s(&p)]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    assert!(stderr(&o).contains("did not converge"));
}

#[test]
fn environment_sets_default_tolerance() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "id.json", &chain_identity(2, 1));
    let o = bin()
        .args(["canon", s(&p), "--json"])
        .env("QUIVER_CANON_TOL_REL", "1e-6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tolerance"]["rel"], 1e-6);
    let o = bin()
        .args(["canon", s(&p), "--json", "--tol-rel", "1e-4"])
        .env("QUIVER_CANON_TOL_REL", "1e-6")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tolerance"]["rel"], 1e-4);
}

#[test]
fn output_flag_writes_report() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "id.json", &chain_identity(3, 2));
    let report = dir.path().join("report.json");
    assert_eq!(
        code(&run(&["canon", s(&p), "--json", "--output", s(&report)])),
        0
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(v["command"], "canon");
}
