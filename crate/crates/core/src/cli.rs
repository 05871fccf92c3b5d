//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input or argument error,
//! 3 numerical or internal error.
//!
//! Tolerances come from `--tol-abs`/`--tol-rel`, then the environment
//! variables `QUIVER_CANON_TOL_ABS`/`QUIVER_CANON_TOL_REL`, then the defaults
//! (1e-12 absolute, 1e-8 relative). Every report echoes the values used.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::chain::{canon_chain, ChainTrace};
use crate::cycle::{regularize, Pass, RegularizingDecomposition};
use crate::error::{Error, Result};
use crate::io;
use crate::linalg::TolerancePolicy;
use crate::oracle::{
    self, plant, sample_chain_spec, sample_cycle_spec, Outcome, VerificationReport,
};
use crate::quiver::{IndecomposableLabel, QuiverKind, Representation};

/// Version of the JSON report schema.
pub const REPORT_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "quiver-canon",
    version,
    about = "Canonical forms of chain and cycle quiver representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose a chain representation into intervals L(i,j).
    Canon(RunArgs),
    /// Split a cycle representation into walks G(l,r) and a regular part.
    Regularize(RunArgs),
    /// Write a planted representation and its ground-truth sidecar.
    Gen(GenArgs),
    /// Decompose a planted representation and compare with its ground truth.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TolArgs {
    /// Absolute floor of the rank threshold.
    #[arg(long, env = "QUIVER_CANON_TOL_ABS", default_value_t = 1e-12)]
    pub tol_abs: f64,
    /// Relative factor of the rank threshold, applied to the largest singular value.
    #[arg(long, env = "QUIVER_CANON_TOL_REL", default_value_t = 1e-8)]
    pub tol_rel: f64,
}

impl TolArgs {
    fn policy(&self) -> Result<TolerancePolicy> {
        TolerancePolicy::new(self.tol_abs, self.tol_rel)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Machine-readable output.
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    /// Human-readable output (the default).
    #[arg(long)]
    pub text: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            Format::Text
        }
    }
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Representation file (JSON).
    pub input: PathBuf,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    Cycle,
    Chain,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Plant file (JSON, same fields as a truth file).
    #[arg(long, conflicts_with = "sample", required_unless_present = "sample")]
    pub spec: Option<PathBuf>,
    /// Draw a random spec instead of reading one.
    #[arg(long, value_enum)]
    pub sample: Option<SampleKind>,
    /// Seed; overrides the one in the plant file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative entrywise noise; overrides the plant file.
    #[arg(long)]
    pub noise: Option<f64>,
    /// Representation file to write; the truth goes to `<stem>.truth.json`.
    #[arg(long, short)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub input: PathBuf,
    pub truth: PathBuf,
    #[command(flatten)]
    pub tol: TolArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Serialize)]
struct ToleranceEcho {
    abs: f64,
    rel: f64,
    /// Threshold actually used: `max(abs, rel · scale)`.
    tau: f64,
    scale: f64,
}

#[derive(Serialize)]
struct LabelCount {
    label: IndecomposableLabel,
    multiplicity: usize,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct CanonReport {
    schema_version: u32,
    command: &'static str,
    tolerance: ToleranceEcho,
    summands: Vec<LabelCount>,
    input_dims: Vec<usize>,
    recovered_dims: Vec<usize>,
    dims_match: bool,
    residual: f64,
    /// Threshold used at each staircase step (all equal to `tolerance.tau`).
    step_taus: Vec<f64>,
}

#[derive(Serialize)]
struct SummandEntry {
    label: IndecomposableLabel,
    dims: Vec<usize>,
    pass: Pass,
}

#[derive(Serialize)]
struct PassEntry {
    pass: Pass,
    start: usize,
    end: usize,
    steps: usize,
    split_residual: f64,
    chain_residual: f64,
}

#[derive(Serialize)]
struct RegularizeReport {
    schema_version: u32,
    command: &'static str,
    tolerance: ToleranceEcho,
    summands: Vec<SummandEntry>,
    regular_dim: usize,
    monodromy_eigenvalues: Vec<Complex64>,
    input_dims: Vec<usize>,
    recovered_dims: Vec<usize>,
    dims_match: bool,
    residual: f64,
    passes: Vec<PassEntry>,
}

#[derive(Serialize)]
struct VerifyReport {
    schema_version: u32,
    command: &'static str,
    tolerance: ToleranceEcho,
    #[serde(flatten)]
    report: VerificationReport,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code. Reports go to stdout or `--output`; diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_INPUT,
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_argument() {
        EXIT_INPUT
    } else {
        EXIT_NUMERIC
    }
}

fn dispatch(cmd: &Command) -> Result<i32> {
    match cmd {
        Command::Canon(a) => cmd_canon(a),
        Command::Regularize(a) => cmd_regularize(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn emit(
    out: &OutputArgs,
    json: impl FnOnce() -> String,
    text: impl FnOnce() -> String,
) -> Result<()> {
    let body = match out.format() {
        Format::Json => json(),
        Format::Text => text(),
    };
    match &out.output {
        Some(path) => io::write_text(path, &body),
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(body.as_bytes());
            let _ = stdout.flush();
            Ok(())
        }
    }
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn load(path: &Path, kind: QuiverKind) -> Result<Representation> {
    let a = io::read_representation(path)?;
    if a.shape().kind() != kind {
        let want = match kind {
            QuiverKind::Chain => "chain",
            QuiverKind::Cycle => "cycle",
        };
        return Err(Error::argument(format!(
            "{}: field `kind`: this command needs a {want} representation",
            path.display()
        )));
    }
    Ok(a)
}

fn fmt_complex(z: Complex64) -> String {
    if z.im >= 0.0 {
        format!("{:.10}+{:.10}i", z.re, z.im)
    } else {
        format!("{:.10}-{:.10}i", z.re, -z.im)
    }
}

fn canon_report(
    a: &Representation,
    tol: &TolerancePolicy,
    form: &crate::chain::ChainCanonicalForm,
    trace: &ChainTrace,
) -> CanonReport {
    let t = a.shape().t();
    let recovered = form.dims(t);
    CanonReport {
        schema_version: REPORT_VERSION,
        command: "canon",
        tolerance: ToleranceEcho {
            abs: tol.abs_floor,
            rel: tol.rel_factor,
            tau: trace.tau,
            scale: trace.scale,
        },
        summands: form
            .multiplicities
            .iter()
            .map(|(&(i, j), &m)| LabelCount {
                label: IndecomposableLabel::L(i, j),
                multiplicity: m,
                dims: (1..=t).map(|v| usize::from(i <= v && v <= j)).collect(),
            })
            .collect(),
        dims_match: recovered == a.dims(),
        input_dims: a.dims().to_vec(),
        recovered_dims: recovered,
        residual: trace.residual,
        step_taus: trace.steps.iter().map(|s| s.tau).collect(),
    }
}

fn cmd_canon(args: &RunArgs) -> Result<i32> {
    let tol = args.tol.policy()?;
    let a = load(&args.input, QuiverKind::Chain)?;
    let (form, trace) = canon_chain(&a, &tol)?;
    let report = canon_report(&a, &tol, &form, &trace);
    emit(&args.out, || to_json(&report), || canon_text(&report))?;
    Ok(EXIT_OK)
}

fn canon_text(r: &CanonReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "chain decomposition ({} summands)",
        r.summands.iter().map(|c| c.multiplicity).sum::<usize>()
    );
    for c in &r.summands {
        let _ = writeln!(s, "  {} x{}", c.label, c.multiplicity);
    }
    let _ = writeln!(
        s,
        "dimensions: input {:?}, recovered {:?} ({})",
        r.input_dims,
        r.recovered_dims,
        if r.dims_match { "match" } else { "MISMATCH" }
    );
    let _ = writeln!(s, "residual: {:e}", r.residual);
    let _ = writeln!(
        s,
        "tolerance: abs {:e}, rel {:e}, tau {:e} (scale {:e})",
        r.tolerance.abs, r.tolerance.rel, r.tolerance.tau, r.tolerance.scale
    );
    s
}

fn regularize_report(
    a: &Representation,
    tol: &TolerancePolicy,
    dec: &RegularizingDecomposition,
) -> Result<RegularizeReport> {
    let shape = a.shape();
    let mut recovered = vec![dec.regular_dim(); shape.t()];
    let mut summands = Vec::with_capacity(dec.summands.len());
    for s in &dec.summands {
        let dims = s.label.dims(shape)?;
        for (x, y) in recovered.iter_mut().zip(&dims) {
            *x += y;
        }
        summands.push(SummandEntry {
            label: s.label,
            dims,
            pass: s.pass,
        });
    }
    Ok(RegularizeReport {
        schema_version: REPORT_VERSION,
        command: "regularize",
        tolerance: ToleranceEcho {
            abs: tol.abs_floor,
            rel: tol.rel_factor,
            tau: dec.tau,
            scale: dec.scale,
        },
        summands,
        regular_dim: dec.regular_dim(),
        monodromy_eigenvalues: dec.monodromy_eigenvalues.clone(),
        dims_match: recovered == a.dims(),
        input_dims: a.dims().to_vec(),
        recovered_dims: recovered,
        residual: dec.residual,
        passes: [Pass::First, Pass::Second]
            .into_iter()
            .zip(&dec.passes)
            .map(|(pass, p)| PassEntry {
                pass,
                start: p.l,
                end: p.n,
                steps: p.steps,
                split_residual: p.split_residual,
                chain_residual: p.chain_residual,
            })
            .collect(),
    })
}

fn cmd_regularize(args: &RunArgs) -> Result<i32> {
    let tol = args.tol.policy()?;
    let a = load(&args.input, QuiverKind::Cycle)?;
    let dec = regularize(&a, &tol)?;
    let report = regularize_report(&a, &tol, &dec)?;
    emit(&args.out, || to_json(&report), || regularize_text(&report))?;
    Ok(EXIT_OK)
}

fn regularize_text(r: &RegularizeReport) -> String {
    let mut s = String::new();
    if r.summands.is_empty() {
        let _ = writeln!(s, "no singular summands");
    } else {
        let _ = writeln!(s, "singular summands ({}):", r.summands.len());
        for e in &r.summands {
            let pass = match e.pass {
                Pass::First => "first pass",
                Pass::Second => "second pass",
            };
            let _ = writeln!(s, "  {} dims {:?} ({pass})", e.label, e.dims);
        }
    }
    let _ = writeln!(s, "regular part: dimension {}", r.regular_dim);
    if !r.monodromy_eigenvalues.is_empty() {
        let eigs: Vec<String> = r
            .monodromy_eigenvalues
            .iter()
            .map(|&z| fmt_complex(z))
            .collect();
        let _ = writeln!(s, "monodromy eigenvalues: {}", eigs.join(", "));
    }
    let _ = writeln!(
        s,
        "dimensions: input {:?}, recovered {:?} ({})",
        r.input_dims,
        r.recovered_dims,
        if r.dims_match { "match" } else { "MISMATCH" }
    );
    let _ = writeln!(s, "residual: {:e}", r.residual);
    for p in &r.passes {
        let _ = writeln!(
            s,
            "{:?} pass: walk {}..{}, {} steps, split residual {:e}, chain residual {:e}",
            p.pass, p.start, p.end, p.steps, p.split_residual, p.chain_residual
        );
    }
    let _ = writeln!(
        s,
        "tolerance: abs {:e}, rel {:e}, tau {:e} (scale {:e})",
        r.tolerance.abs, r.tolerance.rel, r.tolerance.tau, r.tolerance.scale
    );
    s
}

fn cmd_gen(args: &GenArgs) -> Result<i32> {
    let mut spec = match (&args.spec, args.sample) {
        (Some(path), _) => io::read_spec(path)?,
        (None, Some(SampleKind::Cycle)) => sample_cycle_spec(args.seed.unwrap_or(0)),
        (None, Some(SampleKind::Chain)) => sample_chain_spec(args.seed.unwrap_or(0)),
        (None, None) => return Err(Error::argument("give --spec or --sample")),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(noise) = args.noise {
        spec.noise = noise;
    }
    let (a, truth) = plant(&spec)?;
    io::write_representation(&args.output, &a)?;
    let truth_path = io::truth_path(&args.output);
    io::write_truth(&truth_path, &truth)?;
    println!(
        "wrote {} and {}",
        args.output.display(),
        truth_path.display()
    );
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let tol = args.tol.policy()?;
    let a = io::read_representation(&args.input)?;
    let truth = io::read_truth(&args.truth)?;
    let (report, tau, scale) = match a.shape().kind() {
        QuiverKind::Chain => {
            let (form, trace) = canon_chain(&a, &tol)?;
            (
                oracle::verify(&a, Outcome::Chain(&form, &trace), &truth)?,
                trace.tau,
                trace.scale,
            )
        }
        QuiverKind::Cycle => {
            let dec = regularize(&a, &tol)?;
            (
                oracle::verify(&a, Outcome::Cycle(&dec), &truth)?,
                dec.tau,
                dec.scale,
            )
        }
    };
    let passed = report.passed;
    let full = VerifyReport {
        schema_version: REPORT_VERSION,
        command: "verify",
        tolerance: ToleranceEcho {
            abs: tol.abs_floor,
            rel: tol.rel_factor,
            tau,
            scale,
        },
        report,
    };
    emit(&args.out, || to_json(&full), || verify_text(&full))?;
    Ok(if passed { EXIT_OK } else { EXIT_MISMATCH })
}

fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let v = &r.report;
    let _ = writeln!(
        s,
        "verification {}",
        if v.passed { "PASSED" } else { "FAILED" }
    );
    for c in &v.checks {
        let _ = writeln!(
            s,
            "  [{}] {}: measured {:e}, threshold {:e}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.measured,
            c.threshold
        );
    }
    if !v.labels_match {
        let show = |l: &[IndecomposableLabel]| {
            l.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "  expected:  {}", show(&v.expected_labels));
        let _ = writeln!(s, "  recovered: {}", show(&v.recovered_labels));
    }
    let _ = writeln!(
        s,
        "tolerance: abs {:e}, rel {:e}, tau {:e} (scale {:e})",
        r.tolerance.abs, r.tolerance.rel, r.tolerance.tau, r.tolerance.scale
    );
    s
}
