//! `fanogeom`: Fano decompositions, product-state checks and curvature of
//! product-state manifolds from the command line.
//!
//! Exit codes: 0 success / product, 1 not product / invalid state, 2 error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use fano_geom::fano::validate as validate_matrix;
use fano_geom::formats::{from_json, matrix_rows, DensityFile, FanoFile, PointFile, StateFile};
use fano_geom::geometry::{
    curvature, metric_closed_form, scalar_curvature_closed_form, scalar_curvature_two_qubit_exact,
    SymmetryResiduals,
};
use fano_geom::separability::{classify, is_product};
use fano_geom::state_factory::{named_state, random_density, random_qubit_product, sample_points, NamedState};
use fano_geom::{
    build_map, decompose, reconstruct, CaseKind, DensityMatrix, GeneratorSet, ManifoldCase, Partition,
    SampleMode,
};

#[derive(Parser)]
#[command(name = "fanogeom", version, about = "Fano-form states, product conditions and curvature of product-state manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the su(N) generators σ¹…σ^{N²−1} as complex matrices.
    Basis {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Density-matrix file to Fano-tensor file.
    Decompose {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Fano-tensor file to density-matrix file.
    Reconstruct {
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Hermiticity, trace and positivity report for a density-matrix file.
    Validate { input: PathBuf },
    /// Test the product condition for one partition, or for all of them.
    Check {
        /// Density-matrix or Fano-tensor file.
        input: PathBuf,
        /// Groups separated by `|`, members by `,`, e.g. `1,2|3`.
        #[arg(long, required_unless_present = "classify")]
        partition: Option<String>,
        /// Largest admissible residual entry.
        #[arg(long, default_value = "1e-10")]
        tol: f64,
        /// Report every set partition, coarsest first.
        #[arg(long, conflicts_with = "partition")]
        classify: bool,
    },
    /// Connection, Ricci tensor and scalar curvature at one point.
    Curvature {
        #[command(flatten)]
        at: PointArgs,
        /// Also emit the Christoffel symbols and the Riemann tensor.
        #[arg(long)]
        full: bool,
    },
    /// Induced metric at one point.
    Metric {
        #[command(flatten)]
        at: PointArgs,
    },
    /// Scalar curvature over seeded random points.
    Sample {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Box)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the named-state and random product-state corpus.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        output: PathBuf,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Args)]
struct CaseArgs {
    /// two-qubit-product | three-qubit-biproduct | three-qubit-product | general
    #[arg(long)]
    case: Option<String>,
    /// Levels per subsystem (general case).
    #[arg(long)]
    levels: Option<usize>,
    /// Number of subsystems (general case).
    #[arg(long)]
    qudits: Option<usize>,
    /// Partition (general case).
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    case: CaseArgs,
    /// Point file `{"case": …, "u": […]}`.
    #[arg(long, conflicts_with = "origin")]
    point: Option<PathBuf>,
    /// Evaluate at u = 0.
    #[arg(long)]
    origin: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Box,
    Physical,
}

impl From<ModeArg> for SampleMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Box => SampleMode::Box,
            ModeArg::Physical => SampleMode::Physical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

type Outcome = Result<u8, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Basis { levels, output } => cmd_basis(levels, output.as_deref()),
        Command::Decompose { input, output } => cmd_decompose(&input, output.as_deref()),
        Command::Reconstruct { input, output } => cmd_reconstruct(&input, output.as_deref()),
        Command::Validate { input } => cmd_validate(&input),
        Command::Check { input, partition, tol, classify } => cmd_check(&input, partition.as_deref(), tol, classify),
        Command::Curvature { at, full } => cmd_curvature(&at, full),
        Command::Metric { at } => cmd_metric(&at),
        Command::Sample { case, count, seed, mode, format, output } => {
            cmd_sample(&case, count, seed, mode.into(), format, output.as_deref())
        }
        Command::Fixtures { output, seed } => cmd_fixtures(&output, seed),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn cmd_basis(levels: usize, output: Option<&Path>) -> Outcome {
    #[derive(Serialize)]
    struct BasisFile {
        levels: usize,
        generators: Vec<Vec<Vec<[f64; 2]>>>,
    }
    let set = GeneratorSet::new(levels).map_err(|e| e.to_string())?;
    let generators = set
        .generators()
        .iter()
        .map(|g| DensityFile::from_matrix(levels, 1, g).matrix)
        .collect();
    emit(output, &to_json(&BasisFile { levels, generators }))?;
    Ok(0)
}

fn cmd_decompose(input: &Path, output: Option<&Path>) -> Outcome {
    let file: DensityFile = from_json(&read(input)?).map_err(|e| e.to_string())?;
    let matrix = file.to_matrix().map_err(|e| e.to_string())?;
    let report = validate_matrix(&matrix);
    if !report.is_state() {
        eprintln!("{}", serde_json::to_string(&report).expect("serializable"));
        return Err(format!("{}: not a density matrix", input.display()));
    }
    let rho = DensityMatrix::new(file.levels, file.qudits, matrix).map_err(|e| e.to_string())?;
    let d = decompose(&rho).map_err(|e| e.to_string())?;
    emit(output, &to_json(&FanoFile::from_tensor(&d)))?;
    Ok(0)
}

fn cmd_reconstruct(input: &Path, output: Option<&Path>) -> Outcome {
    let file: FanoFile = from_json(&read(input)?).map_err(|e| e.to_string())?;
    let rho = reconstruct(&file.to_tensor().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let report = rho.validate();
    if !report.is_state() {
        eprintln!("warning: reconstructed operator is not positive: {report}");
    }
    emit(output, &to_json(&DensityFile::from_density(&rho)))?;
    Ok(0)
}

fn cmd_validate(input: &Path) -> Outcome {
    let file: DensityFile = from_json(&read(input)?).map_err(|e| e.to_string())?;
    let report = validate_matrix(&file.to_matrix().map_err(|e| e.to_string())?);
    emit(None, &to_json(&report))?;
    Ok(if report.is_state() { 0 } else { 1 })
}

fn cmd_check(input: &Path, partition: Option<&str>, tol: f64, all: bool) -> Outcome {
    let file: StateFile = from_json(&read(input)?).map_err(|e| e.to_string())?;
    let d = file.to_tensor().map_err(|e| e.to_string())?;
    if all {
        let reports = classify(&d, tol).map_err(|e| e.to_string())?;
        emit(None, &to_json(&reports))?;
        let factorizes = reports.iter().any(|r| r.partition.len() >= 2 && r.is_product);
        return Ok(if factorizes { 0 } else { 1 });
    }
    let spec = partition.ok_or("either --partition or --classify is required")?;
    let p = Partition::parse_for(spec, d.qudits()).map_err(|e| e.to_string())?;
    let report = is_product(&d, &p, tol).map_err(|e| e.to_string())?;
    emit(None, &to_json(&report))?;
    Ok(if report.is_product { 0 } else { 1 })
}

fn resolve_case(args: &CaseArgs, fallback: Option<&str>) -> Result<ManifoldCase, String> {
    let name = args
        .case
        .as_deref()
        .or(fallback)
        .ok_or("--case is required")?;
    let kind: CaseKind = name.parse()?;
    match ManifoldCase::named(kind) {
        Some(case) => Ok(case),
        None => {
            let levels = args.levels.ok_or("general case needs --levels")?;
            let qudits = args.qudits.ok_or("general case needs --qudits")?;
            let partition = match &args.partition {
                Some(s) => Partition::parse_for(s, qudits).map_err(|e| e.to_string())?,
                None => Partition::totally_product(qudits).map_err(|e| e.to_string())?,
            };
            ManifoldCase::general(levels, qudits, partition).map_err(|e| e.to_string())
        }
    }
}

fn resolve_point(at: &PointArgs) -> Result<(ManifoldCase, Vec<f64>), String> {
    let file = match &at.point {
        Some(path) => Some(from_json::<PointFile>(&read(path)?).map_err(|e| e.to_string())?),
        None if at.origin => None,
        None => return Err("give --point FILE or --origin".into()),
    };
    let case = resolve_case(&at.case, file.as_ref().map(|f| f.case.as_str()))?;
    if let Some(f) = &file {
        if f.case != case.name() {
            return Err(format!("point file is for `{}`, not `{}`", f.case, case.name()));
        }
    }
    let u = file.map(|f| f.u).unwrap_or_else(|| vec![0.0; case.dim()]);
    if u.len() != case.dim() {
        return Err(format!("case `{}` has {} coordinates, point has {}", case.name(), case.dim(), u.len()));
    }
    Ok((case, u))
}

/// Reference closed form and, where it differs, the exact one.
fn closed_forms(case: &ManifoldCase, u: &[f64]) -> (Option<f64>, Option<f64>) {
    let reference = scalar_curvature_closed_form(case, u).ok();
    let exact = match case.kind() {
        CaseKind::TwoQubitProduct => scalar_curvature_two_qubit_exact(u).ok(),
        _ => reference,
    };
    (reference, exact)
}

fn cmd_curvature(at: &PointArgs, full: bool) -> Outcome {
    #[derive(Serialize)]
    struct Report {
        case: String,
        u: Vec<f64>,
        scalar: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        closed_form: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        closed_form_abs_diff: Option<f64>,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact_closed_form: Option<f64>,
        ricci: Vec<Vec<f64>>,
        metric_condition_number: f64,
        symmetry_residuals: SymmetryResiduals,
        #[serde(skip_serializing_if = "Option::is_none")]
        christoffel: Option<Vec<f64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        riemann: Option<Vec<f64>>,
    }
    let (case, u) = resolve_point(at)?;
    let map = build_map(&case);
    let r = curvature(&map, &u).map_err(|e| e.to_string())?;
    let (closed_form, exact_closed_form) = closed_forms(&case, &u);
    let report = Report {
        case: case.name().into(),
        scalar: r.scalar,
        closed_form,
        closed_form_abs_diff: closed_form.map(|c| (c - r.scalar).abs()),
        exact_closed_form: if exact_closed_form == closed_form { None } else { exact_closed_form },
        ricci: matrix_rows(&r.ricci),
        metric_condition_number: r.metric_condition_number,
        symmetry_residuals: r.symmetry_residuals(),
        christoffel: full.then(|| r.christoffel.iter().copied().collect()),
        riemann: full.then(|| r.riemann.iter().copied().collect()),
        u,
    };
    emit(None, &to_json(&report))?;
    Ok(0)
}

fn cmd_metric(at: &PointArgs) -> Outcome {
    #[derive(Serialize)]
    struct Report {
        case: String,
        u: Vec<f64>,
        g: Vec<Vec<f64>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        closed_form_max_abs_diff: Option<f64>,
        condition_number: f64,
        rank: usize,
        min_singular_value: f64,
    }
    let (case, u) = resolve_point(at)?;
    let map = build_map(&case);
    let metric = fano_geom::induced_metric(&map, &u).map_err(|e| e.to_string())?;
    let closed = metric_closed_form(&case, &u).ok();
    let immersion = map.verify_immersion(&u).map_err(|e| e.to_string())?;
    let report = Report {
        case: case.name().into(),
        g: matrix_rows(&metric.g),
        closed_form_max_abs_diff: closed.map(|c| (&metric.g - c).abs().max()),
        condition_number: metric.condition_number(),
        rank: immersion.rank,
        min_singular_value: immersion.min_singular_value,
        u,
    };
    emit(None, &to_json(&report))?;
    Ok(0)
}

#[derive(Serialize)]
struct SampleRow {
    index: usize,
    u: Vec<f64>,
    q: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_closed_form: Option<f64>,
    /// Squared-denominator form, where it differs from the reference one.
    #[serde(skip_serializing_if = "Option::is_none")]
    q_exact_closed_form: Option<f64>,
    condition_number: f64,
}

#[derive(Serialize)]
struct SampleSummary {
    count: usize,
    min_q: f64,
    max_q: f64,
    mean_q: f64,
    negative: usize,
    /// Points with `Q ≥ 0`.
    sign_violations: usize,
}

impl std::fmt::Display for SampleSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "count={} min_q={} max_q={} mean_q={} negative={} sign_violations={}",
            self.count, self.min_q, self.max_q, self.mean_q, self.negative, self.sign_violations
        )
    }
}

fn cmd_sample(case: &CaseArgs, count: usize, seed: u64, mode: SampleMode, format: Format, output: Option<&Path>) -> Outcome {
    #[derive(Serialize)]
    struct SampleFile<'a> {
        case: &'a str,
        seed: u64,
        mode: SampleMode,
        summary: &'a SampleSummary,
        points: &'a [SampleRow],
    }
    if count == 0 {
        return Err("--count must be at least 1".into());
    }
    let case = resolve_case(case, None)?;
    let map = build_map(&case);
    let points = sample_points(&case, mode, seed, count).map_err(|e| e.to_string())?;
    let rows: Vec<SampleRow> = points
        .into_par_iter()
        .enumerate()
        .map(|(index, u)| {
            let r = curvature(&map, &u).map_err(|e| e.to_string())?;
            let (reference, exact) = closed_forms(&case, &u);
            Ok(SampleRow {
                index,
                q: r.scalar,
                q_closed_form: reference,
                q_exact_closed_form: if exact == reference { None } else { exact },
                condition_number: r.metric_condition_number,
                u,
            })
        })
        .collect::<Result<_, String>>()?;

    let qs = rows.iter().map(|r| r.q);
    let summary = SampleSummary {
        count,
        min_q: qs.clone().fold(f64::INFINITY, f64::min),
        max_q: qs.clone().fold(f64::NEG_INFINITY, f64::max),
        mean_q: qs.clone().sum::<f64>() / count as f64,
        negative: qs.clone().filter(|&q| q < 0.0).count(),
        sign_violations: qs.filter(|&q| q >= 0.0 || q.is_nan()).count(),
    };

    let text = match format {
        Format::Json => to_json(&SampleFile { case: case.name(), seed, mode, summary: &summary, points: &rows }),
        Format::Csv => sample_csv(&case, &rows)?,
    };
    emit(output, &text)?;
    eprintln!("{} seed={seed} {summary}", case.name());
    Ok(0)
}

fn sample_csv(case: &ManifoldCase, rows: &[SampleRow]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["index".to_string()];
    header.extend((0..case.dim()).map(|i| format!("u{i}")));
    header.extend(["q", "q_closed_form", "q_exact_closed_form", "condition_number"].map(String::from));
    w.write_record(&header).map_err(|e| e.to_string())?;
    for r in rows {
        let mut rec = vec![r.index.to_string()];
        rec.extend(r.u.iter().map(|x| x.to_string()));
        rec.push(r.q.to_string());
        rec.push(r.q_closed_form.map(|x| x.to_string()).unwrap_or_default());
        rec.push(r.q_exact_closed_form.map(|x| x.to_string()).unwrap_or_default());
        rec.push(r.condition_number.to_string());
        w.write_record(&rec).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ManifestEntry {
    file: String,
    state: String,
    /// Generator seed and stream, when random.
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stream: Option<u64>,
    partition: String,
    expected_product: bool,
}

fn cmd_fixtures(dir: &Path, seed: u64) -> Outcome {
    fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut manifest = Vec::new();
    let mut write = |name: &str, rho: &DensityMatrix, entry: ManifestEntry| -> Result<(), String> {
        let file = format!("{name}.json");
        fs::write(dir.join(&file), to_json(&DensityFile::from_density(rho)))
            .map_err(|e| format!("{}: {e}", dir.join(&file).display()))?;
        manifest.push(ManifestEntry { file, ..entry });
        Ok(())
    };
    let fixed = |state: &str, partition: &str, expected_product: bool| ManifestEntry {
        file: String::new(),
        state: state.into(),
        seed: None,
        stream: None,
        partition: partition.into(),
        expected_product,
    };
    let err = |e: fano_geom::Error| e.to_string();

    write("bell", &named_state(&NamedState::BellPhiPlus).map_err(err)?, fixed("bell_phi_plus", "1|2", false))?;
    write("ghz3", &named_state(&NamedState::Ghz { qudits: 3 }).map_err(err)?, fixed("ghz(3)", "1|2|3", false))?;
    write("w3", &named_state(&NamedState::W { qudits: 3 }).map_err(err)?, fixed("w(3)", "1|2|3", false))?;
    for (k, p) in [0.0, 0.25, 0.5, 0.75, 1.0].into_iter().enumerate() {
        let rho = named_state(&NamedState::Werner { p }).map_err(err)?;
        write(&format!("werner_{k}"), &rho, fixed(&format!("werner({p})"), "1|2", p == 0.0))?;
    }
    let mixed = fano_geom::FanoTensor::identity(2, 2).map_err(err)?;
    write("maximally_mixed", &reconstruct(&mixed).map_err(err)?, fixed("maximally_mixed", "1|2", true))?;

    // Random fixtures use disjoint blocks of streams of `seed`.
    for k in 0..3u64 {
        let stream = 10 * k;
        write(
            &format!("product2_{k}"),
            &random_qubit_product(2, seed, stream).map_err(err)?,
            ManifestEntry { seed: Some(seed), stream: Some(stream), ..fixed("random_qubit_product", "1|2", true) },
        )?;
    }
    for k in 0..3u64 {
        let stream = 100 + 10 * k;
        write(
            &format!("product3_{k}"),
            &random_qubit_product(3, seed, stream).map_err(err)?,
            ManifestEntry { seed: Some(seed), stream: Some(stream), ..fixed("random_qubit_product", "1|2|3", true) },
        )?;
    }
    for k in 0..2u64 {
        let stream = 200 + 10 * k;
        // Ginibre pair from seed + stream, qubit from the stream itself.
        let pair = random_density(2, 2, seed.wrapping_add(stream)).map_err(err)?;
        let single = random_qubit_product(1, seed, stream).map_err(err)?;
        write(
            &format!("biproduct3_{k}"),
            &pair.tensor(&single).map_err(err)?,
            ManifestEntry { seed: Some(seed), stream: Some(stream), ..fixed("ginibre_pair_x_qubit", "1,2|3", true) },
        )?;
    }
    let count = manifest.len();
    fs::write(dir.join("manifest.json"), to_json(&manifest)).map_err(|e| e.to_string())?;
    eprintln!("wrote {count} fixtures to {}", dir.display());
    Ok(0)
}
