//! `omfam` command-line interface.
//!
//! Subcommands: `circuits`, `supports`, `member`, `generate`, `dual`.
//! Exit codes: 0 success (and "member"), 1 "not a member", 2 malformed
//! input or parameters, 3 input requiring a non-rational value in exact
//! mode, 4 brute-force guard exceeded, 5 dimension mismatch.

pub mod docs;
pub mod files;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use omfam_core::expfam::{
    in_closure_with_tol, Distribution, ExponentialFamily, DEFAULT_FLOAT_TOLERANCE,
};
use omfam_core::linalg::Matrix;
use omfam_core::matroid::{circuit_count_bound, cocircuits, enumerate_circuits, signed_circuits};
use omfam_core::models;
use omfam_core::rational::parse_rational;
use omfam_core::supports::{
    enumerate_supports, enumerate_supports_brute_force, f_vector, neighborliness, s_vector,
};

use docs::{CircuitsDoc, DualDoc, MemberDoc, SupportsDoc};
use files::{FileError, FileErrorKind};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_MEMBER: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NOT_EXACT: u8 = 3;
pub const EXIT_GUARD: u8 = 4;
pub const EXIT_DIMENSION: u8 = 5;

/// Largest ground set accepted by `--brute-force-check` (a 2^m scan).
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "omfam",
    version,
    about = "Oriented matroids, implicit equations and support sets of discrete exponential families"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

#[derive(Debug, Args)]
pub struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Circuit vectors, signed circuits and the count bound of a matrix.
    Circuits {
        matrix: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// All possible support sets; optionally f/s-vectors and a brute-force
    /// cross-check.
    Supports {
        matrix: PathBuf,
        /// Also report the f-vector, s-vector and neighborliness.
        #[arg(long)]
        fvector: bool,
        /// Cross-validate against a scan of all 2^m subsets (m <= 20).
        #[arg(long = "brute-force-check")]
        brute_force_check: bool,
        /// Query one subset (comma-separated 1-based indices, e.g. "1,3,4")
        /// for faciality, with an exact certificate or Farkas witness.
        #[arg(long)]
        subset: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Closure membership of a distribution; exits 0 when a member, 1
    /// otherwise.
    Member {
        matrix: PathBuf,
        distribution: PathBuf,
        /// Reference measure file (single line of positive entries);
        /// defaults to the uniform measure.
        #[arg(long)]
        q: Option<PathBuf>,
        /// Arithmetic mode: exact rationals or floats with tolerance.
        #[arg(long, value_enum, default_value_t)]
        mode: Mode,
        /// Relative tolerance on equation residuals in float mode.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Emit a model matrix in the matrix file format.
    Generate {
        #[command(subcommand)]
        model: GenerateModel,
        /// Write the matrix to a file instead of stdout.
        #[arg(long, global = true)]
        output: Option<PathBuf>,
    },
    /// The Gale dual (orthogonal complement) and the cocircuits.
    Dual {
        matrix: PathBuf,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenerateModel {
    /// The four-state rank-2 family with rows (1,1,1,1) and (-alpha,1,0,0).
    Example1 {
        /// Any rational except 0 and 1, e.g. `2` or `1/2`.
        #[arg(long)]
        alpha: String,
    },
    /// Binary no-n-way interaction (parity) model on {0,1}^n.
    Parity {
        #[arg(long)]
        n: usize,
    },
    /// Cyclic polytope C(d, n) on the moment curve.
    Cyclic {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated strictly increasing rational curve parameters;
        /// defaults to 1..n.
        #[arg(long)]
        t: Option<String>,
    },
    /// The 3 x m matrix with columns (1, i, i^2).
    Moment {
        #[arg(long)]
        m: usize,
    },
}

/// Captured result of a CLI run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            code,
        }
    }
}

fn file_failure(path: &Path, err: FileError) -> Failure {
    let code = match err.kind {
        FileErrorKind::Syntax => EXIT_USAGE,
        FileErrorKind::NonFinite => EXIT_NOT_EXACT,
    };
    Failure::new(code, format!("{}: {}", path.display(), err))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<Matrix, Failure> {
    let text = read_file(path)?;
    files::parse_matrix_text(&text).map_err(|e| file_failure(path, e))
}

/// Runs the CLI on the given arguments, capturing output and exit code.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let rendered = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => RunOutput {
                    stdout: rendered,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                _ => RunOutput {
                    stdout: String::new(),
                    stderr: rendered,
                    code: EXIT_USAGE,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, code)) => RunOutput {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(failure) => RunOutput {
            stdout: String::new(),
            stderr: format!("error: {}\n", failure.message),
            code: failure.code,
        },
    }
}

fn emit(content: String, output: Option<&PathBuf>) -> Result<(String, u8), Failure> {
    match output {
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            Ok((String::new(), EXIT_OK))
        }
        None => Ok((content, EXIT_OK)),
    }
}

fn render<D: serde::Serialize>(doc: &D, text: String, format: Format) -> String {
    match format {
        Format::Text => text,
        Format::Json => {
            let mut json = serde_json::to_string_pretty(doc).expect("documents serialize");
            json.push('\n');
            json
        }
    }
}

fn dispatch(command: Command) -> Result<(String, u8), Failure> {
    match command {
        Command::Circuits { matrix, out } => {
            let a = load_matrix(&matrix)?;
            let circuits = enumerate_circuits(&a);
            let om = signed_circuits(&a);
            let bound = circuit_count_bound(a.cols(), a.rank());
            let doc = CircuitsDoc::build(&a, &circuits, &om, bound);
            emit(render(&doc, doc.to_text(), out.format), out.output.as_ref())
        }
        Command::Supports {
            matrix,
            fvector,
            brute_force_check,
            subset,
            out,
        } => {
            let a = load_matrix(&matrix)?;
            if brute_force_check && a.cols() > BRUTE_FORCE_LIMIT {
                return Err(Failure::new(
                    EXIT_GUARD,
                    format!(
                        "--brute-force-check scans 2^m subsets and is limited to m <= {BRUTE_FORCE_LIMIT}, got m = {}",
                        a.cols()
                    ),
                ));
            }
            let (working, augmented) = a.with_ones_row_if_missing();
            let family = enumerate_supports(&a);
            let fvec = fvector.then(|| {
                (
                    s_vector(&family),
                    f_vector(&family),
                    neighborliness(&family),
                )
            });
            let check = brute_force_check.then(|| enumerate_supports_brute_force(&a) == family);
            let query = match subset {
                Some(text) => Some(subset_query(&working, &text)?),
                None => None,
            };
            let doc = SupportsDoc::build(&family, augmented, fvec, check, query);
            emit(render(&doc, doc.to_text(), out.format), out.output.as_ref())
        }
        Command::Member {
            matrix,
            distribution,
            q,
            mode,
            tol,
            out,
        } => {
            let a = load_matrix(&matrix)?;
            let m = a.cols();
            let tol = tol.unwrap_or(DEFAULT_FLOAT_TOLERANCE);
            let q_vec = match &q {
                Some(path) => {
                    let text = read_file(path)?;
                    let parsed =
                        files::parse_rational_line(&text).map_err(|e| file_failure(path, e))?;
                    if parsed.len() != m {
                        return Err(Failure::new(
                            EXIT_DIMENSION,
                            format!(
                                "reference measure has {} entries, matrix has {m} columns",
                                parsed.len()
                            ),
                        ));
                    }
                    parsed
                }
                None => vec![omfam_core::rational::parse_rational("1").unwrap(); m],
            };
            let dist_text = read_file(&distribution)?;
            let dist = match mode {
                Mode::Exact => {
                    let entries = files::parse_rational_line(&dist_text)
                        .map_err(|e| file_failure(&distribution, e))?;
                    if entries.len() != m {
                        return Err(Failure::new(
                            EXIT_DIMENSION,
                            format!(
                                "distribution has {} entries, matrix has {m} columns",
                                entries.len()
                            ),
                        ));
                    }
                    Distribution::exact(entries)
                        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?
                }
                Mode::Float => {
                    let entries = files::parse_float_line(&dist_text)
                        .map_err(|e| file_failure(&distribution, e))?;
                    if entries.len() != m {
                        return Err(Failure::new(
                            EXIT_DIMENSION,
                            format!(
                                "distribution has {} entries, matrix has {m} columns",
                                entries.len()
                            ),
                        ));
                    }
                    Distribution::float(entries, tol)
                        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?
                }
            };
            let family = ExponentialFamily::new(a, q_vec)
                .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            let report = in_closure_with_tol(&family, &dist, tol)
                .map_err(|e| Failure::new(EXIT_DIMENSION, e.to_string()))?;
            let mode_name = match mode {
                Mode::Exact => "exact",
                Mode::Float => "float",
            };
            let doc = MemberDoc::build(&report, mode_name);
            let (stdout, _) = emit(render(&doc, doc.to_text(), out.format), out.output.as_ref())?;
            let code = if report.member {
                EXIT_OK
            } else {
                EXIT_NOT_MEMBER
            };
            Ok((stdout, code))
        }
        Command::Generate { model, output } => {
            let matrix = build_model(model)?;
            emit(files::render_matrix_text(&matrix), output.as_ref())
        }
        Command::Dual { matrix, out } => {
            let a = load_matrix(&matrix)?;
            let dual = a.orthogonal_complement_basis();
            let co = cocircuits(&a);
            let verified = signed_circuits(&dual) == co;
            let doc = DualDoc::build(&a, &dual, &co, verified);
            emit(render(&doc, doc.to_text(), out.format), out.output.as_ref())
        }
    }
}

/// Parses "1,3,4" (1-based) and evaluates the facial test with its exact
/// certificate or Farkas witness on the working matrix.
fn subset_query(working: &Matrix, text: &str) -> Result<docs::SubsetQueryDoc, Failure> {
    let m = working.cols();
    let mut indices = std::collections::BTreeSet::new();
    for token in text.split(',') {
        let token = token.trim();
        let value: usize = token
            .parse()
            .map_err(|_| Failure::new(EXIT_USAGE, format!("invalid subset index `{token}`")))?;
        if value == 0 || value > m {
            return Err(Failure::new(
                EXIT_USAGE,
                format!("subset index {value} out of range 1..={m}"),
            ));
        }
        indices.insert(value - 1);
    }
    if indices.is_empty() {
        return Err(Failure::new(EXIT_USAGE, "subset must be nonempty"));
    }
    let facial = omfam_core::supports::is_facial(working, &indices);
    let outcome = omfam_core::supports::facial_certificate(working, &indices)
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    Ok(docs::SubsetQueryDoc::build(&indices, facial, &outcome))
}

fn build_model(model: GenerateModel) -> Result<Matrix, Failure> {
    let usage = |e: omfam_core::Error| Failure::new(EXIT_USAGE, e.to_string());
    match model {
        GenerateModel::Example1 { alpha } => {
            let alpha =
                parse_rational(&alpha).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
            models::example1_matrix(&alpha).map_err(usage)
        }
        GenerateModel::Parity { n } => models::parity_model_matrix(n).map_err(usage),
        GenerateModel::Cyclic { d, n, t } => {
            let spec = match t {
                Some(list) => {
                    let params: Result<Vec<_>, _> = list
                        .split(',')
                        .map(|tok| parse_rational(tok.trim()))
                        .collect();
                    let params = params.map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
                    if params.len() != n {
                        return Err(Failure::new(
                            EXIT_USAGE,
                            format!("expected {n} curve parameters, got {}", params.len()),
                        ));
                    }
                    models::CyclicPolytopeSpec::new(d, params).map_err(usage)?
                }
                None => models::CyclicPolytopeSpec::with_default_parameters(d, n).map_err(usage)?,
            };
            Ok(models::cyclic_matrix(&spec))
        }
        GenerateModel::Moment { m } => models::moment_matrix(m).map_err(usage),
    }
}
