//! Argument parsing, dispatch and exit codes for the `tropbasis` binary.

mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tropbasis::assignment::{is_b_singular, is_trop_singular, trop_permanent};
use tropbasis::lift::{
    classify_pattern_case, construct_lift_case_iii, construct_lift_case_iv, verify_lift, LiftMatrix,
};
use tropbasis::puiseux::KMatrix;
use tropbasis::rank::{check_dependence, find_dependence_with, tropical_rank_with, Budget};
use tropbasis::trop::{pattern, TropMatrix};
use tropbasis::witness::{is_tropical_basis, witness_with, WitnessOutcome};
use tropbasis::Error;

pub use report::Report;

pub const EXIT_OK: i32 = 0;
/// The command ran but could not produce its result (a lift that does not
/// verify, a construction branch that is not automated).
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "tropbasis", version, about = "Exact tropical rank, lifts and tropical bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Cap on submatrices and search nodes examined by one computation.
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tropical rank with a nonsingular witness submatrix.
    Rank { file: PathBuf },
    /// Tropical permanent of a square matrix and an optimal assignment.
    Permanent { file: PathBuf },
    /// Whether a square matrix is tropically singular.
    Singular { file: PathBuf },
    /// Zero pattern after subtracting column minima.
    Pattern { file: PathBuf },
    /// A tuple realizing tropical dependence of the rows, if any.
    Dependence { file: PathBuf },
    /// Lifts to the Puiseux field.
    #[command(subcommand)]
    Lift(LiftCommand),
    /// Counterexample matrix when the r x r minors are not a tropical basis.
    Witness { d: usize, n: usize, r: usize },
    /// Whether the r x r minors of a d x n matrix form a tropical basis.
    ClassifyBasis { d: usize, n: usize, r: usize },
}

#[derive(Subcommand, Debug)]
enum LiftCommand {
    /// Checks that a lift has the given degrees and reports its rank.
    Verify { matrix: PathBuf, lift: PathBuf },
    /// Rank-3 lift of a 6-row matrix in shape iv.
    CaseIv { file: PathBuf },
    /// Rank-3 lift of a 6-row matrix in shape iii.
    CaseIii { file: PathBuf },
    /// Searches the equivalence class for one of the five shapes.
    Classify { file: PathBuf },
}

/// What the process prints and returns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget(_) => EXIT_BUDGET,
        Error::Parse { .. }
        | Error::Shape(_)
        | Error::InfiniteEntry(_)
        | Error::IndexOutOfRange { .. }
        | Error::Precondition(_)
        | Error::Hypothesis(_)
        | Error::UnknownExample(_) => EXIT_INPUT,
        _ => EXIT_FAILED,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, col, msg } => Error::Parse {
            line,
            col,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    }
}

fn read_matrix(path: &Path) -> Result<TropMatrix, Error> {
    TropMatrix::parse_text(&read(path)?).map_err(|e| located(path, e))
}

fn read_lift(path: &Path) -> Result<KMatrix, Error> {
    KMatrix::parse_text(&read(path)?).map_err(|e| located(path, e))
}

fn file_inputs(path: &Path, m: &TropMatrix) -> Value {
    json!({ "file": path.display().to_string(), "matrix": report::matrix_json(m) })
}

fn lift_lines(l: &LiftMatrix) -> Value {
    Value::Array(l.matrix().to_text().lines().map(|s| json!(s)).collect())
}

fn lift_result(report: &mut Report, l: &LiftMatrix) {
    report.result = json!({
        "rank_over_K": l.verified_rank_bound(),
        "degrees": report::matrix_json(l.target()),
    });
    report.certificates = json!({ "lift": lift_lines(l) });
}

/// Runs one command. `Err` carries the report so far with the failure.
fn dispatch(cmd: Command, budget: &Budget) -> Result<Report, (Report, Error)> {
    macro_rules! tri {
        ($report:expr, $e:expr) => {
            match $e {
                Ok(v) => v,
                Err(e) => return Err(($report, e)),
            }
        };
    }
    let blank = |name: &str, path: &Path| Report::new(name, json!({ "file": path.display().to_string() }));
    match cmd {
        Command::Rank { file } => {
            let m = tri!(blank("rank", &file), read_matrix(&file));
            let mut r = Report::new("rank", file_inputs(&file, &m));
            let res = tri!(r, tropical_rank_with(&m, budget));
            let sub = m.submatrix(&res.witness_rows, &res.witness_cols);
            let perm = tri!(r, trop_permanent(&sub));
            r.result = json!({
                "tropical_rank": res.rank,
                "witness_rows": res.witness_rows,
                "witness_cols": res.witness_cols,
            });
            r.certificates = json!({
                "witness_assignment": perm.witness,
                "witness_permanent": perm.value.to_string(),
                "witness_unique": perm.unique,
            });
            Ok(r)
        }
        Command::Permanent { file } => {
            let m = tri!(blank("permanent", &file), read_matrix(&file));
            let mut r = Report::new("permanent", file_inputs(&file, &m));
            let p = tri!(r, trop_permanent(&m));
            r.result = json!({ "permanent": p.value.to_string(), "unique": p.unique });
            r.certificates = json!({ "assignment": p.witness });
            Ok(r)
        }
        Command::Singular { file } => {
            let m = tri!(blank("singular", &file), read_matrix(&file));
            let mut r = Report::new("singular", file_inputs(&file, &m));
            let singular = tri!(r, is_trop_singular(&m));
            let p = tri!(r, trop_permanent(&m));
            r.result = json!({ "singular": singular, "permanent": p.value.to_string() });
            r.certificates = json!({ "assignment": p.witness, "unique": p.unique });
            Ok(r)
        }
        Command::Pattern { file } => {
            let m = tri!(blank("pattern", &file), read_matrix(&file));
            let mut r = Report::new("pattern", file_inputs(&file, &m));
            let p = tri!(r, pattern(&m));
            let rows: Vec<Value> = (0..p.rows())
                .map(|i| json!((0..p.cols()).map(|j| if p.is_zero(i, j) { "0" } else { "inf" }).collect::<Vec<_>>()))
                .collect();
            let supports: Vec<Vec<usize>> = (0..p.cols()).map(|j| p.support(j)).collect();
            let mut result = json!({ "pattern": rows, "column_supports": supports });
            if p.rows() == p.cols() {
                result["b_singular"] = json!(tri!(r, is_b_singular(&p)));
            }
            r.result = result;
            Ok(r)
        }
        Command::Dependence { file } => {
            let m = tri!(blank("dependence", &file), read_matrix(&file));
            let mut r = Report::new("dependence", file_inputs(&file, &m));
            let c = tri!(r, find_dependence_with(&m, budget));
            r.result = json!({ "dependent": c.is_some() });
            if let Some(c) = c {
                let ok = tri!(r, check_dependence(&m, &c));
                r.certificates = json!({ "lambdas": c.to_strings(), "checked": ok });
            }
            Ok(r)
        }
        Command::Lift(LiftCommand::Verify { matrix, lift }) => {
            let blank = Report::new(
                "lift verify",
                json!({ "matrix_file": matrix.display().to_string(), "lift_file": lift.display().to_string() }),
            );
            let a = tri!(blank, read_matrix(&matrix));
            let f = tri!(blank, read_lift(&lift));
            let mut r = Report::new(
                "lift verify",
                json!({
                    "matrix_file": matrix.display().to_string(),
                    "lift_file": lift.display().to_string(),
                    "matrix": report::matrix_json(&a),
                }),
            );
            let l = tri!(r, verify_lift(&f, &a));
            lift_result(&mut r, &l);
            r.result["degrees_match"] = json!(true);
            Ok(r)
        }
        Command::Lift(LiftCommand::CaseIv { file }) => {
            let m = tri!(blank("lift case-iv", &file), read_matrix(&file));
            let mut r = Report::new("lift case-iv", file_inputs(&file, &m));
            let l = tri!(r, construct_lift_case_iv(&m));
            lift_result(&mut r, &l);
            Ok(r)
        }
        Command::Lift(LiftCommand::CaseIii { file }) => {
            let m = tri!(blank("lift case-iii", &file), read_matrix(&file));
            let mut r = Report::new("lift case-iii", file_inputs(&file, &m));
            let l = tri!(r, construct_lift_case_iii(&m));
            lift_result(&mut r, &l);
            Ok(r)
        }
        Command::Lift(LiftCommand::Classify { file }) => {
            let m = tri!(blank("lift classify", &file), read_matrix(&file));
            let mut r = Report::new("lift classify", file_inputs(&file, &m));
            let c = tri!(r, classify_pattern_case(&m));
            r.result = json!({ "case": c.label.to_string(), "w": report::matrix_json(&c.w) });
            r.certificates = json!({ "trace": c.trace.iter().map(|t| t.to_string()).collect::<Vec<_>>() });
            Ok(r)
        }
        Command::Witness { d, n, r: rk } => {
            let mut r = Report::new("witness", json!({ "d": d, "n": n, "r": rk }));
            match tri!(r, witness_with(d, n, rk, budget)) {
                WitnessOutcome::BasisHolds => {
                    r.result = json!({ "tropical_basis": true, "verdict": "basis holds" });
                }
                WitnessOutcome::Witness(w) => {
                    r.result = json!({
                        "tropical_basis": false,
                        "matrix": report::matrix_json(&w.matrix),
                        "claimed_trop_rank": w.claimed_trop_rank,
                        "trop_rank_verified": w.trop_rank_verified,
                        "claimed_kapranov_lower": w.claimed_kapranov_lower,
                        "kapranov_lower_verified": false,
                    });
                    r.certificates = json!({ "provenance": w.provenance });
                }
            }
            Ok(r)
        }
        Command::ClassifyBasis { d, n, r: rk } => {
            let mut r = Report::new("classify-basis", json!({ "d": d, "n": n, "r": rk }));
            let basis = tri!(r, is_tropical_basis(d, n, rk));
            let verdict = if basis { "a tropical basis" } else { "NOT a tropical basis" };
            r.result = json!({
                "tropical_basis": basis,
                "verdict": format!("the {rk}x{rk} minors of a {d}x{n} matrix are {verdict}"),
            });
            Ok(r)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("TROPBASIS_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    configure_threads();
    let mut budget = Budget::default();
    if let Some(b) = cli.budget {
        budget.max_submatrices = b;
        budget.max_nodes = b;
    }
    let (report, code) = match dispatch(cli.command, &budget) {
        Ok(r) => (r, EXIT_OK),
        Err((mut r, e)) => {
            let code = exit_code(&e);
            r.error = Some(e.to_string());
            (r, code)
        }
    };
    match cli.format {
        Format::Json => Outcome { code, stdout: report.render_json(), stderr: String::new() },
        Format::Text if code == EXIT_OK => Outcome { code, stdout: report.render_text(), stderr: String::new() },
        Format::Text => Outcome { code, stdout: String::new(), stderr: report.render_text() },
    }
}
