//! `opnorm`: compute, estimate, bound, generate, detect, and verify induced
//! `q → r` matrix norms over plain CSV/JSON files.
//!
//! Exit codes: 0 success, 2 input error, 3 not in any certified class,
//! 4 unsupported exponent, 5 verification failure.

mod canonical;
mod csvio;
mod document;
mod generate;
mod witness;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use opnorm::detect::detect;
use opnorm::oracle::{best_estimate, OracleConfig};
use opnorm::{
    exact_by_detection, hadamard_upper_bound, DenseMatrix, ExactResult, Exponent, NormError,
    NormQuery,
};

use document::DocumentBuilder;
use witness::Witness;

/// Formula tag reported with the row-norm/spectral bound.
const BOUND_FORMULA: &str = "min(maxrow2^((r-2)/r) sigma^(2/r) n^((q-2)/(2q)), \
                             maxrowp^((r-2)/r) sigma^(2/r) n^((q-2)/(q r)))";

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl CliError {
    fn new(code: u8, message: String) -> Self {
        CliError { code, message }
    }

    pub fn input(message: String) -> Self {
        CliError::new(2, message)
    }

    pub fn verification(message: String) -> Self {
        CliError::new(5, message)
    }
}

impl From<NormError> for CliError {
    fn from(e: NormError) -> Self {
        let code = match &e {
            NormError::NotInClass(_) => 3,
            NormError::UnsupportedExponent(_) | NormError::DegenerateShear => 4,
            NormError::CertificateMismatch { .. } => 5,
            _ => 2,
        };
        CliError::new(code, e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Exact,
    Estimate,
    Both,
    Bound,
}

#[derive(Parser)]
#[command(
    name = "opnorm",
    about = "Exact induced q->r matrix norms with certificates, estimates, and verification",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the norm of a matrix file (exact, estimate, both, or bound).
    Compute {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Witness file for factorization-based classes (exact mode).
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Oracle seed (overrides OPNORM_SEED; default 0).
        #[arg(long)]
        seed: Option<u64>,
        /// Emit the canonical JSON document instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Generate a class instance: matrix CSV plus witness JSON.
    Generate {
        #[arg(long)]
        class: String,
        /// Class parameters as key=value (repeatable).
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Report which certified classes a matrix belongs to.
    Detect {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the bilinear form sup <y, Ax> over unit p- and q-spheres
    /// through its induced-norm identity.
    Grothendieck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Re-validate a witness against a matrix: digests, reconstruction,
    /// certificates, and the oracle cross-check.
    Verify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

fn parse_exponent(token: &str, what: &str) -> Result<Exponent, CliError> {
    token
        .parse::<Exponent>()
        .map_err(|e| CliError::new(4, format!("{what}: {e}")))
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("OPNORM_SEED")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
    .unwrap_or(0)
}

fn oracle_config(seed: u64) -> OracleConfig {
    OracleConfig::with_seed(seed)
}

fn emit(doc: &serde_json::Value, json: bool) {
    if json {
        println!("{}", document::render_json(doc));
    } else {
        print!("{}", document::render_table(doc));
    }
}

fn exact_result(
    matrix: &DenseMatrix,
    query: NormQuery,
    witness_path: Option<&std::path::Path>,
    digest: &str,
) -> Result<ExactResult, CliError> {
    match witness_path {
        Some(path) => {
            let witness = Witness::load(path)?;
            if witness.matrix_digest != digest {
                return Err(CliError::input(format!(
                    "witness digest {} does not match matrix digest {digest}",
                    witness.matrix_digest
                )));
            }
            Ok(witness.exact(matrix, query)?)
        }
        None => exact_by_detection(matrix, query).map_err(|e| match e {
            NormError::NotInClass(msg) => {
                let kinds = detect(matrix, query).kinds();
                CliError::new(
                    3,
                    format!(
                        "{msg}; structural detection found: {}",
                        if kinds.is_empty() {
                            "nothing".to_string()
                        } else {
                            kinds.join(", ")
                        }
                    ),
                )
            }
            other => other.into(),
        }),
    }
}

fn run_compute(
    matrix_path: &std::path::Path,
    query: NormQuery,
    mode: Mode,
    witness_path: Option<&std::path::Path>,
    seed: u64,
    json: bool,
) -> Result<(), CliError> {
    let matrix = csvio::read_matrix(matrix_path)?;
    let digest = witness::digest_file(matrix_path)?;
    let report = detect(&matrix, query);
    let mut doc = DocumentBuilder::new(&digest, query).detection(&report);

    match mode {
        Mode::Exact => {
            let exact = exact_result(&matrix, query, witness_path, &digest)?;
            doc = doc.exact(&exact);
        }
        Mode::Estimate => {
            let est = best_estimate(&matrix, query, &oracle_config(seed))?;
            doc = doc.estimate(&est);
        }
        Mode::Both => {
            let exact = exact_result(&matrix, query, witness_path, &digest)?;
            let est = best_estimate(&matrix, query, &oracle_config(seed))?;
            let gap = if exact.value > 0.0 {
                (exact.value - est.value) / exact.value
            } else {
                0.0
            };
            doc = doc.exact(&exact).estimate(&est).gap(gap);
        }
        Mode::Bound => {
            let bound = hadamard_upper_bound(&matrix, query)?;
            doc = doc.bound(bound, BOUND_FORMULA);
        }
    }
    emit(&doc.build(), json);
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            matrix,
            q,
            r,
            mode,
            witness,
            seed,
            json,
        } => {
            let query = NormQuery::new(parse_exponent(&q, "--q")?, parse_exponent(&r, "--r")?);
            run_compute(&matrix, query, mode, witness.as_deref(), resolve_seed(seed), json)
        }
        Command::Generate {
            class,
            params,
            out,
            seed,
        } => {
            let params = generate::Params::parse(&params)?;
            let (matrix, witness_params) = generate::build(&class, &params, resolve_seed(seed))?;
            let witness_path = generate::write_instance(&out, &matrix, witness_params)?;
            println!(
                "wrote {} ({}x{}) and {}",
                out.display(),
                matrix.rows(),
                matrix.cols(),
                witness_path.display()
            );
            Ok(())
        }
        Command::Detect { matrix, q, r, json } => {
            let query = NormQuery::new(parse_exponent(&q, "--q")?, parse_exponent(&r, "--r")?);
            let m = csvio::read_matrix(&matrix)?;
            let digest = witness::digest_file(&matrix)?;
            let report = detect(&m, query);
            let doc = DocumentBuilder::new(&digest, query).detection(&report).build();
            emit(&doc, json);
            Ok(())
        }
        Command::Grothendieck {
            matrix,
            p,
            q,
            mode,
            witness,
            seed,
            json,
        } => {
            let p = parse_exponent(&p, "--p")?;
            let q = parse_exponent(&q, "--q")?;
            // G(p, q) = ||A||_{q -> p*}
            let query = NormQuery::new(q, p.conjugate());
            let mode = if mode == Mode::Bound {
                return Err(CliError::new(
                    4,
                    "bound mode does not apply to the bilinear form".into(),
                ));
            } else {
                mode
            };
            let matrix_file = matrix;
            let m = csvio::read_matrix(&matrix_file)?;
            let digest = witness::digest_file(&matrix_file)?;
            let report = detect(&m, query);
            let mut doc = DocumentBuilder::new(&digest, query)
                .detection(&report)
                .leg(&format!("G(p={p}, q={q}) = induced norm {query}"));
            match mode {
                Mode::Exact => {
                    let exact = exact_result(&m, query, witness.as_deref(), &digest)?;
                    doc = doc.exact(&exact);
                }
                Mode::Estimate => {
                    let est = best_estimate(&m, query, &oracle_config(resolve_seed(seed)))?;
                    doc = doc.estimate(&est);
                }
                Mode::Both => {
                    let exact = exact_result(&m, query, witness.as_deref(), &digest)?;
                    let est = best_estimate(&m, query, &oracle_config(resolve_seed(seed)))?;
                    let gap = if exact.value > 0.0 {
                        (exact.value - est.value) / exact.value
                    } else {
                        0.0
                    };
                    doc = doc.exact(&exact).estimate(&est).gap(gap);
                }
                Mode::Bound => unreachable!(),
            }
            emit(&doc.build(), json);
            Ok(())
        }
        Command::Verify {
            matrix,
            witness: witness_path,
            q,
            r,
            seed,
            json,
        } => {
            let query = NormQuery::new(parse_exponent(&q, "--q")?, parse_exponent(&r, "--r")?);
            let m = csvio::read_matrix(&matrix)?;
            let digest = witness::digest_file(&matrix)?;
            let w = Witness::load(&witness_path)?;
            let outcome = witness::verify(&m, &digest, &w, query, &oracle_config(resolve_seed(seed)));
            let mut doc = DocumentBuilder::new(&digest, query)
                .verification(w.class_name(), outcome.passed(), &outcome.checks);
            if let Some(exact) = &outcome.exact {
                doc = doc.exact(exact);
            }
            if let Some(est) = &outcome.estimate {
                doc = doc.estimate(est);
            }
            emit(&doc.build(), json);
            if outcome.passed() {
                Ok(())
            } else {
                let failed: Vec<&str> = outcome
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .map(|c| c.name.as_str())
                    .collect();
                Err(CliError::verification(format!(
                    "verification failed: {}",
                    failed.join(", ")
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
