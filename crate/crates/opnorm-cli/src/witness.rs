//! Witness files: the construction data that lets exact mode dispatch to a
//! factorization-based class without re-deriving it from raw entries, plus
//! the verification pipeline that re-validates a witness against a matrix.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use opnorm::oracle::{best_estimate, OracleConfig};
use opnorm::{
    composite_shear_norm, diagonal_norm, k_regular_norm, orthogonal_svd_norm,
    rank_one_norm, scaled_orthogonal_norm, shear_matrix, shear_norm, sign_row_orthonormal_norm,
    svd_class_norm, vandermonde_build, vandermonde_norm, vector_norm, DenseMatrix, ExactResult,
    Exponent, KRegularSpec, NormError, NormQuery, OrthogonalSvdSpec, RankOneFactors,
    ScaledOrthogonalSpec, SvdClassSpec, VandermondeSpec, EPS_FEAS,
};

use crate::CliError;

pub const SCHEMA_VERSION: &str = "opnorm/1";

pub fn digest_bytes(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn digest_file(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(digest_bytes(&bytes))
}

fn rows_matrix(rows: &[Vec<f64>]) -> Result<DenseMatrix, CliError> {
    DenseMatrix::from_rows(rows).map_err(CliError::from)
}

fn parse_exp(token: &str) -> Result<Exponent, CliError> {
    token
        .parse::<Exponent>()
        .map_err(|e| CliError::input(format!("witness exponent {token:?}: {e}")))
}

/// Class-specific witness payloads. Exponent-pinned constructions carry the
/// `q` they were generated for as a token.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "class", content = "params", rename_all = "kebab-case")]
pub enum WitnessParams {
    Diagonal {
        entries: Vec<f64>,
    },
    RankOne {
        u: Vec<f64>,
        v: Vec<f64>,
    },
    Vandermonde {
        a1: Vec<f64>,
        p_prime: Vec<String>,
        q_prime: Vec<String>,
        q: String,
    },
    SignRowOrthonormal {
        n: usize,
    },
    SvdClass {
        v: Vec<Vec<f64>>,
        sigma: Vec<f64>,
        u: Vec<Vec<f64>>,
        tau: Vec<f64>,
    },
    Shear {
        n: usize,
        gamma: f64,
    },
    CompositeShear {
        v: Vec<Vec<f64>>,
        sigma: Vec<f64>,
        u: Vec<Vec<f64>>,
        gamma: f64,
        q: String,
    },
    KRegular {
        k: usize,
        index_lists: Vec<Vec<usize>>,
        signed: bool,
    },
    ScaledOrthogonal {
        u: Vec<Vec<f64>>,
        row_index: usize,
        q: String,
    },
    OrthogonalSvd {
        u: Vec<Vec<f64>>,
        sigma: Vec<f64>,
        v: Vec<Vec<f64>>,
        q: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub schema_version: String,
    pub matrix_digest: String,
    #[serde(flatten)]
    pub params: WitnessParams,
}

impl Witness {
    pub fn new(matrix_digest: String, params: WitnessParams) -> Self {
        Witness {
            schema_version: SCHEMA_VERSION.into(),
            matrix_digest,
            params,
        }
    }

    pub fn class_name(&self) -> &'static str {
        match &self.params {
            WitnessParams::Diagonal { .. } => "diagonal",
            WitnessParams::RankOne { .. } => "rank-one",
            WitnessParams::Vandermonde { .. } => "vandermonde",
            WitnessParams::SignRowOrthonormal { .. } => "sign-row-orthonormal",
            WitnessParams::SvdClass { .. } => "svd-class",
            WitnessParams::Shear { .. } => "shear",
            WitnessParams::CompositeShear { .. } => "composite-shear",
            WitnessParams::KRegular { .. } => "k-regular",
            WitnessParams::ScaledOrthogonal { .. } => "scaled-orthogonal",
            WitnessParams::OrthogonalSvd { .. } => "orthogonal-svd",
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        let witness: Witness = serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        if witness.schema_version != SCHEMA_VERSION {
            return Err(CliError::input(format!(
                "unsupported witness schema {:?}",
                witness.schema_version
            )));
        }
        Ok(witness)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let value = serde_json::to_value(self).expect("witness serializes");
        let text = crate::canonical::to_canonical_string(&value);
        std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
    }

    /// Rebuilds the matrix this witness describes, when the class is a
    /// construction. Structural classes (the sign-row family) validate on
    /// the provided matrix instead and return `None`.
    pub fn reconstruct(&self) -> Result<Option<DenseMatrix>, CliError> {
        let built = match &self.params {
            WitnessParams::Diagonal { entries } => Some(DenseMatrix::from_diagonal(entries)?),
            WitnessParams::RankOne { u, v } => {
                Some(RankOneFactors::new(u.clone(), v.clone()).assemble()?)
            }
            WitnessParams::Vandermonde {
                a1,
                p_prime,
                q_prime,
                q,
            } => {
                let q = parse_exp(q)?;
                let spec = VandermondeSpec::new(
                    a1.clone(),
                    p_prime
                        .iter()
                        .map(|t| parse_exp(t))
                        .collect::<Result<_, _>>()?,
                    q_prime
                        .iter()
                        .map(|t| parse_exp(t))
                        .collect::<Result<_, _>>()?,
                    q,
                )?;
                Some(vandermonde_build(&spec, NormQuery::new(q, q))?)
            }
            WitnessParams::SignRowOrthonormal { .. } => None,
            WitnessParams::SvdClass { v, sigma, u, tau } => Some(
                SvdClassSpec::new(rows_matrix(v)?, sigma.clone(), rows_matrix(u)?, tau.clone())?
                    .assemble()?,
            ),
            WitnessParams::Shear { n, gamma } => Some(shear_matrix(*n, *gamma)?),
            WitnessParams::CompositeShear {
                v,
                sigma,
                u,
                gamma,
                ..
            } => {
                let b = SvdClassSpec::new(
                    rows_matrix(v)?,
                    sigma.clone(),
                    rows_matrix(u)?,
                    vec![1.0; u.len()],
                )?;
                let c = shear_matrix(b.n(), *gamma)?;
                Some(b.assemble()?.matmul(&c)?)
            }
            WitnessParams::KRegular {
                k,
                index_lists,
                signed,
            } => Some(KRegularSpec::new(*k, index_lists.clone(), *signed)?.assemble()?),
            WitnessParams::ScaledOrthogonal { u, row_index, q } => Some(
                ScaledOrthogonalSpec::new(rows_matrix(u)?, *row_index, parse_exp(q)?)?
                    .assemble()?,
            ),
            WitnessParams::OrthogonalSvd { u, sigma, v, q } => Some(
                OrthogonalSvdSpec::new(
                    rows_matrix(u)?,
                    sigma.clone(),
                    rows_matrix(v)?,
                    parse_exp(q)?,
                )?
                .assemble()?,
            ),
        };
        Ok(built)
    }

    /// Recomputes the exact result this witness licenses for the query.
    pub fn exact(&self, matrix: &DenseMatrix, query: NormQuery) -> Result<ExactResult, NormError> {
        let check_q = |token: &str| -> Result<(), NormError> {
            let q: Exponent = token
                .parse()
                .map_err(|_| NormError::InvalidInput(format!("bad witness exponent {token:?}")))?;
            if q != query.q {
                return Err(NormError::PreconditionViolation(format!(
                    "witness was generated for q = {q}, query has q = {}",
                    query.q
                )));
            }
            Ok(())
        };
        let require_q_eq_r = || -> Result<(), NormError> {
            if query.q != query.r {
                return Err(NormError::UnsupportedExponent(
                    "this class is certified for q = r only".into(),
                ));
            }
            Ok(())
        };
        match &self.params {
            WitnessParams::Diagonal { entries } => diagonal_norm(entries, query),
            WitnessParams::RankOne { u, v } => {
                rank_one_norm(&RankOneFactors::new(u.clone(), v.clone()), query)
            }
            WitnessParams::Vandermonde {
                a1,
                p_prime,
                q_prime,
                q,
            } => {
                check_q(q)?;
                let to_exp = |tokens: &[String]| -> Result<Vec<Exponent>, NormError> {
                    tokens
                        .iter()
                        .map(|t| {
                            t.parse().map_err(|_| {
                                NormError::InvalidInput(format!("bad witness exponent {t:?}"))
                            })
                        })
                        .collect()
                };
                let spec =
                    VandermondeSpec::new(a1.clone(), to_exp(p_prime)?, to_exp(q_prime)?, query.q)?;
                vandermonde_norm(&spec, query)
            }
            WitnessParams::SignRowOrthonormal { .. } => sign_row_orthonormal_norm(matrix, query),
            WitnessParams::SvdClass { v, sigma, u, tau } => {
                let spec = SvdClassSpec::new(
                    DenseMatrix::from_rows(v)?,
                    sigma.clone(),
                    DenseMatrix::from_rows(u)?,
                    tau.clone(),
                )?;
                svd_class_norm(&spec, query)
            }
            WitnessParams::Shear { n, gamma } => {
                require_q_eq_r()?;
                shear_norm(*gamma, *n, query.q)
            }
            WitnessParams::CompositeShear { v, sigma, u, q, .. } => {
                check_q(q)?;
                let spec = SvdClassSpec::new(
                    DenseMatrix::from_rows(v)?,
                    sigma.clone(),
                    DenseMatrix::from_rows(u)?,
                    vec![1.0; u.len()],
                )?;
                composite_shear_norm(&spec, query)
            }
            WitnessParams::KRegular {
                k,
                index_lists,
                signed,
            } => {
                require_q_eq_r()?;
                k_regular_norm(&KRegularSpec::new(*k, index_lists.clone(), *signed)?, query.q)
            }
            WitnessParams::ScaledOrthogonal { u, row_index, q } => {
                check_q(q)?;
                let spec =
                    ScaledOrthogonalSpec::new(DenseMatrix::from_rows(u)?, *row_index, query.q)?;
                scaled_orthogonal_norm(&spec, query)
            }
            WitnessParams::OrthogonalSvd { u, sigma, v, q } => {
                check_q(q)?;
                let spec = OrthogonalSvdSpec::new(
                    DenseMatrix::from_rows(u)?,
                    sigma.clone(),
                    DenseMatrix::from_rows(v)?,
                    query.q,
                )?;
                orthogonal_svd_norm(&spec, query)
            }
        }
    }
}

/// One named verification check with its outcome.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Result of the full verification pipeline.
pub struct Verification {
    pub checks: Vec<CheckOutcome>,
    pub exact: Option<ExactResult>,
    pub estimate: Option<opnorm::oracle::OracleEstimate>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Re-validates a witness against a matrix file: digest match, witness
/// reconstruction, exact recomputation with its built-in certificate check,
/// maximizer feasibility on the file matrix, and the oracle cross-check
/// (estimate ≤ exact, and the estimate reaches exact within 1e-4 relative).
pub fn verify(
    matrix: &DenseMatrix,
    matrix_digest: &str,
    witness: &Witness,
    query: NormQuery,
    config: &OracleConfig,
) -> Verification {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CheckOutcome {
            name: name.into(),
            passed,
            detail,
        });
    };

    let digest_ok = witness.matrix_digest == matrix_digest;
    push(
        "digest-match",
        digest_ok,
        if digest_ok {
            matrix_digest.to_string()
        } else {
            format!("witness {} vs file {}", witness.matrix_digest, matrix_digest)
        },
    );

    match witness.reconstruct() {
        Ok(Some(rebuilt)) => {
            let same_shape = rebuilt.rows() == matrix.rows() && rebuilt.cols() == matrix.cols();
            let mut worst = 0.0f64;
            if same_shape {
                for (x, y) in rebuilt.entries().iter().zip(matrix.entries()) {
                    worst = worst.max((x - y).abs() / x.abs().max(1.0));
                }
            }
            let ok = same_shape && worst <= 1e-12;
            push(
                "reconstruction",
                ok,
                format!("max relative entry deviation {worst:.3e}"),
            );
        }
        Ok(None) => push("reconstruction", true, "structural class".into()),
        Err(e) => push("reconstruction", false, e.to_string()),
    }

    let exact = match witness.exact(matrix, query) {
        Ok(exact) => {
            push(
                "exact-recompute",
                true,
                format!("value {}", crate::canonical::fmt_f64(exact.value)),
            );
            Some(exact)
        }
        Err(e) => {
            push("exact-recompute", false, e.to_string());
            None
        }
    };

    if let Some(exact) = &exact {
        let feas = vector_norm(&exact.maximizer, query.q);
        let image = matrix
            .apply(&exact.maximizer)
            .map(|y| vector_norm(&y, query.r));
        match image {
            Ok(achieved) => {
                let ok = (feas - 1.0).abs() <= EPS_FEAS
                    && (achieved - exact.value).abs() <= EPS_FEAS * exact.value.max(1e-12);
                push(
                    "certificate-feasibility",
                    ok,
                    format!("maximizer q-norm {feas}, achieves {achieved}"),
                );
            }
            Err(e) => push("certificate-feasibility", false, e.to_string()),
        }
    }

    let estimate = match best_estimate(matrix, query, config) {
        Ok(est) => Some(est),
        Err(e) => {
            push("oracle-gap", false, format!("oracle failed: {e}"));
            None
        }
    };
    if let (Some(exact), Some(est)) = (&exact, &estimate) {
        let dominated = est.value <= exact.value * (1.0 + 1e-7);
        let reached = (exact.value - est.value) <= 1e-4 * exact.value.max(1e-12);
        push(
            "oracle-gap",
            dominated && reached,
            format!(
                "exact {} vs estimate {}",
                crate::canonical::fmt_f64(exact.value),
                crate::canonical::fmt_f64(est.value)
            ),
        );
    }

    Verification {
        checks,
        exact,
        estimate,
    }
}
