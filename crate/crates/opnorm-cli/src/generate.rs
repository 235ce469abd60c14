//! Class instance generators: build a matrix of the requested class, write
//! it as CSV, and record the construction in a witness file so exact mode
//! and verification can dispatch without re-derivation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opnorm::construct::{
    bidiagonal_toeplitz, circulant_k_regular, normalized_hadamard, orthogonal_with_first_column,
    random_k_regular, random_orthogonal, signed_bidiagonal,
};
use opnorm::solvers::solve_composite_gamma;
use opnorm::{
    shear_matrix, DenseMatrix, Exponent, KRegularSpec, OrthogonalSvdSpec, RankOneFactors,
    ScaledOrthogonalSpec, SvdClassSpec, VandermondeSpec,
};

use crate::witness::{digest_bytes, Witness, WitnessParams};
use crate::CliError;

pub struct Params {
    map: BTreeMap<String, String>,
}

impl Params {
    pub fn parse(pairs: &[String]) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        for pair in pairs {
            let (k, v) = pair.split_once('=').ok_or_else(|| {
                CliError::input(format!("parameter {pair:?} is not of the form key=value"))
            })?;
            if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
                return Err(CliError::input(format!("duplicate parameter {k:?}")));
            }
        }
        Ok(Params { map })
    }

    fn get(&self, key: &str) -> Result<&str, CliError> {
        self.map
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CliError::input(format!("missing required parameter {key}=...")))
    }

    fn opt(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    fn usize(&self, key: &str) -> Result<usize, CliError> {
        self.get(key)?
            .parse()
            .map_err(|_| CliError::input(format!("parameter {key} must be a positive integer")))
    }

    fn f64(&self, key: &str) -> Result<f64, CliError> {
        self.get(key)?
            .parse()
            .map_err(|_| CliError::input(format!("parameter {key} must be a real number")))
    }

    fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        self.get(key)?
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| CliError::input(format!("parameter {key}: bad number {t:?}")))
            })
            .collect()
    }

    fn exponent(&self, key: &str) -> Result<Exponent, CliError> {
        self.get(key)?
            .parse()
            .map_err(|e| CliError::input(format!("parameter {key}: {e}")))
    }

    fn exponent_list(&self, key: &str) -> Result<Vec<Exponent>, CliError> {
        self.get(key)?
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Exponent>()
                    .map_err(|e| CliError::input(format!("parameter {key}: {e}")))
            })
            .collect()
    }

    fn sign_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        self.get(key)?
            .split(',')
            .map(|t| match t.trim() {
                "+" | "+1" | "1" => Ok(1.0),
                "-" | "-1" => Ok(-1.0),
                other => Err(CliError::input(format!(
                    "parameter {key}: signs are +/-, got {other:?}"
                ))),
            })
            .collect()
    }
}

fn exp_token(e: Exponent) -> String {
    e.to_string()
}

/// Builds the requested class instance and its witness payload.
pub fn build(
    class: &str,
    params: &Params,
    seed: u64,
) -> Result<(DenseMatrix, WitnessParams), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match class {
        "diagonal" => {
            let entries = match params.opt("entries") {
                Some(_) => params.f64_list("entries")?,
                None => {
                    let n = params.usize("n")?;
                    (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect()
                }
            };
            let a = DenseMatrix::from_diagonal(&entries)?;
            Ok((a, WitnessParams::Diagonal { entries }))
        }
        "rank-one" => {
            let (u, v) = if params.opt("u").is_some() || params.opt("v").is_some() {
                (params.f64_list("u")?, params.f64_list("v")?)
            } else {
                let m = params.usize("m").or_else(|_| params.usize("n"))?;
                let n = params.usize("n")?;
                (
                    (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect(),
                    (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect(),
                )
            };
            let factors = RankOneFactors::new(u.clone(), v.clone());
            Ok((factors.assemble()?, WitnessParams::RankOne { u, v }))
        }
        "vandermonde" => {
            let a1 = params.f64_list("a1")?;
            let q = params.exponent("q")?;
            let q_prime = params.exponent_list("q_prime")?;
            let p_prime = match params.opt("p_prime") {
                Some(_) => params.exponent_list("p_prime")?,
                None => q_prime.iter().map(|e| e.conjugate()).collect(),
            };
            let spec = VandermondeSpec::new(a1.clone(), p_prime.clone(), q_prime.clone(), q)?;
            let a = opnorm::vandermonde_build(&spec, opnorm::NormQuery::new(q, q))?;
            Ok((
                a,
                WitnessParams::Vandermonde {
                    a1,
                    p_prime: p_prime.iter().copied().map(exp_token).collect(),
                    q_prime: q_prime.iter().copied().map(exp_token).collect(),
                    q: exp_token(q),
                },
            ))
        }
        "hadamard" => {
            let n = params.usize("n")?;
            let a = normalized_hadamard(n)?;
            Ok((a, WitnessParams::SignRowOrthonormal { n }))
        }
        "svd-class" => {
            let n = params.usize("n")?;
            let sigma = params.f64_list("sigmas")?;
            let tau = match params.opt("tau") {
                Some(_) => params.sign_list("tau")?,
                None => vec![1.0; n],
            };
            if tau.len() != n || sigma.len() != n {
                return Err(CliError::input(
                    "svd-class needs n sigmas and n signs".into(),
                ));
            }
            let scale = 1.0 / (n as f64).sqrt();
            let u_first: Vec<f64> = tau.iter().map(|t| t * scale).collect();
            let u = orthogonal_with_first_column(&u_first, &mut rng)?;
            let mut v_first = vec![0.0; n];
            v_first[0] = 1.0;
            let v = orthogonal_with_first_column(&v_first, &mut rng)?;
            let spec = SvdClassSpec::new(v, sigma, u, tau)?;
            let a = spec.assemble()?;
            Ok((
                a,
                WitnessParams::SvdClass {
                    v: rows(&spec.v),
                    sigma: spec.sigma.clone(),
                    u: rows(&spec.u),
                    tau: spec.tau.clone(),
                },
            ))
        }
        "shear" => {
            let n = params.usize("n")?;
            let gamma = params.f64("gamma")?;
            Ok((shear_matrix(n, gamma)?, WitnessParams::Shear { n, gamma }))
        }
        "composite-shear" => {
            let n = params.usize("n")?;
            let q = params.exponent("q")?;
            let sigma = match params.opt("sigmas") {
                Some(_) => params.f64_list("sigmas")?,
                None => {
                    let mut s: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..3.0)).collect();
                    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
                    s
                }
            };
            let scale = 1.0 / (n as f64).sqrt();
            let u = orthogonal_with_first_column(&vec![scale; n], &mut rng)?;
            let mut v_first = vec![0.0; n];
            v_first[0] = 1.0;
            let v = orthogonal_with_first_column(&v_first, &mut rng)?;
            let b = SvdClassSpec::new(v, sigma, u, vec![1.0; n])?;
            let gamma = solve_composite_gamma(n, q)?;
            let c = shear_matrix(n, gamma)?;
            let a = b.assemble()?.matmul(&c)?;
            Ok((
                a,
                WitnessParams::CompositeShear {
                    v: rows(&b.v),
                    sigma: b.sigma.clone(),
                    u: rows(&b.u),
                    gamma,
                    q: exp_token(q),
                },
            ))
        }
        "k-regular" => {
            let n = params.usize("n")?;
            let k = params.opt("k").map(|_| params.usize("k")).transpose()?.unwrap_or(2);
            let layout = params.opt("layout").unwrap_or("circulant");
            let signed = matches!(params.opt("signed"), Some("true") | Some("1"));
            let a = match (layout, signed) {
                ("bidiagonal", false) => bidiagonal_toeplitz(n)?,
                ("bidiagonal", true) => signed_bidiagonal(n)?,
                ("circulant", false) => circulant_k_regular(n, k)?,
                ("random", false) => random_k_regular(n, k, &mut rng)?,
                (other, true) => {
                    return Err(CliError::input(format!(
                        "signed generation applies to layout=bidiagonal, not {other:?}"
                    )))
                }
                (other, _) => {
                    return Err(CliError::input(format!(
                        "unknown k-regular layout {other:?} (bidiagonal|circulant|random)"
                    )))
                }
            };
            let spec = KRegularSpec::from_matrix(&a, 1e-12)?;
            Ok((
                a,
                WitnessParams::KRegular {
                    k: spec.k,
                    index_lists: spec.index_lists.clone(),
                    signed: spec.signed_bidiagonal,
                },
            ))
        }
        "scaled-orthogonal" => {
            let n = params.usize("n")?;
            let q = params.exponent("q")?;
            let row_index = params.opt("row").map(|_| params.usize("row")).transpose()?.unwrap_or(0);
            let base = params.opt("u").unwrap_or("hadamard");
            let u = match base {
                "hadamard" => normalized_hadamard(n)?,
                "random" => random_orthogonal(n, &mut rng)?,
                other => {
                    return Err(CliError::input(format!(
                        "unknown base {other:?} (hadamard|random)"
                    )))
                }
            };
            let spec = ScaledOrthogonalSpec::new(u, row_index, q)?;
            let a = spec.assemble()?;
            Ok((
                a,
                WitnessParams::ScaledOrthogonal {
                    u: rows(&spec.u),
                    row_index,
                    q: exp_token(q),
                },
            ))
        }
        "orthogonal-svd" => {
            let n = params.usize("n")?;
            let q = params.exponent("q")?;
            let mut sigma = match params.opt("sigmas") {
                Some(_) => params.f64_list("sigmas")?,
                None => (0..n)
                    .map(|_| rng.gen_range(0.2..3.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    .collect(),
            };
            sigma.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());
            let v = loop {
                let v = random_orthogonal(n, &mut rng)?;
                if v.row(0).iter().all(|&x| x.abs() > 1e-3) {
                    break v;
                }
            };
            let mut u_first = vec![0.0; n];
            u_first[0] = 1.0;
            let u = orthogonal_with_first_column(&u_first, &mut rng)?;
            let spec = OrthogonalSvdSpec::new(u, sigma, v, q)?;
            let a = spec.assemble()?;
            Ok((
                a,
                WitnessParams::OrthogonalSvd {
                    u: rows(&spec.u),
                    sigma: spec.sigma.clone(),
                    v: rows(&spec.v),
                    q: exp_token(q),
                },
            ))
        }
        other => Err(CliError::input(format!(
            "unknown class {other:?}; known: diagonal, rank-one, vandermonde, hadamard, \
             svd-class, shear, composite-shear, k-regular, scaled-orthogonal, orthogonal-svd"
        ))),
    }
}

fn rows(a: &DenseMatrix) -> Vec<Vec<f64>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

/// Writes the matrix CSV at `out` and the witness next to it; returns the
/// witness path.
pub fn write_instance(
    out: &Path,
    matrix: &DenseMatrix,
    params: WitnessParams,
) -> Result<PathBuf, CliError> {
    let text = crate::csvio::render_matrix(matrix);
    std::fs::write(out, &text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", out.display())))?;
    let witness = Witness::new(digest_bytes(text.as_bytes()), params);
    let witness_path = witness_path_for(out);
    witness.save(&witness_path)?;
    Ok(witness_path)
}

pub fn witness_path_for(matrix_path: &Path) -> PathBuf {
    let mut name = matrix_path.file_name().unwrap_or_default().to_os_string();
    name.push(".witness.json");
    matrix_path.with_file_name(name)
}
