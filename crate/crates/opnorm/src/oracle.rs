//! Independent lower-bound estimators for `‖A‖_{q→r}`: nonlinear power
//! iteration with seeded multistart, exhaustive sphere grids for tiny
//! dimensions, and the exact vertex search at `q = 1`.
//!
//! Every estimate re-evaluates `‖A·candidate‖_r` at a feasible candidate, so
//! the returned value is a certified lower bound regardless of whether the
//! iteration converged. The maximization is non-convex and can stall in
//! suboptimal stationary points (a diagonal matrix with `q > r` already
//! exhibits them), hence the multistart policy: the standard basis vectors,
//! the uniform and alternating directions, and a seeded batch of random
//! starts whose streams are derived per restart index, never shared.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{normalize, vector_norm, DenseMatrix, DenseVector};

/// Restart/iteration budgets, convergence tolerance, seed, and the grid
/// resolution for the exhaustive search.
#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    /// Number of random starting points on top of the deterministic ones.
    pub restarts: usize,
    pub max_iters: usize,
    /// Relative change of the objective that counts as converged.
    pub conv_tol: f64,
    pub seed: u64,
    /// Points per angular dimension in [`grid_lower_bound`] (`n ≤ 3` only).
    pub grid_points: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            restarts: 64,
            max_iters: 500,
            conv_tol: 1e-10,
            seed: 0,
            grid_points: 200,
        }
    }
}

impl OracleConfig {
    pub fn with_seed(seed: u64) -> Self {
        OracleConfig {
            seed,
            ..OracleConfig::default()
        }
    }
}

/// A feasible candidate with the value it certifies.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleEstimate {
    /// `‖A·candidate‖_r`, a lower bound for the norm.
    pub value: f64,
    /// Unit q-norm vector realizing `value`.
    pub candidate: DenseVector,
    pub iterations_used: usize,
    pub restarts_used: usize,
    pub converged: bool,
    pub seed: u64,
}

impl OracleEstimate {
    fn from_candidate(
        a: &DenseMatrix,
        query: NormQuery,
        candidate: DenseVector,
        iterations_used: usize,
        restarts_used: usize,
        converged: bool,
        seed: u64,
    ) -> Result<Self> {
        let candidate = normalize(&candidate, query.q).ok_or_else(|| {
            NormError::NumericalError("candidate collapsed to the zero vector".into())
        })?;
        let value = vector_norm(&a.apply(&candidate)?, query.r);
        Ok(OracleEstimate {
            value,
            candidate,
            iterations_used,
            restarts_used,
            converged,
            seed,
        })
    }
}

/// Gradient-duality map `φ_p(y)_i = sgn(y_i)|y_i|^{p−1}`, scale-normalized
/// by `max|y_i|` so extreme exponents stay inside `f64` range. The limits
/// are the subdifferential choices: the sign vector at `p = 1` and the
/// smallest-index argmax at `p = ∞`.
fn dual_map(y: &[f64], p: Exponent) -> DenseVector {
    match p {
        Exponent::Finite(1.0) => {
            y.iter().map(|&v| crate::sgn(v)).collect()
        }
        Exponent::Inf => {
            let mut best = 0usize;
            for (i, v) in y.iter().enumerate() {
                if v.abs() > y[best].abs() {
                    best = i;
                }
            }
            let mut out = vec![0.0; y.len()];
            out[best] = crate::sgn(y[best]);
            out
        }
        Exponent::Finite(pv) => {
            let m = y.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if m == 0.0 {
                return vec![0.0; y.len()];
            }
            y.iter()
                .map(|&v| crate::sgn(v) * (v.abs() / m).powf(pv - 1.0))
                .collect()
        }
    }
}

/// One run of the nonlinear power map
/// `x ← normalize_q(φ_{q*}(Aᵀ φ_r(Ax)))` from a caller-supplied start.
///
/// Needs `q > 1`; at `q = 1` the ball has no smooth duality map and
/// [`vertex_search_q1`] is exact instead.
pub fn power_iteration(
    a: &DenseMatrix,
    query: NormQuery,
    x0: &[f64],
    config: &OracleConfig,
) -> Result<OracleEstimate> {
    if query.q.is_one() {
        return Err(NormError::UnsupportedExponent(
            "power iteration needs q > 1; use the vertex search at q = 1".into(),
        ));
    }
    let mut x = normalize(x0, query.q)
        .ok_or_else(|| NormError::PreconditionViolation("x0 must have ‖x0‖_q > 0".into()))?;
    let q_dual = query.q_conjugate();

    let mut best_value = f64::NEG_INFINITY;
    let mut best_x = x.clone();
    let mut prev_value = f64::NEG_INFINITY;
    let mut converged = false;
    let mut iterations = 0usize;

    for iter in 0..config.max_iters {
        iterations = iter + 1;
        let y = a.apply(&x)?;
        let value = vector_norm(&y, query.r);
        if value > best_value {
            best_value = value;
            best_x = x.clone();
        }
        if value == 0.0 {
            // A x = 0: restart from a deterministically perturbed point
            let mut perturbed = x.clone();
            for (i, v) in perturbed.iter_mut().enumerate() {
                *v += 1.0 + (i as f64 + 1.0).sqrt();
            }
            x = match normalize(&perturbed, query.q) {
                Some(x) => x,
                None => break,
            };
            continue;
        }
        if prev_value.is_finite() && (value - prev_value).abs() <= config.conv_tol * value.max(1e-300)
        {
            converged = true;
            break;
        }
        prev_value = value;

        let z = a.apply_transpose(&dual_map(&y, query.r))?;
        let w = dual_map(&z, q_dual);
        x = match normalize(&w, query.q) {
            Some(x) => x,
            None => break, // stationary at a kernel point: keep the best seen
        };
    }

    OracleEstimate::from_candidate(a, query, best_x, iterations, 1, converged, config.seed)
}

/// Derives an independent per-restart stream from the base seed
/// (SplitMix64 finalizer, counter-keyed).
fn restart_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    ChaCha8Rng::seed_from_u64(z ^ (z >> 31))
}

fn lex_smaller(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Best power-iteration estimate over the deterministic starts (basis
/// vectors, uniform, alternating) plus `restarts` seeded random starts.
/// Deterministic for a fixed seed; results merge by value, then by
/// lexicographically smallest candidate, so any evaluation order gives the
/// same output.
pub fn multistart(a: &DenseMatrix, query: NormQuery, config: &OracleConfig) -> Result<OracleEstimate> {
    if config.restarts < 1 {
        return Err(NormError::PreconditionViolation(
            "need at least one restart".into(),
        ));
    }
    let n = a.cols();
    let mut starts: Vec<DenseVector> = Vec::with_capacity(n + 2 + config.restarts);
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        starts.push(e);
    }
    starts.push(vec![1.0; n]);
    starts.push((0..n).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect());
    for index in 0..config.restarts {
        let mut rng = restart_stream(config.seed, index as u64);
        // sign-symmetric Gaussian directions, q-normalized inside the run
        starts.push((0..n).map(|_| standard_normal(&mut rng)).collect());
    }

    let mut best: Option<OracleEstimate> = None;
    let mut iterations = 0usize;
    let restarts_used = starts.len();
    for start in &starts {
        let est = power_iteration(a, query, start, config)?;
        iterations += est.iterations_used;
        best = Some(match best {
            None => est,
            Some(cur) => {
                if est.value > cur.value
                    || (est.value == cur.value && lex_smaller(&est.candidate, &cur.candidate))
                {
                    est
                } else {
                    cur
                }
            }
        });
    }
    let mut best = best.expect("at least one start");
    best.iterations_used = iterations;
    best.restarts_used = restarts_used;
    Ok(best)
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen::<f64>();
        let v: f64 = rng.gen::<f64>();
        if u > f64::MIN_POSITIVE {
            let z = (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
            if z.is_finite() {
                return z;
            }
        }
    }
}

/// Angle vector to a direction on the sphere (1 angle for n = 2, polar +
/// azimuth for n = 3).
fn direction(angles: &[f64]) -> DenseVector {
    match angles.len() {
        1 => vec![angles[0].cos(), angles[0].sin()],
        _ => {
            let (theta, phi) = (angles[0], angles[1]);
            vec![
                theta.sin() * phi.cos(),
                theta.sin() * phi.sin(),
                theta.cos(),
            ]
        }
    }
}

/// Exhaustive angular grid over the q-sphere for `n ≤ 3`, followed by two
/// local refinement sweeps around the best coarse cells: a certified lower
/// bound (every evaluated point is feasible) whose resolution is the coarse
/// step divided by `grid_points` per refinement level — fine enough to
/// resolve vertex maximizers of pointy balls, where the objective is only
/// first-order flat in the angles.
pub fn grid_lower_bound(
    a: &DenseMatrix,
    query: NormQuery,
    config: &OracleConfig,
) -> Result<OracleEstimate> {
    let n = a.cols();
    if n > 3 {
        return Err(NormError::UnsupportedDimension(format!(
            "grid search supports n <= 3, got {n}"
        )));
    }
    let k = config.grid_points.max(4);
    let mut evals = 0usize;

    if n == 1 {
        let best = if vector_norm(&a.apply(&[1.0])?, query.r)
            >= vector_norm(&a.apply(&[-1.0])?, query.r)
        {
            vec![1.0]
        } else {
            vec![-1.0]
        };
        return OracleEstimate::from_candidate(a, query, best, 2, 1, true, config.seed);
    }

    if query.q.is_inf() {
        // the ∞-sphere is the cube surface: grid each face directly, which
        // includes the corners exactly (an angular grid only has first-order
        // accuracy at them)
        let mut best_val = f64::NEG_INFINITY;
        let mut best_x: Option<DenseVector> = None;
        let mut consider = |x: &[f64]| -> Result<()> {
            if let Some(unit) = normalize(x, query.q) {
                let v = vector_norm(&a.apply(&unit)?, query.r);
                if v > best_val {
                    best_val = v;
                    best_x = Some(unit);
                }
            }
            Ok(())
        };
        let ticks: Vec<f64> = (0..k)
            .map(|i| -1.0 + 2.0 * i as f64 / (k - 1) as f64)
            .collect();
        for face in 0..n {
            for sign in [1.0f64, -1.0] {
                match n {
                    2 => {
                        for &t in &ticks {
                            let mut x = vec![0.0; 2];
                            x[face] = sign;
                            x[1 - face] = t;
                            consider(&x)?;
                            evals += 1;
                        }
                    }
                    _ => {
                        let others: Vec<usize> = (0..3).filter(|&d| d != face).collect();
                        for &t in &ticks {
                            for &s in &ticks {
                                let mut x = vec![0.0; 3];
                                x[face] = sign;
                                x[others[0]] = t;
                                x[others[1]] = s;
                                consider(&x)?;
                                evals += 1;
                            }
                        }
                    }
                }
            }
        }
        let candidate = best_x
            .ok_or_else(|| NormError::NumericalError("grid produced no feasible point".into()))?;
        return OracleEstimate::from_candidate(a, query, candidate, evals, 1, true, config.seed);
    }

    let dims = n - 1;
    // keep the best few coarse cells and refine each of them
    const KEEP: usize = 3;
    let mut top: Vec<(f64, Vec<f64>)> = Vec::new();
    {
        let mut consider = |angles: &[f64]| -> Result<()> {
            if let Some(unit) = normalize(&direction(angles), query.q) {
                let v = vector_norm(&a.apply(&unit)?, query.r);
                if top.len() < KEEP {
                    top.push((v, angles.to_vec()));
                    top.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite"));
                } else if v > top[KEEP - 1].0 {
                    top[KEEP - 1] = (v, angles.to_vec());
                    top.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite"));
                }
            }
            Ok(())
        };
        if dims == 1 {
            for i in 0..k {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                consider(&[theta])?;
                evals += 1;
            }
        } else {
            for i in 0..k {
                let theta = std::f64::consts::PI * i as f64 / (k - 1) as f64;
                for j in 0..k {
                    let phi = 2.0 * std::f64::consts::PI * j as f64 / k as f64;
                    consider(&[theta, phi])?;
                    evals += 1;
                }
            }
        }
    }

    let coarse_step = if dims == 1 {
        2.0 * std::f64::consts::PI / k as f64
    } else {
        std::f64::consts::PI / (k - 1) as f64
    };
    let mut best_val = f64::NEG_INFINITY;
    let mut best_x: Option<DenseVector> = None;
    for (_, seed_angles) in &top {
        // re-centering pattern sweeps: the window only shrinks when the
        // incumbent is strictly interior, so the search can track the
        // ridges that vertex maximizers of pointy balls produce
        const POINTS: usize = 32;
        let mut center = seed_angles.clone();
        let mut step = coarse_step;
        for _sweep in 0..40 {
            let mut local_best = (f64::NEG_INFINITY, center.clone(), vec![0usize; dims]);
            let mut probe = |idx: &[usize]| -> Result<()> {
                let angles: Vec<f64> = idx
                    .iter()
                    .zip(&center)
                    .map(|(&i, &c)| c - step + 2.0 * step * i as f64 / POINTS as f64)
                    .collect();
                if let Some(unit) = normalize(&direction(&angles), query.q) {
                    let v = vector_norm(&a.apply(&unit)?, query.r);
                    if v > local_best.0 {
                        local_best = (v, angles, idx.to_vec());
                    }
                }
                Ok(())
            };
            if dims == 1 {
                for i in 0..=POINTS {
                    probe(&[i])?;
                    evals += 1;
                }
            } else {
                for i in 0..=POINTS {
                    for j in 0..=POINTS {
                        probe(&[i, j])?;
                        evals += 1;
                    }
                }
            }
            let interior = local_best.2.iter().all(|&i| i > 0 && i < POINTS);
            center = local_best.1.clone();
            if interior {
                step *= 2.0 / POINTS as f64;
            }
            if step < 1e-9 {
                break;
            }
        }
        if let Some(unit) = normalize(&direction(&center), query.q) {
            let v = vector_norm(&a.apply(&unit)?, query.r);
            if v > best_val {
                best_val = v;
                best_x = Some(unit);
            }
        }
    }

    let candidate = best_x
        .ok_or_else(|| NormError::NumericalError("grid produced no feasible point".into()))?;
    OracleEstimate::from_candidate(a, query, candidate, evals, 1, true, config.seed)
}

/// Exact maximization over the extreme points of the 1-ball: evaluates
/// `‖A e_j‖_r` for every column. Exact for `q = 1`.
pub fn vertex_search_q1(a: &DenseMatrix, r: Exponent) -> OracleEstimate {
    let mut best = 0usize;
    let mut best_val = f64::NEG_INFINITY;
    for j in 0..a.cols() {
        let v = vector_norm(&a.column(j), r);
        if v > best_val {
            best = j;
            best_val = v;
        }
    }
    let mut candidate = vec![0.0; a.cols()];
    candidate[best] = 1.0;
    OracleEstimate {
        value: best_val,
        candidate,
        iterations_used: a.cols(),
        restarts_used: 1,
        converged: true,
        seed: 0,
    }
}

/// The estimate route a generic caller wants: the vertex search when
/// `q = 1`, the seeded multistart otherwise.
pub fn best_estimate(
    a: &DenseMatrix,
    query: NormQuery,
    config: &OracleConfig,
) -> Result<OracleEstimate> {
    if query.q.is_one() {
        Ok(vertex_search_q1(a, query.r))
    } else {
        multistart(a, query, config)
    }
}
