//! Upper bound on `‖A‖_{q→r}` for matrices whose first row has no zero
//! entries, built by splitting every other row against a rescaled copy of
//! the constraint vector.
//!
//! The free parameters `{p_i', q_i'}` (one conjugate pair per extra row,
//! `q_i' ≤ q`) make this a family of bounds; callers pick them, we do not
//! optimize over them.

use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{vector_norm, DenseMatrix};

use crate::sgn;

/// `true` when `1/a + 1/b = 1` within floating tolerance.
pub(crate) fn is_conjugate_pair(a: Exponent, b: Exponent) -> bool {
    match (a.conjugate(), b) {
        (Exponent::Inf, Exponent::Inf) => true,
        (Exponent::Finite(x), Exponent::Finite(y)) => (x - y).abs() <= 1e-12 * x.max(y).max(1.0),
        _ => false,
    }
}

/// Per-row splitting exponents derived from `(p_i', q_i', q)`.
pub(crate) struct RowSplit {
    /// `p_i'`.
    pub pp: f64,
    /// Exponent of the rescaling weights: `ã_j = |a_ij|^{pp/d}`.
    pub construction: f64,
    /// Exponent carried by the residual weight vector: `b_j = sgn(a_ij)|a_ij|^{e/d}`.
    pub residual: f64,
    /// The norm exponent `s_i = pp·e/d` applied to the raw row.
    pub s: f64,
    /// The per-row contribution exponent `t_i/r = pp/d` on `‖a_i‖_s`.
    pub t_over_r: f64,
}

impl RowSplit {
    pub(crate) fn new(p_prime: Exponent, q_prime: Exponent, q: Exponent) -> Result<RowSplit> {
        if !is_conjugate_pair(p_prime, q_prime) {
            return Err(NormError::PreconditionViolation(format!(
                "p'={p_prime} and q'={q_prime} are not Hölder conjugate"
            )));
        }
        if q_prime > q {
            return Err(NormError::PreconditionViolation(format!(
                "q'={q_prime} exceeds q={q}"
            )));
        }
        let pp = p_prime.value();
        // e = q'q/(q−q'): +inf when q' = q (plain Hölder on the row), and
        // the finite limit q' when q = inf
        let e = match (q_prime, q) {
            (a, b) if a == b => f64::INFINITY,
            (Exponent::Finite(qp), Exponent::Inf) => qp,
            (Exponent::Finite(qp), Exponent::Finite(qv)) => qp * qv / (qv - qp),
            (Exponent::Inf, _) => unreachable!("q' = inf forces q = inf, handled above"),
        };
        if e.is_infinite() {
            return Ok(RowSplit {
                pp,
                construction: 0.0,
                residual: 1.0,
                s: pp,
                t_over_r: 0.0,
            });
        }
        let d = pp + e;
        Ok(RowSplit {
            pp,
            construction: pp / d,
            residual: e / d,
            s: pp * e / d,
            t_over_r: pp / d,
        })
    }

    /// `p_i'` as an exponent for norm evaluation.
    pub(crate) fn pp_exponent(&self) -> Exponent {
        if self.pp.is_infinite() {
            Exponent::Inf
        } else {
            Exponent::Finite(self.pp)
        }
    }
}

/// Right-hand side of the row-splitting inequality:
/// `‖A‖_{q→r}^r ≤ ‖a₁‖_p^r + Σ_{i≥2} ‖b_i‖_{p_i'}^r ‖a_i‖_{s_i}^{t_i}`.
///
/// Always an upper bound on the true norm; tight exactly on the generated
/// power-row matrices (see [`super::vandermonde_norm`]).
pub fn nonzero_row_upper_bound(
    a: &DenseMatrix,
    query: NormQuery,
    p_prime: &[Exponent],
    q_prime: &[Exponent],
) -> Result<f64> {
    if a.row(0).contains(&0.0) {
        return Err(NormError::PreconditionViolation(
            "first row must have all entries non-zero".into(),
        ));
    }
    let extra = a.rows() - 1;
    if p_prime.len() != extra || q_prime.len() != extra {
        return Err(NormError::ShapeMismatch(format!(
            "need one (p', q') pair per extra row: {extra} rows, got {} / {}",
            p_prime.len(),
            q_prime.len()
        )));
    }
    let p = query.q_conjugate();
    let mut contributions = Vec::with_capacity(a.rows());
    contributions.push(vector_norm(a.row(0), p));
    for i in 1..a.rows() {
        let split = RowSplit::new(p_prime[i - 1], q_prime[i - 1], query.q)?;
        let row = a.row(i);
        let b: Vec<f64> = row
            .iter()
            .map(|&v| sgn(v) * v.abs().powf(split.residual))
            .collect();
        let weight = if split.t_over_r == 0.0 {
            1.0
        } else {
            let s = Exponent::new(split.s).map_err(|_| {
                NormError::ConstructionError(format!("row exponent s={} below 1", split.s))
            })?;
            vector_norm(row, s).powf(split.t_over_r)
        };
        contributions.push(vector_norm(&b, split.pp_exponent()) * weight);
    }
    // combining the per-row contributions in r-th power is itself an r-norm
    let bound = vector_norm(&contributions, query.r);
    if !bound.is_finite() {
        return Err(NormError::NumericalError(
            "row bound overflowed f64".into(),
        ));
    }
    Ok(bound)
}
