//! Orthonormal matrices with a full sign row (Hadamard-type), and the
//! row-norm/spectral upper bound that is tight on that class.

use crate::detect::{is_orthonormal, EPS_DETECT, EPS_ORTH};
use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{vector_norm, DenseMatrix, DenseVector};
use crate::svd::sigma_max;

use super::certificate::{certified, ClassCertificate, ExactResult};

/// `n^{(q−2)/(2q)}`, with the `q = ∞` limit `n^{1/2}`.
pub(crate) fn sign_row_scale(n: usize, q: Exponent) -> f64 {
    let n = n as f64;
    match q {
        Exponent::Inf => n.sqrt(),
        Exponent::Finite(qv) => n.powf((qv - 2.0) / (2.0 * qv)),
    }
}

/// `n^{−1/q}`, with the `q = ∞` limit 1.
pub(crate) fn inv_q_scale(n: usize, q: Exponent) -> f64 {
    match q {
        Exponent::Inf => 1.0,
        Exponent::Finite(qv) => (n as f64).powf(-1.0 / qv),
    }
}

/// Finds a row whose entries all have magnitude `1/√n` and returns its index
/// with the sign pattern.
pub(crate) fn find_sign_row(a: &DenseMatrix, eps: f64) -> Option<(usize, DenseVector)> {
    let scale = 1.0 / (a.cols() as f64).sqrt();
    'rows: for i in 0..a.rows() {
        for &v in a.row(i) {
            if (v.abs() - scale).abs() > eps {
                continue 'rows;
            }
        }
        let tau = a.row(i).iter().map(|&v| v.signum()).collect();
        return Some((i, tau));
    }
    None
}

/// Exact norm of an orthonormal matrix with a row of entries `±1/√n`:
/// `‖A‖_{q→r} = n^{(q−2)/(2q)}` for `q, r ≥ 2`, attained at `n^{−1/q} τ`
/// where `τ` is the sign pattern of that row.
pub fn sign_row_orthonormal_norm(a: &DenseMatrix, query: NormQuery) -> Result<ExactResult> {
    if query.q < Exponent::TWO || query.r < Exponent::TWO {
        return Err(NormError::NotInClass(
            "sign-row orthonormal value is certified for q >= 2 and r >= 2 only".into(),
        ));
    }
    if !is_orthonormal(a, EPS_ORTH) {
        return Err(NormError::NotInClass("matrix is not orthonormal".into()));
    }
    let (row, tau) = find_sign_row(a, EPS_DETECT).ok_or_else(|| {
        NormError::NotInClass("no row with all entries of magnitude 1/sqrt(n)".into())
    })?;
    let n = a.cols();
    let value = sign_row_scale(n, query.q);
    let scale = inv_q_scale(n, query.q);
    let maximizer: DenseVector = tau.iter().map(|&t| scale * t).collect();
    certified(
        a,
        query,
        value,
        maximizer,
        ClassCertificate::SignRowOrthonormal { row, tau },
        "sign-row-orthonormal",
    )
}

/// Upper bound on `‖A‖_{q→r}` for `q, r ≥ 2`: the smaller of
/// `max_i ‖a_i‖₂^{(r−2)/r} σ_max^{2/r} n^{(q−2)/(2q)}` and
/// `max_i ‖a_i‖_p^{(r−2)/r} σ_max^{2/r} n^{(q−2)/(qr)}` with `p = q*`.
/// Tight on the sign-row orthonormal class.
pub fn hadamard_upper_bound(a: &DenseMatrix, query: NormQuery) -> Result<f64> {
    if query.q < Exponent::TWO || query.r < Exponent::TWO {
        return Err(NormError::UnsupportedExponent(
            "row-norm bound needs q >= 2 and r >= 2".into(),
        ));
    }
    let sigma = sigma_max(a);
    let n = a.cols() as f64;
    let p = query.q_conjugate();
    let max_row_2 = (0..a.rows())
        .map(|i| vector_norm(a.row(i), Exponent::TWO))
        .fold(0.0f64, f64::max);
    let max_row_p = (0..a.rows())
        .map(|i| vector_norm(a.row(i), p))
        .fold(0.0f64, f64::max);

    // exponents with their r = ∞ / q = ∞ limits
    let (row_pow, sigma_pow, cross_pow) = match query.r {
        Exponent::Inf => (1.0, 0.0, 0.0),
        Exponent::Finite(rv) => {
            let cross = match query.q {
                Exponent::Inf => 1.0 / rv,
                Exponent::Finite(qv) => (qv - 2.0) / (qv * rv),
            };
            ((rv - 2.0) / rv, 2.0 / rv, cross)
        }
    };
    let first = max_row_2.powf(row_pow) * sigma.powf(sigma_pow) * sign_row_scale(a.cols(), query.q);
    let second = max_row_p.powf(row_pow) * sigma.powf(sigma_pow) * n.powf(cross_pow);
    Ok(first.min(second))
}
