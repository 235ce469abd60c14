//! Exact `q → r` norm of a diagonal matrix.
//!
//! For `q ≤ r` the norm is `max |a_i|`, attained at a standard basis vector.
//! For `q > r` it is `(Σ |a_i|^{qr/(q−r)})^{1/r − 1/q}`, attained at an
//! interior point of the sphere. The two branches meet continuously at
//! `q = r`, which is routed to the max branch since the interior exponent
//! degenerates there.

use crate::error::Result;
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{DenseMatrix, DenseVector};

use super::certificate::{certified, ClassCertificate, ExactResult};

fn max_branch(a: &[f64]) -> (f64, DenseVector) {
    let mut best = 0usize;
    for (i, v) in a.iter().enumerate() {
        if v.abs() > a[best].abs() {
            best = i;
        }
    }
    let mut x = vec![0.0; a.len()];
    x[best] = 1.0;
    (a[best].abs(), x)
}

/// `‖diag(a)‖_{q→r}` with its maximizer.
///
/// ```
/// use opnorm::{diagonal_norm, Exponent, NormQuery};
///
/// let q23 = NormQuery::new(Exponent::TWO, Exponent::new(3.0).unwrap());
/// let r = diagonal_norm(&[3.0, -1.0, 2.0], q23).unwrap();
/// assert_eq!(r.value, 3.0);
/// assert_eq!(r.maximizer, vec![1.0, 0.0, 0.0]);
/// ```
pub fn diagonal_norm(a: &[f64], query: NormQuery) -> Result<ExactResult> {
    let matrix = DenseMatrix::from_diagonal(a)?;
    let certificate = ClassCertificate::Diagonal {
        entries: a.to_vec(),
    };
    let all_zero = a.iter().all(|&v| v == 0.0);

    let (value, maximizer) = if query.q <= query.r || all_zero {
        // includes q = r and the all-zero convention (value 0 at e_1)
        max_branch(a)
    } else {
        match (query.q, query.r) {
            (Exponent::Inf, r) => {
                // limit of the interior formula as q → ∞: value ‖a‖_r at a
                // corner of the ∞-ball supported on the nonzero entries
                let x: DenseVector = a
                    .iter()
                    .map(|&v| if v == 0.0 { 0.0 } else { 1.0 })
                    .collect();
                (crate::matrix::vector_norm(a, r), x)
            }
            (Exponent::Finite(q), Exponent::Finite(r)) => {
                // factored by max |a_i| so that the exponent qr/(q−r) can be
                // arbitrarily large without overflow
                let m = a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                let e = q * r / (q - r);
                let sum = crate::matrix::sorted_sum(a.iter().map(|v| (v.abs() / m).powf(e)));
                let value = m * sum.powf(1.0 / r - 1.0 / q);
                let x: DenseVector = a
                    .iter()
                    .map(|v| {
                        if *v == 0.0 {
                            0.0
                        } else {
                            (v.abs() / m).powf(r / (q - r)) / sum.powf(1.0 / q)
                        }
                    })
                    .collect();
                (value, x)
            }
            (Exponent::Finite(_), Exponent::Inf) => unreachable!("q > r rules out r = inf"),
        }
    };
    certified(&matrix, query, value, maximizer, certificate, "diagonal")
}
