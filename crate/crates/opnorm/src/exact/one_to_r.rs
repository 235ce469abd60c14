//! `‖A‖_{1→r}` for arbitrary matrices: the 1-ball's extreme points are the
//! signed basis vectors, so the norm is the largest column r-norm.

use crate::error::Result;
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{vector_norm, DenseMatrix};

use super::certificate::{certified, ClassCertificate, ExactResult};

/// `‖A‖_{1→r} = max_j ‖c_j‖_r`, attained at the basis vector of the first
/// maximizing column.
///
/// ```
/// use opnorm::{one_to_r_norm, DenseMatrix, Exponent};
///
/// let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]).unwrap();
/// let r = one_to_r_norm(&a, Exponent::TWO).unwrap();
/// assert_eq!(r.value, 2.0);
/// assert_eq!(r.maximizer, vec![0.0, 1.0]);
/// ```
pub fn one_to_r_norm(a: &DenseMatrix, r: Exponent) -> Result<ExactResult> {
    let mut best = 0usize;
    let mut best_norm = f64::NEG_INFINITY;
    for j in 0..a.cols() {
        let norm = vector_norm(&a.column(j), r);
        if norm > best_norm {
            best = j;
            best_norm = norm;
        }
    }
    let mut x = vec![0.0; a.cols()];
    x[best] = 1.0;
    certified(
        a,
        NormQuery::new(Exponent::ONE, r),
        best_norm,
        x,
        ClassCertificate::OneToR { column: best },
        "one-to-r",
    )
}
