//! Thin wrappers over nalgebra's dense SVD for the small matrices this crate
//! works with.

use nalgebra::DMatrix;

use crate::matrix::{DenseMatrix, DenseVector};

fn to_na(a: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_iterator(a.rows(), a.cols(), a.entries().iter().copied())
}

/// Singular values in descending order.
pub fn singular_values(a: &DenseMatrix) -> DenseVector {
    let mut sv: Vec<f64> = to_na(a).svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("singular values are finite"));
    sv
}

/// Largest singular value, i.e. the `2 → 2` induced norm.
pub fn sigma_max(a: &DenseMatrix) -> f64 {
    singular_values(a).first().copied().unwrap_or(0.0)
}

/// Leading singular triple `(σ₁, u₁, v₁)` plus `σ₂` (0 for rank-one shapes),
/// used by rank-one detection.
pub fn leading_triple(a: &DenseMatrix) -> (f64, DenseVector, DenseVector, f64) {
    let svd = to_na(a).svd(true, true);
    let u = svd.u.as_ref().expect("u requested");
    let vt = svd.v_t.as_ref().expect("v_t requested");
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&i, &j| sv[j].partial_cmp(&sv[i]).expect("finite"));
    let first = order[0];
    let sigma1 = sv[first];
    let sigma2 = order.get(1).map(|&i| sv[i]).unwrap_or(0.0);
    let u1: DenseVector = u.column(first).iter().copied().collect();
    let v1: DenseVector = vt.row(first).iter().copied().collect();
    (sigma1, u1, v1, sigma2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_of_shear() {
        // σ_max([[1,1],[0,1]]) is the golden ratio
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((sigma_max(&a) - phi).abs() < 1e-12);
    }

    #[test]
    fn singular_values_sorted() {
        let a = DenseMatrix::from_diagonal(&[1.0, 3.0, 2.0]).unwrap();
        assert_eq!(singular_values(&a), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn leading_triple_of_outer_product() {
        let a = DenseMatrix::from_rows(&[vec![3.0, 4.0], vec![6.0, 8.0]]).unwrap();
        let (s1, u1, v1, s2) = leading_triple(&a);
        assert!((s1 - (5.0 * 5f64.sqrt())).abs() < 1e-10);
        assert!(s2.abs() < 1e-12);
        // u ∝ (1,2)/√5, v ∝ (3,4)/5 up to a joint sign
        let ratio = u1[1] / u1[0];
        assert!((ratio - 2.0).abs() < 1e-10);
        let ratio = v1[1] / v1[0];
        assert!((ratio - 4.0 / 3.0).abs() < 1e-10);
    }
}
