//! Orthogonal transformations with compensating diagonal scalings.
//!
//! For an orthonormal `U` and any row index `i`, scaling column `j` by
//! `|u_{ij}|^{(q−2)/q}` produces a matrix with `‖UΛ‖_{q→r} = 1` for
//! `q, r ≥ 2`: the scaled image of `x_j = |u_{ij}|^{2/q} sgn(u_{ij})` is the
//! standard basis vector `e_i`.
//!
//! The second form works the same compensation into an SVD-like product
//! `A = U Σ V Σ_V` with `Σ_V` built from the first row of `V`, where the
//! value is the largest absolute diagonal entry of `Σ`.

use crate::detect::{is_orthonormal, EPS_DETECT, EPS_ORTH};
use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{DenseMatrix, DenseVector};

use super::certificate::{certified, ClassCertificate, ExactResult};
use crate::sgn;

/// `|u|^{(q−2)/q}` with the `q = ∞` limit `|u|`.
fn lambda_weight(u: f64, q: Exponent) -> f64 {
    match q {
        Exponent::Inf => u.abs(),
        Exponent::Finite(2.0) => 1.0,
        Exponent::Finite(qv) => u.abs().powf((qv - 2.0) / qv),
    }
}

/// `|u|^{2/q} sgn(u)` with the `q = ∞` limit `sgn(u)`.
fn maximizer_entry(u: f64, q: Exponent) -> f64 {
    match q {
        Exponent::Inf => sgn(u),
        Exponent::Finite(qv) => {
            if u == 0.0 {
                0.0
            } else {
                u.abs().powf(2.0 / qv) * sgn(u)
            }
        }
    }
}

/// An orthonormal matrix, a distinguished row, and the compensating
/// diagonal `Λ` built from that row for a specific `q`.
#[derive(Debug, Clone)]
pub struct ScaledOrthogonalSpec {
    pub u: DenseMatrix,
    pub row_index: usize,
    pub lambda: DenseVector,
    /// The exponent the scaling was built for.
    pub q: Exponent,
}

impl ScaledOrthogonalSpec {
    pub fn new(u: DenseMatrix, row_index: usize, q: Exponent) -> Result<Self> {
        if u.rows() != u.cols() {
            return Err(NormError::NotInClass(
                "scaled orthogonal transform is square".into(),
            ));
        }
        if !is_orthonormal(&u, EPS_ORTH) {
            return Err(NormError::NotInClass("U is not orthonormal".into()));
        }
        if row_index >= u.rows() {
            return Err(NormError::PreconditionViolation(format!(
                "row index {row_index} out of range"
            )));
        }
        let lambda = u.row(row_index).iter().map(|&v| lambda_weight(v, q)).collect();
        Ok(ScaledOrthogonalSpec {
            u,
            row_index,
            lambda,
            q,
        })
    }

    /// Materializes `A = U Λ`.
    pub fn assemble(&self) -> Result<DenseMatrix> {
        let n = self.u.rows();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(self.u.get(i, j) * self.lambda[j]);
            }
        }
        DenseMatrix::new(n, n, data)
    }
}

/// `‖UΛ‖_{q→r} = 1` for `q, r ≥ 2`.
pub fn scaled_orthogonal_norm(spec: &ScaledOrthogonalSpec, query: NormQuery) -> Result<ExactResult> {
    if query.q < Exponent::TWO || query.r < Exponent::TWO {
        return Err(NormError::NotInClass(
            "scaled orthogonal value is certified for q >= 2 and r >= 2 only".into(),
        ));
    }
    if query.q != spec.q {
        return Err(NormError::PreconditionViolation(format!(
            "scaling was built for q = {}, query has q = {}",
            spec.q, query.q
        )));
    }
    let a = spec.assemble()?;
    let maximizer: DenseVector = spec
        .u
        .row(spec.row_index)
        .iter()
        .map(|&v| maximizer_entry(v, query.q))
        .collect();
    certified(
        &a,
        query,
        1.0,
        maximizer,
        ClassCertificate::ScaledOrthogonal { spec: spec.clone() },
        "scaled-orthogonal",
    )
}

/// A product `A = U Σ V Σ_V` with `U` orthogonal (first column `e₁`), `Σ`
/// diagonal with its largest-magnitude entry leading, `V` orthogonal with a
/// zero-free first row, and `Σ_V = diag(|v_{1j}|^{(q−2)/q})`.
#[derive(Debug, Clone)]
pub struct OrthogonalSvdSpec {
    pub u: DenseMatrix,
    pub sigma: DenseVector,
    pub v: DenseMatrix,
    pub sigma_v: DenseVector,
    /// The exponent the scaling was built for.
    pub q: Exponent,
}

impl OrthogonalSvdSpec {
    pub fn new(u: DenseMatrix, sigma: DenseVector, v: DenseMatrix, q: Exponent) -> Result<Self> {
        if u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows() {
            return Err(NormError::NotInClass(
                "rectangular factors are not certified; use square U, V of equal size".into(),
            ));
        }
        let n = u.rows();
        if sigma.len() != n {
            return Err(NormError::ShapeMismatch(format!(
                "need {n} diagonal entries, got {}",
                sigma.len()
            )));
        }
        if !is_orthonormal(&u, EPS_ORTH) || !is_orthonormal(&v, EPS_ORTH) {
            return Err(NormError::NotInClass("U and V must be orthonormal".into()));
        }
        for i in 0..n {
            let expect = if i == 0 { 1.0 } else { 0.0 };
            if (u.get(i, 0) - expect).abs() > EPS_DETECT {
                return Err(NormError::NotInClass(
                    "first column of U must equal e1".into(),
                ));
            }
        }
        let lead = sigma[0].abs();
        if sigma.iter().any(|s| s.abs() > lead * (1.0 + 1e-15) + f64::MIN_POSITIVE) {
            return Err(NormError::NotInClass(
                "largest |diagonal| entry of Sigma must come first".into(),
            ));
        }
        if let Some(j) = v.row(0).iter().position(|&x| x == 0.0) {
            return Err(NormError::SingularScaling(format!(
                "v_1{j} = 0 makes the compensating diagonal singular"
            )));
        }
        let sigma_v = v.row(0).iter().map(|&x| lambda_weight(x, q)).collect();
        Ok(OrthogonalSvdSpec {
            u,
            sigma,
            v,
            sigma_v,
            q,
        })
    }

    pub fn lambda_max(&self) -> f64 {
        self.sigma.iter().fold(0.0f64, |m, s| m.max(s.abs()))
    }

    /// Materializes `A = U Σ V Σ_V`.
    pub fn assemble(&self) -> Result<DenseMatrix> {
        let sigma = DenseMatrix::from_diagonal(&self.sigma)?;
        let sigma_v = DenseMatrix::from_diagonal(&self.sigma_v)?;
        self.u.matmul(&sigma)?.matmul(&self.v)?.matmul(&sigma_v)
    }
}

/// `‖U Σ V Σ_V‖_{q→r} = max_i |Σ_ii|` for `q, r ≥ 2`, attained at
/// `x*_j = |v_{1j}|^{2/q} sgn(v_{1j})`.
pub fn orthogonal_svd_norm(spec: &OrthogonalSvdSpec, query: NormQuery) -> Result<ExactResult> {
    if query.q < Exponent::TWO || query.r < Exponent::TWO {
        return Err(NormError::NotInClass(
            "orthogonal-SVD value is certified for q >= 2 and r >= 2 only".into(),
        ));
    }
    if query.q != spec.q {
        return Err(NormError::PreconditionViolation(format!(
            "scaling was built for q = {}, query has q = {}",
            spec.q, query.q
        )));
    }
    let a = spec.assemble()?;
    let maximizer: DenseVector = spec
        .v
        .row(0)
        .iter()
        .map(|&x| maximizer_entry(x, query.q))
        .collect();
    certified(
        &a,
        query,
        spec.lambda_max(),
        maximizer,
        ClassCertificate::OrthogonalSvd { spec: spec.clone() },
        "orthogonal-svd",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::normalized_hadamard;
    use crate::matrix::vector_norm;

    fn e(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    #[test]
    fn identity_row_one() {
        // U = I, row 0, q = 4: Λ = diag(1, 0, ...), A = e₁e₁ᵀ, value 1
        let spec = ScaledOrthogonalSpec::new(DenseMatrix::identity(3), 0, e(4.0)).unwrap();
        let a = spec.assemble().unwrap();
        assert_eq!(a.get(0, 0), 1.0);
        assert_eq!(a.get(1, 1), 0.0);
        let r = scaled_orthogonal_norm(&spec, NormQuery::new(e(4.0), e(2.0))).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn hadamard_scaling_is_one() {
        let u = normalized_hadamard(2).unwrap();
        let spec = ScaledOrthogonalSpec::new(u, 0, e(4.0)).unwrap();
        let query = NormQuery::new(e(4.0), e(2.0));
        let r = scaled_orthogonal_norm(&spec, query).unwrap();
        assert_eq!(r.value, 1.0);
        // ‖x*‖_q^q = Σ |u_{ij}|² = 1 for a row of an orthonormal matrix
        assert!((vector_norm(&r.maximizer, query.q) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn q_inf_limits() {
        // at q = inf the scaling weights are |u_ij| and the maximizer is
        // the sign pattern of the distinguished row
        let u = normalized_hadamard(2).unwrap();
        let spec = ScaledOrthogonalSpec::new(u.clone(), 1, Exponent::INF).unwrap();
        let r = scaled_orthogonal_norm(&spec, NormQuery::new(Exponent::INF, e(2.0))).unwrap();
        assert_eq!(r.value, 1.0);
        assert!(r.maximizer.iter().all(|&x| x.abs() == 1.0));

        let spec = OrthogonalSvdSpec::new(
            DenseMatrix::identity(2),
            vec![-3.0, 1.0],
            u,
            Exponent::INF,
        )
        .unwrap();
        let r = orthogonal_svd_norm(&spec, NormQuery::new(Exponent::INF, e(3.0))).unwrap();
        assert!((r.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn scaled_rejects_non_orthonormal() {
        let bad = DenseMatrix::from_diagonal(&[1.0, 0.999]).unwrap();
        assert!(ScaledOrthogonalSpec::new(bad, 0, e(4.0)).is_err());
    }

    #[test]
    fn orthogonal_svd_value_is_leading_sigma() {
        let v = normalized_hadamard(2).unwrap();
        let spec =
            OrthogonalSvdSpec::new(DenseMatrix::identity(2), vec![2.0, 1.0], v, e(4.0)).unwrap();
        let r = orthogonal_svd_norm(&spec, NormQuery::new(e(4.0), e(2.0))).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_svd_sign_flip_invariance() {
        let v = normalized_hadamard(2).unwrap();
        let plus =
            OrthogonalSvdSpec::new(DenseMatrix::identity(2), vec![2.0, 1.0], v.clone(), e(4.0))
                .unwrap();
        let minus =
            OrthogonalSvdSpec::new(DenseMatrix::identity(2), vec![-2.0, 1.0], v, e(4.0)).unwrap();
        let q = NormQuery::new(e(4.0), e(2.0));
        let a = orthogonal_svd_norm(&plus, q).unwrap().value;
        let b = orthogonal_svd_norm(&minus, q).unwrap().value;
        assert_eq!(a, b);
    }

    #[test]
    fn orthogonal_svd_rejects_zero_first_row_entry() {
        // V = I has zero entries in its first row for n >= 2
        let err = OrthogonalSvdSpec::new(
            DenseMatrix::identity(2),
            vec![1.0, 1.0],
            DenseMatrix::identity(2),
            e(4.0),
        );
        assert!(matches!(err, Err(NormError::SingularScaling(_))));
    }

    #[test]
    fn orthogonal_svd_rejects_misplaced_maximum() {
        let v = normalized_hadamard(2).unwrap();
        assert!(OrthogonalSvdSpec::new(
            DenseMatrix::identity(2),
            vec![1.0, 2.0],
            v,
            e(4.0)
        )
        .is_err());
    }
}
