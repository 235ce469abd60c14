//! Matrices given by an aligned singular value decomposition `A = V Σ Uᵀ`
//! whose leading right singular vector is a scaled sign pattern `τ/√n` and
//! whose leading left singular vector is `e₁`. On that class
//! `‖A‖_{q→r} = σ₁ n^{(q−2)/(2q)}` for `q, r ≥ 2`.

use crate::detect::{is_orthonormal, EPS_DETECT, EPS_ORTH};
use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{DenseMatrix, DenseVector};

use super::certificate::{certified, ClassCertificate, ExactResult};
use super::orthonormal::{inv_q_scale, sign_row_scale};

/// An aligned SVD witness: `V`, descending singular values, `U`, and the
/// sign pattern `τ` carried by the first column of `U`.
#[derive(Debug, Clone)]
pub struct SvdClassSpec {
    pub v: DenseMatrix,
    pub sigma: DenseVector,
    pub u: DenseMatrix,
    pub tau: DenseVector,
}

impl SvdClassSpec {
    pub fn new(
        v: DenseMatrix,
        sigma: DenseVector,
        u: DenseMatrix,
        tau: DenseVector,
    ) -> Result<Self> {
        let spec = SvdClassSpec { v, sigma, u, tau };
        spec.validate()?;
        Ok(spec)
    }

    /// Dimension of the input space.
    pub fn n(&self) -> usize {
        self.u.rows()
    }

    pub fn sigma1(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.u.rows();
        let m = self.v.rows();
        if self.u.cols() != n || self.v.cols() != m {
            return Err(NormError::NotInClass("U and V must be square".into()));
        }
        if self.sigma.len() != n.min(m) {
            return Err(NormError::NotInClass(format!(
                "need {} singular values, got {}",
                n.min(m),
                self.sigma.len()
            )));
        }
        if self.tau.len() != n || self.tau.iter().any(|&t| t != 1.0 && t != -1.0) {
            return Err(NormError::NotInClass(
                "tau must be a ±1 pattern of length n".into(),
            ));
        }
        if !is_orthonormal(&self.u, EPS_ORTH) || !is_orthonormal(&self.v, EPS_ORTH) {
            return Err(NormError::NotInClass("U and V must be orthonormal".into()));
        }
        let scale = 1.0 / (n as f64).sqrt();
        for i in 0..n {
            if (self.u.get(i, 0) - self.tau[i] * scale).abs() > EPS_DETECT {
                return Err(NormError::NotInClass(
                    "first column of U must equal tau/sqrt(n)".into(),
                ));
            }
        }
        for i in 0..m {
            let expect = if i == 0 { 1.0 } else { 0.0 };
            if (self.v.get(i, 0) - expect).abs() > EPS_DETECT {
                return Err(NormError::NotInClass(
                    "first column of V must equal e1".into(),
                ));
            }
        }
        let s1 = self.sigma1();
        if self
            .sigma
            .iter()
            .any(|&s| s < 0.0 || s > s1 + 1e-15 * s1.abs())
        {
            return Err(NormError::NotInClass(
                "singular values must be nonnegative with the first one largest".into(),
            ));
        }
        Ok(())
    }

    /// Materializes `A = V Σ Uᵀ`.
    pub fn assemble(&self) -> Result<DenseMatrix> {
        let m = self.v.rows();
        let n = self.u.rows();
        let mut sigma = vec![0.0; m * n];
        for (i, &s) in self.sigma.iter().enumerate() {
            sigma[i * n + i] = s;
        }
        let sigma = DenseMatrix::new(m, n, sigma)?;
        self.v.matmul(&sigma)?.matmul(&self.u.transpose())
    }
}

/// `‖V Σ Uᵀ‖_{q→r} = σ₁ n^{(q−2)/(2q)}`, attained at `n^{−1/q} τ`.
pub fn svd_class_norm(spec: &SvdClassSpec, query: NormQuery) -> Result<ExactResult> {
    if query.q < Exponent::TWO || query.r < Exponent::TWO {
        return Err(NormError::NotInClass(
            "aligned-SVD value is certified for q >= 2 and r >= 2 only".into(),
        ));
    }
    spec.validate()?;
    let a = spec.assemble()?;
    let n = spec.n();
    let value = spec.sigma1() * sign_row_scale(n, query.q);
    let scale = inv_q_scale(n, query.q);
    let maximizer: DenseVector = spec.tau.iter().map(|&t| scale * t).collect();
    certified(
        &a,
        query,
        value,
        maximizer,
        ClassCertificate::SvdClass { spec: spec.clone() },
        "svd-class",
    )
}
