//! Exact `q → r` norm of a rank-one matrix `A = u vᵀ`: the value factors as
//! `‖u‖_r · ‖v‖_{q*}` by Hölder duality on the inner product `vᵀx`.

use crate::error::Result;
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{vector_norm, DenseMatrix, DenseVector};

use super::certificate::{certified, ClassCertificate, ExactResult};
use crate::sgn;

/// The factors of a rank-one matrix `A = u vᵀ`.
#[derive(Debug, Clone)]
pub struct RankOneFactors {
    pub u: DenseVector,
    pub v: DenseVector,
}

impl RankOneFactors {
    pub fn new(u: DenseVector, v: DenseVector) -> Self {
        RankOneFactors { u, v }
    }

    /// Materializes `u vᵀ`.
    pub fn assemble(&self) -> Result<DenseMatrix> {
        let mut data = Vec::with_capacity(self.u.len() * self.v.len());
        for &ui in &self.u {
            for &vj in &self.v {
                data.push(ui * vj);
            }
        }
        DenseMatrix::new(self.u.len(), self.v.len(), data)
    }
}

/// Hölder-equality maximizer of `vᵀx` over the unit q-ball.
pub(crate) fn dual_alignment(v: &[f64], q: Exponent) -> DenseVector {
    match q {
        // q* = ∞: the argmax unit vector, smallest index on ties
        _ if q.is_one() => {
            let mut best = 0usize;
            for (i, x) in v.iter().enumerate() {
                if x.abs() > v[best].abs() {
                    best = i;
                }
            }
            let mut x = vec![0.0; v.len()];
            x[best] = sgn(v[best]);
            if x[best] == 0.0 {
                x[best] = 1.0;
            }
            x
        }
        // q* = 1: the sign vector, a corner of the ∞-ball
        Exponent::Inf => v.iter().map(|&x| sgn(x)).collect(),
        Exponent::Finite(qv) => {
            let qs = q.conjugate().value();
            let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if m == 0.0 {
                let mut x = vec![0.0; v.len()];
                x[0] = 1.0;
                return x;
            }
            // x_i = sgn(v_i)|v_i|^{q*-1} / (Σ|v_i|^{q*})^{1/q}, factored by
            // max|v_i| (the scale factors cancel exactly)
            let sum: f64 = v.iter().map(|x| (x.abs() / m).powf(qs)).sum();
            let denom = sum.powf(1.0 / qv);
            v.iter()
                .map(|&x| sgn(x) * (x.abs() / m).powf(qs - 1.0) / denom)
                .collect()
        }
    }
}

/// `‖u vᵀ‖_{q→r} = ‖u‖_r ‖v‖_{q*}` with the dual-alignment maximizer.
///
/// ```
/// use opnorm::{rank_one_norm, Exponent, NormQuery, RankOneFactors};
///
/// let f = RankOneFactors::new(vec![1.0, 1.0], vec![1.0, 1.0]);
/// let q22 = NormQuery::new(Exponent::TWO, Exponent::TWO);
/// assert!((rank_one_norm(&f, q22).unwrap().value - 2.0).abs() < 1e-12);
/// ```
pub fn rank_one_norm(factors: &RankOneFactors, query: NormQuery) -> Result<ExactResult> {
    let matrix = factors.assemble()?;
    let certificate = ClassCertificate::RankOne {
        factors: factors.clone(),
    };
    let u_zero = factors.u.iter().all(|&x| x == 0.0);
    let v_zero = factors.v.iter().all(|&x| x == 0.0);
    if u_zero || v_zero {
        let mut x = vec![0.0; factors.v.len()];
        x[0] = 1.0;
        return certified(&matrix, query, 0.0, x, certificate, "rank-one");
    }
    let value = vector_norm(&factors.u, query.r) * vector_norm(&factors.v, query.q_conjugate());
    let maximizer = dual_alignment(&factors.v, query.q);
    certified(&matrix, query, value, maximizer, certificate, "rank-one")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    #[test]
    fn unit_outer_product() {
        let f = RankOneFactors::new(vec![1.0, 0.0], vec![0.0, 1.0]);
        let r = rank_one_norm(&f, NormQuery::new(e(2.0), e(2.0))).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn matches_spectral_norm_of_outer_product() {
        // σ_max(u vᵀ) = ‖u‖₂‖v‖₂, checked against the dense SVD in the
        // detect module's tests
        let f = RankOneFactors::new(vec![1.0, 1.0], vec![1.0, 1.0]);
        let r = rank_one_norm(&f, NormQuery::new(e(2.0), e(2.0))).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn q_one_uses_argmax_vertex() {
        // ‖u‖₂ ‖v‖_∞ = 3 · 4; independent route: max scaled column norm
        let f = RankOneFactors::new(vec![1.0, 2.0, 2.0], vec![3.0, 4.0]);
        let r = rank_one_norm(&f, NormQuery::new(e(1.0), e(2.0))).unwrap();
        assert!((r.value - 12.0).abs() < 1e-12);
        assert_eq!(r.maximizer, vec![0.0, 1.0]);
    }

    #[test]
    fn q_inf_uses_sign_vector() {
        let f = RankOneFactors::new(vec![1.0], vec![1.0, -2.0, 0.0]);
        let r = rank_one_norm(&f, NormQuery::new(Exponent::INF, e(2.0))).unwrap();
        assert!((r.value - 3.0).abs() < 1e-14);
        assert_eq!(r.maximizer, vec![1.0, -1.0, 0.0]);
    }

    #[test]
    fn zero_factor_gives_zero() {
        let f = RankOneFactors::new(vec![0.0, 0.0], vec![1.0, 2.0]);
        let r = rank_one_norm(&f, NormQuery::new(e(2.0), e(3.0))).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn general_exponents_feasible() {
        let f = RankOneFactors::new(vec![0.3, -1.7, 2.2], vec![0.9, 4.1, -0.2, 1.0]);
        for (qv, rv) in [(1.5, 2.0), (3.0, 1.2), (2.0, 2.0), (5.0, 4.0)] {
            let query = NormQuery::new(e(qv), e(rv));
            let r = rank_one_norm(&f, query).unwrap();
            assert!((vector_norm(&r.maximizer, query.q) - 1.0).abs() < 1e-12);
        }
    }
}
