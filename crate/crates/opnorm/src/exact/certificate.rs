//! Certified exact values: a norm value is only returned together with an
//! explicit feasible maximizer, and both are re-checked numerically before
//! the result leaves the constructor.

use crate::error::{NormError, Result};
use crate::exponent::NormQuery;
use crate::matrix::{vector_norm, DenseMatrix, DenseVector};

use super::{
    KRegularSpec, OrthogonalSvdSpec, RankOneFactors, ScaledOrthogonalSpec, SvdClassSpec,
    VandermondeSpec,
};

/// Relative feasibility tolerance for maximizer certificates.
pub const EPS_FEAS: f64 = 1e-9;

/// Which certified class licensed an exact value, with the data needed to
/// reproduce the construction.
#[derive(Debug, Clone)]
pub enum ClassCertificate {
    Diagonal {
        entries: DenseVector,
    },
    RankOne {
        factors: RankOneFactors,
    },
    Vandermonde {
        spec: VandermondeSpec,
    },
    SignRowOrthonormal {
        row: usize,
        tau: DenseVector,
    },
    SvdClass {
        spec: SvdClassSpec,
    },
    Shear {
        gamma: f64,
        lambda0: f64,
        n: usize,
    },
    CompositeShear {
        b_spec: SvdClassSpec,
        gamma: f64,
        xi: f64,
        b: DenseMatrix,
        c: DenseMatrix,
        assembled: DenseMatrix,
    },
    KRegular {
        spec: KRegularSpec,
    },
    ScaledOrthogonal {
        spec: ScaledOrthogonalSpec,
    },
    OrthogonalSvd {
        spec: OrthogonalSvdSpec,
    },
    OneToR {
        column: usize,
    },
}

impl ClassCertificate {
    /// Short lowercase tag used in result documents.
    pub fn kind(&self) -> &'static str {
        match self {
            ClassCertificate::Diagonal { .. } => "diagonal",
            ClassCertificate::RankOne { .. } => "rank-one",
            ClassCertificate::Vandermonde { .. } => "vandermonde",
            ClassCertificate::SignRowOrthonormal { .. } => "sign-row-orthonormal",
            ClassCertificate::SvdClass { .. } => "svd-class",
            ClassCertificate::Shear { .. } => "shear",
            ClassCertificate::CompositeShear { .. } => "composite-shear",
            ClassCertificate::KRegular { .. } => "k-regular",
            ClassCertificate::ScaledOrthogonal { .. } => "scaled-orthogonal",
            ClassCertificate::OrthogonalSvd { .. } => "orthogonal-svd",
            ClassCertificate::OneToR { .. } => "one-to-r",
        }
    }
}

/// An exact norm value together with its checkable evidence.
#[derive(Debug, Clone)]
pub struct ExactResult {
    /// The certified value of `‖A‖_{q→r}`.
    pub value: f64,
    /// A vector with `‖x*‖_q = 1` and `‖A x*‖_r = value`.
    pub maximizer: DenseVector,
    pub certificate: ClassCertificate,
    /// Tag naming the closed-form family the value came from.
    pub citation: &'static str,
}

/// Builds an [`ExactResult`] only if the maximizer actually certifies the
/// claimed value on the concrete matrix: `‖x*‖_q = 1` and `‖A x*‖_r = value`,
/// both within [`EPS_FEAS`] (relative for nonzero values).
pub(crate) fn certified(
    a: &DenseMatrix,
    query: NormQuery,
    value: f64,
    maximizer: DenseVector,
    certificate: ClassCertificate,
    citation: &'static str,
) -> Result<ExactResult> {
    if !value.is_finite() || value < 0.0 {
        return Err(NormError::NumericalError(format!(
            "norm value must be a nonnegative finite real, got {value}"
        )));
    }
    let feas = vector_norm(&maximizer, query.q);
    if (feas - 1.0).abs() > EPS_FEAS {
        return Err(NormError::CertificateMismatch {
            expected: 1.0,
            achieved: feas,
        });
    }
    let achieved = vector_norm(&a.apply(&maximizer)?, query.r);
    let ok = if value > 0.0 {
        (achieved - value).abs() <= EPS_FEAS * value
    } else {
        achieved <= 1e-12
    };
    if !ok {
        return Err(NormError::CertificateMismatch {
            expected: value,
            achieved,
        });
    }
    Ok(ExactResult {
        value,
        maximizer,
        certificate,
        citation,
    })
}
