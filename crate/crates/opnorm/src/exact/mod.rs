//! One operation per certified matrix class: exact `‖A‖_{q→r}` values with
//! explicit maximizers, re-validated numerically on every call.

mod certificate;
mod diagonal;
mod k_regular;
mod one_to_r;
mod orthonormal;
mod rank_one;
mod row_bound;
mod scaled;
mod shear;
mod svd_class;
mod vandermonde;

pub use certificate::{ClassCertificate, ExactResult, EPS_FEAS};
pub use diagonal::diagonal_norm;
pub use k_regular::{k_regular_norm, KRegularSpec};
pub use one_to_r::one_to_r_norm;
pub use orthonormal::{hadamard_upper_bound, sign_row_orthonormal_norm};
pub use rank_one::{rank_one_norm, RankOneFactors};
pub use row_bound::nonzero_row_upper_bound;
pub(crate) use orthonormal::find_sign_row;
pub use scaled::{
    orthogonal_svd_norm, scaled_orthogonal_norm, OrthogonalSvdSpec, ScaledOrthogonalSpec,
};
pub use shear::{composite_shear_norm, shear_matrix, shear_norm};
pub use svd_class::{svd_class_norm, SvdClassSpec};
pub use vandermonde::{
    vandermonde_alignment_defect, vandermonde_build, vandermonde_norm, VandermondeSpec,
};

use crate::detect::{detect, DetectionMatch};
use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::DenseMatrix;

/// Evaluates the exact operation a detection match points at.
pub fn exact_for_match(
    a: &DenseMatrix,
    m: &DetectionMatch,
    query: NormQuery,
) -> Result<ExactResult> {
    match m {
        DetectionMatch::Diagonal { entries } => diagonal_norm(entries, query),
        DetectionMatch::RankOne { factors } => rank_one_norm(factors, query),
        DetectionMatch::KRegular { spec } => {
            if query.q != query.r {
                return Err(NormError::UnsupportedExponent(
                    "k-regular values are certified for q = r only".into(),
                ));
            }
            k_regular_norm(spec, query.q)
        }
        DetectionMatch::SignRowOrthonormal { .. } => sign_row_orthonormal_norm(a, query),
        DetectionMatch::ScaledOrthogonal { spec } => scaled_orthogonal_norm(spec, query),
        DetectionMatch::OneToR => one_to_r_norm(a, query.r),
    }
}

/// Runs detection and dispatches to the first class whose exact formula
/// covers the query, in the fixed priority order.
pub fn exact_by_detection(a: &DenseMatrix, query: NormQuery) -> Result<ExactResult> {
    let report = detect(a, query);
    let mut last: Option<NormError> = None;
    for m in &report.matches {
        match exact_for_match(a, m, query) {
            Ok(result) => return Ok(result),
            Err(e @ (NormError::NotInClass(_) | NormError::UnsupportedExponent(_))) => {
                last = Some(e);
            }
            Err(other) => return Err(other),
        }
    }
    Err(last.unwrap_or_else(|| {
        NormError::NotInClass("no certified class matches this matrix".into())
    }))
}

/// Result of a bilinear-form evaluation routed through the induced norm.
#[derive(Debug, Clone)]
pub struct GrothendieckResult {
    pub value: f64,
    /// The induced-norm query the identity reduced the problem to.
    pub query: NormQuery,
    /// Human-readable record of the identity leg that was used.
    pub leg: String,
    pub exact: ExactResult,
}

/// The bilinear maximization `sup ⟨y, Ax⟩` over unit `p`- and `q`-spheres,
/// computed through the identity with the induced norm: it equals
/// `‖A‖_{q→p*}`.
pub fn grothendieck_value(
    a: &DenseMatrix,
    p: Exponent,
    q: Exponent,
) -> Result<GrothendieckResult> {
    let query = NormQuery::new(q, p.conjugate());
    let exact = exact_by_detection(a, query)?;
    Ok(GrothendieckResult {
        value: exact.value,
        query,
        leg: format!("G(p={p}, q={q}) evaluated as the induced {query} norm"),
        exact,
    })
}
