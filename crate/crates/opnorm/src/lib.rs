//! Exact induced `q → r` matrix norms for certified matrix classes, with
//! checkable maximizer certificates and independent numerical oracles.
//!
//! The induced norm `‖A‖_{q→r} = sup { ‖Ax‖_r : ‖x‖_q ≤ 1 }` measures the
//! worst-case amplification between two `ℓp` geometries. The underlying
//! maximization is non-convex and intractable in general, but for a family
//! of structured classes — diagonal, rank-one, power-row, sign-row
//! orthonormal, aligned-SVD, shear, k-regular, scaled-orthogonal, and every
//! matrix at `q = 1` — closed forms exist together with explicit
//! maximizers. This crate evaluates those closed forms, re-validates every
//! returned value against its own maximizer at runtime, and ships the
//! estimation machinery (multistart nonlinear power iteration, exhaustive
//! sphere grids, vertex search) used to cross-check them.
//!
//! ```
//! use opnorm::{diagonal_norm, Exponent, NormQuery};
//! use opnorm::oracle::{multistart, OracleConfig};
//! use opnorm::DenseMatrix;
//!
//! // ‖diag(1,1)‖_{2→1} = √2, attained inside the sphere, not at a vertex
//! let query = NormQuery::new(Exponent::TWO, Exponent::ONE);
//! let exact = diagonal_norm(&[1.0, 1.0], query).unwrap();
//! assert!((exact.value - 2f64.sqrt()).abs() < 1e-12);
//!
//! // the multistart power iteration agrees from the other direction
//! let a = DenseMatrix::from_diagonal(&[1.0, 1.0]).unwrap();
//! let est = multistart(&a, query, &OracleConfig::default()).unwrap();
//! assert!(est.value <= exact.value + 1e-12);
//! assert!((est.value - exact.value).abs() < 1e-8);
//! ```

pub mod construct;
pub mod detect;
mod error;
mod exact;
mod exponent;
mod matrix;
pub mod oracle;
pub mod solvers;
mod svd;

pub use error::{NormError, Result};
pub use exact::{
    composite_shear_norm, diagonal_norm, exact_by_detection, exact_for_match, grothendieck_value,
    hadamard_upper_bound, k_regular_norm, nonzero_row_upper_bound, one_to_r_norm, rank_one_norm,
    scaled_orthogonal_norm, shear_matrix, shear_norm, sign_row_orthonormal_norm, svd_class_norm,
    vandermonde_alignment_defect, vandermonde_build, vandermonde_norm, ClassCertificate,
    ExactResult, GrothendieckResult, KRegularSpec, OrthogonalSvdSpec, RankOneFactors,
    ScaledOrthogonalSpec, SvdClassSpec, VandermondeSpec, EPS_FEAS,
};
pub use exact::orthogonal_svd_norm;
pub use exponent::{Exponent, NormQuery};
pub use matrix::{normalize, permute, vector_norm, DenseMatrix, DenseVector};
pub use svd::{sigma_max, singular_values};

/// Sign with `sgn(0) = 0` (unlike `f64::signum`).
pub(crate) fn sgn(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum()
    }
}

// The guide chapters under book/src/ double as doc-tests so their snippets
// can never drift from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exponents-and-norms.md")]
    mod exponents_and_norms {}
    #[doc = include_str!("../../../book/src/exact-classes.md")]
    mod exact_classes {}
    #[doc = include_str!("../../../book/src/structured-classes.md")]
    mod structured_classes {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/certificates-and-detection.md")]
    mod certificates_and_detection {}
}
