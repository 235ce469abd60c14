//! The power-row ("Vandermonde") class: matrices whose rows are signed
//! entrywise powers `sgn(a₁)|a₁|^{1/α_i}` of a first row with no zero
//! entries, with `α_i` pinned by the row-splitting exponents so that the
//! upper bound of [`super::nonzero_row_upper_bound`] is attained with
//! equality.
//!
//! For every admissible parameter choice the pinned `α_i` works out to 1
//! (the splitting exponents are a conjugate pair, so their harmonic
//! combination collapses), which makes all generated rows equal to `a₁`.
//! The construction is kept in its general parametric form: both the norm
//! formula and the bound are evaluated through their own independent
//! expressions and must agree.

use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{vector_norm, DenseMatrix, DenseVector};

use super::certificate::{certified, ClassCertificate, ExactResult};
use super::row_bound::{is_conjugate_pair, RowSplit};
use crate::sgn;

/// Parameters of a power-row matrix: the base row, one `(p_i', q_i')`
/// conjugate pair per generated row, the derived `α_i`, and the residual
/// weight vectors `b_i`, all relative to a fixed constraint exponent `q`.
#[derive(Debug, Clone)]
pub struct VandermondeSpec {
    pub a1: DenseVector,
    pub p_prime: Vec<Exponent>,
    pub q_prime: Vec<Exponent>,
    /// Row powers: generated row `i` is `sgn(a₁)|a₁|^{1/α_i}` entrywise.
    pub alpha: Vec<f64>,
    /// Residual weight vectors of the generated rows.
    pub b: Vec<DenseVector>,
    /// The constraint exponent the spec was built for.
    pub q: Exponent,
}

impl VandermondeSpec {
    pub fn new(
        a1: DenseVector,
        p_prime: Vec<Exponent>,
        q_prime: Vec<Exponent>,
        q: Exponent,
    ) -> Result<Self> {
        if a1.is_empty() || a1.iter().any(|&v| v == 0.0 || !v.is_finite()) {
            return Err(NormError::PreconditionViolation(
                "base row must be nonempty with all entries non-zero and finite".into(),
            ));
        }
        if p_prime.len() != q_prime.len() {
            return Err(NormError::ShapeMismatch(
                "one (p', q') pair per generated row".into(),
            ));
        }
        for (pp, qp) in p_prime.iter().zip(&q_prime) {
            if !is_conjugate_pair(*pp, *qp) {
                return Err(NormError::PreconditionViolation(format!(
                    "p'={pp} and q'={qp} are not Hölder conjugate"
                )));
            }
        }
        let p = q.conjugate();
        let inv_p = match p {
            Exponent::Inf => 0.0,
            Exponent::Finite(v) => 1.0 / v,
        };
        let mut alpha = Vec::with_capacity(p_prime.len());
        let mut b = Vec::with_capacity(p_prime.len());
        for (pp, qp) in p_prime.iter().zip(&q_prime) {
            let split = RowSplit::new(*pp, *qp, q)?;
            // α_i = (1/p) · (p'/d) · e, the harmonic combination of the pair
            let a = inv_p * split.s;
            if a <= 0.0 || a.is_nan() || !a.is_finite() {
                return Err(NormError::ConstructionError(format!(
                    "row power alpha = {a} must be a positive finite real (needs q > 1)"
                )));
            }
            alpha.push(a);
            // residual weights relative to the base row: the generated row is
            // |a₁|^{1/α}, so b_j = sgn(a₁ⱼ) |a₁ⱼ|^{(e/d)/α}
            let expo = split.residual / a;
            let bi: DenseVector = a1
                .iter()
                .map(|&v| sgn(v) * v.abs().powf(expo))
                .collect();
            if bi.iter().any(|v| !v.is_finite()) {
                return Err(NormError::ConstructionError(
                    "residual weight overflowed f64".into(),
                ));
            }
            b.push(bi);
        }
        Ok(VandermondeSpec {
            a1,
            p_prime,
            q_prime,
            alpha,
            b,
            q,
        })
    }

    fn check_query(&self, query: NormQuery) -> Result<()> {
        if query.q != self.q {
            return Err(NormError::PreconditionViolation(format!(
                "spec was built for q = {}, query has q = {}",
                self.q, query.q
            )));
        }
        Ok(())
    }
}

/// Materializes the `(m+1) × n` power-row matrix for this spec.
pub fn vandermonde_build(spec: &VandermondeSpec, query: NormQuery) -> Result<DenseMatrix> {
    spec.check_query(query)?;
    let mut rows = Vec::with_capacity(spec.alpha.len() + 1);
    rows.push(spec.a1.clone());
    for &alpha in &spec.alpha {
        let row: DenseVector = spec
            .a1
            .iter()
            .map(|&v| sgn(v) * v.abs().powf(1.0 / alpha))
            .collect();
        if row.iter().any(|v| !v.is_finite()) {
            return Err(NormError::ConstructionError(
                "generated row overflowed f64".into(),
            ));
        }
        rows.push(row);
    }
    DenseMatrix::from_rows(&rows)
}

/// Exact norm of a generated power-row matrix:
/// `value^r = ‖a₁‖_p^r + Σ_i ‖b_i‖_{p_i'}^r ‖a₁‖_p^{p·r (q−q_i')/(q_i' q)}`,
/// attained at the Hölder-alignment vector of the base row.
pub fn vandermonde_norm(spec: &VandermondeSpec, query: NormQuery) -> Result<ExactResult> {
    spec.check_query(query)?;
    let matrix = vandermonde_build(spec, query)?;
    let p = query.q_conjugate();
    let base = vector_norm(&spec.a1, p);

    let mut contributions = Vec::with_capacity(spec.alpha.len() + 1);
    contributions.push(base);
    for ((pp, qp), bi) in spec.p_prime.iter().zip(&spec.q_prime).zip(&spec.b) {
        let split = RowSplit::new(*pp, *qp, query.q)?;
        // p·(q−q')/(q' q) = p/e, which vanishes in the q' = q limit;
        // 1/e = construction/s
        let expo = match p {
            _ if split.t_over_r == 0.0 => 0.0,
            Exponent::Finite(pv) => pv * split.construction / split.s,
            Exponent::Inf => {
                return Err(NormError::UnsupportedExponent(
                    "power-row norm needs q > 1".into(),
                ))
            }
        };
        contributions.push(vector_norm(bi, split.pp_exponent()) * base.powf(expo));
    }
    let value = vector_norm(&contributions, query.r);

    // maximizer: Hölder alignment with the base row, x_j ∝ sgn(a₁ⱼ)|a₁ⱼ|^{p−1}
    let pv = p.value();
    let m = spec.a1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let sum: f64 = spec.a1.iter().map(|v| (v.abs() / m).powf(pv)).sum();
    let denom = sum.powf((pv - 1.0) / pv);
    let maximizer: DenseVector = spec
        .a1
        .iter()
        .map(|&v| sgn(v) * (v.abs() / m).powf(pv - 1.0) / denom)
        .collect();

    certified(
        &matrix,
        query,
        value,
        maximizer,
        ClassCertificate::Vandermonde { spec: spec.clone() },
        "vandermonde",
    )
}

/// Largest violation of the equality condition tying every generated row to
/// the base row: the normalized weight profiles
/// `|a₁ⱼ|^p / ‖a₁‖_p^p` and `|a_ij|^{s_i} / ‖a_i‖_{s_i}^{s_i}` must agree
/// (with matching signs) for all `i ≥ 2, j`.
pub fn vandermonde_alignment_defect(
    a: &DenseMatrix,
    spec: &VandermondeSpec,
    query: NormQuery,
) -> Result<f64> {
    spec.check_query(query)?;
    let p = query.q_conjugate().value();
    let base = vector_norm(a.row(0), query.q_conjugate());
    let profile1: Vec<f64> = a
        .row(0)
        .iter()
        .map(|&v| sgn(v) * (v.abs() / base).powf(p))
        .collect();
    let mut worst = 0.0f64;
    for i in 1..a.rows() {
        let split = RowSplit::new(spec.p_prime[i - 1], spec.q_prime[i - 1], query.q)?;
        let s = if split.t_over_r == 0.0 {
            // q' = q limit: s = p' and the profile exponent collapses the same way
            split.pp
        } else {
            split.s
        };
        let se = Exponent::new(s)?;
        let row_norm = vector_norm(a.row(i), se);
        for (j, &v) in a.row(i).iter().enumerate() {
            let prof = sgn(v) * (v.abs() / row_norm).powf(s);
            worst = worst.max((prof - profile1[j]).abs());
        }
    }
    Ok(worst)
}
