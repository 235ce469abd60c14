//! Structural classification of an arbitrary matrix into the certified
//! classes, so exact formulas can be dispatched without a witness.
//!
//! Detection is structural only: classes whose membership depends on a
//! factorization that cannot be recovered unambiguously from raw entries
//! (aligned SVD, composite shear, power-row constructions) are never claimed
//! here — those take explicit witnesses. The priority order is fixed:
//! diagonal, rank-one, k-regular (unsigned then signed bidiagonal), sign-row
//! orthonormal, scaled-orthogonal factorization, and the universal `q = 1`
//! column rule. All matches are reported.

use crate::exact::{KRegularSpec, RankOneFactors, ScaledOrthogonalSpec};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{DenseMatrix, DenseVector};
use crate::svd::leading_triple;

/// Max-entry tolerance on the Gram defect `|AᵀA − I|` for orthonormality.
pub const EPS_ORTH: f64 = 1e-10;
/// Threshold on `σ₂/σ₁` below which a matrix is treated as rank-one.
pub const EPS_RANK_ONE: f64 = 1e-10;
/// Tolerance for matching structural magnitudes (sign rows, scalings).
pub const EPS_DETECT: f64 = 1e-10;
/// Tolerance for matching exact 0/±1 entries.
pub const EPS_ENTRY: f64 = 1e-12;

/// One detected class with the parameters the exact operation needs.
#[derive(Debug, Clone)]
pub enum DetectionMatch {
    Diagonal { entries: DenseVector },
    RankOne { factors: RankOneFactors },
    KRegular { spec: KRegularSpec },
    SignRowOrthonormal { row: usize, tau: DenseVector },
    ScaledOrthogonal { spec: ScaledOrthogonalSpec },
    OneToR,
}

impl DetectionMatch {
    pub fn kind(&self) -> &'static str {
        match self {
            DetectionMatch::Diagonal { .. } => "diagonal",
            DetectionMatch::RankOne { .. } => "rank-one",
            DetectionMatch::KRegular { spec } if spec.signed_bidiagonal => "k-regular-signed",
            DetectionMatch::KRegular { .. } => "k-regular",
            DetectionMatch::SignRowOrthonormal { .. } => "sign-row-orthonormal",
            DetectionMatch::ScaledOrthogonal { .. } => "scaled-orthogonal",
            DetectionMatch::OneToR => "one-to-r",
        }
    }
}

/// Tolerances a detection run used, recorded alongside its matches.
#[derive(Debug, Clone, Copy)]
pub struct DetectionTolerances {
    pub orth: f64,
    pub rank_one: f64,
    pub structural: f64,
    pub entry: f64,
}

impl Default for DetectionTolerances {
    fn default() -> Self {
        DetectionTolerances {
            orth: EPS_ORTH,
            rank_one: EPS_RANK_ONE,
            structural: EPS_DETECT,
            entry: EPS_ENTRY,
        }
    }
}

/// Ordered list of class matches for one matrix and query.
#[derive(Debug, Clone)]
pub struct DetectionReport {
    pub matches: Vec<DetectionMatch>,
    pub tolerances: DetectionTolerances,
}

impl DetectionReport {
    pub fn kinds(&self) -> Vec<&'static str> {
        self.matches.iter().map(|m| m.kind()).collect()
    }
}

/// `true` iff `AᵀA = I` within the max-entry tolerance (for rectangular
/// input this checks the column side).
pub fn is_orthonormal(a: &DenseMatrix, eps: f64) -> bool {
    let n = a.cols();
    for i in 0..n {
        let ci = a.column(i);
        for j in i..n {
            let dot: f64 = if i == j {
                ci.iter().map(|v| v * v).sum()
            } else {
                a.column(j).iter().zip(&ci).map(|(x, y)| x * y).sum()
            };
            let expect = if i == j { 1.0 } else { 0.0 };
            if (dot - expect).abs() > eps {
                return false;
            }
        }
    }
    true
}

/// Recovers `u, v` with `A = u vᵀ` from the leading singular triple when
/// `σ₂/σ₁ ≤ eps`. The sign convention makes the largest-magnitude entry of
/// `v` positive. Returns `None` when the matrix is not rank-one.
pub fn rank_one_factor(a: &DenseMatrix, eps: f64) -> Option<RankOneFactors> {
    let (sigma1, u1, v1, sigma2) = leading_triple(a);
    if sigma1 == 0.0 {
        // zero matrix: the zero-factor convention
        return Some(RankOneFactors::new(
            vec![0.0; a.rows()],
            vec![0.0; a.cols()],
        ));
    }
    if sigma2 / sigma1 > eps {
        return None;
    }
    let mut lead = 0usize;
    for (i, x) in v1.iter().enumerate() {
        if x.abs() > v1[lead].abs() {
            lead = i;
        }
    }
    let flip = if v1[lead] < 0.0 { -1.0 } else { 1.0 };
    let u: DenseVector = u1.iter().map(|x| flip * sigma1 * x).collect();
    let v: DenseVector = v1.iter().map(|x| flip * x).collect();
    Some(RankOneFactors::new(u, v))
}

fn detect_diagonal(a: &DenseMatrix) -> Option<DetectionMatch> {
    if a.rows() != a.cols() {
        return None;
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if i != j && a.get(i, j).abs() > EPS_ENTRY {
                return None;
            }
        }
    }
    let entries = (0..a.rows()).map(|i| a.get(i, i)).collect();
    Some(DetectionMatch::Diagonal { entries })
}

fn detect_scaled_orthogonal(a: &DenseMatrix, q: Exponent) -> Option<DetectionMatch> {
    if a.rows() != a.cols() || q < Exponent::TWO {
        return None;
    }
    let n = a.rows();
    if q == Exponent::TWO {
        // at q = 2 the compensating diagonal is the identity, so the class
        // is exactly the orthonormal matrices
        if is_orthonormal(a, EPS_ORTH) {
            let spec = ScaledOrthogonalSpec::new(a.clone(), 0, q).ok()?;
            return Some(DetectionMatch::ScaledOrthogonal { spec });
        }
        return None;
    }
    // general q: AᵀA must be diagonal with positive entries Λ², and some row
    // of U = A Λ⁻¹ must reproduce Λ through the class exponent
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let dot: f64 = a
                    .column(i)
                    .iter()
                    .zip(a.column(j).iter())
                    .map(|(x, y)| x * y)
                    .sum();
                if dot.abs() > EPS_ORTH {
                    return None;
                }
            }
        }
    }
    let lambda: DenseVector = (0..n)
        .map(|j| a.column(j).iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    if lambda.iter().any(|&l| l <= EPS_DETECT) {
        return None;
    }
    let mut u_rows = Vec::with_capacity(n);
    for i in 0..n {
        let row: DenseVector = (0..n).map(|j| a.get(i, j) / lambda[j]).collect();
        u_rows.push(row);
    }
    let u = DenseMatrix::from_rows(&u_rows).ok()?;
    if !is_orthonormal(&u, EPS_ORTH) {
        return None;
    }
    let qv = q.value();
    'rows: for i in 0..n {
        for (j, lam) in lambda.iter().enumerate() {
            let expect = match q {
                Exponent::Inf => u.get(i, j).abs(),
                _ => u.get(i, j).abs().powf((qv - 2.0) / qv),
            };
            if (lam - expect).abs() > EPS_DETECT {
                continue 'rows;
            }
        }
        if let Ok(spec) = ScaledOrthogonalSpec::new(u.clone(), i, q) {
            return Some(DetectionMatch::ScaledOrthogonal { spec });
        }
    }
    None
}

/// Classifies `A` against every structurally detectable class, in the fixed
/// priority order. An empty match list is a valid outcome.
pub fn detect(a: &DenseMatrix, query: NormQuery) -> DetectionReport {
    let mut matches = Vec::new();
    if let Some(m) = detect_diagonal(a) {
        matches.push(m);
    }
    if let Some(factors) = rank_one_factor(a, EPS_RANK_ONE) {
        matches.push(DetectionMatch::RankOne { factors });
    }
    if let Ok(spec) = KRegularSpec::from_matrix(a, EPS_ENTRY) {
        matches.push(DetectionMatch::KRegular { spec });
    }
    if a.rows() == a.cols() && is_orthonormal(a, EPS_ORTH) {
        if let Some((row, tau)) = crate::exact::find_sign_row(a, EPS_DETECT) {
            matches.push(DetectionMatch::SignRowOrthonormal { row, tau });
        }
    }
    if let Some(m) = detect_scaled_orthogonal(a, query.q) {
        matches.push(m);
    }
    if query.q.is_one() {
        matches.push(DetectionMatch::OneToR);
    }
    DetectionReport {
        matches,
        tolerances: DetectionTolerances::default(),
    }
}
