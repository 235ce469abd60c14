//! 0/1 matrices in which every row selects exactly `k` coordinates and every
//! coordinate is selected by exactly `k` rows: `‖A‖_{q→q} = k`, attained at
//! the uniform vector. Covers circulant bidiagonal Toeplitz matrices
//! (`k = 2`).
//!
//! The signed circulant bidiagonal variant (`+1` on the diagonal, `−1` on
//! the superdiagonal, wrapping) reaches 2 at the alternating vector — which
//! is feasible on the cycle only for even `n`. For odd `n` the alternating
//! pattern is frustrated on the wrap row and the true value drops below 2
//! (at `q = 2` it is `2cos(π/2n)`), so the certificate check rejects odd
//! sizes rather than certify an unattained value.

use crate::error::{NormError, Result};
use crate::exponent::{Exponent, NormQuery};
use crate::matrix::{DenseMatrix, DenseVector};

use super::certificate::{certified, ClassCertificate, ExactResult};
use super::orthonormal::inv_q_scale;

/// Row selection lists of a k-regular 0/1 matrix (or its signed circulant
/// bidiagonal variant).
#[derive(Debug, Clone)]
pub struct KRegularSpec {
    pub k: usize,
    /// `index_lists[i]` holds the columns selected by row `i`.
    pub index_lists: Vec<Vec<usize>>,
    /// The signed circulant bidiagonal variant (`k = 2`, entries `+1, −1`).
    pub signed_bidiagonal: bool,
}

impl KRegularSpec {
    pub fn new(k: usize, index_lists: Vec<Vec<usize>>, signed_bidiagonal: bool) -> Result<Self> {
        let spec = KRegularSpec {
            k,
            index_lists,
            signed_bidiagonal,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.index_lists.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 || self.k == 0 || self.k > n {
            return Err(NormError::NotInClass(format!(
                "need 1 <= k <= n, got k={} n={n}",
                self.k
            )));
        }
        let mut column_uses = vec![0usize; n];
        for row in &self.index_lists {
            if row.len() != self.k {
                return Err(NormError::NotInClass(format!(
                    "every row must select exactly k={} columns",
                    self.k
                )));
            }
            let mut seen = vec![false; n];
            for &j in row {
                if j >= n || seen[j] {
                    return Err(NormError::NotInClass(
                        "row selections must be distinct in-range columns".into(),
                    ));
                }
                seen[j] = true;
                column_uses[j] += 1;
            }
        }
        if column_uses.iter().any(|&c| c != self.k) {
            return Err(NormError::NotInClass(
                "every column must be selected by exactly k rows".into(),
            ));
        }
        if self.signed_bidiagonal {
            if self.k != 2 {
                return Err(NormError::NotInClass(
                    "signed bidiagonal variant has k = 2".into(),
                ));
            }
            for (i, row) in self.index_lists.iter().enumerate() {
                let expect = [i, (i + 1) % n];
                if row != &expect {
                    return Err(NormError::NotInClass(
                        "signed variant must follow the circulant bidiagonal pattern".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Materializes the 0/1 (or signed) matrix.
    pub fn assemble(&self) -> Result<DenseMatrix> {
        let n = self.n();
        let mut data = vec![0.0; n * n];
        for (i, row) in self.index_lists.iter().enumerate() {
            for (pos, &j) in row.iter().enumerate() {
                let sign = if self.signed_bidiagonal && pos == 1 {
                    -1.0
                } else {
                    1.0
                };
                data[i * n + j] = sign;
            }
        }
        DenseMatrix::new(n, n, data)
    }

    /// Reads the selection structure off a concrete matrix.
    pub fn from_matrix(a: &DenseMatrix, entry_eps: f64) -> Result<Self> {
        if a.rows() != a.cols() {
            return Err(NormError::NotInClass("k-regular matrices are square".into()));
        }
        let n = a.rows();
        let mut lists = Vec::with_capacity(n);
        let mut k = None;
        let mut signed = false;
        for i in 0..n {
            let mut row = Vec::new();
            for j in 0..n {
                let v = a.get(i, j);
                if (v - 1.0).abs() <= entry_eps {
                    row.push(j);
                } else if (v + 1.0).abs() <= entry_eps {
                    row.push(j);
                    signed = true;
                } else if v.abs() > entry_eps {
                    return Err(NormError::NotInClass(format!(
                        "entry ({i},{j}) = {v} is not in {{0, ±1}}"
                    )));
                }
            }
            match k {
                None => k = Some(row.len()),
                Some(k) if k != row.len() => {
                    return Err(NormError::NotInClass(
                        "rows select different numbers of columns".into(),
                    ))
                }
                _ => {}
            }
            lists.push(row);
        }
        let k = k.unwrap_or(0);
        if signed {
            // only the circulant signed bidiagonal pattern is certified
            for i in 0..n {
                if (a.get(i, i) - 1.0).abs() > entry_eps
                    || (a.get(i, (i + 1) % n) + 1.0).abs() > entry_eps
                {
                    return Err(NormError::NotInClass(
                        "signed entries outside the circulant bidiagonal pattern".into(),
                    ));
                }
            }
            // canonical selection order (diagonal first, then the wrap)
            lists = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        }
        KRegularSpec::new(k, lists, signed)
    }
}

/// `‖A‖_{q→q} = k` at the uniform maximizer `n^{−1/q} 𝟙`; the signed
/// circulant variant gives 2 at the alternating vector `(−1)^i n^{−1/q}`.
pub fn k_regular_norm(spec: &KRegularSpec, q: Exponent) -> Result<ExactResult> {
    spec.validate()?;
    let a = spec.assemble()?;
    let n = spec.n();
    let query = NormQuery::new(q, q);
    let scale = inv_q_scale(n, q);
    let (value, maximizer): (f64, DenseVector) = if spec.signed_bidiagonal {
        (
            2.0,
            (0..n).map(|i| if i % 2 == 0 { -scale } else { scale }).collect(),
        )
    } else {
        (spec.k as f64, vec![scale; n])
    };
    certified(
        &a,
        query,
        value,
        maximizer,
        ClassCertificate::KRegular { spec: spec.clone() },
        "k-regular",
    )
}


#[cfg(test)]
mod counterexample_tests {
    use crate::construct::signed_bidiagonal;
    use crate::exponent::{Exponent, NormQuery};
    use crate::oracle::{grid_lower_bound, OracleConfig};

    #[test]
    fn signed_odd_cycle_true_value_is_below_two() {
        // n = 3 at q = r = 2: the circulant symbol gives sigma_max =
        // 2cos(pi/6) = sqrt(3); the exhaustive grid oracle confirms the
        // supremum sits well below the (unattainable) value 2.
        let a = signed_bidiagonal(3).unwrap();
        let query = NormQuery::new(Exponent::TWO, Exponent::TWO);
        let grid = grid_lower_bound(&a, query, &OracleConfig::default()).unwrap();
        let expect = 3f64.sqrt();
        assert!((grid.value - expect).abs() < 1e-6, "grid {}", grid.value);
        assert!(crate::svd::sigma_max(&a) < 2.0 - 0.26);
    }
}
