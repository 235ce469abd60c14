//! Dense row-major matrices, vector p-norms, and permutation utilities.
//!
//! Everything here is immutable after construction and purely functional, so
//! values can be shared or sent across threads freely. Storage is dense only:
//! the certified classes live at desk scale.

use crate::error::{NormError, Result};
use crate::exponent::Exponent;

/// Length-checked alias used for maximizers, candidates, and class payloads.
pub type DenseVector = Vec<f64>;

/// An `m × n` real matrix in row-major order with all entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Builds a matrix from row-major data, rejecting empty shapes and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(NormError::ShapeMismatch(format!(
                "matrix must have at least one row and column, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(NormError::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(NormError::InvalidInput(format!(
                "matrix entries must be finite, found {bad}"
            )));
        }
        Ok(DenseMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(NormError::ShapeMismatch("no rows".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(NormError::ShapeMismatch("ragged rows".into()));
        }
        DenseMatrix::new(rows.len(), cols, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        DenseMatrix::new(n, n, data).expect("identity is well formed")
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut data = vec![0.0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = d;
        }
        DenseMatrix::new(n, n, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> DenseVector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix-vector product `A x`.
    pub fn apply(&self, x: &[f64]) -> Result<DenseVector> {
        if x.len() != self.cols {
            return Err(NormError::ShapeMismatch(format!(
                "A is {}x{} but x has length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum::<f64>()
            })
            .collect())
    }

    /// `Aᵀ x` without materializing the transpose.
    pub fn apply_transpose(&self, x: &[f64]) -> Result<DenseVector> {
        if x.len() != self.rows {
            return Err(NormError::ShapeMismatch(format!(
                "Aᵀ is {}x{} but x has length {}",
                self.cols,
                self.rows,
                x.len()
            )));
        }
        let mut out = vec![0.0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += self.get(i, j) * xi;
            }
        }
        Ok(out)
    }

    /// Dense product `A B`.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(NormError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![0.0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        DenseMatrix::new(self.rows, other.cols, data)
    }

    pub fn scale(&self, c: f64) -> Result<DenseMatrix> {
        DenseMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|v| c * v).collect(),
        )
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `‖v‖_p = (Σ|v_i|^p)^{1/p}`, with `‖v‖_∞ = max |v_i|`.
///
/// The sum is factored by the largest absolute entry so that arbitrarily
/// large finite exponents neither overflow nor underflow, and the terms are
/// accumulated in sorted order, which makes every norm value bit-for-bit
/// invariant under permutation of the entries.
///
/// ```
/// use opnorm::{vector_norm, Exponent};
///
/// assert_eq!(vector_norm(&[3.0, 4.0], Exponent::TWO), 5.0);
/// assert_eq!(vector_norm(&[1.0, -1.0, 1.0], Exponent::INF), 1.0);
/// let p = Exponent::new(1.5).unwrap();
/// assert!((vector_norm(&[1.0, 1.0], p) - 2f64.powf(2.0 / 3.0)).abs() < 1e-15);
/// ```
pub fn vector_norm(v: &[f64], p: Exponent) -> f64 {
    debug_assert!(!v.is_empty(), "vector norms are defined on nonempty vectors");
    match p {
        Exponent::Inf => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        Exponent::Finite(1.0) => sorted_sum(v.iter().map(|x| x.abs())),
        Exponent::Finite(p) => {
            let m = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if m == 0.0 {
                return 0.0;
            }
            let sum = sorted_sum(v.iter().map(|x| (x.abs() / m).powf(p)));
            m * sum.powf(1.0 / p)
        }
    }
}

/// Ascending-order accumulation: permutation-invariant and slightly more
/// accurate than left-to-right summation.
pub(crate) fn sorted_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut terms: Vec<f64> = terms.collect();
    terms.sort_by(|a, b| a.partial_cmp(b).expect("norm terms are not NaN"));
    terms.iter().sum()
}

/// Scales `v` to unit p-norm. Returns `None` for the zero vector.
pub fn normalize(v: &[f64], p: Exponent) -> Option<DenseVector> {
    let n = vector_norm(v, p);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    Some(v.iter().map(|x| x / n).collect())
}

fn validate_permutation(perm: &[usize], size: usize, what: &str) -> Result<()> {
    if perm.len() != size {
        return Err(NormError::ShapeMismatch(format!(
            "{what} permutation has length {}, expected {size}",
            perm.len()
        )));
    }
    let mut seen = vec![false; size];
    for &p in perm {
        if p >= size || seen[p] {
            return Err(NormError::ShapeMismatch(format!(
                "{what} permutation is not a bijection on 0..{size}"
            )));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Row/column exchange: entry `(i, j)` of the result is
/// `A(row_perm[i], col_perm[j])`. The induced norm is invariant under this
/// operation for every `(q, r)`.
pub fn permute(a: &DenseMatrix, row_perm: &[usize], col_perm: &[usize]) -> Result<DenseMatrix> {
    validate_permutation(row_perm, a.rows(), "row")?;
    validate_permutation(col_perm, a.cols(), "column")?;
    let mut data = Vec::with_capacity(a.rows() * a.cols());
    for &i in row_perm {
        for &j in col_perm {
            data.push(a.get(i, j));
        }
    }
    DenseMatrix::new(a.rows(), a.cols(), data)
}
