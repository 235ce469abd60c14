//! Constructors for the certified matrix classes: Hadamard matrices, random
//! orthogonal factors with pinned leading columns, and the k-regular
//! layouts. Shared by the class generators, the verification pipeline, and
//! the test suites.

use nalgebra::DMatrix;
use rand::Rng;

use crate::error::{NormError, Result};
use crate::matrix::{DenseMatrix, DenseVector};

/// Sylvester-construction Hadamard matrix with ±1 entries; `n` must be a
/// power of two.
pub fn hadamard(n: usize) -> Result<DenseMatrix> {
    if n == 0 || !n.is_power_of_two() {
        return Err(NormError::InvalidInput(format!(
            "Hadamard construction needs a power of two, got {n}"
        )));
    }
    let mut data = vec![1.0f64];
    let mut size = 1;
    while size < n {
        let next = size * 2;
        let mut grown = vec![0.0; next * next];
        for i in 0..size {
            for j in 0..size {
                let v = data[i * size + j];
                grown[i * next + j] = v;
                grown[i * next + j + size] = v;
                grown[(i + size) * next + j] = v;
                grown[(i + size) * next + j + size] = -v;
            }
        }
        data = grown;
        size = next;
    }
    DenseMatrix::new(n, n, data)
}

/// Hadamard matrix scaled by `1/√n`: orthonormal with every row a full sign
/// row.
pub fn normalized_hadamard(n: usize) -> Result<DenseMatrix> {
    hadamard(n)?.scale(1.0 / (n as f64).sqrt())
}

fn qr_orthonormal(cols: Vec<DenseVector>, n: usize) -> Result<DenseMatrix> {
    let m = DMatrix::from_fn(n, n, |i, j| cols[j][i]);
    let qr = m.qr();
    let q = qr.q();
    let r = qr.r();
    // fix the sign ambiguity so that Q is deterministic and Q e_j keeps the
    // orientation of the seeded columns
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let s = if r[(j, j)] < 0.0 { -1.0 } else { 1.0 };
            data.push(s * q[(i, j)]);
        }
    }
    DenseMatrix::new(n, n, data)
}

/// Random orthogonal matrix from the QR factorization of a Gaussian sample,
/// with the sign convention that makes the result deterministic in the RNG
/// stream.
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> Result<DenseMatrix> {
    let cols: Vec<DenseVector> = (0..n)
        .map(|_| (0..n).map(|_| gaussian(rng)).collect())
        .collect();
    qr_orthonormal(cols, n)
}

/// Random orthogonal matrix whose first column equals the given unit vector.
pub fn orthogonal_with_first_column<R: Rng>(
    first: &[f64],
    rng: &mut R,
) -> Result<DenseMatrix> {
    let n = first.len();
    let norm: f64 = first.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n == 0 || (norm - 1.0).abs() > 1e-12 {
        return Err(NormError::InvalidInput(
            "first column must be a unit vector".into(),
        ));
    }
    let mut cols = vec![first.to_vec()];
    cols.extend((1..n).map(|_| -> DenseVector { (0..n).map(|_| gaussian(rng)).collect() }));
    let q = qr_orthonormal(cols, n)?;
    // QR reproduces the seeded first column up to rounding; snap it exactly
    let mut data = q.entries().to_vec();
    for i in 0..n {
        data[i * n] = first[i];
    }
    let snapped = DenseMatrix::new(n, n, data)?;
    if !crate::detect::is_orthonormal(&snapped, crate::detect::EPS_ORTH) {
        return Err(NormError::NumericalError(
            "orthogonal completion lost orthonormality".into(),
        ));
    }
    Ok(snapped)
}

/// Box-Muller Gaussian; keeps the crate independent of rand_distr.
fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.gen::<f64>();
        let v: f64 = rng.gen::<f64>();
        if u > f64::MIN_POSITIVE {
            let z = (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
            if z.is_finite() {
                return z;
            }
        }
    }
}

/// Circulant 0/1 matrix: row `i` selects columns `i, i+1, …, i+k−1 (mod n)`.
pub fn circulant_k_regular(n: usize, k: usize) -> Result<DenseMatrix> {
    if k == 0 || k > n {
        return Err(NormError::InvalidInput(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for d in 0..k {
            data[i * n + (i + d) % n] = 1.0;
        }
    }
    DenseMatrix::new(n, n, data)
}

/// The circulant bidiagonal Toeplitz matrix (ones on the diagonal and
/// superdiagonal, wrapping): 2-regular.
pub fn bidiagonal_toeplitz(n: usize) -> Result<DenseMatrix> {
    circulant_k_regular(n, 2)
}

/// Signed circulant bidiagonal matrix: `+1` on the diagonal, `−1` on the
/// wrapping superdiagonal.
pub fn signed_bidiagonal(n: usize) -> Result<DenseMatrix> {
    if n < 2 {
        return Err(NormError::InvalidInput("need n >= 2".into()));
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 1.0;
        data[i * n + (i + 1) % n] = -1.0;
    }
    DenseMatrix::new(n, n, data)
}

/// Random k-regular 0/1 matrix as a sum of `k` disjoint random permutation
/// matrices (rejection-sampled).
pub fn random_k_regular<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<DenseMatrix> {
    if k == 0 || k > n {
        return Err(NormError::InvalidInput(format!(
            "need 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    'attempt: for _ in 0..10_000 {
        let mut data = vec![0.0; n * n];
        for _ in 0..k {
            let mut perm: Vec<usize> = (0..n).collect();
            // Fisher-Yates
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            for (i, &j) in perm.iter().enumerate() {
                if data[i * n + j] != 0.0 {
                    continue 'attempt;
                }
                data[i * n + j] = 1.0;
            }
        }
        return DenseMatrix::new(n, n, data);
    }
    Err(NormError::NumericalError(
        "could not sample disjoint permutations".into(),
    ))
}
