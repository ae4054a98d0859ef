//! Dense complex-matrix helpers shared by every module.
//!
//! Everything is built on `nalgebra::DMatrix<Complex64>`. Hermitian
//! eigendecompositions go through `SymmetricEigen`, which handles complex
//! Hermitian input and returns real eigenvalues.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{QslError, Result};

/// Dense square complex matrix.
pub type ComplexMatrix = DMatrix<Complex64>;

/// Tolerance for treating a slightly negative eigenvalue as zero.
pub const PSD_TOL: f64 = 1e-10;

/// Eigenvalues below this fraction of the largest one are treated as zero
/// before a square root is taken.
pub const SPECTRAL_NOISE: f64 = 1e-14;

/// `max(lambda, 0)`, with values under the relative noise floor set to zero.
pub(crate) fn denoise(lambda: f64, largest: f64) -> f64 {
    if lambda <= SPECTRAL_NOISE * largest.abs() {
        0.0
    } else {
        lambda
    }
}

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(dim: usize) -> ComplexMatrix {
    ComplexMatrix::identity(dim, dim)
}

/// Builds a matrix from row-major complex entries.
pub fn from_rows(dim: usize, entries: &[Complex64]) -> ComplexMatrix {
    assert_eq!(entries.len(), dim * dim, "expected {} entries", dim * dim);
    ComplexMatrix::from_row_slice(dim, dim, entries)
}

/// Builds a matrix from row-major real entries.
pub fn from_real_rows(dim: usize, entries: &[f64]) -> ComplexMatrix {
    assert_eq!(entries.len(), dim * dim, "expected {} entries", dim * dim);
    ComplexMatrix::from_row_iterator(dim, dim, entries.iter().map(|&x| c(x)))
}

pub fn diag_real(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&DVector::from_iterator(
        values.len(),
        values.iter().map(|&x| c(x)),
    ))
}

/// Projector `|v><v|` onto a normalized copy of `v`.
pub fn projector(v: &[Complex64]) -> ComplexMatrix {
    let v = DVector::from_column_slice(v);
    let n = v.norm();
    let v = v / c(n);
    &v * v.adjoint()
}

pub fn pauli_x() -> ComplexMatrix {
    from_real_rows(2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_y() -> ComplexMatrix {
    from_rows(2, &[c(0.0), -I, I, c(0.0)])
}

pub fn pauli_z() -> ComplexMatrix {
    from_real_rows(2, &[1.0, 0.0, 0.0, -1.0])
}

pub fn trace(m: &ComplexMatrix) -> Complex64 {
    m.trace()
}

/// `tr[a b]` without forming the product.
pub fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// Hilbert-Schmidt norm `sqrt(tr[X^dagger X])`.
pub fn hs_norm(m: &ComplexMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest absolute entry of `m - m^dagger`.
pub fn hermiticity_defect(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// `[a, b] = ab - ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b - b * a
}

/// `{a, b} = ab + ba`.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a * b + b * a
}

/// Symmetrizes `m` to `(m + m^dagger) / 2` so that eigendecomposition sees
/// an exactly Hermitian input.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()) * c(0.5)
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are real.
pub fn eigh(m: &ComplexMatrix) -> SymmetricEigen<Complex64, nalgebra::Dyn> {
    SymmetricEigen::new(hermitian_part(m))
}

pub fn eigvalsh(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = eigh(m).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub fn hermitian_function(m: &ComplexMatrix, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
    let eig = eigh(m);
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let fj = f(lambda);
        for i in 0..scaled.nrows() {
            scaled[(i, j)] *= fj;
        }
    }
    scaled * v.adjoint()
}

/// Square root of a positive semidefinite matrix. Eigenvalues in
/// `[-PSD_TOL, 0)` and below the noise floor are clamped to zero, anything
/// lower is an error.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = eigh(m);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -PSD_TOL {
        return Err(QslError::NotAState(min));
    }
    let largest = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let s = c(denoise(lambda, largest).sqrt());
        for i in 0..scaled.nrows() {
            scaled[(i, j)] *= s;
        }
    }
    Ok(scaled * v.adjoint())
}

/// Spectral (operator) norm of a Hermitian matrix.
pub fn hermitian_operator_norm(m: &ComplexMatrix) -> f64 {
    eigh(m)
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs()))
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}

/// Traces out the second factor of a `dim_s * dim_e` operator.
pub fn partial_trace_second(m: &ComplexMatrix, dim_s: usize, dim_e: usize) -> ComplexMatrix {
    debug_assert_eq!(m.nrows(), dim_s * dim_e);
    ComplexMatrix::from_fn(dim_s, dim_s, |i, j| {
        (0..dim_e).fold(Complex64::new(0.0, 0.0), |acc, k| {
            acc + m[(i * dim_e + k, j * dim_e + k)]
        })
    })
}

pub(crate) fn check_square(m: &ComplexMatrix) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(QslError::NotSquare(m.nrows(), m.ncols()));
    }
    Ok(m.nrows())
}

pub(crate) fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<()> {
    check_square(m)?;
    if !is_finite(m) {
        return Err(QslError::NonFinite);
    }
    let defect = hermiticity_defect(m);
    if defect > tol {
        return Err(QslError::NotHermitian(defect));
    }
    Ok(())
}

#[cfg(test)]
pub(crate) fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
}
