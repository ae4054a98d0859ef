//! Density matrices and composite-system operations.

use num_complex::Complex64;

use crate::error::{QslError, Result};
use crate::linalg::{self, c, ComplexMatrix, PSD_TOL};

/// Maximum entrywise deviation from Hermiticity accepted for a state.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Maximum deviation of the trace from one.
pub const TRACE_TOL: f64 = 1e-10;

/// A Hermitian, positive semidefinite, unit-trace matrix.
///
/// Construction validates all three properties and reports the first
/// violation. Nothing is projected back onto the state space.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, HERMITIAN_TOL, TRACE_TOL)
    }

    /// Validates with caller-supplied Hermiticity and trace tolerances. The
    /// PSD tolerance is fixed at [`PSD_TOL`].
    pub fn with_tolerances(matrix: ComplexMatrix, herm_tol: f64, trace_tol: f64) -> Result<Self> {
        linalg::check_hermitian(&matrix, herm_tol)?;
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > trace_tol || tr.im.abs() > trace_tol {
            return Err(QslError::InvalidTrace(tr.re));
        }
        let min = min_eigenvalue(&matrix);
        if min < -PSD_TOL {
            return Err(QslError::NotAState(min));
        }
        Ok(Self { matrix })
    }

    /// Normalizes `v` and returns `|v><v|`.
    pub fn pure(v: &[Complex64]) -> Result<Self> {
        if v.len() < 2 {
            return Err(QslError::InvalidDimension(v.len()));
        }
        Self::new(linalg::projector(v))
    }

    /// Computational basis state `|k><k|`.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        if dim < 2 {
            return Err(QslError::InvalidDimension(dim));
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(k, k)] = c(1.0);
        Ok(Self { matrix: m })
    }

    /// The maximally mixed state `1/d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(QslError::InvalidDimension(dim));
        }
        Ok(Self {
            matrix: linalg::identity(dim) * c(1.0 / dim as f64),
        })
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(linalg::diag_real(probs))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// `tr[rho^2]`.
    pub fn purity(&self) -> f64 {
        linalg::trace_product(&self.matrix, &self.matrix).re
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.purity() >= 1.0 - tol
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigvalsh(&self.matrix)
    }

    /// Principal square root; needed by fidelity and affinity.
    pub fn sqrt(&self) -> ComplexMatrix {
        // Validated states never exceed the PSD tolerance.
        linalg::psd_sqrt(&self.matrix).expect("validated state is PSD")
    }

    /// `tr[self * other]`, real for Hermitian arguments.
    pub fn overlap(&self, other: &DensityMatrix) -> f64 {
        linalg::trace_product(&self.matrix, &other.matrix).re
    }

    pub(crate) fn check_same_dim(&self, other: &DensityMatrix) -> Result<usize> {
        if self.dim() != other.dim() {
            return Err(QslError::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self.dim())
    }
}

fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    linalg::eigvalsh(m).first().copied().unwrap_or(0.0)
}

/// Tensor product `a (x) b`.
pub fn tensor(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    // Products of states are states; skip re-validation.
    DensityMatrix {
        matrix: linalg::kron(a.matrix(), b.matrix()),
    }
}

/// Reduced state of the first factor of a `dim_s * dim_e` joint state.
pub fn partial_trace_env(
    joint: &DensityMatrix,
    dim_s: usize,
    dim_e: usize,
) -> Result<DensityMatrix> {
    if dim_s == 0 || dim_e == 0 || joint.dim() != dim_s * dim_e {
        return Err(QslError::DimensionMismatch(joint.dim(), dim_s * dim_e));
    }
    DensityMatrix::new(linalg::partial_trace_second(joint.matrix(), dim_s, dim_e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn rejects_non_hermitian() {
        let mut m = linalg::diag_real(&[0.5, 0.5]);
        m[(0, 1)] = c(0.1);
        assert!(matches!(DensityMatrix::new(m), Err(QslError::NotHermitian(_))));
    }

    #[test]
    fn rejects_bad_trace() {
        let m = linalg::diag_real(&[0.5, 0.6]);
        assert!(matches!(DensityMatrix::new(m), Err(QslError::InvalidTrace(_))));
    }

    #[test]
    fn rejects_negative_eigenvalue() {
        let m = linalg::diag_real(&[1.2, -0.2]);
        assert!(matches!(DensityMatrix::new(m), Err(QslError::NotAState(_))));
    }

    #[test]
    fn rejects_non_finite() {
        let m = linalg::diag_real(&[f64::NAN, 0.5]);
        assert!(matches!(DensityMatrix::new(m), Err(QslError::NonFinite)));
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let s = 1.0 / 2f64.sqrt();
        let bell = DensityMatrix::pure(&[c(s), c(0.0), c(0.0), c(s)]).unwrap();
        let reduced = partial_trace_env(&bell, 2, 2).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(max_abs_diff(reduced.matrix(), mixed.matrix()) < 1e-12);
    }

    #[test]
    fn tensor_then_trace_recovers_system() {
        let rho = DensityMatrix::from_diagonal(&[0.3, 0.7]).unwrap();
        let anc = DensityMatrix::basis(2, 0).unwrap();
        let back = partial_trace_env(&tensor(&rho, &anc), 2, 2).unwrap();
        assert!(max_abs_diff(back.matrix(), rho.matrix()) < 1e-12);
    }

    #[test]
    fn partial_trace_checks_dims() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        assert!(partial_trace_env(&rho, 3, 2).is_err());
    }
}
