//! Generalized Bloch representation.
//!
//! A state of a `d`-level system is written as
//!
//! ```text
//! rho = (1 + c r . Lambda) / d,    c = sqrt(d (d - 1) / 2)
//! ```
//!
//! with `{Lambda_a}` a traceless Hermitian basis normalized to
//! `tr[Lambda_a Lambda_b] = 2 delta_ab`. With this scaling every state has
//! `|r| <= 1`, pure states sit on the unit sphere, and the Euclidean distance
//! between Bloch vectors is `sqrt(d / (d - 1))` times the Hilbert-Schmidt
//! distance between the matrices.

use crate::error::{QslError, Result};
use crate::linalg::{self, c, ComplexMatrix, I};
use crate::state::DensityMatrix;

/// Traceless Hermitian basis with `tr[Lambda_a Lambda_b] = 2 delta_ab`.
#[derive(Debug, Clone)]
pub struct OperatorBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl OperatorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `c = sqrt(d (d - 1) / 2)`.
    pub fn scale(&self) -> f64 {
        bloch_scale(self.dim)
    }

    /// Largest violation of tracelessness, Hermiticity and orthogonality.
    pub fn max_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, la) in self.elements.iter().enumerate() {
            worst = worst.max(la.trace().norm());
            worst = worst.max(linalg::hermiticity_defect(la));
            for lb in &self.elements[a..] {
                let expected = if std::ptr::eq(la, lb) { 2.0 } else { 0.0 };
                worst = worst.max((linalg::trace_product(la, lb) - c(expected)).norm());
            }
        }
        worst
    }
}

/// `c = sqrt(d (d - 1) / 2)`.
pub fn bloch_scale(dim: usize) -> f64 {
    let d = dim as f64;
    (d * (d - 1.0) / 2.0).sqrt()
}

/// Generalized Gell-Mann matrices for dimension `d`.
///
/// Ordering: symmetric off-diagonal `E_jk + E_kj` for `j < k`
/// (lexicographic), then antisymmetric `-i E_jk + i E_kj` in the same order,
/// then the `d - 1` diagonal matrices of increasing size. For `d = 2` this is
/// `(sigma_x, sigma_y, sigma_z)`.
pub fn gell_mann_basis(dim: usize) -> Result<OperatorBasis> {
    if dim < 2 {
        return Err(QslError::InvalidDimension(dim));
    }
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|j| (j + 1..dim).map(move |k| (j, k)))
        .collect();
    let mut elements = Vec::with_capacity(dim * dim - 1);
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(j, k)] = c(1.0);
        m[(k, j)] = c(1.0);
        elements.push(m);
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(j, k)] = -I;
        m[(k, j)] = I;
        elements.push(m);
    }
    for l in 1..dim {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for i in 0..l {
            m[(i, i)] = c(norm);
        }
        m[(l, l)] = c(-(l as f64) * norm);
        elements.push(m);
    }
    Ok(OperatorBasis { dim, elements })
}

/// Real coordinates of a state in an [`OperatorBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    dim: usize,
    components: Vec<f64>,
}

impl BlochVector {
    /// Wraps raw components. The length must be `dim^2 - 1`.
    pub fn new(dim: usize, components: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(QslError::InvalidDimension(dim));
        }
        if components.len() != dim * dim - 1 {
            return Err(QslError::DimensionMismatch(components.len(), dim * dim - 1));
        }
        Ok(Self { dim, components })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn distance(&self, other: &BlochVector) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scaled(&self, factor: f64) -> BlochVector {
        BlochVector {
            dim: self.dim,
            components: self.components.iter().map(|x| x * factor).collect(),
        }
    }

    /// Purity of the state this vector represents, `1/d + (d-1)/d |r|^2`.
    pub fn purity(&self) -> f64 {
        let d = self.dim as f64;
        1.0 / d + (d - 1.0) / d * self.norm().powi(2)
    }
}

/// Coordinates `r_a = d tr[rho Lambda_a] / (2c)`.
pub fn to_bloch(rho: &DensityMatrix, basis: &OperatorBasis) -> Result<BlochVector> {
    if rho.dim() != basis.dim {
        return Err(QslError::DimensionMismatch(rho.dim(), basis.dim));
    }
    let d = basis.dim as f64;
    let factor = d / (2.0 * basis.scale());
    let components = basis
        .elements
        .iter()
        .map(|l| factor * linalg::trace_product(rho.matrix(), l).re)
        .collect();
    Ok(BlochVector {
        dim: basis.dim,
        components,
    })
}

/// Rebuilds `(1 + c r . Lambda) / d`. Fails with [`QslError::NotAState`]
/// when the vector lies outside the state space.
pub fn from_bloch(r: &BlochVector, basis: &OperatorBasis) -> Result<DensityMatrix> {
    if r.dim != basis.dim {
        return Err(QslError::DimensionMismatch(r.dim, basis.dim));
    }
    let d = basis.dim as f64;
    let scale = basis.scale();
    let mut m = linalg::identity(basis.dim);
    for (ra, l) in r.components.iter().zip(&basis.elements) {
        m += l * c(scale * ra);
    }
    DensityMatrix::new(m * c(1.0 / d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, pauli_x, pauli_y, pauli_z};

    #[test]
    fn qubit_basis_is_pauli() {
        let b = gell_mann_basis(2).unwrap();
        assert_eq!(b.len(), 3);
        assert!(max_abs_diff(&b.elements()[0], &pauli_x()) < 1e-15);
        assert!(max_abs_diff(&b.elements()[1], &pauli_y()) < 1e-15);
        assert!(max_abs_diff(&b.elements()[2], &pauli_z()) < 1e-15);
    }

    #[test]
    fn qutrit_basis_matches_gell_mann() {
        let b = gell_mann_basis(3).unwrap();
        assert_eq!(b.len(), 8);
        // lambda_8 = diag(1, 1, -2) / sqrt(3)
        let l8 = linalg::diag_real(&[1.0, 1.0, -2.0]) * c(1.0 / 3f64.sqrt());
        assert!(max_abs_diff(&b.elements()[7], &l8) < 1e-15);
        assert!(b.max_defect() < 1e-12);
    }

    #[test]
    fn basis_invariants_up_to_d6() {
        for d in 2..=6 {
            let b = gell_mann_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            assert!(b.max_defect() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn rejects_dimension_one() {
        assert_eq!(gell_mann_basis(1).unwrap_err(), QslError::InvalidDimension(1));
    }

    #[test]
    fn ground_state_points_up() {
        let b = gell_mann_basis(2).unwrap();
        let r = to_bloch(&DensityMatrix::basis(2, 0).unwrap(), &b).unwrap();
        assert_eq!(r.components().len(), 3);
        for (x, e) in r.components().iter().zip([0.0, 0.0, 1.0]) {
            assert!((x - e).abs() < 1e-15);
        }
    }

    #[test]
    fn maximally_mixed_is_origin() {
        for d in 2..=5 {
            let b = gell_mann_basis(d).unwrap();
            let r = to_bloch(&DensityMatrix::maximally_mixed(d).unwrap(), &b).unwrap();
            assert!(r.norm() < 1e-15);
            let back = from_bloch(&BlochVector::new(d, vec![0.0; d * d - 1]).unwrap(), &b).unwrap();
            assert!(max_abs_diff(back.matrix(), DensityMatrix::maximally_mixed(d).unwrap().matrix()) < 1e-15);
        }
    }

    #[test]
    fn unit_vector_along_first_generator_is_not_a_state() {
        let b = gell_mann_basis(3).unwrap();
        let mut comps = vec![0.0; 8];
        comps[0] = 1.0;
        let err = from_bloch(&BlochVector::new(3, comps).unwrap(), &b).unwrap_err();
        let expected = (1.0 - 3f64.sqrt()) / 3.0;
        match err {
            QslError::NotAState(min) => assert!((min - expected).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(BlochVector::new(2, vec![0.0; 4]).is_err());
        let b = gell_mann_basis(3).unwrap();
        assert!(to_bloch(&DensityMatrix::maximally_mixed(2).unwrap(), &b).is_err());
    }
}
