use crate::error::{QslError, Result};
use crate::linalg::{self, c, ComplexMatrix, I};
use crate::state::DensityMatrix;

use super::{integrate, Generator, Orbit};

/// One dissipative channel `gamma (L rho L^dagger - {L^dagger L, rho} / 2)`.
#[derive(Debug, Clone)]
pub struct Channel {
    pub rate: f64,
    pub operator: ComplexMatrix,
}

/// Time-independent Lindblad generator
/// `-i[H, rho] + sum_k gamma_k (L_k rho L_k^dagger - {L_k^dagger L_k, rho} / 2)`
/// with `hbar = 1`.
#[derive(Debug, Clone)]
pub struct LindbladModel {
    hamiltonian: ComplexMatrix,
    channels: Vec<Channel>,
    // Precomputed sum_k gamma_k L_k^dagger L_k.
    decay: ComplexMatrix,
}

impl LindbladModel {
    pub fn new(hamiltonian: ComplexMatrix, channels: Vec<Channel>) -> Result<Self> {
        linalg::check_hermitian(&hamiltonian, 1e-12)?;
        let dim = hamiltonian.nrows();
        let mut decay = ComplexMatrix::zeros(dim, dim);
        for ch in &channels {
            if !(ch.rate >= 0.0) || !ch.rate.is_finite() {
                return Err(QslError::OutOfRange {
                    name: "rate",
                    value: ch.rate,
                    expected: "[0, inf)",
                });
            }
            let n = linalg::check_square(&ch.operator)?;
            if n != dim {
                return Err(QslError::DimensionMismatch(n, dim));
            }
            if !linalg::is_finite(&ch.operator) {
                return Err(QslError::NonFinite);
            }
            decay += ch.operator.adjoint() * &ch.operator * c(ch.rate);
        }
        Ok(Self {
            hamiltonian,
            channels,
            decay,
        })
    }

    /// Purely dissipative model.
    pub fn dissipative(dim: usize, channels: Vec<Channel>) -> Result<Self> {
        Self::new(ComplexMatrix::zeros(dim, dim), channels)
    }

    /// Qubit pure dephasing `gamma (sigma_z rho sigma_z - rho)`.
    pub fn qubit_dephasing(gamma: f64) -> Result<Self> {
        Self::dissipative(
            2,
            vec![Channel {
                rate: gamma,
                operator: linalg::pauli_z(),
            }],
        )
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix {
        &self.hamiltonian
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    /// Checks `tr[L_k^dagger L_l] = delta_kl` and `tr[L_k] = 0` within `1e-10`.
    ///
    /// The Hilbert-Schmidt inner product is used; for Hermitian jump
    /// operators it coincides with `tr[L_k L_l]`.
    pub fn check_orthonormal_traceless(&self) -> Result<()> {
        const TOL: f64 = 1e-10;
        for (k, a) in self.channels.iter().enumerate() {
            let tr = a.operator.trace().norm();
            if tr > TOL {
                return Err(QslError::ChannelConvention(format!(
                    "|tr L_{k}| = {tr:e}"
                )));
            }
            for (l, b) in self.channels.iter().enumerate().skip(k) {
                let g = linalg::trace_product(&a.operator.adjoint(), &b.operator);
                let expected = if k == l { 1.0 } else { 0.0 };
                if (g - c(expected)).norm() > TOL {
                    return Err(QslError::ChannelConvention(format!(
                        "tr[L_{k}^dagger L_{l}] = {g}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when every jump operator is normal, which makes the generator
    /// unital.
    pub fn has_normal_channels(&self) -> bool {
        self.channels.iter().all(|ch| {
            let l = &ch.operator;
            let comm = l * l.adjoint() - l.adjoint() * l;
            linalg::hs_norm(&comm) < 1e-12
        })
    }

    pub(crate) fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let mut out = linalg::commutator(&self.hamiltonian, rho) * (-I);
        for ch in &self.channels {
            if ch.rate == 0.0 {
                continue;
            }
            out += &ch.operator * rho * ch.operator.adjoint() * c(ch.rate);
        }
        out -= linalg::anticommutator(&self.decay, rho) * c(0.5);
        out
    }
}

impl Generator for LindbladModel {
    fn dim(&self) -> usize {
        self.dim()
    }

    fn rhs(&self, _t: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        self.apply(rho)
    }

    fn is_time_independent(&self) -> bool {
        true
    }
}

/// `d rho / dt` under `model`.
pub fn lindblad_rhs(model: &LindbladModel, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != model.dim() {
        return Err(QslError::DimensionMismatch(rho.dim(), model.dim()));
    }
    Ok(model.apply(rho.matrix()))
}

/// Integrates the master equation over `[0, tau]` with `steps` RK4 steps.
/// The returned orbit carries the generator evaluated at every grid point.
pub fn integrate_lindblad(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    tau: f64,
    steps: usize,
) -> Result<Orbit> {
    integrate(model, rho0, tau, steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{gell_mann_basis, to_bloch};
    use crate::linalg::max_abs_diff;

    fn plus() -> DensityMatrix {
        DensityMatrix::pure(&[c(1.0), c(1.0)]).unwrap()
    }

    #[test]
    fn empty_model_has_zero_rhs() {
        let m = LindbladModel::dissipative(3, vec![]).unwrap();
        let rho = DensityMatrix::from_diagonal(&[0.2, 0.3, 0.5]).unwrap();
        assert_eq!(lindblad_rhs(&m, &rho).unwrap(), ComplexMatrix::zeros(3, 3));
    }

    #[test]
    fn dephasing_rhs_matches_closed_form() {
        let gamma = 0.7;
        let m = LindbladModel::qubit_dephasing(gamma).unwrap();
        let rho = DensityMatrix::new(linalg::from_rows(
            2,
            &[c(0.6), num_complex::Complex64::new(0.2, -0.1), num_complex::Complex64::new(0.2, 0.1), c(0.4)],
        ))
        .unwrap();
        let z = linalg::pauli_z();
        let expected = (&z * rho.matrix() * &z - rho.matrix()) * c(gamma);
        assert!(max_abs_diff(&lindblad_rhs(&m, &rho).unwrap(), &expected) < 1e-15);
    }

    #[test]
    fn unital_channels_fix_maximally_mixed() {
        let m = LindbladModel::dissipative(
            2,
            vec![
                Channel { rate: 0.3, operator: linalg::pauli_x() },
                Channel { rate: 1.1, operator: linalg::pauli_z() },
            ],
        )
        .unwrap();
        assert!(m.has_normal_channels());
        let rhs = lindblad_rhs(&m, &DensityMatrix::maximally_mixed(2).unwrap()).unwrap();
        assert!(linalg::hs_norm(&rhs) < 1e-14);
        assert!(rhs.trace().norm() < 1e-14);
    }

    #[test]
    fn rhs_is_hermitian_and_traceless() {
        let m = LindbladModel::new(
            linalg::pauli_x() * c(0.4),
            vec![Channel {
                rate: 0.5,
                operator: linalg::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]),
            }],
        )
        .unwrap();
        let rhs = lindblad_rhs(&m, &plus()).unwrap();
        assert!(linalg::hermiticity_defect(&rhs) < 1e-12);
        assert!(rhs.trace().norm() < 1e-12);
    }

    #[test]
    fn dephasing_decay_of_coherence() {
        let m = LindbladModel::qubit_dephasing(1.0).unwrap();
        let orbit = integrate_lindblad(&m, &plus(), 1.0, 1000).unwrap();
        let r = to_bloch(orbit.last(), &gell_mann_basis(2).unwrap()).unwrap();
        assert!((r.components()[0] - (-2.0f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn zero_generator_gives_constant_orbit() {
        let m = LindbladModel::dissipative(2, vec![]).unwrap();
        let orbit = integrate_lindblad(&m, &plus(), 2.0, 10).unwrap();
        for s in orbit.states() {
            assert_eq!(s, &plus());
        }
    }

    #[test]
    fn validation_errors() {
        assert!(LindbladModel::new(linalg::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]), vec![]).is_err());
        assert!(LindbladModel::dissipative(2, vec![Channel { rate: -1.0, operator: linalg::pauli_z() }]).is_err());
        let m = LindbladModel::qubit_dephasing(1.0).unwrap();
        assert!(lindblad_rhs(&m, &DensityMatrix::maximally_mixed(3).unwrap()).is_err());
        assert!(integrate_lindblad(&m, &plus(), 0.0, 10).is_err());
        assert!(integrate_lindblad(&m, &plus(), 1.0, 0).is_err());
    }

    #[test]
    fn orthonormal_convention() {
        let s = c(1.0 / 2f64.sqrt());
        let ok = LindbladModel::dissipative(
            2,
            vec![
                Channel { rate: 1.0, operator: linalg::pauli_z() * s },
                Channel { rate: 1.0, operator: linalg::pauli_x() * s },
            ],
        )
        .unwrap();
        assert!(ok.check_orthonormal_traceless().is_ok());
        let bad = LindbladModel::qubit_dephasing(1.0).unwrap();
        assert!(matches!(
            bad.check_orthonormal_traceless(),
            Err(QslError::ChannelConvention(_))
        ));
    }
}
