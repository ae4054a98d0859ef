use num_complex::Complex64;

use crate::error::{QslError, Result};
use crate::linalg::{self, ComplexMatrix, I};
use crate::state::{tensor, DensityMatrix};

use super::{orbit_state, Orbit};

/// System coupled to an environment under `H = H_S (x) 1 + H_int + 1 (x) H_E`,
/// with the environment starting in `gamma_e`.
#[derive(Debug, Clone)]
pub struct JointModel {
    dim_s: usize,
    dim_e: usize,
    h_s: ComplexMatrix,
    h_e: ComplexMatrix,
    h_int: ComplexMatrix,
    gamma_e: DensityMatrix,
}

impl JointModel {
    pub fn new(
        h_s: ComplexMatrix,
        h_e: ComplexMatrix,
        h_int: ComplexMatrix,
        gamma_e: DensityMatrix,
    ) -> Result<Self> {
        for h in [&h_s, &h_e, &h_int] {
            linalg::check_hermitian(h, 1e-12)?;
        }
        let dim_s = h_s.nrows();
        let dim_e = h_e.nrows();
        if h_int.nrows() != dim_s * dim_e {
            return Err(QslError::DimensionMismatch(h_int.nrows(), dim_s * dim_e));
        }
        if gamma_e.dim() != dim_e {
            return Err(QslError::DimensionMismatch(gamma_e.dim(), dim_e));
        }
        Ok(Self {
            dim_s,
            dim_e,
            h_s,
            h_e,
            h_int,
            gamma_e,
        })
    }

    pub fn dim_s(&self) -> usize {
        self.dim_s
    }

    pub fn dim_e(&self) -> usize {
        self.dim_e
    }

    pub fn h_s(&self) -> &ComplexMatrix {
        &self.h_s
    }

    pub fn h_e(&self) -> &ComplexMatrix {
        &self.h_e
    }

    pub fn h_int(&self) -> &ComplexMatrix {
        &self.h_int
    }

    pub fn gamma_e(&self) -> &DensityMatrix {
        &self.gamma_e
    }

    /// Same model with the interaction multiplied by `factor`.
    pub fn with_interaction_scaled(&self, factor: f64) -> JointModel {
        JointModel {
            h_int: &self.h_int * linalg::c(factor),
            ..self.clone()
        }
    }

    /// `H_S (x) 1_E + H_int + 1_S (x) H_E`.
    pub fn total_hamiltonian(&self) -> ComplexMatrix {
        linalg::kron(&self.h_s, &linalg::identity(self.dim_e))
            + &self.h_int
            + linalg::kron(&linalg::identity(self.dim_s), &self.h_e)
    }

    /// `-i tr_E[H, Pi]`, the exact reduced derivative.
    pub fn reduced_rhs(&self, joint: &ComplexMatrix) -> ComplexMatrix {
        let comm = linalg::commutator(&self.total_hamiltonian(), joint) * (-I);
        linalg::partial_trace_second(&comm, self.dim_s, self.dim_e)
    }
}

/// Result of [`joint_evolution`]: the reduced orbit and the joint states it
/// came from.
#[derive(Debug, Clone)]
pub struct JointOrbit {
    pub system: Orbit,
    pub joint_states: Vec<DensityMatrix>,
}

/// Evolves `rho0 (x) gamma_E` under the total Hamiltonian.
///
/// The Hamiltonian is diagonalized once and every grid point uses the exact
/// propagator `exp(-i H t)`, so there is no time-stepping error. The system
/// orbit carries `-i tr_E[H, Pi_t]` as its derivative. `tau = 0` yields a
/// single-state orbit.
pub fn joint_evolution(
    model: &JointModel,
    rho0: &DensityMatrix,
    tau: f64,
    steps: usize,
) -> Result<JointOrbit> {
    if rho0.dim() != model.dim_s {
        return Err(QslError::DimensionMismatch(rho0.dim(), model.dim_s));
    }
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(QslError::OutOfRange {
            name: "tau",
            value: tau,
            expected: "[0, inf)",
        });
    }
    if tau > 0.0 && steps == 0 {
        return Err(QslError::OutOfRange {
            name: "steps",
            value: 0.0,
            expected: ">= 1",
        });
    }
    let times = if tau == 0.0 {
        vec![0.0]
    } else {
        Orbit::grid(tau, steps)
    };
    let h = model.total_hamiltonian();
    let eig = linalg::eigh(&h);
    let v = &eig.eigenvectors;
    let lambda: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    let pi0 = tensor(rho0, &model.gamma_e);
    let rotated = v.adjoint() * pi0.matrix() * v;

    let mut joint_states = Vec::with_capacity(times.len());
    let mut system_states = Vec::with_capacity(times.len());
    let mut rhs = Vec::with_capacity(times.len());
    for (k, &t) in times.iter().enumerate() {
        let evolved = ComplexMatrix::from_fn(rotated.nrows(), rotated.ncols(), |i, j| {
            rotated[(i, j)] * Complex64::from_polar(1.0, -(lambda[i] - lambda[j]) * t)
        });
        let pi_t = v * evolved * v.adjoint();
        let reduced = linalg::partial_trace_second(&pi_t, model.dim_s, model.dim_e);
        rhs.push(model.reduced_rhs(&pi_t));
        system_states.push(orbit_state(reduced, k)?);
        joint_states.push(orbit_state(pi_t, k)?);
    }
    let system = Orbit::new(times, system_states, Some(rhs))?;
    Ok(JointOrbit {
        system,
        joint_states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::propagate_unitary;
    use crate::linalg::{c, max_abs_diff};

    fn model(h_int: ComplexMatrix) -> JointModel {
        JointModel::new(
            linalg::pauli_z() * c(0.7),
            linalg::pauli_x() * c(0.3),
            h_int,
            DensityMatrix::from_diagonal(&[0.6, 0.4]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn no_interaction_factorizes() {
        let m = model(ComplexMatrix::zeros(4, 4));
        let rho0 = DensityMatrix::pure(&[c(1.0), c(1.0)]).unwrap();
        let joint = joint_evolution(&m, &rho0, 1.0, 200).unwrap();
        let local = propagate_unitary(|_| m.h_s().clone(), &rho0, 1.0, 200).unwrap();
        for (a, b) in joint.system.states().iter().zip(local.states()) {
            assert!(max_abs_diff(a.matrix(), b.matrix()) < 1e-8);
        }
    }

    #[test]
    fn zero_time_returns_initial_state() {
        let m = model(linalg::kron(&linalg::pauli_x(), &linalg::pauli_x()));
        let rho0 = DensityMatrix::from_diagonal(&[0.9, 0.1]).unwrap();
        let joint = joint_evolution(&m, &rho0, 0.0, 10).unwrap();
        assert_eq!(joint.system.len(), 1);
        assert!(max_abs_diff(joint.system.initial().matrix(), rho0.matrix()) < 1e-12);
    }

    #[test]
    fn joint_purity_is_conserved() {
        let m = model(linalg::kron(&linalg::pauli_x(), &linalg::pauli_y()) * c(0.8));
        let rho0 = DensityMatrix::pure(&[c(0.3), c(1.0)]).unwrap();
        let joint = joint_evolution(&m, &rho0, 2.0, 100).unwrap();
        let p0 = joint.joint_states[0].purity();
        for s in &joint.joint_states {
            assert!((s.purity() - p0).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_inconsistent_dims() {
        let bad = JointModel::new(
            linalg::pauli_z(),
            linalg::pauli_z(),
            ComplexMatrix::zeros(3, 3),
            DensityMatrix::maximally_mixed(2).unwrap(),
        );
        assert!(bad.is_err());
        let m = model(ComplexMatrix::zeros(4, 4));
        assert!(joint_evolution(&m, &DensityMatrix::maximally_mixed(3).unwrap(), 1.0, 10).is_err());
    }
}
