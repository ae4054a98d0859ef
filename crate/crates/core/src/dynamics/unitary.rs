use crate::error::{QslError, Result};
use crate::linalg::{self, ComplexMatrix, I};
use crate::state::DensityMatrix;

use super::{integrate, Generator, Orbit};

/// Closed evolution `d rho / dt = -i[H, rho]` under a fixed Hamiltonian.
#[derive(Debug, Clone)]
pub struct StaticHamiltonian(ComplexMatrix);

impl StaticHamiltonian {
    pub fn new(h: ComplexMatrix) -> Result<Self> {
        linalg::check_hermitian(&h, 1e-12)?;
        Ok(Self(h))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

impl Generator for StaticHamiltonian {
    fn dim(&self) -> usize {
        self.0.nrows()
    }

    fn rhs(&self, _t: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        linalg::commutator(&self.0, rho) * (-I)
    }

    fn is_time_independent(&self) -> bool {
        true
    }
}

struct SampledHamiltonian<F> {
    dim: usize,
    h: F,
}

impl<F: Fn(f64) -> ComplexMatrix> Generator for SampledHamiltonian<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn rhs(&self, t: f64, rho: &ComplexMatrix) -> ComplexMatrix {
        linalg::commutator(&(self.h)(t), rho) * (-I)
    }

    fn is_time_independent(&self) -> bool {
        false
    }
}

/// Propagates `d rho / dt = -i[H_t, rho]`. `h` is sampled at the grid
/// points and step midpoints, and every sample must be Hermitian.
pub fn propagate_unitary<F>(h: F, rho0: &DensityMatrix, tau: f64, steps: usize) -> Result<Orbit>
where
    F: Fn(f64) -> ComplexMatrix,
{
    if steps == 0 || !(tau > 0.0) {
        // Let the integrator report the invalid grid.
        return integrate(&SampledHamiltonian { dim: rho0.dim(), h }, rho0, tau, steps);
    }
    let dt = tau / steps as f64;
    for k in 0..=2 * steps {
        let sample = h(0.5 * dt * k as f64);
        if sample.nrows() != rho0.dim() || sample.ncols() != rho0.dim() {
            return Err(QslError::DimensionMismatch(sample.nrows(), rho0.dim()));
        }
        linalg::check_hermitian(&sample, 1e-12)?;
    }
    integrate(&SampledHamiltonian { dim: rho0.dim(), h }, rho0, tau, steps)
}
