//! Orbit generation for unitary, Lindblad, depolarizing and joint
//! system-environment dynamics.
//!
//! Integration is classical fixed-step RK4. States are never renormalized:
//! trace drift and loss of positivity are checked after every step and
//! reported as [`QslError::IntegrationFailure`].

mod depolarizing;
mod joint;
mod lindblad;
mod unitary;

pub use depolarizing::{depolarize_state, depolarizing_orbit, mix_with_fixed_point, DepolarizingSchedule};
pub use joint::{joint_evolution, JointModel, JointOrbit};
pub use lindblad::{integrate_lindblad, lindblad_rhs, Channel, LindbladModel};
pub use unitary::{propagate_unitary, StaticHamiltonian};

use crate::error::{QslError, Result};
use crate::linalg::{self, c, ComplexMatrix};
use crate::state::DensityMatrix;

/// Default grid density, in steps per unit time.
pub const DEFAULT_STEPS_PER_UNIT_TIME: usize = 1000;

/// Maximum trace drift accepted along an orbit.
pub const TRACE_DRIFT_TOL: f64 = 1e-8;
/// Hermiticity tolerance for integrated states, which accumulate rounding.
pub const ORBIT_HERMITIAN_TOL: f64 = 1e-10;
const UNIFORM_GRID_TOL: f64 = 1e-12;

/// Right-hand side `d rho / dt = G(t, rho)` of a linear master equation.
pub trait Generator {
    fn dim(&self) -> usize;

    fn rhs(&self, t: f64, rho: &ComplexMatrix) -> ComplexMatrix;

    fn is_time_independent(&self) -> bool;
}

/// A uniformly sampled path of states over `[0, tau]`.
#[derive(Debug, Clone)]
pub struct Orbit {
    times: Vec<f64>,
    states: Vec<DensityMatrix>,
    rhs: Option<Vec<ComplexMatrix>>,
}

impl Orbit {
    /// Checks the grid is uniform and strictly increasing from zero, that all
    /// states share one dimension, and that trace drift stays within
    /// [`TRACE_DRIFT_TOL`].
    pub fn new(
        times: Vec<f64>,
        states: Vec<DensityMatrix>,
        rhs: Option<Vec<ComplexMatrix>>,
    ) -> Result<Self> {
        if states.is_empty() || times.len() != states.len() {
            return Err(QslError::OrbitTooShort(states.len().min(times.len())));
        }
        if let Some(r) = &rhs {
            if r.len() != states.len() {
                return Err(QslError::DimensionMismatch(r.len(), states.len()));
            }
        }
        if times[0] != 0.0 {
            return Err(QslError::OutOfRange {
                name: "t0",
                value: times[0],
                expected: "0",
            });
        }
        if times.len() > 1 {
            let dt = times[1] - times[0];
            for w in times.windows(2) {
                let step = w[1] - w[0];
                if !(step > 0.0) || (step - dt).abs() > UNIFORM_GRID_TOL * dt.max(1.0) {
                    return Err(QslError::OutOfRange {
                        name: "time step",
                        value: step,
                        expected: "a uniform, strictly increasing grid",
                    });
                }
            }
        }
        let dim = states[0].dim();
        for s in &states {
            if s.dim() != dim {
                return Err(QslError::DimensionMismatch(s.dim(), dim));
            }
        }
        let drift = states
            .iter()
            .map(|s| (s.matrix().trace().re - 1.0).abs())
            .fold(0.0, f64::max);
        if drift > TRACE_DRIFT_TOL {
            return Err(QslError::InvalidTrace(1.0 + drift));
        }
        Ok(Self { times, states, rhs })
    }

    /// Uniform grid `t_k = k tau / steps`, `k = 0..=steps`.
    pub fn grid(tau: f64, steps: usize) -> Vec<f64> {
        (0..=steps).map(|k| tau * k as f64 / steps as f64).collect()
    }

    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn rhs_values(&self) -> Option<&[ComplexMatrix]> {
        self.rhs.as_deref()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn tau(&self) -> f64 {
        *self.times.last().expect("orbit is non-empty")
    }

    pub fn step(&self) -> f64 {
        if self.times.len() < 2 {
            0.0
        } else {
            self.times[1] - self.times[0]
        }
    }

    pub fn initial(&self) -> &DensityMatrix {
        &self.states[0]
    }

    pub fn last(&self) -> &DensityMatrix {
        self.states.last().expect("orbit is non-empty")
    }

    /// Orbit traversed backwards on the same grid; derivatives flip sign.
    pub fn reversed(&self) -> Orbit {
        let states = self.states.iter().rev().cloned().collect();
        let rhs = self
            .rhs
            .as_ref()
            .map(|r| r.iter().rev().map(|m| -m).collect());
        Orbit {
            times: self.times.clone(),
            states,
            rhs,
        }
    }

    /// Drops stored derivatives so consumers fall back to finite differences.
    pub fn without_rhs(&self) -> Orbit {
        Orbit {
            rhs: None,
            ..self.clone()
        }
    }

    /// Applies a state map and a derivative map pointwise.
    pub fn map(
        &self,
        state: impl Fn(&DensityMatrix) -> Result<DensityMatrix>,
        derivative: impl Fn(&ComplexMatrix) -> ComplexMatrix,
    ) -> Result<Orbit> {
        let states = self.states.iter().map(state).collect::<Result<Vec<_>>>()?;
        let rhs = self.rhs.as_ref().map(|r| r.iter().map(derivative).collect());
        Orbit::new(self.times.clone(), states, rhs)
    }
}

/// Accepts an integrated matrix as an orbit state.
pub(crate) fn orbit_state(m: ComplexMatrix, step: usize) -> Result<DensityMatrix> {
    DensityMatrix::with_tolerances(m, ORBIT_HERMITIAN_TOL, TRACE_DRIFT_TOL).map_err(|e| {
        QslError::IntegrationFailure {
            step,
            reason: e.to_string(),
        }
    })
}

/// Classical fourth-order Runge-Kutta over a uniform grid.
pub fn integrate<G: Generator + ?Sized>(
    generator: &G,
    rho0: &DensityMatrix,
    tau: f64,
    steps: usize,
) -> Result<Orbit> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(QslError::OutOfRange {
            name: "tau",
            value: tau,
            expected: "(0, inf)",
        });
    }
    if steps == 0 {
        return Err(QslError::OutOfRange {
            name: "steps",
            value: 0.0,
            expected: ">= 1",
        });
    }
    if rho0.dim() != generator.dim() {
        return Err(QslError::DimensionMismatch(rho0.dim(), generator.dim()));
    }
    let times = Orbit::grid(tau, steps);
    let dt = tau / steps as f64;
    let half = c(0.5 * dt);
    let full = c(dt);
    let sixth = c(dt / 6.0);
    let two = c(2.0);

    let mut states = Vec::with_capacity(steps + 1);
    let mut rhs = Vec::with_capacity(steps + 1);
    let mut current = rho0.matrix().clone();
    let mut k1 = generator.rhs(0.0, &current);
    states.push(rho0.clone());
    rhs.push(k1.clone());
    for (n, &t) in times[..steps].iter().enumerate() {
        let k2 = generator.rhs(t + 0.5 * dt, &(&current + &k1 * half));
        let k3 = generator.rhs(t + 0.5 * dt, &(&current + &k2 * half));
        let k4 = generator.rhs(t + dt, &(&current + &k3 * full));
        current += (k1 + (k2 + k3) * two + k4) * sixth;
        if !linalg::is_finite(&current) {
            return Err(QslError::IntegrationFailure {
                step: n + 1,
                reason: "non-finite state".into(),
            });
        }
        states.push(orbit_state(current.clone(), n + 1)?);
        k1 = generator.rhs(times[n + 1], &current);
        rhs.push(k1.clone());
    }
    Orbit::new(times, states, Some(rhs))
}
