//! Speed terms: norms of `d rho / dt` along an orbit and their closed forms
//! and upper bounds for specific dynamics.

use crate::dynamics::{JointModel, LindbladModel, Orbit};
use crate::error::{QslError, Result};
use crate::linalg::{self, ComplexMatrix, I};
use crate::state::DensityMatrix;

const RHS_TOL: f64 = 1e-10;

/// Norm used to measure `d rho / dt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpeedNorm {
    /// `sqrt(tr[X^2])`.
    #[default]
    HilbertSchmidt,
    /// Largest absolute eigenvalue.
    Operator,
}

/// Instantaneous speeds on an orbit's grid and their time average.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedProfile {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    /// Trapezoid-rule mean over `[0, tau]`.
    pub average: f64,
}

impl SpeedProfile {
    fn from_values(times: Vec<f64>, values: Vec<f64>) -> Self {
        let average = trapezoid_mean(&times, &values);
        Self {
            times,
            values,
            average,
        }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

fn trapezoid_mean(times: &[f64], values: &[f64]) -> f64 {
    let span = times[times.len() - 1] - times[0];
    let integral: f64 = times
        .windows(2)
        .zip(values.windows(2))
        .map(|(t, v)| 0.5 * (v[0] + v[1]) * (t[1] - t[0]))
        .sum();
    integral / span
}

fn check_rhs(rhs: &ComplexMatrix) -> Result<()> {
    linalg::check_hermitian(rhs, RHS_TOL)?;
    let tr = rhs.trace().norm();
    if tr > RHS_TOL {
        return Err(QslError::OutOfRange {
            name: "tr[d rho/dt]",
            value: tr,
            expected: "0",
        });
    }
    Ok(())
}

/// `||d rho / dt|| = sqrt(tr[rhs^2])`.
pub fn instantaneous_speed(rhs: &ComplexMatrix) -> Result<f64> {
    instantaneous_speed_in(rhs, SpeedNorm::HilbertSchmidt)
}

pub fn instantaneous_speed_in(rhs: &ComplexMatrix, norm: SpeedNorm) -> Result<f64> {
    check_rhs(rhs)?;
    Ok(match norm {
        SpeedNorm::HilbertSchmidt => linalg::hs_norm(rhs),
        SpeedNorm::Operator => linalg::hermitian_operator_norm(rhs),
    })
}

/// Derivatives along the orbit: the stored generator values when present,
/// otherwise central differences with second-order one-sided stencils at
/// the endpoints.
pub fn orbit_derivatives(orbit: &Orbit) -> Result<Vec<ComplexMatrix>> {
    if orbit.len() < 2 {
        return Err(QslError::OrbitTooShort(orbit.len()));
    }
    if let Some(rhs) = orbit.rhs_values() {
        return Ok(rhs.to_vec());
    }
    let h = orbit.step();
    let s: Vec<&ComplexMatrix> = orbit.states().iter().map(|x| x.matrix()).collect();
    let n = s.len();
    let inv = linalg::c(1.0 / h);
    let half_inv = linalg::c(0.5 / h);
    if n == 2 {
        let d = (s[1] - s[0]) * inv;
        return Ok(vec![d.clone(), d]);
    }
    let three = linalg::c(3.0);
    let four = linalg::c(4.0);
    Ok((0..n)
        .map(|i| {
            if i == 0 {
                (s[1] * four - s[0] * three - s[2]) * half_inv
            } else if i == n - 1 {
                (s[n - 1] * three - s[n - 2] * four + s[n - 3]) * half_inv
            } else {
                (s[i + 1] - s[i - 1]) * half_inv
            }
        })
        .collect())
}

/// Hilbert-Schmidt speed profile of an orbit.
pub fn orbit_speed_profile(orbit: &Orbit) -> Result<SpeedProfile> {
    orbit_speed_profile_in(orbit, SpeedNorm::HilbertSchmidt)
}

pub fn orbit_speed_profile_in(orbit: &Orbit, norm: SpeedNorm) -> Result<SpeedProfile> {
    let values = orbit_derivatives(orbit)?
        .iter()
        .map(|d| instantaneous_speed_in(d, norm))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpeedProfile::from_values(orbit.times().to_vec(), values))
}

/// Profile of `||d rho_t / dt|| / ||rho_t||`, the speed term of the
/// normalized-overlap bound.
pub fn orbit_relative_speed_profile(orbit: &Orbit) -> Result<SpeedProfile> {
    let speeds = orbit_speed_profile(orbit)?;
    let values = speeds
        .values
        .iter()
        .zip(orbit.states())
        .map(|(v, s)| v / s.purity().sqrt())
        .collect();
    Ok(SpeedProfile::from_values(speeds.times, values))
}

/// Closed-form unitary speed `sqrt(2 tr[H^2 rho^2 - (H rho)^2])`.
pub fn unitary_speed(h: &ComplexMatrix, rho: &DensityMatrix) -> Result<f64> {
    linalg::check_hermitian(h, 1e-12)?;
    if h.nrows() != rho.dim() {
        return Err(QslError::DimensionMismatch(h.nrows(), rho.dim()));
    }
    let hr = h * rho.matrix();
    let h2 = h * h;
    let r2 = rho.matrix() * rho.matrix();
    let value = 2.0 * (linalg::trace_product(&h2, &r2) - linalg::trace_product(&hr, &hr)).re;
    Ok(value.max(0.0).sqrt())
}

/// `-i[H, rho]`, the generator of closed dynamics.
pub fn unitary_rhs(h: &ComplexMatrix, rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if h.nrows() != rho.dim() {
        return Err(QslError::DimensionMismatch(h.nrows(), rho.dim()));
    }
    Ok(linalg::commutator(h, rho.matrix()) * (-I))
}

/// Speed estimated from three overlaps of two nearby states:
/// `tr[rho'^2] ~ (tr[rho2^2] + tr[rho1^2] - 2 tr[rho2 rho1]) / dt^2`.
///
/// Only overlaps are needed, so each term is measurable with a swap test.
pub fn overlap_speed_estimate(rho1: &DensityMatrix, rho2: &DensityMatrix, dt: f64) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(QslError::OutOfRange {
            name: "dt",
            value: dt,
            expected: "(0, inf)",
        });
    }
    rho1.check_same_dim(rho2)?;
    let num = rho2.purity() + rho1.purity() - 2.0 * rho1.overlap(rho2);
    Ok(num.max(0.0).sqrt() / dt)
}

/// Upper bound `2 sum_k gamma_k^2 ||L_k||^2` on the time-averaged speed of
/// purely dissipative dynamics.
///
/// The rates enter squared, exactly as in the inequality this implements,
/// so the result only has units of a rate when `gamma_k` is dimensionless.
/// Requires the orthonormal traceless channel convention.
pub fn lindblad_speed_upper(model: &LindbladModel) -> Result<f64> {
    model.check_orthonormal_traceless()?;
    Ok(2.0
        * model
            .channels()
            .iter()
            .map(|ch| ch.rate * ch.rate * linalg::hs_norm(&ch.operator).powi(2))
            .sum::<f64>())
}

/// `sqrt(2) gamma`, the speed bound for qubit pure dephasing.
pub fn dephasing_speed_bound(gamma: f64) -> Result<f64> {
    if !(gamma >= 0.0) {
        return Err(QslError::OutOfRange {
            name: "gamma",
            value: gamma,
            expected: "[0, inf)",
        });
    }
    Ok(std::f64::consts::SQRT_2 * gamma)
}

/// Reduced speed of a system coupled to an environment.
///
/// Returns `||-i[H_S, rho] - i tr_E[H_int, Pi]||` together with the looser
/// split `||-i[H_S, rho]|| + ||-i tr_E[H_int, Pi]||`. The environment
/// Hamiltonian drops out because `tr_E[1 (x) H_E, Pi] = 0`.
pub fn system_env_speed(model: &JointModel, joint_state: &DensityMatrix) -> Result<(f64, f64)> {
    let (ds, de) = (model.dim_s(), model.dim_e());
    if joint_state.dim() != ds * de {
        return Err(QslError::DimensionMismatch(joint_state.dim(), ds * de));
    }
    let rho = linalg::partial_trace_second(joint_state.matrix(), ds, de);
    let local = linalg::commutator(model.h_s(), &rho) * (-I);
    let coupling = linalg::partial_trace_second(
        &(linalg::commutator(model.h_int(), joint_state.matrix()) * (-I)),
        ds,
        de,
    );
    let exact = linalg::hs_norm(&(&local + &coupling));
    let split = linalg::hs_norm(&local) + linalg::hs_norm(&coupling);
    Ok((exact, split))
}

/// Triangle-inequality bound on the speed of a memory-kernel master
/// equation. Each term of the right-hand side is bounded separately and the
/// norms are summed.
pub fn memory_kernel_speed_upper(
    local_norm: f64,
    kernel_term_norms: &[f64],
    inhom_norm: f64,
) -> Result<f64> {
    let all = std::iter::once(local_norm)
        .chain(kernel_term_norms.iter().copied())
        .chain(std::iter::once(inhom_norm));
    let mut total = 0.0;
    for v in all {
        if !(v >= 0.0) {
            return Err(QslError::OutOfRange {
                name: "norm",
                value: v,
                expected: "[0, inf)",
            });
        }
        total += v;
    }
    Ok(total)
}
