use std::fmt;
use std::sync::Arc;

use crate::error::{QslError, Result};
use crate::linalg::{self, c, ComplexMatrix};
use crate::state::DensityMatrix;

use super::Orbit;

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(QslError::OutOfRange {
            name: "epsilon",
            value: eps,
            expected: "[0, 1]",
        });
    }
    Ok(())
}

/// `eps rho + (1 - eps) 1/d`. Shrinks the Bloch vector by `eps`.
pub fn depolarize_state(rho: &DensityMatrix, eps: f64) -> Result<DensityMatrix> {
    mix_with_fixed_point(rho, &DensityMatrix::maximally_mixed(rho.dim())?, eps)
}

/// `eps rho + (1 - eps) phi`.
pub fn mix_with_fixed_point(
    rho: &DensityMatrix,
    phi: &DensityMatrix,
    eps: f64,
) -> Result<DensityMatrix> {
    check_eps(eps)?;
    rho.check_same_dim(phi)?;
    DensityMatrix::new(rho.matrix() * c(eps) + phi.matrix() * c(1.0 - eps))
}

/// Contraction factor `eps(t)` of a purely depolarizing process.
#[derive(Clone)]
pub struct DepolarizingSchedule {
    epsilon: ScalarFn,
    derivative: Option<ScalarFn>,
    tag: String,
}

impl fmt::Debug for DepolarizingSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DepolarizingSchedule")
            .field("tag", &self.tag)
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl DepolarizingSchedule {
    /// Arbitrary schedule; `eps(0)` must equal one.
    pub fn new(
        tag: impl Into<String>,
        epsilon: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let e0 = epsilon(0.0);
        if (e0 - 1.0).abs() > 1e-12 {
            return Err(QslError::OutOfRange {
                name: "epsilon(0)",
                value: e0,
                expected: "1",
            });
        }
        Ok(Self {
            epsilon: Arc::new(epsilon),
            derivative: None,
            tag: tag.into(),
        })
    }

    /// Supplies `d eps / dt` instead of finite differences.
    pub fn with_derivative(mut self, d: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    pub fn constant() -> Self {
        Self::new("constant", |_| 1.0)
            .expect("eps(0) = 1")
            .with_derivative(|_| 0.0)
    }

    /// `eps(t) = 1 - (1 - eps_end) t / tau`.
    pub fn linear(tau: f64, eps_end: f64) -> Self {
        let slope = (1.0 - eps_end) / tau;
        Self::new("linear", move |t| 1.0 - slope * t)
            .expect("eps(0) = 1")
            .with_derivative(move |_| -slope)
    }

    /// `eps(t) = exp(-rate t)`.
    pub fn exponential(rate: f64) -> Self {
        Self::new("exponential", move |t| (-rate * t).exp())
            .expect("eps(0) = 1")
            .with_derivative(move |t| -rate * (-rate * t).exp())
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn epsilon(&self, t: f64) -> f64 {
        (self.epsilon)(t)
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }
}

/// `rho_t = eps(t) rho0 + (1 - eps(t)) 1/d` sampled on a uniform grid.
///
/// Derivatives are `eps'(t) (rho0 - 1/d)`, with `eps'` from the schedule if
/// supplied and otherwise second-order finite differences on the grid.
pub fn depolarizing_orbit(
    rho0: &DensityMatrix,
    schedule: &DepolarizingSchedule,
    tau: f64,
    steps: usize,
) -> Result<Orbit> {
    if !(tau > 0.0) || steps == 0 {
        return Err(QslError::OutOfRange {
            name: "tau/steps",
            value: tau,
            expected: "tau > 0 and steps >= 1",
        });
    }
    let times = Orbit::grid(tau, steps);
    let eps: Vec<f64> = times.iter().map(|&t| schedule.epsilon(t)).collect();
    for &e in &eps {
        check_eps(e)?;
    }
    let dt = tau / steps as f64;
    let rates: Vec<f64> = match &schedule.derivative {
        Some(d) => times.iter().map(|&t| d(t)).collect(),
        None => finite_difference(&eps, dt),
    };
    let centered = rho0.matrix() - linalg::identity(rho0.dim()) * c(1.0 / rho0.dim() as f64);
    let states = eps
        .iter()
        .map(|&e| depolarize_state(rho0, e))
        .collect::<Result<Vec<_>>>()?;
    let rhs: Vec<ComplexMatrix> = rates.iter().map(|&r| &centered * c(r)).collect();
    Orbit::new(times, states, Some(rhs))
}

/// Central differences inside, second-order one-sided at the ends.
fn finite_difference(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    if n == 2 {
        let d = (f[1] - f[0]) / h;
        return vec![d, d];
    }
    (0..n)
        .map(|i| {
            if i == 0 {
                (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
            } else if i == n - 1 {
                (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h)
            } else {
                (f[i + 1] - f[i - 1]) / (2.0 * h)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::{gell_mann_basis, to_bloch};
    use crate::linalg::max_abs_diff;

    fn zero() -> DensityMatrix {
        DensityMatrix::basis(2, 0).unwrap()
    }

    #[test]
    fn depolarize_examples() {
        let rho = DensityMatrix::pure(&[c(0.6), c(0.8)]).unwrap();
        assert_eq!(depolarize_state(&rho, 1.0).unwrap(), rho);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(max_abs_diff(depolarize_state(&rho, 0.0).unwrap().matrix(), mixed.matrix()) < 1e-15);
        let half = depolarize_state(&zero(), 0.5).unwrap();
        assert!(max_abs_diff(half.matrix(), &linalg::diag_real(&[0.75, 0.25])) < 1e-15);
        assert!(depolarize_state(&rho, 1.5).is_err());
        assert!(depolarize_state(&rho, -0.1).is_err());
    }

    #[test]
    fn mixing_examples() {
        let rho = zero();
        let phi = DensityMatrix::from_diagonal(&[0.2, 0.8]).unwrap();
        assert_eq!(mix_with_fixed_point(&rho, &phi, 1.0).unwrap(), rho);
        assert!(max_abs_diff(mix_with_fixed_point(&rho, &phi, 0.0).unwrap().matrix(), phi.matrix()) < 1e-15);
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(
            mix_with_fixed_point(&rho, &mixed, 0.3).unwrap(),
            depolarize_state(&rho, 0.3).unwrap()
        );
        assert!(mix_with_fixed_point(&rho, &phi, 2.0).is_err());
    }

    #[test]
    fn bloch_vector_scales_with_eps() {
        let basis = gell_mann_basis(3).unwrap();
        let rho = DensityMatrix::pure(&[c(0.6), c(0.0), c(0.8)]).unwrap();
        let r = to_bloch(&rho, &basis).unwrap();
        let r2 = to_bloch(&depolarize_state(&rho, 0.4).unwrap(), &basis).unwrap();
        assert!(r2.distance(&r.scaled(0.4)) < 1e-15);
    }

    #[test]
    fn constant_schedule_gives_constant_orbit() {
        let o = depolarizing_orbit(&zero(), &DepolarizingSchedule::constant(), 1.0, 8).unwrap();
        assert!(o.states().iter().all(|s| s == &zero()));
    }

    #[test]
    fn linear_schedule_ends_maximally_mixed() {
        let o = depolarizing_orbit(&zero(), &DepolarizingSchedule::linear(2.0, 0.0), 2.0, 10).unwrap();
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(max_abs_diff(o.last().matrix(), mixed.matrix()) < 1e-15);
    }

    #[test]
    fn orbit_is_collinear_with_initial_vector() {
        let basis = gell_mann_basis(2).unwrap();
        let rho = DensityMatrix::pure(&[c(0.6), num_complex::Complex64::new(0.0, 0.8)]).unwrap();
        let r0 = to_bloch(&rho, &basis).unwrap();
        let o = depolarizing_orbit(&rho, &DepolarizingSchedule::exponential(1.3), 1.0, 50).unwrap();
        for s in o.states() {
            let r = to_bloch(s, &basis).unwrap();
            // |r x r0| = 0 iff collinear: compare |r.r0| with |r||r0|.
            assert!((r.dot(&r0).abs() - r.norm() * r0.norm()).abs() < 1e-10);
        }
    }

    #[test]
    fn finite_differences_match_analytic_derivative() {
        let rate = 0.8;
        let analytic = DepolarizingSchedule::exponential(rate);
        let numeric = DepolarizingSchedule::new("exp-fd", move |t| (-rate * t).exp()).unwrap();
        let a = depolarizing_orbit(&zero(), &analytic, 1.0, 400).unwrap();
        let n = depolarizing_orbit(&zero(), &numeric, 1.0, 400).unwrap();
        for (x, y) in a.rhs_values().unwrap().iter().zip(n.rhs_values().unwrap()) {
            assert!(max_abs_diff(x, y) < 1e-5);
        }
    }

    #[test]
    fn schedule_leaving_unit_interval_is_rejected() {
        let s = DepolarizingSchedule::new("overshoot", |t| 1.0 - 2.0 * t).unwrap();
        assert!(depolarizing_orbit(&zero(), &s, 1.0, 10).is_err());
        assert!(DepolarizingSchedule::new("bad", |_| 0.5).is_err());
    }
}
