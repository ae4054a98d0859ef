//! Orbits on which `T_D` is tight, plus one where it is not.
//!
//! CSV columns: `model, tau, T_D, ratio`, with `ratio = T_D / tau`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use qsl_core::bounds::t_d;
use qsl_core::dynamics::{
    depolarizing_orbit, integrate_lindblad, propagate_unitary, DepolarizingSchedule, LindbladModel, Orbit,
};
use qsl_core::linalg;
use qsl_core::speed::orbit_speed_profile;
use qsl_core::DensityMatrix;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::Table;

use super::Outcome;

/// Slack on `T_D <= tau`.
pub const SHOWCASE_TOL: f64 = 1e-6;

pub const DEPOLARIZING_TAUS: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Clone, PartialEq)]
pub struct ShowcaseRow {
    pub model: String,
    pub tau: f64,
    pub t_d: f64,
}

impl ShowcaseRow {
    pub fn ratio(&self) -> f64 {
        self.t_d / self.tau
    }
}

fn t_d_of(orbit: &Orbit) -> Result<f64> {
    let avg = orbit_speed_profile(orbit)?.average;
    Ok(t_d(orbit.initial(), orbit.last(), avg)?.value)
}

fn plus() -> qsl_core::Result<DensityMatrix> {
    DensityMatrix::pure(&[Complex64::new(1.0, 0.0); 2])
}

/// Linear depolarizing from `|0>` to `1/2` over `[0, tau]`.
pub fn depolarizing(tau: f64, steps: usize) -> Result<ShowcaseRow> {
    let rho0 = DensityMatrix::basis(2, 0)?;
    let orbit = depolarizing_orbit(&rho0, &DepolarizingSchedule::linear(tau, 0.0), tau, steps)?;
    Ok(ShowcaseRow {
        model: "depolarizing-linear".into(),
        tau,
        t_d: t_d_of(&orbit)?,
    })
}

/// Qubit dephasing at rate `gamma` from the equator state `|+>`.
pub fn dephasing(gamma: f64, tau: f64, steps: usize) -> Result<ShowcaseRow> {
    let model = LindbladModel::qubit_dephasing(gamma)?;
    let orbit = integrate_lindblad(&model, &plus()?, tau, steps)?;
    Ok(ShowcaseRow {
        model: "dephasing".into(),
        tau,
        t_d: t_d_of(&orbit)?,
    })
}

/// Precession of `|+>` under `sigma_z` for half a period. The chord is
/// shorter than the arc, so `T_D / tau = 2 / pi`.
pub fn unitary_half_period(steps: usize) -> Result<ShowcaseRow> {
    let orbit = propagate_unitary(|_| linalg::pauli_z(), &plus()?, FRAC_PI_2, steps)?;
    Ok(ShowcaseRow {
        model: "unitary-half-period".into(),
        tau: FRAC_PI_2,
        t_d: t_d_of(&orbit)?,
    })
}

pub fn showcase_rows(steps: usize) -> Result<Vec<ShowcaseRow>> {
    let mut rows = DEPOLARIZING_TAUS
        .iter()
        .map(|&tau| depolarizing(tau, steps))
        .collect::<Result<Vec<_>>>()?;
    rows.push(dephasing(1.0, 1.0, steps)?);
    rows.push(unitary_half_period(steps)?);
    Ok(rows)
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    let rows = showcase_rows(cfg.steps)?;
    let mut table = Table::new(&["model", "tau", "T_D", "ratio"]);
    for r in &rows {
        table.push(vec![r.model.as_str().into(), r.tau.into(), r.t_d.into(), r.ratio().into()]);
    }
    let mut outcome = Outcome::new(table);
    outcome.violations = rows.iter().filter(|r| r.ratio() > 1.0 + SHOWCASE_TOL).count();
    for r in &rows {
        outcome.summary.push(format!("{} (tau = {}): {:.16e}", r.model, r.tau, r.ratio()));
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturation_and_chord() {
        for r in showcase_rows(1000).unwrap() {
            match r.model.as_str() {
                "unitary-half-period" => {
                    assert!((r.ratio() - 2.0 / std::f64::consts::PI).abs() < 1e-6);
                }
                _ => assert!((r.ratio() - 1.0).abs() < 1e-6, "{}: {}", r.model, r.ratio()),
            }
        }
    }
}
