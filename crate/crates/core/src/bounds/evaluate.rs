use crate::dynamics::Orbit;
use crate::error::{QslError, Result};
use crate::speed::{orbit_relative_speed_profile, orbit_speed_profile, orbit_speed_profile_in, SpeedNorm};

use super::{
    t_d, t_deffner, t_deffner_operator, t_deffner_star, t_delcampo, t_sun, t_sun_star, BoundReport,
    Validity,
};

/// Relative slack allowed when checking `bound <= tau`.
pub const VALIDITY_SLACK: f64 = 1e-6;

/// A bound computed outside this crate, evaluated on the same orbit as the
/// built-in ones.
pub trait ExternalBound: Send + Sync {
    fn name(&self) -> &str;

    fn evaluate(&self, orbit: &Orbit) -> Result<BoundReport>;
}

#[derive(Default)]
pub struct EvaluationOptions {
    /// Also report the Deffner bound with an operator-norm speed.
    pub deffner_operator_norm: bool,
    pub plugins: Vec<Box<dyn ExternalBound>>,
}

/// All bounds on one orbit.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub reports: Vec<BoundReport>,
    /// Length of the orbit, `tau`.
    pub elapsed: f64,
    pub avg_speed: f64,
    pub avg_relative_speed: f64,
}

impl Evaluation {
    pub fn get(&self, name: &str) -> Option<&BoundReport> {
        self.reports.iter().find(|r| r.name == name)
    }

    /// Proven bounds exceeding `tau (1 + 1e-6)`.
    pub fn violations(&self) -> impl Iterator<Item = &BoundReport> {
        let limit = self.elapsed * (1.0 + VALIDITY_SLACK);
        self.reports
            .iter()
            .filter(move |r| r.validity == Validity::Proven && r.value > limit)
    }

    pub fn check_validity(&self) -> Result<()> {
        match self.violations().next() {
            Some(r) => Err(QslError::BoundViolation {
                name: r.name.clone(),
                value: r.value,
                tau: self.elapsed,
            }),
            None => Ok(()),
        }
    }

    /// Largest `value / tau` among proven bounds.
    pub fn max_proven_ratio(&self) -> f64 {
        self.reports
            .iter()
            .filter(|r| r.validity == Validity::Proven)
            .map(|r| r.value / self.elapsed)
            .fold(0.0, f64::max)
    }
}

/// Evaluates `T_D` and every comparison bound between the endpoints of
/// `orbit`, sharing one speed average.
///
/// Any proven bound exceeding `tau (1 + 1e-6)` is reported as
/// [`QslError::BoundViolation`].
pub fn evaluate_all(orbit: &Orbit) -> Result<Evaluation> {
    evaluate_all_with(orbit, &EvaluationOptions::default())
}

pub fn evaluate_all_with(orbit: &Orbit, options: &EvaluationOptions) -> Result<Evaluation> {
    let evaluation = compute_all(orbit, options)?;
    evaluation.check_validity()?;
    Ok(evaluation)
}

/// [`evaluate_all_with`] without the validity check, for scans that record
/// violations instead of stopping at the first one.
pub fn compute_all(orbit: &Orbit, options: &EvaluationOptions) -> Result<Evaluation> {
    let speed = orbit_speed_profile(orbit)?;
    let relative = orbit_relative_speed_profile(orbit)?;
    let (rho, sigma) = (orbit.initial(), orbit.last());
    let avg = speed.average;

    let mut reports = vec![
        t_d(rho, sigma, avg)?,
        t_sun(rho, sigma, relative.average)?,
        t_sun_star(rho, sigma, avg)?,
        t_delcampo(rho, sigma, avg)?,
        t_deffner(rho, sigma, avg)?,
        t_deffner_star(rho, sigma, avg)?,
    ];
    if options.deffner_operator_norm {
        let op = orbit_speed_profile_in(orbit, SpeedNorm::Operator)?;
        reports.push(t_deffner_operator(rho, sigma, op.average)?);
    }
    for plugin in &options.plugins {
        reports.push(plugin.evaluate(orbit)?);
    }

    Ok(Evaluation {
        reports,
        elapsed: orbit.tau(),
        avg_speed: avg,
        avg_relative_speed: relative.average,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::names;
    use crate::dynamics::{depolarizing_orbit, DepolarizingSchedule};
    use crate::linalg::c;
    use crate::state::DensityMatrix;

    #[test]
    fn constant_orbit_all_zero() {
        let rho = DensityMatrix::from_diagonal(&[0.2, 0.8]).unwrap();
        let o = depolarizing_orbit(&rho, &DepolarizingSchedule::constant(), 1.0, 10).unwrap();
        let e = evaluate_all(&o).unwrap();
        assert!(e.reports.iter().all(|r| r.value == 0.0));
    }

    #[test]
    fn linear_depolarizing_saturates_t_d() {
        let rho = DensityMatrix::pure(&[c(0.6), c(0.8)]).unwrap();
        let o = depolarizing_orbit(&rho, &DepolarizingSchedule::linear(1.0, 0.0), 1.0, 100).unwrap();
        let e = evaluate_all(&o).unwrap();
        assert!((e.get(names::T_D).unwrap().value - 1.0).abs() < 1e-12);
        for r in &e.reports {
            assert!(r.value <= 1.0 + 1e-12, "{} = {}", r.name, r.value);
        }
    }

    struct Fixed(f64);

    impl ExternalBound for Fixed {
        fn name(&self) -> &str {
            "fixed"
        }
        fn evaluate(&self, _orbit: &Orbit) -> Result<BoundReport> {
            BoundReport::new("fixed", self.0, 1.0, Validity::Proven)
        }
    }

    #[test]
    fn plugin_reports_are_checked() {
        let rho = DensityMatrix::pure(&[c(0.6), c(0.8)]).unwrap();
        let o = depolarizing_orbit(&rho, &DepolarizingSchedule::linear(1.0, 0.0), 1.0, 10).unwrap();
        let ok = EvaluationOptions {
            deffner_operator_norm: true,
            plugins: vec![Box::new(Fixed(0.5))],
        };
        let e = evaluate_all_with(&o, &ok).unwrap();
        assert!(e.get("fixed").is_some());
        assert!(e.get(names::DEFFNER_OPERATOR).is_some());
        let bad = EvaluationOptions {
            plugins: vec![Box::new(Fixed(2.0))],
            ..Default::default()
        };
        assert!(matches!(
            evaluate_all_with(&o, &bad),
            Err(QslError::BoundViolation { .. })
        ));
        let e = compute_all(&o, &bad).unwrap();
        assert_eq!(e.violations().count(), 1);
    }
}
