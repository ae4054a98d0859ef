//! Invariance of `T_D` under mixing with a fixed point and under appending
//! an idle ancilla.

use crate::dynamics::{mix_with_fixed_point, Generator, Orbit};
use crate::error::{QslError, Result};
use crate::linalg;
use crate::metrics::hs_distance;
use crate::speed::orbit_speed_profile;
use crate::state::{tensor, DensityMatrix};

use super::t_d;

/// Bound and distance before and after a transformation of the orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustnessCheck {
    pub t_before: f64,
    pub t_after: f64,
    pub distance_before: f64,
    pub distance_after: f64,
}

/// Largest generator norm accepted for a fixed point.
pub const STATIONARY_TOL: f64 = 1e-8;

fn t_d_of(orbit: &Orbit) -> Result<(f64, f64)> {
    let avg = orbit_speed_profile(orbit)?.average;
    let r = t_d(orbit.initial(), orbit.last(), avg)?;
    Ok((r.value, r.distance_term))
}

/// Compares `T_D` on `orbit` with `T_D` on the mixed orbit
/// `eps rho_t + (1 - eps) phi`.
///
/// The mixed orbit's derivatives are obtained by applying `generator` to
/// the mixed states, so agreement checks linearity and stationarity rather
/// than assuming them. The generator must be time independent and `phi`
/// stationary under it.
pub fn mixing_invariance_check<G: Generator + ?Sized>(
    generator: &G,
    orbit: &Orbit,
    eps: f64,
    fixed_point: &DensityMatrix,
) -> Result<RobustnessCheck> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(QslError::OutOfRange {
            name: "epsilon",
            value: eps,
            expected: "(0, 1]",
        });
    }
    if !generator.is_time_independent() {
        return Err(QslError::OutOfRange {
            name: "generator",
            value: f64::NAN,
            expected: "a time-independent generator",
        });
    }
    if fixed_point.dim() != orbit.dim() {
        return Err(QslError::DimensionMismatch(fixed_point.dim(), orbit.dim()));
    }
    let drift = linalg::hs_norm(&generator.rhs(0.0, fixed_point.matrix()));
    if drift > STATIONARY_TOL {
        return Err(QslError::NotStationary(drift));
    }
    let (t_before, distance_before) = t_d_of(orbit)?;
    let states = orbit
        .states()
        .iter()
        .map(|s| mix_with_fixed_point(s, fixed_point, eps))
        .collect::<Result<Vec<_>>>()?;
    let rhs = states
        .iter()
        .zip(orbit.times())
        .map(|(s, &t)| generator.rhs(t, s.matrix()))
        .collect();
    let mixed = Orbit::new(orbit.times().to_vec(), states, Some(rhs))?;
    let (t_after, distance_after) = t_d_of(&mixed)?;
    Ok(RobustnessCheck {
        t_before,
        t_after,
        distance_before,
        distance_after,
    })
}

/// Compares `T_D` on `orbit` with `T_D` on `rho_t (x) ancilla`, where the
/// ancilla does not take part in the dynamics.
pub fn composition_invariance_check(orbit: &Orbit, ancilla: &DensityMatrix) -> Result<RobustnessCheck> {
    let (t_before, _) = t_d_of(orbit)?;
    let distance_before = hs_distance(orbit.initial(), orbit.last())?;
    let extended = orbit.map(
        |s| Ok(tensor(s, ancilla)),
        |d| linalg::kron(d, ancilla.matrix()),
    )?;
    let (t_after, distance_after) = t_d_of(&extended)?;
    Ok(RobustnessCheck {
        t_before,
        t_after,
        distance_before,
        distance_after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{integrate_lindblad, propagate_unitary, LindbladModel, StaticHamiltonian};
    use crate::linalg::c;

    fn plus() -> DensityMatrix {
        DensityMatrix::pure(&[c(1.0), c(1.0)]).unwrap()
    }

    #[test]
    fn eps_one_is_identity() {
        let m = LindbladModel::qubit_dephasing(1.0).unwrap();
        let o = integrate_lindblad(&m, &plus(), 1.0, 200).unwrap();
        let phi = DensityMatrix::maximally_mixed(2).unwrap();
        let r = mixing_invariance_check(&m, &o, 1.0, &phi).unwrap();
        assert_eq!(r.t_before, r.t_after);
    }

    #[test]
    fn unitary_orbit_mixed_with_identity() {
        let h = StaticHamiltonian::new(linalg::pauli_z()).unwrap();
        let o = propagate_unitary(|_| linalg::pauli_z(), &plus(), 1.0, 500).unwrap();
        let phi = DensityMatrix::maximally_mixed(2).unwrap();
        let r = mixing_invariance_check(&h, &o, 0.5, &phi).unwrap();
        assert!((r.t_before - r.t_after).abs() < 1e-9);
        assert!((r.distance_after - 0.5 * r.distance_before).abs() < 1e-12);
    }

    #[test]
    fn dephasing_with_diagonal_fixed_point() {
        let rho0 = DensityMatrix::pure(&[c(0.6), c(0.8)]).unwrap();
        let m = LindbladModel::qubit_dephasing(1.0).unwrap();
        let o = integrate_lindblad(&m, &rho0, 1.0, 500).unwrap();
        let phi = DensityMatrix::from_diagonal(&[0.36, 0.64]).unwrap();
        let r = mixing_invariance_check(&m, &o, 0.3, &phi).unwrap();
        assert!((r.t_before - r.t_after).abs() < 1e-9);
    }

    #[test]
    fn non_stationary_fixed_point_rejected() {
        let m = LindbladModel::qubit_dephasing(1.0).unwrap();
        let o = integrate_lindblad(&m, &plus(), 1.0, 50).unwrap();
        assert!(matches!(
            mixing_invariance_check(&m, &o, 0.5, &plus()),
            Err(QslError::NotStationary(_))
        ));
        let phi = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(mixing_invariance_check(&m, &o, 0.0, &phi).is_err());
    }

    #[test]
    fn ancilla_examples() {
        let m = LindbladModel::qubit_dephasing(0.5).unwrap();
        let o = integrate_lindblad(&m, &plus(), 1.0, 200).unwrap();
        let cases = [
            (DensityMatrix::basis(2, 1).unwrap(), 1.0),
            (DensityMatrix::maximally_mixed(2).unwrap(), 0.5f64.sqrt()),
            (DensityMatrix::maximally_mixed(4).unwrap(), 0.5),
        ];
        for (anc, factor) in cases {
            let r = composition_invariance_check(&o, &anc).unwrap();
            assert!((r.distance_after - factor * r.distance_before).abs() < 1e-10);
            assert!((r.t_after - r.t_before).abs() < 1e-9);
        }
    }
}
