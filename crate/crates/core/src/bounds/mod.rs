//! Quantum speed limits on the evolution time between two states.
//!
//! Every bound here has the shape `distance / speed`, where the distance
//! depends only on the endpoints and the speed is an average along the
//! orbit. Bounds take the speed average as an argument so that several
//! bounds can be compared on the same orbit: with a shared speed term their
//! ordering reduces to the ordering of their distance terms.
//!
//! | bound | distance term | speed term |
//! |---|---|---|
//! | `T_D` | `\|\|rho - sigma\|\|` | `avg \|\|rho'\|\|` |
//! | Sun | `\|1 - z/sqrt(xy)\| / 2` | `avg(\|\|rho'\|\| / \|\|rho\|\|)` |
//! | Sun* | `\|1 - z/sqrt(xy)\| sqrt(x) / 2` | `avg \|\|rho'\|\|` |
//! | Del Campo | `\|x - z\|` | `avg \|\|rho'\|\|` |
//! | Deffner | `sin^2(arccos F)` | `avg \|\|rho'\|\|` |
//! | Deffner* | `sin^2(arccos E)` | `avg \|\|rho'\|\|` |
//!
//! with `x = tr[rho^2]`, `y = tr[sigma^2]`, `z = tr[rho sigma]`, `F` the
//! fidelity and `E` the sub-fidelity. Where a bound is not symmetric in its
//! arguments the purer state plays the role of `rho`.

mod evaluate;
mod robustness;

pub use evaluate::{compute_all, evaluate_all, evaluate_all_with, Evaluation, EvaluationOptions, ExternalBound};
pub use robustness::{composition_invariance_check, mixing_invariance_check, RobustnessCheck};

use std::fmt;

use crate::error::{QslError, Result};
use crate::metrics::{fidelity, hs_distance, state_pair_parameters, StatePairParams};
use crate::state::DensityMatrix;

/// Distance terms below this count as coincident endpoints.
pub const ZERO_DISTANCE_TOL: f64 = 1e-14;
/// Purity threshold above which a state counts as pure.
pub const PURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validity {
    /// Proven to lower-bound the evolution time for these endpoints.
    Proven,
    /// No proof covers these endpoints.
    Heuristic,
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Validity::Proven => "proven",
            Validity::Heuristic => "heuristic",
        })
    }
}

/// A bound value with the two terms it was formed from.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub distance_term: f64,
    pub speed_term: f64,
    pub value: f64,
    pub validity: Validity,
    pub notes: String,
}

impl BoundReport {
    /// Forms `distance / speed`. Zero speed is fine only for zero distance.
    pub fn new(name: impl Into<String>, distance_term: f64, speed_term: f64, validity: Validity) -> Result<Self> {
        let name = name.into();
        let (value, notes) = if distance_term <= ZERO_DISTANCE_TOL {
            (0.0, "coincident endpoints".to_string())
        } else if speed_term > 0.0 {
            (distance_term / speed_term, String::new())
        } else {
            return Err(QslError::UnreachableTarget(distance_term));
        };
        Ok(Self {
            name,
            distance_term,
            speed_term,
            value,
            validity,
            notes,
        })
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.notes.is_empty() {
            self.notes = note;
        } else {
            self.notes = format!("{}; {}", self.notes, note);
        }
        self
    }
}

pub mod names {
    pub const T_D: &str = "T_D";
    pub const SUN: &str = "Sun";
    pub const SUN_STAR: &str = "Sun*";
    pub const DEL_CAMPO: &str = "DelCampo";
    pub const DEFFNER: &str = "Deffner";
    pub const DEFFNER_STAR: &str = "Deffner*";
    pub const DEFFNER_OPERATOR: &str = "Deffner(op)";
}

fn check_speed(value: f64) -> Result<()> {
    if !(value >= 0.0) || !value.is_finite() {
        return Err(QslError::OutOfRange {
            name: "speed",
            value,
            expected: "[0, inf)",
        });
    }
    Ok(())
}

/// Orders the parameters so that `x >= y`.
fn purer_first(p: StatePairParams) -> StatePairParams {
    if p.x >= p.y {
        p
    } else {
        p.swapped()
    }
}

fn has_pure_endpoint(p: &StatePairParams) -> bool {
    p.x.max(p.y) >= 1.0 - PURE_TOL
}

fn sin2_arccos(overlap: f64) -> f64 {
    overlap.clamp(-1.0, 1.0).acos().sin().powi(2)
}

/// `|1 - z / sqrt(xy)| / 2`.
pub fn sun_distance(p: &StatePairParams) -> f64 {
    (1.0 - p.z / (p.x * p.y).sqrt()).abs() / 2.0
}

/// `|1 - z / sqrt(xy)| sqrt(x) / 2` with `x >= y`.
pub fn sun_star_distance(p: &StatePairParams) -> f64 {
    let p = purer_first(*p);
    sun_distance(&p) * p.x.sqrt()
}

/// `|1 - z / x| x = |x - z|` with `x >= y`.
pub fn del_campo_distance(p: &StatePairParams) -> f64 {
    let p = purer_first(*p);
    (p.x - p.z).abs()
}

/// `sin^2(arccos F)`, the Deffner numerator for a given fidelity.
pub fn deffner_distance(fidelity: f64) -> f64 {
    sin2_arccos(fidelity)
}

/// `sin^2(arccos E)` with `E` the sub-fidelity.
pub fn deffner_star_distance(p: &StatePairParams) -> f64 {
    sin2_arccos(p.sub_fidelity())
}

/// `sqrt(x + y - 2z)`, the Hilbert-Schmidt distance from overlaps.
pub fn t_d_distance(p: &StatePairParams) -> f64 {
    p.hs_distance_sq().sqrt()
}

/// `T_D = ||rho - sigma|| / avg ||rho'||`.
///
/// The Bloch-vector scale factor `sqrt(d / (d - 1))` multiplies both the
/// distance and the speed and is left out of both.
pub fn t_d(rho: &DensityMatrix, sigma: &DensityMatrix, avg_speed: f64) -> Result<BoundReport> {
    check_speed(avg_speed)?;
    BoundReport::new(names::T_D, hs_distance(rho, sigma)?, avg_speed, Validity::Proven)
}

/// Sun et al.; `avg_ratio` is the average of `||rho'_t|| / ||rho_t||`.
pub fn t_sun(rho: &DensityMatrix, sigma: &DensityMatrix, avg_ratio: f64) -> Result<BoundReport> {
    check_speed(avg_ratio)?;
    let p = state_pair_parameters(rho, sigma)?;
    BoundReport::new(names::SUN, sun_distance(&p), avg_ratio, Validity::Proven)
}

/// Sun bound with the relative speed replaced by the plain speed and the
/// distance weighted by `||rho||`.
pub fn t_sun_star(rho: &DensityMatrix, sigma: &DensityMatrix, avg_speed: f64) -> Result<BoundReport> {
    check_speed(avg_speed)?;
    let p = state_pair_parameters(rho, sigma)?;
    BoundReport::new(names::SUN_STAR, sun_star_distance(&p), avg_speed, Validity::Proven)
}

/// Del Campo et al., with the purer endpoint as reference.
pub fn t_delcampo(rho: &DensityMatrix, sigma: &DensityMatrix, avg_speed: f64) -> Result<BoundReport> {
    check_speed(avg_speed)?;
    let p = state_pair_parameters(rho, sigma)?;
    BoundReport::new(names::DEL_CAMPO, del_campo_distance(&p), avg_speed, Validity::Proven)
}

/// Deffner and Lutz, `sin^2(arccos F) / avg ||rho'||`.
///
/// Proven only when one endpoint is pure; otherwise the report is marked
/// [`Validity::Heuristic`].
pub fn t_deffner(rho: &DensityMatrix, sigma: &DensityMatrix, avg_speed: f64) -> Result<BoundReport> {
    deffner_with_name(names::DEFFNER, rho, sigma, avg_speed)
}

/// [`t_deffner`] with the speed measured in the operator norm. Pass the
/// operator-norm average from
/// [`orbit_speed_profile_in`](crate::speed::orbit_speed_profile_in).
pub fn t_deffner_operator(rho: &DensityMatrix, sigma: &DensityMatrix, avg_op_speed: f64) -> Result<BoundReport> {
    deffner_with_name(names::DEFFNER_OPERATOR, rho, sigma, avg_op_speed)
}

fn deffner_with_name(name: &str, rho: &DensityMatrix, sigma: &DensityMatrix, avg_speed: f64) -> Result<BoundReport> {
    check_speed(avg_speed)?;
    let p = state_pair_parameters(rho, sigma)?;
    let validity = if has_pure_endpoint(&p) {
        Validity::Proven
    } else {
        Validity::Heuristic
    };
    let report = BoundReport::new(name, deffner_distance(fidelity(rho, sigma)?), avg_speed, validity)?;
    Ok(match validity {
        Validity::Proven => report,
        Validity::Heuristic => report.with_note("no pure endpoint"),
    })
}

/// Deffner bound with the fidelity replaced by the sub-fidelity; never
/// smaller than [`t_deffner`].
pub fn t_deffner_star(rho: &DensityMatrix, sigma: &DensityMatrix, avg_speed: f64) -> Result<BoundReport> {
    check_speed(avg_speed)?;
    let p = state_pair_parameters(rho, sigma)?;
    let validity = if has_pure_endpoint(&p) {
        Validity::Proven
    } else {
        Validity::Heuristic
    };
    BoundReport::new(names::DEFFNER_STAR, deffner_star_distance(&p), avg_speed, validity)
}
