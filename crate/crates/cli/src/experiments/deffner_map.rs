//! Probability that `T_D` is at least as tight as the sub-fidelity Deffner
//! bound, for endpoints of fixed purities.
//!
//! For purities `(x, y)` the remaining parameters range over
//! `{0 <= z <= sqrt(xy), 0 <= beta <= z^2}`. The probability is the share of
//! that region where `Gamma >= 0`, weighted as `(sgn Gamma + 1) / 2`.
//!
//! CSV columns: `x, y, p`.

use rayon::prelude::*;

use qsl_core::bounds::{deffner_star_distance, t_d_distance};
use qsl_core::metrics::StatePairParams;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::output::Table;

use super::Outcome;

/// `|Gamma|` at or below this counts as a tie and scores 1/2.
pub const TIE_TOL: f64 = 1e-12;

/// Spacing of the purity grid.
pub const GRID_STEP: f64 = 0.05;

const REGION_TOL: f64 = 1e-12;

fn region_error(msg: String) -> CliError {
    CliError::Config(msg)
}

/// `Gamma = sqrt(x + y - 2z) - sin^2(arccos E)`, positive where `T_D` is
/// the tighter bound.
pub fn gamma_indicator(x: f64, y: f64, z: f64, beta: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0 + REGION_TOL && y > 0.0 && y <= 1.0 + REGION_TOL) {
        return Err(region_error(format!("purities must lie in (0, 1], got ({x}, {y})")));
    }
    if !(z >= 0.0 && z <= (x * y).sqrt() + REGION_TOL) {
        return Err(region_error(format!("z = {z} outside [0, sqrt(xy)]")));
    }
    if !(beta >= 0.0 && beta <= z * z + REGION_TOL) {
        return Err(region_error(format!("beta = {beta} outside [0, z^2]")));
    }
    Ok(gamma_unchecked(x, y, z, beta))
}

fn gamma_unchecked(x: f64, y: f64, z: f64, beta: f64) -> f64 {
    let p = StatePairParams { x, y, z, beta };
    t_d_distance(&p) - deffner_star_distance(&p)
}

fn score(gamma: f64) -> f64 {
    if gamma.abs() <= TIE_TOL {
        0.5
    } else if gamma > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Midpoint quadrature with `resolution` cells along `z` and along
/// `beta / z^2`; each `z` column is weighted by its area `z^2`.
pub fn probability(x: f64, y: f64, resolution: usize) -> Result<f64> {
    if !(x * y > 0.0) {
        return Err(region_error(format!("degenerate region for purities ({x}, {y})")));
    }
    gamma_indicator(x, y, 0.0, 0.0)?;
    let n = resolution as f64;
    let z_max = (x * y).sqrt();
    let mut weighted = 0.0;
    let mut total = 0.0;
    for i in 0..resolution {
        let z = z_max * (i as f64 + 0.5) / n;
        let w = z * z;
        let mut hits = 0.0;
        for j in 0..resolution {
            let beta = w * (j as f64 + 0.5) / n;
            hits += score(gamma_unchecked(x, y, z, beta));
        }
        weighted += w * hits / n;
        total += w;
    }
    Ok(weighted / total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapPoint {
    pub x: f64,
    pub y: f64,
    pub p: f64,
}

/// Purity grid `{k * GRID_STEP} ∩ [1 / d_max, 1]`.
pub fn purity_grid(d_max: usize) -> Vec<f64> {
    let lower = 1.0 / d_max as f64;
    let steps = (1.0 / GRID_STEP).round() as usize;
    (1..=steps)
        .map(|k| k as f64 / steps as f64)
        .filter(|&v| v >= lower - 1e-12)
        .collect()
}

/// `p(x, y)` on the product grid, rows ordered by `x` then `y`.
pub fn deffner_probability_map(xs: &[f64], ys: &[f64], resolution: usize) -> Result<Vec<MapPoint>> {
    let points: Vec<(f64, f64)> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
    points
        .par_iter()
        .map(|&(x, y)| Ok(MapPoint { x, y, p: probability(x, y, resolution)? }))
        .collect()
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    let grid = purity_grid(cfg.dim);
    let map = deffner_probability_map(&grid, &grid, cfg.resolution)?;
    let mut table = Table::new(&["x", "y", "p"]);
    for m in &map {
        table.push(vec![m.x.into(), m.y.into(), m.p.into()]);
    }
    let corner = map.iter().find(|m| m.x == 1.0 && m.y == 1.0).map(|m| m.p);
    let rule_min = map
        .iter()
        .filter(|m| m.y >= 1.0 - m.x + GRID_STEP - 1e-12)
        .map(|m| m.p)
        .fold(f64::INFINITY, f64::min);
    let mut outcome = Outcome::new(table);
    if let Some(p) = corner {
        outcome.summary.push(format!("p(1,1): {p:.16e}"));
    }
    outcome.summary.push(format!("min_p_rule_of_thumb: {rule_min:.16e}"));
    Ok(outcome)
}
