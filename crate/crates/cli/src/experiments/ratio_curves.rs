//! Bound ratios `T_X / T_D` against `tr[rho sigma]` with `rho` pure.
//!
//! With `x = 1` the remaining overlap is fixed, `beta = z^2`, and the shared
//! speed cancels, so each ratio is a ratio of numerators.
//!
//! CSV columns: `series, y, z, ratio_sun_star, ratio_delcampo,
//! ratio_deffner_star, flag`. The `y->0` series reports the large-dimension
//! limit; its `z` column holds `z / sqrt(y)`.

use qsl_core::bounds::{deffner_star_distance, del_campo_distance, sun_star_distance, t_d_distance};
use qsl_core::metrics::StatePairParams;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};
use crate::output::{Cell, Table};

use super::Outcome;

/// Ratios above `1 + RATIO_TOL` contradict the hierarchy.
pub const RATIO_TOL: f64 = 1e-10;

pub const FLAG_COINCIDENT: &str = "coincident";
pub const FLAG_LIMIT: &str = "limit";

pub const COLUMNS: [&str; 7] = [
    "series",
    "y",
    "z",
    "ratio_sun_star",
    "ratio_delcampo",
    "ratio_deffner_star",
    "flag",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratios {
    pub sun_star: f64,
    pub del_campo: f64,
    pub deffner_star: f64,
    /// Set for `rho = sigma`, where `0 / 0` is reported as 1.
    pub coincident: bool,
}

impl Ratios {
    pub fn max(&self) -> f64 {
        self.sun_star.max(self.del_campo).max(self.deffner_star)
    }
}

/// Ratios for pure `rho` and `sigma` of purity `y` with `tr[rho sigma] = z`.
pub fn ratios(y: f64, z: f64) -> Result<Ratios> {
    if !(y > 0.0 && y <= 1.0) {
        return Err(CliError::Config(format!("purity y must lie in (0, 1], got {y}")));
    }
    if !(z >= 0.0 && z <= y.sqrt() * (1.0 + 1e-12)) {
        return Err(CliError::Config(format!("overlap z must lie in [0, sqrt(y)], got {z}")));
    }
    let p = StatePairParams { x: 1.0, y, z, beta: z * z };
    let td = t_d_distance(&p);
    if td <= 1e-14 {
        return Ok(Ratios {
            sun_star: 1.0,
            del_campo: 1.0,
            deffner_star: 1.0,
            coincident: true,
        });
    }
    Ok(Ratios {
        sun_star: sun_star_distance(&p) / td,
        del_campo: del_campo_distance(&p) / td,
        deffner_star: deffner_star_distance(&p) / td,
        coincident: false,
    })
}

/// `y -> 0` limit at fixed `s = z / sqrt(y)`: the `T_D` numerator tends to
/// 1, Sun* to `(1 - s) / 2`, Del Campo and Deffner* to 1.
pub fn limit_ratios(s: f64) -> Ratios {
    Ratios {
        sun_star: (1.0 - s).abs() / 2.0,
        del_campo: 1.0,
        deffner_star: 1.0,
        coincident: false,
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = cfg.resolution;
    let mut table = Table::new(&COLUMNS);
    let mut worst: f64 = 0.0;
    let mut violations = 0;
    let series = [
        (format!("y=1/{}", cfg.dim), 1.0 / cfg.dim as f64),
        ("y=0.25".to_owned(), 0.25),
        ("y=1".to_owned(), 1.0),
    ];
    for (label, y) in &series {
        for k in 0..n {
            let z = y.sqrt() * k as f64 / (n - 1) as f64;
            let r = ratios(*y, z)?;
            if !r.coincident {
                worst = worst.max(r.max());
                if r.max() > 1.0 + RATIO_TOL {
                    violations += 1;
                }
            }
            let flag = if r.coincident { Cell::from(FLAG_COINCIDENT) } else { Cell::Empty };
            table.push(vec![
                label.as_str().into(),
                (*y).into(),
                z.into(),
                r.sun_star.into(),
                r.del_campo.into(),
                r.deffner_star.into(),
                flag,
            ]);
        }
    }
    for k in 0..n {
        let s = k as f64 / (n - 1) as f64;
        let r = limit_ratios(s);
        table.push(vec![
            "y->0".into(),
            0.0.into(),
            s.into(),
            r.sun_star.into(),
            r.del_campo.into(),
            r.deffner_star.into(),
            FLAG_LIMIT.into(),
        ]);
    }
    let mut outcome = Outcome::new(table);
    outcome.violations = violations;
    outcome.summary.push(format!("max_ratio: {worst:.16e}"));
    Ok(outcome)
}
