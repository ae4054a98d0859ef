//! Distance-term comparison of `T_D` against the Deffner bounds on random
//! state pairs.
//!
//! Both bounds divide by the same average speed, so the comparison needs
//! only the numerators and no orbit.
//!
//! CSV columns: `ensemble, d, x, y, z, beta, num_TD, num_deffner_star,
//! num_deffner, winner`. `num_deffner` uses the fidelity instead of the
//! sub-fidelity.

use rand::Rng;
use rayon::prelude::*;

use qsl_core::bounds::{deffner_distance, deffner_star_distance, t_d_distance};
use qsl_core::ensembles::{bures_state, ginibre_state, haar_pure_state, SeededRng};
use qsl_core::metrics::{fidelity, state_pair_parameters, StatePairParams};
use qsl_core::DensityMatrix;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::output::Table;

use super::deffner_map::TIE_TOL;
use super::Outcome;

pub const COLUMNS: [&str; 10] = [
    "ensemble",
    "d",
    "x",
    "y",
    "z",
    "beta",
    "num_TD",
    "num_deffner_star",
    "num_deffner",
    "winner",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    Ginibre,
    Bures,
    HaarPure,
}

impl Ensemble {
    pub fn name(self) -> &'static str {
        match self {
            Ensemble::Ginibre => "ginibre",
            Ensemble::Bures => "bures",
            Ensemble::HaarPure => "haar-pure",
        }
    }

    pub fn sample<R: Rng + ?Sized>(self, d: usize, rng: &mut R) -> qsl_core::Result<DensityMatrix> {
        match self {
            Ensemble::Ginibre => ginibre_state(d, d, rng),
            Ensemble::Bures => bures_state(d, rng),
            Ensemble::HaarPure => haar_pure_state(d, rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    TD,
    DeffnerStar,
    Tie,
}

impl Winner {
    pub fn name(self) -> &'static str {
        match self {
            Winner::TD => "T_D",
            Winner::DeffnerStar => "Deffner*",
            Winner::Tie => "tie",
        }
    }

    /// Contribution to the `T_D`-dominant fraction.
    pub fn score(self) -> f64 {
        match self {
            Winner::TD => 1.0,
            Winner::DeffnerStar => 0.0,
            Winner::Tie => 0.5,
        }
    }

    fn of(gamma: f64) -> Self {
        if gamma.abs() <= TIE_TOL {
            Winner::Tie
        } else if gamma > 0.0 {
            Winner::TD
        } else {
            Winner::DeffnerStar
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairRecord {
    pub ensemble: Ensemble,
    pub d: usize,
    pub params: StatePairParams,
    pub num_td: f64,
    pub num_deffner_star: f64,
    pub num_deffner: f64,
    pub winner: Winner,
}

impl PairRecord {
    /// `T_D` numerator at least the fidelity-based Deffner numerator.
    pub fn td_beats_deffner(&self) -> bool {
        self.num_td >= self.num_deffner - TIE_TOL
    }
}

pub fn compare_pair(ensemble: Ensemble, rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<PairRecord> {
    let params = state_pair_parameters(rho, sigma)?;
    let num_td = t_d_distance(&params);
    let num_deffner_star = deffner_star_distance(&params);
    Ok(PairRecord {
        ensemble,
        d: rho.dim(),
        params,
        num_td,
        num_deffner_star,
        num_deffner: deffner_distance(fidelity(rho, sigma)?),
        winner: Winner::of(num_td - num_deffner_star),
    })
}

/// One pair from `ensemble` with `d` uniform in `[2, d_max]`, drawn from
/// stream `trial`.
pub fn sample_pair(ensemble: Ensemble, d_max: usize, seeds: SeededRng, trial: u64) -> Result<PairRecord> {
    let mut rng = seeds.stream(trial);
    let d = rng.gen_range(2..=d_max);
    let rho = ensemble.sample(d, &mut rng)?;
    let sigma = ensemble.sample(d, &mut rng)?;
    compare_pair(ensemble, &rho, &sigma)
}

/// `samples` pairs from each ensemble. Stream `k * n + i` serves pair `i`
/// of the `k`-th ensemble, so records do not depend on thread scheduling.
pub fn sample_pairs(ensembles: &[Ensemble], samples: usize, d_max: usize, seed: u64) -> Result<Vec<PairRecord>> {
    let seeds = SeededRng::new(seed);
    let n = samples as u64;
    let jobs: Vec<(Ensemble, u64)> = ensembles
        .iter()
        .enumerate()
        .flat_map(|(k, &e)| (0..n).map(move |i| (e, k as u64 * n + i)))
        .collect();
    jobs.par_iter()
        .map(|&(e, trial)| sample_pair(e, d_max, seeds, trial))
        .collect()
}

/// Share of records where `T_D` is at least as tight as Deffner*, ties
/// counted as 1/2.
pub fn td_fraction<'a>(records: impl IntoIterator<Item = &'a PairRecord>) -> f64 {
    let (mut hits, mut n) = (0.0, 0usize);
    for r in records {
        hits += r.winner.score();
        n += 1;
    }
    if n == 0 {
        f64::NAN
    } else {
        hits / n as f64
    }
}

/// Share of records where `T_D` is at least as tight as the
/// fidelity-based Deffner bound.
pub fn td_fraction_vs_deffner<'a>(records: impl IntoIterator<Item = &'a PairRecord>) -> f64 {
    let (mut hits, mut n) = (0usize, 0usize);
    for r in records {
        hits += r.td_beats_deffner() as usize;
        n += 1;
    }
    if n == 0 {
        f64::NAN
    } else {
        hits as f64 / n as f64
    }
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    let ensembles = [Ensemble::Ginibre, Ensemble::Bures];
    let records = sample_pairs(&ensembles, cfg.samples, cfg.dim, cfg.seed)?;
    let mut table = Table::new(&COLUMNS);
    for r in &records {
        let p = r.params;
        table.push(vec![
            r.ensemble.name().into(),
            r.d.into(),
            p.x.into(),
            p.y.into(),
            p.z.into(),
            p.beta.into(),
            r.num_td.into(),
            r.num_deffner_star.into(),
            r.num_deffner.into(),
            r.winner.name().into(),
        ]);
    }
    let mut outcome = Outcome::new(table);
    outcome.summary.push(format!("fraction_td_vs_deffner_star: {:.16e}", td_fraction(&records)));
    outcome
        .summary
        .push(format!("fraction_td_vs_deffner: {:.16e}", td_fraction_vs_deffner(&records)));
    for e in ensembles {
        let sub: Vec<&PairRecord> = records.iter().filter(|r| r.ensemble == e).collect();
        outcome.summary.push(format!(
            "fraction_td_vs_deffner_star[{}]: {:.16e}",
            e.name(),
            td_fraction(sub.iter().copied())
        ));
    }
    for d in 2..=cfg.dim {
        let sub: Vec<&PairRecord> = records.iter().filter(|r| r.d == d).collect();
        outcome.summary.push(format!(
            "fraction_td_vs_deffner_star[d={d}]: {:.16e}",
            td_fraction(sub.iter().copied())
        ));
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_pure_below_half_overlap_favours_td() {
        let records = sample_pairs(&[Ensemble::HaarPure], 2000, 4, 3).unwrap();
        let low: Vec<&PairRecord> = records.iter().filter(|r| r.params.z < 0.5).collect();
        assert!(!low.is_empty());
        assert_eq!(td_fraction(low.iter().copied()), 1.0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_pairs(&[Ensemble::Ginibre, Ensemble::Bures], 50, 4, 9).unwrap();
        let b = sample_pairs(&[Ensemble::Ginibre, Ensemble::Bures], 50, 4, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| (2..=4).contains(&r.d)));
    }

    #[test]
    fn star_numerator_dominates_plain_deffner() {
        for r in sample_pairs(&[Ensemble::Ginibre], 200, 5, 4).unwrap() {
            assert!(r.num_deffner_star >= r.num_deffner - 1e-10);
        }
    }
}
