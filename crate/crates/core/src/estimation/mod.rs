//! Monte Carlo volume-of-violation estimates and the searches built on them.
//!
//! Sample `i` of a run with seed `s` always uses the configuration drawn from
//! `RandomStream::new(s, i)`. Violation counts are integer reductions, so any
//! thread count gives bit-identical results, and estimates that share a seed
//! share their configurations (common random numbers).

mod crossover;
mod search;
mod sweep;
mod volume;

use serde::Serialize;

use crate::geometry::{angle_between, ChshConfig, I3322Config};
use crate::inequalities::{ScenarioName, Scenario};
use crate::models::CorrelationModel;
use crate::scalar::Real;

pub use crossover::find_crossover;
pub use search::{search_max_violation, search_with_schedule, SearchSchedule};
pub use sweep::{default_lambda_grid, linspace, sweep_lambda};
pub use volume::{count_violations, estimate_coplanar_chsh, estimate_volume};

/// Default sample count for a scenario: 10^6 for CHSH, 10^7 for 3322 where
/// the singlet's violation probability is only about 2e-3.
pub fn default_samples(scenario: &Scenario) -> u64 {
    match scenario.name {
        ScenarioName::Chsh => 1_000_000,
        ScenarioName::I3322 => 10_000_000,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate {
    pub violations: u64,
    pub samples: u64,
    /// Relative volume: violations / samples.
    pub v: f64,
    /// Binomial standard error `sqrt(v (1 - v) / samples)`.
    pub stderr: f64,
    pub seed: u64,
    pub scenario: ScenarioName,
    pub model: String,
}

impl VolumeEstimate {
    pub fn from_counts(violations: u64, samples: u64, seed: u64, scenario: ScenarioName, model: impl Into<String>) -> Self {
        let v = violations as f64 / samples as f64;
        Self {
            violations,
            samples,
            v,
            stderr: (v * (1.0 - v) / samples as f64).sqrt(),
            seed,
            scenario,
            model: model.into(),
        }
    }

    /// Absolute volume `v * V_T`.
    pub fn volume(&self) -> f64 {
        self.v * Scenario::from_name(self.scenario).total_volume()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub lambda: f64,
    pub estimate: VolumeEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossoverResult {
    pub lambda_star: f64,
    pub bracket_width: f64,
    pub bracket: (f64, f64),
    pub samples_per_eval: u64,
    pub seed: u64,
    pub reference: String,
    pub scenario: ScenarioName,
    /// Family members evaluated, endpoints included.
    pub evaluations: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "scenario", rename_all = "snake_case")]
pub enum MeasurementConfig<T> {
    Chsh(ChshConfig<T>),
    I3322(I3322Config<T>),
}

impl<T: Real> MeasurementConfig<T> {
    /// Named pairwise angles entering the functional, in radians.
    pub fn pair_angles(&self) -> Vec<(&'static str, T)> {
        match self {
            Self::Chsh(c) => vec!["ab", "ab'", "a'b", "a'b'"].into_iter().zip(c.angles()).collect(),
            Self::I3322(c) => {
                let mut v: Vec<_> = ["ab", "ab'", "ab''", "a'b", "a'b'", "a'b''", "a''b", "a''b'"]
                    .into_iter()
                    .zip(c.angles())
                    .collect();
                v.push(("a''b''", angle_between(&c.a_pp, &c.b_pp)));
                v
            }
        }
    }

    pub fn functional(&self, model: &CorrelationModel<T>) -> T {
        match self {
            Self::Chsh(c) => crate::inequalities::chsh_value(model, c),
            Self::I3322(c) => crate::inequalities::i3322_value(model, c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxViolationResult<T> {
    /// Largest functional value found.
    pub value: T,
    pub config: MeasurementConfig<T>,
    /// Hill-climbing sweeps per restart.
    pub iterations: u64,
    pub restarts: u64,
    /// Restart that produced `value`.
    pub best_restart: u64,
    pub seed: u64,
    pub scenario: ScenarioName,
    pub model: String,
}
