//! CHSH and 3322 Bell functionals and their violation predicates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::geometry::{ChshConfig, I3322Config};
use crate::models::{single_party_marginal, CorrelationModel};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ScenarioName {
    #[serde(rename = "chsh")]
    Chsh,
    #[serde(rename = "3322")]
    I3322,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PredicateSense {
    /// `|value| > bound`
    TwoSided,
    /// `value > bound`
    OneSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Scenario {
    pub name: ScenarioName,
    /// Directions drawn per configuration; the remaining one is pinned to z.
    pub free_directions: u32,
    pub local_bound: f64,
    pub predicate_sense: PredicateSense,
    /// Largest value reachable with `|E| <= 1` and vanishing marginals.
    pub algebraic_max_symmetric: f64,
}

impl Scenario {
    pub const CHSH: Scenario = Scenario {
        name: ScenarioName::Chsh,
        free_directions: 3,
        local_bound: 2.0,
        predicate_sense: PredicateSense::TwoSided,
        algebraic_max_symmetric: 4.0,
    };

    pub const I3322: Scenario = Scenario {
        name: ScenarioName::I3322,
        free_directions: 5,
        local_bound: 4.0,
        predicate_sense: PredicateSense::OneSided,
        algebraic_max_symmetric: 8.0,
    };

    pub fn chsh() -> Self {
        Self::CHSH
    }

    pub fn i3322() -> Self {
        Self::I3322
    }

    pub fn from_name(name: ScenarioName) -> Self {
        match name {
            ScenarioName::Chsh => Self::CHSH,
            ScenarioName::I3322 => Self::I3322,
        }
    }

    /// Total configuration volume `(4 pi)^free_directions`.
    pub fn total_volume(&self) -> f64 {
        (4.0 * std::f64::consts::PI).powi(self.free_directions as i32)
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Chsh => "chsh",
            Self::I3322 => "3322",
        })
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "chsh" => Ok(Self::Chsh),
            "3322" | "i3322" => Ok(Self::I3322),
            other => Err(Error::Parameter(format!("unknown scenario '{other}' (expected chsh or 3322)"))),
        }
    }
}

/// `E(ab) + E(ab') + E(a'b) - E(a'b')`.
#[inline]
pub fn chsh_value<T: Real>(model: &CorrelationModel<T>, config: &ChshConfig<T>) -> T {
    chsh_from_angles(model, &config.angles())
}

#[inline]
pub(crate) fn chsh_from_angles<T: Real>(model: &CorrelationModel<T>, angles: &[T; 4]) -> T {
    let e = |k: usize| model.eval_unchecked(angles[k]);
    e(0) + e(1) + e(2) - e(3)
}

/// Signs of the two-party terms in [`I3322Config::angles`] order.
pub const I3322_COEFFICIENTS: [f64; 8] = [1.0, 1.0, 1.0, 1.0, 1.0, -1.0, 1.0, -1.0];

/// `-E(a) - E(a') + E(b) + E(b') + E(ab) + E(ab') + E(ab'') + E(a'b) + E(a'b')
///  - E(a'b'') + E(a''b) - E(a''b')`. There is no `E(a''b'')` term.
#[inline]
pub fn i3322_value<T: Real>(model: &CorrelationModel<T>, config: &I3322Config<T>) -> T {
    let m = |d| single_party_marginal(model, d);
    let marginals = -m(&config.a) - m(&config.a_p) + m(&config.b) + m(&config.b_p);
    marginals + i3322_from_angles(model, &config.angles())
}

#[inline]
pub(crate) fn i3322_from_angles<T: Real>(model: &CorrelationModel<T>, angles: &[T; 8]) -> T {
    let e = |k: usize| model.eval_unchecked(angles[k]);
    e(0) + e(1) + e(2) + e(3) + e(4) - e(5) + e(6) - e(7)
}

/// Strict violation of the scenario's local bound.
#[inline]
pub fn violates<T: Real>(scenario: &Scenario, value: T) -> bool {
    let bound = T::lit(scenario.local_bound);
    match scenario.predicate_sense {
        PredicateSense::TwoSided => value.abs() > bound,
        PredicateSense::OneSided => value > bound,
    }
}
