use rayon::prelude::*;

use super::{MaxViolationResult, MeasurementConfig};
use crate::error::{Error, Result};
use crate::geometry::{sample_chsh_config, sample_i3322_config, sample_in_cap, RandomStream};
use crate::inequalities::{Scenario, ScenarioName};
use crate::models::CorrelationModel;
use crate::scalar::Real;

/// Perturbation radius schedule of the hill climber.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchSchedule {
    pub initial_radius: f64,
    pub min_radius: f64,
    /// Radius factor after a sweep with no accepted move.
    pub shrink: f64,
}

impl Default for SearchSchedule {
    fn default() -> Self {
        Self { initial_radius: std::f64::consts::FRAC_PI_2, min_radius: 1e-4, shrink: 0.95 }
    }
}

/// Largest functional value found by multi-start hill climbing.
///
/// Each restart draws a random configuration from stream `(seed, restart)`,
/// then runs `iterations` sweeps. A sweep proposes, for each free direction in
/// turn, a uniform point in the spherical cap of the current radius around it
/// and keeps it if the functional strictly increases. Sweeps without an
/// accepted move shrink the radius geometrically down to the floor. Restarts
/// run in parallel; ties go to the lowest restart index.
pub fn search_max_violation<T: Real>(
    model: &CorrelationModel<T>,
    scenario: &Scenario,
    restarts: u64,
    iterations: u64,
    seed: u64,
) -> Result<MaxViolationResult<T>> {
    search_with_schedule(model, scenario, restarts, iterations, seed, SearchSchedule::default())
}

pub fn search_with_schedule<T: Real>(
    model: &CorrelationModel<T>,
    scenario: &Scenario,
    restarts: u64,
    iterations: u64,
    seed: u64,
    schedule: SearchSchedule,
) -> Result<MaxViolationResult<T>> {
    if restarts == 0 || iterations == 0 {
        return Err(Error::Parameter("restarts and iterations must be at least 1".into()));
    }
    let (value, config, best_restart) = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let (value, config) = climb(model, scenario, iterations, RandomStream::new(seed, r), &schedule);
            (value, config, r)
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.2 < a.2) { b } else { a })
        .expect("at least one restart");
    Ok(MaxViolationResult {
        value,
        config,
        iterations,
        restarts,
        best_restart,
        seed,
        scenario: scenario.name,
        model: model.label().to_owned(),
    })
}

fn climb<T: Real>(
    model: &CorrelationModel<T>,
    scenario: &Scenario,
    iterations: u64,
    mut stream: RandomStream,
    schedule: &SearchSchedule,
) -> (T, MeasurementConfig<T>) {
    match scenario.name {
        ScenarioName::Chsh => {
            let start = sample_chsh_config(&mut stream);
            let (v, c) = hill_climb(start, iterations, &mut stream, schedule, |c| c.free_directions_mut(), |c| {
                crate::inequalities::chsh_value(model, c)
            });
            (v, MeasurementConfig::Chsh(c))
        }
        ScenarioName::I3322 => {
            let start = sample_i3322_config(&mut stream);
            let (v, c) = hill_climb(start, iterations, &mut stream, schedule, |c| c.free_directions_mut(), |c| {
                crate::inequalities::i3322_value(model, c)
            });
            (v, MeasurementConfig::I3322(c))
        }
    }
}

fn hill_climb<T, C, const N: usize>(
    mut current: C,
    iterations: u64,
    stream: &mut RandomStream,
    schedule: &SearchSchedule,
    free: impl Fn(&mut C) -> [&mut crate::geometry::Direction<T>; N],
    objective: impl Fn(&C) -> T,
) -> (T, C)
where
    T: Real,
    C: Copy,
{
    let mut best = objective(&current);
    let mut radius = T::lit(schedule.initial_radius);
    let (floor, shrink) = (T::lit(schedule.min_radius), T::lit(schedule.shrink));
    for _ in 0..iterations {
        let mut improved = false;
        for k in 0..N {
            let mut candidate = current;
            {
                let dirs = free(&mut candidate);
                let d = &mut *dirs[k];
                *d = sample_in_cap(d, radius, stream);
            }
            let value = objective(&candidate);
            if value > best {
                best = value;
                current = candidate;
                improved = true;
            }
        }
        if !improved {
            radius = (radius * shrink).max(floor);
        }
    }
    (best, current)
}
