use rayon::prelude::*;

use super::VolumeEstimate;
use crate::error::{Error, Result};
use crate::geometry::{sample_chsh_config, sample_coplanar_chsh_config, sample_i3322_config, RandomStream};
use crate::inequalities::{chsh_from_angles, i3322_from_angles, violates, Scenario, ScenarioName};
use crate::models::{single_party_marginal, CorrelationModel};
use crate::scalar::Real;

const CHUNK: u64 = 1 << 13;

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::Parameter("samples must be at least 1".into()));
    }
    Ok(())
}

/// Violation counts of several models over the same `samples` configurations.
///
/// Pair angles are computed once per configuration and shared by all models.
pub fn count_violations<T: Real>(
    models: &[&CorrelationModel<T>],
    scenario: &Scenario,
    samples: u64,
    seed: u64,
) -> Result<Vec<u64>> {
    check_samples(samples)?;
    let n = models.len();
    let counts = match scenario.name {
        ScenarioName::Chsh => tally(samples, n, |i, acc| {
            let config = sample_chsh_config::<T>(&mut RandomStream::new(seed, i));
            let angles = config.angles();
            for (hit, model) in acc.iter_mut().zip(models) {
                *hit += violates(scenario, chsh_from_angles(model, &angles)) as u64;
            }
        }),
        ScenarioName::I3322 => tally(samples, n, |i, acc| {
            let config = sample_i3322_config::<T>(&mut RandomStream::new(seed, i));
            let angles = config.angles();
            for (hit, model) in acc.iter_mut().zip(models) {
                let m = |d| single_party_marginal(*model, d);
                let marginals = -m(&config.a) - m(&config.a_p) + m(&config.b) + m(&config.b_p);
                *hit += violates(scenario, marginals + i3322_from_angles(model, &angles)) as u64;
            }
        }),
    };
    Ok(counts)
}

fn tally<F>(samples: u64, n: usize, visit: F) -> Vec<u64>
where
    F: Fn(u64, &mut [u64]) + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![0u64; n];
            for i in c * CHUNK..((c + 1) * CHUNK).min(samples) {
                visit(i, &mut acc);
            }
            acc
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Relative volume of violation of `model` in `scenario`.
pub fn estimate_volume<T: Real>(
    model: &CorrelationModel<T>,
    scenario: &Scenario,
    samples: u64,
    seed: u64,
) -> Result<VolumeEstimate> {
    let count = count_violations(&[model], scenario, samples, seed)?[0];
    Ok(VolumeEstimate::from_counts(count, samples, seed, scenario.name, model.label()))
}

/// CHSH violation fraction with all four directions in one plane: `a` at
/// angle 0, the other three in-plane angles uniform on `[0, 2pi)`.
pub fn estimate_coplanar_chsh<T: Real>(model: &CorrelationModel<T>, samples: u64, seed: u64) -> Result<VolumeEstimate> {
    check_samples(samples)?;
    let scenario = Scenario::chsh();
    let count = tally(samples, 1, |i, acc| {
        let config = sample_coplanar_chsh_config::<T>(&mut RandomStream::new(seed, i));
        acc[0] += violates(&scenario, chsh_from_angles(model, &config.angles())) as u64;
    })[0];
    Ok(VolumeEstimate::from_counts(count, samples, seed, scenario.name, model.label()))
}
