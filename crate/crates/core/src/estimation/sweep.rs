use super::{count_violations, SweepPoint, VolumeEstimate};
use crate::error::{Error, Result};
use crate::geometry::mix64;
use crate::inequalities::Scenario;
use crate::models::{lambda_box_model, lambda_range, CorrelationModel};
use crate::scalar::Real;

/// `steps` equally spaced values from `lo` to `hi` inclusive.
pub fn linspace<T: Real>(lo: T, hi: T, steps: usize) -> Vec<T> {
    match steps {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let last = T::lit((steps - 1) as f64);
            (0..steps)
                .map(|k| if k + 1 == steps { hi } else { lo + (hi - lo) * T::lit(k as f64) / last })
                .collect()
        }
    }
}

/// 45 points over the whole admissible lambda range.
pub fn default_lambda_grid<T: Real>() -> Vec<T> {
    let (lo, hi) = lambda_range::<T>();
    linspace(lo, hi, 45)
}

/// Relative volume of the lambda-box at each of `lambdas`.
///
/// With `common_random_numbers` every point uses the same configurations
/// (seed `seed`, indices `0..samples`), evaluated in a single pass. Otherwise
/// point `k` gets its own seed derived from `(seed, k)`.
pub fn sweep_lambda<T: Real>(
    lambdas: &[T],
    scenario: &Scenario,
    samples: u64,
    seed: u64,
    common_random_numbers: bool,
) -> Result<Vec<SweepPoint>> {
    if samples == 0 {
        return Err(Error::Parameter("samples must be at least 1".into()));
    }
    let models = lambdas.iter().map(|&l| lambda_box_model(l)).collect::<Result<Vec<_>>>()?;
    let point = |lambda: T, count: u64, seed: u64, model: &CorrelationModel<T>| SweepPoint {
        lambda: lambda.as_f64(),
        estimate: VolumeEstimate::from_counts(count, samples, seed, scenario.name, model.label()),
    };
    if common_random_numbers {
        let refs: Vec<&CorrelationModel<T>> = models.iter().collect();
        let counts = count_violations(&refs, scenario, samples, seed)?;
        Ok(lambdas.iter().zip(&models).zip(counts).map(|((&l, m), c)| point(l, c, seed, m)).collect())
    } else {
        lambdas
            .iter()
            .zip(&models)
            .enumerate()
            .map(|(k, (&l, m))| {
                let own_seed = mix64(seed ^ mix64(k as u64 + 1));
                let count = count_violations(&[m], scenario, samples, own_seed)?[0];
                Ok(point(l, count, own_seed, m))
            })
            .collect()
    }
}
