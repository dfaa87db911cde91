use std::cmp::Ordering;

use super::{count_violations, CrossoverResult};
use crate::error::{Error, Result};
use crate::inequalities::Scenario;
use crate::models::CorrelationModel;
use crate::scalar::Real;

/// Parameter at which a model family's violation volume crosses the
/// reference's.
///
/// Bisects `d(lambda) = count(family(lambda)) - count(reference)` where every
/// count uses the same `samples` configurations drawn from `seed`. With the
/// configurations frozen, `d` is a deterministic step function and the
/// bisection is reproducible. Stops once the bracket is no wider than `tol`
/// and reports its midpoint.
pub fn find_crossover<T, F>(
    family: F,
    reference: &CorrelationModel<T>,
    scenario: &Scenario,
    bracket: (T, T),
    samples: u64,
    seed: u64,
    tol: T,
) -> Result<CrossoverResult>
where
    T: Real,
    F: Fn(T) -> Result<CorrelationModel<T>>,
{
    if !(tol > T::zero()) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) {
        return Err(Error::Parameter(format!("empty bracket [{lo}, {hi}]")));
    }

    let (m_lo, m_hi) = (family(lo)?, family(hi)?);
    let counts = count_violations(&[reference, &m_lo, &m_hi], scenario, samples, seed)?;
    let base = counts[0] as i64;
    let d_lo = counts[1] as i64 - base;
    let d_hi = counts[2] as i64 - base;
    let mut evaluations = 2;

    let finish = |lo: T, hi: T, evaluations| CrossoverResult {
        lambda_star: ((lo + hi) / T::lit(2.0)).as_f64(),
        bracket_width: (hi - lo).as_f64(),
        bracket: (lo.as_f64(), hi.as_f64()),
        samples_per_eval: samples,
        seed,
        reference: reference.label().to_owned(),
        scenario: scenario.name,
        evaluations,
    };

    match (d_lo.cmp(&0), d_hi.cmp(&0)) {
        (Ordering::Equal, _) => return Ok(finish(lo, lo, evaluations)),
        (_, Ordering::Equal) => return Ok(finish(hi, hi, evaluations)),
        (a, b) if a == b => {
            let v = |d: i64| d as f64 / samples as f64;
            return Err(Error::Bracketing {
                lo: lo.as_f64(),
                hi: hi.as_f64(),
                d_lo: v(d_lo),
                d_hi: v(d_hi),
            });
        }
        _ => {}
    }

    let lo_sign = d_lo.signum();
    while hi - lo > tol {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let d_mid = count_violations(&[&family(mid)?], scenario, samples, seed)?[0] as i64 - base;
        evaluations += 1;
        if d_mid.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(finish(lo, hi, evaluations))
}
