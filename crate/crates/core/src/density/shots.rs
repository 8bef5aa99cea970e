use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::{Error, Result};

/// Mean of `shots` draws of a +-1 outcome whose expectation is `true_mean`.
pub fn sample_estimator_with<R: Rng + ?Sized>(
    true_mean: f64,
    shots: u64,
    rng: &mut R,
) -> Result<f64> {
    if !(-1.0..=1.0).contains(&true_mean) {
        return Err(Error::InvalidArgument(format!(
            "mean {true_mean} outside [-1, 1]"
        )));
    }
    if shots == 0 {
        return Err(Error::InvalidArgument(
            "at least one shot is required".into(),
        ));
    }
    let p_plus = (1.0 + true_mean) / 2.0;
    let dist = Binomial::new(shots, p_plus).map_err(|e| Error::Numerical(e.to_string()))?;
    let plus = dist.sample(rng);
    Ok((2.0 * plus as f64 - shots as f64) / shots as f64)
}

/// Seeded variant of [`sample_estimator_with`] (ChaCha8 stream 0).
pub fn sample_estimator(true_mean: f64, shots: u64, seed: u64) -> Result<f64> {
    sample_estimator_with(true_mean, shots, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShotPoint {
    pub steps: usize,
    pub shots: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetAllocation {
    pub total_budget: u64,
    pub points: Vec<ShotPoint>,
}

impl BudgetAllocation {
    /// `sum m_i N_i`, never above the total.
    pub fn used(&self) -> u64 {
        self.points.iter().map(|p| p.shots * p.steps as u64).sum()
    }
}

/// Splits runtime `M = m N` equally across the step counts:
/// `m_i = floor(M / (k N_i))`.
pub fn allocate_budget(total: u64, ns: &[usize]) -> Result<BudgetAllocation> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("no step counts to allocate".into()));
    }
    if let Some(&bad) = ns.iter().find(|&&n| n == 0) {
        return Err(Error::InvalidArgument(format!(
            "step count {bad} must be positive"
        )));
    }
    let k = ns.len() as u64;
    let points = ns
        .iter()
        .map(|&steps| {
            let shots = total / (k * steps as u64);
            if shots == 0 {
                Err(Error::BudgetTooSmall { total, steps })
            } else {
                Ok(ShotPoint { steps, shots })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BudgetAllocation {
        total_budget: total,
        points,
    })
}
