use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use serde_json::{json, Value};

use super::config::ExperimentConfig;
use super::{fmt_f64, join_steps, try_par_map, Tabular};
use crate::density::{allocate_budget, noisy_expectation, sample_estimator_with, DensityMatrix};
use crate::mitigation::{algorithmic_extrapolate, exponential_extrapolate, linear_extrapolate};
use crate::noise::boost_model;
use crate::pauli::exact_expectation;
use crate::trotter::build_first_order_trotter;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PhysicalMode {
    None,
    Linear,
    Exponential,
}

impl PhysicalMode {
    pub const ALL: [PhysicalMode; 3] = [Self::None, Self::Linear, Self::Exponential];

    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Linear => "linear",
            Self::Exponential => "exponential",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShotMode {
    ExactBinomial,
    AnalyticGaussian,
}

impl ShotMode {
    pub fn name(self) -> &'static str {
        match self {
            Self::ExactBinomial => "exact-binomial",
            Self::AnalyticGaussian => "analytic-gaussian",
        }
    }
}

/// `none` for a single step count, then `two-point`, `three-point`, `k-point`.
pub fn algorithmic_mode_name(k: usize) -> String {
    match k {
        1 => "none".into(),
        2 => "two-point".into(),
        3 => "three-point".into(),
        k => format!("{k}-point"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetRow {
    pub budget: u64,
    pub physical: PhysicalMode,
    pub algorithmic: String,
    pub steps: Vec<usize>,
    pub mean_delta_sq: f64,
    pub stderr: f64,
    pub trials: usize,
    pub shot_mode: ShotMode,
    /// Trials where exponential extrapolation fell back to linear at some N.
    pub exponential_fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedPoint {
    pub budget: u64,
    pub physical: PhysicalMode,
    pub steps: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BudgetReport {
    pub exact: f64,
    pub boosts: Vec<f64>,
    /// Noiseless-shot expectation per `(steps, boost index)`.
    pub noisy_means: BTreeMap<usize, Vec<f64>>,
    pub rows: Vec<BudgetRow>,
    pub skipped: Vec<SkippedPoint>,
}

impl BudgetReport {
    /// Row at the largest budget evaluated for a physical mode and step set.
    pub fn plateau(&self, physical: PhysicalMode, steps: &[usize]) -> Option<&BudgetRow> {
        self.rows
            .iter()
            .filter(|r| r.physical == physical && r.steps == steps)
            .max_by_key(|r| r.budget)
    }
}

struct Task {
    budget_index: usize,
    budget: u64,
    physical_index: usize,
    physical: PhysicalMode,
    set_index: usize,
}

enum TaskOutcome {
    Row(BudgetRow),
    Skipped(SkippedPoint),
}

/// Mean `delta^2` over seeded trials for every budget, physical mode and step set.
pub fn run_budget_experiment(cfg: &ExperimentConfig) -> Result<BudgetReport> {
    let model = cfg.resolve_model()?;
    let grid = cfg.budget.grid()?;
    let boosts = cfg.budget.boosts.clone();
    let step_sets = cfg.budget.step_sets.clone();
    let trials = cfg.run.trials;
    let seed = cfg.run.seed;
    let exact = exact_expectation(
        &model.hamiltonian,
        model.time,
        model.initial_state,
        &model.observable,
    )?;
    let rho0 = DensityMatrix::basis_state(model.hamiltonian.qubit_count(), model.initial_state)?;

    let mut all_steps: Vec<usize> = step_sets.iter().flatten().copied().collect();
    all_steps.sort_unstable();
    all_steps.dedup();
    let models = boosts
        .iter()
        .map(|&a| boost_model(&model.noise, a))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(usize, usize)> = all_steps
        .iter()
        .flat_map(|&n| (0..boosts.len()).map(move |b| (n, b)))
        .collect();
    let values = try_par_map(&jobs, |&(n, b)| {
        let circuit = build_first_order_trotter(&model.hamiltonian, model.time, n)?;
        noisy_expectation(&circuit, &models[b], &rho0, &model.observable)
    })?;
    let mut noisy_means: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (&(n, _), v) in jobs.iter().zip(values) {
        noisy_means.entry(n).or_default().push(v);
    }

    let set_count = step_sets.len();
    let tasks: Vec<Task> = grid
        .iter()
        .enumerate()
        .flat_map(|(budget_index, &budget)| {
            PhysicalMode::ALL
                .iter()
                .enumerate()
                .flat_map(move |(physical_index, &physical)| {
                    (0..set_count).map(move |set_index| Task {
                        budget_index,
                        budget,
                        physical_index,
                        physical,
                        set_index,
                    })
                })
        })
        .collect();

    let outcomes = try_par_map(&tasks, |task| {
        let steps = &step_sets[task.set_index];
        let skip = |reason: String| {
            Ok(TaskOutcome::Skipped(SkippedPoint {
                budget: task.budget,
                physical: task.physical,
                steps: steps.clone(),
                reason,
            }))
        };
        let allocation = match allocate_budget(task.budget, steps) {
            Ok(a) => a,
            Err(e @ Error::BudgetTooSmall { .. }) => return skip(e.to_string()),
            Err(e) => return Err(e),
        };
        let nodes: &[f64] = match task.physical {
            PhysicalMode::None => &boosts[..1],
            PhysicalMode::Linear => &boosts,
            PhysicalMode::Exponential => &boosts[..2],
        };
        let per_node: Vec<u64> = allocation
            .points
            .iter()
            .map(|p| p.shots / nodes.len() as u64)
            .collect();
        if let Some(pos) = per_node.iter().position(|&s| s == 0) {
            return skip(format!(
                "{} shots at N={} cannot cover {} boost nodes",
                allocation.points[pos].shots,
                steps[pos],
                nodes.len()
            ));
        }
        let shot_mode = if task.budget as f64 >= cfg.budget.analytic_cutover {
            ShotMode::AnalyticGaussian
        } else {
            ShotMode::ExactBinomial
        };
        let stream = ((task.budget_index as u64) << 16)
            | ((task.physical_index as u64) << 8)
            | task.set_index as u64;

        let mut deltas = Vec::with_capacity(trials);
        let mut fallbacks = 0;
        let mut estimates = vec![0.0; nodes.len()];
        let mut per_step = vec![0.0; steps.len()];
        for trial in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
            rng.set_stream(stream);
            let mut fell_back = false;
            for (i, &n) in steps.iter().enumerate() {
                let means = &noisy_means[&n];
                for (j, est) in estimates.iter_mut().enumerate() {
                    *est = match shot_mode {
                        ShotMode::ExactBinomial => {
                            sample_estimator_with(means[j], per_node[i], &mut rng)?
                        }
                        ShotMode::AnalyticGaussian => {
                            let z: f64 = StandardNormal.sample(&mut rng);
                            means[j]
                                + ((1.0 - means[j] * means[j]).max(0.0) / per_node[i] as f64).sqrt()
                                    * z
                        }
                    };
                }
                per_step[i] = match task.physical {
                    PhysicalMode::None => estimates[0],
                    PhysicalMode::Linear => linear_extrapolate(&estimates, nodes)?,
                    PhysicalMode::Exponential => {
                        match exponential_extrapolate(estimates[0], estimates[1], nodes[1]) {
                            Ok(v) => v,
                            Err(_) => {
                                fell_back = true;
                                linear_extrapolate(&estimates, nodes)?
                            }
                        }
                    }
                };
            }
            fallbacks += usize::from(fell_back);
            let estimate = algorithmic_extrapolate(&per_step, steps)?;
            deltas.push((estimate - exact).powi(2));
        }
        let (mean_delta_sq, stderr) = mean_and_stderr(&deltas);
        if !mean_delta_sq.is_finite() {
            return Err(Error::Numerical(format!(
                "non-finite delta^2 at M={}",
                task.budget
            )));
        }
        Ok(TaskOutcome::Row(BudgetRow {
            budget: task.budget,
            physical: task.physical,
            algorithmic: algorithmic_mode_name(steps.len()),
            steps: steps.clone(),
            mean_delta_sq,
            stderr,
            trials,
            shot_mode,
            exponential_fallbacks: fallbacks,
        }))
    })?;

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o {
            TaskOutcome::Row(r) => rows.push(r),
            TaskOutcome::Skipped(s) => skipped.push(s),
        }
    }
    if rows.is_empty() {
        return Err(Error::InvalidArgument(
            "every budget point is infeasible".into(),
        ));
    }
    Ok(BudgetReport {
        exact,
        boosts,
        noisy_means,
        rows,
        skipped,
    })
}

/// Sample mean and standard error of the mean (zero for a single sample).
fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

impl Tabular for BudgetReport {
    fn header(&self) -> &'static [&'static str] {
        &[
            "M",
            "phys_mode",
            "alg_mode",
            "steps",
            "mean_delta_sq",
            "stderr",
            "trials",
            "shot_mode",
            "exp_fallbacks",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.budget.to_string(),
                    r.physical.name().into(),
                    r.algorithmic.clone(),
                    join_steps(&r.steps),
                    fmt_f64(r.mean_delta_sq),
                    fmt_f64(r.stderr),
                    r.trials.to_string(),
                    r.shot_mode.name().into(),
                    r.exponential_fallbacks.to_string(),
                ]
            })
            .collect()
    }

    fn summary(&self) -> Value {
        let plateaus: Vec<Value> = self
            .rows
            .iter()
            .filter(|r| {
                self.plateau(r.physical, &r.steps)
                    .is_some_and(|p| p.budget == r.budget)
            })
            .map(|r| {
                json!({
                    "phys_mode": r.physical.name(),
                    "alg_mode": r.algorithmic,
                    "steps": r.steps,
                    "M": r.budget,
                    "mean_delta_sq": r.mean_delta_sq,
                    "stderr": r.stderr,
                })
            })
            .collect();
        json!({
            "exact": self.exact,
            "boosts": self.boosts,
            "noisy_means": self.noisy_means,
            "plateaus": plateaus,
            "skipped": self.skipped,
        })
    }
}
