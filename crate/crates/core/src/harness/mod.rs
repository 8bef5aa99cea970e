//! Experiment drivers: optimal step sweep, continuity scan, shot-budget
//! curves and the two-point error bound report.
//!
//! Each driver takes an [`ExperimentConfig`] and returns a typed report that
//! renders to CSV. [`RunRecord`] wraps a report with the metadata sidecar.

mod bound;
mod budget;
pub mod config;
mod continuity;
mod fit;
mod nopt;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::Result;

pub use bound::{run_bound_report, BoundRunReport};
pub use budget::{
    run_budget_experiment, BudgetReport, BudgetRow, PhysicalMode, ShotMode, SkippedPoint,
};
pub use config::{ExperimentConfig, ResolvedModel};
pub use continuity::{run_continuity_scan, ContinuityPoint, ContinuityReport, CurveBest};
pub use fit::{fit_distance_model, log_log_slope, DistanceFit};
pub use nopt::{run_nopt_sweep, NoptPoint, NoptReport};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Nopt,
    Continuity,
    Budget,
    Bound,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [Self::Nopt, Self::Continuity, Self::Budget, Self::Bound];

    pub fn name(self) -> &'static str {
        match self {
            Self::Nopt => "nopt",
            Self::Continuity => "continuity",
            Self::Budget => "budget",
            Self::Bound => "bound",
        }
    }

    /// Runs the experiment on `threads` workers (0 means the default pool).
    pub fn run(self, cfg: &ExperimentConfig) -> Result<RunRecord> {
        cfg.validate()?;
        let start = Instant::now();
        let (csv, summary) = with_threads(cfg.run.threads, || -> Result<(String, Value)> {
            Ok(match self {
                Self::Nopt => report_parts(&run_nopt_sweep(cfg)?),
                Self::Continuity => report_parts(&run_continuity_scan(cfg)?),
                Self::Budget => report_parts(&run_budget_experiment(cfg)?),
                Self::Bound => report_parts(&run_bound_report(cfg)?),
            })
        })??;
        Ok(RunRecord {
            experiment: self,
            config: cfg.clone(),
            csv,
            summary,
            elapsed_seconds: start.elapsed().as_secs_f64(),
        })
    }
}

/// A report that renders to one CSV table plus a JSON summary.
pub trait Tabular {
    fn header(&self) -> &'static [&'static str];
    fn rows(&self) -> Vec<Vec<String>>;
    fn summary(&self) -> Value;

    fn to_csv(&self) -> String {
        let mut out = self.header().join(",");
        out.push('\n');
        for row in self.rows() {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn report_parts<T: Tabular>(report: &T) -> (String, Value) {
    (report.to_csv(), report.summary())
}

/// Output of one experiment run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub experiment: Experiment,
    pub config: ExperimentConfig,
    pub csv: String,
    pub summary: Value,
    pub elapsed_seconds: f64,
}

impl RunRecord {
    pub fn csv_file_name(&self) -> String {
        format!("{}.csv", self.experiment.name())
    }

    pub fn metadata_file_name(&self) -> String {
        format!("{}.meta.json", self.experiment.name())
    }

    pub fn metadata(&self) -> Value {
        json!({
            "experiment": self.experiment.name(),
            "version": ARTIFACT_VERSION,
            "seed": self.config.run.seed,
            "trials": self.config.run.trials,
            "threads": self.config.run.threads,
            "analytic_shot_cutover": self.config.budget.analytic_cutover,
            "config": self.config,
            "summary": self.summary,
            "timings": { "elapsed_seconds": self.elapsed_seconds },
        })
    }

    pub fn metadata_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.metadata()).expect("metadata serializes");
        s.push('\n');
        s
    }
}

/// Shortest round-trip formatting in scientific notation; `nan` for NaN.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:e}")
    }
}

pub(crate) fn join_steps(ns: &[usize]) -> String {
    let mut s = String::new();
    for (i, n) in ns.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        let _ = write!(s, "{n}");
    }
    s
}

/// Ordered parallel map; falls back to a plain loop without the `parallel` feature.
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub(crate) fn try_par_map<T, U, F>(items: &[T], f: F) -> Result<Vec<U>>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> Result<U> + Sync + Send,
{
    par_map(items, f).into_iter().collect()
}

/// Runs `f` on a pool with `threads` workers; 0 keeps the global pool.
pub fn with_threads<R, F>(threads: usize, f: F) -> Result<R>
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| crate::Error::Config(format!("thread pool: {e}")))?;
        return Ok(pool.install(f));
    }
    let _ = threads;
    Ok(f())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for x in [0.0, 1.0, -2.5e-8, 1e14, 0.7975949029857232] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn step_lists() {
        assert_eq!(join_steps(&[25, 20, 15]), "25;20;15");
        assert_eq!(join_steps(&[25]), "25");
    }

    #[test]
    fn parallel_map_keeps_order() {
        let xs: Vec<u64> = (0..200).collect();
        let ys = with_threads(3, || par_map(&xs, |x| x * x)).unwrap();
        assert_eq!(ys, xs.iter().map(|x| x * x).collect::<Vec<_>>());
    }
}
