//! Experiment configuration, read from TOML.
//!
//! Every section and key is optional; omitted values fall back to the
//! five-qubit preset with the default noise rates. Unknown keys are errors.
//!
//! ```toml
//! [model]
//! preset = "paper5q"          # or: terms = ["XIIII, 2.0", "ZIZII, 3.0", ...]
//! coupling = 3.0              # preset only
//! field = 2.0                 # preset only
//! qubits = 5                  # preset only
//! time = 0.5
//! observable = "XIIII"        # default: X on qubit 1
//! initial_state = "00000"     # default: all zeros
//!
//! [noise]
//! boost = 1.0
//! single = { px = 2e-5, py = 2e-5, pz = 6e-5 }
//! two = { px = 1e-4, py = 1e-4, pz = 3e-4 }   # per leg of E (x) E
//!
//! [run]
//! seed = 42
//! trials = 100
//! threads = 0                 # 0: one per core
//! tolerance = 1e-10
//!
//! [nopt]
//! steps_min = 5
//! steps_max = 100
//! steps_stride = 1
//!
//! [continuity]
//! steps_min = 10
//! steps_max = 200
//! steps_stride = 1
//! boosts = [1.0, 2.0]
//!
//! [budget]
//! min_exponent = 4            # grid 10^4 .. 10^14
//! max_exponent = 14
//! points_per_decade = 1
//! # budgets = [1e6, 1e8]      # explicit grid instead of the exponents
//! step_sets = [[25], [25, 15], [25, 20, 15]]
//! boosts = [1.0, 2.0]
//! analytic_cutover = 1e10
//!
//! [bound]
//! n1 = 25
//! n2 = 15
//! observable_norm = 1.0
//! ```

use serde::{Deserialize, Serialize};

use crate::noise::{boost_model, NoiseModel, PauliNoiseChannel};
use crate::pauli::{basis_index, build_paper_hamiltonian, Pauli, PauliHamiltonian, PauliString};
use crate::{Error, Result};

pub const DEFAULT_PRESET: &str = "paper5q";

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    pub noise: NoiseConfig,
    pub run: RunConfig,
    pub nopt: SweepConfig,
    pub continuity: ContinuityConfig,
    pub budget: BudgetConfig,
    pub bound: BoundConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    pub preset: Option<String>,
    pub terms: Option<Vec<String>>,
    pub coupling: f64,
    pub field: f64,
    pub qubits: usize,
    pub time: f64,
    pub observable: Option<String>,
    pub initial_state: Option<String>,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            preset: None,
            terms: None,
            coupling: 3.0,
            field: 2.0,
            qubits: 5,
            time: 0.5,
            observable: None,
            initial_state: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl From<PauliNoiseChannel> for ChannelConfig {
    fn from(c: PauliNoiseChannel) -> Self {
        Self {
            px: c.px,
            py: c.py,
            pz: c.pz,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseConfig {
    pub single: ChannelConfig,
    pub two: ChannelConfig,
    pub boost: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        let rates = NoiseModel::reference();
        Self {
            single: rates.base_single().into(),
            two: rates.base_two_factor().into(),
            boost: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub threads: usize,
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 100,
            threads: 0,
            tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub steps_min: usize,
    pub steps_max: usize,
    pub steps_stride: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            steps_min: 5,
            steps_max: 100,
            steps_stride: 1,
        }
    }
}

impl SweepConfig {
    pub fn grid(&self) -> Result<Vec<usize>> {
        step_grid(self.steps_min, self.steps_max, self.steps_stride)
    }
}

fn step_grid(min: usize, max: usize, stride: usize) -> Result<Vec<usize>> {
    if min == 0 || stride == 0 || max < min {
        return Err(Error::Config(format!(
            "step grid needs 1 <= steps_min <= steps_max and stride >= 1, got {min}..{max} by {stride}"
        )));
    }
    Ok((min..=max).step_by(stride).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ContinuityConfig {
    pub steps_min: usize,
    pub steps_max: usize,
    pub steps_stride: usize,
    pub boosts: Vec<f64>,
}

impl Default for ContinuityConfig {
    fn default() -> Self {
        Self {
            steps_min: 10,
            steps_max: 200,
            steps_stride: 1,
            boosts: vec![1.0, 2.0],
        }
    }
}

impl ContinuityConfig {
    pub fn grid(&self) -> Result<Vec<usize>> {
        step_grid(self.steps_min, self.steps_max, self.steps_stride)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BudgetConfig {
    pub budgets: Option<Vec<f64>>,
    pub min_exponent: u32,
    pub max_exponent: u32,
    pub points_per_decade: u32,
    pub step_sets: Vec<Vec<usize>>,
    pub boosts: Vec<f64>,
    pub analytic_cutover: f64,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        Self {
            budgets: None,
            min_exponent: 4,
            max_exponent: 14,
            points_per_decade: 1,
            step_sets: vec![vec![25], vec![25, 15], vec![25, 20, 15]],
            boosts: vec![1.0, 2.0],
            analytic_cutover: 1e10,
        }
    }
}

impl BudgetConfig {
    /// Budget grid, ascending.
    pub fn grid(&self) -> Result<Vec<u64>> {
        let raw: Vec<f64> = match &self.budgets {
            Some(list) => list.clone(),
            None => {
                if self.points_per_decade == 0
                    || self.max_exponent < self.min_exponent
                    || self.max_exponent > 18
                {
                    return Err(Error::Config(
                        "budget exponents must satisfy min <= max <= 18".into(),
                    ));
                }
                let per = self.points_per_decade;
                (self.min_exponent * per..=self.max_exponent * per)
                    .map(|k| 10f64.powf(k as f64 / per as f64).round())
                    .collect()
            }
        };
        let mut grid = raw
            .iter()
            .map(|&m| {
                if m.is_finite() && m >= 1.0 && m.fract() == 0.0 && m < 1.8e19 {
                    Ok(m as u64)
                } else {
                    Err(Error::Config(format!(
                        "budget {m} is not a positive integer"
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        grid.sort_unstable();
        grid.dedup();
        if grid.is_empty() {
            return Err(Error::Config("empty budget grid".into()));
        }
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BoundConfig {
    pub n1: usize,
    pub n2: usize,
    pub observable_norm: f64,
}

impl Default for BoundConfig {
    fn default() -> Self {
        Self {
            n1: 25,
            n2: 15,
            observable_norm: 1.0,
        }
    }
}

/// Model pieces every experiment needs, resolved and validated.
#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub hamiltonian: PauliHamiltonian,
    pub time: f64,
    pub observable: PauliString,
    pub initial_state: usize,
    pub noise: NoiseModel,
}

fn config_err(e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Config(other.to_string()),
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        self.resolve_model()?;
        if self.run.trials == 0 {
            return Err(Error::Config("run.trials must be at least 1".into()));
        }
        if !(self.run.tolerance.is_finite() && self.run.tolerance > 0.0) {
            return Err(Error::Config("run.tolerance must be positive".into()));
        }
        self.nopt.grid()?;
        self.continuity.grid()?;
        check_boosts(&self.continuity.boosts, "continuity.boosts")?;
        check_boosts(&self.budget.boosts, "budget.boosts")?;
        self.budget.grid()?;
        if self.budget.step_sets.is_empty() {
            return Err(Error::Config("budget.step_sets is empty".into()));
        }
        for set in &self.budget.step_sets {
            crate::mitigation::algorithmic_nodes(set).map_err(config_err)?;
        }
        if self.budget.analytic_cutover.is_nan() || self.budget.analytic_cutover <= 0.0 {
            return Err(Error::Config(
                "budget.analytic_cutover must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn resolve_model(&self) -> Result<ResolvedModel> {
        let m = &self.model;
        let hamiltonian = match (&m.preset, &m.terms) {
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "set either model.preset or model.terms, not both".into(),
                ))
            }
            (None, Some(terms)) => PauliHamiltonian::from_specs(terms).map_err(config_err)?,
            (preset, None) => {
                let name = preset.as_deref().unwrap_or(DEFAULT_PRESET);
                if name != DEFAULT_PRESET {
                    return Err(Error::Config(format!("unknown preset {name:?}")));
                }
                build_paper_hamiltonian(m.coupling, m.field, m.qubits).map_err(config_err)?
            }
        };
        let n = hamiltonian.qubit_count();
        if n > crate::pauli::MAX_DENSE_QUBITS {
            return Err(Error::Config(format!("{n} qubits exceed the dense cap")));
        }
        if !m.time.is_finite() {
            return Err(Error::Config("model.time must be finite".into()));
        }
        let observable = match &m.observable {
            Some(label) => PauliString::parse(label, 1.0).map_err(config_err)?,
            None => PauliString::on(n, &[(0, Pauli::X)]).map_err(config_err)?,
        };
        if observable.qubit_count() != n {
            return Err(Error::Config(format!(
                "observable {} does not match the {n}-qubit model",
                observable.label()
            )));
        }
        let initial_state = match &m.initial_state {
            Some(label) => basis_index(label, n).map_err(config_err)?,
            None => 0,
        };
        let single = PauliNoiseChannel::new(
            self.noise.single.px,
            self.noise.single.py,
            self.noise.single.pz,
        )
        .map_err(config_err)?;
        let two = PauliNoiseChannel::new(self.noise.two.px, self.noise.two.py, self.noise.two.pz)
            .map_err(config_err)?;
        let noise = boost_model(
            &NoiseModel::new(single, two).map_err(config_err)?,
            self.noise.boost,
        )
        .map_err(config_err)?;
        Ok(ResolvedModel {
            hamiltonian,
            time: m.time,
            observable,
            initial_state,
            noise,
        })
    }
}

fn check_boosts(boosts: &[f64], key: &str) -> Result<()> {
    if boosts.len() < 2 {
        return Err(Error::Config(format!(
            "{key} needs at least two boost factors"
        )));
    }
    crate::mitigation::richardson_coefficients(boosts)
        .map(|_| ())
        .map_err(|e| Error::Config(format!("{key}: {e}")))
}
