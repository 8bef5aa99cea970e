//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes a JSON parameter object and returns a JSON string.
//! Omitted parameters take the five-qubit defaults.

use serde::{Deserialize, Serialize};
use trotmit::harness::{run_continuity_scan, run_nopt_sweep, ExperimentConfig};
use trotmit::mitigation::{algorithmic_nodes, ExtrapolationPlan};
use wasm_bindgen::prelude::*;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelParams {
    pub coupling: f64,
    pub field: f64,
    pub qubits: usize,
    pub time: f64,
    pub noise_boost: f64,
    pub steps_min: usize,
    pub steps_max: usize,
    /// Second physical boost node; the first is always 1.
    pub boost_node: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            coupling: 3.0,
            field: 2.0,
            qubits: 5,
            time: 0.5,
            noise_boost: 1.0,
            steps_min: 5,
            steps_max: 100,
            boost_node: 2.0,
        }
    }
}

impl ModelParams {
    fn config(&self) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::default();
        cfg.model.coupling = self.coupling;
        cfg.model.field = self.field;
        cfg.model.qubits = self.qubits;
        cfg.model.time = self.time;
        cfg.noise.boost = self.noise_boost;
        cfg.nopt.steps_min = self.steps_min;
        cfg.nopt.steps_max = self.steps_max;
        cfg.continuity.steps_min = self.steps_min;
        cfg.continuity.steps_max = self.steps_max;
        cfg.continuity.boosts = vec![1.0, self.boost_node];
        cfg
    }
}

#[derive(Serialize)]
struct SweepOut {
    steps: Vec<usize>,
    noiseless: Vec<f64>,
    noisy: Vec<f64>,
    argmin: usize,
    fitted_optimum: Option<f64>,
}

#[derive(Serialize)]
struct ScanOut {
    exact: f64,
    steps: Vec<usize>,
    raw: Vec<f64>,
    linear: Vec<f64>,
    exponential: Vec<f64>,
    best_linear: (usize, f64),
    best_exponential: (usize, f64),
}

#[derive(Serialize)]
struct WeightsOut {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    cost: f64,
}

fn parse<T: for<'de> Deserialize<'de> + Default>(json: &str) -> Result<T, String> {
    if json.trim().is_empty() {
        return Ok(T::default());
    }
    serde_json::from_str(json).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Noiseless and noisy trace distance against the step count.
pub fn nopt_json(params: &str) -> Result<String, String> {
    let p: ModelParams = parse(params)?;
    let r = run_nopt_sweep(&p.config()).map_err(|e| e.to_string())?;
    to_json(&SweepOut {
        steps: r.points.iter().map(|q| q.steps).collect(),
        noiseless: r.points.iter().map(|q| q.noiseless_distance).collect(),
        noisy: r.points.iter().map(|q| q.noisy_distance).collect(),
        argmin: r.argmin_steps,
        fitted_optimum: r.fit.and_then(|f| f.n_opt),
    })
}

/// Raw, linear and exponential extrapolated `<X_1>` against the step count.
pub fn continuity_json(params: &str) -> Result<String, String> {
    let p: ModelParams = parse(params)?;
    let r = run_continuity_scan(&p.config()).map_err(|e| e.to_string())?;
    to_json(&ScanOut {
        exact: r.exact,
        steps: r.points.iter().map(|q| q.steps).collect(),
        raw: r.points.iter().map(|q| q.raw).collect(),
        linear: r.points.iter().map(|q| q.linear).collect(),
        exponential: r.points.iter().map(|q| q.exponential).collect(),
        best_linear: (r.best_linear.steps, r.best_linear.delta_sq),
        best_exponential: (r.best_exponential.steps, r.best_exponential.delta_sq),
    })
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightParams {
    /// Descending step counts for algorithmic extrapolation.
    #[serde(default)]
    pub steps: Option<Vec<usize>>,
    /// Increasing boost nodes starting at 1 for physical extrapolation.
    #[serde(default)]
    pub nodes: Option<Vec<f64>>,
}

/// Richardson weights and sampling cost for step counts or boost nodes.
pub fn weights_json(params: &str) -> Result<String, String> {
    let p: WeightParams = parse(params)?;
    let (nodes, plan) = match (p.steps, p.nodes) {
        (Some(steps), None) => (
            algorithmic_nodes(&steps).map_err(|e| e.to_string())?,
            ExtrapolationPlan::algorithmic(&steps),
        ),
        (None, Some(nodes)) => (nodes.clone(), ExtrapolationPlan::physical_linear(&nodes)),
        _ => return Err("give exactly one of `steps` or `nodes`".into()),
    };
    let plan = plan.map_err(|e| e.to_string())?;
    to_json(&WeightsOut {
        nodes,
        cost: plan.cost(),
        weights: plan.coefficients,
    })
}

#[wasm_bindgen]
pub fn nopt_sweep(params: &str) -> Result<String, JsError> {
    nopt_json(params).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn continuity_scan(params: &str) -> Result<String, JsError> {
    continuity_json(params).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn extrapolation_weights(params: &str) -> Result<String, JsError> {
    weights_json(params).map_err(|e| JsError::new(&e))
}
