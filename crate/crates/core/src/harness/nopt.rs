use serde::Serialize;
use serde_json::{json, Value};

use super::config::ExperimentConfig;
use super::fit::{fit_distance_model, DistanceFit};
use super::{fmt_f64, try_par_map, Tabular};
use crate::density::{run_noisy_trotter, trace_distance_to_pure, DensityMatrix};
use crate::noise::NoiseModel;
use crate::pauli::exact_state;
use crate::trotter::build_first_order_trotter;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoptPoint {
    pub steps: usize,
    pub noiseless_distance: f64,
    pub noisy_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoptReport {
    pub points: Vec<NoptPoint>,
    pub argmin_steps: usize,
    pub argmin_distance: f64,
    pub fit: Option<DistanceFit>,
    pub fit_error: Option<String>,
}

/// Trace distance to the exact state over the configured step grid.
pub fn run_nopt_sweep(cfg: &ExperimentConfig) -> Result<NoptReport> {
    let model = cfg.resolve_model()?;
    let grid = cfg.nopt.grid()?;
    let exact = exact_state(&model.hamiltonian, model.time, model.initial_state)?;
    let rho0 = DensityMatrix::basis_state(model.hamiltonian.qubit_count(), model.initial_state)?;
    let noiseless = NoiseModel::noiseless();

    let points = try_par_map(&grid, |&steps| {
        let circuit = build_first_order_trotter(&model.hamiltonian, model.time, steps)?;
        let clean = run_noisy_trotter(&circuit, &noiseless, &rho0)?;
        let noisy = run_noisy_trotter(&circuit, &model.noise, &rho0)?;
        Ok(NoptPoint {
            steps,
            noiseless_distance: trace_distance_to_pure(&clean, &exact)?,
            noisy_distance: trace_distance_to_pure(&noisy, &exact)?,
        })
    })?;

    let best = points
        .iter()
        .min_by(|a, b| a.noisy_distance.total_cmp(&b.noisy_distance))
        .expect("grid is nonempty");
    let ns: Vec<usize> = points.iter().map(|p| p.steps).collect();
    let ds: Vec<f64> = points.iter().map(|p| p.noisy_distance).collect();
    let (fit, fit_error) = match fit_distance_model(&ns, &ds) {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(NoptReport {
        argmin_steps: best.steps,
        argmin_distance: best.noisy_distance,
        points,
        fit,
        fit_error,
    })
}

impl Tabular for NoptReport {
    fn header(&self) -> &'static [&'static str] {
        &["steps", "noiseless_distance", "noisy_distance"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.points
            .iter()
            .map(|p| {
                vec![
                    p.steps.to_string(),
                    fmt_f64(p.noiseless_distance),
                    fmt_f64(p.noisy_distance),
                ]
            })
            .collect()
    }

    fn summary(&self) -> Value {
        json!({
            "argmin_steps": self.argmin_steps,
            "argmin_distance": self.argmin_distance,
            "fit": self.fit,
            "fit_error": self.fit_error,
        })
    }
}
