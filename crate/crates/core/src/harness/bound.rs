use serde::Serialize;
use serde_json::{json, Value};

use super::config::ExperimentConfig;
use super::{fmt_f64, Tabular};
use crate::density::{noisy_expectation, DensityMatrix};
use crate::mitigation::{algorithmic_extrapolate, appendix_bound, BoundReport};
use crate::noise::NoiseModel;
use crate::pauli::exact_expectation;
use crate::trotter::build_first_order_trotter;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRunReport {
    pub bound: BoundReport,
    pub exact: f64,
    /// Noiseless Trotter values at `N1`, `N2`.
    pub trotter_values: [f64; 2],
    pub extrapolated: f64,
    pub measured_error: f64,
    pub holds: bool,
}

/// Two-point extrapolation error bound next to the noiseless measured error.
pub fn run_bound_report(cfg: &ExperimentConfig) -> Result<BoundRunReport> {
    let model = cfg.resolve_model()?;
    let (n1, n2) = (cfg.bound.n1, cfg.bound.n2);
    let bound = appendix_bound(
        &model.hamiltonian,
        model.time,
        n1,
        n2,
        cfg.bound.observable_norm,
    )?;
    let exact = exact_expectation(
        &model.hamiltonian,
        model.time,
        model.initial_state,
        &model.observable,
    )?;
    let rho0 = DensityMatrix::basis_state(model.hamiltonian.qubit_count(), model.initial_state)?;
    let value = |n| -> Result<f64> {
        let c = build_first_order_trotter(&model.hamiltonian, model.time, n)?;
        noisy_expectation(&c, &NoiseModel::noiseless(), &rho0, &model.observable)
    };
    let trotter_values = [value(n1)?, value(n2)?];
    let extrapolated = algorithmic_extrapolate(&trotter_values, &[n1, n2])?;
    let measured_error = (extrapolated - exact).abs();
    Ok(BoundRunReport {
        holds: measured_error <= bound.estimate_error_bound,
        bound,
        exact,
        trotter_values,
        extrapolated,
        measured_error,
    })
}

impl Tabular for BoundRunReport {
    fn header(&self) -> &'static [&'static str] {
        &["quantity", "steps", "value"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let row = |q: &str, steps: String, v: f64| vec![q.to_string(), steps, fmt_f64(v)];
        let mut rows = vec![
            row(
                "hamiltonian_norm",
                String::new(),
                self.bound.hamiltonian_norm,
            ),
            row("commutator_norm", String::new(), self.bound.commutator_norm),
        ];
        for (p, v) in self.bound.points.iter().zip(self.trotter_values) {
            let s = p.steps.to_string();
            rows.push(row("weight", s.clone(), p.weight));
            rows.push(row("truncation_bound", s.clone(), p.truncation_bound));
            rows.push(row("remainder_bound", s.clone(), p.remainder_bound));
            rows.push(row("trotter_value", s, v));
        }
        rows.push(row("exact", String::new(), self.exact));
        rows.push(row("extrapolated", String::new(), self.extrapolated));
        rows.push(row("measured_error", String::new(), self.measured_error));
        rows.push(row(
            "error_bound",
            String::new(),
            self.bound.estimate_error_bound,
        ));
        rows
    }

    fn summary(&self) -> Value {
        json!({
            "measured_error": self.measured_error,
            "error_bound": self.bound.estimate_error_bound,
            "holds": self.holds,
        })
    }
}
