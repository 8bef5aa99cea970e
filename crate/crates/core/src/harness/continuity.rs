use serde::Serialize;
use serde_json::{json, Value};

use super::config::ExperimentConfig;
use super::{fmt_f64, try_par_map, Tabular};
use crate::density::{noisy_expectation, DensityMatrix};
use crate::mitigation::{exponential_extrapolate, linear_extrapolate};
use crate::noise::boost_model;
use crate::pauli::exact_expectation;
use crate::trotter::build_first_order_trotter;
use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityPoint {
    pub steps: usize,
    pub eps: f64,
    /// Noisy value at each boost node, in configuration order.
    pub boosted: Vec<f64>,
    pub raw: f64,
    pub linear: f64,
    pub exponential: f64,
    /// Exponential extrapolation failed and the linear value was used.
    pub exponential_fallback: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveBest {
    pub steps: usize,
    pub delta_sq: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityReport {
    pub exact: f64,
    pub boosts: Vec<f64>,
    pub points: Vec<ContinuityPoint>,
    pub best_raw: CurveBest,
    pub best_linear: CurveBest,
    pub best_exponential: CurveBest,
    pub fallback_steps: Vec<usize>,
}

/// Raw and physically mitigated `<A>` as a function of `eps_N = 1/N`.
///
/// Linear extrapolation uses every boost node; exponential uses the first
/// two with `r = boosts[1]`.
pub fn run_continuity_scan(cfg: &ExperimentConfig) -> Result<ContinuityReport> {
    let model = cfg.resolve_model()?;
    let grid = cfg.continuity.grid()?;
    let boosts = cfg.continuity.boosts.clone();
    let exact = exact_expectation(
        &model.hamiltonian,
        model.time,
        model.initial_state,
        &model.observable,
    )?;
    let rho0 = DensityMatrix::basis_state(model.hamiltonian.qubit_count(), model.initial_state)?;
    let models = boosts
        .iter()
        .map(|&a| boost_model(&model.noise, a))
        .collect::<Result<Vec<_>>>()?;

    let points = try_par_map(&grid, |&steps| {
        let circuit = build_first_order_trotter(&model.hamiltonian, model.time, steps)?;
        let boosted = models
            .iter()
            .map(|m| noisy_expectation(&circuit, m, &rho0, &model.observable))
            .collect::<Result<Vec<_>>>()?;
        let linear = linear_extrapolate(&boosted, &boosts)?;
        let (exponential, exponential_fallback) =
            match exponential_extrapolate(boosted[0], boosted[1], boosts[1]) {
                Ok(v) => (v, false),
                Err(_) => (linear, true),
            };
        Ok(ContinuityPoint {
            steps,
            eps: 1.0 / steps as f64,
            raw: boosted[0],
            boosted,
            linear,
            exponential,
            exponential_fallback,
        })
    })?;

    let best = |value: fn(&ContinuityPoint) -> f64| {
        points
            .iter()
            .map(|p| CurveBest {
                steps: p.steps,
                delta_sq: (value(p) - exact).powi(2),
            })
            .min_by(|a, b| a.delta_sq.total_cmp(&b.delta_sq))
            .expect("grid is nonempty")
    };
    Ok(ContinuityReport {
        best_raw: best(|p| p.raw),
        best_linear: best(|p| p.linear),
        best_exponential: best(|p| p.exponential),
        fallback_steps: points
            .iter()
            .filter(|p| p.exponential_fallback)
            .map(|p| p.steps)
            .collect(),
        exact,
        boosts,
        points,
    })
}

impl Tabular for ContinuityReport {
    fn header(&self) -> &'static [&'static str] {
        &[
            "steps",
            "eps",
            "raw",
            "linear",
            "exponential",
            "exact",
            "raw_delta_sq",
            "linear_delta_sq",
            "exponential_delta_sq",
            "exponential_fallback",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let d2 = |v: f64| fmt_f64((v - self.exact).powi(2));
        self.points
            .iter()
            .map(|p| {
                vec![
                    p.steps.to_string(),
                    fmt_f64(p.eps),
                    fmt_f64(p.raw),
                    fmt_f64(p.linear),
                    fmt_f64(p.exponential),
                    fmt_f64(self.exact),
                    d2(p.raw),
                    d2(p.linear),
                    d2(p.exponential),
                    p.exponential_fallback.to_string(),
                ]
            })
            .collect()
    }

    fn summary(&self) -> Value {
        json!({
            "exact": self.exact,
            "boosts": self.boosts,
            "best_raw": self.best_raw,
            "best_linear": self.best_linear,
            "best_exponential": self.best_exponential,
            "exponential_fallback_steps": self.fallback_steps,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::ChannelConfig;

    #[test]
    fn noiseless_scan_is_unmitigated_trotter() {
        let mut cfg = ExperimentConfig::default();
        cfg.model.terms = Some(vec!["XI, 1.0".into(), "ZZ, 1.5".into()]);
        cfg.model.time = 1.0;
        cfg.continuity.steps_min = 5;
        cfg.continuity.steps_max = 20;
        cfg.noise.boost = 0.0;
        let r = run_continuity_scan(&cfg).unwrap();
        for p in &r.points {
            assert_eq!(p.boosted[0], p.boosted[1]);
            assert!((p.linear - p.raw).abs() < 1e-12);
            assert!((p.exponential - p.raw).abs() < 1e-12 || p.exponential_fallback);
        }
        assert_eq!(r.best_raw.steps, 20);
    }

    #[test]
    fn mitigation_helps_with_strong_noise() {
        let mut cfg = ExperimentConfig::default();
        cfg.model.terms = Some(vec!["XI, 1.0".into(), "IX, 1.0".into()]);
        cfg.model.observable = Some("ZI".into());
        cfg.model.time = 0.3;
        cfg.continuity.steps_min = 4;
        cfg.continuity.steps_max = 6;
        cfg.noise.single = ChannelConfig {
            px: 1e-3,
            py: 1e-3,
            pz: 1e-3,
        };
        let r = run_continuity_scan(&cfg).unwrap();
        // Commuting terms: no Trotter error, only noise.
        for p in &r.points {
            let raw = (p.raw - r.exact).abs();
            assert!((p.linear - r.exact).abs() < raw);
            assert!((p.exponential - r.exact).abs() < raw);
        }
    }
}
