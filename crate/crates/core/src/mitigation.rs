//! Extrapolation estimators and their sampling costs.
//!
//! Physical extrapolation runs the circuit at boosted noise `a_i * eps`;
//! algorithmic extrapolation runs it at step counts `N_i`, i.e. at
//! `eps_N = 1/N_i`, and uses nodes `a_i = N_0 / N_i` with `N_0` the largest
//! count. Both combine the results with Richardson weights `gamma_i`
//! satisfying `sum gamma_i = 1` and `sum gamma_i a_i^j = 0` for `j = 1..k-1`.

use serde::Serialize;

use crate::linalg::{spectral_norm, ComplexMatrix};
use crate::pauli::PauliHamiltonian;
use crate::{Error, Result, C64};

/// More nodes than this make `sum gamma^2` grow too fast to be useful.
pub const MAX_NODES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtrapolationKind {
    PhysicalLinear,
    PhysicalExponential,
    Algorithmic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtrapolationPlan {
    pub kind: ExtrapolationKind,
    pub nodes: Vec<f64>,
    pub coefficients: Vec<f64>,
}

impl ExtrapolationPlan {
    pub fn physical_linear(nodes: &[f64]) -> Result<Self> {
        Ok(Self {
            kind: ExtrapolationKind::PhysicalLinear,
            nodes: nodes.to_vec(),
            coefficients: richardson_coefficients(nodes)?,
        })
    }

    /// The exponential estimator is Richardson on logarithms with nodes
    /// `(1, r)`, so its exponents double as coefficients.
    pub fn physical_exponential(r: f64) -> Result<Self> {
        let nodes = [1.0, r];
        Ok(Self {
            kind: ExtrapolationKind::PhysicalExponential,
            nodes: nodes.to_vec(),
            coefficients: richardson_coefficients(&nodes)?,
        })
    }

    pub fn algorithmic(ns: &[usize]) -> Result<Self> {
        let nodes = algorithmic_nodes(ns)?;
        Ok(Self {
            kind: ExtrapolationKind::Algorithmic,
            coefficients: richardson_coefficients(&nodes)?,
            nodes,
        })
    }

    /// `Gamma = sum gamma_i^2`.
    pub fn cost(&self) -> f64 {
        self.coefficients.iter().map(|g| g * g).sum()
    }

    /// `sum gamma_i values_i`.
    pub fn apply(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: self.coefficients.len(),
                actual: values.len(),
            });
        }
        Ok(neumaier_dot(&self.coefficients, values))
    }
}

fn validate_nodes(nodes: &[f64]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::InvalidNodes("no nodes".into()));
    }
    if nodes.len() > MAX_NODES {
        return Err(Error::InvalidNodes(format!(
            "{} nodes exceed the limit of {MAX_NODES}",
            nodes.len()
        )));
    }
    if let Some(bad) = nodes.iter().find(|a| !a.is_finite() || **a <= 0.0) {
        return Err(Error::InvalidNodes(format!(
            "node {bad} is not a positive finite number"
        )));
    }
    if (nodes[0] - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidNodes(format!(
            "first node must be 1, got {}",
            nodes[0]
        )));
    }
    for w in nodes.windows(2) {
        if w[1] == w[0] {
            return Err(Error::InvalidNodes(format!("duplicate node {}", w[0])));
        }
        if w[1] < w[0] {
            return Err(Error::InvalidNodes(format!(
                "nodes must increase: {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

/// Richardson weights in closed form, `gamma_i = prod_{j != i} a_j / (a_j - a_i)`.
pub fn richardson_coefficients(nodes: &[f64]) -> Result<Vec<f64>> {
    validate_nodes(nodes)?;
    Ok(nodes
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &aj)| aj / (aj - ai))
                .product()
        })
        .collect())
}

/// Compensated `sum a_i b_i`; the weights alternate in sign.
fn neumaier_dot(a: &[f64], b: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let term = x * y;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// `sum gamma_i <A>(a_i eps)`.
pub fn linear_extrapolate(values: &[f64], nodes: &[f64]) -> Result<f64> {
    if values.len() != nodes.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            actual: values.len(),
        });
    }
    Ok(neumaier_dot(&richardson_coefficients(nodes)?, values))
}

/// `v1^{r/(r-1)} v2^{1/(1-r)}` with the common sign factored out.
pub fn exponential_extrapolate(v1: f64, v2: f64, r: f64) -> Result<f64> {
    if !(r.is_finite() && r > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "ratio r must exceed 1, got {r}"
        )));
    }
    if !(v1.is_finite() && v2.is_finite()) || v1 == 0.0 || v2 == 0.0 || v1.signum() != v2.signum() {
        return Err(Error::SignMismatch { v1, v2 });
    }
    let log_est = r / (r - 1.0) * v1.abs().ln() + v2.abs().ln() / (1.0 - r);
    Ok(v1.signum() * log_est.exp())
}

/// Nodes `N_0 / N_i` for strictly descending step counts.
pub fn algorithmic_nodes(ns: &[usize]) -> Result<Vec<f64>> {
    if ns.contains(&0) {
        return Err(Error::InvalidNodes("step counts must be positive".into()));
    }
    if ns.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidNodes(format!(
            "step counts must strictly descend, got {ns:?}"
        )));
    }
    let n0 = *ns
        .first()
        .ok_or_else(|| Error::InvalidNodes("no step counts".into()))? as f64;
    Ok(ns.iter().map(|&n| n0 / n as f64).collect())
}

/// Richardson combination over `eps_N = 1/N` at step counts `ns` (descending).
pub fn algorithmic_extrapolate(values: &[f64], ns: &[usize]) -> Result<f64> {
    linear_extrapolate(values, &algorithmic_nodes(ns)?)
}

pub fn mitigation_cost(plan: &ExtrapolationPlan) -> f64 {
    plan.cost()
}

/// `(r^2 e^{2 N_tot eps} + e^{2 N_tot r eps}) / (r - 1)^2`.
pub fn exponential_cost(r: f64, n_tot: f64, eps: f64) -> Result<f64> {
    if !(r.is_finite() && r > 1.0) {
        return Err(Error::InvalidArgument(format!(
            "ratio r must exceed 1, got {r}"
        )));
    }
    if n_tot < 0.0 || eps < 0.0 {
        return Err(Error::InvalidArgument(
            "gate count and error rate must be nonnegative".into(),
        ));
    }
    let x = n_tot * eps;
    Ok((r * r * (2.0 * x).exp() + (2.0 * x * r).exp()) / ((r - 1.0) * (r - 1.0)))
}

/// Cost of stacking algorithmic on physical extrapolation.
pub fn combined_cost(gamma_alg: f64, gamma_phys: f64) -> f64 {
    gamma_alg * gamma_phys
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepBound {
    pub steps: usize,
    /// Richardson weight of this point in the combination.
    pub weight: f64,
    /// Bound on the third-and-higher-order Trotter remainder `||E^N||`.
    pub truncation_bound: f64,
    /// Bound on `|R^N|`, the part of `<A>(eps_N)` beyond `<A>(0) + b/N`.
    pub remainder_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    /// `||a||` with `a = sum_{i<j} [H_i, H_j] t^2 / 2`.
    pub commutator_norm: f64,
    pub hamiltonian_norm: f64,
    pub points: Vec<StepBound>,
    /// `sum_i |gamma_i| R^{N_i}` bound on `|<A>_est(0) - <A>(0)|`.
    pub estimate_error_bound: f64,
}

/// `||H||^3 t^3 / (6 N^2) e^{||H|| t / N}`.
pub fn truncation_bound(h_norm: f64, t: f64, n: usize) -> f64 {
    let n = n as f64;
    let ht = h_norm * t.abs();
    ht.powi(3) / (6.0 * n * n) * (ht / n).exp()
}

/// `[(||a||/N + T_N)^2 + 2 T_N] ||A||` with `T_N` the truncation bound.
pub fn remainder_bound(a_norm: f64, h_norm: f64, t: f64, n: usize, obs_norm: f64) -> f64 {
    let trunc = truncation_bound(h_norm, t, n);
    let first = a_norm / n as f64 + trunc;
    (first * first + 2.0 * trunc) * obs_norm
}

/// `||sum_{i<j} [H_i, H_j]|| t^2 / 2` and `||H||`, from materialized terms.
pub fn commutator_and_hamiltonian_norms(h: &PauliHamiltonian, t: f64) -> Result<(f64, f64)> {
    let mats = h
        .terms()
        .iter()
        .map(|term| term.matrix())
        .collect::<Result<Vec<_>>>()?;
    let dim = h.dim();
    let mut total = ComplexMatrix::zeros(dim, dim);
    let mut comm = ComplexMatrix::zeros(dim, dim);
    for (i, hi) in mats.iter().enumerate() {
        total = &total + hi;
        for hj in &mats[i + 1..] {
            comm = &comm + &(&(hi * hj) - &(hj * hi));
        }
    }
    // The commutator sum is anti-Hermitian; i * it is Hermitian with the same norm.
    let a_norm = spectral_norm(&comm.scale(C64::new(0.0, 1.0)))? * t * t / 2.0;
    Ok((a_norm, spectral_norm(&total)?))
}

/// Bound on the Richardson estimate built from step counts `ns` (descending).
pub fn richardson_bound(
    h: &PauliHamiltonian,
    t: f64,
    ns: &[usize],
    obs_norm: f64,
) -> Result<BoundReport> {
    let plan = ExtrapolationPlan::algorithmic(ns)?;
    let (commutator_norm, hamiltonian_norm) = commutator_and_hamiltonian_norms(h, t)?;
    let points: Vec<StepBound> = ns
        .iter()
        .zip(&plan.coefficients)
        .map(|(&steps, &weight)| StepBound {
            steps,
            weight,
            truncation_bound: truncation_bound(hamiltonian_norm, t, steps),
            remainder_bound: remainder_bound(commutator_norm, hamiltonian_norm, t, steps, obs_norm),
        })
        .collect();
    let estimate_error_bound = points
        .iter()
        .map(|p| p.weight.abs() * p.remainder_bound)
        .sum();
    Ok(BoundReport {
        commutator_norm,
        hamiltonian_norm,
        points,
        estimate_error_bound,
    })
}

/// Two-point bound for `N1 > N2 >= 1`.
pub fn appendix_bound(
    h: &PauliHamiltonian,
    t: f64,
    n1: usize,
    n2: usize,
    obs_norm: f64,
) -> Result<BoundReport> {
    if !(n1 > n2 && n2 >= 1) {
        return Err(Error::InvalidArgument(format!(
            "need N1 > N2 >= 1, got N1={n1}, N2={n2}"
        )));
    }
    if !(obs_norm.is_finite() && obs_norm >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "observable norm must be nonnegative, got {obs_norm}"
        )));
    }
    richardson_bound(h, t, &[n1, n2], obs_norm)
}
