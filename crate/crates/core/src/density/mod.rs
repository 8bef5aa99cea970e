//! Density-matrix evolution through noisy Trotter circuits.
//!
//! [`run_noisy_trotter`] never materializes a gate or Kraus operator: Pauli
//! rotations and Pauli channels act on `rho` through index permutations and
//! phases, O(4^n) per gate. [`apply_channel`] is the generic dense path.

mod shots;

pub use shots::{
    allocate_budget, sample_estimator, sample_estimator_with, BudgetAllocation, ShotPoint,
};

use num_complex::Complex64 as C64;

use crate::linalg::{hermitian_eigenvalues, trace_norm, ComplexMatrix, DEFAULT_TOL};
use crate::noise::{completeness_deviation, NoiseModel, PauliNoiseChannel};
use crate::pauli::{exact_state, qubit_bit, PauliAction, PauliHamiltonian, PauliString};
use crate::trotter::{build_first_order_trotter, TrotterCircuit};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    qubit_count: usize,
    matrix: ComplexMatrix,
}

/// Structural health of a density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace_error: f64,
    pub hermitian_deviation: f64,
    pub min_eigenvalue: f64,
}

impl StateDiagnostics {
    pub fn is_valid(&self, tol: f64, eig_floor: f64) -> bool {
        self.trace_error <= tol
            && self.hermitian_deviation <= tol
            && self.min_eigenvalue >= eig_floor
    }
}

impl DensityMatrix {
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dim = matrix.rows();
        if !dim.is_power_of_two() || dim == 0 {
            return Err(Error::InvalidArgument(format!(
                "dimension {dim} is not a power of two"
            )));
        }
        Ok(Self {
            qubit_count: dim.trailing_zeros() as usize,
            matrix,
        })
    }

    pub fn basis_state(qubit_count: usize, index: usize) -> Result<Self> {
        let dim = 1usize << qubit_count;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range"
            )));
        }
        let mut m = ComplexMatrix::zeros(dim, dim);
        m[(index, index)] = C64::new(1.0, 0.0);
        Self::from_matrix(m)
    }

    pub fn pure(psi: &[C64]) -> Result<Self> {
        Self::from_matrix(ComplexMatrix::outer(psi, psi))
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// `Tr(P rho)` for the string including its coefficient.
    pub fn expectation(&self, a: &PauliString) -> Result<f64> {
        if a.qubit_count() != self.qubit_count {
            return Err(Error::DimensionMismatch {
                expected: self.qubit_count,
                actual: a.qubit_count(),
            });
        }
        let act = a.action();
        let dim = self.dim();
        let data = self.matrix.as_slice();
        // Tr(P rho) = sum_l phase(l) rho[l][l ^ flip]
        let v: C64 = (0..dim)
            .map(|l| act.phase(l) * data[l * dim + (l ^ act.flip)])
            .sum();
        if v.im.abs() > DEFAULT_TOL {
            return Err(Error::Numerical(format!(
                "expectation has imaginary part {:e}",
                v.im
            )));
        }
        Ok(v.re * a.coefficient())
    }

    pub fn diagnostics(&self) -> Result<StateDiagnostics> {
        let hermitian_deviation = self.matrix.hermitian_deviation();
        let trace_error = (self.trace() - C64::new(1.0, 0.0)).norm();
        // Symmetrize before the eigensolve so small asymmetries are reported, not rejected.
        let sym = (&self.matrix + &self.matrix.dagger()).scale_real(0.5);
        let min_eigenvalue = hermitian_eigenvalues(&sym)?.first().copied().unwrap_or(0.0);
        Ok(StateDiagnostics {
            trace_error,
            hermitian_deviation,
            min_eigenvalue,
        })
    }

    /// Fails unless trace and Hermiticity are within `tol` and the spectrum is above `-1e-8`.
    pub fn validate(&self, tol: f64) -> Result<StateDiagnostics> {
        let d = self.diagnostics()?;
        if !d.is_valid(tol, -1e-8) {
            return Err(Error::Numerical(format!("invalid density matrix: {d:?}")));
        }
        Ok(d)
    }
}

/// `sum_k K rho K^dagger` with dense Kraus operators.
pub fn apply_channel(rho: &DensityMatrix, kraus: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let deviation = completeness_deviation(kraus);
    if deviation > DEFAULT_TOL {
        return Err(Error::IncompleteKraus { deviation });
    }
    let dim = rho.dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for k in kraus {
        if k.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: k.rows(),
            });
        }
        out = &out + &rho.matrix.conjugate_by(k)?;
    }
    DensityMatrix::from_matrix(out)
}

/// In place `rho <- U rho U^dagger` for `U = exp(-i angle P)`.
///
/// `U rho U^dagger = c^2 rho + s^2 P rho P + i c s (rho P - P rho)`.
fn conjugate_rotation(
    rho: &mut [C64],
    scratch: &mut [C64],
    dim: usize,
    act: &PauliAction,
    phases: &[C64],
    angle: f64,
) {
    let (s, c) = angle.sin_cos();
    if s == 0.0 {
        return;
    }
    let c2 = c * c;
    let s2 = s * s;
    let ics = C64::new(0.0, c * s);
    let f = act.flip;
    for i in 0..dim {
        let pi = phases[i ^ f];
        let row = &rho[i * dim..(i + 1) * dim];
        let row_f = &rho[(i ^ f) * dim..((i ^ f) + 1) * dim];
        let dst = &mut scratch[i * dim..(i + 1) * dim];
        for j in 0..dim {
            let pj = phases[j];
            let prp = pi * row_f[j ^ f] * pj;
            let rp = row[j ^ f] * pj;
            let pr = pi * row_f[j];
            dst[j] = c2 * row[j] + s2 * prp + ics * (rp - pr);
        }
    }
    rho.copy_from_slice(scratch);
}

/// In place single-qubit Pauli channel on the qubit with index bit `bit`.
///
/// `rho'[i][j] = (1 - p + pz s) rho[i][j] + (px + py s) rho[i^m][j^m]`,
/// `s = +1` when `i` and `j` agree on the bit, `-1` otherwise.
fn pauli_channel(rho: &mut [C64], dim: usize, bit: usize, ch: &PauliNoiseChannel) {
    if ch.is_noiseless() {
        return;
    }
    let keep_same = 1.0 - ch.p() + ch.pz;
    let keep_diff = 1.0 - ch.p() - ch.pz;
    let swap_same = ch.px + ch.py;
    let swap_diff = ch.px - ch.py;
    for i in (0..dim).filter(|i| i & bit == 0) {
        let ip = i | bit;
        for j in 0..dim {
            let jp = j ^ bit;
            let (keep, swap) = if j & bit == 0 {
                (keep_same, swap_same)
            } else {
                (keep_diff, swap_diff)
            };
            let a = rho[i * dim + j];
            let b = rho[ip * dim + jp];
            rho[i * dim + j] = keep * a + swap * b;
            rho[ip * dim + jp] = keep * b + swap * a;
        }
    }
}

struct PreparedGate {
    act: PauliAction,
    phases: Vec<C64>,
    angle: f64,
    bits: Vec<usize>,
    two_qubit: bool,
}

/// Noisy evolution, invoking `observe(step, rho)` after every Trotter step.
pub fn run_noisy_trotter_observed<F>(
    c: &TrotterCircuit,
    m: &NoiseModel,
    rho0: &DensityMatrix,
    mut observe: F,
) -> Result<DensityMatrix>
where
    F: FnMut(usize, &DensityMatrix) -> Result<()>,
{
    let n = c.qubit_count();
    if rho0.qubit_count() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: rho0.qubit_count(),
        });
    }
    let single = m.single();
    let two = m.two_factor();
    single.validate()?;
    two.validate()?;
    let dim = rho0.dim();
    let prepared: Vec<PreparedGate> = c
        .step_gates()
        .iter()
        .map(|g| {
            let act = g.generator().action();
            PreparedGate {
                phases: act.phase_table(n),
                act,
                angle: g.angle(),
                bits: g.support().iter().map(|&q| qubit_bit(q, n)).collect(),
                two_qubit: g.is_two_qubit(),
            }
        })
        .collect();

    let mut state = rho0.clone();
    let mut scratch = vec![C64::new(0.0, 0.0); dim * dim];
    for step in 0..c.steps() {
        let rho = state.matrix.as_mut_slice();
        for g in &prepared {
            conjugate_rotation(rho, &mut scratch, dim, &g.act, &g.phases, g.angle);
            let ch = if g.two_qubit { &two } else { &single };
            for &bit in &g.bits {
                pauli_channel(rho, dim, bit, ch);
            }
        }
        observe(step, &state)?;
    }
    Ok(state)
}

/// Each gate followed by its noise channel, all gates in order.
pub fn run_noisy_trotter(
    c: &TrotterCircuit,
    m: &NoiseModel,
    rho0: &DensityMatrix,
) -> Result<DensityMatrix> {
    run_noisy_trotter_observed(c, m, rho0, |_, _| Ok(()))
}

/// `Tr(A rho_out)` after the noisy circuit.
pub fn noisy_expectation(
    c: &TrotterCircuit,
    m: &NoiseModel,
    rho0: &DensityMatrix,
    a: &PauliString,
) -> Result<f64> {
    run_noisy_trotter(c, m, rho0)?.expectation(a)
}

/// `|| rho - |psi><psi| ||_1` (no one-half factor).
pub fn trace_distance_to_pure(rho: &DensityMatrix, psi: &[C64]) -> Result<f64> {
    let ideal = ComplexMatrix::outer(psi, psi);
    trace_norm(&(rho.matrix() - &ideal))
}

/// Trace distance between the noisy Trotterized state and the exact state,
/// both started from basis state `psi0`.
pub fn state_distance_vs_ideal(
    h: &PauliHamiltonian,
    t: f64,
    n_steps: usize,
    m: &NoiseModel,
    psi0: usize,
) -> Result<f64> {
    let circuit = build_first_order_trotter(h, t, n_steps)?;
    let rho0 = DensityMatrix::basis_state(h.qubit_count(), psi0)?;
    let rho = run_noisy_trotter(&circuit, m, &rho0)?;
    trace_distance_to_pure(&rho, &exact_state(h, t, psi0)?)
}
