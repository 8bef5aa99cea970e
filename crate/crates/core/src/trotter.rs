//! First-order product-formula circuits.
//!
//! A circuit is `N` repetitions of one step; the step applies
//! `exp(-i c_k P_k t / N)` for every Hamiltonian term in term order, each
//! as a single native gate.

use num_complex::Complex64 as C64;

use crate::linalg::ComplexMatrix;
use crate::pauli::{PauliAction, PauliHamiltonian, PauliString};
use crate::{Error, Result};

/// `exp(-i * angle * P)` for a unit Pauli generator of weight 1 or 2.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    generator: PauliString,
    angle: f64,
    support: Vec<usize>,
}

impl GateOp {
    pub fn new(generator: &PauliString, angle: f64) -> Result<Self> {
        let weight = generator.weight();
        if !(1..=2).contains(&weight) {
            return Err(Error::UnsupportedWeight {
                term: generator.label(),
                weight,
            });
        }
        if !angle.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "non-finite gate angle {angle}"
            )));
        }
        Ok(Self {
            generator: generator.with_coefficient(1.0),
            angle,
            support: generator.support(),
        })
    }

    pub fn generator(&self) -> &PauliString {
        &self.generator
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn is_two_qubit(&self) -> bool {
        self.support.len() == 2
    }

    pub fn inverse(&self) -> Self {
        Self {
            angle: -self.angle,
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrotterCircuit {
    qubit_count: usize,
    steps: usize,
    total_time: f64,
    step_gates: Vec<GateOp>,
}

impl TrotterCircuit {
    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    /// Gates of a single step, in application order.
    pub fn step_gates(&self) -> &[GateOp] {
        &self.step_gates
    }

    pub fn gate_count(&self) -> usize {
        self.steps * self.step_gates.len()
    }

    /// All gates in application order, step by step.
    pub fn gates(&self) -> impl Iterator<Item = &GateOp> + '_ {
        (0..self.steps).flat_map(move |_| self.step_gates.iter())
    }

    /// Same gates with every angle negated and the order reversed.
    pub fn inverse(&self) -> Self {
        Self {
            qubit_count: self.qubit_count,
            steps: self.steps,
            total_time: -self.total_time,
            step_gates: self.step_gates.iter().rev().map(GateOp::inverse).collect(),
        }
    }
}

pub fn build_first_order_trotter(
    h: &PauliHamiltonian,
    t: f64,
    n_steps: usize,
) -> Result<TrotterCircuit> {
    if n_steps == 0 {
        return Err(Error::InvalidArgument(
            "Trotter step count must be at least 1".into(),
        ));
    }
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite time {t}")));
    }
    let dt = t / n_steps as f64;
    let step_gates = h
        .terms()
        .iter()
        .map(|term| GateOp::new(term, term.coefficient() * dt))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrotterCircuit {
        qubit_count: h.qubit_count(),
        steps: n_steps,
        total_time: t,
        step_gates,
    })
}

fn check_support(g: &GateOp, qubit_count: usize) -> Result<()> {
    if g.generator.qubit_count() != qubit_count {
        return Err(Error::DimensionMismatch {
            expected: qubit_count,
            actual: g.generator.qubit_count(),
        });
    }
    if let Some(&q) = g.support.iter().find(|&&q| q >= qubit_count) {
        return Err(Error::QubitOutOfRange {
            index: q,
            qubits: qubit_count,
        });
    }
    Ok(())
}

/// Dense `cos(angle) I - i sin(angle) P` on the full register.
pub fn gate_unitary(g: &GateOp, qubit_count: usize) -> Result<ComplexMatrix> {
    check_support(g, qubit_count)?;
    let p = g.generator.unit_matrix()?;
    let (s, c) = g.angle.sin_cos();
    Ok(&ComplexMatrix::identity(1 << qubit_count).scale_real(c) + &p.scale(C64::new(0.0, -s)))
}

/// In place `m <- exp(-i angle P) m`, touching each entry once.
pub(crate) fn rotate_rows(m: &mut ComplexMatrix, act: &PauliAction, phases: &[C64], angle: f64) {
    let dim = m.rows();
    let cols = m.cols();
    let (s, c) = angle.sin_cos();
    let data = m.as_mut_slice();
    let mis = C64::new(0.0, -s);
    // Rows i and i^flip mix; visit each pair once (or each row once if flip = 0).
    for i in 0..dim {
        let partner = i ^ act.flip;
        if partner < i {
            continue;
        }
        if partner == i {
            let f = c + mis * phases[i];
            for v in &mut data[i * cols..(i + 1) * cols] {
                *v *= f;
            }
            continue;
        }
        // (P m)[i] = phase(partner) m[partner]; (P m)[partner] = phase(i) m[i].
        let to_i = mis * phases[partner];
        let to_p = mis * phases[i];
        for j in 0..cols {
            let a = data[i * cols + j];
            let b = data[partner * cols + j];
            data[i * cols + j] = c * a + to_i * b;
            data[partner * cols + j] = c * b + to_p * a;
        }
    }
}

/// Product of all gate unitaries, first gate applied first.
pub fn circuit_unitary(c: &TrotterCircuit) -> Result<ComplexMatrix> {
    let n = c.qubit_count;
    if n > crate::pauli::MAX_DENSE_QUBITS {
        return Err(Error::QubitCapExceeded {
            qubits: n,
            cap: crate::pauli::MAX_DENSE_QUBITS,
        });
    }
    let prepared = c
        .step_gates
        .iter()
        .map(|g| {
            check_support(g, n)?;
            let act = g.generator.action();
            Ok((act, act.phase_table(n), g.angle))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut u = ComplexMatrix::identity(1 << n);
    for _ in 0..c.steps {
        for (act, phases, angle) in &prepared {
            rotate_rows(&mut u, act, phases, *angle);
        }
    }
    Ok(u)
}
