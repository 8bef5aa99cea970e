//! Pauli strings, Pauli-sum Hamiltonians and exact (Trotter-free) evolution.
//!
//! Qubits are 0-based internally and 1-based in text (configs, reports).
//! Qubit 0 is the leftmost character of a Pauli label and the leftmost
//! tensor factor, i.e. the most significant bit of a basis index.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::linalg::{herm_expm, ComplexMatrix};
use crate::{Error, Result};

/// Largest register that may be materialized as a dense matrix.
pub const MAX_DENSE_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        let z = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        let data = match self {
            Pauli::I => vec![one, z, z, one],
            Pauli::X => vec![z, one, one, z],
            Pauli::Y => vec![z, -i, i, z],
            Pauli::Z => vec![one, z, z, -one],
        };
        ComplexMatrix::new(2, 2, data).expect("2x2")
    }
}

/// Bit masks describing how a unit Pauli string acts on basis states:
/// `P|k> = phase(k) |k ^ flip>`, with `phase(k) = i^y_count * (-1)^popcount(k & sign)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliAction {
    pub flip: usize,
    pub sign: usize,
    pub y_count: u32,
}

impl PauliAction {
    #[inline]
    pub fn phase(&self, k: usize) -> C64 {
        let base = match self.y_count % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        if (k & self.sign).count_ones() % 2 == 1 {
            -base
        } else {
            base
        }
    }

    /// `phase(k)` for every basis index of an `n`-qubit register.
    pub fn phase_table(&self, qubits: usize) -> Vec<C64> {
        (0..1usize << qubits).map(|k| self.phase(k)).collect()
    }
}

/// Bit of basis index corresponding to (0-based) qubit `q`.
#[inline]
pub fn qubit_bit(q: usize, qubits: usize) -> usize {
    1 << (qubits - 1 - q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    axes: Vec<Pauli>,
    coefficient: f64,
}

impl PauliString {
    pub fn new(axes: Vec<Pauli>, coefficient: f64) -> Result<Self> {
        if !coefficient.is_finite() {
            return Err(Error::InvalidPauli(format!(
                "non-finite coefficient {coefficient}"
            )));
        }
        if axes.is_empty() {
            return Err(Error::InvalidPauli("empty axes".into()));
        }
        Ok(Self { axes, coefficient })
    }

    /// Parses a label such as `"ZIZII"`.
    pub fn parse(label: &str, coefficient: f64) -> Result<Self> {
        let axes = label
            .trim()
            .chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::InvalidPauli(format!("bad axis {c:?} in {label:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(axes, coefficient)
    }

    /// Unit-coefficient string with the given axes on the given qubits.
    pub fn on(qubits: usize, placed: &[(usize, Pauli)]) -> Result<Self> {
        let mut axes = vec![Pauli::I; qubits];
        for &(q, p) in placed {
            if q >= qubits {
                return Err(Error::QubitOutOfRange { index: q, qubits });
            }
            axes[q] = p;
        }
        Self::new(axes, 1.0)
    }

    pub fn axes(&self) -> &[Pauli] {
        &self.axes
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn qubit_count(&self) -> usize {
        self.axes.len()
    }

    pub fn with_coefficient(&self, coefficient: f64) -> Self {
        Self {
            axes: self.axes.clone(),
            coefficient,
        }
    }

    pub fn label(&self) -> String {
        self.axes.iter().map(|p| p.as_char()).collect()
    }

    /// Qubits carrying a non-identity axis, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.axes
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(q, _)| q)
            .collect()
    }

    pub fn weight(&self) -> usize {
        self.axes.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    pub fn action(&self) -> PauliAction {
        let n = self.axes.len();
        let mut act = PauliAction {
            flip: 0,
            sign: 0,
            y_count: 0,
        };
        for (q, &p) in self.axes.iter().enumerate() {
            let bit = qubit_bit(q, n);
            match p {
                Pauli::I => {}
                Pauli::X => act.flip |= bit,
                Pauli::Z => act.sign |= bit,
                Pauli::Y => {
                    act.flip |= bit;
                    act.sign |= bit;
                    act.y_count += 1;
                }
            }
        }
        act
    }

    /// Dense matrix of the unit string (coefficient ignored).
    pub fn unit_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.axes.len();
        check_cap(n)?;
        let dim = 1usize << n;
        let act = self.action();
        let mut m = ComplexMatrix::zeros(dim, dim);
        for k in 0..dim {
            m[(k ^ act.flip, k)] = act.phase(k);
        }
        Ok(m)
    }

    /// Dense matrix including the coefficient.
    pub fn matrix(&self) -> Result<ComplexMatrix> {
        Ok(self.unit_matrix()?.scale_real(self.coefficient))
    }

    /// `<psi| P |psi>` for the unit string, real part only.
    pub fn expectation_in(&self, psi: &[C64]) -> C64 {
        let act = self.action();
        psi.iter()
            .enumerate()
            .map(|(k, &amp)| psi[k ^ act.flip].conj() * act.phase(k) * amp)
            .sum()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.label(), self.coefficient)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Accepts `"ZIZII, 3.0"` or a bare label (unit coefficient).
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(',') {
            Some((label, coeff)) => {
                let c: f64 = coeff
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidPauli(format!("bad coefficient in {s:?}")))?;
                Self::parse(label, c)
            }
            None => Self::parse(s, 1.0),
        }
    }
}

fn check_cap(qubits: usize) -> Result<()> {
    if qubits > MAX_DENSE_QUBITS {
        Err(Error::QubitCapExceeded {
            qubits,
            cap: MAX_DENSE_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// Weighted sum of Pauli strings. Term order is the Trotterization order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliHamiltonian {
    qubit_count: usize,
    terms: Vec<PauliString>,
}

impl PauliHamiltonian {
    pub fn new(qubit_count: usize, terms: Vec<PauliString>) -> Result<Self> {
        if qubit_count == 0 {
            return Err(Error::InvalidHamiltonian("zero qubits".into()));
        }
        for t in &terms {
            if t.qubit_count() != qubit_count {
                return Err(Error::InvalidHamiltonian(format!(
                    "term {} acts on {} qubits, expected {qubit_count}",
                    t.label(),
                    t.qubit_count()
                )));
            }
            if t.is_identity() {
                return Err(Error::InvalidHamiltonian(format!(
                    "identity term {} only shifts the energy; drop it",
                    t.label()
                )));
            }
        }
        Ok(Self { qubit_count, terms })
    }

    /// Parses `(label, coefficient)` specs such as `"ZIZII, 3.0"`.
    pub fn from_specs<S: AsRef<str>>(specs: &[S]) -> Result<Self> {
        let terms = specs
            .iter()
            .map(|s| s.as_ref().parse::<PauliString>())
            .collect::<Result<Vec<_>>>()?;
        let n = terms
            .first()
            .map(PauliString::qubit_count)
            .ok_or_else(|| Error::InvalidHamiltonian("no terms".into()))?;
        Self::new(n, terms)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn terms(&self) -> &[PauliString] {
        &self.terms
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            qubit_count: self.qubit_count,
            terms: self
                .terms
                .iter()
                .map(|t| t.with_coefficient(t.coefficient * s))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.qubit_count
    }
}

/// The center-coupled model `J sum_i Z_c Z_i + B sum_i X_i`, `c = ceil(n/2)`
/// (1-based). The `i = c` coupling is the identity and is dropped, as are
/// zero-coefficient terms.
///
/// Term order: the `n` field terms by qubit, then the `n - 1` couplings by
/// partner qubit. Gates are applied in this order within each Trotter step.
pub fn build_paper_hamiltonian(j: f64, b: f64, n: usize) -> Result<PauliHamiltonian> {
    if n < 2 {
        return Err(Error::InvalidHamiltonian(format!(
            "need at least 2 qubits, got {n}"
        )));
    }
    if !j.is_finite() || !b.is_finite() {
        return Err(Error::InvalidHamiltonian(
            "non-finite coupling or field".into(),
        ));
    }
    let center = n.div_ceil(2) - 1;
    let mut terms = Vec::with_capacity(2 * n - 1);
    if b != 0.0 {
        for q in 0..n {
            terms.push(PauliString::on(n, &[(q, Pauli::X)])?.with_coefficient(b));
        }
    }
    if j != 0.0 {
        for q in (0..n).filter(|&q| q != center) {
            terms.push(
                PauliString::on(n, &[(center, Pauli::Z), (q, Pauli::Z)])?.with_coefficient(j),
            );
        }
    }
    PauliHamiltonian::new(n, terms)
}

/// Dense `2^n x 2^n` matrix of the Hamiltonian.
pub fn hamiltonian_matrix(h: &PauliHamiltonian) -> Result<ComplexMatrix> {
    check_cap(h.qubit_count)?;
    let dim = h.dim();
    let mut m = ComplexMatrix::zeros(dim, dim);
    for t in &h.terms {
        let act = t.action();
        for k in 0..dim {
            m[(k ^ act.flip, k)] += act.phase(k) * t.coefficient;
        }
    }
    Ok(m)
}

/// `exp(-i H t)`.
pub fn exact_propagator(h: &PauliHamiltonian, t: f64) -> Result<ComplexMatrix> {
    herm_expm(&hamiltonian_matrix(h)?, t)
}

/// Parses a computational-basis label like `"00000"` into a basis index.
pub fn basis_index(label: &str, qubits: usize) -> Result<usize> {
    let label = label.trim();
    if label.len() != qubits {
        return Err(Error::InvalidArgument(format!(
            "basis label {label:?} has {} symbols, register has {qubits} qubits",
            label.len()
        )));
    }
    label.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::InvalidArgument(format!(
            "bad basis symbol {c:?} in {label:?}"
        ))),
    })
}

/// State vector `exp(-i H t)|psi0>`.
pub fn exact_state(h: &PauliHamiltonian, t: f64, psi0: usize) -> Result<Vec<C64>> {
    if psi0 >= h.dim() {
        return Err(Error::InvalidArgument(format!(
            "basis index {psi0} out of range"
        )));
    }
    Ok(exact_propagator(h, t)?.column(psi0))
}

fn require_unit_observable(a: &PauliString, qubits: usize) -> Result<()> {
    if a.coefficient() != 1.0 {
        return Err(Error::InvalidArgument(format!(
            "observable {} must have unit coefficient, got {}",
            a.label(),
            a.coefficient()
        )));
    }
    if a.qubit_count() != qubits {
        return Err(Error::DimensionMismatch {
            expected: qubits,
            actual: a.qubit_count(),
        });
    }
    Ok(())
}

/// `<psi0| e^{iHt} A e^{-iHt} |psi0>` for a unit Pauli observable.
pub fn exact_expectation(
    h: &PauliHamiltonian,
    t: f64,
    psi0: usize,
    a: &PauliString,
) -> Result<f64> {
    require_unit_observable(a, h.qubit_count)?;
    let psi = exact_state(h, t, psi0)?;
    let v = a.expectation_in(&psi);
    if v.im.abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "expectation has imaginary part {:e}",
            v.im
        )));
    }
    Ok(v.re)
}
