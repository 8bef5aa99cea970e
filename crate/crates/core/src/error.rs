use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian: largest |m - m^dagger| entry is {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },

    #[error("register of {qubits} qubits exceeds the dense cap of {cap}")]
    QubitCapExceeded { qubits: usize, cap: usize },

    #[error("invalid Pauli string: {0}")]
    InvalidPauli(String),

    #[error("invalid Hamiltonian: {0}")]
    InvalidHamiltonian(String),

    #[error("term {term} has weight {weight}; only weight 1 and 2 gates are supported")]
    UnsupportedWeight { term: String, weight: usize },

    #[error("qubit index {index} out of range for a {qubits}-qubit register")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("invalid noise channel ({px}, {py}, {pz}): {reason}")]
    InvalidChannel {
        px: f64,
        py: f64,
        pz: f64,
        reason: &'static str,
    },

    #[error("Kraus set is not complete: max |sum K^dagger K - I| = {deviation:e}")]
    IncompleteKraus { deviation: f64 },

    #[error("budget {total} too small: point N={steps} receives zero shots")]
    BudgetTooSmall { total: u64, steps: usize },

    #[error("invalid extrapolation nodes: {0}")]
    InvalidNodes(String),

    #[error("exponential extrapolation needs nonzero same-sign inputs, got v1={v1}, v2={v2}")]
    SignMismatch { v1: f64, v2: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Coarse classification used by the CLI to choose an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Infeasible,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) => ErrorKind::Config,
            Error::NotHermitian { .. }
            | Error::IncompleteKraus { .. }
            | Error::SignMismatch { .. }
            | Error::Numerical(_) => ErrorKind::Numerical,
            _ => ErrorKind::Infeasible,
        }
    }
}
