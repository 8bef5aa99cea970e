//! Noisy first-order Trotter simulation on small registers, with stacked
//! extrapolation of physical noise (boosted channel rates) and of Trotter
//! error (varying step counts).
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, Hermitian exponentials and norms.
//! - [`pauli`]: Pauli strings, Hamiltonians and the exact reference evolution.
//! - [`trotter`]: first-order product-formula circuits.
//! - [`noise`]: inhomogeneous Pauli channels and boost factors.
//! - [`density`]: density-matrix evolution, shot sampling and budgets.
//! - [`mitigation`]: Richardson, exponential and algorithmic extrapolation,
//!   sampling costs and the Trotter remainder bound.
//! - [`harness`]: experiment configs, the three sweeps and CSV output.

pub mod density;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod mitigation;
pub mod noise;
pub mod pauli;
pub mod trotter;

pub use error::{Error, ErrorKind, Result};

pub use num_complex::Complex64 as C64;
