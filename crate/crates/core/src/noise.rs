//! Inhomogeneous Pauli channels `E(rho) = (1-p) rho + px X rho X + py Y rho Y + pz Z rho Z`.
//!
//! A [`NoiseModel`] keeps the unboosted base rates and a boost factor; the
//! effective rates are `boost * base`. Single-qubit gates are followed by the
//! single-qubit channel, two-qubit gates by `E2 (x) E2` on their support.

use serde::{Deserialize, Serialize};

use crate::linalg::{kron, ComplexMatrix};
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PauliNoiseChannel {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl PauliNoiseChannel {
    pub fn new(px: f64, py: f64, pz: f64) -> Result<Self> {
        let ch = Self { px, py, pz };
        ch.validate()?;
        Ok(ch)
    }

    pub const fn noiseless() -> Self {
        Self {
            px: 0.0,
            py: 0.0,
            pz: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let Self { px, py, pz } = *self;
        let reason = if ![px, py, pz].iter().all(|p| p.is_finite()) {
            Some("non-finite probability")
        } else if px < 0.0 || py < 0.0 || pz < 0.0 {
            Some("negative probability")
        } else if px + py + pz > 1.0 {
            Some("total error probability exceeds 1")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidChannel { px, py, pz, reason }),
            None => Ok(()),
        }
    }

    /// Total error probability `p = px + py + pz`.
    pub fn p(&self) -> f64 {
        self.px + self.py + self.pz
    }

    pub fn is_noiseless(&self) -> bool {
        self.p() == 0.0
    }

    pub fn scaled(&self, a: f64) -> Result<Self> {
        Self::new(self.px * a, self.py * a, self.pz * a)
    }

    /// `(weight, Pauli)` pairs with nonzero weight, identity first.
    fn weighted_paulis(&self) -> Vec<(f64, Pauli)> {
        [
            (1.0 - self.p(), Pauli::I),
            (self.px, Pauli::X),
            (self.py, Pauli::Y),
            (self.pz, Pauli::Z),
        ]
        .into_iter()
        .filter(|(w, _)| *w > 0.0)
        .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    single_qubit: PauliNoiseChannel,
    two_qubit_factor: PauliNoiseChannel,
    boost: f64,
}

impl NoiseModel {
    pub fn new(
        single_qubit: PauliNoiseChannel,
        two_qubit_factor: PauliNoiseChannel,
    ) -> Result<Self> {
        single_qubit.validate()?;
        two_qubit_factor.validate()?;
        Ok(Self {
            single_qubit,
            two_qubit_factor,
            boost: 1.0,
        })
    }

    pub fn noiseless() -> Self {
        Self {
            single_qubit: PauliNoiseChannel::noiseless(),
            two_qubit_factor: PauliNoiseChannel::noiseless(),
            boost: 1.0,
        }
    }

    /// Single-qubit `(2e-5, 2e-5, 6e-5)`, two-qubit legs `(1e-4, 1e-4, 3e-4)`.
    pub fn reference() -> Self {
        Self {
            single_qubit: PauliNoiseChannel {
                px: 2.0e-5,
                py: 2.0e-5,
                pz: 6.0e-5,
            },
            two_qubit_factor: PauliNoiseChannel {
                px: 1.0e-4,
                py: 1.0e-4,
                pz: 3.0e-4,
            },
            boost: 1.0,
        }
    }

    pub fn boost(&self) -> f64 {
        self.boost
    }

    pub fn base_single(&self) -> PauliNoiseChannel {
        self.single_qubit
    }

    pub fn base_two_factor(&self) -> PauliNoiseChannel {
        self.two_qubit_factor
    }

    /// Boosted single-qubit channel.
    pub fn single(&self) -> PauliNoiseChannel {
        scale_unchecked(&self.single_qubit, self.boost)
    }

    /// Boosted per-leg channel of the two-qubit `E (x) E`.
    pub fn two_factor(&self) -> PauliNoiseChannel {
        scale_unchecked(&self.two_qubit_factor, self.boost)
    }

    pub fn is_noiseless(&self) -> bool {
        self.single().is_noiseless() && self.two_factor().is_noiseless()
    }
}

fn scale_unchecked(ch: &PauliNoiseChannel, a: f64) -> PauliNoiseChannel {
    PauliNoiseChannel {
        px: ch.px * a,
        py: ch.py * a,
        pz: ch.pz * a,
    }
}

/// Multiplies every Pauli probability by `a` (cumulative with any earlier boost).
pub fn boost_model(m: &NoiseModel, a: f64) -> Result<NoiseModel> {
    if !a.is_finite() || a < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "boost factor must be finite and >= 0, got {a}"
        )));
    }
    let boosted = NoiseModel {
        boost: m.boost * a,
        ..*m
    };
    boosted.single().validate()?;
    boosted.two_factor().validate()?;
    Ok(boosted)
}

/// Kraus operators of `ch` on one qubit, or of `ch (x) ch` on two, embedded
/// in an `n`-qubit register. Zero-weight operators are omitted.
pub fn kraus_ops(
    ch: &PauliNoiseChannel,
    support: &[usize],
    qubit_count: usize,
) -> Result<Vec<ComplexMatrix>> {
    ch.validate()?;
    if !(1..=2).contains(&support.len()) {
        return Err(Error::InvalidArgument(format!(
            "channel support must have 1 or 2 qubits, got {}",
            support.len()
        )));
    }
    if support.len() == 2 && support[0] == support[1] {
        return Err(Error::InvalidArgument(
            "repeated qubit in channel support".into(),
        ));
    }
    let legs = ch.weighted_paulis();
    let mut combos: Vec<(f64, Vec<(usize, Pauli)>)> = vec![(1.0, Vec::new())];
    for &q in support {
        combos = combos
            .into_iter()
            .flat_map(|(w, placed)| {
                legs.iter().map(move |&(wl, p)| {
                    let mut placed = placed.clone();
                    placed.push((q, p));
                    (w * wl, placed)
                })
            })
            .collect();
    }
    combos
        .into_iter()
        .map(|(w, placed)| {
            Ok(PauliString::on(qubit_count, &placed)?
                .unit_matrix()?
                .scale_real(w.sqrt()))
        })
        .collect()
}

/// Local 2x2 Kraus set, mostly for tests and small demos.
pub fn local_kraus(ch: &PauliNoiseChannel) -> Vec<ComplexMatrix> {
    ch.weighted_paulis()
        .into_iter()
        .map(|(w, p)| p.matrix().scale_real(w.sqrt()))
        .collect()
}

/// Largest entrywise deviation of `sum K^dagger K` from the identity.
pub fn completeness_deviation(kraus: &[ComplexMatrix]) -> f64 {
    let Some(first) = kraus.first() else {
        return f64::INFINITY;
    };
    let dim = first.cols();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for k in kraus {
        match k.dagger().matmul(k) {
            Ok(p) if p.rows() == dim => acc = &acc + &p,
            _ => return f64::INFINITY,
        }
    }
    acc.max_abs_diff(&ComplexMatrix::identity(dim))
}

/// Two-qubit `E (x) E` local Kraus set (16 operators for a full channel).
pub fn local_two_qubit_kraus(ch: &PauliNoiseChannel) -> Vec<ComplexMatrix> {
    let single = local_kraus(ch);
    single
        .iter()
        .flat_map(|a| single.iter().map(move |b| kron(a, b)))
        .collect()
}
