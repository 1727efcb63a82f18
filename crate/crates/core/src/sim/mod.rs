//! Exact reference simulation and the Monte Carlo PEC estimator.
//!
//! Registers start in `|0…0⟩`. Noise acts only on the qubits a gate touches.

mod estimate;
mod exact;
mod kernel;
mod observable;

pub use estimate::{pec_estimate, pec_estimate_with, required_samples, EstimateOptions, EstimatorReport};
pub use exact::{exact_mitigated_expectation, exact_mitigated_expectation_with, ideal_expectation, noisy_expectation};
pub use kernel::{DensityMatrix, StateVector};
pub use observable::{DenseObservable, Observable};

use crate::circuit::{unitary_of, CMatrix, Circuit};
use crate::error::{Error, Result};
use crate::noise::{make_dephasing, make_impure, NoiseKind, PauliChannel1, ZMixtureChannel};

/// Largest register simulated with a density matrix.
pub const MAX_DENSITY_QUBITS: usize = 10;
/// Largest register simulated with a state vector.
pub const MAX_STATE_QUBITS: usize = 14;

enum NoiseOp {
    None,
    Dephasing { channel: ZMixtureChannel, eig: Vec<f64> },
    Pauli(Vec<(usize, PauliChannel1)>),
}

struct CompiledGate {
    qubits: Vec<usize>,
    u: CMatrix,
    u_conj: CMatrix,
    noise: NoiseOp,
}

fn compile(c: &Circuit) -> Result<Vec<CompiledGate>> {
    c.iter()
        .map(|(g, spec)| {
            let u = unitary_of(g)?;
            let u_conj = CMatrix::from_rows(u.dim(), u.data().iter().map(|z| z.conj()).collect());
            let noise = match spec.kind() {
                _ if spec.is_noiseless() => NoiseOp::None,
                NoiseKind::Impure => {
                    let (fwd, _) = make_impure(spec.p(), spec.q().unwrap_or(0.0))?;
                    NoiseOp::Pauli(g.qubits.iter().map(|&q| (q, fwd)).collect())
                }
                _ => {
                    let channel = make_dephasing(spec, &g.qubits)?;
                    let eig = channel.eigenvalues();
                    NoiseOp::Dephasing { channel, eig }
                }
            };
            Ok(CompiledGate {
                qubits: g.qubits.clone(),
                u,
                u_conj,
                noise,
            })
        })
        .collect()
}

impl CompiledGate {
    fn apply_density(&self, rho: &mut DensityMatrix) {
        rho.apply_unitary(&self.qubits, &self.u, &self.u_conj);
        match &self.noise {
            NoiseOp::None => {}
            NoiseOp::Dephasing { channel, eig } => rho.scale_by_pattern(eig, |m| channel.local_pattern(m)),
            NoiseOp::Pauli(chs) => {
                for (q, ch) in chs {
                    rho.apply_pauli_channel(*q, ch);
                }
            }
        }
    }
}

fn check_density(n: usize) -> Result<()> {
    if n > MAX_DENSITY_QUBITS {
        return Err(Error::GuardExceeded(format!(
            "density matrix on {n} qubits (limit {MAX_DENSITY_QUBITS})"
        )));
    }
    Ok(())
}

fn check_state(n: usize) -> Result<()> {
    if n > MAX_STATE_QUBITS {
        return Err(Error::GuardExceeded(format!(
            "state vector on {n} qubits (limit {MAX_STATE_QUBITS})"
        )));
    }
    Ok(())
}

fn check_observable(c: &Circuit, obs: &Observable) -> Result<()> {
    if obs.n() != c.n() {
        return Err(Error::InvalidArgument(format!(
            "observable on {} qubits for a {}-qubit circuit",
            obs.n(),
            c.n()
        )));
    }
    Ok(())
}
