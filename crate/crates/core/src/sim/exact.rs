use super::{
    check_density, check_observable, check_state, compile, CompiledGate, DensityMatrix, Observable, StateVector,
};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pec::{Mode, PecEngine};

const MAX_TUPLES_LOG2: u32 = 16;

/// `⟨O⟩` on the noiseless circuit.
pub fn ideal_expectation(c: &Circuit, obs: &Observable) -> Result<f64> {
    check_state(c.n())?;
    check_observable(c, obs)?;
    let mut psi = StateVector::zero_state(c.n());
    for g in compile(&c.clone().with_noise(Default::default()))? {
        psi.apply_unitary(&g.qubits, &g.u);
    }
    Ok(obs.expect_state(&psi))
}

/// `⟨O⟩` with every gate followed by its noise channel.
pub fn noisy_expectation(c: &Circuit, obs: &Observable) -> Result<f64> {
    check_density(c.n())?;
    check_observable(c, obs)?;
    let mut rho = DensityMatrix::zero_state(c.n());
    for g in compile(c)? {
        g.apply_density(&mut rho);
    }
    Ok(obs.expect_density(&rho))
}

pub fn exact_mitigated_expectation(c: &Circuit, obs: &Observable, mode: Mode) -> Result<f64> {
    exact_mitigated_expectation_with(&PecEngine::default(), c, obs, mode)
}

/// The full quasi-probability sum. Standard PEC enumerates every tuple of
/// per-gate controls; block modes apply each segment's signed control layer
/// to the density matrix directly.
pub fn exact_mitigated_expectation_with(engine: &PecEngine, c: &Circuit, obs: &Observable, mode: Mode) -> Result<f64> {
    check_density(c.n())?;
    check_observable(c, obs)?;
    let gates = compile(c)?;
    match mode {
        Mode::Std => {
            let tuples: u32 = c.ops().iter().map(|g| g.arity() as u32).sum();
            if tuples > MAX_TUPLES_LOG2 {
                return Err(Error::GuardExceeded(format!(
                    "2^{tuples} control tuples (limit 2^{MAX_TUPLES_LOG2})"
                )));
            }
            let layers = c
                .iter()
                .map(|(g, s)| engine.layer_distribution(g, s).map(|d| d.terms().collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            Ok(dfs(&gates, &layers, 0, DensityMatrix::zero_state(c.n()), 1.0, obs))
        }
        Mode::Blk | Mode::Hybrid => {
            let plan = engine.plan(c, mode)?;
            let mut rho = DensityMatrix::zero_state(c.n());
            for seg in &plan.segments {
                for g in &gates[seg.range()] {
                    g.apply_density(&mut rho);
                }
                let controls = seg.controls();
                let eig = controls.eigenvalues();
                rho.scale_by_pattern(&eig, |m| controls.local_pattern(m));
            }
            Ok(obs.expect_density(&rho))
        }
    }
}

fn dfs(
    gates: &[CompiledGate],
    layers: &[Vec<(u64, f64)>],
    l: usize,
    mut rho: DensityMatrix,
    weight: f64,
    obs: &Observable,
) -> f64 {
    if l == gates.len() {
        return weight * obs.expect_density(&rho);
    }
    gates[l].apply_density(&mut rho);
    let mut total = 0.0;
    for &(v, a) in &layers[l] {
        let mut branch = rho.clone();
        branch.apply_z(v);
        total += dfs(gates, layers, l + 1, branch, weight * a, obs);
    }
    total
}
