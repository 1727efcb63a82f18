#![allow(dead_code)]

use std::f64::consts::TAU;

use blockpec::circuit::{Circuit, GateKind, GateOp};
use blockpec::noise::NoiseSpec;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    blockpec::bench::prng(seed)
}

fn kind(i: usize, theta: f64) -> GateKind {
    match i {
        0 => GateKind::X,
        1 => GateKind::Z,
        2 => GateKind::Cnot,
        3 => GateKind::Rz(theta),
        4 => GateKind::Rzz(theta),
        5 => GateKind::Cz,
        6 => GateKind::Swap,
        7 => GateKind::S,
        8 => GateKind::T,
        _ => GateKind::H,
    }
}

fn random_gate(rng: &mut ChaCha8Rng, n: usize, kinds: usize) -> GateOp {
    loop {
        let k = kind(rng.random_range(0..kinds), rng.random_range(0.0..TAU));
        if k.arity() > n {
            continue;
        }
        let qubits = rand::seq::index::sample(rng, n, k.arity()).into_vec();
        return GateOp::new(k, qubits).unwrap();
    }
}

/// Random Pauli-Z compatible circuit with `d` gates.
pub fn compatible_circuit(rng: &mut ChaCha8Rng, n: usize, d: usize, noise: NoiseSpec) -> Circuit {
    let ops: Vec<_> = (0..d).map(|_| random_gate(rng, n, 9)).collect();
    Circuit::from_ops(n, ops, noise).unwrap()
}

/// Random circuit that may contain Hadamards.
pub fn mixed_circuit(rng: &mut ChaCha8Rng, n: usize, d: usize, noise: NoiseSpec) -> Circuit {
    let ops: Vec<_> = (0..d).map(|_| random_gate(rng, n, 10)).collect();
    Circuit::from_ops(n, ops, noise).unwrap()
}

pub fn random_noise(rng: &mut ChaCha8Rng, p: f64) -> NoiseSpec {
    if rng.random_bool(0.5) {
        NoiseSpec::uncorrelated(p).unwrap()
    } else {
        NoiseSpec::correlated(p).unwrap()
    }
}

/// Hadamards on every qubit, so diagonal observables see coherences.
pub fn with_hadamard_frame(c: &Circuit) -> Circuit {
    hadamard_frame(c, c.noise().first().copied().unwrap_or_default())
}

pub fn hadamard_frame(c: &Circuit, frame_noise: NoiseSpec) -> Circuit {
    let n = c.n();
    let mut out = Circuit::new(n).unwrap();
    for q in 0..n {
        out.push_with_noise(GateOp::one(GateKind::H, q), frame_noise).unwrap();
    }
    for (g, s) in c.iter() {
        out.push_with_noise(g.clone(), *s).unwrap();
    }
    for q in 0..n {
        out.push_with_noise(GateOp::one(GateKind::H, q), frame_noise).unwrap();
    }
    out
}
