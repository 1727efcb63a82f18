use std::f64::consts::TAU;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{prng, Interaction};
use crate::circuit::{Circuit, GateKind, GateOp};
use crate::error::{Error, Result};

/// Source of rotation angles for a generator.
#[derive(Clone, Debug, PartialEq)]
pub enum Angles {
    /// Uniform in `[0, 2π)` from the given seed.
    Seed(u64),
    /// Used in order; must be long enough.
    List(Vec<f64>),
}

impl Angles {
    fn take(self, count: usize) -> Result<Vec<f64>> {
        match self {
            Angles::Seed(s) => {
                let mut rng = prng(s);
                Ok((0..count).map(|_| rng.random_range(0.0..TAU)).collect())
            }
            Angles::List(v) if v.len() >= count => Ok(v[..count].to_vec()),
            Angles::List(v) => Err(Error::InvalidArgument(format!(
                "{count} angles needed, {} given",
                v.len()
            ))),
        }
    }
}

/// How random bias-preserving circuits are laid out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomLayout {
    /// `n + 1` layers, each packed with gates on disjoint random qubits.
    #[default]
    Layered,
    /// Exactly `n + 1` gates.
    GateCount,
}

const BP_KINDS: usize = 6;

fn bp_kind(i: usize, theta: f64) -> GateKind {
    match i {
        0 => GateKind::X,
        1 => GateKind::Z,
        2 => GateKind::Cnot,
        3 => GateKind::Rz(theta),
        4 => GateKind::Rzz(theta),
        _ => GateKind::Cz,
    }
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("need at least {min} qubits, got {n}")));
    }
    Ok(())
}

pub fn gen_random_bp(n: usize, seed: u64) -> Result<Circuit> {
    gen_random_bp_with(n, seed, RandomLayout::default())
}

/// Random circuit over `{X, Z, CNOT, RZ, RZZ, CZ}` with uniform kinds,
/// uniform distinct qubits and angles uniform in `[0, 2π)`.
pub fn gen_random_bp_with(n: usize, seed: u64, layout: RandomLayout) -> Result<Circuit> {
    check_n(n, 2)?;
    let mut rng = prng(seed);
    let mut c = Circuit::new(n)?;
    match layout {
        RandomLayout::GateCount => {
            for _ in 0..=n {
                let kind = bp_kind(rng.random_range(0..BP_KINDS), rng.random_range(0.0..TAU));
                let qubits = rand::seq::index::sample(&mut rng, n, kind.arity()).into_vec();
                c.push(GateOp::new(kind, qubits)?)?;
            }
        }
        RandomLayout::Layered => {
            for _ in 0..=n {
                let mut free: Vec<usize> = (0..n).collect();
                free.shuffle(&mut rng);
                while !free.is_empty() {
                    let kind = bp_kind(rng.random_range(0..BP_KINDS), rng.random_range(0.0..TAU));
                    if kind.arity() > free.len() {
                        continue;
                    }
                    let qubits = free.split_off(free.len() - kind.arity());
                    c.push(GateOp::new(kind, qubits)?)?;
                }
            }
        }
    }
    Ok(c)
}

fn push_rbs(c: &mut Circuit, a: usize, b: usize, theta: f64) -> Result<()> {
    c.push(GateOp::two(GateKind::Cnot, a, b))?;
    c.push(GateOp::two(GateKind::Xcz(theta), a, b))?;
    c.push(GateOp::two(GateKind::Cnot, a, b))
}

fn push_swap(c: &mut Circuit, a: usize, b: usize) -> Result<()> {
    c.push(GateOp::two(GateKind::Cnot, a, b))?;
    c.push(GateOp::two(GateKind::Cnot, b, a))?;
    c.push(GateOp::two(GateKind::Cnot, a, b))
}

/// Brick-pattern network of `round(depth_factor · n)` layers alternating
/// even and odd neighbor pairs; each pair gets the interaction then a SWAP
/// compiled to three CNOTs. RBS is compiled as `CNOT · XCZ · CNOT`.
pub fn gen_swap_network(n: usize, depth_factor: f64, interaction: Interaction, seed: u64) -> Result<Circuit> {
    check_n(n, 2)?;
    if !(depth_factor > 0.0 && depth_factor.is_finite()) {
        return Err(Error::InvalidArgument(format!("depth factor {depth_factor}")));
    }
    let layers = (depth_factor * n as f64).round() as usize;
    let mut rng = prng(seed);
    let mut c = Circuit::new(n)?;
    for l in 0..layers {
        for a in (l % 2..n - 1).step_by(2) {
            let theta = rng.random_range(0.0..TAU);
            match interaction {
                Interaction::Rzz => c.push(GateOp::two(GateKind::Rzz(theta), a, a + 1))?,
                Interaction::Rbs => push_rbs(&mut c, a, a + 1, theta)?,
            }
            push_swap(&mut c, a, a + 1)?;
        }
    }
    Ok(c)
}

/// `X` on qubit 0, then `n(n−1)/2` RBS gates along descending diagonals:
/// for `top` in `0..n−1`, pairs `(j, j+1)` for `j = top, …, 0`.
pub fn gen_rbs_pyramid(n: usize, angles: Angles) -> Result<Circuit> {
    check_n(n, 2)?;
    let thetas = angles.take(n * (n - 1) / 2)?;
    let mut c = Circuit::new(n)?;
    c.push(GateOp::one(GateKind::X, 0))?;
    let mut it = thetas.into_iter();
    for top in 0..n - 1 {
        for j in (0..=top).rev() {
            push_rbs(&mut c, j, j + 1, it.next().expect("angle count"))?;
        }
    }
    Ok(c)
}

/// `Y(θ₀)` on the ancilla (qubit `n`), then `CY(θ_j)` from register qubit
/// `j−1` to the ancilla for `j = 1..=n`. With `Angles::Seed` the angles are
/// uniform in `[0, π)`.
pub fn gen_option_payoff(n: usize, angles: Angles) -> Result<Circuit> {
    check_n(n, 1)?;
    let thetas = match angles {
        Angles::Seed(s) => {
            let mut rng = prng(s);
            (0..=n).map(|_| rng.random_range(0.0..std::f64::consts::PI)).collect()
        }
        list => list.take(n + 1)?,
    };
    let mut c = Circuit::new(n + 1)?;
    c.push(GateOp::one(GateKind::Ry(thetas[0]), n))?;
    for (j, &theta) in thetas.iter().enumerate().skip(1) {
        c.push(GateOp::two(GateKind::Cry(theta), j - 1, n))?;
    }
    Ok(c)
}

/// Angles of the unary loader for `x` (normalized internally).
pub fn unary_loader_angles(x: &[f64]) -> Result<Vec<f64>> {
    let d = x.len();
    if d < 2 {
        return Err(Error::InvalidArgument("loader needs dimension >= 2".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite entry".into()));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::DegenerateVector("zero vector".into()));
    }
    let x: Vec<f64> = x.iter().map(|v| v / norm).collect();
    let mut angles = Vec::with_capacity(d - 1);
    for k in 0..d - 1 {
        // remaining weight equals the product of the previous sines
        let rest = x[k..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if rest < 1e-12 {
            if x[k..].iter().any(|&v| v != 0.0) {
                return Err(Error::DegenerateVector(format!(
                    "remaining weight {rest:e} at component {k}"
                )));
            }
            angles.push(0.0);
            continue;
        }
        angles.push((x[k] / rest).clamp(-1.0, 1.0).acos());
    }
    if x[d - 1] < 0.0 {
        let last = angles.last_mut().expect("d >= 2");
        *last = -*last;
    }
    Ok(angles)
}

/// `X` on qubit 0 then `RBS(θ_j)` on `(j, j+1)`; the amplitude of the state
/// with only qubit `j` excited is `x_j / ‖x‖`.
pub fn gen_unary_loader(x: &[f64]) -> Result<Circuit> {
    let angles = unary_loader_angles(x)?;
    let mut c = Circuit::new(x.len())?;
    c.push(GateOp::one(GateKind::X, 0))?;
    for (j, t) in angles.into_iter().enumerate() {
        c.push(GateOp::two(GateKind::Rbs(t), j, j + 1))?;
    }
    Ok(c)
}
