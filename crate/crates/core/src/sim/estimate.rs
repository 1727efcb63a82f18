use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    check_observable, check_state, compile, CompiledGate, DensityMatrix, NoiseOp, Observable, StateVector,
    MAX_DENSITY_QUBITS,
};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::noise::{PauliChannel1, ZMixtureChannel};
use crate::pec::{Mode, PecEngine};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateOptions {
    pub mode: Mode,
    pub n_samples: usize,
    pub seed: u64,
    /// Single-shot outcomes averaged over this many shots per sample;
    /// `None` uses the exact expectation of each sampled circuit.
    pub shots: Option<u32>,
    pub engine: PecEngine,
}

impl EstimateOptions {
    pub fn new(mode: Mode, n_samples: usize, seed: u64) -> Self {
        Self {
            mode,
            n_samples,
            seed,
            shots: None,
            engine: PecEngine::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EstimatorReport {
    pub mean: f64,
    pub sample_variance: f64,
    pub n_samples: usize,
    pub gamma_used: f64,
    pub mode: Mode,
    pub seed: u64,
}

pub fn pec_estimate(c: &Circuit, obs: &Observable, mode: Mode, n_samples: usize, seed: u64) -> Result<EstimatorReport> {
    pec_estimate_with(c, obs, &EstimateOptions::new(mode, n_samples, seed))
}

struct Sampler {
    masks: Vec<u64>,
    negative: Vec<bool>,
    cdf: Vec<f64>,
}

impl Sampler {
    /// Draws with probability `|c| / γ`.
    fn new(ch: &ZMixtureChannel) -> Self {
        let terms: Vec<(u64, f64)> = ch.terms().collect();
        let gamma: f64 = terms.iter().map(|t| t.1.abs()).sum();
        let mut acc = 0.0;
        let cdf = terms
            .iter()
            .map(|t| {
                acc += t.1.abs() / gamma;
                acc
            })
            .collect();
        Self {
            masks: terms.iter().map(|t| t.0).collect(),
            negative: terms.iter().map(|t| t.1 < 0.0).collect(),
            cdf,
        }
    }

    fn draw(&self, u: f64) -> (u64, bool) {
        let i = self.cdf.partition_point(|&c| c <= u).min(self.masks.len() - 1);
        (self.masks[i], self.negative[i])
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn draw_outcome(outcomes: &[(f64, f64)], shots: u32, rng: &mut ChaCha8Rng) -> f64 {
    let mut sum = 0.0;
    for _ in 0..shots {
        let u = uniform(rng);
        let mut acc = 0.0;
        let mut value = outcomes.last().map(|o| o.0).unwrap_or(0.0);
        for &(v, p) in outcomes {
            acc += p;
            if u < acc {
                value = v;
                break;
            }
        }
        sum += value;
    }
    sum / shots as f64
}

/// Sums in a fixed tree so the result does not depend on scheduling.
fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 16 {
        x.iter().sum()
    } else {
        let (a, b) = x.split_at(x.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

fn draw_pauli(ch: &PauliChannel1, u: f64) -> u8 {
    let w = [ch.i, ch.x, ch.y, ch.z];
    let mut acc = 0.0;
    for (k, p) in w.iter().enumerate() {
        acc += p;
        if u < acc {
            return k as u8;
        }
    }
    0
}

/// Monte Carlo PEC: each sample draws one control layer per plan segment,
/// runs the noisy circuit with those controls, and contributes
/// `γ · sign · outcome`. Sample `i` uses ChaCha8 stream `i` of `seed`.
///
/// Registers up to ten qubits are evolved as density matrices; larger ones
/// (up to fourteen) as state-vector trajectories with sampled noise.
pub fn pec_estimate_with(c: &Circuit, obs: &Observable, opts: &EstimateOptions) -> Result<EstimatorReport> {
    if opts.n_samples == 0 {
        return Err(Error::InvalidSamples(0));
    }
    if opts.shots == Some(0) {
        return Err(Error::InvalidArgument("shots must be positive".into()));
    }
    check_state(c.n())?;
    check_observable(c, obs)?;
    let plan = opts.engine.plan(c, opts.mode)?;
    let gates = compile(c)?;
    let segments: Vec<(std::ops::Range<usize>, Sampler)> = plan
        .segments
        .iter()
        .map(|s| (s.range(), Sampler::new(&s.controls())))
        .collect();
    let gamma = plan.total_gamma;
    let trajectories = c.n() > MAX_DENSITY_QUBITS;
    let noise_samplers: Vec<Option<Sampler>> = gates
        .iter()
        .map(|g| match &g.noise {
            NoiseOp::Dephasing { channel, .. } if trajectories => Some(Sampler::new(channel)),
            _ => None,
        })
        .collect();

    let sample = |i: usize| -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(i as u64);
        let mut negative = false;
        let controls: Vec<u64> = segments
            .iter()
            .map(|(_, s)| {
                let (m, neg) = s.draw(uniform(&mut rng));
                negative ^= neg;
                m
            })
            .collect();
        let outcome = if trajectories {
            let mut psi = StateVector::zero_state(c.n());
            for ((range, _), &mask) in segments.iter().zip(&controls) {
                for l in range.clone() {
                    apply_trajectory_gate(&gates[l], noise_samplers[l].as_ref(), &mut psi, &mut rng);
                }
                psi.apply_z(mask);
            }
            match opts.shots {
                None => obs.expect_state(&psi),
                Some(k) => draw_outcome(&obs.outcomes_state(&psi), k, &mut rng),
            }
        } else {
            let mut rho = DensityMatrix::zero_state(c.n());
            for ((range, _), &mask) in segments.iter().zip(&controls) {
                for g in &gates[range.clone()] {
                    g.apply_density(&mut rho);
                }
                rho.apply_z(mask);
            }
            match opts.shots {
                None => obs.expect_density(&rho),
                Some(k) => draw_outcome(&obs.outcomes_density(&rho), k, &mut rng),
            }
        };
        let signed = if negative { -outcome } else { outcome };
        gamma * signed
    };

    // gates not covered by any segment only happen for an empty plan
    let values: Vec<f64> = if plan.segments.is_empty() && !gates.is_empty() {
        return Err(Error::InvalidArgument("plan does not cover the circuit".into()));
    } else {
        (0..opts.n_samples).into_par_iter().map(sample).collect()
    };
    let n = values.len();
    let mean = pairwise_sum(&values) / n as f64;
    let sample_variance = if n > 1 {
        let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
        pairwise_sum(&sq) / (n - 1) as f64
    } else {
        0.0
    };
    Ok(EstimatorReport {
        mean,
        sample_variance,
        n_samples: n,
        gamma_used: gamma,
        mode: opts.mode,
        seed: opts.seed,
    })
}

fn apply_trajectory_gate(g: &CompiledGate, noise: Option<&Sampler>, psi: &mut StateVector, rng: &mut ChaCha8Rng) {
    psi.apply_unitary(&g.qubits, &g.u);
    match (&g.noise, noise) {
        (NoiseOp::Dephasing { .. }, Some(s)) => psi.apply_z(s.draw(uniform(rng)).0),
        (NoiseOp::Pauli(chs), _) => {
            for (q, ch) in chs {
                let p = draw_pauli(ch, uniform(rng));
                psi.apply_pauli(*q, p);
            }
        }
        _ => {}
    }
}

/// Hoeffding budget `⌈γ²/(2δ²) · ln(2/ε)⌉`.
pub fn required_samples(gamma: f64, delta: f64, epsilon: f64) -> Result<u64> {
    if !(gamma >= 1.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("gamma = {gamma} must be >= 1")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidArgument(format!("delta = {delta} must be > 0")));
    }
    if !(epsilon > 0.0 && epsilon <= 2.0) {
        return Err(Error::InvalidArgument(format!("epsilon = {epsilon} outside (0, 2]")));
    }
    let s = (gamma * gamma / (2.0 * delta * delta) * (2.0 / epsilon).ln()).ceil();
    if s > u64::MAX as f64 {
        return Err(Error::InvalidArgument("sample budget overflows".into()));
    }
    Ok(s.max(0.0) as u64)
}
