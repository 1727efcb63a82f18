//! Quasi-probability decompositions: per gate (standard PEC), per block
//! (Block-PEC) and mixed (hybrid).

mod analytic;
mod block;
mod plan;

pub use analytic::{analytic_pattern_gammas, Pattern};
pub use block::BlockCoefficients;
pub use plan::{MitigationPlan, Segment};

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Compat, GateOp};
use crate::error::Result;
use crate::noise::{invert_dephasing, Inversion, NoiseSpec, ZMixtureChannel};

/// Which decomposition to sample from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Std,
    Blk,
    Hybrid,
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "std" => Ok(Mode::Std),
            "blk" => Ok(Mode::Blk),
            "hybrid" => Ok(Mode::Hybrid),
            _ => Err(crate::Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

/// Policy knobs shared by every decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PecEngine {
    #[serde(default)]
    pub compat: Compat,
    #[serde(default)]
    pub inversion: Inversion,
}

impl PecEngine {
    pub fn new(compat: Compat, inversion: Inversion) -> Self {
        Self { compat, inversion }
    }

    /// Inverse of the noise following `g`, on `g`'s support.
    pub fn layer_distribution(&self, g: &GateOp, spec: &NoiseSpec) -> Result<ZMixtureChannel> {
        invert_dephasing(spec, &g.qubits, self.inversion)
    }

    pub fn gamma_std(&self, c: &Circuit) -> Result<f64> {
        c.iter()
            .map(|(g, s)| self.layer_distribution(g, s).map(|d| d.gamma()))
            .product()
    }

    pub fn gamma_blk(&self, c: &Circuit) -> Result<f64> {
        Ok(self.block_coefficients(c)?.gamma())
    }
}

pub fn layer_distribution(g: &GateOp, spec: &NoiseSpec) -> Result<ZMixtureChannel> {
    PecEngine::default().layer_distribution(g, spec)
}

pub fn gamma_std(c: &Circuit) -> Result<f64> {
    PecEngine::default().gamma_std(c)
}

pub fn gamma_blk(c: &Circuit) -> Result<f64> {
    PecEngine::default().gamma_blk(c)
}

pub fn block_coefficients(c: &Circuit) -> Result<BlockCoefficients> {
    PecEngine::default().block_coefficients(c)
}

pub fn naive_block_coefficients(c: &Circuit) -> Result<BlockCoefficients> {
    PecEngine::default().naive_block_coefficients(c)
}

pub fn fold_noisy_controls(b: &BlockCoefficients, spec: &NoiseSpec) -> Result<ZMixtureChannel> {
    PecEngine::default().fold_noisy_controls(b, spec)
}

pub fn hybrid_plan(c: &Circuit) -> Result<MitigationPlan> {
    PecEngine::default().plan(c, Mode::Hybrid)
}
