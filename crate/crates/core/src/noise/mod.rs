//! Dephasing noise channels as mixtures of Z-strings, and their inverses.

mod impure;
mod invert;
mod zmix;

pub use impure::{make_impure, PauliChannel1};
pub use invert::{gamma_of, invert_dephasing, invert_z_mixture, make_dephasing, taylor_inverse, Inversion};
pub use zmix::{walsh_hadamard, ZMixtureChannel};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    Uncorrelated,
    Correlated,
    Impure,
    None,
}

/// Noise attached to a gate. Serialized as `{"kind":..,"p":..,"q":..}`.
///
/// `p = 0.5` is accepted here so that the singular channel is reported by
/// inversion rather than silently clamped.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNoiseSpec", into = "RawNoiseSpec")]
pub struct NoiseSpec {
    kind: NoiseKind,
    p: f64,
    q: Option<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoiseSpec {
    kind: NoiseKind,
    #[serde(default)]
    p: f64,
    #[serde(default)]
    q: Option<f64>,
}

impl TryFrom<RawNoiseSpec> for NoiseSpec {
    type Error = Error;
    fn try_from(r: RawNoiseSpec) -> Result<Self> {
        NoiseSpec::new(r.kind, r.p, r.q)
    }
}

impl From<NoiseSpec> for RawNoiseSpec {
    fn from(s: NoiseSpec) -> Self {
        RawNoiseSpec {
            kind: s.kind,
            p: s.p,
            q: s.q,
        }
    }
}

impl NoiseSpec {
    pub fn new(kind: NoiseKind, p: f64, q: Option<f64>) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::InvalidArgument(format!("p = {p} outside [0, 0.5]")));
        }
        match (kind, q) {
            (NoiseKind::Impure, Some(q)) if q >= 0.0 && !q.is_nan() => {}
            (NoiseKind::Impure, _) => return Err(Error::InvalidArgument("impure noise needs q >= 0".into())),
            (_, Some(_)) => return Err(Error::InvalidArgument("q is only meaningful for impure noise".into())),
            _ => {}
        }
        let p = if kind == NoiseKind::None { 0.0 } else { p };
        Ok(Self { kind, p, q })
    }

    pub fn none() -> Self {
        Self {
            kind: NoiseKind::None,
            p: 0.0,
            q: None,
        }
    }

    pub fn uncorrelated(p: f64) -> Result<Self> {
        Self::new(NoiseKind::Uncorrelated, p, None)
    }

    pub fn correlated(p: f64) -> Result<Self> {
        Self::new(NoiseKind::Correlated, p, None)
    }

    /// `q = f64::INFINITY` is the pure dephasing limit.
    pub fn impure(p: f64, q: f64) -> Result<Self> {
        Self::new(NoiseKind::Impure, p, Some(q))
    }

    pub fn kind(&self) -> NoiseKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> Option<f64> {
        self.q
    }

    pub fn is_noiseless(&self) -> bool {
        self.kind == NoiseKind::None || self.p == 0.0
    }
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self::none()
    }
}
