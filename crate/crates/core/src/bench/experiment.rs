use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generators::{
    gen_option_payoff, gen_random_bp_with, gen_rbs_pyramid, gen_swap_network, gen_unary_loader, Angles, RandomLayout,
};
use super::{prng, PRNG_ALGORITHM};
use crate::circuit::{Circuit, Compat};
use crate::error::{Error, Result};
use crate::noise::NoiseSpec;
use crate::pec::{Mode, PecEngine};

pub const CSV_HEADER: &str = "family,n,depth,seed,gamma_std,gamma_blk,gain";

const MAX_BLOCK_QUBITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RandomBp,
    SwapNetwork,
    RbsPyramid,
    OptionPayoff,
    UnaryLoader,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interaction {
    #[default]
    Rzz,
    Rbs,
}

fn default_depth_factor() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: Family,
    /// Inclusive `[lo, hi]`.
    pub n_range: [usize; 2],
    #[serde(default = "default_depth_factor")]
    pub depth_factor: f64,
    #[serde(default)]
    pub interaction: Interaction,
    pub noise: NoiseSpec,
    pub seeds: Vec<u64>,
    pub output_path: PathBuf,
    /// Defaults to relaxed for families built from RBS gates.
    #[serde(default)]
    pub compat: Option<Compat>,
    #[serde(default)]
    pub layout: RandomLayout,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let [lo, hi] = self.n_range;
        let min = match self.family {
            Family::OptionPayoff => 1,
            _ => 2,
        };
        if lo < min || lo > hi {
            return Err(Error::InvalidArgument(format!("n_range [{lo}, {hi}]")));
        }
        if self.register_size(hi) > MAX_BLOCK_QUBITS {
            return Err(Error::GuardExceeded(format!(
                "{} qubits at n={hi} (limit {MAX_BLOCK_QUBITS})",
                self.register_size(hi)
            )));
        }
        if self.seeds.is_empty() {
            return Err(Error::InvalidArgument("no seeds".into()));
        }
        if !(self.depth_factor > 0.0 && self.depth_factor.is_finite()) {
            return Err(Error::InvalidArgument(format!("depth_factor {}", self.depth_factor)));
        }
        Ok(())
    }

    fn register_size(&self, n: usize) -> usize {
        match self.family {
            Family::OptionPayoff => n + 1,
            _ => n,
        }
    }

    pub fn effective_compat(&self) -> Compat {
        self.compat.unwrap_or(match (self.family, self.interaction) {
            (Family::RbsPyramid | Family::UnaryLoader, _) | (Family::SwapNetwork, Interaction::Rbs) => Compat::Relaxed,
            _ => Compat::Strict,
        })
    }

    pub fn build(&self, n: usize, seed: u64) -> Result<Circuit> {
        let c = match self.family {
            Family::RandomBp => gen_random_bp_with(n, seed, self.layout)?,
            Family::SwapNetwork => gen_swap_network(n, self.depth_factor, self.interaction, seed)?,
            Family::RbsPyramid => gen_rbs_pyramid(n, Angles::Seed(seed))?,
            Family::OptionPayoff => gen_option_payoff(n, Angles::Seed(seed))?,
            Family::UnaryLoader => {
                let mut rng = prng(seed);
                let x: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
                gen_unary_loader(&x)?
            }
        };
        Ok(c.with_noise(self.noise))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GainRow {
    pub family: Family,
    pub n: usize,
    /// As-soon-as-possible layer count of the generated circuit.
    pub depth: usize,
    pub seed: u64,
    pub gamma_std: f64,
    pub gamma_blk: f64,
    pub gain: f64,
}

fn circuit_depth(c: &Circuit) -> usize {
    let mut front = vec![0usize; c.n()];
    for g in c.ops() {
        let l = g.qubits.iter().map(|&q| front[q]).max().unwrap_or(0) + 1;
        for &q in &g.qubits {
            front[q] = l;
        }
    }
    front.into_iter().max().unwrap_or(0)
}

/// One row per `(n, seed)`, in that order. `gamma_blk` is the hybrid plan
/// total, which equals the single-block value on fully compatible circuits.
pub fn run_gain_experiment(cfg: &ExperimentConfig) -> Result<Vec<GainRow>> {
    cfg.validate()?;
    let engine = PecEngine::new(cfg.effective_compat(), Default::default());
    let tasks: Vec<(usize, u64)> = (cfg.n_range[0]..=cfg.n_range[1])
        .flat_map(|n| cfg.seeds.iter().map(move |&s| (n, s)))
        .collect();
    tasks
        .into_par_iter()
        .map(|(n, seed)| {
            let c = cfg.build(n, seed)?;
            let gamma_std = engine.gamma_std(&c)?;
            let gamma_blk = engine.plan(&c, Mode::Hybrid)?.total_gamma;
            Ok(GainRow {
                family: cfg.family,
                n,
                depth: circuit_depth(&c),
                seed,
                gamma_std,
                gamma_blk,
                gain: (gamma_std / gamma_blk).powi(2),
            })
        })
        .collect()
}

/// Arithmetic mean of the gain over seeds, per `n`.
pub fn mean_gain_by_n(rows: &[GainRow]) -> Vec<(usize, f64)> {
    let mut acc: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for r in rows {
        let e = acc.entry(r.n).or_default();
        e.0 += r.gain;
        e.1 += 1;
    }
    acc.into_iter().map(|(n, (s, k))| (n, s / k as f64)).collect()
}

pub fn write_gain_csv<W: Write>(rows: &[GainRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_error)?;
    }
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(',')).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_gain_csv(text: &str) -> Result<Vec<GainRow>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(csv_error)?.iter().collect::<Vec<_>>().join(",");
    if header != CSV_HEADER {
        return Err(Error::parse(
            1,
            format!("expected header `{CSV_HEADER}`, got `{header}`"),
        ));
    }
    r.deserialize().map(|row| row.map_err(csv_error)).collect()
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io.to_string()),
        kind => Error::parse(line, format!("{kind:?}")),
    }
}

/// Sidecar path: `<output_path>.meta.json`.
pub fn meta_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

/// Writes the CSV to `cfg.output_path` and a metadata sidecar next to it.
pub fn write_experiment(cfg: &ExperimentConfig, rows: &[GainRow]) -> Result<()> {
    let mut buf = Vec::new();
    write_gain_csv(rows, &mut buf)?;
    fs::write(&cfg.output_path, buf)?;
    let meta = serde_json::json!({
        "config": cfg,
        "prng": PRNG_ALGORITHM,
        "compat": cfg.effective_compat(),
        "placement": "uniform distinct qubit tuples, not restricted to neighbors",
        "aggregation": "arithmetic mean over seeds",
        "mean_gain_by_n": mean_gain_by_n(rows),
        "version": env!("CARGO_PKG_VERSION"),
    });
    fs::write(
        meta_path(&cfg.output_path),
        serde_json::to_vec_pretty(&meta).expect("json value"),
    )?;
    Ok(())
}
