//! Circuit families, gain experiments and model fits.

mod experiment;
mod fit;
mod generators;

pub use experiment::{
    mean_gain_by_n, meta_path, read_gain_csv, run_gain_experiment, write_experiment, write_gain_csv, ExperimentConfig,
    Family, GainRow, Interaction, CSV_HEADER,
};
pub use fit::{fit_models, FitModel, FitResult};
pub use generators::{
    gen_option_payoff, gen_random_bp, gen_random_bp_with, gen_rbs_pyramid, gen_swap_network, gen_unary_loader,
    unary_loader_angles, Angles, RandomLayout,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifier of the generator PRNG, recorded in experiment metadata.
pub const PRNG_ALGORITHM: &str = "chacha8-v1";

/// Deterministic generator stream for `seed`.
pub fn prng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
