//! Empirical model reduction: coarse-grain simulated traces, estimate a
//! conditional Markov chain, and realize it as jump and drive (S, L, H)
//! models.

pub mod binning;
pub mod error;
pub mod markov;
pub mod model;
pub mod reduced;

pub use binning::{coarse_grain, padded_size, BinningSpec, CoarseGrained, Sequence};
pub use error::{ReductionError, Result};
pub use markov::{estimate_markov, to_rate_matrix, ConditionEstimate, MarkovChainEstimate, RateMatrix};
pub use model::{write_counts, ReducedMetadata, ReducedModel};
pub use reduced::{compose_reduced, drift_operators, drift_pairs, drive_slh, jump_slh, output_slh, suggest_alpha, OutputBlock, STATE_MODE};
