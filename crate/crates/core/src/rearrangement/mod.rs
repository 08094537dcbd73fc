//! Band parameter, proof kernels, and the rearrangement-lemma profile checks.

pub mod band;
pub mod caps;
pub mod fuzz;
pub mod kernel;
pub mod profile;

pub use band::{
    band_threshold, normalized_mass, power_difference, solve_band_parameter, BandChoice, BandData, BandPolicy,
};
pub use caps::{cap_coefficient, kvw_constant, kvw_epsilon, CapKind};
pub use fuzz::{run_fuzz, trial_seed, FuzzConfig, FuzzSummary};
pub use kernel::{kernel_residual, kernel_scan, kernel_scan_range, KernelKind, KernelPolynomial, KernelScan};
pub use profile::{lemma_chain_check, sample_admissible_profile, LemmaKind, Profile};
