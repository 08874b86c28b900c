//! The antiperiodic IRF model: weights, transfer matrices, spectrum
//! certification, partition functions and the continuous Bethe ansatz.

pub mod bethe;
pub mod partition;
pub mod paths;
pub mod spectrum;
pub mod transfer;
pub mod weights;

pub use bethe::{continuous_bethe, ContinuousBetheReport};
pub use partition::{partition_function, permutation_residual};
pub use paths::{path_basis, PathState};
pub use spectrum::{certify_spectrum, chi0, SpectralCertificate, SpectrumOptions, SpectrumReport};
pub use transfer::{build_t_irf_paths, build_t_irf_sov, commutator_residual, dual_construction_check, generic_spectral, DualReport};
pub use weights::boltzmann_weight;

#[cfg(test)]
mod tests;
