//! Correlation measures of two-qubit states: concurrence, mutual
//! information, the Renyi-2 classical correlation obtained from the channel
//! representation of the state, the resulting discord, and a von Neumann
//! discord oracle based on explicit measurement optimization.
//!
//! All inputs are product-basis states; qubit B is the measured side.

mod channel;
mod discord;
mod measures;

#[cfg(test)]
pub(crate) mod fixtures;

pub use channel::{
    beta_blocks, extract_channel, l_matrix, pauli_images, purify, BetaBlocks, ChannelImages,
    Extraction, LMatrix, Purification, L_IMAG_TOL, RANK_TOLERANCE, RECONSTRUCTION_TOL,
};
pub use discord::{
    classical_correlation_c2, classical_correlation_c2_with, quantum_discord, vn_classical_correlation,
    vn_discord, C2_PREFACTOR, C2_PREFACTOR_FOUR_OVER_D, DEFAULT_GRID_N, DISCORD_CLAMP, REFINEMENT_STEPS,
};
pub use measures::{concurrence, mutual_information, spin_flip, spin_flip_roots};
