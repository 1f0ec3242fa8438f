//! Hybrid analog/digital precoding for sub-array mmWave massive MIMO
//! transmitters.
//!
//! Each of the `N` RF chains drives its own block of `M` phase-shifted
//! antennas, so the precoder is `P = A D` with a block-diagonal
//! constant-modulus `A` and a real diagonal `D`. [`precoder`] designs `P` one
//! sub-array at a time by successive interference cancellation; [`capacity`]
//! evaluates the resulting rate; [`channel`] samples Saleh-Valenzuela
//! channels; [`sim`] runs seeded Monte Carlo SNR sweeps.

pub mod capacity;
pub mod channel;
pub mod error;
pub mod io;
pub mod linalg;
pub mod precoder;
pub mod selfcheck;
pub mod sim;

pub use capacity::{capacity_direct, capacity_increment, capacity_trace, CapacityTrace};
pub use channel::{
    sample_channel, sample_paths, synthesize_channel, ula_steering, ArrayConfig, ChannelRealization, Normalization,
    PathParams,
};
pub use error::{Error, Result};
pub use linalg::{Complex, ComplexMatrix, EigenPair};
pub use precoder::{
    analog_phase_precoder, design, extract_submatrix, optimal_greedy_precoder, quantize_to_hybrid,
    sic_hybrid_precoder, update_g, HybridPrecoder, Precoder, SchemeId,
};
pub use sim::{compare, run_sweep, run_trial, ComparisonReport, SimConfig, SweepResult};
