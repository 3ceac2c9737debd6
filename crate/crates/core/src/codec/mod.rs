//! Nonlinear turbo codes with controlled ones density, their iterative
//! decoder, and receiver 1's successive decoder.

pub mod bcjr;
pub mod interleaver;
pub mod labels;
pub mod sim;
pub mod successive;
pub mod trellis;
pub mod turbo;

pub use bcjr::{bcjr_decode, z_symbol_likelihoods, BcjrOutput, TernarySymbol};
pub use interleaver::Interleaver;
pub use labels::{format_label_table, parse_label_table, LabelTable};
pub use sim::{ber_experiment, simulate_frame, SimParams, SimReport, SimTally};
pub use successive::{successive_decode_rx1, Rx1Mode, Rx1Output};
pub use trellis::{trellis_encode, NextStateRule, TrellisSpec};
pub use turbo::{turbo_decode, turbo_encode, TurboConfig, TurboOutput};
