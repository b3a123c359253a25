//! Exact classical bounds of Bell inequalities by tropical tensor contraction.
//!
//! Costs live in the min-plus semiring ([`Trop`]). Factor networks are
//! contracted by variable elimination ([`FactorNetwork::contract_full`]),
//! translation-invariant chains go through a transfer matrix and its
//! tropical spectrum ([`bell`], [`spectral`]), and bipartite modular
//! inequalities have a dedicated recursion ([`bell::modular_bound`]).

pub mod bell;
pub mod error;
pub mod format;
pub mod matrix;
pub mod network;
pub mod oracle;
pub mod random;
pub mod semiring;
pub mod spectral;
pub mod tensor;

pub use error::{Result, TropError};
pub use matrix::TropMatrix;
pub use network::{
    backtrack_optimum, Boundary, ContractOptions, ContractionTrace, EliminationPlan, FactorNetwork, StepRecord,
    TraceEntry,
};
pub use semiring::{odot, oplus, Trop, TropValue, Weight};
pub use tensor::{contract, contract_pair, diagonal_trace, reduce_min, Label, TropTensor, Witness};
