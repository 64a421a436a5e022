//! Simulator of Shor's order-finding circuit with coherence and entanglement meters.
//!
//! The crate evolves the two-register state through the Hadamard layer, the
//! modular-exponentiation unitary and the inverse Fourier transform, measures
//! the state after every stage with three coherence quantifiers (the
//! `l_{1,p}` norm, the Tsallis relative `alpha`-entropy and the geometric
//! coherence) plus the geometric entanglement under a symmetric product
//! ansatz, and cross-checks the numbers against closed-form expressions.
//! The classical envelope (order recovery by continued fractions and factor
//! extraction) lives in [`numtheory`].

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod measures;
pub mod numtheory;
pub mod optimize;
pub mod statevec;
pub mod theorems;
pub mod tolerances;

pub use entanglement::{HammingTable, SymmetricOptimum};
pub use error::{Error, Result};
pub use measures::{AlphaParam, DensityMatrix};
pub use numtheory::{Convergent, ShorInstance};
pub use statevec::{OutcomeDistribution, PipelineStates, PureState, RegisterLayout};
pub use theorems::{MeasureReport, Stage, VariationLedger};
