//! Circuit compiler and exact simulator for loading classical bit-strings into
//! quantum states.
//!
//! The crate is organised bottom-up:
//!
//! - [`ir`]: gate-level intermediate representation with explicit time slices,
//!   structural validation, depth metrics and a line-oriented text format.
//! - [`sim`]: sparse state-vector execution with exact amplitudes, plus the
//!   fidelity, purity and unitary diagnostics used to check every loader.
//! - [`families`]: the three data-loading circuit families, including the
//!   erasure variant that disentangles and recycles discarded qubits.
//! - [`passes`]: decomposition passes (SWAP, CSWAP, Toffoli) and reversible
//!   lowering of classical netlists.
//! - [`resources`]: closed-form gate/qubit/depth formulas, empirical counting
//!   and the entropy model for compressed loading.
//! - [`compressor`]: bounded-weight enumerative codec and the end-to-end
//!   compress, load, decompress pipeline.

pub mod compressor;
pub mod families;
pub mod ir;
pub mod passes;
pub mod resources;
pub mod sim;

pub use families::{BitVector, Family, LoadResult};
pub use ir::{Circuit, Gate, GateKind, Qubit, Role, TimeSlice};
pub use sim::{BasisLabel, StateVector};
