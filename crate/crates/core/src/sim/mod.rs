//! Exact state-vector simulation and state diagnostics.
//!
//! Qubit 0 is the most significant bit of every basis index and the leftmost
//! character of every printed label.

mod diag;
mod gaussian;
mod state;
mod unitary;

pub use diag::{basis_fidelity, fidelity, inner_product, purity_of_subset, retained_fidelity};
pub use gaussian::Gaussian;
pub use state::{run, run_on, run_permutation, run_zero, BasisLabel, StateVector, MAX_QUBITS};
pub use unitary::{compare_unitaries, gate_unitary, unitary_of, Unitary, UnitaryComparison, MAX_UNITARY_QUBITS};

/// Tolerance for fidelity and norm checks.
pub const FIDELITY_TOL: f64 = 1e-12;
/// Tolerance for purity checks.
pub const PURITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("dimension mismatch: expected {expected} qubits, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{num_qubits} qubits exceeds the limit of {max}")]
    TooManyQubits { num_qubits: usize, max: usize },
    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit {0} listed twice")]
    RepeatedQubit(usize),
    #[error("basis index {index} does not fit in {num_qubits} qubits")]
    IndexOutOfRange { index: u128, num_qubits: usize },
    #[error("subset must be nonempty and proper")]
    ImproperSubset,
    #[error("invalid basis label '{0}'")]
    BadLabel(String),
    #[error("cannot build a uniform state over {0} terms")]
    NotNormalizable(usize),
    #[error("exact amplitude overflowed")]
    AmplitudeOverflow,
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
}
