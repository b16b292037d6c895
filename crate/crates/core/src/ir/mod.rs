//! Gate-level intermediate representation.
//!
//! A [`Circuit`] is a list of explicit [`TimeSlice`]s. Gates inside one slice
//! run simultaneously and must act on disjoint qubits; [`Circuit::validate`]
//! reports every breach. Two depth metrics are kept apart on purpose:
//! [`Circuit::slice_depth`] counts the structural stages as built, while
//! [`Circuit::serialized_depth`] is the dependency-honest critical path.

mod circuit;
mod gate;
pub mod text;

pub use circuit::{Circuit, Role, TimeSlice, Violation, ViolationReason};
pub use gate::{Gate, GateKind, Qubit, Support};
pub use text::{parse, to_text, ParseError};
