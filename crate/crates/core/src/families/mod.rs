//! Data-loading circuit families.
//!
//! Family 1 writes every bit into its own qubit with one slice of
//! classically controlled flips. Family 2 loads `2^n` bits into `n` address
//! qubits and one data qubit with a bottom-up tree of controlled swaps; its
//! erasure variant appends a parity block after every swap and recycles the
//! qubits it can prove clean. Family 3 is family 2 with each stage's control
//! fanned out into a cat register so that all swaps of a stage share a slice.
//!
//! Layout shared by families 2 and 3: qubit `j < 2^n` starts holding `b_j`;
//! the Hadamard controls follow in stage order. The output register is
//! `[c_n, ..., c_1, d]`, address most significant first, then the data
//! qubit, so the retained state reads `Σ_i |i>|b_i>`.

mod bits;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use bits::BitVector;
pub use tree::{build_family2, build_family3, disentangle_gates};

use crate::ir::{Circuit, Gate, Qubit, Role};
use crate::sim::{self, SimError, StateVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("input bit-string is empty")]
    Empty,
    #[error("invalid character '{ch}' at position {pos}; expected 0 or 1")]
    BadBit { ch: char, pos: usize },
    #[error("length {len} is not a multiple of word size {word}")]
    WordSize { len: usize, word: usize },
    #[error("qubit {0} is not a fresh ancilla")]
    AncillaNotFresh(Qubit),
    #[error("unknown family '{0}'; expected 1, 2ne, 2e or 3")]
    UnknownFamily(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// One qubit per bit.
    One,
    /// Swap tree, discarded qubits left as they are.
    TwoPlain,
    /// Swap tree with disentangling blocks and qubit reuse.
    TwoErasure,
    /// Swap tree with cat-state fan-out of each stage's control.
    Three,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::One, Family::TwoPlain, Family::TwoErasure, Family::Three];

    pub fn name(self) -> &'static str {
        match self {
            Family::One => "1",
            Family::TwoPlain => "2ne",
            Family::TwoErasure => "2e",
            Family::Three => "3",
        }
    }

    pub fn build(self, bits: &BitVector) -> LoadResult {
        match self {
            Family::One => build_family1(bits),
            Family::TwoPlain => build_family2(bits, false),
            Family::TwoErasure => build_family2(bits, true),
            Family::Three => build_family3(bits),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        match s {
            "1" => Ok(Family::One),
            "2" | "2ne" => Ok(Family::TwoPlain),
            "2e" => Ok(Family::TwoErasure),
            "3" => Ok(Family::Three),
            _ => Err(FamilyError::UnknownFamily(s.to_string())),
        }
    }
}

/// A point in the circuit where qubits were handed back (or would have been).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    /// Number of leading slices executed at this point.
    pub after_slices: usize,
    /// Qubits released together.
    pub qubits: Vec<Qubit>,
    /// Whether the qubits went to the free pool.
    pub pooled: bool,
    /// Swap-tree stage (1-based) the release belongs to.
    pub stage: usize,
}

#[derive(Clone, Debug)]
pub struct LoadResult {
    pub family: Family,
    pub circuit: Circuit,
    /// Address qubits (most significant first) then data qubit(s).
    pub output_qubits: Vec<Qubit>,
    /// Qubits neither in the output nor in the free pool at the end.
    pub discarded_qubits: Vec<Qubit>,
    /// Expected state of `output_qubits`.
    pub target_state: StateVector,
    pub input_len: usize,
    pub padding: usize,
    pub address_bits: usize,
    /// Release points for disentangled or decoupled qubits, in circuit order.
    pub checkpoints: Vec<Checkpoint>,
}

impl LoadResult {
    /// Runs the circuit from the all-zero input.
    pub fn run(&self) -> Result<StateVector, SimError> {
        sim::run_zero(&self.circuit)
    }

    /// `sqrt(<target|ρ_out|target>)` of the simulated output register.
    pub fn output_fidelity(&self) -> Result<f64, SimError> {
        sim::retained_fidelity(&self.run()?, &self.output_qubits, &self.target_state)
    }

    /// Phase-blind overlap of the output register's measurement distribution
    /// with the target's.
    pub fn output_basis_fidelity(&self) -> Result<f64, SimError> {
        sim::basis_fidelity(&self.run()?, &self.output_qubits, &self.target_state)
    }

    pub fn pooled_qubits(&self) -> Vec<Qubit> {
        self.circuit.free_pool().iter().copied().collect()
    }
}

/// The `n + 1` qubit state `2^(-n/2) Σ_i |i>|b_i>` over the zero-padded bits,
/// address most significant first. Built from the formula, not a circuit.
pub fn target_state(bits: &BitVector) -> StateVector {
    let padded = bits.padded();
    let n = bits.address_bits();
    let keys = padded.iter().enumerate().map(|(i, &b)| ((i as u128) << 1) | u128::from(b));
    StateVector::uniform(n + 1, keys).expect("padded length is a power of two")
}

/// One qubit per bit, one slice of classically controlled flips.
pub fn build_family1(bits: &BitVector) -> LoadResult {
    let n = bits.len();
    let mut circuit = Circuit::new(n);
    circuit.push_slice(bits.bits().iter().enumerate().map(|(q, &b)| Gate::Clx(b, q)).collect::<Vec<_>>());
    let label = sim::BasisLabel::new(bits.bits().to_vec());
    LoadResult {
        family: Family::One,
        circuit,
        output_qubits: (0..n).collect(),
        discarded_qubits: Vec::new(),
        target_state: StateVector::basis(&label).expect("family 1 register fits the simulator"),
        input_len: n,
        padding: 0,
        address_bits: 0,
        checkpoints: Vec::new(),
    }
}

/// Appends the parity block for one swapped pair, one gate per slice:
/// `CX keep→anc`, `CX discard→anc`, `CCX control,anc→discard`.
///
/// The ancilla must be untouched so far or sit in the free pool; it is
/// reclaimed from the pool and labelled as an ancilla.
pub fn disentangle_pair(
    circuit: &mut Circuit,
    control: Qubit,
    keep: Qubit,
    discard: Qubit,
    ancilla: Qubit,
) -> Result<(), FamilyError> {
    circuit.ensure_qubits(ancilla + 1);
    let pooled = circuit.reclaim(ancilla);
    if !pooled && circuit.touches(ancilla) {
        return Err(FamilyError::AncillaNotFresh(ancilla));
    }
    circuit.set_role(ancilla, Role::Ancilla);
    for g in disentangle_gates(control, keep, discard, ancilla) {
        circuit.push_slice(vec![g]);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{purity_of_subset, run_zero, BasisLabel};

    #[test]
    fn family1_loads_basis_state() {
        let bits: BitVector = "101".parse().unwrap();
        let r = build_family1(&bits);
        assert_eq!(r.circuit.gate_count(), 3);
        assert_eq!(r.circuit.slice_depth(), 1);
        let s = r.run().unwrap();
        assert_eq!(s.as_basis(), Some("101".parse::<BasisLabel>().unwrap()));
    }

    #[test]
    fn target_layout() {
        let t = target_state(&"0110".parse().unwrap());
        assert_eq!(t, StateVector::uniform(3, [0b000, 0b011, 0b101, 0b110]).unwrap());
        let padded = target_state(&"11".parse().unwrap());
        assert_eq!(padded, StateVector::uniform(2, [0b01, 0b11]).unwrap());
        let three = target_state(&"111".parse().unwrap());
        assert_eq!(three, StateVector::uniform(3, [0b001, 0b011, 0b101, 0b110]).unwrap());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("4".parse::<Family>().is_err());
    }

    #[test]
    fn disentangle_pair_factors_single_pair() {
        // control 0, keep 1 (b0 = 0), discard 2 (b1 = 1), ancilla 3
        let mut c = Circuit::new(3);
        c.push_slice(vec![Gate::H(0), Gate::Clx(true, 2)]);
        c.push_slice(vec![Gate::Cswap(0, 1, 2)]);
        disentangle_pair(&mut c, 0, 1, 2, 3).unwrap();
        let s = run_zero(&c).unwrap();
        assert_eq!(s, StateVector::uniform(4, [0b0011, 0b1111]).unwrap());
        assert!((purity_of_subset(&s, &[2, 3]).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn disentangle_pair_rejects_used_ancilla() {
        let mut c = Circuit::new(4);
        c.push_slice(vec![Gate::X(3)]);
        assert_eq!(disentangle_pair(&mut c, 0, 1, 2, 3), Err(FamilyError::AncillaNotFresh(3)));
    }
}
