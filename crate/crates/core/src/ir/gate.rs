use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::{smallvec, SmallVec};

/// Index of a qubit inside a [`Circuit`](super::Circuit).
pub type Qubit = usize;

/// Qubits touched by a single gate.
pub type Support = SmallVec<[Qubit; 3]>;

/// A gate of the load pipeline's gate set.
///
/// Operand order follows the text format: controls first, then targets.
/// `Clx` is an X gate conditioned on a classical bit known when the circuit is
/// built; it touches one qubit and no classical wire at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(Qubit),
    H(Qubit),
    S(Qubit),
    Sdg(Qubit),
    Cnot(Qubit, Qubit),
    Ccnot(Qubit, Qubit, Qubit),
    Swap(Qubit, Qubit),
    Cswap(Qubit, Qubit, Qubit),
    /// Controlled S (phase `i` on `|11>`).
    Cs(Qubit, Qubit),
    /// Controlled S-dagger (phase `-i` on `|11>`).
    Csdg(Qubit, Qubit),
    Clx(bool, Qubit),
}

/// Gate kind without operands, used for counting and reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    Cnot,
    Ccnot,
    Swap,
    Cswap,
    Cs,
    Csdg,
    Clx,
}

impl GateKind {
    pub const ALL: [GateKind; 11] = [
        GateKind::X,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::Cnot,
        GateKind::Ccnot,
        GateKind::Swap,
        GateKind::Cswap,
        GateKind::Cs,
        GateKind::Csdg,
        GateKind::Clx,
    ];

    /// Mnemonic used by the text format.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::Cnot => "CX",
            GateKind::Ccnot => "CCX",
            GateKind::Swap => "SWAP",
            GateKind::Cswap => "CSWAP",
            GateKind::Cs => "CS",
            GateKind::Csdg => "CSDG",
            GateKind::Clx => "CLX",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.mnemonic() == s)
    }

    /// Number of qubit operands.
    pub fn arity(self) -> usize {
        match self {
            GateKind::X | GateKind::H | GateKind::S | GateKind::Sdg | GateKind::Clx => 1,
            GateKind::Cnot | GateKind::Swap | GateKind::Cs | GateKind::Csdg => 2,
            GateKind::Ccnot | GateKind::Cswap => 3,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X(_) => GateKind::X,
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::Cnot(..) => GateKind::Cnot,
            Gate::Ccnot(..) => GateKind::Ccnot,
            Gate::Swap(..) => GateKind::Swap,
            Gate::Cswap(..) => GateKind::Cswap,
            Gate::Cs(..) => GateKind::Cs,
            Gate::Csdg(..) => GateKind::Csdg,
            Gate::Clx(..) => GateKind::Clx,
        }
    }

    /// Qubit operands in text-format order.
    pub fn support(&self) -> Support {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Clx(_, q) => smallvec![q],
            Gate::Cnot(a, b) | Gate::Swap(a, b) | Gate::Cs(a, b) | Gate::Csdg(a, b) => {
                smallvec![a, b]
            }
            Gate::Ccnot(a, b, c) | Gate::Cswap(a, b, c) => smallvec![a, b, c],
        }
    }

    /// Builds a gate from a kind and its operands; `None` on an arity mismatch
    /// or when a classical bit is supplied to a gate without one.
    pub fn from_parts(kind: GateKind, operands: &[Qubit], bit: Option<bool>) -> Option<Gate> {
        if operands.len() != kind.arity() || bit.is_some() != (kind == GateKind::Clx) {
            return None;
        }
        let q = operands;
        Some(match kind {
            GateKind::X => Gate::X(q[0]),
            GateKind::H => Gate::H(q[0]),
            GateKind::S => Gate::S(q[0]),
            GateKind::Sdg => Gate::Sdg(q[0]),
            GateKind::Cnot => Gate::Cnot(q[0], q[1]),
            GateKind::Ccnot => Gate::Ccnot(q[0], q[1], q[2]),
            GateKind::Swap => Gate::Swap(q[0], q[1]),
            GateKind::Cswap => Gate::Cswap(q[0], q[1], q[2]),
            GateKind::Cs => Gate::Cs(q[0], q[1]),
            GateKind::Csdg => Gate::Csdg(q[0], q[1]),
            GateKind::Clx => Gate::Clx(bit?, q[0]),
        })
    }

    /// True when two operand indices coincide.
    pub fn has_repeated_operand(&self) -> bool {
        let s = self.support();
        (0..s.len()).any(|i| s[i + 1..].contains(&s[i]))
    }

    /// Same gate with every operand passed through `f`.
    pub fn remap(&self, mut f: impl FnMut(Qubit) -> Qubit) -> Gate {
        match *self {
            Gate::X(q) => Gate::X(f(q)),
            Gate::H(q) => Gate::H(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::Cnot(a, b) => Gate::Cnot(f(a), f(b)),
            Gate::Ccnot(a, b, c) => Gate::Ccnot(f(a), f(b), f(c)),
            Gate::Swap(a, b) => Gate::Swap(f(a), f(b)),
            Gate::Cswap(a, b, c) => Gate::Cswap(f(a), f(b), f(c)),
            Gate::Cs(a, b) => Gate::Cs(f(a), f(b)),
            Gate::Csdg(a, b) => Gate::Csdg(f(a), f(b)),
            Gate::Clx(bit, q) => Gate::Clx(bit, f(q)),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().mnemonic())?;
        if let Gate::Clx(bit, _) = self {
            write!(f, " {}", u8::from(*bit))?;
        }
        for q in self.support() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_text_format() {
        assert_eq!(Gate::Cswap(0, 1, 2).to_string(), "CSWAP 0 1 2");
        assert_eq!(Gate::Clx(true, 4).to_string(), "CLX 1 4");
        assert_eq!(Gate::Sdg(3).to_string(), "SDG 3");
        assert_eq!(Gate::Ccnot(0, 1, 2).to_string(), "CCX 0 1 2");
    }

    #[test]
    fn from_parts_checks_arity() {
        assert_eq!(Gate::from_parts(GateKind::Cnot, &[1, 2], None), Some(Gate::Cnot(1, 2)));
        assert_eq!(Gate::from_parts(GateKind::Cnot, &[1], None), None);
        assert_eq!(Gate::from_parts(GateKind::Clx, &[1], None), None);
        assert_eq!(Gate::from_parts(GateKind::H, &[1], Some(true)), None);
        for kind in GateKind::ALL {
            assert_eq!(GateKind::from_mnemonic(kind.mnemonic()), Some(kind));
        }
    }

    #[test]
    fn repeated_operands_detected() {
        assert!(Gate::Cswap(0, 1, 1).has_repeated_operand());
        assert!(Gate::Ccnot(2, 1, 2).has_repeated_operand());
        assert!(!Gate::Cswap(0, 1, 2).has_repeated_operand());
    }
}
