use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gate::{Gate, GateKind, Qubit};

/// What a qubit holds once the circuit has finished.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    /// Holds a loaded data bit that is part of the output.
    #[default]
    Data,
    /// Part of the output address register.
    Address,
    /// Helper qubit that started in `|0>`.
    Ancilla,
    /// Left behind by a swap network or a disentangling block.
    Discarded,
}

impl Role {
    pub const ALL: [Role; 4] = [Role::Data, Role::Address, Role::Ancilla, Role::Discarded];

    pub fn name(self) -> &'static str {
        match self {
            Role::Data => "data",
            Role::Address => "address",
            Role::Ancilla => "ancilla",
            Role::Discarded => "discarded",
        }
    }

    pub fn from_name(s: &str) -> Option<Role> {
        Role::ALL.into_iter().find(|r| r.name() == s)
    }

    /// Output-carrying roles.
    pub fn is_state(self) -> bool {
        matches!(self, Role::Data | Role::Address)
    }
}

/// Gates executed simultaneously. Valid slices have pairwise disjoint supports.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TimeSlice {
    pub gates: Vec<Gate>,
}

impl TimeSlice {
    pub fn new(gates: Vec<Gate>) -> Self {
        TimeSlice { gates }
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

impl From<Vec<Gate>> for TimeSlice {
    fn from(gates: Vec<Gate>) -> Self {
        TimeSlice { gates }
    }
}

/// A structural problem found by [`Circuit::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub slice: usize,
    pub gate: usize,
    pub reason: ViolationReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationReason {
    OperandOutOfRange { qubit: Qubit, num_qubits: usize },
    RepeatedOperand { qubit: Qubit },
    /// The qubit is already used by gate `other` of the same slice.
    SharedQubit { qubit: Qubit, other: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "slice {}, gate {}: ", self.slice, self.gate)?;
        match &self.reason {
            ViolationReason::OperandOutOfRange { qubit, num_qubits } => {
                write!(f, "qubit {qubit} out of range for {num_qubits} qubits")
            }
            ViolationReason::RepeatedOperand { qubit } => write!(f, "qubit {qubit} used twice"),
            ViolationReason::SharedQubit { qubit, other } => {
                write!(f, "qubit {qubit} already used by gate {other} in this slice")
            }
        }
    }
}

/// Ordered time slices over an indexed qubit set.
///
/// Roles and the free pool describe the circuit's final bookkeeping: which
/// qubits carry the output, which are left over, and which were returned
/// clean (in `|0>`) for reuse.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Circuit {
    num_qubits: usize,
    slices: Vec<TimeSlice>,
    roles: Vec<Role>,
    free_pool: BTreeSet<Qubit>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            slices: Vec::new(),
            roles: vec![Role::Data; num_qubits],
            free_pool: BTreeSet::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn slices(&self) -> &[TimeSlice] {
        &self.slices
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, q: Qubit) -> Role {
        self.roles[q]
    }

    pub fn set_role(&mut self, q: Qubit, role: Role) {
        self.roles[q] = role;
    }

    pub fn free_pool(&self) -> &BTreeSet<Qubit> {
        &self.free_pool
    }

    pub fn release(&mut self, q: Qubit) {
        self.free_pool.insert(q);
    }

    /// Takes a qubit out of the free pool, returning whether it was there.
    pub fn reclaim(&mut self, q: Qubit) -> bool {
        self.free_pool.remove(&q)
    }

    /// Appends a fresh qubit and returns its index.
    pub fn add_qubit(&mut self, role: Role) -> Qubit {
        self.roles.push(role);
        self.num_qubits += 1;
        self.num_qubits - 1
    }

    /// Grows the register to at least `n` qubits.
    pub fn ensure_qubits(&mut self, n: usize) {
        if n > self.num_qubits {
            self.roles.resize(n, Role::Data);
            self.num_qubits = n;
        }
    }

    /// Appends a slice; empty slices are dropped.
    pub fn push_slice(&mut self, slice: impl Into<TimeSlice>) {
        let slice = slice.into();
        if !slice.is_empty() {
            self.slices.push(slice);
        }
    }

    /// Places `gate` in the earliest slice after every slice that already
    /// touches one of its qubits, appending a new slice when needed.
    pub fn push_asap(&mut self, gate: Gate) {
        let support = gate.support();
        let mut slot = self.slices.len();
        while slot > 0 {
            let busy = self.slices[slot - 1]
                .gates
                .iter()
                .any(|g| g.support().iter().any(|q| support.contains(q)));
            if busy {
                break;
            }
            slot -= 1;
        }
        if slot == self.slices.len() {
            self.slices.push(TimeSlice::new(vec![gate]));
        } else {
            self.slices[slot].gates.push(gate);
        }
    }

    /// Appends every slice of `other`, growing the register if needed. Roles
    /// and pool of `other` are ignored.
    pub fn append(&mut self, other: &Circuit) {
        self.ensure_qubits(other.num_qubits);
        self.slices.extend(other.slices.iter().cloned());
    }

    /// Copy keeping only the first `slices` slices, with the same register,
    /// roles and pool.
    pub fn truncated(&self, slices: usize) -> Circuit {
        Circuit { slices: self.slices[..slices.min(self.slices.len())].to_vec(), ..self.clone() }
    }

    pub fn gates(&self) -> impl Iterator<Item = &Gate> + '_ {
        self.slices.iter().flat_map(|s| s.gates.iter())
    }

    pub fn gate_count(&self) -> usize {
        self.slices.iter().map(|s| s.gates.len()).sum()
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.gates().filter(|g| g.kind() == kind).count()
    }

    /// Whether any gate touches `q`.
    pub fn touches(&self, q: Qubit) -> bool {
        self.gates().any(|g| g.support().contains(&q))
    }

    /// Checks operand ranges, distinct operands and disjoint slice supports.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut owner: Vec<Option<usize>> = vec![None; self.num_qubits];
        for (si, slice) in self.slices.iter().enumerate() {
            let mut used = Vec::new();
            for (gi, gate) in slice.gates.iter().enumerate() {
                let support = gate.support();
                for (k, &q) in support.iter().enumerate() {
                    let reason = if q >= self.num_qubits {
                        Some(ViolationReason::OperandOutOfRange { qubit: q, num_qubits: self.num_qubits })
                    } else if support[..k].contains(&q) {
                        Some(ViolationReason::RepeatedOperand { qubit: q })
                    } else if let Some(other) = owner[q] {
                        Some(ViolationReason::SharedQubit { qubit: q, other })
                    } else {
                        owner[q] = Some(gi);
                        used.push(q);
                        None
                    };
                    if let Some(reason) = reason {
                        out.push(Violation { slice: si, gate: gi, reason });
                    }
                }
            }
            for q in used {
                owner[q] = None;
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Number of non-empty slices.
    pub fn slice_depth(&self) -> usize {
        self.slices.iter().filter(|s| !s.is_empty()).count()
    }

    /// Critical path length after an ASAP reschedule in which gates sharing a
    /// qubit execute one after another in program order, each costing 1.
    pub fn serialized_depth(&self) -> usize {
        let mut ready = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for gate in self.gates() {
            let support = gate.support();
            let level = 1 + support.iter().map(|&q| ready[q]).max().unwrap_or(0);
            for &q in &support {
                ready[q] = level;
            }
            depth = depth.max(level);
        }
        depth
    }
}
