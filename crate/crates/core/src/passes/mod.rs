//! Decomposition passes and reversible lowering of classical netlists.
//!
//! Every gate pass replaces each matching gate by a fixed sequence on the
//! same qubits. A slice is expanded into as many slices as its longest
//! replacement, the `t`-th slice holding the `t`-th gate of every sequence,
//! so valid circuits stay valid.

mod netlist;
mod reversible;

use std::collections::BTreeMap;

use serde::Serialize;

pub use netlist::{NetGate, NetOp, Netlist, NetlistError};
pub use reversible::{lower_netlist_reversible, ReversibleCircuit};

use crate::ir::{Circuit, Gate, GateKind, TimeSlice};
use crate::sim::{compare_unitaries, gate_unitary, unitary_of, SimError, UnitaryComparison};

/// Gate tallies before and after a pass.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PassReport {
    pub pass: String,
    pub before: BTreeMap<GateKind, usize>,
    pub after: BTreeMap<GateKind, usize>,
    pub ancillas_added: usize,
    /// Comparison of one replacement sequence against the gate it replaces,
    /// for passes whose equivalence is checked rather than assumed.
    #[serde(skip)]
    pub verdict: Option<UnitaryComparison>,
}

impl PassReport {
    fn new(pass: &str, before: &Circuit, after: &Circuit) -> Self {
        PassReport {
            pass: pass.to_string(),
            before: tally(before),
            after: tally(after),
            ancillas_added: after.num_qubits() - before.num_qubits(),
            verdict: None,
        }
    }

    /// Signed change in the count of `kind`.
    pub fn delta(&self, kind: GateKind) -> i64 {
        let get = |m: &BTreeMap<GateKind, usize>| m.get(&kind).copied().unwrap_or(0) as i64;
        get(&self.after) - get(&self.before)
    }
}

/// Nonzero gate counts by kind.
pub fn tally(circuit: &Circuit) -> BTreeMap<GateKind, usize> {
    let mut m = BTreeMap::new();
    for g in circuit.gates() {
        *m.entry(g.kind()).or_insert(0) += 1;
    }
    m
}

fn expand(circuit: &Circuit, mut replace: impl FnMut(&Gate) -> Option<Vec<Gate>>) -> Circuit {
    let mut out = circuit.truncated(0);
    for slice in circuit.slices() {
        let seqs: Vec<Vec<Gate>> = slice.gates.iter().map(|g| replace(g).unwrap_or_else(|| vec![*g])).collect();
        let len = seqs.iter().map(Vec::len).max().unwrap_or(0);
        for t in 0..len {
            out.push_slice(TimeSlice::new(seqs.iter().filter_map(|s| s.get(t).copied()).collect()));
        }
    }
    out
}

/// SWAP as three alternating CNOTs.
pub fn swap_as_cnots(a: usize, b: usize) -> Vec<Gate> {
    vec![Gate::Cnot(a, b), Gate::Cnot(b, a), Gate::Cnot(a, b)]
}

pub fn lower_swap_to_cnot(circuit: &Circuit) -> (Circuit, PassReport) {
    let out = expand(circuit, |g| match *g {
        Gate::Swap(a, b) => Some(swap_as_cnots(a, b)),
        _ => None,
    });
    let report = PassReport::new("swap-to-cnot", circuit, &out);
    (out, report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CswapLowering {
    /// Three Toffolis alternating target between the swapped pair.
    ThreeToffoli,
    /// CNOT, Toffoli, CNOT.
    ToffoliSandwich,
}

impl std::str::FromStr for CswapLowering {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "three-toffoli" => Ok(CswapLowering::ThreeToffoli),
            "toffoli-sandwich" => Ok(CswapLowering::ToffoliSandwich),
            _ => Err(format!("unknown CSWAP lowering '{s}'; expected three-toffoli or toffoli-sandwich")),
        }
    }
}

pub fn cswap_sequence(variant: CswapLowering, c: usize, a: usize, b: usize) -> Vec<Gate> {
    match variant {
        CswapLowering::ThreeToffoli => vec![Gate::Ccnot(c, a, b), Gate::Ccnot(c, b, a), Gate::Ccnot(c, a, b)],
        CswapLowering::ToffoliSandwich => vec![Gate::Cnot(a, b), Gate::Ccnot(c, b, a), Gate::Cnot(a, b)],
    }
}

pub fn lower_cswap(circuit: &Circuit, variant: CswapLowering) -> (Circuit, PassReport) {
    let out = expand(circuit, |g| match *g {
        Gate::Cswap(c, a, b) => Some(cswap_sequence(variant, c, a, b)),
        _ => None,
    });
    let name = match variant {
        CswapLowering::ThreeToffoli => "cswap-three-toffoli",
        CswapLowering::ToffoliSandwich => "cswap-toffoli-sandwich",
    };
    let report = PassReport::new(name, circuit, &out);
    (out, report)
}

/// Toffoli from Hadamards, controlled phases and CNOTs, with controls `a`,
/// `b` and target `c`.
pub fn toffoli_sequence(a: usize, b: usize, c: usize) -> Vec<Gate> {
    vec![
        Gate::H(c),
        Gate::Cs(b, c),
        Gate::Cnot(a, b),
        Gate::Csdg(b, c),
        Gate::Cnot(a, b),
        Gate::Cs(a, c),
        Gate::H(c),
    ]
}

/// Compares [`toffoli_sequence`] with the Toffoli unitary on three qubits.
pub fn toffoli_sequence_verdict() -> Result<UnitaryComparison, SimError> {
    let mut c = Circuit::new(3);
    for g in toffoli_sequence(0, 1, 2) {
        c.push_slice(vec![g]);
    }
    compare_unitaries(&unitary_of(&c)?, &gate_unitary(Gate::Ccnot(0, 1, 2), 3)?)
}

/// Replaces every Toffoli by [`toffoli_sequence`]; the report carries the
/// brute-force comparison of the sequence with the Toffoli.
pub fn lower_toffoli(circuit: &Circuit) -> (Circuit, PassReport) {
    let out = expand(circuit, |g| match *g {
        Gate::Ccnot(a, b, c) => Some(toffoli_sequence(a, b, c)),
        _ => None,
    });
    let mut report = PassReport::new("toffoli-phase", circuit, &out);
    report.verdict = Some(toffoli_sequence_verdict().expect("three-qubit unitary"));
    (out, report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(n: usize, g: Gate) -> Circuit {
        let mut c = Circuit::new(n);
        c.push_slice(vec![g]);
        c
    }

    #[test]
    fn swap_pass_counts_and_unitary() {
        let c = one(2, Gate::Swap(0, 1));
        let (out, rep) = lower_swap_to_cnot(&c);
        assert_eq!(rep.delta(GateKind::Swap), -1);
        assert_eq!(rep.delta(GateKind::Cnot), 3);
        assert_eq!(compare_unitaries(&unitary_of(&out).unwrap(), &unitary_of(&c).unwrap()).unwrap(), UnitaryComparison::Exact);
    }

    #[test]
    fn cswap_variants_exact() {
        for v in [CswapLowering::ThreeToffoli, CswapLowering::ToffoliSandwich] {
            let c = one(3, Gate::Cswap(0, 1, 2));
            let (out, _) = lower_cswap(&c, v);
            let u = unitary_of(&out).unwrap();
            assert!(u.is_integer());
            assert_eq!(compare_unitaries(&u, &unitary_of(&c).unwrap()).unwrap(), UnitaryComparison::Exact);
        }
    }

    #[test]
    fn toffoli_sequence_is_exact() {
        assert_eq!(toffoli_sequence_verdict().unwrap(), UnitaryComparison::Exact);
    }

    #[test]
    fn parallel_slice_stays_valid() {
        let mut c = Circuit::new(6);
        c.push_slice(vec![Gate::Cswap(0, 1, 2), Gate::Cswap(3, 4, 5)]);
        let (out, rep) = lower_cswap(&c, CswapLowering::ThreeToffoli);
        assert!(out.is_valid());
        assert_eq!(out.slice_depth(), 3);
        assert_eq!(rep.delta(GateKind::Ccnot), 6);
    }

    #[test]
    fn untouched_circuit_unchanged() {
        let c = one(2, Gate::Cnot(0, 1));
        assert_eq!(lower_cswap(&c, CswapLowering::ThreeToffoli).0, c);
        assert_eq!(lower_toffoli(&c).0, c);
        assert_eq!(lower_swap_to_cnot(&c).0, c);
    }
}
