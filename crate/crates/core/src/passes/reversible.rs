use std::collections::HashMap;

use super::netlist::{NetOp, Netlist};
use crate::ir::{Circuit, Gate, Qubit, Role};

/// A netlist compiled to gates acting on basis states.
#[derive(Clone, Debug)]
pub struct ReversibleCircuit {
    pub circuit: Circuit,
    /// Qubit of each netlist input, in order; these are qubits `0..k`.
    pub input_qubits: Vec<Qubit>,
    /// Qubit holding each netlist output once the circuit has run.
    pub output_qubits: Vec<Qubit>,
    pub ancillas: usize,
}

/// Where a wire lives: its value is `value(qubit) ^ inverted`, where
/// `value(qubit)` ignores flips applied to fix polarities.
#[derive(Clone, Copy)]
struct Wire {
    qubit: Qubit,
    inverted: bool,
}

struct Builder {
    circuit: Circuit,
    /// Parity of X gates applied to each qubit since it was written.
    flipped: Vec<bool>,
    ancillas: usize,
}

impl Builder {
    fn fresh(&mut self) -> Qubit {
        self.flipped.push(false);
        self.ancillas += 1;
        self.circuit.add_qubit(Role::Ancilla)
    }

    /// Puts `w`'s qubit in the state `value(w) ^ negate`.
    fn present(&mut self, w: Wire, negate: bool) {
        if self.flipped[w.qubit] != (w.inverted ^ negate) {
            self.circuit.push_asap(Gate::X(w.qubit));
            self.flipped[w.qubit] ^= true;
        }
    }

    /// Current physical state of `w`'s qubit is `value(w) ^ offset(w)`.
    fn offset(&self, w: Wire) -> bool {
        self.flipped[w.qubit] ^ w.inverted
    }
}

/// Compiles a netlist gate by gate onto fresh ancillas.
///
/// AND and NAND use one Toffoli, OR uses a Toffoli on negated controls
/// (De Morgan), XOR two CNOTs. NOT costs nothing: it only toggles the
/// polarity under which its input qubit is read, and X gates are inserted
/// when a consumer needs the other polarity. Every non-NOT gate takes one
/// ancilla; an extra ancilla is spent only when two outputs need opposite
/// polarities of the same qubit. Gates are packed into slices as early as
/// their qubits allow.
pub fn lower_netlist_reversible(netlist: &Netlist) -> ReversibleCircuit {
    let k = netlist.inputs.len();
    let mut b = Builder { circuit: Circuit::new(k), flipped: vec![false; k], ancillas: 0 };
    let mut wires: HashMap<&str, Wire> = netlist
        .inputs
        .iter()
        .enumerate()
        .map(|(q, name)| (name.as_str(), Wire { qubit: q, inverted: false }))
        .collect();

    for g in &netlist.gates {
        let ins: Vec<Wire> = g.inputs.iter().map(|w| wires[w.as_str()]).collect();
        let out = match g.op {
            NetOp::Not => Wire { qubit: ins[0].qubit, inverted: !ins[0].inverted },
            NetOp::Xor => {
                let t = b.fresh();
                b.circuit.push_asap(Gate::Cnot(ins[0].qubit, t));
                b.circuit.push_asap(Gate::Cnot(ins[1].qubit, t));
                Wire { qubit: t, inverted: b.offset(ins[0]) ^ b.offset(ins[1]) }
            }
            NetOp::And | NetOp::Nand | NetOp::Or => {
                // OR(x, y) = NOT AND(NOT x, NOT y)
                let negate_inputs = g.op == NetOp::Or;
                let negate_output = g.op != NetOp::And;
                let t = b.fresh();
                let (x, y) = (ins[0], ins[1]);
                let inverted = if x.qubit != y.qubit {
                    b.present(x, negate_inputs);
                    b.present(y, negate_inputs);
                    b.circuit.push_asap(Gate::Ccnot(x.qubit, y.qubit, t));
                    negate_output
                } else if x.inverted == y.inverted {
                    // Both operands are the same value: AND and OR pass it through.
                    b.circuit.push_asap(Gate::Cnot(x.qubit, t));
                    b.offset(x) ^ (g.op == NetOp::Nand)
                } else {
                    // A value and its complement: AND is 0, OR is 1.
                    g.op != NetOp::And
                };
                Wire { qubit: t, inverted }
            }
        };
        wires.insert(g.output.as_str(), out);
    }

    let mut claimed: HashMap<Qubit, bool> = HashMap::new();
    let mut output_qubits = Vec::with_capacity(netlist.outputs.len());
    for name in &netlist.outputs {
        let w = wires[name.as_str()];
        let q = match claimed.get(&w.qubit) {
            None => {
                b.present(w, false);
                claimed.insert(w.qubit, w.inverted);
                w.qubit
            }
            Some(&inv) if inv == w.inverted => w.qubit,
            Some(_) => {
                // The qubit already shows the other polarity; copy and flip.
                let t = b.fresh();
                b.circuit.push_asap(Gate::Cnot(w.qubit, t));
                b.circuit.push_asap(Gate::X(t));
                t
            }
        };
        output_qubits.push(q);
    }

    ReversibleCircuit { circuit: b.circuit, input_qubits: (0..k).collect(), output_qubits, ancillas: b.ancillas }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run, BasisLabel};

    fn check_exhaustive(text: &str) -> ReversibleCircuit {
        let nl = Netlist::parse(text).unwrap();
        let rc = lower_netlist_reversible(&nl);
        assert!(rc.circuit.is_valid());
        let k = nl.inputs.len();
        for v in 0..1u128 << k {
            let ins = BasisLabel::from_index(v, k).bits;
            let mut label = ins.clone();
            label.resize(rc.circuit.num_qubits(), false);
            let out = run(&rc.circuit, &BasisLabel::new(label)).unwrap().as_basis().expect("basis in, basis out");
            let got: Vec<bool> = rc.output_qubits.iter().map(|&q| out.bits[q]).collect();
            assert_eq!(got, nl.evaluate(&ins).unwrap(), "{text} on {v:b}");
        }
        rc
    }

    #[test]
    fn single_gates() {
        for op in ["AND", "NAND", "OR", "XOR"] {
            let rc = check_exhaustive(&format!("in a b\ngate {op} a b -> y\nout y\n"));
            assert_eq!(rc.ancillas, 1);
        }
        let rc = check_exhaustive("in a\ngate NOT a -> y\nout y\n");
        assert_eq!(rc.ancillas, 0);
    }

    #[test]
    fn same_wire_operands() {
        for op in ["AND", "NAND", "OR", "XOR"] {
            check_exhaustive(&format!("in a\ngate {op} a a -> y\nout y\n"));
            check_exhaustive(&format!("in a\ngate NOT a -> n\ngate {op} a n -> y\nout y\n"));
        }
    }

    #[test]
    fn mixed_polarities() {
        let rc = check_exhaustive(
            "in a b c\ngate NOT a -> na\ngate AND na b -> x\ngate OR a c -> y\ngate NAND x na -> z\nout z y a na\n",
        );
        assert_eq!(rc.ancillas, 3 + 1);
    }

    #[test]
    fn nand_of_ones_is_zero() {
        check_exhaustive("in a b\ngate NAND a b -> y\nout y\n");
    }
}
