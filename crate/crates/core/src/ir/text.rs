//! Line-oriented circuit text format.
//!
//! ```text
//! # comment (anything after '#' is ignored)
//! qubits 3
//! role address 0          # optional; qubits not listed are data
//! pool 2                  # optional; free-pool members
//! H 0
//! ---                     # slice separator
//! CSWAP 0 1 2
//! ```
//!
//! Gate lines are `X q`, `H q`, `S q`, `SDG q`, `CX c t`, `CCX c1 c2 t`,
//! `SWAP a b`, `CSWAP c a b`, `CS c t`, `CSDG c t` and `CLX bit q` with a
//! literal bit `0` or `1`. The header must precede every other line;
//! `role` and `pool` lines must precede the first gate. Empty slices are
//! skipped. [`to_text`] emits the canonical form, which [`parse`] reads back
//! to an identical circuit and which prints back byte-for-byte.

use std::fmt::Write as _;

use super::circuit::{Circuit, Role};
use super::gate::{Gate, GateKind, Qubit};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "qubits {}", circuit.num_qubits()).unwrap();
    for role in [Role::Address, Role::Ancilla, Role::Discarded] {
        let members: Vec<String> = (0..circuit.num_qubits())
            .filter(|&q| circuit.role(q) == role)
            .map(|q| q.to_string())
            .collect();
        if !members.is_empty() {
            writeln!(out, "role {} {}", role.name(), members.join(" ")).unwrap();
        }
    }
    if !circuit.free_pool().is_empty() {
        let members: Vec<String> = circuit.free_pool().iter().map(|q| q.to_string()).collect();
        writeln!(out, "pool {}", members.join(" ")).unwrap();
    }
    for (i, slice) in circuit.slices().iter().enumerate() {
        if i > 0 {
            out.push_str("---\n");
        }
        for gate in &slice.gates {
            writeln!(out, "{gate}").unwrap();
        }
    }
    out
}

fn parse_qubit(tok: &str, line: usize) -> Result<Qubit, ParseError> {
    tok.parse().map_err(|_| err(line, format!("bad qubit index '{tok}'")))
}

pub fn parse(text: &str) -> Result<Circuit, ParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut current: Vec<Gate> = Vec::new();
    let mut seen_gate = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let head = toks.next().unwrap();
        let rest: Vec<&str> = toks.collect();

        if head == "qubits" {
            if circuit.is_some() {
                return Err(err(line, "duplicate 'qubits' header"));
            }
            let [k] = rest.as_slice() else {
                return Err(err(line, "expected 'qubits K'"));
            };
            let k: usize = k.parse().map_err(|_| err(line, format!("bad qubit count '{k}'")))?;
            circuit = Some(Circuit::new(k));
            continue;
        }
        let Some(c) = circuit.as_mut() else {
            return Err(err(line, "missing 'qubits K' header"));
        };
        match head {
            "---" => {
                if !rest.is_empty() {
                    return Err(err(line, "separator line must be exactly '---'"));
                }
                c.push_slice(std::mem::take(&mut current));
            }
            "role" | "pool" if seen_gate => {
                return Err(err(line, format!("'{head}' must precede the first gate")));
            }
            "role" => {
                let Some((name, qubits)) = rest.split_first() else {
                    return Err(err(line, "expected 'role NAME q...'"));
                };
                let role = Role::from_name(name).ok_or_else(|| err(line, format!("unknown role '{name}'")))?;
                for tok in qubits {
                    let q = parse_qubit(tok, line)?;
                    if q >= c.num_qubits() {
                        return Err(err(line, format!("qubit {q} out of range")));
                    }
                    c.set_role(q, role);
                }
            }
            "pool" => {
                for tok in &rest {
                    let q = parse_qubit(tok, line)?;
                    if q >= c.num_qubits() {
                        return Err(err(line, format!("qubit {q} out of range")));
                    }
                    c.release(q);
                }
            }
            mnemonic => {
                let kind = GateKind::from_mnemonic(mnemonic)
                    .ok_or_else(|| err(line, format!("unknown gate '{mnemonic}'")))?;
                let (bit, operands) = if kind == GateKind::Clx {
                    let Some((b, ops)) = rest.split_first() else {
                        return Err(err(line, "expected 'CLX bit q'"));
                    };
                    let bit = match *b {
                        "0" => false,
                        "1" => true,
                        other => return Err(err(line, format!("classical bit must be 0 or 1, got '{other}'"))),
                    };
                    (Some(bit), ops)
                } else {
                    (None, rest.as_slice())
                };
                let qubits = operands.iter().map(|t| parse_qubit(t, line)).collect::<Result<Vec<_>, _>>()?;
                let gate = Gate::from_parts(kind, &qubits, bit).ok_or_else(|| {
                    err(line, format!("{mnemonic} takes {} qubit operand(s), got {}", kind.arity(), qubits.len()))
                })?;
                if let Some(&q) = qubits.iter().find(|&&q| q >= c.num_qubits()) {
                    return Err(err(line, format!("qubit {q} out of range for {} qubits", c.num_qubits())));
                }
                seen_gate = true;
                current.push(gate);
            }
        }
    }
    let mut c = circuit.ok_or_else(|| err(text.lines().count().max(1), "missing 'qubits K' header"))?;
    c.push_slice(current);
    Ok(c)
}
