//! Classical gate netlists.
//!
//! ```text
//! # comment
//! in a b c
//! gate NAND a b -> w1
//! gate NOT c -> w2
//! out w1 w2
//! ```
//!
//! `in` and `out` may repeat and accumulate. A wire is written once (as an
//! input or a gate output) and must be written before it is read, which also
//! rules out cycles.

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetOp {
    Not,
    And,
    Or,
    Xor,
    Nand,
}

impl NetOp {
    pub fn name(self) -> &'static str {
        match self {
            NetOp::Not => "NOT",
            NetOp::And => "AND",
            NetOp::Or => "OR",
            NetOp::Xor => "XOR",
            NetOp::Nand => "NAND",
        }
    }

    pub fn from_name(s: &str) -> Option<NetOp> {
        [NetOp::Not, NetOp::And, NetOp::Or, NetOp::Xor, NetOp::Nand].into_iter().find(|o| o.name() == s)
    }

    pub fn arity(self) -> usize {
        if self == NetOp::Not {
            1
        } else {
            2
        }
    }

    pub fn eval(self, ins: &[bool]) -> bool {
        match self {
            NetOp::Not => !ins[0],
            NetOp::And => ins[0] && ins[1],
            NetOp::Or => ins[0] || ins[1],
            NetOp::Xor => ins[0] ^ ins[1],
            NetOp::Nand => !(ins[0] && ins[1]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetGate {
    pub op: NetOp,
    pub inputs: Vec<String>,
    pub output: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Netlist {
    pub inputs: Vec<String>,
    pub gates: Vec<NetGate>,
    pub outputs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetlistError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("wire '{0}' is written more than once")]
    MultiplyWritten(String),
    #[error("wire '{0}' is read before it is written")]
    ReadBeforeWrite(String),
    #[error("expected {expected} input values, got {got}")]
    Arity { expected: usize, got: usize },
}

impl Netlist {
    pub fn parse(text: &str) -> Result<Netlist, NetlistError> {
        let mut nl = Netlist::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let syntax = |message: String| NetlistError::Syntax { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            let toks: Vec<&str> = content.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                ["in", wires @ ..] => nl.inputs.extend(wires.iter().map(|s| s.to_string())),
                ["out", wires @ ..] => nl.outputs.extend(wires.iter().map(|s| s.to_string())),
                ["gate", op, rest @ ..] => {
                    let op = NetOp::from_name(op).ok_or_else(|| syntax(format!("unknown gate '{op}'")))?;
                    let (ins, out) = match rest {
                        [ins @ .., "->", out] => (ins, out),
                        _ => return Err(syntax("expected 'gate OP in... -> out'".into())),
                    };
                    if ins.len() != op.arity() {
                        return Err(syntax(format!("{} takes {} input(s), got {}", op.name(), op.arity(), ins.len())));
                    }
                    nl.gates.push(NetGate {
                        op,
                        inputs: ins.iter().map(|s| s.to_string()).collect(),
                        output: out.to_string(),
                    });
                }
                [head, ..] => return Err(syntax(format!("unknown directive '{head}'"))),
            }
        }
        nl.validate()?;
        Ok(nl)
    }

    /// Checks single assignment and write-before-read.
    pub fn validate(&self) -> Result<(), NetlistError> {
        let mut written = std::collections::HashSet::new();
        for w in &self.inputs {
            if !written.insert(w.as_str()) {
                return Err(NetlistError::MultiplyWritten(w.clone()));
            }
        }
        for g in &self.gates {
            for w in &g.inputs {
                if !written.contains(w.as_str()) {
                    return Err(NetlistError::ReadBeforeWrite(w.clone()));
                }
            }
            if !written.insert(g.output.as_str()) {
                return Err(NetlistError::MultiplyWritten(g.output.clone()));
            }
        }
        for w in &self.outputs {
            if !written.contains(w.as_str()) {
                return Err(NetlistError::ReadBeforeWrite(w.clone()));
            }
        }
        Ok(())
    }

    /// Output values for one input assignment.
    pub fn evaluate(&self, inputs: &[bool]) -> Result<Vec<bool>, NetlistError> {
        if inputs.len() != self.inputs.len() {
            return Err(NetlistError::Arity { expected: self.inputs.len(), got: inputs.len() });
        }
        let mut values: HashMap<&str, bool> = self.inputs.iter().map(String::as_str).zip(inputs.iter().copied()).collect();
        for g in &self.gates {
            let ins: Vec<bool> = g.inputs.iter().map(|w| values[w.as_str()]).collect();
            values.insert(g.output.as_str(), g.op.eval(&ins));
        }
        Ok(self.outputs.iter().map(|w| values[w.as_str()]).collect())
    }
}

impl fmt::Display for Netlist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.inputs.is_empty() {
            writeln!(f, "in {}", self.inputs.join(" "))?;
        }
        for g in &self.gates {
            writeln!(f, "gate {} {} -> {}", g.op.name(), g.inputs.join(" "), g.output)?;
        }
        if !self.outputs.is_empty() {
            writeln!(f, "out {}", self.outputs.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HALF_ADDER: &str = "in a b\ngate XOR a b -> s\ngate AND a b -> c\nout s c\n";

    #[test]
    fn parse_print_round_trip() {
        let nl = Netlist::parse(HALF_ADDER).unwrap();
        assert_eq!(nl.to_string(), HALF_ADDER);
        assert_eq!(Netlist::parse(&nl.to_string()).unwrap(), nl);
    }

    #[test]
    fn evaluates_truth_table() {
        let nl = Netlist::parse(HALF_ADDER).unwrap();
        assert_eq!(nl.evaluate(&[true, true]).unwrap(), vec![false, true]);
        assert_eq!(nl.evaluate(&[true, false]).unwrap(), vec![true, false]);
    }

    #[test]
    fn rejects_bad_netlists() {
        assert!(matches!(
            Netlist::parse("in a\ngate NOT a -> a\n"),
            Err(NetlistError::MultiplyWritten(w)) if w == "a"
        ));
        assert!(matches!(
            Netlist::parse("in a\ngate AND a x -> y\n"),
            Err(NetlistError::ReadBeforeWrite(w)) if w == "x"
        ));
        // A cycle necessarily reads a wire before writing it.
        assert!(Netlist::parse("in a\ngate AND a y -> x\ngate NOT x -> y\n").is_err());
        assert!(matches!(Netlist::parse("in a\ngate FOO a -> b\n"), Err(NetlistError::Syntax { line: 2, .. })));
        assert!(matches!(Netlist::parse("in a\ngate NOT a b -> c\n"), Err(NetlistError::Syntax { .. })));
    }
}
