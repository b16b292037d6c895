//! Bounded-weight enumerative block code and the compress, load,
//! decompress pipeline.
//!
//! A block of `N` bits with at most `w` ones is replaced by its rank among
//! all such blocks, written in `M = ceil(log2 Σ_{j<=w} C(N, j))` bits. Ranks
//! order blocks by weight, then colexicographically by the positions of
//! their ones, so the all-zero block has rank 0.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::families::{build_family1, BitVector, FamilyError};
use crate::ir::{Circuit, GateKind, Role};
use crate::passes::{lower_netlist_reversible, NetGate, NetOp, Netlist};
use crate::resources::{savings, CompressionPlan, ResourceError};
use crate::sim::{run_permutation, run_zero, BasisLabel, SimError, MAX_QUBITS};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CodecError {
    #[error("block has {got} bits, code expects {expected}")]
    Length { expected: usize, got: usize },
    #[error("block weight {weight} exceeds the code's bound {bound}")]
    Inadmissible { weight: usize, bound: usize },
    #[error("codeword {0} is outside the code")]
    InvalidCodeword(u128),
    #[error("codeword length {m} cannot index {count} blocks")]
    CodewordTooShort { m: usize, count: u128 },
    #[error("block length {0} is out of range 1..=64")]
    BlockLength(usize),
    #[error("spec line {line}: {message}")]
    Spec { line: usize, message: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Scheme {
    /// Blocks of weight at most `max_weight`, indexed by rank.
    Enumerative { max_weight: usize },
    /// Codeword equals the block.
    Identity,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodecSpec {
    pub scheme: Scheme,
    pub block_len: usize,
    pub codeword_len: usize,
    /// Source probability of a one, when known.
    pub p: Option<f64>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `ceil(log2 x)` for `x >= 1`.
fn bits_for(x: u128) -> usize {
    (128 - (x - 1).leading_zeros()) as usize
}

impl CodecSpec {
    /// Enumerative code with the shortest codewords.
    pub fn enumerative(block_len: usize, max_weight: usize) -> Result<CodecSpec, CodecError> {
        if block_len == 0 || block_len > 64 {
            return Err(CodecError::BlockLength(block_len));
        }
        let max_weight = max_weight.min(block_len);
        let mut spec = CodecSpec { scheme: Scheme::Enumerative { max_weight }, block_len, codeword_len: 0, p: None };
        spec.codeword_len = bits_for(spec.admissible_count()).max(1);
        Ok(spec)
    }

    pub fn identity(block_len: usize) -> Result<CodecSpec, CodecError> {
        if block_len == 0 || block_len > 64 {
            return Err(CodecError::BlockLength(block_len));
        }
        Ok(CodecSpec { scheme: Scheme::Identity, block_len, codeword_len: block_len, p: None })
    }

    /// Enumerative code whose weight bound is exceeded with probability at
    /// most `tail` for an IID source with `P(1) = p`.
    pub fn for_source(p: f64, block_len: usize, tail: f64) -> Result<CodecSpec, CodecError> {
        crate::resources::entropy_l(p)?;
        let mut cdf = 0.0;
        let mut w = block_len;
        for j in 0..=block_len {
            cdf += binomial(block_len, j) as f64 * p.powi(j as i32) * (1.0 - p).powi((block_len - j) as i32);
            if 1.0 - cdf <= tail {
                w = j;
                break;
            }
        }
        let mut spec = CodecSpec::enumerative(block_len, w)?;
        spec.p = Some(p);
        Ok(spec)
    }

    pub fn max_weight(&self) -> usize {
        match self.scheme {
            Scheme::Enumerative { max_weight } => max_weight,
            Scheme::Identity => self.block_len,
        }
    }

    /// Number of blocks the code accepts.
    pub fn admissible_count(&self) -> u128 {
        match self.scheme {
            Scheme::Enumerative { max_weight } => (0..=max_weight).map(|j| binomial(self.block_len, j)).sum(),
            Scheme::Identity => 1u128 << self.block_len,
        }
    }

    /// Reads `key = value` lines: `scheme` (`enumerative` or `identity`),
    /// `n`, `weight`, and optionally `m` and `p`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<CodecSpec, CodecError> {
        let mut kv: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (k, v) = content
                .split_once('=')
                .ok_or_else(|| CodecError::Spec { line, message: "expected 'key = value'".into() })?;
            let key = k.trim().to_ascii_lowercase();
            if !["scheme", "n", "m", "weight", "p"].contains(&key.as_str()) {
                return Err(CodecError::Spec { line, message: format!("unknown key '{}'", k.trim()) });
            }
            kv.insert(key, (line, v.trim().to_string()));
        }
        let num = |key: &str| -> Result<Option<usize>, CodecError> {
            kv.get(key)
                .map(|(line, v)| {
                    v.parse().map_err(|_| CodecError::Spec { line: *line, message: format!("bad {key} '{v}'") })
                })
                .transpose()
        };
        let n = num("n")?.ok_or(CodecError::Spec { line: 0, message: "missing 'n'".into() })?;
        let scheme = kv.get("scheme").map(|(l, s)| (*l, s.as_str())).unwrap_or((0, "enumerative"));
        let mut spec = match scheme {
            (_, "identity") => CodecSpec::identity(n)?,
            (_, "enumerative") => {
                let w = num("weight")?.ok_or(CodecError::Spec { line: 0, message: "missing 'weight'".into() })?;
                CodecSpec::enumerative(n, w)?
            }
            (line, other) => return Err(CodecError::Spec { line, message: format!("unknown scheme '{other}'") }),
        };
        if let Some(m) = num("m")? {
            let count = spec.admissible_count();
            if m < bits_for(count) || m > 127 {
                return Err(CodecError::CodewordTooShort { m, count });
            }
            spec.codeword_len = m;
        }
        if let Some((line, v)) = kv.get("p") {
            let p: f64 = v.parse().map_err(|_| CodecError::Spec { line: *line, message: format!("bad p '{v}'") })?;
            crate::resources::entropy_l(p)?;
            spec.p = Some(p);
        }
        Ok(spec)
    }

    fn rank(&self, block: &[bool]) -> u128 {
        match self.scheme {
            Scheme::Identity => block.iter().fold(0, |acc, &b| (acc << 1) | u128::from(b)),
            Scheme::Enumerative { .. } => {
                let ones: Vec<usize> = (0..block.len()).filter(|&i| block[i]).collect();
                let below: u128 = (0..ones.len()).map(|j| binomial(self.block_len, j)).sum();
                below + ones.iter().enumerate().map(|(t, &pos)| binomial(pos, t + 1)).sum::<u128>()
            }
        }
    }

    fn unrank(&self, mut r: u128) -> Result<Vec<bool>, CodecError> {
        if r >= self.admissible_count() {
            return Err(CodecError::InvalidCodeword(r));
        }
        let n = self.block_len;
        let mut block = vec![false; n];
        match self.scheme {
            Scheme::Identity => {
                for (i, b) in block.iter_mut().enumerate() {
                    *b = (r >> (n - 1 - i)) & 1 == 1;
                }
            }
            Scheme::Enumerative { .. } => {
                let mut j = 0;
                while r >= binomial(n, j) {
                    r -= binomial(n, j);
                    j += 1;
                }
                // Colex unranking: largest position first.
                for t in (1..=j).rev() {
                    let mut pos = t - 1;
                    while binomial(pos + 1, t) <= r {
                        pos += 1;
                    }
                    r -= binomial(pos, t);
                    block[pos] = true;
                }
            }
        }
        Ok(block)
    }

    pub fn encode(&self, block: &BitVector) -> Result<BitVector, CodecError> {
        if block.len() != self.block_len {
            return Err(CodecError::Length { expected: self.block_len, got: block.len() });
        }
        let weight = block.weight();
        if weight > self.max_weight() {
            return Err(CodecError::Inadmissible { weight, bound: self.max_weight() });
        }
        let r = self.rank(block.bits());
        let m = self.codeword_len;
        Ok(BitVector::new((0..m).map(|i| (r >> (m - 1 - i)) & 1 == 1).collect())?)
    }

    pub fn decode(&self, code: &BitVector) -> Result<BitVector, CodecError> {
        if code.len() != self.codeword_len {
            return Err(CodecError::Length { expected: self.codeword_len, got: code.len() });
        }
        let r = code.bits().iter().fold(0u128, |acc, &b| (acc << 1) | u128::from(b));
        Ok(BitVector::new(self.unrank(r)?)?)
    }

    /// Classical decoder netlist with inputs `c0..c{M-1}` (most significant
    /// first) and outputs `x0..x{N-1}`.
    ///
    /// Each output is the OR of the minterms of the codewords that set it.
    /// Minterms share their prefixes: the AND for the first `k` code bits is
    /// built once and extended by one literal per level.
    pub fn decode_netlist(&self) -> Netlist {
        let m = self.codeword_len;
        let inputs: Vec<String> = (0..m).map(|i| format!("c{i}")).collect();
        let mut nl = Netlist { inputs: inputs.clone(), gates: Vec::new(), outputs: Vec::new() };
        if self.scheme == Scheme::Identity {
            nl.outputs = inputs;
            return nl;
        }
        let mut negated: HashMap<usize, String> = HashMap::new();
        let mut prefixes: HashMap<(usize, u128), String> = HashMap::new();
        let mut terms: Vec<Vec<String>> = vec![Vec::new(); self.block_len];
        for r in 1..self.admissible_count() {
            let block = self.unrank(r).expect("rank in range");
            let term = minterm(&mut nl, &mut negated, &mut prefixes, r, m);
            for (i, &b) in block.iter().enumerate() {
                if b {
                    terms[i].push(term.clone());
                }
            }
        }
        for (i, t) in terms.into_iter().enumerate() {
            let out = format!("x{i}");
            match t.as_slice() {
                [] => nl.gates.push(NetGate { op: NetOp::Xor, inputs: vec!["c0".into(), "c0".into()], output: out.clone() }),
                [single] => {
                    nl.outputs.push(single.clone());
                    continue;
                }
                [first, rest @ ..] => {
                    let mut acc = first.clone();
                    for (k, w) in rest.iter().enumerate() {
                        let name = if k + 1 == rest.len() { out.clone() } else { format!("x{i}_or{k}") };
                        nl.gates.push(NetGate { op: NetOp::Or, inputs: vec![acc, w.clone()], output: name.clone() });
                        acc = name;
                    }
                }
            }
            nl.outputs.push(out);
        }
        nl
    }
}

/// Wire computing "code == r", reusing shared prefixes.
fn minterm(
    nl: &mut Netlist,
    negated: &mut HashMap<usize, String>,
    prefixes: &mut HashMap<(usize, u128), String>,
    r: u128,
    m: usize,
) -> String {
    let mut literal = |nl: &mut Netlist, i: usize, bit: bool| -> String {
        if bit {
            return format!("c{i}");
        }
        negated
            .entry(i)
            .or_insert_with(|| {
                let name = format!("n{i}");
                nl.gates.push(NetGate { op: NetOp::Not, inputs: vec![format!("c{i}")], output: name.clone() });
                name
            })
            .clone()
    };
    let mut wire = literal(nl, 0, (r >> (m - 1)) & 1 == 1);
    for k in 2..=m {
        let prefix = r >> (m - k);
        if let Some(w) = prefixes.get(&(k, prefix)) {
            wire = w.clone();
            continue;
        }
        let lit = literal(nl, k - 1, prefix & 1 == 1);
        let name = format!("p{k}_{prefix}");
        nl.gates.push(NetGate { op: NetOp::And, inputs: vec![wire, lit], output: name.clone() });
        prefixes.insert((k, prefix), name.clone());
        wire = name;
    }
    wire
}

impl fmt::Display for CodecSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scheme {
            Scheme::Enumerative { max_weight } => {
                writeln!(f, "scheme = enumerative")?;
                writeln!(f, "n = {}", self.block_len)?;
                writeln!(f, "weight = {max_weight}")?;
            }
            Scheme::Identity => {
                writeln!(f, "scheme = identity")?;
                writeln!(f, "n = {}", self.block_len)?;
            }
        }
        writeln!(f, "m = {}", self.codeword_len)?;
        if let Some(p) = self.p {
            writeln!(f, "p = {p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub input: String,
    pub codeword: String,
    pub recovered: String,
    pub success: bool,
    /// Qubits loaded with data (the codeword length).
    pub loaded_qubits: usize,
    /// Qubits an uncompressed load would use.
    pub uncompressed_qubits: usize,
    pub total_qubits: usize,
    pub decoder_gates: usize,
    pub decoder_ancillas: usize,
    pub decoder_serialized_depth: usize,
    pub decoder_uses_hadamard: bool,
    /// Entropy-model plan for the same block length, when `p` is known.
    pub plan: Option<CompressionPlan>,
}

/// The full circuit: family 1 load of the codeword followed by the lowered
/// decoder. Returns the circuit, the output qubits and the decoder size.
pub fn pipeline_circuit(spec: &CodecSpec, code: &BitVector) -> (Circuit, Vec<usize>, Circuit, usize) {
    let load = build_family1(code);
    let decoder = lower_netlist_reversible(&spec.decode_netlist());
    let mut circuit = load.circuit;
    circuit.append(&decoder.circuit);
    for q in code.len()..circuit.num_qubits() {
        circuit.set_role(q, Role::Ancilla);
    }
    (circuit, decoder.output_qubits, decoder.circuit, decoder.ancillas)
}

/// Encode, load the codeword, decode reversibly, simulate and read back.
pub fn run_pipeline(bits: &BitVector, spec: &CodecSpec) -> Result<PipelineReport, CodecError> {
    let code = spec.encode(bits)?;
    let (circuit, outputs, decoder, ancillas) = pipeline_circuit(spec, &code);
    let label = if circuit.num_qubits() <= MAX_QUBITS {
        run_zero(&circuit)?
            .as_basis()
            .ok_or_else(|| SimError::InvalidCircuit("decoder output is not a basis state".into()))?
    } else {
        run_permutation(&circuit, &BasisLabel::zeros(circuit.num_qubits()))?
    };
    let recovered: String = outputs.iter().map(|&q| if label.bits[q] { '1' } else { '0' }).collect();
    let input = bits.to_string();
    Ok(PipelineReport {
        success: recovered == input,
        input,
        codeword: code.to_string(),
        recovered,
        loaded_qubits: code.len(),
        uncompressed_qubits: bits.len(),
        total_qubits: circuit.num_qubits(),
        decoder_gates: decoder.gate_count(),
        decoder_ancillas: ancillas,
        decoder_serialized_depth: decoder.serialized_depth(),
        decoder_uses_hadamard: decoder.count_kind(GateKind::H) > 0,
        plan: spec.p.map(|p| savings(p, bits.len())).transpose()?,
    })
}
