//! Closed-form resource formulas, empirical counting and the entropy model
//! for compressed loading.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::families::{BitVector, Family, LoadResult};
use crate::ir::{Circuit, GateKind};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ResourceError {
    #[error("bit count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("bit count must be at least 1")]
    Empty,
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Gate, depth and qubit tallies for one circuit or one formula evaluation.
///
/// Formula reports only list gate kinds and quantities the closed forms
/// give; the rest are absent. Empirical reports fill everything.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub family: Option<Family>,
    pub bits: Option<usize>,
    pub address_bits: Option<usize>,
    pub counts: BTreeMap<GateKind, usize>,
    /// Classical flips beyond the data loads (qubit resets); not part of
    /// `counts` comparisons.
    pub reset_flips: usize,
    pub slice_depth: Option<usize>,
    pub serialized_depth: Option<usize>,
    /// Slice depth including the mirrored fan-out slices (family 3).
    pub depth_with_mirror: Option<usize>,
    pub final_state_qubits: Option<usize>,
    pub final_ancilla_qubits: Option<usize>,
    pub final_total_qubits: Option<usize>,
    pub peak_total_qubits: Option<usize>,
}

impl ResourceReport {
    fn blank(family: Option<Family>) -> Self {
        ResourceReport {
            family,
            bits: None,
            address_bits: None,
            counts: BTreeMap::new(),
            reset_flips: 0,
            slice_depth: None,
            serialized_depth: None,
            depth_with_mirror: None,
            final_state_qubits: None,
            final_ancilla_qubits: None,
            final_total_qubits: None,
            peak_total_qubits: None,
        }
    }

    pub fn count(&self, kind: GateKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

pub fn ceil_log2(x: usize) -> usize {
    x.next_power_of_two().trailing_zeros() as usize
}

/// Slice-depth bound for family 3: `Σ_{k=1..n} (2 + ceil(log2 k))`.
pub fn family3_depth_bound(n: usize) -> usize {
    (1..=n).map(|k| 2 + ceil_log2(k)).sum()
}

/// The same bound with one mirrored fan-out level per fan-out level.
pub fn family3_depth_bound_with_mirror(n: usize) -> usize {
    (1..=n).map(|k| 2 + 2 * ceil_log2(k)).sum()
}

/// Serialized depth tally of family 2: `n` Hadamard layers plus
/// `n(n+1)/2` swap layers.
pub fn family2_depth_tally(n: usize) -> usize {
    n + n * (n + 1) / 2
}

/// Closed-form resource counts for a load of `bits` bits.
pub fn formula_report(family: Family, bits: usize) -> Result<ResourceReport, ResourceError> {
    if bits == 0 {
        return Err(ResourceError::Empty);
    }
    let mut r = ResourceReport::blank(Some(family));
    r.bits = Some(bits);
    if family == Family::One {
        r.address_bits = Some(0);
        r.counts.insert(GateKind::Clx, bits);
        r.slice_depth = Some(1);
        r.serialized_depth = Some(1);
        r.final_state_qubits = Some(bits);
        r.final_ancilla_qubits = Some(0);
        r.final_total_qubits = Some(bits);
        r.peak_total_qubits = Some(bits);
        return Ok(r);
    }
    if !bits.is_power_of_two() {
        return Err(ResourceError::NotPowerOfTwo(bits));
    }
    let nn = bits;
    let n = ceil_log2(bits);
    let discarded = 2 * nn - 2 - n;
    r.address_bits = Some(n);
    r.counts.insert(GateKind::H, nn - 1);
    r.counts.insert(GateKind::Cswap, 2 * nn - n - 2);
    match family {
        Family::TwoPlain | Family::TwoErasure => {
            r.slice_depth = Some(n);
            r.serialized_depth = Some(family2_depth_tally(n));
            r.final_state_qubits = Some(n);
            if family == Family::TwoPlain {
                r.final_ancilla_qubits = Some(discarded);
                r.final_total_qubits = Some(2 * nn - 2);
            } else {
                r.counts.insert(GateKind::Cnot, 2 * discarded);
                r.counts.insert(GateKind::Ccnot, discarded);
                r.final_ancilla_qubits = Some(0);
                r.final_total_qubits = Some(n);
            }
        }
        Family::Three => {
            r.slice_depth = Some(family3_depth_bound(n));
            r.depth_with_mirror = Some(family3_depth_bound_with_mirror(n));
        }
        Family::One => unreachable!(),
    }
    Ok(r)
}

/// Counts taken from a circuit. Final qubits exclude the free pool: state
/// qubits are those labelled data or address, ancilla qubits those labelled
/// ancilla or discarded.
pub fn empirical_report(circuit: &Circuit) -> ResourceReport {
    let mut r = ResourceReport::blank(None);
    for g in circuit.gates() {
        *r.counts.entry(g.kind()).or_insert(0) += 1;
    }
    r.slice_depth = Some(circuit.slice_depth());
    r.serialized_depth = Some(circuit.serialized_depth());
    let live = |q: &usize| !circuit.free_pool().contains(q);
    let state = (0..circuit.num_qubits()).filter(live).filter(|&q| circuit.role(q).is_state()).count();
    let total = (0..circuit.num_qubits()).filter(live).count();
    r.final_state_qubits = Some(state);
    r.final_ancilla_qubits = Some(total - state);
    r.final_total_qubits = Some(total);
    r.peak_total_qubits = Some(circuit.num_qubits());
    r
}

/// [`empirical_report`] of a builder's output, with classical resets split
/// from the data loads.
pub fn empirical_for(result: &LoadResult) -> ResourceReport {
    let mut r = empirical_report(&result.circuit);
    let loads = result.input_len + result.padding;
    let clx = r.count(GateKind::Clx);
    r.reset_flips = clx.saturating_sub(loads);
    if r.reset_flips > 0 {
        r.counts.insert(GateKind::Clx, loads);
    }
    r.family = Some(result.family);
    r.bits = Some(loads);
    r.address_bits = Some(result.address_bits);
    if result.family == Family::Three {
        let n = result.address_bits;
        r.depth_with_mirror = r.slice_depth;
        // Mirror slices: one per fan-out level of each stage.
        let mirror: usize = (1..=n).map(ceil_log2).sum();
        r.slice_depth = r.slice_depth.map(|d| d - mirror);
    }
    r
}

/// One mismatching column between a formula and an empirical report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub column: String,
    pub formula: usize,
    pub measured: usize,
}

/// Compares every quantity the formula report gives (gate counts and final
/// qubit tallies) against the empirical report.
pub fn compare_reports(formula: &ResourceReport, measured: &ResourceReport) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for (&kind, &f) in &formula.counts {
        let m = measured.count(kind);
        if f != m {
            out.push(Mismatch { column: kind.mnemonic().to_string(), formula: f, measured: m });
        }
    }
    let qubits = [
        ("final_state_qubits", formula.final_state_qubits, measured.final_state_qubits),
        ("final_ancilla_qubits", formula.final_ancilla_qubits, measured.final_ancilla_qubits),
        ("final_total_qubits", formula.final_total_qubits, measured.final_total_qubits),
    ];
    for (name, f, m) in qubits {
        if let (Some(f), Some(m)) = (f, m) {
            if f != m {
                out.push(Mismatch { column: name.to_string(), formula: f, measured: m });
            }
        }
    }
    out
}

/// Binary entropy in bits, with `0 log 0 = 0`.
pub fn entropy_l(p: f64) -> Result<f64, ResourceError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ResourceError::BadProbability(p));
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(term(p) + term(1.0 - p))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompressionPlan {
    pub p: f64,
    pub entropy: f64,
    pub block_len: usize,
    pub compressed_len: usize,
    pub savings: usize,
}

/// `M = ceil(L(p) · N)` and `N - M`. A relative slack of `1e-12` keeps
/// products that are integers up to rounding from being bumped up.
pub fn savings(p: f64, block_len: usize) -> Result<CompressionPlan, ResourceError> {
    if block_len == 0 {
        return Err(ResourceError::Empty);
    }
    let entropy = entropy_l(p)?;
    let x = entropy * block_len as f64;
    let m = ((x - x.abs() * 1e-12).ceil().max(0.0) as usize).min(block_len);
    Ok(CompressionPlan { p, entropy, block_len, compressed_len: m, savings: block_len - m })
}

/// `(p, L(p))` at `steps + 1` evenly spaced points of `[0, 1]`.
pub fn entropy_curve(steps: usize) -> Vec<(f64, f64)> {
    (0..=steps)
        .map(|i| {
            let p = i as f64 / steps.max(1) as f64;
            (p, entropy_l(p).unwrap())
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DepthRow {
    pub address_bits: usize,
    pub bits: usize,
    pub slice_depth: usize,
    pub serialized_depth: usize,
    /// Family 2: `n + n(n+1)/2`; family 3: `Σ(2 + ceil(log2 k))`; family 1: 1.
    pub formula: usize,
    /// Family 3 only: bound including mirrored fan-out slices.
    pub formula_with_mirror: Option<usize>,
    pub log2_log2_bits: f64,
}

/// Depths of the all-zero load for each `n` in `range` (structure does not
/// depend on the bits except for erasure resets, which zeros avoid).
pub fn depth_scaling_table(family: Family, range: std::ops::RangeInclusive<usize>) -> Vec<DepthRow> {
    range
        .map(|n| {
            let bits = 1usize << n;
            let input = BitVector::new(vec![false; bits]).expect("nonempty");
            let c = family.build(&input).circuit;
            let (formula, formula_with_mirror) = match family {
                Family::One => (1, None),
                Family::TwoPlain | Family::TwoErasure => (family2_depth_tally(n), None),
                Family::Three => (family3_depth_bound(n), Some(family3_depth_bound_with_mirror(n))),
            };
            DepthRow {
                address_bits: n,
                bits,
                slice_depth: c.slice_depth(),
                serialized_depth: c.serialized_depth(),
                formula,
                formula_with_mirror,
                log2_log2_bits: (n as f64).log2(),
            }
        })
        .collect()
}
