use crate::ir::{Circuit, Gate, Qubit, Role};

use super::{target_state, BitVector, Checkpoint, Family, LoadResult};

/// Parity block for one swapped pair.
pub fn disentangle_gates(control: Qubit, keep: Qubit, discard: Qubit, ancilla: Qubit) -> [Gate; 3] {
    [Gate::Cnot(keep, ancilla), Gate::Cnot(discard, ancilla), Gate::Ccnot(control, ancilla, discard)]
}

/// One merge of two equal-size blocks under a fresh control.
struct Pair {
    control: Qubit,
    left: Vec<Qubit>,
    right: Vec<Qubit>,
}

/// Register layout of the swap tree: data qubits, one control per merge
/// (allocated stage by stage) and the merges of each stage.
struct Tree {
    circuit: Circuit,
    stages: Vec<Vec<Pair>>,
    output: Vec<Qubit>,
}

fn layout(bits: &BitVector) -> Tree {
    let padded = bits.padded();
    let mut circuit = Circuit::new(padded.len());
    let mut blocks: Vec<Vec<Qubit>> = (0..padded.len()).map(|q| vec![q]).collect();
    let mut stages = Vec::new();
    while blocks.len() > 1 {
        let mut next = Vec::with_capacity(blocks.len() / 2);
        let mut pairs = Vec::with_capacity(blocks.len() / 2);
        let mut it = blocks.into_iter();
        while let (Some(left), Some(right)) = (it.next(), it.next()) {
            let control = circuit.add_qubit(Role::Address);
            let mut merged = vec![control];
            merged.extend_from_slice(&left);
            next.push(merged);
            pairs.push(Pair { control, left, right });
        }
        stages.push(pairs);
        blocks = next;
    }
    let output = blocks.pop().unwrap();
    for pairs in &stages {
        for p in pairs {
            for &q in &p.right {
                circuit.set_role(q, Role::Discarded);
            }
        }
    }
    Tree { circuit, stages, output }
}

fn load_slice(bits: &BitVector) -> Vec<Gate> {
    bits.padded().iter().enumerate().map(|(q, &b)| Gate::Clx(b, q)).collect()
}

fn finish(family: Family, bits: &BitVector, tree: Tree, checkpoints: Vec<Checkpoint>) -> LoadResult {
    let circuit = tree.circuit;
    let discarded_qubits = (0..circuit.num_qubits())
        .filter(|&q| !circuit.role(q).is_state() && !circuit.free_pool().contains(&q))
        .collect();
    LoadResult {
        family,
        target_state: target_state(bits),
        output_qubits: tree.output,
        discarded_qubits,
        circuit,
        input_len: bits.len(),
        padding: bits.padding(),
        address_bits: bits.address_bits(),
        checkpoints,
    }
}

/// Bottom-up controlled-swap tree.
///
/// Stage `k` merges pairs of size-`k` blocks: one Hadamard slice (the first
/// also loads the data), then `k` slices each holding one swap per pair.
/// With `erasure`, each swap slice is followed by the parity block for every
/// pair. A pair whose two values were classically known before the swap is
/// then reset with classical flips and both its qubits go to the free pool;
/// other pairs keep their qubits marked discarded.
pub fn build_family2(bits: &BitVector, erasure: bool) -> LoadResult {
    let mut tree = layout(bits);
    let padded = bits.padded();
    let mut known: Vec<Option<bool>> = padded.iter().map(|&b| Some(b)).collect();
    known.resize(tree.circuit.num_qubits(), None);
    let mut checkpoints = Vec::new();

    let stages = std::mem::take(&mut tree.stages);
    if stages.is_empty() {
        tree.circuit.push_slice(load_slice(bits));
    }
    for (si, pairs) in stages.iter().enumerate() {
        let stage = si + 1;
        let mut first = if si == 0 { load_slice(bits) } else { Vec::new() };
        first.extend(pairs.iter().map(|p| Gate::H(p.control)));
        tree.circuit.push_slice(first);
        for m in 0..stage {
            tree.circuit.push_slice(pairs.iter().map(|p| Gate::Cswap(p.control, p.left[m], p.right[m])).collect::<Vec<_>>());
            if erasure {
                erase_column(&mut tree.circuit, &mut known, pairs, m, stage, &mut checkpoints);
            } else {
                for p in pairs {
                    track_swap(&mut known, p.left[m], p.right[m]);
                }
            }
        }
    }
    let family = if erasure { Family::TwoErasure } else { Family::TwoPlain };
    finish(family, bits, tree, checkpoints)
}

/// Known values after a swap with an unknown control: equal known values
/// stay known, anything else becomes unknown.
fn track_swap(known: &mut [Option<bool>], a: Qubit, b: Qubit) {
    if known[a].is_none() || known[a] != known[b] {
        known[a] = None;
        known[b] = None;
    }
}

fn acquire(circuit: &mut Circuit, known: &mut Vec<Option<bool>>) -> Qubit {
    let q = match circuit.free_pool().iter().next().copied() {
        Some(q) => {
            circuit.reclaim(q);
            circuit.set_role(q, Role::Ancilla);
            q
        }
        None => circuit.add_qubit(Role::Ancilla),
    };
    known.resize(circuit.num_qubits(), None);
    known[q] = Some(false);
    q
}

fn erase_column(
    circuit: &mut Circuit,
    known: &mut Vec<Option<bool>>,
    pairs: &[Pair],
    m: usize,
    stage: usize,
    checkpoints: &mut Vec<Checkpoint>,
) {
    let ancillas: Vec<Qubit> = pairs.iter().map(|_| acquire(circuit, known)).collect();
    for step in 0..3 {
        let slice: Vec<Gate> = pairs
            .iter()
            .zip(&ancillas)
            .map(|(p, &a)| disentangle_gates(p.control, p.left[m], p.right[m], a)[step])
            .collect();
        circuit.push_slice(slice);
    }
    let after_slices = circuit.slices().len();
    let mut resets = Vec::new();
    let mut released = Vec::new();
    for (p, &a) in pairs.iter().zip(&ancillas) {
        let (keep, disc) = (p.left[m], p.right[m]);
        let poolable = match (known[keep], known[disc]) {
            // The discard qubit ends holding its pre-swap value and the
            // ancilla the parity of the pair.
            (Some(x), Some(y)) => {
                resets.push(Gate::Clx(y, disc));
                resets.push(Gate::Clx(x ^ y, a));
                if x != y {
                    known[keep] = None;
                }
                known[disc] = Some(false);
                known[a] = Some(false);
                released.push(disc);
                released.push(a);
                true
            }
            _ => {
                known[keep] = None;
                known[disc] = None;
                known[a] = None;
                circuit.set_role(a, Role::Discarded);
                false
            }
        };
        checkpoints.push(Checkpoint { after_slices, qubits: vec![disc, a], pooled: poolable, stage });
    }
    // Flips by a zero bit are no-ops and are left out.
    circuit.push_slice(resets.into_iter().filter(|g| matches!(g, Gate::Clx(true, _))).collect::<Vec<_>>());
    for q in released {
        circuit.release(q);
    }
}

/// Swap tree with every control fanned out into a cat register.
///
/// Stage `k` uses a register of `2^ceil(log2 k)` qubits: the control plus
/// fan-out ancillas, filled by a doubling CNOT tree. Slice 1 holds the loads
/// and every Hadamard; fan-out level `l` of every stage shares slice `1 + l`.
/// Each stage then takes one slice for all its swaps (swap `m` controlled by
/// register qubit `m`) followed by the mirrored fan-out, after which the
/// fan-out ancillas are back in `|0>` and join the free pool.
///
/// Qubit indices below the fan-out ancillas coincide with family 2.
pub fn build_family3(bits: &BitVector) -> LoadResult {
    let mut tree = layout(bits);
    let stages = std::mem::take(&mut tree.stages);

    // registers[stage][pair] = [control, fan-out ancillas...]
    let mut registers: Vec<Vec<Vec<Qubit>>> = Vec::new();
    for (si, pairs) in stages.iter().enumerate() {
        let width = (si + 1).next_power_of_two();
        let regs = pairs
            .iter()
            .map(|p| {
                let mut reg = vec![p.control];
                reg.extend((1..width).map(|_| tree.circuit.add_qubit(Role::Ancilla)));
                reg
            })
            .collect();
        registers.push(regs);
    }

    let mut first = load_slice(bits);
    first.extend(stages.iter().flatten().map(|p| Gate::H(p.control)));
    tree.circuit.push_slice(first);

    let levels = |stage: usize| stage.next_power_of_two().trailing_zeros() as usize;
    let max_levels = levels(stages.len().max(1));
    for level in 1..=max_levels {
        let mut slice = Vec::new();
        for (si, regs) in registers.iter().enumerate() {
            if level <= levels(si + 1) {
                for reg in regs {
                    slice.extend(fan_level(reg, level));
                }
            }
        }
        tree.circuit.push_slice(slice);
    }

    let mut checkpoints = Vec::new();
    for (si, pairs) in stages.iter().enumerate() {
        let stage = si + 1;
        let regs = &registers[si];
        let swaps: Vec<Gate> = pairs
            .iter()
            .zip(regs)
            .flat_map(|(p, reg)| (0..stage).map(move |m| Gate::Cswap(reg[m], p.left[m], p.right[m])))
            .collect();
        tree.circuit.push_slice(swaps);
        for level in (1..=levels(stage)).rev() {
            tree.circuit.push_slice(regs.iter().flat_map(|reg| fan_level(reg, level)).collect::<Vec<_>>());
        }
        let after_slices = tree.circuit.slices().len();
        for reg in regs.iter().filter(|r| r.len() > 1) {
            for &q in &reg[1..] {
                tree.circuit.release(q);
            }
            checkpoints.push(Checkpoint { after_slices, qubits: reg[1..].to_vec(), pooled: true, stage });
        }
    }
    finish(Family::Three, bits, tree, checkpoints)
}

/// CNOTs of doubling level `level` (1-based): register qubit `j` copies into
/// `j + 2^(level-1)`.
fn fan_level(reg: &[Qubit], level: usize) -> Vec<Gate> {
    let half = 1 << (level - 1);
    (0..half).filter(|j| j + half < reg.len()).map(|j| Gate::Cnot(reg[j], reg[j + half])).collect()
}
