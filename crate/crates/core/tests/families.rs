use proptest::prelude::*;

use bitload::families::{build_family2, build_family3, target_state, FamilyError};
use bitload::sim::{self, purity_of_subset, run_zero, PURITY_TOL};
use bitload::{BitVector, Family, Role, StateVector};

const TREE_FAMILIES: [Family; 3] = [Family::TwoPlain, Family::TwoErasure, Family::Three];

fn bits_of(v: &[bool]) -> BitVector {
    BitVector::new(v.to_vec()).unwrap()
}

fn all_inputs(len: usize) -> impl Iterator<Item = BitVector> {
    (0..1u64 << len).map(move |v| BitVector::from_value(v, len).unwrap())
}

#[test]
fn every_four_bit_input_has_amplitude_one_half_on_each_address() {
    for bits in all_inputs(4) {
        for family in TREE_FAMILIES {
            let r = family.build(&bits);
            let state = r.run().unwrap();
            let marginal = state.marginal(&r.output_qubits).unwrap();
            let want: Vec<(String, f64)> =
                target_state(&bits).terms().iter().map(|&(k, _)| (format!("{k:03b}"), 0.25)).collect();
            let got: Vec<(String, f64)> = marginal.iter().map(|(l, p)| (l.to_string(), *p)).collect();
            assert_eq!(got, want, "{family} {bits}");
        }
    }
}

#[test]
fn equal_bits_load_coherently() {
    // With all data equal nothing is entangled with the discarded qubits.
    for len in [2, 4, 8, 16] {
        for value in [false, true] {
            let bits = bits_of(&vec![value; len]);
            for family in [Family::TwoPlain, Family::Three] {
                let f = family.build(&bits).output_fidelity().unwrap();
                assert!(f >= 1.0 - sim::FIDELITY_TOL, "{family} {bits}: {f}");
            }
        }
    }
}

#[test]
fn family3_state_equals_family2_state_with_clean_ancillas() {
    for bits in all_inputs(4).chain(all_inputs(8).step_by(37)) {
        let f2 = build_family2(&bits, false);
        let f3 = build_family3(&bits);
        let extra = f3.circuit.num_qubits() - f2.circuit.num_qubits();
        let want = run_zero(&f2.circuit).unwrap().tensor(&StateVector::zero(extra).unwrap()).unwrap();
        assert_eq!(run_zero(&f3.circuit).unwrap(), want, "{bits}");
        assert_eq!(f3.output_qubits, f2.output_qubits);
    }
}

#[test]
fn pooled_qubits_are_pure_when_returned_exhaustive_four_bits() {
    for bits in all_inputs(4) {
        let r = build_family2(&bits, true);
        for cp in r.checkpoints.iter().filter(|c| c.pooled) {
            let s = run_zero(&r.circuit.truncated(cp.after_slices)).unwrap();
            assert!(purity_of_subset(&s, &cp.qubits).unwrap() >= 1.0 - PURITY_TOL, "{bits} {cp:?}");
        }
    }
}

#[test]
fn later_stage_pairs_stay_entangled_after_the_parity_block() {
    // The parity block only factors pairs whose two values are classical
    // bits. Later-stage pairs hold superposed values; these are not pooled.
    let bits: BitVector = "0110".parse().unwrap();
    let r = build_family2(&bits, true);
    let later: Vec<_> = r.checkpoints.iter().filter(|c| c.stage >= 2).collect();
    assert!(!later.is_empty());
    assert!(later.iter().all(|c| !c.pooled));
    let worst = later
        .iter()
        .map(|cp| purity_of_subset(&run_zero(&r.circuit.truncated(cp.after_slices)).unwrap(), &cp.qubits).unwrap())
        .fold(1.0, f64::min);
    assert!(worst < 1.0 - 1e-3, "{worst}");
}

#[test]
fn reused_qubits_come_from_the_pool() {
    let bits: BitVector = "0110100111010010".parse().unwrap();
    let r = build_family2(&bits, true);
    let fresh = build_family2(&bits, false).circuit.num_qubits();
    // One parity ancilla per discarded pair, but stage-1 pairs free two
    // qubits each, so later ancillas need no new qubits at first.
    let pairs = r.circuit.count_kind(bitload::GateKind::Ccnot);
    assert!(r.circuit.num_qubits() < fresh + pairs);
    assert!(r.circuit.free_pool().iter().all(|&q| r.circuit.role(q) == Role::Discarded));
}

#[test]
fn padding_sets_padded_data_to_zero() {
    let bits: BitVector = "101".parse().unwrap();
    let r = Family::TwoPlain.build(&bits);
    assert_eq!(r.padding, 1);
    assert_eq!(r.address_bits, 2);
    let t = target_state(&bits);
    // address 3 (padded) carries data bit 0
    assert_eq!(t, StateVector::uniform(3, [0b001, 0b010, 0b101, 0b110]).unwrap());
    let m = r.run().unwrap().marginal(&r.output_qubits).unwrap();
    let labels: Vec<String> = m.iter().map(|(l, _)| l.to_string()).collect();
    assert_eq!(labels, ["001", "010", "101", "110"]);
}

#[test]
fn word_size_must_divide_the_input() {
    assert!(matches!("101".parse::<BitVector>().unwrap().with_word_size(2), Err(FamilyError::WordSize { .. })));
    assert!("1010".parse::<BitVector>().unwrap().with_word_size(2).is_ok());
}

#[test]
fn bad_bit_characters_are_located() {
    assert_eq!("10x1".parse::<BitVector>(), Err(FamilyError::BadBit { ch: 'x', pos: 2 }));
    assert_eq!("".parse::<BitVector>(), Err(FamilyError::Empty));
}

#[test]
fn family3_swap_slices_are_valid_up_to_sixty_four_bits() {
    for n in 1..=6 {
        let bits = bits_of(&(0..1 << n).map(|i| i % 3 == 0).collect::<Vec<_>>());
        let r = build_family3(&bits);
        assert!(r.circuit.is_valid());
        let swaps: Vec<usize> = r
            .circuit
            .slices()
            .iter()
            .map(|s| s.gates.iter().filter(|g| g.kind() == bitload::GateKind::Cswap).count())
            .filter(|&c| c > 0)
            .collect();
        assert_eq!(swaps, (1..=n).map(|k| (1usize << (n - k)) * k).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn builders_emit_valid_circuits(v in prop::collection::vec(any::<bool>(), 1..=64)) {
        let bits = bits_of(&v);
        for family in [Family::One, Family::TwoPlain, Family::TwoErasure, Family::Three] {
            let r = family.build(&bits);
            prop_assert!(r.circuit.validate().is_empty(), "{} {}", family, bits);
            let k = r.circuit.num_qubits();
            prop_assert!(r.output_qubits.iter().chain(&r.discarded_qubits).chain(r.circuit.free_pool()).all(|&q| q < k));
        }
    }

    #[test]
    fn measured_addresses_carry_their_bits(v in prop::collection::vec(any::<bool>(), 1..=16)) {
        let bits = bits_of(&v);
        for family in TREE_FAMILIES {
            let r = family.build(&bits);
            prop_assert!(r.output_basis_fidelity().unwrap() >= 1.0 - sim::FIDELITY_TOL);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn erasure_pool_is_pure_on_eight_and_sixteen_bits(v in prop::collection::vec(any::<bool>(), 16), short in any::<bool>()) {
        let bits = bits_of(if short { &v[..8] } else { &v });
        let r = build_family2(&bits, true);
        for cp in r.checkpoints.iter().filter(|c| c.pooled) {
            let s = run_zero(&r.circuit.truncated(cp.after_slices)).unwrap();
            for &q in &cp.qubits {
                prop_assert!(purity_of_subset(&s, &[q]).unwrap() >= 1.0 - PURITY_TOL);
            }
        }
    }
}
