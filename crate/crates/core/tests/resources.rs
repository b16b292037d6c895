use proptest::prelude::*;

use bitload::resources::{
    self, compare_reports, empirical_for, entropy_l, family3_depth_bound, formula_report, savings, ResourceError,
};
use bitload::{BitVector, Family, GateKind};

fn random_bits(seed: u64, len: usize) -> BitVector {
    // Small LCG keeps this file free of RNG plumbing.
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let bits = (0..len)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            x >> 63 == 1
        })
        .collect();
    BitVector::new(bits).unwrap()
}

#[test]
fn gate_counts_match_closed_forms_for_twenty_inputs_each() {
    for n in 1..=6 {
        let len = 1 << n;
        for seed in 0..20 {
            let bits = random_bits(seed * 7 + n as u64, len);
            for family in [Family::One, Family::TwoPlain, Family::TwoErasure] {
                let formula = formula_report(family, len).unwrap();
                let measured = empirical_for(&family.build(&bits));
                let gate_mismatches: Vec<_> = compare_reports(&formula, &measured)
                    .into_iter()
                    .filter(|m| !m.column.starts_with("final_"))
                    .collect();
                assert!(gate_mismatches.is_empty(), "{family} n={n}: {gate_mismatches:?}");
            }
        }
    }
}

#[test]
fn closed_form_spot_values() {
    let r = formula_report(Family::TwoErasure, 8).unwrap();
    assert_eq!(r.count(GateKind::H), 7);
    assert_eq!(r.count(GateKind::Cswap), 11);
    assert_eq!(r.count(GateKind::Cnot), 22);
    assert_eq!(r.count(GateKind::Ccnot), 11);
    assert_eq!(formula_report(Family::TwoPlain, 4).unwrap().count(GateKind::Cswap), 4);
    assert_eq!(family3_depth_bound(3), 9);
    assert!(matches!(formula_report(Family::TwoPlain, 6), Err(ResourceError::NotPowerOfTwo(6))));
}

#[test]
fn measured_qubit_tallies_add_up() {
    for n in 1..=5 {
        let len = 1 << n;
        let bits = random_bits(n as u64, len);
        for family in [Family::One, Family::TwoPlain, Family::TwoErasure, Family::Three] {
            let r = empirical_for(&family.build(&bits));
            let (s, a, t) = (r.final_state_qubits.unwrap(), r.final_ancilla_qubits.unwrap(), r.final_total_qubits.unwrap());
            assert_eq!(s + a, t, "{family} n={n}");
            assert!(r.peak_total_qubits.unwrap() >= t);
        }
        // The tree keeps n address qubits and one data qubit; everything else
        // of the 2N - 1 qubits is discarded.
        let plain = empirical_for(&Family::TwoPlain.build(&bits));
        assert_eq!(plain.final_state_qubits, Some(n + 1));
        assert_eq!(plain.final_total_qubits, Some(2 * len - 1));
        assert_eq!(plain.final_ancilla_qubits, Some(2 * len - 2 - n));
        let erased = empirical_for(&Family::TwoErasure.build(&bits));
        assert!(erased.peak_total_qubits.unwrap() >= n);
    }
}

#[test]
fn geometric_series_of_tree_levels() {
    for n in 1..=20u32 {
        let nn = 1u64 << n;
        let sum: u64 = (1..=n).map(|k| nn >> (k - 1)).sum();
        assert_eq!(sum, 2 * nn - 2);
    }
}

#[test]
fn compression_operating_point() {
    let l = entropy_l(0.03).unwrap();
    assert!((0.19..=0.21).contains(&l));
    let plan = savings(0.03, 100).unwrap();
    assert_eq!((plan.compressed_len, plan.savings), (20, 80));
    assert_eq!(entropy_l(0.5).unwrap(), 1.0);
    assert_eq!(entropy_l(0.0).unwrap(), 0.0);
    assert_eq!(entropy_l(1.0).unwrap(), 0.0);
    assert!(entropy_l(1.5).is_err());
    assert!(entropy_l(-0.1).is_err());
}

#[test]
fn entropy_is_increasing_to_one_half_and_symmetric() {
    let grid: Vec<f64> = (0..=500).map(|i| i as f64 / 1000.0).collect();
    for w in grid.windows(2) {
        assert!(entropy_l(w[1]).unwrap() > entropy_l(w[0]).unwrap(), "{w:?}");
    }
    for &p in &grid {
        assert!((entropy_l(p).unwrap() - entropy_l(1.0 - p).unwrap()).abs() < 1e-15);
    }
}

#[test]
fn family2_serialized_depth_grows_faster_than_linearly() {
    let rows = resources::depth_scaling_table(Family::TwoPlain, 1..=6);
    let d: Vec<usize> = rows.iter().map(|r| r.serialized_depth).collect();
    let steps: Vec<usize> = d.windows(2).map(|w| w[1] - w[0]).collect();
    assert!(steps.windows(2).all(|w| w[1] > w[0]), "{d:?}");
    for r in resources::depth_scaling_table(Family::Three, 1..=6) {
        assert!(r.slice_depth <= r.formula);
        assert!(r.slice_depth <= r.formula_with_mirror.unwrap());
    }
}

proptest! {
    #[test]
    fn savings_stay_in_range(p in 0.0f64..=1.0, n in 1usize..2000) {
        let plan = savings(p, n).unwrap();
        let l = entropy_l(p).unwrap();
        prop_assert!((0.0..=1.0).contains(&l));
        prop_assert!(plan.compressed_len <= n);
        prop_assert_eq!(plan.compressed_len + plan.savings, n);
        prop_assert!(plan.compressed_len as f64 >= l * n as f64 - 1e-9);
    }
}
