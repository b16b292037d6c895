use proptest::prelude::*;

use bitload::ir::{parse, to_text, ViolationReason};
use bitload::{Circuit, Family, Gate, Role};

fn gate_from(pick: u8, q: &[usize], bit: bool) -> Gate {
    match pick % 11 {
        0 => Gate::X(q[0]),
        1 => Gate::H(q[0]),
        2 => Gate::S(q[0]),
        3 => Gate::Sdg(q[0]),
        4 => Gate::Cnot(q[0], q[1]),
        5 => Gate::Ccnot(q[0], q[1], q[2]),
        6 => Gate::Swap(q[0], q[1]),
        7 => Gate::Cswap(q[0], q[1], q[2]),
        8 => Gate::Cs(q[0], q[1]),
        9 => Gate::Csdg(q[0], q[1]),
        _ => Gate::Clx(bit, q[0]),
    }
}

fn circuits() -> impl Strategy<Value = Circuit> {
    let qubits: Vec<usize> = (0..7).collect();
    (
        prop::collection::vec((any::<u8>(), prop::sample::subsequence(qubits, 3).prop_shuffle(), any::<bool>()), 0..40),
        prop::collection::vec(0u8..4, 7),
        prop::collection::vec(any::<bool>(), 7),
    )
        .prop_map(|(gates, roles, pooled)| {
            let mut c = Circuit::new(7);
            for (p, q, b) in gates {
                c.push_asap(gate_from(p, &q, b));
            }
            for (q, r) in roles.iter().enumerate() {
                c.set_role(q, [Role::Data, Role::Address, Role::Ancilla, Role::Discarded][*r as usize]);
            }
            for (q, &p) in pooled.iter().enumerate() {
                if p {
                    c.release(q);
                }
            }
            c
        })
}

proptest! {
    #[test]
    fn text_round_trips(c in circuits()) {
        let text = to_text(&c);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(to_text(&back), text);
    }
}

#[test]
fn builder_output_round_trips() {
    for family in [Family::One, Family::TwoPlain, Family::TwoErasure, Family::Three] {
        let c = family.build(&"0110100111010010".parse().unwrap()).circuit;
        assert_eq!(parse(&to_text(&c)).unwrap(), c);
    }
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let c = parse("# header\nqubits 3  # three\n\nH 0\n---\nCSWAP 0 1 2 # swap\n").unwrap();
    assert_eq!(c.num_qubits(), 3);
    assert_eq!(c.slices().len(), 2);
    assert_eq!(c.slices()[1].gates, vec![Gate::Cswap(0, 1, 2)]);
}

#[test]
fn parse_errors_name_the_line() {
    for (text, line) in [
        ("H 0\n", 1),
        ("qubits 2\nH 5\n", 2),
        ("qubits 2\nFOO 0\n", 2),
        ("qubits 2\nCX 0\n", 2),
        ("qubits 2\nCLX 2 0\n", 2),
        ("qubits 3\nH 0\nrole address 1\n", 3),
    ] {
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, line, "{text:?}: {e}");
    }
}

#[test]
fn overlapping_gates_in_a_slice_are_reported() {
    let c = parse("qubits 4\nCSWAP 0 1 2\nX 1\n").unwrap();
    let v = c.validate();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].slice, 0);
    assert!(matches!(v[0].reason, ViolationReason::SharedQubit { qubit: 1, other: 0 }));
    assert!(parse("qubits 4\nCSWAP 0 1 2\nH 3\n").unwrap().is_valid());
}
