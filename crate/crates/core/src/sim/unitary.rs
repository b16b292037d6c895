use num_complex::Complex64;

use super::state::{run_on, BasisLabel, StateVector};
use super::SimError;
use crate::ir::{Circuit, Gate};

/// Largest register accepted by [`unitary_of`].
pub const MAX_UNITARY_QUBITS: usize = 12;

/// Exact unitary as a list of columns; column `j` is the circuit applied to
/// basis state `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitary {
    num_qubits: usize,
    columns: Vec<StateVector>,
}

impl Unitary {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn column(&self, j: usize) -> &StateVector {
        &self.columns[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.columns[col].amplitude(row as u128)
    }

    /// Row-major dense matrix.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|r| (0..self.dim()).map(|c| self.entry(r, c)).collect()).collect()
    }

    /// True when every entry is 0, 1 or -1 (no irrational factor).
    pub fn is_integer(&self) -> bool {
        self.columns.iter().all(|c| {
            c.exponent() == 0 && c.terms().iter().all(|(_, g)| g.im == 0 && g.re.abs() <= 1)
        })
    }
}

/// Unitary of a circuit with at most [`MAX_UNITARY_QUBITS`] qubits.
pub fn unitary_of(circuit: &Circuit) -> Result<Unitary, SimError> {
    let k = circuit.num_qubits();
    if k > MAX_UNITARY_QUBITS {
        return Err(SimError::TooManyQubits { num_qubits: k, max: MAX_UNITARY_QUBITS });
    }
    let columns = (0..1u128 << k)
        .map(|j| run_on(circuit, StateVector::basis(&BasisLabel::from_index(j, k))?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Unitary { num_qubits: k, columns })
}

/// Unitary of a single gate acting on a `k`-qubit register.
pub fn gate_unitary(gate: Gate, k: usize) -> Result<Unitary, SimError> {
    let mut c = Circuit::new(k);
    c.push_slice(vec![gate]);
    unitary_of(&c)
}

/// Outcome of comparing two unitaries.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitaryComparison {
    /// Entry-wise identical.
    Exact,
    /// `a = phase · b` for one unit-modulus `phase != 1`.
    GlobalPhase { phase: Complex64 },
    /// Neither. `entries` lists `(row, col, a, b)` for every differing entry.
    Differs { max_deviation: f64, entries: Vec<(usize, usize, Complex64, Complex64)> },
}

impl UnitaryComparison {
    pub fn is_equivalent(&self) -> bool {
        !matches!(self, UnitaryComparison::Differs { .. })
    }
}

const TOL: f64 = 1e-12;

pub fn compare_unitaries(a: &Unitary, b: &Unitary) -> Result<UnitaryComparison, SimError> {
    if a.num_qubits != b.num_qubits {
        return Err(SimError::DimensionMismatch { expected: a.num_qubits, got: b.num_qubits });
    }
    if a == b {
        return Ok(UnitaryComparison::Exact);
    }
    let (da, db) = (a.to_dense(), b.to_dense());
    let dim = a.dim();
    let mut anchor = None;
    'find: for r in 0..dim {
        for c in 0..dim {
            if db[r][c].norm() > TOL {
                anchor = Some(da[r][c] / db[r][c]);
                break 'find;
            }
        }
    }
    if let Some(phase) = anchor.filter(|p| (p.norm() - 1.0).abs() < TOL) {
        let same = (0..dim).all(|r| (0..dim).all(|c| (da[r][c] - phase * db[r][c]).norm() < TOL));
        if same {
            return Ok(UnitaryComparison::GlobalPhase { phase });
        }
    }
    let mut entries = Vec::new();
    let mut max_deviation: f64 = 0.0;
    for r in 0..dim {
        for c in 0..dim {
            let d = (da[r][c] - db[r][c]).norm();
            if d > TOL {
                entries.push((r, c, da[r][c], db[r][c]));
                max_deviation = max_deviation.max(d);
            }
        }
    }
    Ok(UnitaryComparison::Differs { max_deviation, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_is_identity() {
        let u = unitary_of(&Circuit::new(2)).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == c { 1.0 } else { 0.0 };
                assert_eq!(u.entry(r, c), Complex64::new(want, 0.0));
            }
        }
        assert!(u.is_integer());
    }

    #[test]
    fn swap_from_three_cnots() {
        let mut c = Circuit::new(2);
        for g in [Gate::Cnot(0, 1), Gate::Cnot(1, 0), Gate::Cnot(0, 1)] {
            c.push_slice(vec![g]);
        }
        let u = unitary_of(&c).unwrap();
        let swap = gate_unitary(Gate::Swap(0, 1), 2).unwrap();
        assert_eq!(compare_unitaries(&u, &swap).unwrap(), UnitaryComparison::Exact);
    }

    #[test]
    fn global_phase_detected() {
        let mut c = Circuit::new(1);
        for g in [Gate::S(0), Gate::X(0), Gate::S(0), Gate::X(0)] {
            c.push_slice(vec![g]);
        }
        // S X S X = i·I
        let u = unitary_of(&c).unwrap();
        let id = unitary_of(&Circuit::new(1)).unwrap();
        match compare_unitaries(&u, &id).unwrap() {
            UnitaryComparison::GlobalPhase { phase } => assert!((phase - Complex64::new(0.0, 1.0)).norm() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn differences_listed() {
        let z = gate_unitary(Gate::S(0), 1).unwrap();
        let id = unitary_of(&Circuit::new(1)).unwrap();
        match compare_unitaries(&z, &id).unwrap() {
            UnitaryComparison::Differs { entries, .. } => assert_eq!(entries.len(), 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn size_guard() {
        assert!(matches!(unitary_of(&Circuit::new(13)), Err(SimError::TooManyQubits { .. })));
    }
}
