use std::collections::HashMap;

use num_complex::Complex64;

use super::gaussian::{scale, Gaussian};
use super::state::StateVector;
use super::SimError;
use crate::ir::Qubit;

/// Exact inner product `<a|b>`, returned as a float.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64, SimError> {
    if a.num_qubits() != b.num_qubits() {
        return Err(SimError::DimensionMismatch { expected: a.num_qubits(), got: b.num_qubits() });
    }
    let (small, large, swapped) = if a.support_size() <= b.support_size() { (a, b, false) } else { (b, a, true) };
    let mut sum = Gaussian::ZERO;
    for (&k, &c) in small.raw() {
        if let Some(&d) = large.raw().get(&k) {
            let term = c.conj().checked_mul(d).ok_or(SimError::AmplitudeOverflow)?;
            sum = sum.checked_add(term).ok_or(SimError::AmplitudeOverflow)?;
        }
    }
    if swapped {
        sum = sum.conj();
    }
    Ok(sum.scaled(a.exponent() + b.exponent()))
}

/// `|<a|b>|`, clamped to `[0, 1]`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64, SimError> {
    Ok(inner_product(a, b)?.norm().min(1.0))
}

/// Splits each basis index into (bits in `subset`, bits outside).
fn split(state: &StateVector, subset: &[Qubit]) -> Vec<(u128, u128, Complex64)> {
    let rest: Vec<Qubit> = (0..state.num_qubits()).filter(|q| !subset.contains(q)).collect();
    let s = scale(state.exponent());
    state
        .raw()
        .iter()
        .map(|(&k, &c)| (state.extract(k, subset), state.extract(k, &rest), c.scaled(0) * s))
        .collect()
}

fn check_proper(state: &StateVector, subset: &[Qubit]) -> Result<(), SimError> {
    state.check_qubits(subset)?;
    if subset.is_empty() || subset.len() == state.num_qubits() {
        return Err(SimError::ImproperSubset);
    }
    Ok(())
}

/// `tr(ρ²)` of the reduced state on `subset`.
///
/// Grouping the amplitudes by the bits of one side gives vectors `v_g` with
/// `tr(ρ²) = Σ_{g,h} |<v_g|v_h>|²`; the side with fewer distinct groups is
/// used.
pub fn purity_of_subset(state: &StateVector, subset: &[Qubit]) -> Result<f64, SimError> {
    check_proper(state, subset)?;
    let parts = split(state, subset);
    let mut by_in: HashMap<u128, HashMap<u128, Complex64>> = HashMap::new();
    let mut by_out: HashMap<u128, HashMap<u128, Complex64>> = HashMap::new();
    for &(i, o, a) in &parts {
        by_in.entry(i).or_default().insert(o, a);
        by_out.entry(o).or_default().insert(i, a);
    }
    let groups = if by_in.len() <= by_out.len() { by_in } else { by_out };
    let mut keys: Vec<u128> = groups.keys().copied().collect();
    keys.sort_unstable();
    let vecs: Vec<&HashMap<u128, Complex64>> = keys.iter().map(|k| &groups[k]).collect();
    let mut total = 0.0;
    for (x, vx) in vecs.iter().enumerate() {
        for (y, vy) in vecs.iter().enumerate().skip(x) {
            let (small, large) = if vx.len() <= vy.len() { (vx, vy) } else { (vy, vx) };
            let ip: Complex64 = small
                .iter()
                .filter_map(|(k, a)| large.get(k).map(|b| a.conj() * b))
                .sum();
            total += if x == y { ip.norm_sqr() } else { 2.0 * ip.norm_sqr() };
        }
    }
    Ok(total)
}

/// `sqrt(<t|ρ|t>)` where `ρ` is the reduced state on `keep` (in the given
/// order) and `t` a pure target over `keep.len()` qubits. Equals `|<t|ψ>|`
/// when the kept qubits are unentangled from the rest and `t` matches.
pub fn retained_fidelity(state: &StateVector, keep: &[Qubit], target: &StateVector) -> Result<f64, SimError> {
    state.check_qubits(keep)?;
    if target.num_qubits() != keep.len() {
        return Err(SimError::DimensionMismatch { expected: keep.len(), got: target.num_qubits() });
    }
    let ts = scale(target.exponent());
    let mut overlaps: HashMap<u128, Complex64> = HashMap::new();
    for (i, o, a) in split(state, keep) {
        let t = target.raw().get(&i).map(|c| c.scaled(0) * ts).unwrap_or_default();
        *overlaps.entry(o).or_default() += t.conj() * a;
    }
    let p: f64 = overlaps.values().map(|z| z.norm_sqr()).sum();
    Ok(p.sqrt().min(1.0))
}

/// Bhattacharyya overlap `Σ sqrt(p_s q_s)` between the measurement
/// distribution of `keep` and that of `target`. Phase-blind.
pub fn basis_fidelity(state: &StateVector, keep: &[Qubit], target: &StateVector) -> Result<f64, SimError> {
    if target.num_qubits() != keep.len() {
        return Err(SimError::DimensionMismatch { expected: keep.len(), got: target.num_qubits() });
    }
    let p: HashMap<_, _> = state.marginal(keep)?.into_iter().collect();
    let all: Vec<Qubit> = (0..target.num_qubits()).collect();
    let mut total = 0.0;
    for (label, q) in target.marginal(&all)? {
        if let Some(pv) = p.get(&label) {
            total += (pv * q).sqrt();
        }
    }
    Ok(total.min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell() -> StateVector {
        StateVector::uniform(2, [0b00, 0b11]).unwrap()
    }

    #[test]
    fn fidelity_basics() {
        let zero = StateVector::zero(1).unwrap();
        let one = StateVector::basis(&"1".parse().unwrap()).unwrap();
        assert_eq!(fidelity(&zero, &zero).unwrap(), 1.0);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        let plus = StateVector::uniform(1, [0, 1]).unwrap();
        assert!((fidelity(&zero, &plus).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(fidelity(&zero, &bell()).is_err());
    }

    #[test]
    fn purity_values() {
        let prod = StateVector::basis(&"01".parse().unwrap()).unwrap();
        assert!((purity_of_subset(&prod, &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((purity_of_subset(&bell(), &[0]).unwrap() - 0.5).abs() < 1e-12);
        assert!((purity_of_subset(&bell(), &[1]).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(purity_of_subset(&bell(), &[]), Err(SimError::ImproperSubset)));
        assert!(matches!(purity_of_subset(&bell(), &[0, 1]), Err(SimError::ImproperSubset)));
    }

    #[test]
    fn purity_of_plus_times_bell() {
        let plus = StateVector::uniform(1, [0, 1]).unwrap();
        let s = plus.tensor(&bell()).unwrap();
        assert!((purity_of_subset(&s, &[0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((purity_of_subset(&s, &[0, 1]).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn retained_and_basis_fidelity() {
        let zero = StateVector::zero(1).unwrap();
        let plus = StateVector::uniform(1, [0, 1]).unwrap();
        // Bell state: each half is maximally mixed.
        let r = retained_fidelity(&bell(), &[0], &zero).unwrap();
        assert!((r - 0.5f64.sqrt()).abs() < 1e-12);
        let r = retained_fidelity(&bell(), &[0], &plus).unwrap();
        assert!((r - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((basis_fidelity(&bell(), &[0], &plus).unwrap() - 1.0).abs() < 1e-12);
        // Product state: retained fidelity is the ordinary overlap.
        let s = plus.tensor(&zero).unwrap();
        assert!((retained_fidelity(&s, &[0], &plus).unwrap() - 1.0).abs() < 1e-12);
    }
}
