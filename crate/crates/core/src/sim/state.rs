use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::gaussian::{scale, Gaussian};
use super::SimError;
use crate::ir::{Circuit, Gate, Qubit};

/// Largest register the sparse simulator can index.
pub const MAX_QUBITS: usize = 128;

/// A computational basis label. `bits[q]` is the value of qubit `q`; qubit 0
/// is the leftmost (most significant) character when printed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    pub bits: Vec<bool>,
}

impl BasisLabel {
    pub fn new(bits: Vec<bool>) -> Self {
        BasisLabel { bits }
    }

    pub fn zeros(k: usize) -> Self {
        BasisLabel { bits: vec![false; k] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Packs the label into an index, qubit 0 in the highest position.
    pub fn to_index(&self) -> u128 {
        self.bits.iter().fold(0u128, |acc, &b| (acc << 1) | u128::from(b))
    }

    pub fn from_index(index: u128, k: usize) -> Self {
        BasisLabel { bits: (0..k).map(|q| (index >> (k - 1 - q)) & 1 == 1).collect() }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BasisLabel {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(SimError::BadLabel(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BasisLabel::new)
    }
}

/// Pure state over `K` qubits stored sparsely and exactly.
///
/// Every amplitude is `c · 2^(-exp/2)` with `c` a Gaussian integer and one
/// exponent shared by the whole state. The gate set (Clifford gates, Toffoli,
/// controlled S) keeps amplitudes in this ring, so simulation is exact. After
/// each gate the representation is reduced to the smallest exponent, which
/// makes equal states compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    num_qubits: usize,
    exp: u32,
    amps: HashMap<u128, Gaussian>,
}

impl StateVector {
    pub fn basis(label: &BasisLabel) -> Result<Self, SimError> {
        check_width(label.len())?;
        let mut amps = HashMap::new();
        amps.insert(label.to_index(), Gaussian::ONE);
        Ok(StateVector { num_qubits: label.len(), exp: 0, amps })
    }

    pub fn zero(k: usize) -> Result<Self, SimError> {
        StateVector::basis(&BasisLabel::zeros(k))
    }

    /// State `Σ c_j |j> · 2^(-exp/2)`. Normalisation is the caller's
    /// responsibility; see [`StateVector::norm_sqr`].
    pub fn from_terms(
        num_qubits: usize,
        exp: u32,
        terms: impl IntoIterator<Item = (u128, Gaussian)>,
    ) -> Result<Self, SimError> {
        check_width(num_qubits)?;
        let mut amps: HashMap<u128, Gaussian> = HashMap::new();
        for (k, c) in terms {
            if num_qubits < 128 && k >> num_qubits != 0 {
                return Err(SimError::IndexOutOfRange { index: k, num_qubits });
            }
            let slot = amps.entry(k).or_default();
            *slot = slot.checked_add(c).ok_or(SimError::AmplitudeOverflow)?;
        }
        let mut s = StateVector { num_qubits, exp, amps };
        s.reduce();
        Ok(s)
    }

    /// Equal superposition over the given distinct indices, whose count must
    /// be a power of two.
    pub fn uniform(num_qubits: usize, indices: impl IntoIterator<Item = u128>) -> Result<Self, SimError> {
        let indices: Vec<u128> = indices.into_iter().collect();
        let count = indices.len();
        if !count.is_power_of_two() {
            return Err(SimError::NotNormalizable(count));
        }
        let exp = count.trailing_zeros();
        StateVector::from_terms(num_qubits, exp, indices.into_iter().map(|k| (k, Gaussian::ONE)))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Shared exponent: amplitudes are `c · 2^(-exp/2)`.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// Exact coefficient at `index` (zero if absent).
    pub fn coefficient(&self, index: u128) -> Gaussian {
        self.amps.get(&index).copied().unwrap_or_default()
    }

    pub fn amplitude(&self, index: u128) -> Complex64 {
        self.coefficient(index).scaled(self.exp)
    }

    pub fn amplitude_of(&self, label: &BasisLabel) -> Complex64 {
        self.amplitude(label.to_index())
    }

    /// Number of stored nonzero amplitudes.
    pub fn support_size(&self) -> usize {
        self.amps.len()
    }

    /// Nonzero terms sorted by index.
    pub fn terms(&self) -> Vec<(u128, Gaussian)> {
        let mut v: Vec<_> = self.amps.iter().map(|(&k, &c)| (k, c)).collect();
        v.sort_unstable_by_key(|&(k, _)| k);
        v
    }

    pub(crate) fn raw(&self) -> &HashMap<u128, Gaussian> {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        weight(self.amps.values().copied(), self.exp)
    }

    /// Exact unit-norm test, `None` when the check itself would overflow.
    pub fn is_normalized_exact(&self) -> Option<bool> {
        let mut total: i128 = 0;
        for c in self.amps.values() {
            total = total.checked_add(c.norm_sqr()?)?;
        }
        let target = 1i128.checked_shl(self.exp).filter(|_| self.exp < 127)?;
        Some(total == target)
    }

    /// Basis index of the single nonzero amplitude, if the state is a basis
    /// state with amplitude exactly 1.
    pub fn as_basis(&self) -> Option<BasisLabel> {
        match (self.amps.len(), self.amps.iter().next()) {
            (1, Some((&k, &c))) if self.exp == 0 && c == Gaussian::ONE => {
                Some(BasisLabel::from_index(k, self.num_qubits))
            }
            _ => None,
        }
    }

    /// Dense amplitude vector, index 0 first. Fails above 24 qubits.
    pub fn to_dense(&self) -> Result<Vec<Complex64>, SimError> {
        if self.num_qubits > 24 {
            return Err(SimError::TooManyQubits { num_qubits: self.num_qubits, max: 24 });
        }
        let mut v = vec![Complex64::new(0.0, 0.0); 1usize << self.num_qubits];
        for (&k, &c) in &self.amps {
            v[k as usize] = c.scaled(self.exp);
        }
        Ok(v)
    }

    /// `self ⊗ other`; qubits of `self` come first.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector, SimError> {
        let k = self.num_qubits + other.num_qubits;
        check_width(k)?;
        let mut terms = Vec::with_capacity(self.amps.len() * other.amps.len());
        for (&ka, &ca) in &self.amps {
            for (&kb, &cb) in &other.amps {
                let key = if other.num_qubits == 0 { ka } else { (ka << other.num_qubits) | kb };
                terms.push((key, ca.checked_mul(cb).ok_or(SimError::AmplitudeOverflow)?));
            }
        }
        StateVector::from_terms(k, self.exp + other.exp, terms)
    }

    /// One line per nonzero amplitude, `bitstring re im`, sorted by bitstring.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.terms() {
            let a = c.scaled(self.exp);
            out.push_str(&format!(
                "{} {} {}\n",
                BasisLabel::from_index(k, self.num_qubits),
                a.re + 0.0,
                a.im + 0.0
            ));
        }
        out
    }

    /// Probability distribution of the listed qubits, in their given order,
    /// as `(label, probability)` sorted by label.
    pub fn marginal(&self, qubits: &[Qubit]) -> Result<Vec<(BasisLabel, f64)>, SimError> {
        self.check_qubits(qubits)?;
        let mut acc: HashMap<u128, Vec<Gaussian>> = HashMap::new();
        for (&k, &c) in &self.amps {
            acc.entry(self.extract(k, qubits)).or_default().push(c);
        }
        let mut v: Vec<_> = acc
            .into_iter()
            .map(|(k, cs)| (BasisLabel::from_index(k, qubits.len()), weight(cs.into_iter(), self.exp)))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(v)
    }

    pub(crate) fn check_qubits(&self, qubits: &[Qubit]) -> Result<(), SimError> {
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(SimError::QubitOutOfRange { qubit: q, num_qubits: self.num_qubits });
            }
            if qubits[..i].contains(&q) {
                return Err(SimError::RepeatedQubit(q));
            }
        }
        Ok(())
    }

    /// Bits of `key` at `qubits`, packed with `qubits[0]` most significant.
    pub(crate) fn extract(&self, key: u128, qubits: &[Qubit]) -> u128 {
        qubits.iter().fold(0u128, |acc, &q| (acc << 1) | ((key >> self.shift(q)) & 1))
    }

    fn shift(&self, q: Qubit) -> usize {
        self.num_qubits - 1 - q
    }

    fn mask(&self, q: Qubit) -> u128 {
        1u128 << self.shift(q)
    }

    /// Applies one gate in place.
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimError> {
        self.check_qubits(&gate.support())?;
        match *gate {
            Gate::H(q) => self.hadamard(q)?,
            Gate::X(q) => {
                let m = self.mask(q);
                self.permute(|k| k ^ m);
            }
            Gate::Clx(bit, q) => {
                if bit {
                    let m = self.mask(q);
                    self.permute(|k| k ^ m);
                }
            }
            Gate::Cnot(c, t) => {
                let (mc, mt) = (self.mask(c), self.mask(t));
                self.permute(|k| if k & mc != 0 { k ^ mt } else { k });
            }
            Gate::Ccnot(a, b, t) => {
                let (mc, mt) = (self.mask(a) | self.mask(b), self.mask(t));
                self.permute(|k| if k & mc == mc { k ^ mt } else { k });
            }
            Gate::Swap(a, b) => {
                let (ma, mb) = (self.mask(a), self.mask(b));
                self.permute(|k| swap_bits(k, ma, mb));
            }
            Gate::Cswap(c, a, b) => {
                let (mc, ma, mb) = (self.mask(c), self.mask(a), self.mask(b));
                self.permute(|k| if k & mc != 0 { swap_bits(k, ma, mb) } else { k });
            }
            Gate::S(q) => self.phase(self.mask(q), Gaussian::mul_i)?,
            Gate::Sdg(q) => self.phase(self.mask(q), Gaussian::mul_neg_i)?,
            Gate::Cs(c, t) => self.phase(self.mask(c) | self.mask(t), Gaussian::mul_i)?,
            Gate::Csdg(c, t) => self.phase(self.mask(c) | self.mask(t), Gaussian::mul_neg_i)?,
        }
        Ok(())
    }

    fn permute(&mut self, f: impl Fn(u128) -> u128) {
        self.amps = self.amps.drain().map(|(k, c)| (f(k), c)).collect();
    }

    fn phase(&mut self, mask: u128, f: impl Fn(Gaussian) -> Option<Gaussian>) -> Result<(), SimError> {
        for (&k, c) in self.amps.iter_mut() {
            if k & mask == mask {
                *c = f(*c).ok_or(SimError::AmplitudeOverflow)?;
            }
        }
        Ok(())
    }

    fn hadamard(&mut self, q: Qubit) -> Result<(), SimError> {
        let m = self.mask(q);
        let mut out: HashMap<u128, Gaussian> = HashMap::with_capacity(self.amps.len() * 2);
        for (&k, &c) in &self.amps {
            let low = k & !m;
            let high = k | m;
            let lo = out.entry(low).or_default();
            *lo = lo.checked_add(c).ok_or(SimError::AmplitudeOverflow)?;
            let hi = out.entry(high).or_default();
            *hi = if k & m == 0 { hi.checked_add(c) } else { hi.checked_sub(c) }.ok_or(SimError::AmplitudeOverflow)?;
        }
        self.amps = out;
        self.exp += 1;
        self.reduce();
        Ok(())
    }

    /// Drops zeros and lowers the exponent while all coefficients are even.
    fn reduce(&mut self) {
        self.amps.retain(|_, c| !c.is_zero());
        while self.exp >= 2 && !self.amps.is_empty() && self.amps.values().all(|c| c.is_even()) {
            for c in self.amps.values_mut() {
                *c = c.half();
            }
            self.exp -= 2;
        }
    }
}

/// `Σ |c|² · 2^(-exp)`, summed in integers when that cannot overflow so
/// that dyadic probabilities come out exact.
fn weight(coeffs: impl Iterator<Item = Gaussian> + Clone, exp: u32) -> f64 {
    let exact = coeffs.clone().try_fold(0i128, |acc, c| acc.checked_add(c.norm_sqr()?));
    match exact {
        Some(total) => total as f64 * 2f64.powi(-(exp as i32)),
        None => {
            let s = scale(exp);
            coeffs.map(|c| c.scaled(0).norm_sqr()).sum::<f64>() * s * s
        }
    }
}

fn swap_bits(k: u128, ma: u128, mb: u128) -> u128 {
    if ((k & ma) != 0) != ((k & mb) != 0) {
        k ^ ma ^ mb
    } else {
        k
    }
}

fn check_width(k: usize) -> Result<(), SimError> {
    if k > MAX_QUBITS {
        Err(SimError::TooManyQubits { num_qubits: k, max: MAX_QUBITS })
    } else {
        Ok(())
    }
}

/// Runs `circuit` on a basis input.
pub fn run(circuit: &Circuit, initial: &BasisLabel) -> Result<StateVector, SimError> {
    if initial.len() != circuit.num_qubits() {
        return Err(SimError::DimensionMismatch { expected: circuit.num_qubits(), got: initial.len() });
    }
    run_on(circuit, StateVector::basis(initial)?)
}

/// Runs `circuit` on an arbitrary input state.
pub fn run_on(circuit: &Circuit, mut state: StateVector) -> Result<StateVector, SimError> {
    if state.num_qubits != circuit.num_qubits() {
        return Err(SimError::DimensionMismatch { expected: circuit.num_qubits(), got: state.num_qubits });
    }
    if let Some(v) = circuit.validate().into_iter().next() {
        return Err(SimError::InvalidCircuit(v.to_string()));
    }
    for gate in circuit.gates() {
        state.apply(gate)?;
    }
    Ok(state)
}

/// Runs `circuit` from the all-zero input.
pub fn run_zero(circuit: &Circuit) -> Result<StateVector, SimError> {
    run(circuit, &BasisLabel::zeros(circuit.num_qubits()))
}

/// Runs a circuit of basis permutations (X, CX, CCX, SWAP, CSWAP, CLX) on a
/// basis input, one bit per qubit and without a width limit. Fails on any
/// other gate.
pub fn run_permutation(circuit: &Circuit, initial: &BasisLabel) -> Result<BasisLabel, SimError> {
    if initial.len() != circuit.num_qubits() {
        return Err(SimError::DimensionMismatch { expected: circuit.num_qubits(), got: initial.len() });
    }
    if let Some(v) = circuit.validate().into_iter().next() {
        return Err(SimError::InvalidCircuit(v.to_string()));
    }
    let mut b = initial.bits.clone();
    for gate in circuit.gates() {
        match *gate {
            Gate::X(q) | Gate::Clx(true, q) => b[q] ^= true,
            Gate::Clx(false, _) => {}
            Gate::Cnot(c, t) => b[t] ^= b[c],
            Gate::Ccnot(x, y, t) => b[t] ^= b[x] && b[y],
            Gate::Swap(x, y) => b.swap(x, y),
            Gate::Cswap(c, x, y) => {
                if b[c] {
                    b.swap(x, y)
                }
            }
            other => return Err(SimError::InvalidCircuit(format!("{other} is not a basis permutation"))),
        }
    }
    Ok(BasisLabel::new(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> BasisLabel {
        s.parse().unwrap()
    }

    fn single(n: usize, gates: Vec<Gate>) -> Circuit {
        let mut c = Circuit::new(n);
        for g in gates {
            c.push_slice(vec![g]);
        }
        c
    }

    #[test]
    fn classical_flip() {
        let off = run(&single(1, vec![Gate::Clx(false, 0)]), &label("0")).unwrap();
        assert_eq!(off.as_basis(), Some(label("0")));
        let on = run(&single(1, vec![Gate::Clx(true, 0)]), &label("0")).unwrap();
        assert_eq!(on.as_basis(), Some(label("1")));
    }

    #[test]
    fn hadamard_then_cswap() {
        let c = single(3, vec![Gate::H(0), Gate::Cswap(0, 1, 2)]);
        let s = run(&c, &label("001")).unwrap();
        let want = StateVector::uniform(3, [0b001, 0b110]).unwrap();
        assert_eq!(s, want);
        assert_eq!(s.dump(), format!("001 {} 0\n110 {} 0\n", 0.5f64.sqrt(), 0.5f64.sqrt()));
    }

    #[test]
    fn hadamard_twice_is_identity_exactly() {
        let c = single(1, vec![Gate::H(0), Gate::H(0)]);
        let s = run(&c, &label("1")).unwrap();
        assert_eq!(s.as_basis(), Some(label("1")));
        assert_eq!(s.exponent(), 0);
    }

    #[test]
    fn phases() {
        let c = single(2, vec![Gate::H(0), Gate::H(1), Gate::Cs(0, 1), Gate::Cs(0, 1)]);
        let s = run(&c, &label("00")).unwrap();
        assert_eq!(s.coefficient(0b11), Gaussian::new(-1, 0));
        assert_eq!(s.is_normalized_exact(), Some(true));
        let c = single(1, vec![Gate::S(0), Gate::Sdg(0)]);
        assert_eq!(run(&c, &label("1")).unwrap().as_basis(), Some(label("1")));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let c = Circuit::new(2);
        assert!(matches!(run(&c, &label("0")), Err(SimError::DimensionMismatch { .. })));
    }

    #[test]
    fn tensor_and_marginal() {
        let a = StateVector::uniform(1, [0, 1]).unwrap();
        let b = StateVector::basis(&label("10")).unwrap();
        let t = a.tensor(&b).unwrap();
        assert_eq!(t, StateVector::uniform(3, [0b010, 0b110]).unwrap());
        let m = t.marginal(&[1, 0]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].0, label("10"));
        assert!((m[0].1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn label_round_trip() {
        let l = label("0110");
        assert_eq!(l.to_index(), 6);
        assert_eq!(BasisLabel::from_index(6, 4), l);
        assert_eq!(l.to_string(), "0110");
        assert!("01a".parse::<BasisLabel>().is_err());
    }
}
