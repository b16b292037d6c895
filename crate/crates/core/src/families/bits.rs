use std::fmt;
use std::str::FromStr;

use super::FamilyError;

/// Classical input bits, `bits[i]` is bit `b_i`.
///
/// An optional word size records an `N × P` structure; it does not change
/// the loaded layout, which is always the concatenation of the words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<bool>,
    word_size: Option<usize>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Result<Self, FamilyError> {
        if bits.is_empty() {
            return Err(FamilyError::Empty);
        }
        Ok(BitVector { bits, word_size: None })
    }

    /// Unpacks bytes most-significant bit first.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FamilyError> {
        let bits = bytes.iter().flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1)).collect();
        BitVector::new(bits)
    }

    /// Low `len` bits of `value`, most significant first.
    pub fn from_value(value: u64, len: usize) -> Result<Self, FamilyError> {
        BitVector::new((0..len).rev().map(|i| i < 64 && (value >> i) & 1 == 1).collect())
    }

    pub fn with_word_size(mut self, p: usize) -> Result<Self, FamilyError> {
        if p == 0 || !self.bits.len().is_multiple_of(p) {
            return Err(FamilyError::WordSize { len: self.bits.len(), word: p });
        }
        self.word_size = Some(p);
        Ok(self)
    }

    pub fn word_size(&self) -> Option<usize> {
        self.word_size
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Address width `n = ceil(log2(len))`.
    pub fn address_bits(&self) -> usize {
        self.bits.len().next_power_of_two().trailing_zeros() as usize
    }

    /// Bits zero-padded to the next power of two.
    pub fn padded(&self) -> Vec<bool> {
        let mut v = self.bits.clone();
        v.resize(self.bits.len().next_power_of_two(), false);
        v
    }

    /// Number of zeros appended by [`BitVector::padded`].
    pub fn padding(&self) -> usize {
        self.bits.len().next_power_of_two() - self.bits.len()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

impl FromStr for BitVector {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let bits = s
            .trim()
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(FamilyError::BadBit { ch: c, pos: i }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        BitVector::new(bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_pad() {
        let b: BitVector = "101".parse().unwrap();
        assert_eq!(b.address_bits(), 2);
        assert_eq!(b.padded(), vec![true, false, true, false]);
        assert_eq!(b.padding(), 1);
        assert_eq!(b.to_string(), "101");
        assert!("".parse::<BitVector>().is_err());
        assert!(matches!("10x".parse::<BitVector>(), Err(FamilyError::BadBit { ch: 'x', pos: 2 })));
    }

    #[test]
    fn bytes_are_msb_first() {
        let b = BitVector::from_bytes(&[0b1000_0001]).unwrap();
        assert_eq!(b.to_string(), "10000001");
        assert_eq!(BitVector::from_value(6, 4).unwrap().to_string(), "0110");
    }

    #[test]
    fn single_bit_needs_no_address() {
        let b: BitVector = "1".parse().unwrap();
        assert_eq!(b.address_bits(), 0);
        assert_eq!(b.padded(), vec![true]);
    }

    #[test]
    fn word_size_checked() {
        let b: BitVector = "101100".parse().unwrap();
        assert!(b.clone().with_word_size(3).is_ok());
        assert!(b.with_word_size(4).is_err());
    }
}
