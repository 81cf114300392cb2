//! Fixed-length bit strings for basis choices, measurement outcomes and
//! answer-table indexing.
//!
//! Two integer encodings of the same string appear throughout the crate and
//! must not be confused:
//!
//! * **table index** (little-endian): position 0 of the string is bit 0 of
//!   the integer. Answer tables and challenge enumerations use this order.
//! * **amplitude index** (big-endian): position 0 of the string is the
//!   *most* significant bit, matching the usual tensor-product layout where
//!   the first qubit is the leftmost factor. State vectors and dense
//!   operators use this order.
//!
//! [`BitString::index`] and [`BitString::amp_index`] convert to the two
//! encodings; they agree only on palindromic strings.

use std::fmt;

use crate::error::{Error, Result};

/// A bit string of fixed length `n`, with `n <= 24`.
///
/// Stored little-endian: string position `k` (0-based) is bit `k` of `bits`.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    n: usize,
    bits: u32,
}

pub const MAX_LEN: usize = 24;

impl BitString {
    /// Builds a string of length `n` from its little-endian integer form.
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n > MAX_LEN {
            return Err(Error::size(format!("bit string length {n} exceeds {MAX_LEN}")));
        }
        if n < 32 && bits >> n != 0 {
            return Err(Error::contract(format!(
                "value {bits:#x} does not fit in {n} bits"
            )));
        }
        Ok(BitString { n, bits })
    }

    pub fn zeros(n: usize) -> Self {
        BitString::new(n, 0).expect("length within bounds")
    }

    pub fn ones(n: usize) -> Self {
        BitString::new(n, ((1u64 << n) - 1) as u32).expect("length within bounds")
    }

    /// Parses a string of `'0'`/`'1'` characters; the first character is
    /// position 0.
    pub fn parse(s: &str) -> Result<Self> {
        if s.len() > MAX_LEN {
            return Err(Error::size(format!("bit string length {} exceeds {MAX_LEN}", s.len())));
        }
        let mut bits = 0u32;
        for (k, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => {
                    return Err(Error::input(format!(
                        "bit string may contain only '0' and '1', found {ch:?}"
                    )))
                }
            }
        }
        Ok(BitString { n: s.len(), bits })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The bit at string position `k` (0-based).
    pub fn bit(&self, k: usize) -> bool {
        debug_assert!(k < self.n);
        self.bits >> k & 1 == 1
    }

    /// Little-endian integer form, used to index answer tables and challenge
    /// enumerations.
    pub fn index(&self) -> usize {
        self.bits as usize
    }

    /// Inverse of [`BitString::index`].
    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        BitString::new(n, index as u32)
    }

    /// Big-endian integer form: position 0 becomes the most significant of
    /// the `n` bits. This is the row index of the matching computational
    /// basis vector in a `2^n`-dimensional state vector.
    pub fn amp_index(&self) -> usize {
        (self.bits.reverse_bits() >> (32 - self.n)) as usize
    }

    pub fn from_amp_index(n: usize, amp: usize) -> Result<Self> {
        let b = BitString::new(n, amp as u32)?;
        Ok(BitString {
            n,
            bits: b.bits.reverse_bits() >> (32 - n),
        })
    }

    /// Hamming weight.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// XOR of all bits.
    pub fn parity(&self) -> bool {
        self.weight() & 1 == 1
    }

    /// Inner product modulo 2.
    pub fn dot(&self, other: &BitString) -> bool {
        debug_assert_eq!(self.n, other.n);
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    pub fn and(&self, other: &BitString) -> BitString {
        debug_assert_eq!(self.n, other.n);
        BitString { n: self.n, bits: self.bits & other.bits }
    }

    pub fn xor(&self, other: &BitString) -> BitString {
        debug_assert_eq!(self.n, other.n);
        BitString { n: self.n, bits: self.bits ^ other.bits }
    }

    pub fn not(&self) -> BitString {
        BitString {
            n: self.n,
            bits: !self.bits & ((1u64 << self.n) - 1) as u32,
        }
    }

    /// All strings of length `n` in table-index order.
    pub fn all(n: usize) -> impl Iterator<Item = BitString> {
        assert!(n <= MAX_LEN);
        (0..1usize << n).map(move |i| BitString { n, bits: i as u32 })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n {
            f.write_str(if self.bit(k) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_little_endian() {
        let s = BitString::parse("1100").unwrap();
        assert_eq!(s.index(), 0b0011);
        assert_eq!(s.amp_index(), 0b1100);
        assert_eq!(s.weight(), 2);
        assert!(!s.parity());
    }

    #[test]
    fn amp_index_round_trips() {
        for n in 1..=6 {
            for s in BitString::all(n) {
                let back = BitString::from_amp_index(n, s.amp_index()).unwrap();
                assert_eq!(back, s);
                assert_eq!(BitString::from_index(n, s.index()).unwrap(), s);
            }
        }
    }

    #[test]
    fn amp_index_distributes_over_and() {
        for a in BitString::all(5) {
            for b in [BitString::parse("10110").unwrap(), BitString::ones(5)] {
                assert_eq!(a.and(&b).amp_index(), a.amp_index() & b.amp_index());
            }
        }
    }

    #[test]
    fn dot_is_popcount_of_and() {
        let a = BitString::parse("1011").unwrap();
        let b = BitString::parse("1110").unwrap();
        assert!(!a.dot(&b)); // overlap 101- at positions 0 and 2
        assert!(a.dot(&BitString::parse("1000").unwrap()));
    }

    #[test]
    fn display_round_trips() {
        for s in BitString::all(4) {
            assert_eq!(BitString::parse(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BitString::parse("01x1").is_err());
        assert!(BitString::new(4, 0x10).is_err());
        assert!(BitString::new(25, 0).is_err());
    }
}
