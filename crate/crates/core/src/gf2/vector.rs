use std::fmt;
use std::ops::{Add, AddAssign};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A vector over GF(2), packed 64 coefficients per word.
///
/// Bit `i` lives in `words[i / 64]` at position `i % 64`. Bits past `len` are
/// always zero, so equality and hashing are plain word comparisons.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Vector with ones exactly at `indices` (repeated indices cancel).
    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, indices: I) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    /// Convenience for tests and literals: nonzero entries are ones.
    pub fn from_u8s(bits: &[u8]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b != 0).map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    /// Iterates over the indices of set bits in increasing order.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn xor_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn and(&self, other: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) product");
        Gf2Vector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Bits of `self` not set in `other`.
    pub fn and_not(&self, other: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.len, other.len, "length mismatch");
        Gf2Vector {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) dot product");
        let acc = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b));
        acc.count_ones() % 2 == 1
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = Gf2Vector::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// Coordinates `start..start + len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> Gf2Vector {
        assert!(start + len <= self.len);
        Gf2Vector::from_indices(
            len,
            self.ones().filter(|&i| i >= start && i < start + len).map(|i| i - start),
        )
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// The bits as one word, for vectors of length at most 64.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.as_slice() {
            [] => Some(0),
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= WORD, "from_u64 takes at most 64 bits");
        let mask = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = bits & mask;
        }
        v
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, "]")
    }
}

impl Add for &Gf2Vector {
    type Output = Gf2Vector;
    fn add(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.xor_assign(rhs);
        out
    }
}

impl AddAssign<&Gf2Vector> for Gf2Vector {
    fn add_assign(&mut self, rhs: &Gf2Vector) {
        self.xor_assign(rhs);
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_idx * WORD + tz);
            }
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_sum_is_zero() {
        let v = Gf2Vector::from_indices(130, [0, 63, 64, 129]);
        assert!((&v + &v).is_zero());
        assert_eq!(v.count_ones(), 4);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
    }

    #[test]
    fn repeated_indices_cancel() {
        let v = Gf2Vector::from_indices(5, [1, 3, 1]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn concat_and_slice() {
        let a = Gf2Vector::from_u8s(&[1, 0, 1]);
        let b = Gf2Vector::from_u8s(&[0, 1]);
        let c = a.concat(&b);
        assert_eq!(c, Gf2Vector::from_u8s(&[1, 0, 1, 0, 1]));
        assert_eq!(c.slice(3, 2), b);
        assert_eq!(c.slice(0, 3), a);
    }

    #[test]
    fn dot_product_parity() {
        let a = Gf2Vector::from_u8s(&[1, 1, 1, 0]);
        let b = Gf2Vector::from_u8s(&[1, 1, 0, 1]);
        assert!(!a.dot(&b));
        assert!(a.dot(&Gf2Vector::from_u8s(&[1, 0, 0, 0])));
    }
}
