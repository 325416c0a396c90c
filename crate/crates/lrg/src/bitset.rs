//! Fixed-capacity bit set over small non-negative integers.
//!
//! Candidate sets in the clique search are intersections of a length set with
//! shifted copies of itself, so the operations that matter are `intersect`,
//! `intersect_shifted` and ascending iteration.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    /// Empty set able to hold values `0..capacity`.
    pub fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn from_values<I: IntoIterator<Item = usize>>(capacity: usize, values: I) -> Self {
        let mut s = BitSet::new(capacity);
        for v in values {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.capacity);
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.capacity);
        self.words[v / 64] &= !(1u64 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        if v >= self.capacity {
            return false;
        }
        (self.words[v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Keeps only values strictly greater than `v`.
    pub fn retain_above(&mut self, v: usize) {
        let word = v / 64;
        for w in self.words.iter_mut().take(word) {
            *w = 0;
        }
        if word < self.words.len() {
            let bit = v % 64;
            // mask off bits 0..=bit
            let mask = if bit == 63 { 0 } else { !0u64 << (bit + 1) };
            self.words[word] &= mask;
        }
    }

    /// Keeps only values less than or equal to `v`.
    pub fn retain_at_most(&mut self, v: usize) {
        if v + 1 >= self.capacity {
            return;
        }
        let word = (v + 1) / 64;
        let bit = (v + 1) % 64;
        if word < self.words.len() {
            if bit == 0 {
                self.words[word] = 0;
            } else {
                self.words[word] &= (1u64 << bit) - 1;
            }
            for w in self.words.iter_mut().skip(word + 1) {
                *w = 0;
            }
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= *b;
        }
        for w in self.words.iter_mut().skip(other.words.len()) {
            *w = 0;
        }
    }

    /// `self &= { x + shift : x in other }`, i.e. keeps the values of `self`
    /// whose difference with `shift` lies in `other`.
    pub fn intersect_shifted(&mut self, other: &BitSet, shift: usize) {
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        let n = self.words.len();
        for i in (0..n).rev() {
            let mut shifted = 0u64;
            if i >= word_shift {
                let lo = i - word_shift;
                if lo < other.words.len() {
                    shifted = other.words[lo] << bit_shift;
                }
                if bit_shift > 0 && lo >= 1 && lo - 1 < other.words.len() {
                    shifted |= other.words[lo - 1] >> (64 - bit_shift);
                }
            }
            self.words[i] &= shifted;
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            set: self,
            word: 0,
            bits: self.words.first().copied().unwrap_or(0),
        }
    }
}

pub(crate) struct Iter<'a> {
    set: &'a BitSet,
    word: usize,
    bits: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.bits != 0 {
                let b = self.bits.trailing_zeros() as usize;
                self.bits &= self.bits - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= self.set.words.len() {
                return None;
            }
            self.bits = self.set.words[self.word];
        }
    }
}
