//! Packed bit tables used for concept truth tables and Boolean function
//! tables. Bit `i` of the table is the function value on assignment `i`.

use std::fmt;

/// A fixed-length table of bits packed into `u64` words.
///
/// Word 0 holds bits 0..64, word 1 bits 64..128 and so on. All bits past
/// `len` are kept zero so that equality, hashing and ordering work on the
/// words directly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitTable {
    len: usize,
    words: Box<[u64]>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64).max(1)
}

impl BitTable {
    pub fn zeros(len: usize) -> Self {
        BitTable {
            len,
            words: vec![0u64; word_count(len)].into_boxed_slice(),
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut t = Self::zeros(len);
        for w in t.words.iter_mut() {
            *w = u64::MAX;
        }
        t.mask_tail();
        t
    }

    /// Builds a table of `len` bits from the low bits of `value`.
    pub fn from_value(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut t = Self::zeros(len);
        t.words[0] = value;
        t.mask_tail();
        t
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut t = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                t.set(i, true);
            }
        }
        t
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let w = &mut self.words[i >> 6];
        if v {
            *w |= 1u64 << (i & 63);
        } else {
            *w &= !(1u64 << (i & 63));
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    /// Zeroes every bit at position >= len; internal invariant after
    /// word-level operations.
    pub fn mask_tail(&mut self) {
        let used = self.len & 63;
        if used != 0 {
            let last = word_count(self.len) - 1;
            self.words[last] &= (1u64 << used) - 1;
        }
        // words beyond the last used one do not exist by construction
    }

    /// The table value interpreted as an integer; only valid for len <= 64.
    pub fn as_u64(&self) -> u64 {
        assert!(self.len <= 64, "table too wide for a single word");
        self.words[0]
    }

    pub fn xor(&self, other: &BitTable) -> BitTable {
        assert_eq!(self.len, other.len);
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(other.words.iter()) {
            *w ^= o;
        }
        out
    }

    pub fn complement(&self) -> BitTable {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.mask_tail();
        out
    }

    /// Indices of the set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((wi << 6) | b)
                }
            })
        })
    }

    /// Renders as '0'/'1' characters, bit i at string position i.
    pub fn to_bitstring(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut t = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => t.set(i, true),
                _ => return None,
            }
        }
        Some(t)
    }
}

impl PartialOrd for BitTable {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order of the table value (most significant word first).
impl Ord for BitTable {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl fmt::Debug for BitTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitTable({})", self.to_bitstring())
    }
}
