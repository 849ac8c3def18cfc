//! Word-parallel operations on indicator vectors over the subset lattice of
//! a universe with up to 16 elements.
//!
//! An indicator vector for universe size `u` has `2^u` bits stored in
//! `max(1, 2^u / 64)` words; bit `B` corresponds to the subset with mask `B`.

/// Bits whose i-th index bit is 0, for i in 0..6.
const LOW: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

pub fn lattice_words(universe: usize) -> usize {
    (1usize << universe).div_ceil(64).max(1)
}

fn tail_mask(universe: usize) -> u64 {
    if universe >= 6 {
        u64::MAX
    } else {
        (1u64 << (1usize << universe)) - 1
    }
}

/// Permutes positions by XOR with `x`: afterwards `out[B] = in[B ^ x]`.
pub fn xor_translate(words: &mut [u64], universe: usize, x: usize) {
    for i in 0..universe.min(6) {
        if x >> i & 1 == 1 {
            let s = 1u32 << i;
            for w in words.iter_mut() {
                *w = ((*w & !LOW[i]) >> s) | ((*w & LOW[i]) << s);
            }
        }
    }
    for i in 6..universe {
        if x >> i & 1 == 1 {
            let stride = 1usize << (i - 6);
            let mut base = 0;
            while base < words.len() {
                for j in 0..stride {
                    words.swap(base + j, base + stride + j);
                }
                base += 2 * stride;
            }
        }
    }
    if universe < 6 {
        words[0] &= tail_mask(universe);
    }
}

/// In-place subset-OR transform: afterwards `w[B] = OR over B' subset of B of
/// the original `w[B']`.
pub fn subset_or(words: &mut [u64], universe: usize) {
    for i in 0..universe.min(6) {
        let s = 1u32 << i;
        for w in words.iter_mut() {
            *w |= (*w & LOW[i]) << s;
        }
    }
    for i in 6..universe {
        let stride = 1usize << (i - 6);
        let mut base = 0;
        while base < words.len() {
            for j in 0..stride {
                words[base + stride + j] |= words[base + j];
            }
            base += 2 * stride;
        }
    }
    if universe < 6 {
        words[0] &= tail_mask(universe);
    }
}

/// Accumulates into `dst[B]` the OR of `src[B \ {i}]` over all i in B.
/// When `src` is already subset-OR closed this makes `dst[B]` the OR of
/// `src` over all proper subsets of B.
pub fn proper_subset_or(dst: &mut [u64], src: &[u64], universe: usize) {
    for i in 0..universe.min(6) {
        let s = 1u32 << i;
        for (d, w) in dst.iter_mut().zip(src.iter()) {
            *d |= (*w & LOW[i]) << s;
        }
    }
    for i in 6..universe {
        let stride = 1usize << (i - 6);
        let mut base = 0;
        while base < src.len() {
            for j in 0..stride {
                dst[base + stride + j] |= src[base + j];
            }
            base += 2 * stride;
        }
    }
    if universe < 6 {
        dst[0] &= tail_mask(universe);
    }
}

/// Extracts the inclusion-minimal non-empty subsets among the set bits of an
/// indicator vector. Consumes the scratch buffers.
pub fn minimal_elements(indicator: &mut Vec<u64>, universe: usize) -> Vec<u32> {
    indicator[0] &= !1; // drop the empty set
    let mut closed = indicator.clone();
    subset_or(&mut closed, universe);
    let mut proper = vec![0u64; indicator.len()];
    proper_subset_or(&mut proper, &closed, universe);
    let mut out = Vec::new();
    for (wi, (&s, &p)) in indicator.iter().zip(proper.iter()).enumerate() {
        let mut m = s & !p;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            out.push(((wi << 6) | b) as u32);
        }
    }
    out
}
