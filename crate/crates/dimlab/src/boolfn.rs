//! Evaluation-side complexity measures on explicit Boolean functions:
//! minimal sensitive blocks, certificate complexity, block sensitivity,
//! decision-tree depth, and their exact averages.
//!
//! A block B is sensitive on x when flipping the bits in B changes the
//! function value. A certificate for x is a set of revealed positions that
//! pins the value down; it must intersect every sensitive block, so the
//! certificate complexity is the minimum hitting set of the inclusion-minimal
//! sensitive blocks. Block sensitivity is the maximum disjoint packing of the
//! same family.

use num_rational::Rational64;
use rayon::prelude::*;

use crate::core::{ExplicitBooleanFunction, InstanceSet};
use crate::error::{Error, Result};
use crate::lattice;
use crate::solvers::{self, SetFamily};

/// Default variable cap for exact decision-tree depth; the memo table has
/// `3^vars` entries.
pub const DTREE_VAR_CAP: usize = 13;

/// Per-input sensitivity data: the minimal sensitive blocks together with the
/// derived block sensitivity and a canonical minimal certificate.
#[derive(Debug, Clone)]
pub struct SensitivityProfile {
    pub input: usize,
    pub blocks: SetFamily,
    pub bs: usize,
    pub certificate: InstanceSet,
}

/// Reusable buffers for per-input block extraction across a sweep.
struct BlockScratch {
    vars: usize,
    indicator: Vec<u64>,
    closed: Vec<u64>,
    proper: Vec<u64>,
    masks: Vec<u32>,
    ones: Vec<u32>,
}

impl BlockScratch {
    fn new(vars: usize) -> Self {
        let words = lattice::lattice_words(vars);
        BlockScratch {
            vars,
            indicator: vec![0; words],
            closed: vec![0; words],
            proper: vec![0; words],
            masks: Vec::new(),
            ones: Vec::new(),
        }
    }

    /// Fills `self.masks` with the inclusion-minimal sensitive blocks of `f`
    /// on `x`, sorted by (size, value).
    fn minimal_blocks(&mut self, f: &ExplicitBooleanFunction, x: usize) {
        let words = f.table().words();
        self.indicator.copy_from_slice(words);
        lattice::xor_translate(&mut self.indicator, self.vars, x);
        if f.eval(x) {
            // sensitivity indicator is f(x ^ B) XOR f(x)
            for w in self.indicator.iter_mut() {
                *w = !*w;
            }
            if self.vars < 6 {
                self.indicator[0] &= (1u64 << (1usize << self.vars)) - 1;
            }
        }
        self.indicator[0] &= !1; // the empty block is never sensitive
        self.closed.copy_from_slice(&self.indicator);
        lattice::subset_or(&mut self.closed, self.vars);
        self.proper.fill(0);
        lattice::proper_subset_or(&mut self.proper, &self.closed, self.vars);
        self.masks.clear();
        for (wi, (&s, &p)) in self.indicator.iter().zip(self.proper.iter()).enumerate() {
            let mut m = s & !p;
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                self.masks.push(((wi << 6) | b) as u32);
            }
        }
        self.masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
        if self.ones.len() < self.masks.len() {
            self.ones.resize(self.masks.len(), 1);
        }
    }
}

fn check_input(f: &ExplicitBooleanFunction, x: usize) -> Result<()> {
    if x >= f.input_count() {
        return Err(Error::InvalidInstance { index: x, n: f.vars() });
    }
    Ok(())
}

/// Exactly the inclusion-minimal blocks B with `f(x ^ B) != f(x)`.
pub fn minimal_sensitive_blocks(f: &ExplicitBooleanFunction, x: usize) -> Result<SetFamily> {
    check_input(f, x)?;
    let mut scratch = BlockScratch::new(f.vars());
    scratch.minimal_blocks(f, x);
    SetFamily::from_masks(f.vars(), scratch.masks.clone())
}

/// A canonical minimal certificate for x: the lexicographically smallest
/// minimum hitting set of the minimal sensitive blocks.
pub fn certificate(f: &ExplicitBooleanFunction, x: usize) -> Result<InstanceSet> {
    let blocks = minimal_sensitive_blocks(f, x)?;
    let set = solvers::min_hitting_set(&blocks, None)
        .optimal()
        .expect("no budget given");
    InstanceSet::new(f.vars(), set)
}

pub fn certificate_complexity_at(f: &ExplicitBooleanFunction, x: usize) -> Result<usize> {
    Ok(certificate(f, x)?.len())
}

/// Maximum number of pairwise-disjoint sensitive blocks on x.
pub fn block_sensitivity_at(f: &ExplicitBooleanFunction, x: usize) -> Result<usize> {
    let blocks = minimal_sensitive_blocks(f, x)?;
    Ok(solvers::max_disjoint_packing(&blocks))
}

pub fn sensitivity_profile(f: &ExplicitBooleanFunction, x: usize) -> Result<SensitivityProfile> {
    let blocks = minimal_sensitive_blocks(f, x)?;
    let bs = solvers::max_disjoint_packing(&blocks);
    let set = solvers::min_hitting_set(&blocks, None)
        .optimal()
        .expect("no budget given");
    Ok(SensitivityProfile {
        input: x,
        blocks,
        bs,
        certificate: InstanceSet::new(f.vars(), set)?,
    })
}

/// Certificate complexity and block sensitivity at every input, computed in
/// parallel. Index i of each vector is the value at input i.
#[derive(Debug, Clone)]
pub struct MeasureSweep {
    pub certificates: Vec<u16>,
    pub block_sensitivities: Vec<u16>,
}

pub fn measure_sweep(f: &ExplicitBooleanFunction) -> MeasureSweep {
    let size = f.input_count();
    const CHUNK: usize = 256;
    let nchunks = size.div_ceil(CHUNK);
    let pairs: Vec<(u16, u16)> = (0..nchunks)
        .into_par_iter()
        .flat_map_iter(|ci| {
            let mut scratch = BlockScratch::new(f.vars());
            let lo = ci * CHUNK;
            let hi = size.min(lo + CHUNK);
            let mut out = Vec::with_capacity(hi - lo);
            for x in lo..hi {
                scratch.minimal_blocks(f, x);
                let bs = solvers::packing_of_sorted(&scratch.masks) as u16;
                let c = solvers::hitting_size_of_minimal(
                    f.vars(),
                    &mut scratch.masks,
                    &scratch.ones,
                ) as u16;
                out.push((c, bs));
            }
            out.into_iter()
        })
        .collect();
    MeasureSweep {
        certificates: pairs.iter().map(|p| p.0).collect(),
        block_sensitivities: pairs.iter().map(|p| p.1).collect(),
    }
}

fn side_inputs(f: &ExplicitBooleanFunction, side: bool) -> Vec<usize> {
    (0..f.input_count()).filter(|&x| f.eval(x) == side).collect()
}

/// `C^b(f)`: maximum certificate complexity over the level set `X^b`.
pub fn c_side(f: &ExplicitBooleanFunction, side: bool) -> Result<usize> {
    let inputs = side_inputs(f, side);
    if inputs.is_empty() {
        return Err(Error::EmptyLevelSet { side });
    }
    let sweep = measure_sweep(f);
    Ok(inputs.iter().map(|&x| sweep.certificates[x] as usize).max().unwrap())
}

/// `aC^b(f)`: exact average certificate complexity over the level set.
pub fn ac_side(f: &ExplicitBooleanFunction, side: bool) -> Result<Rational64> {
    let inputs = side_inputs(f, side);
    if inputs.is_empty() {
        return Err(Error::EmptyLevelSet { side });
    }
    let sweep = measure_sweep(f);
    let sum: i64 = inputs.iter().map(|&x| sweep.certificates[x] as i64).sum();
    Ok(Rational64::new(sum, inputs.len() as i64))
}

/// `C(f)`: maximum certificate complexity over all inputs; 0 for constants.
pub fn c_max(f: &ExplicitBooleanFunction) -> usize {
    let sweep = measure_sweep(f);
    sweep.certificates.iter().map(|&c| c as usize).max().unwrap_or(0)
}

/// `aC(f)`: exact average certificate complexity over the whole input space.
pub fn ac_all(f: &ExplicitBooleanFunction) -> Rational64 {
    let sweep = measure_sweep(f);
    let sum: i64 = sweep.certificates.iter().map(|&c| c as i64).sum();
    Rational64::new(sum, f.input_count() as i64)
}

/// `BS(f)`: maximum block sensitivity over all inputs.
pub fn bs_max(f: &ExplicitBooleanFunction) -> usize {
    let sweep = measure_sweep(f);
    sweep.block_sensitivities.iter().map(|&b| b as usize).max().unwrap_or(0)
}

/// `aBS(f)`: exact average block sensitivity over all inputs.
pub fn abs_mean(f: &ExplicitBooleanFunction) -> Rational64 {
    let sweep = measure_sweep(f);
    let sum: i64 = sweep.block_sensitivities.iter().map(|&b| b as i64).sum();
    Rational64::new(sum, f.input_count() as i64)
}

/// Exact worst-case deterministic decision-tree depth, by memoized minimax
/// over variable restrictions.
pub fn decision_tree_depth(f: &ExplicitBooleanFunction) -> Result<usize> {
    decision_tree_depth_with(f, DTREE_VAR_CAP, false)
}

pub fn decision_tree_depth_with(
    f: &ExplicitBooleanFunction,
    cap_vars: usize,
    force: bool,
) -> Result<usize> {
    let vars = f.vars();
    if vars > cap_vars && !force {
        return Err(Error::CapExceeded {
            what: "decision-tree variables",
            limit: cap_vars,
            requested: vars,
        });
    }
    let mut pow3 = [0usize; 17];
    pow3[0] = 1;
    for i in 1..=16 {
        pow3[i] = pow3[i - 1] * 3;
    }
    // Restriction state: digit v of the base-3 index is 0/1 when variable v is
    // fixed to that value, 2 when free. The root has every digit 2.
    let mut memo = vec![u8::MAX; pow3[vars]];
    let root = pow3[vars] - 1;
    Ok(dtree(f, &mut memo, &pow3, 0, 0, root) as usize)
}

fn dtree(
    f: &ExplicitBooleanFunction,
    memo: &mut [u8],
    pow3: &[usize; 17],
    fixed: u32,
    vals: u32,
    idx: usize,
) -> u8 {
    if memo[idx] != u8::MAX {
        return memo[idx];
    }
    let vars = f.vars();
    let full: u32 = ((1u64 << vars) - 1) as u32;
    let free = !fixed & full;
    let out = if restriction_constant(f, free, vals) {
        0
    } else {
        let mut best = u8::MAX;
        for i in 0..vars {
            if fixed >> i & 1 == 1 {
                continue;
            }
            let d0 = dtree(f, memo, pow3, fixed | 1 << i, vals, idx - 2 * pow3[i]);
            if d0 + 1 >= best {
                continue; // querying i cannot beat the current best
            }
            let d1 = dtree(f, memo, pow3, fixed | 1 << i, vals | 1 << i, idx - pow3[i]);
            let worst = d0.max(d1);
            if worst + 1 < best {
                best = worst + 1;
            }
            if best == 1 {
                break;
            }
        }
        best
    };
    memo[idx] = out;
    out
}

/// Whether f is constant on the subcube leaving `free` unrestricted.
fn restriction_constant(f: &ExplicitBooleanFunction, free: u32, vals: u32) -> bool {
    let base = vals as usize;
    let first = f.eval(base);
    // enumerate the non-zero submasks of `free`
    let free = free as usize;
    let mut sub = free;
    while sub != 0 {
        if f.eval(base | sub) != first {
            return false;
        }
        sub = (sub - 1) & free;
    }
    true
}
