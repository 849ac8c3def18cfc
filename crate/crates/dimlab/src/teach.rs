//! Learning-side measures: teaching sets and teaching dimension, specifying
//! sets and the extended teaching dimension, the optimal membership-query
//! count, and Bondy distinguishing sets.
//!
//! A teaching set for a member f is a minimum hitting set of the difference
//! sets {x : f(x) != g(x)} against all other members. A specifying set for an
//! arbitrary concept may leave at most one member consistent, i.e. it may
//! leave at most one difference set unhit.

use std::collections::HashMap;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::bits::BitTable;
use crate::core::{Concept, ConceptClass, InstanceSet};
use crate::error::{Error, Result};
use crate::solvers::{self, HittingSet, SetFamily};

/// Default cap on the ETD concept sweep: all `2^(2^n)` concepts are visited.
pub const ETD_N_CAP: usize = 3;
/// ETD can be forced up to n = 4 (65536 concepts).
pub const ETD_N_HARD_CAP: usize = 4;
/// Default memo cap for the membership-query game.
pub const MEMB_DEFAULT_CAP: usize = 20;

/// A member concept together with its canonical minimal teaching set.
#[derive(Debug, Clone)]
pub struct TeachingRecord {
    pub concept: Concept,
    pub set: InstanceSet,
}

impl TeachingRecord {
    pub fn size(&self) -> usize {
        self.set.len()
    }
}

/// An arbitrary concept with its canonical minimal specifying set and the
/// number of members still consistent on it (0 or 1).
#[derive(Debug, Clone)]
pub struct SpecifyingRecord {
    pub concept: Concept,
    pub set: InstanceSet,
    pub consistent_members: usize,
}

impl SpecifyingRecord {
    pub fn size(&self) -> usize {
        self.set.len()
    }
}

fn check_universe(class: &ConceptClass) -> Result<usize> {
    let u = class.instance_count();
    if u > solvers::UNIVERSE_CAP {
        return Err(Error::CapExceeded {
            what: "instance universe (2^n) for teaching-set solves",
            limit: solvers::UNIVERSE_CAP,
            requested: u,
        });
    }
    Ok(u)
}

/// Truth tables as masks; valid once `check_universe` passed.
fn member_tables(class: &ConceptClass) -> Vec<u32> {
    class.concepts().iter().map(|c| c.table_value() as u32).collect()
}

/// Canonical minimal teaching set for a member concept.
pub fn teaching_set(class: &ConceptClass, f: &Concept) -> Result<TeachingRecord> {
    let u = check_universe(class)?;
    let pos = class.position(f).ok_or(Error::NotAMember)?;
    let tables = member_tables(class);
    let set = solve_teaching(u, &tables, pos);
    Ok(TeachingRecord {
        concept: f.clone(),
        set: InstanceSet::new(u, set)?,
    })
}

fn solve_teaching(u: usize, tables: &[u32], pos: usize) -> Vec<usize> {
    let target = tables[pos];
    let diffs: Vec<u32> = tables
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pos)
        .map(|(_, &t)| t ^ target)
        .collect();
    let minimal = SetFamily::from_masks(u, solvers::minimize_masks(u, diffs))
        .expect("difference sets of distinct concepts are non-empty");
    solvers::min_hitting_set(&minimal, None)
        .optimal()
        .expect("no budget given")
}

/// Teaching-set sizes for every member, in class order.
pub fn teaching_sizes(class: &ConceptClass) -> Result<Vec<usize>> {
    let u = check_universe(class)?;
    let tables = member_tables(class);
    Ok((0..class.len())
        .into_par_iter()
        .map(|pos| solve_teaching(u, &tables, pos).len())
        .collect())
}

/// Worst-case teaching dimension of the class.
pub fn td(class: &ConceptClass) -> Result<usize> {
    Ok(teaching_sizes(class)?.into_iter().max().unwrap_or(0))
}

/// Exact average teaching dimension.
pub fn atd(class: &ConceptClass) -> Result<Rational64> {
    let sizes = teaching_sizes(class)?;
    let sum: i64 = sizes.iter().map(|&s| s as i64).sum();
    Ok(Rational64::new(sum, class.len() as i64))
}

/// Specifying-set solve over the multiset of difference sets: a set hitting
/// all but at most one difference (counted with multiplicity). `diffs` is the
/// full list, one per member; a zero entry marks the concept itself.
fn solve_specifying(u: usize, diffs: &[u32]) -> Vec<usize> {
    let member_case = diffs.iter().any(|&d| d == 0);
    if member_case {
        // The concept is itself a member: it always stays consistent, so
        // every other member must be eliminated.
        let rest: Vec<u32> = diffs.iter().copied().filter(|&d| d != 0).collect();
        let minimal = solvers::minimize_masks(u, rest);
        let counts = vec![1u32; minimal.len()];
        return match solvers::min_hitting_multiset(u, &minimal, &counts, 0, None) {
            HittingSet::Optimal(s) => s,
            HittingSet::BudgetExceeded { .. } => unreachable!("no budget given"),
        };
    }
    // Non-member: one difference set may stay unhit, but duplicates count
    // per member, so supersets cannot be dropped here.
    let mut sorted = diffs.to_vec();
    sorted.sort_unstable();
    let mut masks: Vec<u32> = Vec::new();
    let mut counts: Vec<u32> = Vec::new();
    for d in sorted {
        if masks.last() == Some(&d) {
            *counts.last_mut().unwrap() += 1;
        } else {
            masks.push(d);
            counts.push(1);
        }
    }
    let order: Vec<usize> = {
        let mut idx: Vec<usize> = (0..masks.len()).collect();
        idx.sort_unstable_by_key(|&i| (masks[i].count_ones(), masks[i]));
        idx
    };
    let masks_sorted: Vec<u32> = order.iter().map(|&i| masks[i]).collect();
    let counts_sorted: Vec<u32> = order.iter().map(|&i| counts[i]).collect();
    match solvers::min_hitting_multiset(u, &masks_sorted, &counts_sorted, 1, None) {
        HittingSet::Optimal(s) => s,
        HittingSet::BudgetExceeded { .. } => unreachable!("no budget given"),
    }
}

/// Minimal specifying set for an arbitrary concept (member or not).
pub fn specifying_set(class: &ConceptClass, g: &Concept) -> Result<SpecifyingRecord> {
    if g.n() != class.n() {
        return Err(Error::MismatchedArity { left: g.n(), right: class.n() });
    }
    let u = check_universe(class)?;
    let tables = member_tables(class);
    let gv = g.table_value() as u32;
    let diffs: Vec<u32> = tables.iter().map(|&t| t ^ gv).collect();
    let set = solve_specifying(u, &diffs);
    let mask: u32 = set.iter().fold(0, |m, &i| m | (1 << i));
    let consistent = diffs.iter().filter(|&&d| d & mask == 0).count();
    debug_assert!(consistent <= 1);
    Ok(SpecifyingRecord {
        concept: g.clone(),
        set: InstanceSet::new(u, set)?,
        consistent_members: consistent,
    })
}

/// Extended teaching dimension: the worst minimal specifying-set size over
/// every concept on the instance space, members included.
pub fn etd(class: &ConceptClass) -> Result<usize> {
    etd_with(class, false)
}

pub fn etd_with(class: &ConceptClass, force: bool) -> Result<usize> {
    let n = class.n();
    let cap = if force { ETD_N_HARD_CAP } else { ETD_N_CAP };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "ETD concept sweep (n)",
            limit: cap,
            requested: n,
        });
    }
    let u = check_universe(class)?;
    let tables = member_tables(class);
    let total: u64 = 1u64 << u;
    let max = (0..total)
        .into_par_iter()
        .map(|g| {
            let gv = g as u32;
            let diffs: Vec<u32> = tables.iter().map(|&t| t ^ gv).collect();
            solve_specifying(u, &diffs).len()
        })
        .max()
        .unwrap_or(0);
    Ok(max)
}

/// Optimal worst-case number of membership queries to identify a hidden
/// member: minimax over version spaces, memoized per state.
pub fn memb(class: &ConceptClass) -> Result<usize> {
    memb_with(class, MEMB_DEFAULT_CAP)
}

pub fn memb_with(class: &ConceptClass, memo_cap: usize) -> Result<usize> {
    let m = class.len();
    if m > memo_cap {
        return Err(Error::CapExceeded {
            what: "membership-query game class size",
            limit: memo_cap,
            requested: m,
        });
    }
    let instances = class.instance_count();
    let words = m.div_ceil(64);
    // ones[x] = mask of members with value 1 on x
    let ones: Vec<Vec<u64>> = (0..instances)
        .map(|x| {
            let mut w = vec![0u64; words];
            for (i, c) in class.concepts().iter().enumerate() {
                if c.value(x) {
                    w[i >> 6] |= 1 << (i & 63);
                }
            }
            w
        })
        .collect();
    let mut full = vec![u64::MAX; words];
    if m & 63 != 0 {
        full[words - 1] = (1u64 << (m & 63)) - 1;
    }
    let mut game = MembGame { instances, ones, memo: HashMap::new() };
    Ok(game.solve(&full) as usize)
}

struct MembGame {
    instances: usize,
    ones: Vec<Vec<u64>>,
    memo: HashMap<Vec<u64>, u16>,
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

impl MembGame {
    /// Learner picks the query; the adversary answers with whichever
    /// consistent label keeps the game longest. Ends when one member remains.
    fn solve(&mut self, state: &[u64]) -> u16 {
        let count = popcount(state);
        if count <= 1 {
            return 0;
        }
        if let Some(&d) = self.memo.get(state) {
            return d;
        }
        let mut best = u16::MAX;
        for x in 0..self.instances {
            let s1: Vec<u64> = state
                .iter()
                .zip(self.ones[x].iter())
                .map(|(&s, &o)| s & o)
                .collect();
            let c1 = popcount(&s1);
            if c1 == 0 || c1 == count {
                continue; // all members agree on x: the query reveals nothing
            }
            let d1 = self.solve(&s1);
            if d1 + 1 >= best {
                continue;
            }
            let s0: Vec<u64> = state
                .iter()
                .zip(self.ones[x].iter())
                .map(|(&s, &o)| s & !o)
                .collect();
            let d0 = self.solve(&s0);
            let candidate = 1 + d1.max(d0);
            if candidate < best {
                best = candidate;
            }
            if best == 1 {
                break;
            }
        }
        debug_assert_ne!(best, u16::MAX, "distinct concepts always admit a split");
        self.memo.insert(state.to_vec(), best);
        best
    }
}

/// A set of instances on which all members are pairwise distinct, greedily
/// chosen (split the most colliding pairs first) with an exact fallback when
/// greedy misses the m-1 guarantee.
pub fn distinguishing_set(class: &ConceptClass) -> Result<InstanceSet> {
    let m = class.len();
    let instances = class.instance_count();
    if m < 2 {
        return InstanceSet::new(instances, Vec::new());
    }
    let mut groups: Vec<Vec<usize>> = vec![(0..m).collect()];
    let mut chosen: Vec<usize> = Vec::new();
    loop {
        groups.retain(|g| g.len() > 1);
        if groups.is_empty() {
            break;
        }
        let mut best_x = usize::MAX;
        let mut best_gain = 0usize;
        for x in 0..instances {
            let gain: usize = groups
                .iter()
                .map(|g| {
                    let ones = g.iter().filter(|&&i| class.concept(i).value(x)).count();
                    ones * (g.len() - ones)
                })
                .sum();
            if gain > best_gain {
                best_gain = gain;
                best_x = x;
            }
        }
        assert!(best_gain > 0, "distinct concepts must be separable");
        chosen.push(best_x);
        let mut next: Vec<Vec<usize>> = Vec::new();
        for g in groups {
            let (ones, zeros): (Vec<usize>, Vec<usize>) =
                g.into_iter().partition(|&i| class.concept(i).value(best_x));
            if !ones.is_empty() {
                next.push(ones);
            }
            if !zeros.is_empty() {
                next.push(zeros);
            }
        }
        groups = next;
    }
    if chosen.len() > m - 1 && m - 1 < instances {
        // Bondy guarantees a set of size m-1 exists; fall back to the exact
        // solver over the pairwise difference sets.
        let u = check_universe(class)?;
        let tables = member_tables(class);
        let mut diffs = Vec::new();
        for i in 0..m {
            for j in (i + 1)..m {
                diffs.push(tables[i] ^ tables[j]);
            }
        }
        let fam = SetFamily::from_masks(u, solvers::minimize_masks(u, diffs))?;
        let set = solvers::min_hitting_set(&fam, None)
            .optimal()
            .expect("no budget given");
        return InstanceSet::new(u, set);
    }
    InstanceSet::new(instances, chosen)
}

/// Per-member 1-certificate sizes of the meta-function, in class order; the
/// learning/evaluation bridge used by the relation checks.
pub fn member_certificates(class: &ConceptClass) -> Result<Vec<usize>> {
    let meta = crate::core::meta_function(class)?;
    Ok(class
        .concepts()
        .par_iter()
        .map(|c| {
            crate::boolfn::certificate_complexity_at(&meta, c.table_value() as usize)
                .expect("member table is a valid meta input")
        })
        .collect())
}
