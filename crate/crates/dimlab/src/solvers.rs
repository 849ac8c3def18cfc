//! Exact combinatorial subroutines shared by the measure computations:
//! minimum hitting set and maximum disjoint set packing over small universes.
//!
//! Everything here is deterministic. Minimum hitting sets break ties toward
//! the lexicographically smallest solution (comparing sorted element lists),
//! which keeps golden outputs stable.

use crate::error::{Error, Result};
use crate::lattice;

/// Hard limit on solver universes; sets are stored as `u32` masks.
pub const UNIVERSE_CAP: usize = 32;

/// A family of non-empty subsets of `[0, universe)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe: usize,
    sets: Vec<u32>,
}

impl SetFamily {
    pub fn new<I, S>(universe: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let masks = sets
            .into_iter()
            .map(|s| {
                let mut mask = 0u32;
                for e in s {
                    if e >= universe {
                        return Err(Error::InvalidInstance {
                            index: e,
                            n: universe,
                        });
                    }
                    mask |= 1 << e;
                }
                Ok(mask)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(universe, masks)
    }

    pub fn from_masks(universe: usize, masks: Vec<u32>) -> Result<Self> {
        if universe > UNIVERSE_CAP {
            return Err(Error::CapExceeded {
                what: "set family universe",
                limit: UNIVERSE_CAP,
                requested: universe,
            });
        }
        let limit = if universe == 32 { u32::MAX } else { (1u32 << universe) - 1 };
        for &m in &masks {
            if m == 0 {
                return Err(Error::ClassFile("empty set in family".into()));
            }
            if m & !limit != 0 {
                return Err(Error::InvalidInstance {
                    index: (m & !limit).trailing_zeros() as usize,
                    n: universe,
                });
            }
        }
        let mut fam = SetFamily { universe, sets: masks };
        fam.canonicalize();
        Ok(fam)
    }

    pub fn empty(universe: usize) -> Self {
        SetFamily { universe, sets: Vec::new() }
    }

    fn canonicalize(&mut self) {
        self.sets
            .sort_unstable_by_key(|&m| (m.count_ones(), m));
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn masks(&self) -> &[u32] {
        &self.sets
    }

    /// Sets as sorted element lists, in canonical family order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|&m| mask_elements(m)).collect()
    }
}

pub fn mask_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Removes every set that strictly contains another member; the hitting sets
/// (and both solver optima) of the result equal those of the input.
pub fn minimize_family(fam: &SetFamily) -> SetFamily {
    let kept = minimize_masks(fam.universe, fam.sets.clone());
    SetFamily { universe: fam.universe, sets: kept }
}

/// Inclusion-minimal, deduplicated masks in canonical order.
pub(crate) fn minimize_masks(universe: usize, mut masks: Vec<u32>) -> Vec<u32> {
    masks.sort_unstable();
    masks.dedup();
    if universe <= 16 && masks.len() > 64 {
        // Large families over small universes: extract minimal elements with
        // one pass over the subset lattice instead of quadratic scans.
        let mut indicator = vec![0u64; lattice::lattice_words(universe)];
        for &m in &masks {
            indicator[(m >> 6) as usize] |= 1u64 << (m & 63);
        }
        let mut kept = lattice::minimal_elements(&mut indicator, universe);
        kept.sort_unstable_by_key(|&m| (m.count_ones(), m));
        return kept;
    }
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let mut kept: Vec<u32> = Vec::new();
    for m in masks {
        if !kept.iter().any(|&k| k & m == k) {
            kept.push(m);
        }
    }
    kept
}

/// Outcome of a hitting-set solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HittingSet {
    /// The lexicographically smallest optimum.
    Optimal(Vec<usize>),
    /// The optimum exceeds the budget; carries the best proven lower bound.
    BudgetExceeded { lower_bound: usize },
}

impl HittingSet {
    pub fn optimal(self) -> Option<Vec<usize>> {
        match self {
            HittingSet::Optimal(s) => Some(s),
            HittingSet::BudgetExceeded { .. } => None,
        }
    }

    pub fn size(&self) -> Option<usize> {
        match self {
            HittingSet::Optimal(s) => Some(s.len()),
            HittingSet::BudgetExceeded { .. } => None,
        }
    }
}

/// Smallest set intersecting every member of the family.
///
/// With a budget, proves either `optimum <= budget` (returning the optimum)
/// or `optimum > budget`.
pub fn min_hitting_set(fam: &SetFamily, budget: Option<usize>) -> HittingSet {
    let masks = minimize_masks(fam.universe, fam.sets.clone());
    let counts = vec![1u32; masks.len()];
    solve_hitting(fam.universe, &masks, &counts, 0, budget)
}

/// Convenience wrapper: exact optimum size with no budget.
pub fn min_hitting_set_size(fam: &SetFamily) -> usize {
    match min_hitting_set(fam, None) {
        HittingSet::Optimal(s) => s.len(),
        HittingSet::BudgetExceeded { .. } => unreachable!("no budget given"),
    }
}

/// Maximum number of pairwise-disjoint member sets, exact.
pub fn max_disjoint_packing(fam: &SetFamily) -> usize {
    let mut masks = fam.sets.clone();
    masks.sort_unstable();
    masks.dedup();
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    let mut best = 0usize;
    pack(&masks, 0, 0, 0, &mut best);
    best
}

fn pack(masks: &[u32], idx: usize, used: u32, count: usize, best: &mut usize) {
    if count > *best {
        *best = count;
    }
    if idx >= masks.len() {
        return;
    }
    // Optimistic bounds: remaining candidate count, and free elements divided
    // by the smallest remaining set size.
    let mut avail = 0usize;
    let mut min_size = u32::MAX;
    for &m in &masks[idx..] {
        if m & used == 0 {
            avail += 1;
            min_size = min_size.min(m.count_ones());
        }
    }
    if avail == 0 {
        return;
    }
    let free = (!used).count_ones() / min_size;
    if count + avail.min(free as usize) <= *best {
        return;
    }
    for j in idx..masks.len() {
        if masks[j] & used == 0 {
            pack(masks, j + 1, used | masks[j], count + 1, best);
        }
    }
}

/// Minimum-size set hitting all but at most `waivers` of the family, where
/// each unhit set counts with its multiplicity. Used for specifying sets,
/// where "at most one concept stays consistent" waives one difference set.
pub(crate) fn min_hitting_multiset(
    universe: usize,
    masks: &[u32],
    counts: &[u32],
    waivers: u64,
    budget: Option<usize>,
) -> HittingSet {
    solve_hitting(universe, masks, counts, waivers, budget)
}

/// Sweep fast path: `masks` must already be inclusion-minimal and
/// deduplicated; they are canonical-sorted in place. `counts` must be all
/// ones and as long as `masks`.
pub(crate) fn hitting_size_of_minimal(
    universe: usize,
    masks: &mut [u32],
    counts: &[u32],
) -> usize {
    if masks.is_empty() {
        return 0;
    }
    masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
    match solve_hitting(universe, masks, &counts[..masks.len()], 0, None) {
        HittingSet::Optimal(s) => s.len(),
        HittingSet::BudgetExceeded { .. } => unreachable!("no budget given"),
    }
}

/// Sweep fast path for packing; `masks` must be deduplicated and sorted by
/// (popcount, value).
pub(crate) fn packing_of_sorted(masks: &[u32]) -> usize {
    let mut best = 0usize;
    pack(masks, 0, 0, 0, &mut best);
    best
}

struct HitSearch<'a> {
    masks: &'a [u32],
    counts: &'a [u32],
    universe: usize,
    hit_depth: Vec<u32>,
    uncovered_weight: u64,
    chosen: Vec<usize>,
    element_sets: Vec<Vec<u32>>,
}

impl<'a> HitSearch<'a> {
    fn choose(&mut self, e: usize) {
        self.chosen.push(e);
        for &si in &self.element_sets[e] {
            let si = si as usize;
            if self.hit_depth[si] == 0 {
                self.uncovered_weight -= self.counts[si] as u64;
            }
            self.hit_depth[si] += 1;
        }
    }

    fn unchoose(&mut self, e: usize) {
        self.chosen.pop();
        for &si in &self.element_sets[e] {
            let si = si as usize;
            self.hit_depth[si] -= 1;
            if self.hit_depth[si] == 0 {
                self.uncovered_weight += self.counts[si] as u64;
            }
        }
    }

    /// Depth-first search over element choices in ascending order; the first
    /// success therefore yields the lexicographically smallest solution of
    /// the current budget. Returns true when all uncovered multiplicity fits
    /// in the remaining waivers.
    fn search(&mut self, next: usize, slots: usize, waivers: u64) -> bool {
        if self.uncovered_weight <= waivers {
            return true;
        }
        if slots == 0 {
            return false;
        }
        let future: u32 = if next >= self.universe {
            0
        } else if self.universe == 32 && next == 0 {
            u32::MAX
        } else {
            (((1u64 << (self.universe - next)) - 1) as u32) << next
        };
        // Sets no future element can hit must all be waived; the rest admit a
        // packing-based lower bound (each packed set needs its own element,
        // minus what the remaining waivers can absorb).
        let mut forced: u64 = 0;
        let mut packing: usize = 0;
        let mut pack_mask: u32 = 0;
        let mut candidates: u32 = 0;
        for (i, &m) in self.masks.iter().enumerate() {
            if self.hit_depth[i] != 0 {
                continue;
            }
            let avail = m & future;
            if avail == 0 {
                forced += self.counts[i] as u64;
            } else {
                candidates |= avail;
                if avail & pack_mask == 0 {
                    packing += 1;
                    pack_mask |= avail;
                }
            }
        }
        if forced > waivers {
            return false;
        }
        let spare = (waivers - forced) as usize;
        if packing > slots + spare {
            return false;
        }
        let mut cand = candidates;
        while cand != 0 {
            let e = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.choose(e);
            if self.search(e + 1, slots - 1, waivers) {
                return true;
            }
            self.unchoose(e);
        }
        false
    }
}

fn solve_hitting(
    universe: usize,
    masks: &[u32],
    counts: &[u32],
    waivers: u64,
    budget: Option<usize>,
) -> HittingSet {
    debug_assert_eq!(masks.len(), counts.len());
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    if total <= waivers {
        return HittingSet::Optimal(Vec::new());
    }
    let mut element_sets: Vec<Vec<u32>> = vec![Vec::new(); universe];
    for (i, &m) in masks.iter().enumerate() {
        let mut mm = m;
        while mm != 0 {
            let e = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            element_sets[e].push(i as u32);
        }
    }
    // Greedy packing gives the initial lower bound, greedy covering the
    // upper bound that caps the deepening loop.
    let mut pack_mask = 0u32;
    let mut packing = 0usize;
    for &m in masks {
        if m & pack_mask == 0 {
            packing += 1;
            pack_mask |= m;
        }
    }
    let lower = packing.saturating_sub(waivers as usize).max(1);
    let upper = greedy_upper_bound(universe, masks, counts, waivers);

    let mut search = HitSearch {
        masks,
        counts,
        universe,
        hit_depth: vec![0; masks.len()],
        uncovered_weight: total,
        chosen: Vec::new(),
        element_sets,
    };
    let cap = budget.map_or(upper, |b| b.min(upper));
    for k in lower..=cap {
        if search.search(0, k, waivers) {
            return HittingSet::Optimal(search.chosen.clone());
        }
        debug_assert!(search.chosen.is_empty());
    }
    match budget {
        Some(b) if b < upper => HittingSet::BudgetExceeded {
            lower_bound: lower.max(b + 1),
        },
        _ => unreachable!("greedy upper bound must be attainable"),
    }
}

fn greedy_upper_bound(universe: usize, masks: &[u32], counts: &[u32], waivers: u64) -> usize {
    let mut unhit: Vec<bool> = vec![true; masks.len()];
    let mut unhit_weight: u64 = counts.iter().map(|&c| c as u64).sum();
    let mut size = 0usize;
    while unhit_weight > waivers {
        let mut best_e = 0usize;
        let mut best_gain = 0usize;
        for e in 0..universe {
            let gain = masks
                .iter()
                .enumerate()
                .filter(|&(i, &m)| unhit[i] && m >> e & 1 == 1)
                .count();
            if gain > best_gain {
                best_gain = gain;
                best_e = e;
            }
        }
        if best_gain == 0 {
            break;
        }
        for (i, &m) in masks.iter().enumerate() {
            if unhit[i] && m >> best_e & 1 == 1 {
                unhit[i] = false;
                unhit_weight -= counts[i] as u64;
            }
        }
        size += 1;
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(universe: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(universe, sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    /// Exhaustive oracle: smallest (then lexicographically smallest) subset
    /// hitting every set.
    fn oracle_hitting(universe: usize, masks: &[u32]) -> Vec<usize> {
        for k in 0..=universe {
            let mut best: Option<u32> = None;
            for s in 0u32..(1 << universe) {
                if s.count_ones() as usize != k {
                    continue;
                }
                if masks.iter().all(|&m| m & s != 0) {
                    let candidate = s;
                    best = Some(match best {
                        None => candidate,
                        Some(b) => {
                            if lex_less(candidate, b) {
                                candidate
                            } else {
                                b
                            }
                        }
                    });
                }
            }
            if let Some(b) = best {
                return mask_elements(b);
            }
        }
        unreachable!()
    }

    fn lex_less(a: u32, b: u32) -> bool {
        mask_elements(a) < mask_elements(b)
    }

    fn oracle_packing(masks: &[u32]) -> usize {
        let mut uniq = masks.to_vec();
        uniq.sort_unstable();
        uniq.dedup();
        let n = uniq.len();
        let mut best = 0;
        for choice in 0u32..(1 << n) {
            let mut used = 0u32;
            let mut ok = true;
            let mut count = 0;
            for (i, &m) in uniq.iter().enumerate() {
                if choice >> i & 1 == 1 {
                    if m & used != 0 {
                        ok = false;
                        break;
                    }
                    used |= m;
                    count += 1;
                }
            }
            if ok {
                best = best.max(count);
            }
        }
        best
    }

    #[test]
    fn minimize_examples() {
        let f = fam(2, &[&[0], &[0, 1]]);
        assert_eq!(minimize_family(&f).members(), vec![vec![0]]);

        let antichain = fam(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(minimize_family(&antichain), antichain);

        let f = fam(3, &[&[0, 1], &[1, 2], &[0, 1, 2]]);
        assert_eq!(
            minimize_family(&f).members(),
            vec![vec![0, 1], vec![1, 2]]
        );
    }

    #[test]
    fn minimize_preserves_optima() {
        let f = fam(4, &[&[0, 1], &[1, 2], &[0, 1, 2], &[3], &[2, 3]]);
        let min = minimize_family(&f);
        assert_eq!(min_hitting_set_size(&f), min_hitting_set_size(&min));
        assert_eq!(max_disjoint_packing(&f), max_disjoint_packing(&min));
    }

    #[test]
    fn hitting_examples() {
        assert_eq!(
            min_hitting_set(&SetFamily::empty(4), None),
            HittingSet::Optimal(vec![])
        );

        let f = fam(2, &[&[0], &[1]]);
        assert_eq!(min_hitting_set(&f, None), HittingSet::Optimal(vec![0, 1]));

        // lexicographic tie-break among the three optimal pairs
        let f = fam(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let oracle = oracle_hitting(3, f.masks());
        assert_eq!(oracle, vec![0, 1]);
        assert_eq!(min_hitting_set(&f, None), HittingSet::Optimal(oracle));
    }

    #[test]
    fn hitting_budget_outcome() {
        let f = fam(4, &[&[0], &[1], &[2], &[3]]);
        match min_hitting_set(&f, Some(2)) {
            HittingSet::BudgetExceeded { lower_bound } => assert!(lower_bound >= 3),
            other => panic!("expected budget outcome, got {other:?}"),
        }
        assert_eq!(
            min_hitting_set(&f, Some(4)),
            HittingSet::Optimal(vec![0, 1, 2, 3])
        );
    }

    #[test]
    fn packing_examples() {
        assert_eq!(max_disjoint_packing(&SetFamily::empty(4)), 0);
        assert_eq!(max_disjoint_packing(&fam(3, &[&[0], &[1], &[2]])), 3);
        let ring = fam(4, &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]]);
        assert_eq!(oracle_packing(ring.masks()), 2);
        assert_eq!(max_disjoint_packing(&ring), 2);
    }

    #[test]
    fn duality_packing_bounds_hitting() {
        let f = fam(5, &[&[0, 1], &[2], &[3, 4], &[1, 2, 3]]);
        assert!(max_disjoint_packing(&f) <= min_hitting_set_size(&f));
    }

    #[test]
    fn randomized_oracle_equivalence() {
        // deterministic pseudo-random families over universes <= 12
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..60 {
            let universe = 4 + (next() % 9) as usize; // 4..=12
            let n_sets = 1 + (next() % 20) as usize;
            let limit = (1u32 << universe) - 1;
            let masks: Vec<u32> = (0..n_sets)
                .map(|_| {
                    let m = (next() as u32) & limit;
                    if m == 0 {
                        1
                    } else {
                        m
                    }
                })
                .collect();
            let f = SetFamily::from_masks(universe, masks.clone()).unwrap();
            let oracle = oracle_hitting(universe, f.masks());
            match min_hitting_set(&f, None) {
                HittingSet::Optimal(got) => {
                    assert_eq!(got.len(), oracle.len(), "trial {trial}");
                    assert_eq!(got, oracle, "trial {trial}");
                }
                other => panic!("unexpected {other:?}"),
            }
            assert_eq!(
                max_disjoint_packing(&f),
                oracle_packing(f.masks()),
                "trial {trial}"
            );
            let min = minimize_family(&f);
            assert_eq!(oracle_hitting(universe, min.masks()), oracle, "trial {trial}");
        }
    }

    #[test]
    fn waiver_semantics() {
        // eight singletons, one waiver: hit seven of them
        let masks: Vec<u32> = (0..8).map(|i| 1u32 << i).collect();
        let counts = vec![1u32; 8];
        match min_hitting_multiset(8, &masks, &counts, 1, None) {
            HittingSet::Optimal(s) => assert_eq!(s, vec![0, 1, 2, 3, 4, 5, 6]),
            other => panic!("unexpected {other:?}"),
        }
        // multiplicity 2 sets cannot be waived with a single waiver
        let masks = vec![0b01u32, 0b10u32];
        let counts = vec![2u32, 1u32];
        match min_hitting_multiset(2, &masks, &counts, 1, None) {
            HittingSet::Optimal(s) => assert_eq!(s, vec![0]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn family_validation() {
        assert!(SetFamily::new(33, [[0usize]]).is_err());
        assert!(SetFamily::new(4, [[4usize]]).is_err());
        assert!(SetFamily::from_masks(4, vec![0]).is_err());
    }
}
