//! Automorphism analysis of concept classes viewed as meta-functions:
//! weak-symmetry decisions with verifiable witnesses, the XOR-translation
//! subgroup, and the evasiveness prediction for weakly symmetric classes.
//!
//! An instance permutation pi is an automorphism when relabeling instances
//! maps the class onto itself; this is exactly invariance of the
//! meta-function under the induced variable permutation. Weak symmetry asks
//! for an automorphism carrying a to b for every ordered variable pair.

use serde::Serialize;

use crate::bits::BitTable;
use crate::core::ConceptClass;
use crate::error::{Error, Result};

/// Default budget on automorphism evaluations per decision.
pub const DEFAULT_CHECK_BUDGET: usize = 2_000_000;
/// Exhaustive per-pair search is attempted only up to this many instances.
pub const EXHAUSTIVE_INSTANCE_CAP: usize = 8;

/// A bijection on instance indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct InstancePermutation {
    map: Vec<usize>,
}

impl InstancePermutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let size = map.len();
        let mut seen = vec![false; size];
        for &y in &map {
            if y >= size || seen[y] {
                return Err(Error::InvalidInstance { index: y, n: size });
            }
            seen[y] = true;
        }
        Ok(InstancePermutation { map })
    }

    pub fn identity(size: usize) -> Self {
        InstancePermutation { map: (0..size).collect() }
    }

    /// The translation x -> x XOR d induced by negating a variable subset.
    pub fn xor_translation(n: usize, d: usize) -> Result<Self> {
        let size = 1usize << n;
        if d >= size {
            return Err(Error::InvalidInstance { index: d, n: size });
        }
        Ok(InstancePermutation { map: (0..size).map(|x| x ^ d).collect() })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    pub fn compose(&self, then: &InstancePermutation) -> Result<InstancePermutation> {
        if self.len() != then.len() {
            return Err(Error::MismatchedArity { left: self.len(), right: then.len() });
        }
        Ok(InstancePermutation {
            map: self.map.iter().map(|&x| then.map[x]).collect(),
        })
    }
}

/// Lifts a variable permutation plus a negation mask to the instance space:
/// bit `sigma[i]` of the image is bit i of the input, then the mask is
/// XORed in. The identity sigma with mask d is the XOR-translation by d.
pub fn lift_variable_permutation(
    n: usize,
    sigma: &[usize],
    negation_mask: usize,
) -> Result<InstancePermutation> {
    if sigma.len() != n {
        return Err(Error::MismatchedArity { left: sigma.len(), right: n });
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::InvalidInstance { index: s, n });
        }
        seen[s] = true;
    }
    let size = 1usize << n;
    if negation_mask >= size {
        return Err(Error::InvalidInstance { index: negation_mask, n: size });
    }
    let map = (0..size)
        .map(|x| {
            let mut y = 0usize;
            for (i, &si) in sigma.iter().enumerate() {
                if x >> i & 1 == 1 {
                    y |= 1 << si;
                }
            }
            y ^ negation_mask
        })
        .collect();
    Ok(InstancePermutation { map })
}

fn permute_table(table: &BitTable, pi: &InstancePermutation) -> BitTable {
    let mut out = BitTable::zeros(table.len());
    for x in table.iter_ones() {
        out.set(pi.apply(x), true);
    }
    out
}

/// Whether relabeling instances by pi maps the class onto itself; since pi
/// is a bijection this is equivalent to meta-function invariance.
pub fn is_automorphism(class: &ConceptClass, pi: &InstancePermutation) -> Result<bool> {
    if pi.len() != class.instance_count() {
        return Err(Error::MismatchedArity {
            left: pi.len(),
            right: class.instance_count(),
        });
    }
    Ok(class
        .concepts()
        .iter()
        .all(|c| class.contains_table(&permute_table(c.table(), pi))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryStatus {
    WeaklySymmetric,
    NotWeaklySymmetric,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofMode {
    Exhaustive,
    WeightArgument,
}

/// For a weakly symmetric class: an automorphism mapping a to b.
#[derive(Debug, Clone, Serialize)]
pub struct PairWitness {
    pub a: usize,
    pub b: usize,
    pub permutation: InstancePermutation,
}

/// A pair provably admitting no automorphism that maps a to b.
#[derive(Debug, Clone, Serialize)]
pub struct PairCounterexample {
    pub a: usize,
    pub b: usize,
    pub proof: ProofMode,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryVerdict {
    pub status: SymmetryStatus,
    /// One automorphism per ordered pair (a, b), a != b, when weakly
    /// symmetric.
    pub witnesses: Vec<PairWitness>,
    pub counterexample: Option<PairCounterexample>,
    pub checks_used: usize,
    /// Pairs left unresolved by the budget (status Unknown).
    pub unresolved: Vec<(usize, usize)>,
}

/// Interprets "permutes the variables in the pair" transitively: for each
/// ordered pair some automorphism must map the first variable to the second.
const READ_MAP: u8 = 0;
/// The stricter swap reading: the automorphism must exchange the pair.
const READ_SWAP: u8 = 1;

pub fn weak_symmetry(class: &ConceptClass, budget: Option<usize>) -> SymmetryVerdict {
    decide(class, budget.unwrap_or(DEFAULT_CHECK_BUDGET), READ_MAP)
}

/// The alternative reading requiring pi(a) = b and pi(b) = a; the harness
/// compares both on small classes.
pub fn weak_symmetry_swap_reading(
    class: &ConceptClass,
    budget: Option<usize>,
) -> SymmetryVerdict {
    decide(class, budget.unwrap_or(DEFAULT_CHECK_BUDGET), READ_SWAP)
}

struct Decider<'a> {
    class: &'a ConceptClass,
    size: usize,
    columns: Vec<usize>,
    checks: usize,
    budget: usize,
    reading: u8,
}

enum PairOutcome {
    Found(InstancePermutation),
    NoneExists(ProofMode),
    BudgetOut,
}

impl<'a> Decider<'a> {
    fn check(&mut self, pi: &InstancePermutation) -> Option<bool> {
        if self.checks >= self.budget {
            return None;
        }
        self.checks += 1;
        Some(is_automorphism(self.class, pi).expect("sizes match by construction"))
    }

    fn satisfies_reading(&self, pi: &InstancePermutation, a: usize, b: usize) -> bool {
        match self.reading {
            READ_SWAP => pi.apply(a) == b && pi.apply(b) == a,
            _ => pi.apply(a) == b,
        }
    }

    /// Structured candidates: the XOR-translation by a^b, then every lifted
    /// variable permutation whose negation mask is forced by pi(a) = b. The
    /// search is not complete, so failure only means "not found here".
    fn structured(&mut self, a: usize, b: usize) -> Option<PairOutcome> {
        let n = self.class.n();
        let xlate = InstancePermutation::xor_translation(n, a ^ b).expect("mask in range");
        debug_assert!(self.satisfies_reading(&xlate, a, b));
        match self.check(&xlate) {
            None => return Some(PairOutcome::BudgetOut),
            Some(true) => return Some(PairOutcome::Found(xlate)),
            Some(false) => {}
        }
        let vars: Vec<usize> = (0..n).collect();
        for sigma in permutations_lex(&vars) {
            if sigma.iter().enumerate().all(|(i, &s)| i == s) {
                continue; // identity handled by the pure translation above
            }
            let lifted = lift_variable_permutation(n, &sigma, 0).expect("valid sigma");
            let mask = lifted.apply(a) ^ b;
            let pi = lift_variable_permutation(n, &sigma, mask).expect("valid sigma");
            if !self.satisfies_reading(&pi, a, b) {
                continue;
            }
            match self.check(&pi) {
                None => return Some(PairOutcome::BudgetOut),
                Some(true) => return Some(PairOutcome::Found(pi)),
                Some(false) => {}
            }
        }
        None
    }

    /// Complete per-pair search over all instance permutations mapping a to b
    /// (and b to a under the swap reading), pruned by column weights, which
    /// every automorphism must preserve.
    fn exhaustive(&mut self, a: usize, b: usize) -> PairOutcome {
        let size = self.size;
        if self.columns[a] != self.columns[b] {
            return PairOutcome::NoneExists(ProofMode::WeightArgument);
        }
        let mut map = vec![usize::MAX; size];
        let mut used = vec![false; size];
        map[a] = b;
        used[b] = true;
        if self.reading == READ_SWAP && a != b {
            map[b] = a;
            used[a] = true;
        }
        self.assign(0, &mut map, &mut used)
    }

    fn assign(
        &mut self,
        x: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> PairOutcome {
        if x == self.size {
            let pi = InstancePermutation { map: map.clone() };
            return match self.check(&pi) {
                None => PairOutcome::BudgetOut,
                Some(true) => PairOutcome::Found(pi),
                Some(false) => PairOutcome::NoneExists(ProofMode::Exhaustive),
            };
        }
        if map[x] != usize::MAX {
            return self.assign(x + 1, map, used);
        }
        for y in 0..self.size {
            if used[y] || self.columns[x] != self.columns[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            match self.assign(x + 1, map, used) {
                PairOutcome::Found(pi) => return PairOutcome::Found(pi),
                PairOutcome::BudgetOut => return PairOutcome::BudgetOut,
                PairOutcome::NoneExists(_) => {}
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        PairOutcome::NoneExists(ProofMode::Exhaustive)
    }
}

fn permutations_lex(items: &[usize]) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    items.iter().copied().permutations(items.len()).collect()
}

fn decide(class: &ConceptClass, budget: usize, reading: u8) -> SymmetryVerdict {
    let size = class.instance_count();
    let columns: Vec<usize> = (0..size)
        .map(|x| class.concepts().iter().filter(|c| c.value(x)).count())
        .collect();
    let mut d = Decider { class, size, columns, checks: 0, budget, reading };

    // An automorphism preserves per-instance member counts, so differing
    // counts refute the pair outright.
    for a in 0..size {
        for b in 0..size {
            if a == b || d.columns[a] == d.columns[b] {
                continue;
            }
            let proof = if size <= EXHAUSTIVE_INSTANCE_CAP {
                ProofMode::Exhaustive
            } else {
                ProofMode::WeightArgument
            };
            return SymmetryVerdict {
                status: SymmetryStatus::NotWeaklySymmetric,
                witnesses: Vec::new(),
                counterexample: Some(PairCounterexample { a, b, proof }),
                checks_used: d.checks,
                unresolved: Vec::new(),
            };
        }
    }

    let mut witnesses = Vec::new();
    let mut unresolved = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a == b {
                continue;
            }
            match d.structured(a, b) {
                Some(PairOutcome::Found(pi)) => {
                    witnesses.push(PairWitness { a, b, permutation: pi });
                    continue;
                }
                Some(PairOutcome::BudgetOut) => {
                    unresolved.push((a, b));
                    continue;
                }
                _ => {}
            }
            if size > EXHAUSTIVE_INSTANCE_CAP {
                unresolved.push((a, b));
                continue;
            }
            match d.exhaustive(a, b) {
                PairOutcome::Found(pi) => {
                    witnesses.push(PairWitness { a, b, permutation: pi });
                }
                PairOutcome::BudgetOut => unresolved.push((a, b)),
                PairOutcome::NoneExists(proof) => {
                    return SymmetryVerdict {
                        status: SymmetryStatus::NotWeaklySymmetric,
                        witnesses: Vec::new(),
                        counterexample: Some(PairCounterexample { a, b, proof }),
                        checks_used: d.checks,
                        unresolved: Vec::new(),
                    };
                }
            }
        }
    }
    if unresolved.is_empty() {
        SymmetryVerdict {
            status: SymmetryStatus::WeaklySymmetric,
            witnesses,
            counterexample: None,
            checks_used: d.checks,
            unresolved,
        }
    } else {
        SymmetryVerdict {
            status: SymmetryStatus::Unknown,
            witnesses,
            counterexample: None,
            checks_used: d.checks,
            unresolved,
        }
    }
}

/// Re-verifies every attached witness; used by tests and the report path.
pub fn verify_witnesses(class: &ConceptClass, verdict: &SymmetryVerdict) -> bool {
    verdict.witnesses.iter().all(|w| {
        w.permutation.apply(w.a) == w.b
            && is_automorphism(class, &w.permutation).unwrap_or(false)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RvPrediction {
    PredictEvasive,
    NoPrediction,
}

/// Evasiveness prediction: non-constant weakly symmetric functions on a
/// prime-power number of variables (2^n always is one) must query every
/// variable in the worst case.
#[derive(Debug, Clone, Serialize)]
pub struct RvReport {
    pub prediction: RvPrediction,
    pub meta_variables: usize,
    /// Observed decision-tree depth of the meta-function, when computed.
    pub observed_depth: Option<usize>,
    /// For an evasiveness prediction: whether the observed depth equals the
    /// variable count.
    pub consistent: Option<bool>,
}

pub fn rivest_vuillemin_flag(
    class: &ConceptClass,
    verdict: &SymmetryVerdict,
    observed_depth: Option<usize>,
) -> RvReport {
    let vars = class.instance_count();
    // the meta-function is constant only for the full powerset (it is never
    // constant 0 since classes are non-empty)
    let constant = vars <= 63 && class.len() == 1usize << vars;
    let prediction = if !constant && verdict.status == SymmetryStatus::WeaklySymmetric {
        RvPrediction::PredictEvasive
    } else {
        RvPrediction::NoPrediction
    };
    let consistent = match (prediction, observed_depth) {
        (RvPrediction::PredictEvasive, Some(d)) => Some(d == vars),
        _ => None,
    };
    RvReport {
        prediction,
        meta_variables: vars,
        observed_depth,
        consistent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::decision_tree_depth;
    use crate::core::meta_function;
    use crate::zoo;

    #[test]
    fn lift_examples() {
        let id = lift_variable_permutation(3, &[0, 1, 2], 0).unwrap();
        assert_eq!(id, InstancePermutation::identity(8));

        // identity sigma with mask a^b swaps a and b
        let (a, b) = (3usize, 5usize);
        let pi = lift_variable_permutation(3, &[0, 1, 2], a ^ b).unwrap();
        assert_eq!(pi.apply(a), b);
        assert_eq!(pi.apply(b), a);

        // applying the translation twice is the identity
        let twice = pi.compose(&pi).unwrap();
        assert_eq!(twice, InstancePermutation::identity(8));

        assert!(lift_variable_permutation(3, &[0, 0, 2], 0).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let s3 = zoo::singletons(3).unwrap();
        let id = InstancePermutation::identity(8);
        assert!(is_automorphism(&s3, &id).unwrap());

        // every XOR translation permutes indicators among themselves
        for d in 0..8 {
            let pi = InstancePermutation::xor_translation(3, d).unwrap();
            assert!(is_automorphism(&s3, &pi).unwrap());
        }

        // monomials of size exactly 2 are closed under variable negation
        let me = zoo::monomials_exactly(3, 2).unwrap();
        for d in 0..8 {
            let pi = InstancePermutation::xor_translation(3, d).unwrap();
            assert!(is_automorphism(&me, &pi).unwrap(), "translation by {d}");
        }

        // the translation forced by a low-weight pair breaks the monotone
        // variant
        let mm = zoo::monotone_monomials_exactly(3, 2).unwrap();
        let pi = InstancePermutation::xor_translation(3, 3 ^ 0).unwrap();
        assert!(!is_automorphism(&mm, &pi).unwrap());

        let wrong = InstancePermutation::identity(4);
        assert!(matches!(
            is_automorphism(&s3, &wrong),
            Err(Error::MismatchedArity { .. })
        ));
    }

    #[test]
    fn xor_translations_form_a_group() {
        let me = zoo::monomials_exactly(3, 2).unwrap();
        let p1 = InstancePermutation::xor_translation(3, 5).unwrap();
        let p2 = InstancePermutation::xor_translation(3, 6).unwrap();
        let composed = p1.compose(&p2).unwrap();
        assert_eq!(composed, InstancePermutation::xor_translation(3, 3).unwrap());
        assert!(is_automorphism(&me, &composed).unwrap());
    }

    #[test]
    fn weak_symmetry_verdicts() {
        let s2 = zoo::singletons(2).unwrap();
        let v = weak_symmetry(&s2, None);
        assert_eq!(v.status, SymmetryStatus::WeaklySymmetric);
        assert_eq!(v.witnesses.len(), 4 * 3);
        assert!(verify_witnesses(&s2, &v));

        let me = zoo::monomials_exactly(3, 2).unwrap();
        let v = weak_symmetry(&me, None);
        assert_eq!(v.status, SymmetryStatus::WeaklySymmetric);
        assert!(verify_witnesses(&me, &v));

        let mm = zoo::monotone_monomials_exactly(3, 2).unwrap();
        let v = weak_symmetry(&mm, None);
        assert_eq!(v.status, SymmetryStatus::NotWeaklySymmetric);
        let ce = v.counterexample.expect("counterexample attached");
        // raw verification: no permutation mapping a to b is an automorphism
        let (a, b) = (ce.a, ce.b);
        let others: Vec<usize> = (0..8).filter(|&x| x != a).collect();
        use itertools::Itertools;
        for targets in (0..8usize).filter(|&y| y != b).permutations(7) {
            let mut map = vec![0usize; 8];
            map[a] = b;
            for (&x, &y) in others.iter().zip(targets.iter()) {
                map[x] = y;
            }
            let pi = InstancePermutation::new(map).unwrap();
            assert!(!is_automorphism(&mm, &pi).unwrap());
        }
    }

    #[test]
    fn swap_reading_agrees_on_zoo_classes() {
        for spec in zoo::standard_suite(2) {
            let class = spec.build().unwrap();
            let map = weak_symmetry(&class, None);
            let swap = weak_symmetry_swap_reading(&class, None);
            assert_eq!(map.status, swap.status, "{}", spec.label());
        }
    }

    #[test]
    fn weight_argument_matches_structure() {
        // members of the exactly-k monotone class only accept instances of
        // weight >= k, so column weights differ across instance weights
        let mm = zoo::monotone_monomials_exactly(3, 2).unwrap();
        let v = weak_symmetry(&mm, None);
        let ce = v.counterexample.unwrap();
        let col = |x: usize| mm.concepts().iter().filter(|c| c.value(x)).count();
        assert_ne!(col(ce.a), col(ce.b));
    }

    #[test]
    fn rivest_vuillemin_cases() {
        // powerset: constant meta-function, no prediction
        let p2 = zoo::powerset(2).unwrap();
        let v = weak_symmetry(&p2, None);
        assert_eq!(v.status, SymmetryStatus::WeaklySymmetric);
        let rv = rivest_vuillemin_flag(&p2, &v, None);
        assert_eq!(rv.prediction, RvPrediction::NoPrediction);

        // singletons(2): predicted evasive and cross-checked D = 4
        let s2 = zoo::singletons(2).unwrap();
        let v = weak_symmetry(&s2, None);
        let meta = meta_function(&s2).unwrap();
        let d = decision_tree_depth(&meta).unwrap();
        let rv = rivest_vuillemin_flag(&s2, &v, Some(d));
        assert_eq!(rv.prediction, RvPrediction::PredictEvasive);
        assert_eq!(rv.observed_depth, Some(4));
        assert_eq!(rv.consistent, Some(true));

        // not weakly symmetric: no prediction
        let mm = zoo::monotone_monomials_exactly(3, 2).unwrap();
        let v = weak_symmetry(&mm, None);
        let rv = rivest_vuillemin_flag(&mm, &v, None);
        assert_eq!(rv.prediction, RvPrediction::NoPrediction);
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let s2 = zoo::singletons(2).unwrap();
        let v = weak_symmetry(&s2, Some(1));
        assert_eq!(v.status, SymmetryStatus::Unknown);
        assert!(!v.unresolved.is_empty());
    }
}
