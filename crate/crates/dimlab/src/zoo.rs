//! Generators for the concept classes and Boolean functions exercised by the
//! relation harness. Every generator is deterministic: the same parameters
//! produce the identical canonical class.

use std::collections::HashSet;

use itertools::Itertools;

use crate::bits::BitTable;
use crate::core::{Concept, ConceptClass, ExplicitBooleanFunction, META_N_CAP};
use crate::error::{Error, Result};

/// Cap on n for families whose size is `2^(2^n)`-ish (powerset, dictator,
/// complement enumeration).
pub const FULL_ENUM_N_CAP: usize = 4;
/// Cap on n for the sparse families (singletons and friends).
pub const SPARSE_N_CAP: usize = 16;
/// Enumeration budget for the combination-driven families.
pub const ENUM_CAP: u128 = 4_000_000;

fn check_n(n: usize, cap: usize) -> Result<()> {
    if n == 0 || n > cap {
        return Err(Error::CapExceeded {
            what: "class generator variables (n)",
            limit: cap,
            requested: n,
        });
    }
    Ok(())
}

/// Every Boolean function on n variables.
pub fn powerset(n: usize) -> Result<ConceptClass> {
    check_n(n, FULL_ENUM_N_CAP)?;
    let size = 1usize << n;
    let concepts = (0..1u64 << size)
        .map(|v| Concept::new(n, BitTable::from_value(size, v)))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

/// The indicator of each instance: `2^n` concepts of truth-table weight 1.
pub fn singletons(n: usize) -> Result<ConceptClass> {
    check_n(n, SPARSE_N_CAP)?;
    let concepts = (0..1usize << n)
        .map(|i| Concept::indicator(n, i))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

/// Singletons plus the all-zero concept.
pub fn singletons_with_empty(n: usize) -> Result<ConceptClass> {
    check_n(n, SPARSE_N_CAP)?;
    let mut concepts = (0..1usize << n)
        .map(|i| Concept::indicator(n, i))
        .collect::<Result<Vec<_>>>()?;
    concepts.push(Concept::zero(n));
    ConceptClass::new(n, concepts)
}

/// All concepts that evaluate to 1 on a fixed anchor instance; half of the
/// powerset.
pub fn dictator(n: usize, anchor: usize) -> Result<ConceptClass> {
    check_n(n, FULL_ENUM_N_CAP)?;
    let size = 1usize << n;
    if anchor >= size {
        return Err(Error::InvalidAnchor { anchor, n });
    }
    let concepts = (0..1u64 << size)
        .filter(|v| v >> anchor & 1 == 1)
        .map(|v| Concept::new(n, BitTable::from_value(size, v)))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    Ok(())
}

/// Truth table of the conjunction that fixes the variables in `support` to
/// the bits of `pattern`.
fn monomial_table(n: usize, support: usize, pattern: usize) -> BitTable {
    BitTable::from_fn(1 << n, |x| x & support == pattern)
}

/// Conjunctions of positive literals, every non-empty support.
pub fn monotone_monomials(n: usize) -> Result<ConceptClass> {
    check_n(n, 5)?;
    let concepts = (1usize..1 << n)
        .map(|support| Concept::new(n, monomial_table(n, support, support)))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

/// Conjunctions of literals (positive or negated), every non-empty support.
pub fn monomials(n: usize) -> Result<ConceptClass> {
    check_n(n, 5)?;
    let mut concepts = Vec::new();
    for support in 1usize..1 << n {
        // pattern = required values on the support; iterate its submasks
        let mut pattern = support;
        loop {
            concepts.push(Concept::new(n, monomial_table(n, support, pattern))?);
            if pattern == 0 {
                break;
            }
            pattern = (pattern - 1) & support;
        }
    }
    ConceptClass::new(n, concepts)
}

/// Monotone monomials whose unique minimal representation uses exactly k
/// variables: the 1-set is a subcube with k fixed coordinates, all positive.
pub fn monotone_monomials_exactly(n: usize, k: usize) -> Result<ConceptClass> {
    check_n(n, 5)?;
    check_k(n, k)?;
    let concepts = (1usize..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|support| Concept::new(n, monomial_table(n, support, support)))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

/// Monomials of exactly k literals; distinct literal patterns give distinct
/// subcubes, so no deduplication is needed.
pub fn monomials_exactly(n: usize, k: usize) -> Result<ConceptClass> {
    check_n(n, 5)?;
    check_k(n, k)?;
    let mut concepts = Vec::new();
    for support in (1usize..1 << n).filter(|s| s.count_ones() as usize == k) {
        let mut pattern = support;
        loop {
            concepts.push(Concept::new(n, monomial_table(n, support, pattern))?);
            if pattern == 0 {
                break;
            }
            pattern = (pattern - 1) & support;
        }
    }
    ConceptClass::new(n, concepts)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Disjunctions of at most k monomials (monotone or general), deduplicated
/// by truth table.
pub fn kterm_dnf(n: usize, k: usize, monotone: bool) -> Result<ConceptClass> {
    kterm_dnf_capped(n, k, monotone, ENUM_CAP)
}

pub fn kterm_dnf_capped(n: usize, k: usize, monotone: bool, cap: u128) -> Result<ConceptClass> {
    check_n(n, 5)?;
    if k == 0 {
        return Err(Error::InvalidK { k, n });
    }
    let terms: Vec<BitTable> = if monotone {
        (1usize..1 << n).map(|s| monomial_table(n, s, s)).collect()
    } else {
        let mut t = Vec::new();
        for support in 1usize..1 << n {
            let mut pattern = support;
            loop {
                t.push(monomial_table(n, support, pattern));
                if pattern == 0 {
                    break;
                }
                pattern = (pattern - 1) & support;
            }
        }
        t
    };
    let work: u128 = (1..=k.min(terms.len())).map(|j| binomial(terms.len(), j)).sum();
    if work > cap {
        return Err(Error::CapExceeded {
            what: "k-term DNF enumeration",
            limit: cap as usize,
            requested: work.min(usize::MAX as u128) as usize,
        });
    }
    let mut seen: HashSet<BitTable> = HashSet::new();
    for j in 1..=k.min(terms.len()) {
        for combo in (0..terms.len()).combinations(j) {
            let mut table = terms[combo[0]].clone();
            for &i in &combo[1..] {
                for (w, o) in table.words_mut().iter_mut().zip(terms[i].words().iter()) {
                    *w |= o;
                }
            }
            seen.insert(table);
        }
    }
    let concepts = seen
        .into_iter()
        .map(|t| Concept::new(n, t))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

/// All functions depending on at most k of the n variables.
pub fn kjuntas(n: usize, k: usize) -> Result<ConceptClass> {
    kjuntas_capped(n, k, ENUM_CAP)
}

pub fn kjuntas_capped(n: usize, k: usize, cap: u128) -> Result<ConceptClass> {
    check_n(n, 5)?;
    if k > n {
        return Err(Error::InvalidK { k, n });
    }
    let work = binomial(n, k) * (1u128 << (1u128 << k.min(6)));
    if k > 6 || work > cap {
        return Err(Error::CapExceeded {
            what: "k-junta enumeration",
            limit: cap as usize,
            requested: work.min(usize::MAX as u128) as usize,
        });
    }
    let mut seen: HashSet<BitTable> = HashSet::new();
    for vars in (0..n).combinations(k) {
        for h in 0u64..1 << (1 << k) {
            let table = BitTable::from_fn(1 << n, |x| {
                let mut idx = 0usize;
                for (bit, &v) in vars.iter().enumerate() {
                    idx |= ((x >> v) & 1) << bit;
                }
                h >> idx & 1 == 1
            });
            seen.insert(table);
        }
    }
    let concepts = seen
        .into_iter()
        .map(|t| Concept::new(n, t))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

/// All linearly separable functions: enumerate integer weight vectors in
/// `[-W, W]^n` with `W = 2^n`, sweeping every threshold between the attained
/// dot products.
pub fn ltf(n: usize) -> Result<ConceptClass> {
    check_n(n, FULL_ENUM_N_CAP)?;
    let size = 1usize << n;
    let w_bound = 1i32 << n;
    let mut present = vec![false; 1usize << size];
    let mut weights = vec![0i32; n];
    let mut dots = vec![0i32; size];
    enumerate_weights(n, 0, &mut weights, w_bound, &mut |w| {
        for (x, d) in dots.iter_mut().enumerate() {
            *d = (0..n).map(|i| if x >> i & 1 == 1 { w[i] } else { 0 }).sum();
        }
        let mut sorted = dots.clone();
        sorted.sort_unstable();
        sorted.dedup();
        // f(x) = [dot(x) >= theta]; only thresholds at attained values (plus
        // anything past the maximum, giving constant 0) change the table
        for &theta in sorted.iter() {
            let mut v = 0u64;
            for (x, &d) in dots.iter().enumerate() {
                if d >= theta {
                    v |= 1 << x;
                }
            }
            present[v as usize] = true;
        }
        present[0] = true;
    });
    let concepts = present
        .iter()
        .enumerate()
        .filter(|(_, &p)| p)
        .map(|(v, _)| Concept::new(n, BitTable::from_value(size, v as u64)))
        .collect::<Result<Vec<_>>>()?;
    ConceptClass::new(n, concepts)
}

fn enumerate_weights(
    n: usize,
    i: usize,
    weights: &mut Vec<i32>,
    bound: i32,
    visit: &mut impl FnMut(&[i32]),
) {
    if i == n {
        visit(weights);
        return;
    }
    for w in -bound..=bound {
        weights[i] = w;
        enumerate_weights(n, i + 1, weights, bound, visit);
    }
}

/// Every concept on n variables that is not in the given class.
pub fn complement_class(class: &ConceptClass) -> Result<ConceptClass> {
    if class.n() > META_N_CAP {
        return Err(Error::CapExceeded {
            what: "complement enumeration (n)",
            limit: META_N_CAP,
            requested: class.n(),
        });
    }
    let n = class.n();
    let size = 1usize << n;
    let concepts = (0..1u64 << size)
        .map(|v| Concept::new(n, BitTable::from_value(size, v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|c| !class.contains(c))
        .collect::<Vec<_>>();
    ConceptClass::new(n, concepts)
}

/// The Rubinstein function on `4k^2` variables: the variables split into 2k
/// contiguous pieces of size 2k, and the value is 1 iff some piece holds
/// exactly two cyclically adjacent ones and zeros elsewhere. Each piece has
/// exactly 2k satisfying configurations.
pub fn rubinstein(k: usize) -> Result<ExplicitBooleanFunction> {
    if k <= 1 {
        return Err(Error::DegenerateK);
    }
    let vars = 4 * k * k;
    if vars > crate::core::VARIABLE_CAP {
        return Err(Error::CapExceeded {
            what: "Rubinstein variables (4k^2)",
            limit: crate::core::VARIABLE_CAP,
            requested: vars,
        });
    }
    let piece = 2 * k;
    let good: Vec<usize> = (0..piece)
        .map(|j| (1usize << j) | (1usize << ((j + 1) % piece)))
        .collect();
    let piece_mask = (1usize << piece) - 1;
    ExplicitBooleanFunction::from_fn(vars, |x| {
        (0..piece).any(|p| {
            let cfg = (x >> (p * piece)) & piece_mask;
            good.contains(&cfg)
        })
    })
}

/// Named class families, mirroring the command-line vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Powerset,
    Singletons,
    SingletonsWithEmpty,
    Dictator,
    MonotoneMonomials,
    Monomials,
    MonotoneMonomialsExactly,
    MonomialsExactly,
    MonotoneKtermDnf,
    KtermDnf,
    Kjuntas,
    Ltf,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::Powerset,
        Family::Singletons,
        Family::SingletonsWithEmpty,
        Family::Dictator,
        Family::MonotoneMonomials,
        Family::Monomials,
        Family::MonotoneMonomialsExactly,
        Family::MonomialsExactly,
        Family::MonotoneKtermDnf,
        Family::KtermDnf,
        Family::Kjuntas,
        Family::Ltf,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Powerset => "powerset",
            Family::Singletons => "singletons",
            Family::SingletonsWithEmpty => "singletons-with-empty",
            Family::Dictator => "dictator",
            Family::MonotoneMonomials => "monotone-monomials",
            Family::Monomials => "monomials",
            Family::MonotoneMonomialsExactly => "monotone-monomials-exactly",
            Family::MonomialsExactly => "monomials-exactly",
            Family::MonotoneKtermDnf => "monotone-kterm-dnf",
            Family::KtermDnf => "kterm-dnf",
            Family::Kjuntas => "kjuntas",
            Family::Ltf => "ltf",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.iter().copied().find(|f| f.name() == s)
    }

    pub fn needs_k(&self) -> bool {
        matches!(
            self,
            Family::MonotoneMonomialsExactly
                | Family::MonomialsExactly
                | Family::MonotoneKtermDnf
                | Family::KtermDnf
                | Family::Kjuntas
        )
    }
}

/// A fully parameterized class request.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClassSpec {
    pub family: Family,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub anchor: Option<usize>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub complement: bool,
}

impl ClassSpec {
    pub fn new(family: Family, n: usize) -> Self {
        ClassSpec { family, n, k: None, anchor: None, complement: false }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_anchor(mut self, anchor: usize) -> Self {
        self.anchor = Some(anchor);
        self
    }

    pub fn complemented(mut self) -> Self {
        self.complement = true;
        self
    }

    pub fn build(&self) -> Result<ConceptClass> {
        let n = self.n;
        let need_k = || self.k.ok_or(Error::InvalidK { k: 0, n });
        let base = match self.family {
            Family::Powerset => powerset(n)?,
            Family::Singletons => singletons(n)?,
            Family::SingletonsWithEmpty => singletons_with_empty(n)?,
            Family::Dictator => dictator(n, self.anchor.unwrap_or(0))?,
            Family::MonotoneMonomials => monotone_monomials(n)?,
            Family::Monomials => monomials(n)?,
            Family::MonotoneMonomialsExactly => monotone_monomials_exactly(n, need_k()?)?,
            Family::MonomialsExactly => monomials_exactly(n, need_k()?)?,
            Family::MonotoneKtermDnf => kterm_dnf(n, need_k()?, true)?,
            Family::KtermDnf => kterm_dnf(n, need_k()?, false)?,
            Family::Kjuntas => kjuntas(n, need_k()?)?,
            Family::Ltf => ltf(n)?,
        };
        if self.complement {
            complement_class(&base)
        } else {
            Ok(base)
        }
    }

    pub fn label(&self) -> String {
        let mut inner = format!("{}(n={}", self.family.name(), self.n);
        if let Some(k) = self.k {
            inner.push_str(&format!(",k={k}"));
        }
        if let Some(a) = self.anchor {
            inner.push_str(&format!(",anchor={a}"));
        }
        inner.push(')');
        if self.complement {
            format!("complement({inner})")
        } else {
            inner
        }
    }
}

/// The canonical class list the harness sweeps at a given n.
pub fn standard_suite(n: usize) -> Vec<ClassSpec> {
    let mut suite = Vec::new();
    if n <= FULL_ENUM_N_CAP {
        suite.push(ClassSpec::new(Family::Powerset, n));
    }
    suite.push(ClassSpec::new(Family::Singletons, n));
    suite.push(ClassSpec::new(Family::SingletonsWithEmpty, n));
    if n <= FULL_ENUM_N_CAP {
        suite.push(ClassSpec::new(Family::Dictator, n).with_anchor(0));
    }
    suite.push(ClassSpec::new(Family::MonotoneMonomials, n));
    suite.push(ClassSpec::new(Family::Monomials, n));
    if n >= 2 {
        suite.push(ClassSpec::new(Family::MonotoneMonomialsExactly, n).with_k(2));
        suite.push(ClassSpec::new(Family::MonomialsExactly, n).with_k(2));
    }
    suite.push(ClassSpec::new(Family::MonotoneKtermDnf, n).with_k(2));
    suite.push(ClassSpec::new(Family::KtermDnf, n).with_k(2));
    suite.push(ClassSpec::new(Family::Kjuntas, n).with_k(2.min(n)));
    if n <= FULL_ENUM_N_CAP {
        suite.push(ClassSpec::new(Family::Ltf, n));
        suite.push(ClassSpec::new(Family::SingletonsWithEmpty, n).complemented());
    }
    suite
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::meta_function;

    #[test]
    fn simple_class_sizes() {
        assert_eq!(powerset(1).unwrap().len(), 4);
        assert_eq!(powerset(2).unwrap().len(), 16);
        assert_eq!(singletons(3).unwrap().len(), 8);
        assert!(singletons(3)
            .unwrap()
            .concepts()
            .iter()
            .all(|c| c.table().count_ones() == 1));
        assert_eq!(singletons_with_empty(3).unwrap().len(), 9);
        let d = dictator(2, 3).unwrap();
        assert_eq!(d.len(), 8);
        assert!(d.concepts().iter().all(|c| c.value(3)));
        assert!(matches!(dictator(2, 4), Err(Error::InvalidAnchor { .. })));
    }

    #[test]
    fn monomial_families() {
        assert_eq!(monotone_monomials(3).unwrap().len(), 7);
        assert_eq!(monomials(3).unwrap().len(), 26); // 3^3 - 1

        let mm32 = monotone_monomials_exactly(3, 2).unwrap();
        assert_eq!(mm32.len(), 3);
        // x0x1, x0x2, x1x2: 1-sets contain only instances of weight >= 2
        for c in mm32.concepts() {
            for x in 0..8 {
                if c.value(x) {
                    assert!((x as u32).count_ones() >= 2);
                }
            }
        }

        assert_eq!(monomials_exactly(2, 2).unwrap().len(), 4);
        assert!(monomials_exactly(2, 2)
            .unwrap()
            .concepts()
            .iter()
            .all(|c| c.table().count_ones() == 1));

        assert_eq!(monotone_monomials_exactly(3, 3).unwrap().len(), 1);
        assert!(matches!(
            monotone_monomials_exactly(3, 4),
            Err(Error::InvalidK { .. })
        ));
    }

    #[test]
    fn monomials_exactly_disjoint_across_k() {
        let a = monomials_exactly(3, 1).unwrap();
        let b = monomials_exactly(3, 2).unwrap();
        for c in a.concepts() {
            assert!(!b.contains(c));
        }
    }

    #[test]
    fn kterm_dnf_families() {
        let one_term = kterm_dnf(2, 1, true).unwrap();
        let monos = monotone_monomials(2).unwrap();
        assert_eq!(one_term.concepts(), monos.concepts());

        // XOR = x0 !x1 OR !x0 x1
        let xor = Concept::from_fn(2, |x| (x.count_ones() % 2) == 1);
        assert!(kterm_dnf(2, 2, false).unwrap().contains(&xor));

        // monotone members never decrease when a bit flips up
        let mono = kterm_dnf(3, 2, true).unwrap();
        for c in mono.concepts() {
            for x in 0..8usize {
                for i in 0..3 {
                    if x >> i & 1 == 0 {
                        assert!(!c.value(x) || c.value(x | 1 << i));
                    }
                }
            }
        }
    }

    #[test]
    fn kjuntas_families() {
        assert_eq!(kjuntas(3, 0).unwrap().len(), 2);
        assert_eq!(kjuntas(3, 1).unwrap().len(), 8);
        let full = kjuntas(2, 2).unwrap();
        assert_eq!(full.concepts(), powerset(2).unwrap().concepts());
    }

    /// Exact separability oracle for small n: a function is a threshold
    /// function iff no equal-size collections (up to pairs) drawn from the
    /// 1-set and the 0-set share a coordinate-wise sum. Checking pairs is
    /// exact for every width used here.
    fn separable_oracle(c: &Concept, n: usize) -> bool {
        let ones: Vec<usize> = (0..1 << n).filter(|&x| c.value(x)).collect();
        let zeros: Vec<usize> = (0..1 << n).filter(|&x| !c.value(x)).collect();
        for (ai, &a1) in ones.iter().enumerate() {
            for &a2 in &ones[ai..] {
                for (bi, &b1) in zeros.iter().enumerate() {
                    for &b2 in &zeros[bi..] {
                        if (0..n).all(|j| {
                            (a1 >> j & 1) + (a2 >> j & 1) == (b1 >> j & 1) + (b2 >> j & 1)
                        }) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn ltf_counts_and_oracle() {
        assert_eq!(ltf(1).unwrap().len(), 4);
        let l2 = ltf(2).unwrap();
        assert_eq!(l2.len(), 14);
        let xor = Concept::from_fn(2, |x| x.count_ones() % 2 == 1);
        assert!(!l2.contains(&xor));
        assert!(!l2.contains(&Concept::from_fn(2, |x| x.count_ones() % 2 == 0)));

        // cross-check every function on n <= 3 against the oracle
        for n in 1..=3usize {
            let class = ltf(n).unwrap();
            let size = 1usize << n;
            for v in 0..1u64 << size {
                let c = Concept::new(n, BitTable::from_value(size, v)).unwrap();
                assert_eq!(
                    class.contains(&c),
                    separable_oracle(&c, n),
                    "n {n} table {v:b}"
                );
            }
        }
        assert_eq!(ltf(3).unwrap().len(), 104);
    }

    #[test]
    fn ltf_members_are_unate() {
        let class = ltf(3).unwrap();
        for c in class.concepts() {
            for i in 0..3 {
                let mut up = false;
                let mut down = false;
                for x in 0..8usize {
                    if x >> i & 1 == 0 {
                        let lo = c.value(x);
                        let hi = c.value(x | 1 << i);
                        if !lo && hi {
                            up = true;
                        }
                        if lo && !hi {
                            down = true;
                        }
                    }
                }
                assert!(!(up && down), "member not unate in variable {i}");
            }
        }
    }

    #[test]
    fn complement_examples() {
        let p2 = powerset(2).unwrap();
        assert!(matches!(complement_class(&p2), Err(Error::EmptyClass)));

        let se2 = singletons_with_empty(2).unwrap();
        let comp = complement_class(&se2).unwrap();
        assert_eq!(comp.len(), 11);

        let meta = meta_function(&se2).unwrap();
        let meta_comp = meta_function(&comp).unwrap();
        assert_eq!(meta.complement(), meta_comp);
    }

    #[test]
    fn rubinstein_construction() {
        assert!(matches!(rubinstein(1), Err(Error::DegenerateK)));
        assert!(matches!(rubinstein(3), Err(Error::CapExceeded { .. })));

        let f = rubinstein(2).unwrap();
        assert_eq!(f.vars(), 16);
        assert!(!f.eval(0));
        // two cyclically adjacent ones in piece 0, all else 0
        assert!(f.eval(0b0011));
        assert!(f.eval(0b1001)); // wrap-around adjacency
        assert!(!f.eval(0b0101)); // ones not adjacent
        assert!(!f.eval(0b0111)); // three ones

        let zeros = (0..f.input_count()).filter(|&x| !f.eval(x)).count();
        assert_eq!(zeros, 20736); // (2^4 - 4)^4
    }

    #[test]
    fn generators_are_deterministic() {
        let a = monomials(3).unwrap();
        let b = monomials(3).unwrap();
        assert_eq!(a.concepts(), b.concepts());
        let a = kterm_dnf(3, 2, false).unwrap();
        let b = kterm_dnf(3, 2, false).unwrap();
        assert_eq!(a.concepts(), b.concepts());
    }

    #[test]
    fn spec_build_and_labels() {
        let spec = ClassSpec::new(Family::MonomialsExactly, 3).with_k(2);
        assert_eq!(spec.label(), "monomials-exactly(n=3,k=2)");
        assert_eq!(spec.build().unwrap().len(), 12);

        let spec = ClassSpec::new(Family::SingletonsWithEmpty, 2).complemented();
        assert_eq!(spec.label(), "complement(singletons-with-empty(n=2))");
        assert_eq!(spec.build().unwrap().len(), 11);

        assert!(Family::parse("ltf").is_some());
        assert!(Family::parse("nope").is_none());

        for spec in standard_suite(2) {
            assert!(spec.build().is_ok(), "{} failed", spec.label());
        }
    }
}
