//! Instances, concepts, concept classes and the meta-function that views a
//! class as a Boolean function over one variable per instance.
//!
//! Conventions, used everywhere in the crate:
//! - an instance over n variables is an index in `[0, 2^n)`; bit j of the
//!   index is the value of variable j (variable 0 in the least significant
//!   bit);
//! - a concept truth table stores f(instance i) at table position i;
//! - a concept table read as an integer is exactly the assignment feeding
//!   the meta-function.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bits::BitTable;
use crate::error::{Error, Result};

/// Hard cap on explicit Boolean function width: tables are enumerated in full.
pub const VARIABLE_CAP: usize = 16;
/// Meta-functions have 2^n variables, so classes over more than 4 variables
/// cannot be lifted.
pub const META_N_CAP: usize = 4;

/// A point of the instance space `{0,1}^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Instance {
    index: usize,
    n: usize,
}

impl Instance {
    pub fn new(index: usize, n: usize) -> Result<Self> {
        if index >= (1usize << n) {
            return Err(Error::InvalidInstance { index, n });
        }
        Ok(Instance { index, n })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of variables set to 1.
    pub fn weight(&self) -> usize {
        self.index.count_ones() as usize
    }
}

/// A labeled example shown to a learner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledSample {
    pub instance: Instance,
    pub label: bool,
}

impl LabeledSample {
    pub fn new(instance: Instance, label: bool) -> Self {
        LabeledSample { instance, label }
    }
}

/// A set of instance indices inside an ambient space of known size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSet {
    ambient: usize,
    members: Vec<usize>,
}

impl InstanceSet {
    pub fn new(ambient: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= ambient) {
            return Err(Error::InvalidInstance {
                index: bad,
                n: ambient.trailing_zeros() as usize,
            });
        }
        Ok(InstanceSet { ambient, members })
    }

    pub fn empty(ambient: usize) -> Self {
        InstanceSet { ambient, members: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Bitmask view; only valid for ambient sizes up to 32.
    pub fn as_mask(&self) -> u32 {
        assert!(self.ambient <= 32);
        self.members.iter().fold(0u32, |m, &i| m | (1 << i))
    }

    pub fn from_mask(ambient: usize, mask: u32) -> Self {
        let members = (0..ambient).filter(|&i| mask >> i & 1 == 1).collect();
        InstanceSet { ambient, members }
    }
}

/// A Boolean function on `{0,1}^n` given by its full truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Concept {
    n: usize,
    table: BitTable,
}

impl Concept {
    pub fn new(n: usize, table: BitTable) -> Result<Self> {
        if table.len() != 1usize << n {
            return Err(Error::MismatchedArity {
                left: table.len(),
                right: 1usize << n,
            });
        }
        Ok(Concept { n, table })
    }

    pub fn from_bitstring(n: usize, s: &str) -> Result<Self> {
        if s.len() != 1usize << n {
            return Err(Error::ClassFile(format!(
                "bitstring length {} does not match 2^{} = {}",
                s.len(),
                n,
                1usize << n
            )));
        }
        let table = BitTable::from_bitstring(s)
            .ok_or_else(|| Error::ClassFile(format!("non-binary character in {s:?}")))?;
        Ok(Concept { n, table })
    }

    /// The all-zero concept.
    pub fn zero(n: usize) -> Self {
        Concept { n, table: BitTable::zeros(1 << n) }
    }

    /// The indicator of a single instance.
    pub fn indicator(n: usize, instance: usize) -> Result<Self> {
        let inst = Instance::new(instance, n)?;
        let mut table = BitTable::zeros(1 << n);
        table.set(inst.index(), true);
        Ok(Concept { n, table })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        Concept { n, table: BitTable::from_fn(1 << n, |i| f(i)) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, instance: usize) -> bool {
        self.table.get(instance)
    }

    pub fn table(&self) -> &BitTable {
        &self.table
    }

    pub fn to_bitstring(&self) -> String {
        self.table.to_bitstring()
    }

    /// The truth table read as an integer assignment for the meta-function.
    pub fn table_value(&self) -> u64 {
        self.table.as_u64()
    }
}

/// An ordered set of distinct concepts over a common instance space.
///
/// Concepts are stored sorted by truth-table value, so identical inputs
/// always produce the identical class.
#[derive(Debug, Clone)]
pub struct ConceptClass {
    n: usize,
    concepts: Vec<Concept>,
    index: HashMap<BitTable, usize>,
}

impl ConceptClass {
    pub fn new(n: usize, mut concepts: Vec<Concept>) -> Result<Self> {
        if concepts.is_empty() {
            return Err(Error::EmptyClass);
        }
        for c in &concepts {
            if c.n() != n {
                return Err(Error::MismatchedArity { left: c.n(), right: n });
            }
        }
        concepts.sort();
        if concepts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateConcept);
        }
        let index = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.table().clone(), i))
            .collect();
        Ok(ConceptClass { n, concepts, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of instances, `2^n`.
    pub fn instance_count(&self) -> usize {
        1 << self.n
    }

    /// Number of concepts, `m`.
    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    pub fn contains(&self, c: &Concept) -> bool {
        c.n() == self.n && self.index.contains_key(c.table())
    }

    pub fn contains_table(&self, t: &BitTable) -> bool {
        self.index.contains_key(t)
    }

    pub fn position(&self, c: &Concept) -> Option<usize> {
        if c.n() != self.n {
            return None;
        }
        self.index.get(c.table()).copied()
    }
}

/// A Boolean function over `vars` named variables given by its full table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExplicitBooleanFunction {
    vars: usize,
    table: BitTable,
}

impl ExplicitBooleanFunction {
    pub fn new(vars: usize, table: BitTable) -> Result<Self> {
        if vars > VARIABLE_CAP {
            return Err(Error::CapExceeded {
                what: "explicit Boolean function variables",
                limit: VARIABLE_CAP,
                requested: vars,
            });
        }
        if table.len() != 1usize << vars {
            return Err(Error::MismatchedArity {
                left: table.len(),
                right: 1usize << vars,
            });
        }
        Ok(ExplicitBooleanFunction { vars, table })
    }

    pub fn from_fn(vars: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        if vars > VARIABLE_CAP {
            return Err(Error::CapExceeded {
                what: "explicit Boolean function variables",
                limit: VARIABLE_CAP,
                requested: vars,
            });
        }
        Ok(ExplicitBooleanFunction {
            vars,
            table: BitTable::from_fn(1 << vars, |i| f(i)),
        })
    }

    pub fn constant(vars: usize, value: bool) -> Result<Self> {
        Self::from_fn(vars, |_| value)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn input_count(&self) -> usize {
        1 << self.vars
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.table.get(x)
    }

    pub fn table(&self) -> &BitTable {
        &self.table
    }

    pub fn ones_count(&self) -> usize {
        self.table.count_ones()
    }

    pub fn is_constant(&self) -> bool {
        let ones = self.ones_count();
        ones == 0 || ones == self.input_count()
    }

    /// Pointwise complement `1 - f`.
    pub fn complement(&self) -> Self {
        ExplicitBooleanFunction {
            vars: self.vars,
            table: self.table.complement(),
        }
    }
}

/// Lifts a class to its meta-function: one variable per instance,
/// `F(g) = 1` iff the table `g` is a member.
pub fn meta_function(class: &ConceptClass) -> Result<ExplicitBooleanFunction> {
    if class.n() > META_N_CAP {
        return Err(Error::CapExceeded {
            what: "meta-function instance variables (n)",
            limit: META_N_CAP,
            requested: class.n(),
        });
    }
    let vars = class.instance_count();
    let mut table = BitTable::zeros(1 << vars);
    for c in class.concepts() {
        table.set(c.table_value() as usize, true);
    }
    ExplicitBooleanFunction::new(vars, table)
}

/// The instances on which two concepts disagree.
pub fn difference_set(f: &Concept, g: &Concept) -> Result<InstanceSet> {
    if f.n() != g.n() {
        return Err(Error::MismatchedArity { left: f.n(), right: g.n() });
    }
    let diff = f.table().xor(g.table());
    Ok(InstanceSet {
        ambient: 1 << f.n(),
        members: diff.iter_ones().collect(),
    })
}

/// Class members that agree with every sample, in class order.
pub fn consistent_concepts(
    class: &ConceptClass,
    samples: &[LabeledSample],
) -> Result<Vec<Concept>> {
    let mut seen: HashMap<usize, bool> = HashMap::new();
    for s in samples {
        if s.instance.n() != class.n() {
            return Err(Error::MismatchedArity {
                left: s.instance.n(),
                right: class.n(),
            });
        }
        if let Some(&prev) = seen.get(&s.instance.index()) {
            if prev != s.label {
                return Err(Error::ContradictorySamples { instance: s.instance.index() });
            }
        } else {
            seen.insert(s.instance.index(), s.label);
        }
    }
    Ok(class
        .concepts()
        .iter()
        .filter(|c| samples.iter().all(|s| c.value(s.instance.index()) == s.label))
        .cloned()
        .collect())
}

#[derive(Serialize, Deserialize)]
struct ClassFile {
    n: usize,
    concepts: Vec<String>,
}

/// Serializes a class in the JSON class-file format:
/// `{"n": int, "concepts": [bitstring]}` with bitstring position i holding
/// f(instance i).
pub fn class_to_json(class: &ConceptClass) -> String {
    let file = ClassFile {
        n: class.n(),
        concepts: class.concepts().iter().map(|c| c.to_bitstring()).collect(),
    };
    serde_json::to_string_pretty(&file).expect("class file serialization")
}

pub fn class_from_json(text: &str) -> Result<ConceptClass> {
    let file: ClassFile = serde_json::from_str(text)
        .map_err(|e| Error::ClassFile(e.to_string()))?;
    let concepts = file
        .concepts
        .iter()
        .map(|s| Concept::from_bitstring(file.n, s))
        .collect::<Result<Vec<_>>>()?;
    let class = ConceptClass::new(file.n, concepts)?;
    Ok(class)
}

pub fn save_class(class: &ConceptClass, path: &Path) -> Result<()> {
    std::fs::write(path, class_to_json(class))?;
    Ok(())
}

pub fn load_class(path: &Path) -> Result<ConceptClass> {
    let text = std::fs::read_to_string(path)?;
    class_from_json(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singleton_class(n: usize) -> ConceptClass {
        let concepts = (0..1usize << n)
            .map(|i| Concept::indicator(n, i).unwrap())
            .collect();
        ConceptClass::new(n, concepts).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(Instance::new(3, 2).is_ok());
        assert!(Instance::new(4, 2).is_err());
        assert_eq!(Instance::new(5, 3).unwrap().weight(), 2);
    }

    #[test]
    fn class_rejects_duplicates_and_empty() {
        let c = Concept::zero(2);
        assert!(matches!(
            ConceptClass::new(2, vec![c.clone(), c.clone()]),
            Err(Error::DuplicateConcept)
        ));
        assert!(matches!(ConceptClass::new(2, vec![]), Err(Error::EmptyClass)));
    }

    #[test]
    fn class_sorted_by_table_value() {
        let a = Concept::indicator(2, 3).unwrap();
        let b = Concept::indicator(2, 0).unwrap();
        let class = ConceptClass::new(2, vec![a, b]).unwrap();
        assert_eq!(class.concept(0).table_value(), 1); // indicator of 0
        assert_eq!(class.concept(1).table_value(), 8); // indicator of 3
    }

    #[test]
    fn meta_function_of_full_class_is_constant_one() {
        // all 16 concepts over n = 2
        let concepts = (0..16u64)
            .map(|v| Concept::new(2, crate::bits::BitTable::from_value(4, v)).unwrap())
            .collect();
        let class = ConceptClass::new(2, concepts).unwrap();
        let meta = meta_function(&class).unwrap();
        assert_eq!(meta.vars(), 4);
        assert_eq!(meta.ones_count(), 16);
    }

    #[test]
    fn meta_function_counts_members() {
        let class = ConceptClass::new(1, vec![Concept::zero(1)]).unwrap();
        let meta = meta_function(&class).unwrap();
        assert_eq!(meta.input_count(), 4);
        assert_eq!(meta.ones_count(), 1);
        assert!(meta.eval(0));

        let class = singleton_class(2);
        let meta = meta_function(&class).unwrap();
        assert_eq!(meta.ones_count(), 4);
        for x in 0..16usize {
            assert_eq!(meta.eval(x), x.count_ones() == 1);
        }
    }

    #[test]
    fn meta_function_cap() {
        let class = singleton_class(5);
        assert!(matches!(meta_function(&class), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn difference_set_examples() {
        let z = Concept::zero(2);
        assert!(difference_set(&z, &z).unwrap().is_empty());

        let g = Concept::indicator(2, 3).unwrap();
        assert_eq!(difference_set(&z, &g).unwrap().members(), &[3]);

        let ones = Concept::from_fn(2, |_| true);
        assert_eq!(difference_set(&z, &ones).unwrap().members(), &[0, 1, 2, 3]);

        let w = Concept::zero(3);
        assert!(matches!(
            difference_set(&z, &w),
            Err(Error::MismatchedArity { .. })
        ));
    }

    #[test]
    fn difference_set_symmetric() {
        let f = Concept::from_fn(3, |i| i % 3 == 0);
        let g = Concept::from_fn(3, |i| i % 2 == 0);
        let fg = difference_set(&f, &g).unwrap();
        let gf = difference_set(&g, &f).unwrap();
        assert_eq!(fg, gf);
    }

    #[test]
    fn consistent_concepts_examples() {
        let class = singleton_class(3);
        assert_eq!(consistent_concepts(&class, &[]).unwrap().len(), 8);

        let five = Instance::new(5, 3).unwrap();
        let pos = consistent_concepts(&class, &[LabeledSample::new(five, true)]).unwrap();
        assert_eq!(pos, vec![Concept::indicator(3, 5).unwrap()]);

        let neg = consistent_concepts(&class, &[LabeledSample::new(five, false)]).unwrap();
        assert_eq!(neg.len(), 7);
        assert!(!neg.contains(&Concept::indicator(3, 5).unwrap()));
    }

    #[test]
    fn consistent_concepts_contradiction() {
        let class = singleton_class(2);
        let x = Instance::new(1, 2).unwrap();
        let err = consistent_concepts(
            &class,
            &[LabeledSample::new(x, true), LabeledSample::new(x, false)],
        );
        assert!(matches!(err, Err(Error::ContradictorySamples { instance: 1 })));
    }

    #[test]
    fn consistent_concepts_monotone_under_more_samples() {
        let class = singleton_class(3);
        let s1 = LabeledSample::new(Instance::new(2, 3).unwrap(), false);
        let s2 = LabeledSample::new(Instance::new(6, 3).unwrap(), false);
        let one = consistent_concepts(&class, &[s1]).unwrap();
        let two = consistent_concepts(&class, &[s1, s2]).unwrap();
        assert!(two.len() <= one.len());
        assert!(two.iter().all(|c| one.contains(c)));
    }

    #[test]
    fn class_file_roundtrip_and_rejections() {
        let class = singleton_class(2);
        let json = class_to_json(&class);
        let back = class_from_json(&json).unwrap();
        assert_eq!(back.len(), class.len());
        assert_eq!(back.concepts(), class.concepts());

        // wrong length
        assert!(class_from_json(r#"{"n":2,"concepts":["010"]}"#).is_err());
        // non-binary characters
        assert!(class_from_json(r#"{"n":2,"concepts":["01x0"]}"#).is_err());
        // duplicates
        assert!(matches!(
            class_from_json(r#"{"n":2,"concepts":["0100","0100"]}"#),
            Err(Error::DuplicateConcept)
        ));
    }
}
