//! The provenance sort (source sets) and the annotations sort (a keyed
//! multimap standing in for one add/get pair per qualifier).

use std::collections::{BTreeMap, BTreeSet};

use crate::iri::Iri;
use crate::model::Value;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub sources: BTreeSet<Iri>,
}

impl Provenance {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn add_sources<I: IntoIterator<Item = Iri>>(&self, sources: I) -> Self {
        let mut p = self.clone();
        p.sources.extend(sources);
        p
    }

    pub fn get_sources(&self) -> &BTreeSet<Iri> {
        &self.sources
    }

    pub fn union(&self, other: &Self) -> Self {
        Provenance {
            sources: self.sources.union(&other.sources).cloned().collect(),
        }
    }
}

/// Relation qualifier of property constraints (`relation`, P2309).
pub const RELATION: &str = "wd:P2309";
/// Class qualifier of property constraints (`class`, P2308).
pub const CLASS: &str = "wd:P2308";
/// Constraint-relation item meaning "instance of".
pub const CONSTRAINT_INSTANCE_OF: &str = "wd:Q21503252";
/// Constraint-relation item meaning "subclass of".
pub const CONSTRAINT_SUBCLASS_OF: &str = "wd:Q21514624";

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Annotations {
    attrs: BTreeMap<Iri, BTreeSet<Value>>,
}

impl Annotations {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.attrs.is_empty()
    }

    pub fn add(&self, qualifier: Iri, value: Value) -> Self {
        let mut a = self.clone();
        a.insert(qualifier, value);
        a
    }

    pub fn insert(&mut self, qualifier: Iri, value: Value) {
        self.attrs.entry(qualifier).or_default().insert(value);
    }

    pub fn get(&self, qualifier: &Iri) -> BTreeSet<Value> {
        self.attrs.get(qualifier).cloned().unwrap_or_default()
    }

    pub fn get_relation(&self) -> BTreeSet<Value> {
        self.get(&Iri::from_canonical(RELATION).expect("constant"))
    }

    pub fn get_class(&self) -> BTreeSet<Value> {
        self.get(&Iri::from_canonical(CLASS).expect("constant"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Iri, &BTreeSet<Value>)> {
        self.attrs.iter()
    }

    /// Number of stored (qualifier, value) pairs.
    pub fn pair_count(&self) -> usize {
        self.attrs.values().map(BTreeSet::len).sum()
    }
}
