//! The causality sort: begin causes and end causes.

use std::collections::{BTreeSet, HashMap};

use crate::iri::Iri;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Causality {
    pub has_cause: BTreeSet<Iri>,
    pub end_cause: BTreeSet<Iri>,
}

impl Causality {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.has_cause.is_empty() && self.end_cause.is_empty()
    }

    pub fn add_end_cause<I: IntoIterator<Item = Iri>>(&self, causes: I) -> Self {
        let mut c = self.clone();
        c.end_cause.extend(causes);
        c
    }

    pub fn add_has_cause<I: IntoIterator<Item = Iri>>(&self, causes: I) -> Self {
        let mut c = self.clone();
        c.has_cause.extend(causes);
        c
    }

    pub fn get_end_cause(&self) -> &BTreeSet<Iri> {
        &self.end_cause
    }

    pub fn get_has_cause(&self) -> &BTreeSet<Iri> {
        &self.has_cause
    }

    pub fn union(&self, other: &Self) -> Self {
        Causality {
            has_cause: self.has_cause.union(&other.has_cause).cloned().collect(),
            end_cause: self.end_cause.union(&other.end_cause).cloned().collect(),
        }
    }

    pub fn inverse(&self, map: &InverseCauseMap) -> Self {
        Causality {
            has_cause: self
                .has_cause
                .iter()
                .filter_map(|e| map.invert(e))
                .collect(),
            end_cause: self
                .end_cause
                .iter()
                .filter_map(|e| map.invert(e))
                .collect(),
        }
    }
}

/// Image of an entity under cause inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseCause {
    To(Iri),
    Drop,
}

/// Literal token for [`InverseCause::Drop`] in inverse-map files.
pub const DROP_TOKEN: &str = "!drop";

/// `wd:Q99521170`, the "death of subject" cause used by the spouse/death rule.
pub const DEATH_OF_SUBJECT: &str = "wd:Q99521170";
/// Default partner of [`DEATH_OF_SUBJECT`]; override with [`InverseCauseMap::insert_pair`].
pub const DEATH_OF_OBJECT: &str = "<urn:kgq:cause:death-of-object>";

/// Maps causes to their inverse when a statement is read in the other
/// direction. Unmapped entities are self-inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseCauseMap {
    map: HashMap<Iri, InverseCause>,
}

impl Default for InverseCauseMap {
    fn default() -> Self {
        let mut m = InverseCauseMap::empty();
        m.insert_pair(
            Iri::from_canonical(DEATH_OF_SUBJECT).expect("constant"),
            Iri::from_canonical(DEATH_OF_OBJECT).expect("constant"),
        );
        m
    }
}

impl InverseCauseMap {
    pub fn empty() -> Self {
        InverseCauseMap {
            map: HashMap::new(),
        }
    }

    /// Registers `a ↔ b`.
    pub fn insert_pair(&mut self, a: Iri, b: Iri) {
        self.map.insert(a.clone(), InverseCause::To(b.clone()));
        self.map.insert(b, InverseCause::To(a));
    }

    /// One-directional entry, as read from a map file.
    pub fn insert(&mut self, entity: Iri, image: InverseCause) {
        self.map.insert(entity, image);
    }

    pub fn invert(&self, e: &Iri) -> Option<Iri> {
        match self.map.get(e) {
            None => Some(e.clone()),
            Some(InverseCause::To(x)) => Some(x.clone()),
            Some(InverseCause::Drop) => None,
        }
    }

    /// Every mapped pair round-trips (`m(m(a)) = a`).
    pub fn is_involutive(&self) -> bool {
        self.map.iter().all(|(a, img)| match img {
            InverseCause::To(b) => self.invert(b).as_ref() == Some(a),
            InverseCause::Drop => false,
        })
    }
}
