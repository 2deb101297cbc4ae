//! The sequence sort: predecessor, successor and ordinal of a statement's
//! subject among items sharing the same property and value.

use crate::error::AlgebraError;
use crate::iri::Iri;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SequenceNode {
    pub previous: Option<Iri>,
    pub next: Option<Iri>,
    pub ordinal: Option<u64>,
}

impl SequenceNode {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn seq(previous: Iri, next: Iri) -> Self {
        SequenceNode {
            previous: Some(previous),
            next: Some(next),
            ordinal: None,
        }
    }

    pub fn seq_with_ordinal_and_links(previous: Iri, next: Iri, ordinal: u64) -> Self {
        SequenceNode {
            previous: Some(previous),
            next: Some(next),
            ordinal: Some(ordinal),
        }
    }

    pub fn with_next(next: Iri) -> Self {
        SequenceNode {
            next: Some(next),
            ..Self::default()
        }
    }

    pub fn with_prev(previous: Iri) -> Self {
        SequenceNode {
            previous: Some(previous),
            ..Self::default()
        }
    }

    pub fn with_ordinal(ordinal: u64) -> Self {
        SequenceNode {
            ordinal: Some(ordinal),
            ..Self::default()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.previous.is_none() && self.next.is_none() && self.ordinal.is_none()
    }

    pub fn has_previous(&self) -> bool {
        self.previous.is_some()
    }

    pub fn has_next(&self) -> bool {
        self.next.is_some()
    }

    pub fn has_ordinal(&self) -> bool {
        self.ordinal.is_some()
    }

    /// `None` is the algebra's `undefined`.
    pub fn previous(&self) -> Option<&Iri> {
        self.previous.as_ref()
    }

    pub fn next(&self) -> Option<&Iri> {
        self.next.as_ref()
    }

    pub fn ordinal(&self) -> Result<u64, AlgebraError> {
        self.ordinal.ok_or(AlgebraError::NoOrdinal)
    }
}
