//! The shipped rule set, one `.rules` file per rule.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rule_dsl::{load_rules, Diagnostic, Rule, Signature};

/// Where a shipped rule comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleFamily {
    Ontological,
    Constraint,
    Qualifier,
    Domain,
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub family: RuleFamily,
}

macro_rules! entry {
    ($name:literal, $family:ident) => {
        CorpusEntry {
            name: $name,
            source: include_str!(concat!("../rules/", $name, ".rules")),
            family: RuleFamily::$family,
        }
    };
}

/// Declaration order is the load order.
pub const CORPUS: &[CorpusEntry] = &[
    entry!("instance_of", Ontological),
    entry!("symmetry", Constraint),
    entry!("sequence_previous", Qualifier),
    entry!("spouse_death", Domain),
    entry!("subclass_of", Ontological),
    entry!("subproperty_of_transitive", Ontological),
    entry!("subproperty_of_inheritance", Ontological),
    entry!("different_from", Ontological),
    entry!("inverse_property", Ontological),
    entry!("sequence_next", Qualifier),
    entry!("subject_type", Constraint),
    entry!("value_type", Constraint),
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("no builtin rule named `{0}`")]
    UnknownRule(String),
    #[error("builtin rule `{name}` is invalid: {}", .diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid {
        name: String,
        diagnostics: Vec<Diagnostic>,
    },
}

/// Which rules to load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    All,
    Names(BTreeSet<String>),
}

impl Selector {
    pub fn names<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> Self {
        Selector::Names(names.into_iter().map(Into::into).collect())
    }
}

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|e| e.name)
}

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

/// Parsed, checked rules in declaration order.
pub fn load_builtin_rules(selector: &Selector) -> Result<Vec<Rule>, CorpusError> {
    if let Selector::Names(names) = selector {
        if let Some(missing) = names.iter().find(|n| entry(n).is_none()) {
            return Err(CorpusError::UnknownRule(missing.clone()));
        }
    }
    let sig = Signature::default();
    let mut out = Vec::new();
    for e in CORPUS {
        let wanted = match selector {
            Selector::All => true,
            Selector::Names(n) => n.contains(e.name),
        };
        if wanted {
            let rules = load_rules(e.source, &sig).map_err(|diagnostics| CorpusError::Invalid {
                name: e.name.to_string(),
                diagnostics,
            })?;
            out.extend(rules);
        }
    }
    Ok(out)
}
