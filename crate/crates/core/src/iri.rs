//! IRIs in canonical compact form and the prefix table used to resolve them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::ModelError;

pub const WD: &str = "http://www.wikidata.org/entity/";
pub const WDS: &str = "http://www.wikidata.org/entity/statement/";
pub const WDREF: &str = "http://www.wikidata.org/reference/";
pub const P: &str = "http://www.wikidata.org/prop/";
pub const PS: &str = "http://www.wikidata.org/prop/statement/";
pub const PQ: &str = "http://www.wikidata.org/prop/qualifier/";
pub const WDNO: &str = "http://www.wikidata.org/prop/novalue/";
pub const WDT: &str = "http://www.wikidata.org/prop/direct/";
pub const PROV: &str = "http://www.w3.org/ns/prov#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const WIKIBASE: &str = "http://wikiba.se/ontology#";
pub const KGQ: &str = "urn:kgq:fn#";
pub const KGQS: &str = "urn:kgq:statement:";

/// Built-in prefixes. Order matters for compaction: the first namespace
/// that is the longest match wins.
const BUILTIN: &[(&str, &str)] = &[
    ("wd", WD),
    ("wds", WDS),
    ("wdref", WDREF),
    ("p", P),
    ("ps", PS),
    ("pq", PQ),
    ("wdno", WDNO),
    ("wdt", WDT),
    ("prov", PROV),
    ("xsd", XSD),
    ("rdf", RDF),
    ("wikibase", WIKIBASE),
    ("kgq", KGQ),
    ("kgqs", KGQS),
];

/// An IRI held in canonical form: `prefix:local` when a built-in namespace
/// matches, `<full>` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    /// Builds an IRI from text that is already canonical (as produced by
    /// [`Iri::as_str`]). Use [`PrefixTable::resolve`] for user input.
    pub fn from_canonical(text: impl Into<String>) -> Result<Self, ModelError> {
        let text = text.into();
        if text.is_empty() {
            return Err(ModelError::InvalidIri {
                text,
                reason: "empty".into(),
            });
        }
        if text.starts_with('<') {
            if !text.ends_with('>') || text.len() < 3 {
                return Err(ModelError::InvalidIri {
                    text,
                    reason: "unterminated <...>".into(),
                });
            }
            return Ok(Iri(text));
        }
        match text.split_once(':') {
            Some((prefix, local)) if !local.is_empty() => {
                if !BUILTIN.iter().any(|(p, _)| *p == prefix) {
                    let reason = format!("unknown prefix `{prefix}`");
                    return Err(ModelError::InvalidIri { text, reason });
                }
                Ok(Iri(text))
            }
            _ => Err(ModelError::InvalidIri {
                text,
                reason: "expected prefix:local or <iri>".into(),
            }),
        }
    }

    /// Shorthand for a Wikidata entity or property, e.g. `Iri::wd("Q76")`.
    pub fn wd(local: &str) -> Self {
        Iri(format!("wd:{local}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn prefix(&self) -> Option<&str> {
        if self.0.starts_with('<') {
            None
        } else {
            self.0.split_once(':').map(|(p, _)| p)
        }
    }

    pub fn local(&self) -> &str {
        match self.0.split_once(':') {
            Some((_, l)) if !self.0.starts_with('<') => l,
            _ => &self.0,
        }
    }

    /// Expands to the full IRI string using the built-in table.
    pub fn expand(&self) -> String {
        if let Some(inner) = self.0.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            return inner.to_string();
        }
        let (prefix, local) = self.0.split_once(':').expect("canonical");
        let ns = BUILTIN
            .iter()
            .find(|(p, _)| *p == prefix)
            .map(|(_, n)| *n)
            .expect("builtin");
        format!("{ns}{local}")
    }

    /// Re-homes a property-namespaced IRI (`p:`, `ps:`, `pq:`, `wdno:`,
    /// `wdt:`) onto the entity namespace so `pq:P580` and `wd:P580` compare
    /// equal.
    pub fn to_entity(&self) -> Iri {
        match self.prefix() {
            Some("p" | "ps" | "pq" | "wdno" | "wdt") => Iri::wd(self.local()),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Prefix declarations. Built-ins are always present and may be shadowed by
/// declarations; the empty prefix defaults to the Wikidata entity namespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixTable {
    map: BTreeMap<String, String>,
}

impl Default for PrefixTable {
    fn default() -> Self {
        let mut map: BTreeMap<String, String> = BUILTIN
            .iter()
            .map(|(p, n)| (p.to_string(), n.to_string()))
            .collect();
        map.insert(String::new(), WD.to_string());
        PrefixTable { map }
    }
}

impl PrefixTable {
    pub fn declare(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.map.insert(prefix.into(), namespace.into());
    }

    pub fn namespace(&self, prefix: &str) -> Option<&str> {
        self.map.get(prefix).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(p, n)| (p.as_str(), n.as_str()))
    }

    /// Resolves `prefix:local`, `:local` or `<full>` into canonical form.
    pub fn resolve(&self, text: &str) -> Result<Iri, ModelError> {
        if let Some(inner) = text.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            return Ok(compact(inner));
        }
        let Some((prefix, local)) = text.split_once(':') else {
            return Err(ModelError::InvalidIri {
                text: text.to_string(),
                reason: "expected prefix:local or <iri>".into(),
            });
        };
        if local.is_empty() {
            return Err(ModelError::InvalidIri {
                text: text.to_string(),
                reason: "empty local name".into(),
            });
        }
        let ns = self
            .namespace(prefix)
            .ok_or_else(|| ModelError::InvalidIri {
                text: text.to_string(),
                reason: format!("undeclared prefix `{prefix}`"),
            })?;
        Ok(compact(&format!("{ns}{local}")))
    }
}

/// Compacts a full IRI against the built-in namespaces (longest match).
pub fn compact(full: &str) -> Iri {
    let best = BUILTIN
        .iter()
        .filter(|(_, ns)| full.len() > ns.len() && full.starts_with(ns))
        .max_by_key(|(_, ns)| ns.len());
    match best {
        Some((prefix, ns)) => {
            let local = &full[ns.len()..];
            if local
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '-' | '_' | '.'))
                && !local.ends_with('.')
            {
                Iri(format!("{prefix}:{local}"))
            } else {
                Iri(format!("<{full}>"))
            }
        }
        None => Iri(format!("<{full}>")),
    }
}
