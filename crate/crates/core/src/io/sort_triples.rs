//! Sort-value triples: each statement node linked to the canonical JSON of
//! its five sort values.

use std::fmt::Write as _;

use crate::io::ndjson::statement_key;
use crate::io::turtle::UNDEFINED_MARKER;
use crate::iri::{self, Iri};
use crate::model::{KnowledgeGraph, Literal, Statement, StatementKind, Value};
use crate::sort_builder::{
    encode_annotations, encode_causality, encode_provenance, encode_sequence, encode_validity,
};

const HEADER_PREFIXES: &[(&str, &str)] = &[
    ("wd", iri::WD),
    ("wds", iri::WDS),
    ("wdref", iri::WDREF),
    ("p", iri::P),
    ("ps", iri::PS),
    ("pq", iri::PQ),
    ("wdno", iri::WDNO),
    ("prov", iri::PROV),
    ("xsd", iri::XSD),
    ("kgq", iri::KGQ),
    ("kgqs", iri::KGQS),
];

fn quote(s: &str, q: char) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push(q);
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c == q => {
                out.push('\\');
                out.push(c);
            }
            c => out.push(c),
        }
    }
    out.push(q);
    out
}

fn literal(l: &Literal) -> String {
    match &l.lang {
        Some(lang) => format!("{}@{lang}", quote(&l.lexical, '"')),
        None if l.datatype.as_str() == "xsd:string" => quote(&l.lexical, '"'),
        None => format!("{}^^{}", quote(&l.lexical, '"'), l.datatype),
    }
}

/// The node IRI written for a statement.
pub fn statement_node(s: &Statement) -> Iri {
    s.id.clone().unwrap_or_else(|| statement_key(s))
}

/// Renders the graph; statements ordered by subject, then node IRI.
/// Properties outside the `wd:` namespace have no `p:` form and are written
/// as comments.
pub fn emit_sort_triples(g: &KnowledgeGraph) -> String {
    let mut out = String::new();
    for (p, ns) in HEADER_PREFIXES {
        let _ = writeln!(out, "@prefix {p}: <{ns}> .");
    }
    let mut rows: Vec<(&Iri, Iri, &Statement)> = g
        .iter()
        .map(|s| (&s.subject, statement_node(s), s))
        .collect();
    rows.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let mut blanks = 0usize;
    for (subject, node, s) in rows {
        out.push('\n');
        if s.property.prefix() != Some("wd") {
            let _ = writeln!(
                out,
                "# {node}: property {} has no p:/ps: form; not written",
                s.property
            );
            continue;
        }
        let p = s.property.local();
        let _ = writeln!(out, "{subject} p:{p} {node} .");
        match (s.kind, &s.value) {
            (StatementKind::St, Some(v)) => {
                let obj = match v {
                    Value::Entity(i) => i.to_string(),
                    Value::Literal(l) => literal(l),
                    Value::Undefined => UNDEFINED_MARKER.to_string(),
                    Value::NoValue | Value::SomeValue => unreachable!("validated statement"),
                };
                let _ = writeln!(out, "{node} ps:{p} {obj} ;");
            }
            (StatementKind::Ssome, _) => {
                let _ = writeln!(out, "{node} ps:{p} _:v{blanks} ;");
                blanks += 1;
            }
            _ => {
                let _ = writeln!(out, "{node} a wdno:{p} ;");
            }
        }
        let sorts = [
            ("validityJ", encode_validity(&s.validity)),
            ("causalityJ", encode_causality(&s.causality)),
            ("sequenceJ", encode_sequence(&s.sequence)),
            ("annotationsJ", encode_annotations(&s.annotations)),
            ("provenanceJ", encode_provenance(&s.provenance)),
        ];
        for (i, (name, json)) in sorts.iter().enumerate() {
            let end = if i + 1 == sorts.len() { '.' } else { ';' };
            let _ = writeln!(
                out,
                "    pq:{name} {} {end}",
                quote(&json.to_string(), '\'')
            );
        }
    }
    out
}

pub fn save_sort_triples(
    g: &KnowledgeGraph,
    path: &std::path::Path,
) -> Result<(), crate::error::IoError> {
    std::fs::write(path, emit_sort_triples(g)).map_err(|source| crate::error::IoError::File {
        path: path.display().to_string(),
        source,
    })
}
