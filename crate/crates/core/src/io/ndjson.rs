//! Native graph persistence: one JSON object per statement per line.

use serde_json::{json, Map, Value as Json};
use sha2::{Digest, Sha256};

use crate::error::{DecodeError, IoError};
use crate::iri::{Iri, PrefixTable};
use crate::model::{KnowledgeGraph, Origin, Statement, StatementKind};
use crate::sort_builder::{
    decode_annotations, decode_causality, decode_provenance, decode_sequence, decode_validity,
    decode_value, encode_annotations, encode_causality, encode_provenance, encode_sequence,
    encode_validity, encode_value,
};

/// Statement content without `origin` and `id`.
fn content(s: &Statement) -> Map<String, Json> {
    let mut m = Map::new();
    m.insert("kind".into(), json!(s.kind.as_str()));
    m.insert("s".into(), json!(s.subject.as_str()));
    m.insert("p".into(), json!(s.property.as_str()));
    if let Some(v) = &s.value {
        m.insert("v".into(), encode_value(v));
    }
    m.insert("validity".into(), encode_validity(&s.validity));
    m.insert("causality".into(), encode_causality(&s.causality));
    m.insert("sequence".into(), encode_sequence(&s.sequence));
    m.insert("annotations".into(), encode_annotations(&s.annotations));
    m.insert("provenance".into(), encode_provenance(&s.provenance));
    m
}

/// Content-derived statement IRI, `kgqs:` plus 16 hex digits of SHA-256.
pub fn statement_key(s: &Statement) -> Iri {
    let digest = Sha256::digest(Json::Object(content(s)).to_string().as_bytes());
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    Iri::from_canonical(format!("kgqs:{hex}")).expect("kgqs is built in")
}

pub fn encode_statement(s: &Statement) -> Json {
    let mut m = content(s);
    m.insert("origin".into(), json!(s.origin.encode()));
    if let Some(id) = &s.id {
        m.insert("id".into(), json!(id.as_str()));
    }
    Json::Object(m)
}

fn field<'a>(m: &'a Map<String, Json>, key: &str) -> Result<&'a Json, DecodeError> {
    m.get(key)
        .ok_or_else(|| DecodeError::schema(key, "missing"))
}

fn iri_field(m: &Map<String, Json>, key: &str) -> Result<Iri, DecodeError> {
    let s = field(m, key)?
        .as_str()
        .ok_or_else(|| DecodeError::schema(key, "expected an IRI string"))?;
    PrefixTable::default()
        .resolve(s)
        .map_err(|e| DecodeError::schema(key, e.to_string()))
}

pub fn decode_statement(j: &Json) -> Result<Statement, DecodeError> {
    let m = j
        .as_object()
        .ok_or_else(|| DecodeError::schema("statement", "expected an object"))?;
    for k in m.keys() {
        if !matches!(
            k.as_str(),
            "kind"
                | "s"
                | "p"
                | "v"
                | "validity"
                | "causality"
                | "sequence"
                | "annotations"
                | "provenance"
                | "origin"
                | "id"
        ) {
            return Err(DecodeError::schema(k.as_str(), "unknown statement key"));
        }
    }
    let kind_s = field(m, "kind")?.as_str().unwrap_or_default();
    let kind = StatementKind::parse(kind_s)
        .ok_or_else(|| DecodeError::schema("kind", "expected st, sno or ssome"))?;
    let subject = iri_field(m, "s")?;
    let property = iri_field(m, "p")?;
    let mut s = match (kind, m.get("v")) {
        (StatementKind::St, Some(v)) => Statement::st(subject, property, decode_value(v)?),
        (StatementKind::St, None) => return Err(DecodeError::schema("v", "missing")),
        (_, Some(_)) => {
            return Err(DecodeError::schema(
                "v",
                "sno/ssome statements carry no value",
            ))
        }
        (k, None) => Statement::without_value(k, subject, property),
    };
    let empty = Json::Object(Map::new());
    let sub = |k: &str| m.get(k).unwrap_or(&empty);
    s.validity = decode_validity(sub("validity"))?;
    s.causality = decode_causality(sub("causality"))?;
    s.sequence = decode_sequence(sub("sequence"))?;
    s.annotations = decode_annotations(sub("annotations"))?;
    s.provenance = decode_provenance(sub("provenance"))?;
    s.origin = match m.get("origin") {
        None => Origin::Asserted,
        Some(o) => o
            .as_str()
            .and_then(Origin::decode)
            .ok_or_else(|| DecodeError::schema("origin", "expected asserted or inferred:<rule>"))?,
    };
    if m.contains_key("id") {
        s.id = Some(iri_field(m, "id")?);
    }
    s.validate()
        .map_err(|e| DecodeError::schema("kind", e.to_string()))?;
    Ok(s)
}

/// Serializes a graph as sorted lines, so equal graphs give equal bytes.
pub fn write_ndjson(g: &KnowledgeGraph) -> String {
    let mut lines: Vec<String> = g.iter().map(|s| encode_statement(s).to_string()).collect();
    lines.sort();
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

/// Parses NDJSON; blank lines are ignored. Duplicate statements collapse.
pub fn read_ndjson(text: &str, path: &str) -> Result<KnowledgeGraph, IoError> {
    let mut g = KnowledgeGraph::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let perr = |message: String| IoError::Parse {
            path: path.to_string(),
            line: n + 1,
            message,
        };
        let j: Json = serde_json::from_str(line).map_err(|e| perr(e.to_string()))?;
        let s = decode_statement(&j).map_err(|e| perr(e.to_string()))?;
        g.insert(s).map_err(|e| perr(e.to_string()))?;
    }
    Ok(g)
}

pub fn load_ndjson(path: &std::path::Path) -> Result<KnowledgeGraph, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    read_ndjson(&text, &path.display().to_string())
}

pub fn save_ndjson(g: &KnowledgeGraph, path: &std::path::Path) -> Result<(), IoError> {
    std::fs::write(path, write_ndjson(g)).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}
