//! Canonical JSON for sort values.
//!
//! Keys are camelCase and sorted, sets are sorted, absent optional fields
//! are omitted, and an empty sort value is `{}`.

use std::collections::BTreeSet;

use serde_json::{json, Map, Value as Json};

use crate::causality::Causality;
use crate::error::DecodeError;
use crate::iri::{Iri, PrefixTable};
use crate::model::{Literal, Value};
use crate::provenance::{Annotations, Provenance};
use crate::sequence::SequenceNode;
use crate::sort_builder::Category;
use crate::validity::{Instant, SpaceRegion, TimeInterval, ValidityContext};

/// A value of any of the five sorts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SortValue {
    Validity(ValidityContext),
    Causality(Causality),
    Sequence(SequenceNode),
    Annotations(Annotations),
    Provenance(Provenance),
}

impl SortValue {
    pub fn category(&self) -> Category {
        match self {
            SortValue::Validity(_) => Category::Validity,
            SortValue::Causality(_) => Category::Causality,
            SortValue::Sequence(_) => Category::Sequence,
            SortValue::Annotations(_) => Category::Annotation,
            SortValue::Provenance(_) => Category::Provenance,
        }
    }
}

pub fn encode_sort(v: &SortValue) -> String {
    match v {
        SortValue::Validity(x) => encode_validity(x).to_string(),
        SortValue::Causality(x) => encode_causality(x).to_string(),
        SortValue::Sequence(x) => encode_sequence(x).to_string(),
        SortValue::Annotations(x) => encode_annotations(x).to_string(),
        SortValue::Provenance(x) => encode_provenance(x).to_string(),
    }
}

pub fn decode_sort(category: Category, s: &str) -> Result<SortValue, DecodeError> {
    let j: Json = serde_json::from_str(s).map_err(|e| DecodeError::Json(e.to_string()))?;
    Ok(match category {
        Category::Validity => SortValue::Validity(decode_validity(&j)?),
        Category::Causality => SortValue::Causality(decode_causality(&j)?),
        Category::Sequence => SortValue::Sequence(decode_sequence(&j)?),
        Category::Annotation => SortValue::Annotations(decode_annotations(&j)?),
        Category::Provenance => SortValue::Provenance(decode_provenance(&j)?),
    })
}

fn iri_set(set: &BTreeSet<Iri>) -> Json {
    Json::Array(set.iter().map(|i| Json::String(i.to_string())).collect())
}

pub fn encode_value(v: &Value) -> Json {
    match v {
        Value::Entity(i) => Json::String(i.to_string()),
        Value::Literal(Literal {
            lexical,
            datatype,
            lang,
        }) => match lang {
            Some(l) => json!({"@value": lexical, "@lang": l}),
            None => json!({"@value": lexical, "@type": datatype.to_string()}),
        },
        Value::NoValue => json!({"@special": "noValue"}),
        Value::SomeValue => json!({"@special": "someValue"}),
        Value::Undefined => json!({"@special": "undefined"}),
    }
}

pub fn encode_validity(v: &ValidityContext) -> Json {
    let mut m = Map::new();
    match v.time {
        TimeInterval::Bottom => {
            m.insert("time".into(), json!({"bottom": true}));
        }
        TimeInterval::Interval { start, end } if !v.time.is_universal() => {
            let mut t = Map::new();
            if let Some(s) = start.to_xsd() {
                t.insert("start".into(), Json::String(s));
            }
            if let Some(e) = end.to_xsd() {
                t.insert("end".into(), Json::String(e));
            }
            m.insert("time".into(), Json::Object(t));
        }
        _ => {}
    }
    if let SpaceRegion::Regions(r) = &v.space {
        m.insert("space".into(), json!({"regions": iri_set(r)}));
    }
    Json::Object(m)
}

pub fn encode_causality(c: &Causality) -> Json {
    if c.is_empty() {
        return json!({});
    }
    json!({"hasCause": iri_set(&c.has_cause), "endCause": iri_set(&c.end_cause)})
}

pub fn encode_sequence(s: &SequenceNode) -> Json {
    let mut m = Map::new();
    if let Some(p) = &s.previous {
        m.insert("previous".into(), Json::String(p.to_string()));
    }
    if let Some(n) = &s.next {
        m.insert("next".into(), Json::String(n.to_string()));
    }
    if let Some(o) = s.ordinal {
        m.insert("ordinal".into(), json!(o));
    }
    Json::Object(m)
}

pub fn encode_provenance(p: &Provenance) -> Json {
    if p.is_empty() {
        return json!({});
    }
    json!({"sources": iri_set(&p.sources)})
}

pub fn encode_annotations(a: &Annotations) -> Json {
    let mut m = Map::new();
    for (q, vals) in a.iter() {
        m.insert(
            q.to_string(),
            Json::Array(vals.iter().map(encode_value).collect()),
        );
    }
    Json::Object(m)
}

fn object<'a>(j: &'a Json, ctx: &str) -> Result<&'a Map<String, Json>, DecodeError> {
    j.as_object()
        .ok_or_else(|| DecodeError::schema(ctx, "expected an object"))
}

fn parse_iri(s: &str, key: &str) -> Result<Iri, DecodeError> {
    PrefixTable::default()
        .resolve(s)
        .map_err(|e| DecodeError::schema(key, e.to_string()))
}

fn decode_iri(j: &Json, key: &str) -> Result<Iri, DecodeError> {
    let s = j
        .as_str()
        .ok_or_else(|| DecodeError::schema(key, "expected an IRI string"))?;
    parse_iri(s, key)
}

fn decode_iri_set(j: &Json, key: &str) -> Result<BTreeSet<Iri>, DecodeError> {
    let arr = j
        .as_array()
        .ok_or_else(|| DecodeError::schema(key, "expected an array"))?;
    arr.iter().map(|x| decode_iri(x, key)).collect()
}

pub fn decode_value(j: &Json) -> Result<Value, DecodeError> {
    match j {
        Json::String(s) => Ok(Value::Entity(parse_iri(s, "value")?)),
        Json::Object(m) => {
            if let Some(sp) = m.get("@special") {
                return match sp.as_str() {
                    Some("noValue") => Ok(Value::NoValue),
                    Some("someValue") => Ok(Value::SomeValue),
                    Some("undefined") => Ok(Value::Undefined),
                    _ => Err(DecodeError::schema(
                        "@special",
                        "expected noValue, someValue or undefined",
                    )),
                };
            }
            let lexical = m
                .get("@value")
                .and_then(Json::as_str)
                .ok_or_else(|| DecodeError::schema("@value", "missing literal lexical form"))?;
            for k in m.keys() {
                if !matches!(k.as_str(), "@value" | "@type" | "@lang") {
                    return Err(DecodeError::schema(k.as_str(), "unknown literal key"));
                }
            }
            if let Some(l) = m.get("@lang") {
                let lang = l
                    .as_str()
                    .ok_or_else(|| DecodeError::schema("@lang", "expected a string"))?;
                return Ok(Value::Literal(Literal {
                    lexical: lexical.to_string(),
                    datatype: Iri::from_canonical("rdf:langString").expect("constant"),
                    lang: Some(lang.to_string()),
                }));
            }
            let dt = match m.get("@type") {
                Some(t) => decode_iri(t, "@type")?,
                None => Iri::from_canonical("xsd:string").expect("constant"),
            };
            Ok(Value::Literal(Literal::typed(lexical, dt)))
        }
        _ => Err(DecodeError::schema(
            "value",
            "expected an IRI string or a literal object",
        )),
    }
}

fn decode_instant(j: &Json, key: &str) -> Result<Instant, DecodeError> {
    let s = j
        .as_str()
        .ok_or_else(|| DecodeError::schema(key, "expected a dateTime string"))?;
    Instant::parse(s).map_err(|e| DecodeError::schema(key, e.to_string()))
}

pub fn decode_validity(j: &Json) -> Result<ValidityContext, DecodeError> {
    let m = object(j, "validity")?;
    let mut ctx = ValidityContext::empty();
    for (k, v) in m {
        match k.to_ascii_lowercase().as_str() {
            "time" => {
                let t = object(v, "time")?;
                if t.get("bottom").is_some() {
                    if t.len() != 1 || t["bottom"] != Json::Bool(true) {
                        return Err(DecodeError::schema(
                            "bottom",
                            "bottom interval must be exactly {\"bottom\":true}",
                        ));
                    }
                    ctx.time = TimeInterval::Bottom;
                    continue;
                }
                let mut start = Instant::Undefined;
                let mut end = Instant::Undefined;
                for (tk, tv) in t {
                    match tk.to_ascii_lowercase().as_str() {
                        "start" => start = decode_instant(tv, tk)?,
                        "end" => end = decode_instant(tv, tk)?,
                        _ => return Err(DecodeError::schema(tk.as_str(), "unknown time key")),
                    }
                }
                ctx.time = TimeInterval::new(start, end)
                    .map_err(|e| DecodeError::schema("time", e.to_string()))?;
            }
            "space" => {
                let s = object(v, "space")?;
                ctx.space = SpaceRegion::Universal;
                for (sk, sv) in s {
                    match sk.to_ascii_lowercase().as_str() {
                        "regions" => ctx.space = SpaceRegion::Regions(decode_iri_set(sv, sk)?),
                        _ => return Err(DecodeError::schema(sk.as_str(), "unknown space key")),
                    }
                }
            }
            _ => return Err(DecodeError::schema(k.as_str(), "unknown validity key")),
        }
    }
    Ok(ctx)
}

/// Accepts `hasCause`/`endCause` in any letter case (`hascause` appears in
/// some hand-written data).
pub fn decode_causality(j: &Json) -> Result<Causality, DecodeError> {
    let m = object(j, "causality")?;
    let mut c = Causality::empty();
    for (k, v) in m {
        match k.to_ascii_lowercase().as_str() {
            "hascause" => c.has_cause = decode_iri_set(v, k)?,
            "endcause" => c.end_cause = decode_iri_set(v, k)?,
            _ => return Err(DecodeError::schema(k.as_str(), "unknown causality key")),
        }
    }
    Ok(c)
}

pub fn decode_sequence(j: &Json) -> Result<SequenceNode, DecodeError> {
    let m = object(j, "sequence")?;
    let mut s = SequenceNode::empty();
    for (k, v) in m {
        match k.to_ascii_lowercase().as_str() {
            "previous" => s.previous = Some(decode_iri(v, k)?),
            "next" => s.next = Some(decode_iri(v, k)?),
            "ordinal" => {
                s.ordinal =
                    Some(v.as_u64().ok_or_else(|| {
                        DecodeError::schema(k.as_str(), "expected a natural number")
                    })?)
            }
            _ => return Err(DecodeError::schema(k.as_str(), "unknown sequence key")),
        }
    }
    Ok(s)
}

pub fn decode_provenance(j: &Json) -> Result<Provenance, DecodeError> {
    let m = object(j, "provenance")?;
    let mut p = Provenance::empty();
    for (k, v) in m {
        match k.to_ascii_lowercase().as_str() {
            "sources" => p.sources = decode_iri_set(v, k)?,
            _ => return Err(DecodeError::schema(k.as_str(), "unknown provenance key")),
        }
    }
    Ok(p)
}

pub fn decode_annotations(j: &Json) -> Result<Annotations, DecodeError> {
    let m = object(j, "annotations")?;
    let mut a = Annotations::empty();
    for (k, v) in m {
        let q = parse_iri(k, k)?;
        let arr = v
            .as_array()
            .ok_or_else(|| DecodeError::schema(k.as_str(), "expected an array of values"))?;
        if arr.is_empty() {
            return Err(DecodeError::schema(k.as_str(), "empty value set"));
        }
        for x in arr {
            a.insert(q.clone(), decode_value(x)?);
        }
    }
    Ok(a)
}
