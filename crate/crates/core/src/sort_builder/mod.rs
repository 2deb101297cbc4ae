//! Qualifier categorization and construction of the five sort values.

mod json;

pub use json::{
    decode_annotations, decode_causality, decode_provenance, decode_sequence, decode_sort,
    decode_validity, decode_value, encode_annotations, encode_causality, encode_provenance,
    encode_sequence, encode_sort, encode_validity, encode_value, SortValue,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::causality::Causality;
use crate::iri::Iri;
use crate::model::{QualifierBag, Value};
use crate::provenance::{Annotations, Provenance};
use crate::sequence::SequenceNode;
use crate::validity::{Instant, SpaceRegion, TimeInterval, ValidityContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Validity,
    Causality,
    Sequence,
    Provenance,
    Annotation,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::Validity => "validity",
            Category::Causality => "causality",
            Category::Sequence => "sequence",
            Category::Provenance => "provenance",
            Category::Annotation => "annotation",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "validity" => Category::Validity,
            "causality" => Category::Causality,
            "sequence" => Category::Sequence,
            "provenance" => Category::Provenance,
            "annotation" | "annotations" => Category::Annotation,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    TimeStart,
    TimeEnd,
    PointInTime,
    Space,
    CauseHas,
    CauseEnd,
    SeqPrev,
    SeqNext,
    SeqOrdinal,
    Source,
    Generic,
}

impl Role {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "timeStart" => Role::TimeStart,
            "timeEnd" => Role::TimeEnd,
            "pointInTime" => Role::PointInTime,
            "space" => Role::Space,
            "causeHas" => Role::CauseHas,
            "causeEnd" => Role::CauseEnd,
            "seqPrev" => Role::SeqPrev,
            "seqNext" => Role::SeqNext,
            "seqOrdinal" => Role::SeqOrdinal,
            "source" => Role::Source,
            "generic" => Role::Generic,
            _ => return None,
        })
    }

    /// Whether the role fills a slot of `category`. `Generic` is legal
    /// everywhere and means "no slot".
    pub fn legal_for(self, category: Category) -> bool {
        use Role::*;
        match self {
            Generic => true,
            TimeStart | TimeEnd | PointInTime | Space => category == Category::Validity,
            CauseHas | CauseEnd => category == Category::Causality,
            SeqPrev | SeqNext | SeqOrdinal => category == Category::Sequence,
            Source => category == Category::Provenance,
        }
    }
}

/// Qualifier property → (category, role). Unmapped qualifiers are
/// annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryMap {
    entries: BTreeMap<Iri, (Category, Role)>,
}

const BUILTIN_CATEGORIES: &[(&str, Category, Role)] = &[
    ("P585", Category::Validity, Role::PointInTime),
    ("P580", Category::Validity, Role::TimeStart),
    ("P582", Category::Validity, Role::TimeEnd),
    ("P1001", Category::Validity, Role::Space),
    // No slot in the time × space context; kept as annotations.
    ("P518", Category::Validity, Role::Generic),
    ("P1264", Category::Validity, Role::Generic),
    ("P1326", Category::Validity, Role::Generic),
    ("P1319", Category::Validity, Role::Generic),
    ("P1534", Category::Causality, Role::CauseEnd),
    ("P828", Category::Causality, Role::CauseHas),
    ("P1545", Category::Sequence, Role::SeqOrdinal),
    ("P155", Category::Sequence, Role::SeqPrev),
    ("P156", Category::Sequence, Role::SeqNext),
    ("P1365", Category::Sequence, Role::SeqPrev),
    ("P1366", Category::Sequence, Role::SeqNext),
    ("P1932", Category::Provenance, Role::Source),
    ("P459", Category::Provenance, Role::Source),
    ("P1810", Category::Provenance, Role::Source),
    ("P1013", Category::Provenance, Role::Source),
    ("P1480", Category::Provenance, Role::Source),
];

impl Default for CategoryMap {
    fn default() -> Self {
        CategoryMap {
            entries: BUILTIN_CATEGORIES
                .iter()
                .map(|(p, c, r)| (Iri::wd(p), (*c, *r)))
                .collect(),
        }
    }
}

impl CategoryMap {
    pub fn empty() -> Self {
        CategoryMap {
            entries: BTreeMap::new(),
        }
    }

    /// Adds or overrides an entry; rejects roles illegal for the category.
    pub fn set(&mut self, qualifier: Iri, category: Category, role: Role) -> Result<(), String> {
        if !role.legal_for(category) {
            return Err(format!(
                "role {role:?} is not legal for category {}",
                category.as_str()
            ));
        }
        self.entries.insert(qualifier.to_entity(), (category, role));
        Ok(())
    }

    pub fn categorize(&self, qualifier: &Iri) -> (Category, Role) {
        self.entries
            .get(&qualifier.to_entity())
            .copied()
            .unwrap_or((Category::Annotation, Role::Generic))
    }
}

/// Why a qualifier pair did not land in its category's slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortDiagnostic {
    pub qualifier: Iri,
    pub value: Value,
    pub message: String,
}

impl fmt::Display for SortDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.qualifier, self.value, self.message)
    }
}

/// Sort values built from one statement's qualifiers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuiltSorts {
    pub validity: ValidityContext,
    pub causality: Causality,
    pub sequence: SequenceNode,
    pub annotations: Annotations,
    pub provenance: Provenance,
    pub diagnostics: Vec<SortDiagnostic>,
    /// Pairs consumed by a sort slot.
    pub sorted: usize,
    /// Pairs stored in annotations (generic qualifiers and fallbacks).
    pub annotated: usize,
    /// noValue/someValue pairs skipped for set-valued sorts.
    pub skipped: usize,
}

/// Builds the five sort values for a qualifier bag.
///
/// Every pair is accounted for: `sorted + annotated + skipped == bag.len()`.
pub fn build_sorts(bag: &QualifierBag, map: &CategoryMap) -> BuiltSorts {
    let mut b = Builder::default();
    for (q, v) in &bag.pairs {
        let (category, role) = map.categorize(q);
        b.route(q, v, category, role);
    }
    b.finish()
}

#[derive(Default)]
struct Builder {
    out: BuiltSorts,
    start: Option<(Iri, Value, Instant)>,
    end: Option<(Iri, Value, Instant)>,
    point: Option<(Iri, Value, Instant)>,
    regions: BTreeSet<Iri>,
    region_pairs: usize,
    has_cause: BTreeSet<Iri>,
    end_cause: BTreeSet<Iri>,
    sources: BTreeSet<Iri>,
}

impl Builder {
    fn diag(&mut self, q: &Iri, v: &Value, message: impl Into<String>) {
        self.out.diagnostics.push(SortDiagnostic {
            qualifier: q.clone(),
            value: v.clone(),
            message: message.into(),
        });
    }

    fn annotate(&mut self, q: &Iri, v: &Value) {
        self.out.annotations.insert(q.to_entity(), v.clone());
        self.out.annotated += 1;
    }

    fn fallback(&mut self, q: &Iri, v: &Value, message: impl Into<String>) {
        self.diag(q, v, message);
        self.annotate(q, v);
    }

    fn skip(&mut self, q: &Iri, v: &Value, message: impl Into<String>) {
        self.diag(q, v, message);
        self.out.skipped += 1;
    }

    fn route(&mut self, q: &Iri, v: &Value, category: Category, role: Role) {
        match role {
            Role::Generic => {
                if category != Category::Annotation {
                    self.fallback(
                        q,
                        v,
                        format!(
                            "{} qualifier has no sort slot; kept as annotation",
                            category.as_str()
                        ),
                    );
                } else {
                    self.annotate(q, v);
                }
            }
            Role::TimeStart | Role::TimeEnd | Role::PointInTime => self.time(q, v, role),
            Role::Space => match v {
                Value::Entity(r) => {
                    self.regions.insert(r.clone());
                    self.region_pairs += 1;
                    self.out.sorted += 1;
                }
                Value::NoValue | Value::SomeValue => {
                    self.skip(q, v, "noValue/someValue region skipped")
                }
                _ => self.fallback(q, v, "space qualifier value is not an entity"),
            },
            Role::CauseHas | Role::CauseEnd | Role::Source => match v {
                Value::Entity(e) => {
                    let set = match role {
                        Role::CauseHas => &mut self.has_cause,
                        Role::CauseEnd => &mut self.end_cause,
                        _ => &mut self.sources,
                    };
                    set.insert(e.clone());
                    self.out.sorted += 1;
                }
                Value::NoValue | Value::SomeValue => {
                    self.skip(q, v, "noValue/someValue skipped for a set-valued sort")
                }
                _ => self.fallback(q, v, "value is not an entity"),
            },
            Role::SeqPrev | Role::SeqNext => match v {
                Value::Entity(e) => {
                    let slot = if role == Role::SeqPrev {
                        &mut self.out.sequence.previous
                    } else {
                        &mut self.out.sequence.next
                    };
                    if slot.is_none() {
                        *slot = Some(e.clone());
                        self.out.sorted += 1;
                    } else {
                        self.fallback(q, v, "duplicate sequence pointer; first value wins");
                    }
                }
                Value::NoValue | Value::SomeValue => {
                    self.skip(q, v, "noValue/someValue sequence pointer skipped")
                }
                _ => self.fallback(q, v, "sequence pointer is not an entity"),
            },
            Role::SeqOrdinal => {
                let parsed = match v {
                    Value::Literal(l) => l.lexical.trim().parse::<u64>().ok(),
                    _ => None,
                };
                match parsed {
                    Some(n) if self.out.sequence.ordinal.is_none() => {
                        self.out.sequence.ordinal = Some(n);
                        self.out.sorted += 1;
                    }
                    Some(_) => self.fallback(q, v, "duplicate series ordinal; first value wins"),
                    None => self.fallback(q, v, "series ordinal is not a natural number"),
                }
            }
        }
    }

    fn time(&mut self, q: &Iri, v: &Value, role: Role) {
        let instant = match v {
            Value::Literal(l) => match Instant::parse(&l.lexical) {
                Ok(t) => t,
                Err(e) => return self.fallback(q, v, e.to_string()),
            },
            Value::NoValue => Instant::Undefined,
            Value::SomeValue => {
                self.diag(q, v, "someValue time endpoint read as undefined");
                Instant::Undefined
            }
            _ => return self.fallback(q, v, "time qualifier value is not a dateTime literal"),
        };
        let slot = match role {
            Role::TimeStart => &mut self.start,
            Role::TimeEnd => &mut self.end,
            _ => &mut self.point,
        };
        if slot.is_some() {
            return self.fallback(q, v, "duplicate time qualifier; first value wins");
        }
        *slot = Some((q.clone(), v.clone(), instant));
        self.out.sorted += 1;
    }

    fn finish(mut self) -> BuiltSorts {
        let mut time = TimeInterval::universal();
        if self.start.is_some() || self.end.is_some() {
            let s = self.start.as_ref().map_or(Instant::Undefined, |x| x.2);
            let e = self.end.as_ref().map_or(Instant::Undefined, |x| x.2);
            match TimeInterval::new(s, e) {
                Ok(t) => time = t,
                Err(err) => {
                    for (q, v, _) in [self.start.take(), self.end.take()].into_iter().flatten() {
                        self.out.sorted -= 1;
                        self.fallback(&q, &v, err.to_string());
                    }
                }
            }
            if let Some((q, v, _)) = self.point.take() {
                self.out.sorted -= 1;
                self.fallback(
                    &q,
                    &v,
                    "point in time alongside start/end time; kept as annotation",
                );
            }
        } else if let Some((_, _, t)) = self.point {
            time = TimeInterval::point(t);
        }
        let space = if self.region_pairs == 0 {
            SpaceRegion::Universal
        } else {
            SpaceRegion::Regions(self.regions)
        };
        self.out.validity = ValidityContext::timespace(time, space);
        self.out.causality = Causality {
            has_cause: self.has_cause,
            end_cause: self.end_cause,
        };
        self.out.provenance = Provenance {
            sources: self.sources,
        };
        self.out
    }
}
