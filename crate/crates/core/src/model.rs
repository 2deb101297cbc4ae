//! Statements of a multi-qualified knowledge graph and the graph itself.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::causality::Causality;
use crate::error::ModelError;
use crate::iri::{Iri, PrefixTable};
use crate::provenance::{Annotations, Provenance};
use crate::sequence::SequenceNode;
use crate::validity::ValidityContext;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub lexical: String,
    pub datatype: Iri,
    pub lang: Option<String>,
}

impl Literal {
    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype,
            lang: None,
        }
    }

    pub fn date_time(lexical: impl Into<String>) -> Self {
        Literal::typed(
            lexical,
            Iri::from_canonical("xsd:dateTime").expect("constant"),
        )
    }

    pub fn string(lexical: impl Into<String>) -> Self {
        Literal::typed(
            lexical,
            Iri::from_canonical("xsd:string").expect("constant"),
        )
    }
}

/// Anything that can sit in a statement's value position or be a
/// qualifier value. Properties are entities (one IRI variant covers both).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Entity(Iri),
    Literal(Literal),
    NoValue,
    SomeValue,
    Undefined,
}

impl Value {
    pub fn as_entity(&self) -> Option<&Iri> {
        match self {
            Value::Entity(i) => Some(i),
            _ => None,
        }
    }
}

impl From<Iri> for Value {
    fn from(i: Iri) -> Self {
        Value::Entity(i)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Entity(i) => write!(f, "{i}"),
            Value::Literal(l) => match &l.lang {
                Some(lang) => write!(f, "{:?}@{lang}", l.lexical),
                None => write!(f, "{:?}^^{}", l.lexical, l.datatype),
            },
            Value::NoValue => f.write_str("noValue"),
            Value::SomeValue => f.write_str("someValue"),
            Value::Undefined => f.write_str("undefined"),
        }
    }
}

/// `st` (a value), `sno` (known to have no value), `ssome` (unknown value).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatementKind {
    St,
    Sno,
    Ssome,
}

impl StatementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StatementKind::St => "st",
            StatementKind::Sno => "sno",
            StatementKind::Ssome => "ssome",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "st" => Some(StatementKind::St),
            "sno" => Some(StatementKind::Sno),
            "ssome" => Some(StatementKind::Ssome),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum Origin {
    #[default]
    Asserted,
    Inferred(String),
}

impl Origin {
    pub fn encode(&self) -> String {
        match self {
            Origin::Asserted => "asserted".to_string(),
            Origin::Inferred(rule) => format!("inferred:{rule}"),
        }
    }

    pub fn decode(s: &str) -> Option<Self> {
        if s == "asserted" {
            Some(Origin::Asserted)
        } else {
            s.strip_prefix("inferred:")
                .map(|r| Origin::Inferred(r.to_string()))
        }
    }
}

/// Multiset of qualifier–value pairs in source order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QualifierBag {
    pub pairs: Vec<(Iri, Value)>,
}

impl QualifierBag {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, qualifier: Iri, value: Value) {
        self.pairs.push((qualifier, value));
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A many-sorted statement: subject, property, value and one value of each
/// qualifier sort.
///
/// Equality and hashing ignore `origin` and `id`: two statements are the
/// same fact when everything else matches.
#[derive(Debug, Clone)]
pub struct Statement {
    pub kind: StatementKind,
    pub subject: Iri,
    pub property: Iri,
    pub value: Option<Value>,
    pub validity: ValidityContext,
    pub causality: Causality,
    pub sequence: SequenceNode,
    pub annotations: Annotations,
    pub provenance: Provenance,
    pub origin: Origin,
    /// Statement node IRI when known (e.g. `wds:` nodes from a dump).
    pub id: Option<Iri>,
}

impl Statement {
    /// An `st` statement with empty sort values.
    pub fn st(subject: Iri, property: Iri, value: impl Into<Value>) -> Self {
        Statement {
            kind: StatementKind::St,
            subject,
            property,
            value: Some(value.into()),
            validity: ValidityContext::empty(),
            causality: Causality::empty(),
            sequence: SequenceNode::empty(),
            annotations: Annotations::empty(),
            provenance: Provenance::empty(),
            origin: Origin::Asserted,
            id: None,
        }
    }

    /// An `sno` or `ssome` statement with empty sort values.
    pub fn without_value(kind: StatementKind, subject: Iri, property: Iri) -> Self {
        Statement {
            kind,
            value: None,
            ..Statement::st(subject, property, Value::Undefined)
        }
    }

    pub fn with_validity(mut self, v: ValidityContext) -> Self {
        self.validity = v;
        self
    }

    pub fn with_causality(mut self, c: Causality) -> Self {
        self.causality = c;
        self
    }

    pub fn with_sequence(mut self, s: SequenceNode) -> Self {
        self.sequence = s;
        self
    }

    pub fn with_annotations(mut self, a: Annotations) -> Self {
        self.annotations = a;
        self
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    pub fn with_id(mut self, id: Iri) -> Self {
        self.id = Some(id);
        self
    }

    /// Checks the kind/value invariant.
    pub fn validate(&self) -> Result<(), ModelError> {
        match (self.kind, &self.value) {
            (StatementKind::St, None) => Err(ModelError::MalformedStatement(
                "kind st requires a value".into(),
            )),
            (StatementKind::St, Some(Value::NoValue | Value::SomeValue)) => {
                Err(ModelError::MalformedStatement(
                    "noValue/someValue in value position must be expressed as kind sno/ssome"
                        .into(),
                ))
            }
            (StatementKind::Sno | StatementKind::Ssome, Some(_)) => {
                Err(ModelError::MalformedStatement(format!(
                    "kind {} must not carry a value",
                    self.kind.as_str()
                )))
            }
            _ => Ok(()),
        }
    }

    fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }
}

impl PartialEq for Statement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.subject == other.subject
            && self.property == other.property
            && self.value == other.value
            && self.validity == other.validity
            && self.causality == other.causality
            && self.sequence == other.sequence
            && self.annotations == other.annotations
            && self.provenance == other.provenance
    }
}

impl Eq for Statement {}

impl Hash for Statement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.subject.hash(state);
        self.property.hash(state);
        self.value.hash(state);
        self.validity.hash(state);
        self.causality.hash(state);
        self.sequence.hash(state);
        self.annotations.hash(state);
        self.provenance.hash(state);
    }
}

/// Structural equality on canonical forms (origin and id ignored).
pub fn statement_equal(a: &Statement, b: &Statement) -> bool {
    a == b
}

/// A value bound by a pattern variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Datum {
    Value(Value),
    Validity(ValidityContext),
    Causality(Causality),
    Sequence(SequenceNode),
    Annotations(Annotations),
    Provenance(Provenance),
}

/// Pattern position: a variable or a constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot<T> {
    Var(String),
    Const(T),
}

impl<T> Slot<T> {
    pub fn var(name: &str) -> Self {
        Slot::Var(name.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatementPattern {
    pub kind: StatementKind,
    pub subject: Slot<Iri>,
    pub property: Slot<Iri>,
    /// Ignored for `sno`/`ssome` patterns.
    pub value: Slot<Value>,
    pub validity: Slot<ValidityContext>,
    pub causality: Slot<Causality>,
    pub sequence: Slot<SequenceNode>,
    pub annotations: Slot<Annotations>,
    pub provenance: Slot<Provenance>,
}

impl StatementPattern {
    /// `st(?s, ?p, ?v, ?V, ?C, ?S, ?A, ?P)` with the given variable names.
    pub fn all_vars(names: [&str; 8]) -> Self {
        StatementPattern {
            kind: StatementKind::St,
            subject: Slot::var(names[0]),
            property: Slot::var(names[1]),
            value: Slot::var(names[2]),
            validity: Slot::var(names[3]),
            causality: Slot::var(names[4]),
            sequence: Slot::var(names[5]),
            annotations: Slot::var(names[6]),
            provenance: Slot::var(names[7]),
        }
    }

    /// Whether `s` unifies with the pattern; returns the binding if so.
    pub fn unify(&self, s: &Statement) -> Option<Binding> {
        if s.kind != self.kind {
            return None;
        }
        let mut b = Binding::default();
        unify_slot(
            &self.subject,
            &s.subject,
            |i| Datum::Value(Value::Entity(i.clone())),
            &mut b,
        )?;
        unify_slot(
            &self.property,
            &s.property,
            |i| Datum::Value(Value::Entity(i.clone())),
            &mut b,
        )?;
        if self.kind == StatementKind::St {
            let v = s.value.as_ref()?;
            unify_slot(&self.value, v, |v| Datum::Value(v.clone()), &mut b)?;
        }
        unify_slot(
            &self.validity,
            &s.validity,
            |x| Datum::Validity(x.clone()),
            &mut b,
        )?;
        unify_slot(
            &self.causality,
            &s.causality,
            |x| Datum::Causality(x.clone()),
            &mut b,
        )?;
        unify_slot(
            &self.sequence,
            &s.sequence,
            |x| Datum::Sequence(x.clone()),
            &mut b,
        )?;
        unify_slot(
            &self.annotations,
            &s.annotations,
            |x| Datum::Annotations(x.clone()),
            &mut b,
        )?;
        unify_slot(
            &self.provenance,
            &s.provenance,
            |x| Datum::Provenance(x.clone()),
            &mut b,
        )?;
        Some(b)
    }
}

fn unify_slot<T: PartialEq>(
    slot: &Slot<T>,
    actual: &T,
    lift: impl Fn(&T) -> Datum,
    b: &mut Binding,
) -> Option<()> {
    match slot {
        Slot::Const(c) => (c == actual).then_some(()),
        Slot::Var(name) => {
            let d = lift(actual);
            match b.vars.get(name) {
                Some(prev) => (*prev == d).then_some(()),
                None => {
                    b.vars.insert(name.clone(), d);
                    Some(())
                }
            }
        }
    }
}

/// Variable → bound datum.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Binding {
    pub vars: BTreeMap<String, Datum>,
}

impl Binding {
    pub fn get(&self, name: &str) -> Option<&Datum> {
        self.vars.get(name)
    }
}

/// A deduplicated, insertion-ordered set of statements.
#[derive(Debug, Clone, Default)]
pub struct KnowledgeGraph {
    statements: Vec<Statement>,
    buckets: HashMap<u64, Vec<usize>>,
    by_property: HashMap<Iri, Vec<usize>>,
    by_subject: HashMap<Iri, Vec<usize>>,
    pub prefixes: PrefixTable,
}

impl KnowledgeGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Statement> {
        self.statements.iter()
    }

    pub fn contains(&self, s: &Statement) -> bool {
        self.buckets
            .get(&s.fingerprint())
            .is_some_and(|idx| idx.iter().any(|&i| self.statements[i] == *s))
    }

    /// Inserts `s`; returns `Ok(false)` when an equal statement is present.
    pub fn insert(&mut self, s: Statement) -> Result<bool, ModelError> {
        s.validate()?;
        let fp = s.fingerprint();
        if let Some(idx) = self.buckets.get(&fp) {
            if idx.iter().any(|&i| self.statements[i] == s) {
                return Ok(false);
            }
        }
        let i = self.statements.len();
        self.buckets.entry(fp).or_default().push(i);
        self.by_property
            .entry(s.property.clone())
            .or_default()
            .push(i);
        self.by_subject
            .entry(s.subject.clone())
            .or_default()
            .push(i);
        self.statements.push(s);
        Ok(true)
    }

    /// Statements unifying with `pattern`, with bindings, in insertion order.
    pub fn query<'a>(
        &'a self,
        pattern: &'a StatementPattern,
    ) -> impl Iterator<Item = (&'a Statement, Binding)> + 'a {
        self.candidates(pattern)
            .map(move |i| &self.statements[i])
            .filter_map(move |s| pattern.unify(s).map(|b| (s, b)))
    }

    /// Indices of statements that may match, ascending.
    pub(crate) fn candidates<'a>(
        &'a self,
        pattern: &StatementPattern,
    ) -> Box<dyn Iterator<Item = usize> + 'a> {
        static EMPTY: Vec<usize> = Vec::new();
        let by_p = match &pattern.property {
            Slot::Const(p) => Some(self.by_property.get(p).unwrap_or(&EMPTY)),
            Slot::Var(_) => None,
        };
        let by_s = match &pattern.subject {
            Slot::Const(s) => Some(self.by_subject.get(s).unwrap_or(&EMPTY)),
            Slot::Var(_) => None,
        };
        match (by_p, by_s) {
            (Some(a), Some(b)) => Box::new(if a.len() <= b.len() { a } else { b }.iter().copied()),
            (Some(a), None) | (None, Some(a)) => Box::new(a.iter().copied()),
            (None, None) => Box::new(0..self.statements.len()),
        }
    }
}

impl PartialEq for KnowledgeGraph {
    /// Set equality under [`statement_equal`].
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.statements.iter().all(|s| other.contains(s))
    }
}
