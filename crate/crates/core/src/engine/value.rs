//! Run-time values of rule terms.

use std::collections::BTreeSet;

use crate::causality::Causality;
use crate::error::EvalError;
use crate::iri::Iri;
use crate::model::{Datum, Literal, Value};
use crate::provenance::{Annotations, Provenance};
use crate::sequence::SequenceNode;
use crate::validity::{Duration, Instant, SpaceRegion, TimeInterval, ValidityContext};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RtVal {
    Value(Value),
    Validity(ValidityContext),
    Causality(Causality),
    Sequence(SequenceNode),
    Annotations(Annotations),
    Provenance(Provenance),
    Time(TimeInterval),
    Space(SpaceRegion),
    Instant(Instant),
    Duration(Duration),
    Set(BTreeSet<Value>),
    Nat(u64),
    Bool(bool),
    /// The polymorphic `undefined` constant.
    Undefined,
}

impl From<Datum> for RtVal {
    fn from(d: Datum) -> Self {
        match d {
            Datum::Value(v) => RtVal::Value(v),
            Datum::Validity(v) => RtVal::Validity(v),
            Datum::Causality(c) => RtVal::Causality(c),
            Datum::Sequence(s) => RtVal::Sequence(s),
            Datum::Annotations(a) => RtVal::Annotations(a),
            Datum::Provenance(p) => RtVal::Provenance(p),
        }
    }
}

fn integer_literal(n: u64) -> Value {
    Value::Literal(Literal::typed(
        n.to_string(),
        Iri::from_canonical("xsd:integer").expect("constant"),
    ))
}

impl RtVal {
    pub fn kind(&self) -> &'static str {
        match self {
            RtVal::Value(Value::Entity(_)) => "entity",
            RtVal::Value(_) => "value",
            RtVal::Validity(_) => "validity",
            RtVal::Causality(_) => "causality",
            RtVal::Sequence(_) => "sequence",
            RtVal::Annotations(_) => "annotations",
            RtVal::Provenance(_) => "provenance",
            RtVal::Time(_) => "interval",
            RtVal::Space(_) => "space",
            RtVal::Instant(_) => "instant",
            RtVal::Duration(_) => "duration",
            RtVal::Set(_) => "set",
            RtVal::Nat(_) => "nat",
            RtVal::Bool(_) => "bool",
            RtVal::Undefined => "undefined",
        }
    }

    fn wrong(&self, f: &str, want: &str) -> EvalError {
        EvalError::ty(f, format!("expected {want}, found {}", self.kind()))
    }

    pub fn entity(&self, f: &str) -> Result<Iri, EvalError> {
        match self {
            RtVal::Value(Value::Entity(i)) => Ok(i.clone()),
            _ => Err(self.wrong(f, "an entity")),
        }
    }

    pub fn value(&self, f: &str) -> Result<Value, EvalError> {
        match self {
            RtVal::Value(v) => Ok(v.clone()),
            RtVal::Nat(n) => Ok(integer_literal(*n)),
            RtVal::Undefined => Ok(Value::Undefined),
            RtVal::Instant(i) => Ok(i
                .to_xsd()
                .map(|s| Value::Literal(Literal::date_time(s)))
                .unwrap_or(Value::Undefined)),
            _ => Err(self.wrong(f, "a value")),
        }
    }

    pub fn instant(&self, f: &str) -> Result<Instant, EvalError> {
        match self {
            RtVal::Instant(i) => Ok(*i),
            RtVal::Undefined | RtVal::Value(Value::Undefined) => Ok(Instant::Undefined),
            RtVal::Value(Value::Literal(l)) => Ok(Instant::parse(&l.lexical)?),
            _ => Err(self.wrong(f, "an instant")),
        }
    }

    pub fn nat(&self, f: &str) -> Result<u64, EvalError> {
        match self {
            RtVal::Nat(n) => Ok(*n),
            RtVal::Value(Value::Literal(l)) => l
                .lexical
                .parse()
                .map_err(|_| EvalError::ty(f, format!("`{}` is not a natural number", l.lexical))),
            _ => Err(self.wrong(f, "a natural number")),
        }
    }

    pub fn entity_set(&self, f: &str) -> Result<BTreeSet<Iri>, EvalError> {
        match self {
            RtVal::Value(Value::Entity(i)) => Ok(BTreeSet::from([i.clone()])),
            RtVal::Set(s) => s
                .iter()
                .map(|v| {
                    v.as_entity().cloned().ok_or_else(|| {
                        EvalError::ty(f, format!("set member `{v}` is not an entity"))
                    })
                })
                .collect(),
            _ => Err(self.wrong(f, "a set of entities")),
        }
    }

    pub fn set(&self, f: &str) -> Result<BTreeSet<Value>, EvalError> {
        match self {
            RtVal::Set(s) => Ok(s.clone()),
            _ => Err(self.wrong(f, "a set")),
        }
    }

    pub fn validity(&self, f: &str) -> Result<ValidityContext, EvalError> {
        match self {
            RtVal::Validity(v) => Ok(v.clone()),
            _ => Err(self.wrong(f, "a validity context")),
        }
    }

    pub fn causality(&self, f: &str) -> Result<Causality, EvalError> {
        match self {
            RtVal::Causality(c) => Ok(c.clone()),
            _ => Err(self.wrong(f, "a causality")),
        }
    }

    pub fn sequence(&self, f: &str) -> Result<SequenceNode, EvalError> {
        match self {
            RtVal::Sequence(s) => Ok(s.clone()),
            _ => Err(self.wrong(f, "a sequence node")),
        }
    }

    pub fn annotations(&self, f: &str) -> Result<Annotations, EvalError> {
        match self {
            RtVal::Annotations(a) => Ok(a.clone()),
            _ => Err(self.wrong(f, "annotations")),
        }
    }

    pub fn provenance(&self, f: &str) -> Result<Provenance, EvalError> {
        match self {
            RtVal::Provenance(p) => Ok(p.clone()),
            _ => Err(self.wrong(f, "a provenance")),
        }
    }

    pub fn time(&self, f: &str) -> Result<TimeInterval, EvalError> {
        match self {
            RtVal::Time(t) => Ok(*t),
            _ => Err(self.wrong(f, "an interval")),
        }
    }

    pub fn space(&self, f: &str) -> Result<SpaceRegion, EvalError> {
        match self {
            RtVal::Space(s) => Ok(s.clone()),
            _ => Err(self.wrong(f, "a space region")),
        }
    }

    pub fn duration(&self, f: &str) -> Result<Duration, EvalError> {
        match self {
            RtVal::Duration(d) => Ok(*d),
            RtVal::Undefined => Ok(Duration::Undefined),
            _ => Err(self.wrong(f, "a duration")),
        }
    }

    pub fn truth(&self, f: &str) -> Result<bool, EvalError> {
        match self {
            RtVal::Bool(b) => Ok(*b),
            _ => Err(self.wrong(f, "a truth value")),
        }
    }
}
