//! Function and predicate signatures available to rules.

use std::collections::BTreeMap;
use std::fmt;

/// Sorts of rule terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Entity,
    Value,
    Validity,
    Causality,
    Sequence,
    Annotations,
    Provenance,
    Time,
    Space,
    Instant,
    Duration,
    EntitySet,
    ValueSet,
    Nat,
    /// `undefined`; fits any position and is checked at evaluation time.
    Any,
}

impl Sort {
    pub fn name(self) -> &'static str {
        match self {
            Sort::Entity => "entity",
            Sort::Value => "value",
            Sort::Validity => "validity",
            Sort::Causality => "causality",
            Sort::Sequence => "sequence",
            Sort::Annotations => "annotations",
            Sort::Provenance => "provenance",
            Sort::Time => "interval",
            Sort::Space => "space",
            Sort::Instant => "instant",
            Sort::Duration => "duration",
            Sort::EntitySet => "set[entity]",
            Sort::ValueSet => "set[value]",
            Sort::Nat => "nat",
            Sort::Any => "any",
        }
    }

    /// Whether a term of sort `self` may stand where `want` is expected.
    ///
    /// Entities and values convert both ways (checked at run time), an entity
    /// lifts to a singleton set, a datavalue converts to an instant, and a
    /// natural number is a value.
    pub fn fits(self, want: Sort) -> bool {
        use Sort::*;
        self == want
            || self == Any
            || want == Any
            || matches!(
                (self, want),
                (Entity, Value)
                    | (Value, Entity)
                    | (Entity, EntitySet)
                    | (Value, EntitySet)
                    | (Value, Instant)
                    | (Nat, Value)
                    | (Value, Nat)
                    | (EntitySet, ValueSet)
            )
    }

    /// Sorts of the eight `st` positions.
    pub const STATEMENT: [Sort; 8] = [
        Sort::Entity,
        Sort::Entity,
        Sort::Value,
        Sort::Validity,
        Sort::Causality,
        Sort::Sequence,
        Sort::Annotations,
        Sort::Provenance,
    ];

    /// Sorts of the seven `sno`/`ssome` positions.
    pub const STATEMENT_NO_VALUE: [Sort; 7] = [
        Sort::Entity,
        Sort::Entity,
        Sort::Validity,
        Sort::Causality,
        Sort::Sequence,
        Sort::Annotations,
        Sort::Provenance,
    ];
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One overload. `result` is `None` for predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub params: Vec<Sort>,
    pub result: Option<Sort>,
}

/// Symbol table: name to overloads. A name is either a function or a
/// predicate, never both.
#[derive(Debug, Clone)]
pub struct Signature {
    entries: BTreeMap<String, Vec<Profile>>,
}

impl Default for Signature {
    fn default() -> Self {
        use Sort::*;
        let mut s = Signature {
            entries: BTreeMap::new(),
        };
        let f = |s: &mut Signature, name: &str, params: &[Sort], result: Sort| {
            s.function(name, params, result)
        };
        let p = |s: &mut Signature, name: &str, params: &[Sort]| s.predicate(name, params);

        // Value and instants.
        f(&mut s, "undefined", &[], Any);
        f(&mut s, "instant", &[Value], Instant);
        f(&mut s, "minus", &[Instant, Instant], Duration);
        f(&mut s, "plus", &[Instant, Duration], Instant);
        // Intervals.
        f(&mut s, "interval", &[Instant, Instant], Time);
        f(&mut s, "intervalWithDuration", &[Instant, Duration], Time);
        f(&mut s, "universalTime", &[], Time);
        f(&mut s, "bottomTime", &[], Time);
        f(&mut s, "startTime", &[Time], Instant);
        f(&mut s, "endTime", &[Time], Instant);
        f(&mut s, "duration", &[Time], Duration);
        f(&mut s, "interInterval", &[Time, Time], Time);
        f(&mut s, "unionInterval", &[Time, Time], Time);
        // Space.
        f(&mut s, "region", &[Entity], Space);
        f(&mut s, "universalSpace", &[], Space);
        f(&mut s, "bottomSpace", &[], Space);
        f(&mut s, "interSpace", &[Space, Space], Space);
        f(&mut s, "unionSpace", &[Space, Space], Space);
        // Validity contexts.
        f(&mut s, "emptyValidity", &[], Validity);
        f(&mut s, "bottomValidity", &[], Validity);
        f(&mut s, "timeValidity", &[Time], Validity);
        f(&mut s, "spaceValidity", &[Space], Validity);
        f(&mut s, "timespace", &[Time, Space], Validity);
        f(&mut s, "extractTime", &[Validity], Time);
        f(&mut s, "extractSpace", &[Validity], Space);
        f(&mut s, "setTime", &[Validity, Time], Validity);
        f(&mut s, "setSpace", &[Validity, Space], Validity);
        f(&mut s, "interValidity", &[Validity, Validity], Validity);
        f(&mut s, "unionValidity", &[Validity, Validity], Validity);
        // Causality.
        f(&mut s, "emptyCause", &[], Causality);
        f(&mut s, "addEndCause", &[EntitySet, Causality], Causality);
        f(&mut s, "addHasCause", &[EntitySet, Causality], Causality);
        f(&mut s, "getEndCause", &[Causality], EntitySet);
        f(&mut s, "getHasCause", &[Causality], EntitySet);
        f(&mut s, "unionCause", &[Causality, Causality], Causality);
        f(&mut s, "inverseCause", &[Causality], Causality);
        f(&mut s, "inverseCause", &[Entity], Entity);
        // Sequence.
        f(&mut s, "emptySequence", &[], Sequence);
        f(&mut s, "seq", &[Entity, Entity], Sequence);
        f(&mut s, "seqWithNext", &[Entity], Sequence);
        f(&mut s, "seqWithPrev", &[Entity], Sequence);
        f(&mut s, "seqWithPrevious", &[Entity], Sequence);
        f(&mut s, "seqWithOrdinal", &[Nat], Sequence);
        f(&mut s, "previous", &[Sequence], Entity);
        f(&mut s, "next", &[Sequence], Entity);
        f(&mut s, "ordinal", &[Sequence], Nat);
        // Provenance and annotations.
        f(&mut s, "emptyProvenance", &[], Provenance);
        f(&mut s, "addSources", &[EntitySet, Provenance], Provenance);
        f(&mut s, "getSources", &[Provenance], EntitySet);
        f(&mut s, "unionProv", &[Provenance, Provenance], Provenance);
        f(&mut s, "emptyAnnotations", &[], Annotations);
        f(&mut s, "getRelation", &[Annotations], ValueSet);
        f(&mut s, "getClass", &[Annotations], ValueSet);
        f(&mut s, "getAnnotation", &[Annotations, Entity], ValueSet);
        f(&mut s, "single", &[ValueSet], Value);
        // Generic union and intersection, resolved by argument sort.
        for srt in [Validity, Causality, Provenance, Time, Space] {
            f(&mut s, "union", &[srt, srt], srt);
        }
        for srt in [Validity, Time, Space] {
            f(&mut s, "inter", &[srt, srt], srt);
        }

        p(&mut s, "testIntersectValidity", &[Validity, Validity]);
        p(&mut s, "testIntersectInterval", &[Time, Time]);
        p(&mut s, "testIntersectSpace", &[Space, Space]);
        p(&mut s, "disjoint", &[Time, Time]);
        p(&mut s, "equal", &[Any, Any]);
        p(&mut s, "lessThan", &[Instant, Instant]);
        p(&mut s, "hasNext", &[Sequence]);
        p(&mut s, "hasPrevious", &[Sequence]);
        p(&mut s, "hasOrdinal", &[Sequence]);
        p(&mut s, "inside", &[Space, Space]);
        p(&mut s, "contains", &[Time, Instant]);
        p(&mut s, "contains", &[ValueSet, Value]);
        p(&mut s, "incl", &[Time, Time]);
        p(&mut s, "incl", &[Validity, Validity]);
        p(&mut s, "singleton", &[ValueSet]);
        s
    }
}

impl Signature {
    pub fn empty() -> Self {
        Signature {
            entries: BTreeMap::new(),
        }
    }

    pub fn function(&mut self, name: &str, params: &[Sort], result: Sort) {
        self.entries
            .entry(name.to_string())
            .or_default()
            .push(Profile {
                params: params.to_vec(),
                result: Some(result),
            });
    }

    pub fn predicate(&mut self, name: &str, params: &[Sort]) {
        self.entries
            .entry(name.to_string())
            .or_default()
            .push(Profile {
                params: params.to_vec(),
                result: None,
            });
    }

    pub fn overloads(&self, name: &str) -> Option<&[Profile]> {
        self.entries.get(name).map(Vec::as_slice)
    }

    pub fn is_predicate(&self, name: &str) -> bool {
        self.overloads(name)
            .is_some_and(|o| o.iter().all(|p| p.result.is_none()))
    }

    pub fn is_function(&self, name: &str) -> bool {
        self.overloads(name)
            .is_some_and(|o| o.iter().all(|p| p.result.is_some()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Picks the first overload of the right arity whose parameters accept
    /// `args`. Exact matches win over conversions.
    pub fn resolve(&self, name: &str, args: &[Sort]) -> Option<&Profile> {
        let cands: Vec<&Profile> = self
            .overloads(name)?
            .iter()
            .filter(|p| p.params.len() == args.len())
            .collect();
        cands
            .iter()
            .find(|p| {
                p.params
                    .iter()
                    .zip(args)
                    .all(|(w, a)| a == w || *a == Sort::Any || *w == Sort::Any)
            })
            .or_else(|| {
                cands
                    .iter()
                    .find(|p| p.params.iter().zip(args).all(|(w, a)| a.fits(*w)))
            })
            .copied()
    }
}
