//! Implementations of the signature's functions and predicates.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::causality::{Causality, InverseCauseMap};
use crate::engine::value::RtVal;
use crate::error::EvalError;
use crate::iri::Iri;
use crate::provenance::{Annotations, Provenance};
use crate::sequence::SequenceNode;
use crate::validity::{Containment, SpaceRegion, TimeInterval, ValidityContext};

/// Tables the algebra operations consult.
#[derive(Debug, Clone, Default)]
pub struct Algebra {
    pub containment: Containment,
    pub inverse: InverseCauseMap,
}

pub type FnImpl = Arc<dyn Fn(&[RtVal], &Algebra) -> Result<RtVal, EvalError> + Send + Sync>;

/// Name → implementation. Predicates return [`RtVal::Bool`].
#[derive(Clone)]
pub struct FunctionRegistry {
    table: HashMap<String, FnImpl>,
}

impl std::fmt::Debug for FunctionRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut names: Vec<&String> = self.table.keys().collect();
        names.sort();
        f.debug_struct("FunctionRegistry")
            .field("names", &names)
            .finish()
    }
}

impl FunctionRegistry {
    pub fn empty() -> Self {
        FunctionRegistry {
            table: HashMap::new(),
        }
    }

    pub fn register<F>(&mut self, name: &str, f: F)
    where
        F: Fn(&[RtVal], &Algebra) -> Result<RtVal, EvalError> + Send + Sync + 'static,
    {
        self.table.insert(name.to_string(), Arc::new(f));
    }

    pub fn contains(&self, name: &str) -> bool {
        self.table.contains_key(name)
    }

    pub fn call(&self, name: &str, args: &[RtVal], alg: &Algebra) -> Result<RtVal, EvalError> {
        let f = self
            .table
            .get(name)
            .ok_or_else(|| EvalError::UnknownFunction(name.to_string()))?;
        if let Some(bad) = args.iter().find(|a| matches!(a, RtVal::Bool(_))) {
            return Err(EvalError::ty(name, format!("unexpected {}", bad.kind())));
        }
        f(args, alg)
    }
}

fn arity(name: &str, args: &[RtVal], n: usize) -> Result<(), EvalError> {
    if args.len() == n {
        Ok(())
    } else {
        Err(EvalError::ty(
            name,
            format!("takes {n} arguments, found {}", args.len()),
        ))
    }
}

/// Structural equality, comparing instants by time when either side is one.
pub fn equal(a: &RtVal, b: &RtVal) -> Result<bool, EvalError> {
    if matches!(a, RtVal::Instant(_)) || matches!(b, RtVal::Instant(_)) {
        let (x, y) = (a.instant("equal")?, b.instant("equal")?);
        return Ok(x.is_defined() && x == y);
    }
    match (a, b) {
        (RtVal::Nat(_), RtVal::Value(_)) | (RtVal::Value(_), RtVal::Nat(_)) => {
            Ok(a.value("equal")? == b.value("equal")?)
        }
        _ => Ok(a == b),
    }
}

macro_rules! reg {
    ($r:expr, $name:literal, |$a:ident, $alg:ident| $body:expr) => {
        $r.register(
            $name,
            |$a: &[RtVal], $alg: &Algebra| -> Result<RtVal, EvalError> {
                let _ = &$alg;
                $body
            },
        )
    };
    ($r:expr, $name:literal, $n:literal, |$a:ident, $alg:ident| $body:expr) => {
        $r.register(
            $name,
            |$a: &[RtVal], $alg: &Algebra| -> Result<RtVal, EvalError> {
                let _ = &$alg;
                arity($name, $a, $n)?;
                $body
            },
        )
    };
}

impl Default for FunctionRegistry {
    fn default() -> Self {
        let mut r = FunctionRegistry::empty();

        reg!(r, "undefined", 0, |a, g| Ok(RtVal::Undefined));
        reg!(r, "instant", 1, |a, g| Ok(RtVal::Instant(
            a[0].instant("instant")?
        )));
        reg!(r, "minus", 2, |a, g| Ok(RtVal::Duration(
            a[0].instant("minus")?.minus(a[1].instant("minus")?)
        )));
        reg!(r, "plus", 2, |a, g| Ok(RtVal::Instant(
            a[0].instant("plus")?.plus(a[1].duration("plus")?)
        )));

        reg!(r, "interval", 2, |a, g| Ok(RtVal::Time(TimeInterval::new(
            a[0].instant("interval")?,
            a[1].instant("interval")?
        )?)));
        reg!(r, "intervalWithDuration", 2, |a, g| Ok(RtVal::Time(
            TimeInterval::with_duration(
                a[0].instant("intervalWithDuration")?,
                a[1].duration("intervalWithDuration")?
            )?
        )));
        reg!(r, "universalTime", 0, |a, g| Ok(RtVal::Time(
            TimeInterval::universal()
        )));
        reg!(r, "bottomTime", 0, |a, g| Ok(RtVal::Time(
            TimeInterval::Bottom
        )));
        reg!(r, "startTime", 1, |a, g| Ok(RtVal::Instant(
            a[0].time("startTime")?.start_time()
        )));
        reg!(r, "endTime", 1, |a, g| Ok(RtVal::Instant(
            a[0].time("endTime")?.end_time()
        )));
        reg!(r, "duration", 1, |a, g| Ok(RtVal::Duration(
            a[0].time("duration")?.duration()
        )));
        reg!(r, "interInterval", 2, |a, g| Ok(RtVal::Time(
            a[0].time("interInterval")?
                .inter(&a[1].time("interInterval")?)
        )));
        reg!(r, "unionInterval", 2, |a, g| Ok(RtVal::Time(
            a[0].time("unionInterval")?
                .union(&a[1].time("unionInterval")?)
        )));

        reg!(r, "region", 1, |a, g| Ok(RtVal::Space(
            SpaceRegion::region(a[0].entity("region")?)
        )));
        reg!(r, "universalSpace", 0, |a, g| Ok(RtVal::Space(
            SpaceRegion::Universal
        )));
        reg!(r, "bottomSpace", 0, |a, g| Ok(RtVal::Space(
            SpaceRegion::bottom()
        )));
        reg!(r, "interSpace", 2, |a, g| Ok(RtVal::Space(
            g.containment
                .inter(&a[0].space("interSpace")?, &a[1].space("interSpace")?)?
        )));
        reg!(r, "unionSpace", 2, |a, g| Ok(RtVal::Space(
            g.containment
                .union(&a[0].space("unionSpace")?, &a[1].space("unionSpace")?)?
        )));

        reg!(r, "emptyValidity", 0, |a, g| Ok(RtVal::Validity(
            ValidityContext::empty()
        )));
        reg!(r, "bottomValidity", 0, |a, g| Ok(RtVal::Validity(
            ValidityContext::time_validity(TimeInterval::Bottom)
        )));
        reg!(r, "timeValidity", 1, |a, g| Ok(RtVal::Validity(
            ValidityContext::time_validity(a[0].time("timeValidity")?)
        )));
        reg!(r, "spaceValidity", 1, |a, g| Ok(RtVal::Validity(
            ValidityContext::space_validity(a[0].space("spaceValidity")?)
        )));
        reg!(r, "timespace", 2, |a, g| Ok(RtVal::Validity(
            ValidityContext::timespace(a[0].time("timespace")?, a[1].space("timespace")?)
        )));
        reg!(r, "extractTime", 1, |a, g| Ok(RtVal::Time(
            a[0].validity("extractTime")?.extract_time()
        )));
        reg!(r, "extractSpace", 1, |a, g| Ok(RtVal::Space(
            a[0].validity("extractSpace")?.extract_space()
        )));
        reg!(r, "setTime", 2, |a, g| Ok(RtVal::Validity(
            a[0].validity("setTime")?.set_time(a[1].time("setTime")?)
        )));
        reg!(r, "setSpace", 2, |a, g| Ok(RtVal::Validity(
            a[0].validity("setSpace")?
                .set_space(a[1].space("setSpace")?)
        )));
        reg!(r, "interValidity", 2, |a, g| Ok(RtVal::Validity(
            a[0].validity("interValidity")?
                .inter(&a[1].validity("interValidity")?, &g.containment)?
        )));
        reg!(r, "unionValidity", 2, |a, g| Ok(RtVal::Validity(
            a[0].validity("unionValidity")?
                .union(&a[1].validity("unionValidity")?, &g.containment)?
        )));

        reg!(r, "emptyCause", 0, |a, g| Ok(RtVal::Causality(
            Causality::empty()
        )));
        reg!(r, "addEndCause", 2, |a, g| Ok(RtVal::Causality(
            a[1].causality("addEndCause")?
                .add_end_cause(a[0].entity_set("addEndCause")?)
        )));
        reg!(r, "addHasCause", 2, |a, g| Ok(RtVal::Causality(
            a[1].causality("addHasCause")?
                .add_has_cause(a[0].entity_set("addHasCause")?)
        )));
        reg!(r, "getEndCause", 1, |a, g| Ok(entity_set(
            a[0].causality("getEndCause")?.get_end_cause()
        )));
        reg!(r, "getHasCause", 1, |a, g| Ok(entity_set(
            a[0].causality("getHasCause")?.get_has_cause()
        )));
        reg!(r, "unionCause", 2, |a, g| Ok(RtVal::Causality(
            a[0].causality("unionCause")?
                .union(&a[1].causality("unionCause")?)
        )));
        reg!(r, "inverseCause", 1, |a, g| match &a[0] {
            RtVal::Causality(c) => Ok(RtVal::Causality(c.inverse(&g.inverse))),
            other => {
                let e = other.entity("inverseCause")?;
                match g.inverse.invert(&e) {
                    Some(i) => Ok(RtVal::Value(i.into())),
                    None => Err(EvalError::ty(
                        "inverseCause",
                        format!("`{e}` has no inverse (dropped)"),
                    )),
                }
            }
        });

        reg!(r, "emptySequence", 0, |a, g| Ok(RtVal::Sequence(
            SequenceNode::empty()
        )));
        reg!(r, "seq", 2, |a, g| Ok(RtVal::Sequence(SequenceNode::seq(
            a[0].entity("seq")?,
            a[1].entity("seq")?
        ))));
        reg!(r, "seqWithNext", 1, |a, g| Ok(RtVal::Sequence(
            SequenceNode::with_next(a[0].entity("seqWithNext")?)
        )));
        reg!(r, "seqWithPrev", 1, |a, g| Ok(RtVal::Sequence(
            SequenceNode::with_prev(a[0].entity("seqWithPrev")?)
        )));
        reg!(r, "seqWithPrevious", 1, |a, g| Ok(RtVal::Sequence(
            SequenceNode::with_prev(a[0].entity("seqWithPrevious")?)
        )));
        reg!(r, "seqWithOrdinal", 1, |a, g| Ok(RtVal::Sequence(
            SequenceNode::with_ordinal(a[0].nat("seqWithOrdinal")?)
        )));
        reg!(r, "previous", 1, |a, g| a[0]
            .sequence("previous")?
            .previous()
            .map(|i| RtVal::Value(i.clone().into()))
            .ok_or_else(|| EvalError::ty(
                "previous",
                "sequence node has no previous element"
            )));
        reg!(r, "next", 1, |a, g| a[0]
            .sequence("next")?
            .next()
            .map(|i| RtVal::Value(i.clone().into()))
            .ok_or_else(|| EvalError::ty(
                "next",
                "sequence node has no next element"
            )));
        reg!(r, "ordinal", 1, |a, g| Ok(RtVal::Nat(
            a[0].sequence("ordinal")?.ordinal()?
        )));

        reg!(r, "emptyProvenance", 0, |a, g| Ok(RtVal::Provenance(
            Provenance::empty()
        )));
        reg!(r, "addSources", 2, |a, g| Ok(RtVal::Provenance(
            a[1].provenance("addSources")?
                .add_sources(a[0].entity_set("addSources")?)
        )));
        reg!(r, "getSources", 1, |a, g| Ok(entity_set(
            a[0].provenance("getSources")?.get_sources()
        )));
        reg!(r, "unionProv", 2, |a, g| Ok(RtVal::Provenance(
            a[0].provenance("unionProv")?
                .union(&a[1].provenance("unionProv")?)
        )));
        reg!(r, "emptyAnnotations", 0, |a, g| Ok(RtVal::Annotations(
            Annotations::empty()
        )));
        reg!(r, "getRelation", 1, |a, g| Ok(RtVal::Set(
            a[0].annotations("getRelation")?.get_relation()
        )));
        reg!(r, "getClass", 1, |a, g| Ok(RtVal::Set(
            a[0].annotations("getClass")?.get_class()
        )));
        reg!(r, "getAnnotation", 2, |a, g| Ok(RtVal::Set(
            a[0].annotations("getAnnotation")?
                .get(&a[1].entity("getAnnotation")?)
        )));
        reg!(r, "single", 1, |a, g| {
            let s = a[0].set("single")?;
            match s.len() {
                1 => Ok(RtVal::Value(s.into_iter().next().expect("one element"))),
                n => Err(EvalError::ty(
                    "single",
                    format!("expected a one-element set, found {n} elements"),
                )),
            }
        });

        reg!(r, "union", 2, |a, g| match (&a[0], &a[1]) {
            (RtVal::Validity(x), RtVal::Validity(y)) =>
                Ok(RtVal::Validity(x.union(y, &g.containment)?)),
            (RtVal::Causality(x), RtVal::Causality(y)) => Ok(RtVal::Causality(x.union(y))),
            (RtVal::Provenance(x), RtVal::Provenance(y)) => Ok(RtVal::Provenance(x.union(y))),
            (RtVal::Time(x), RtVal::Time(y)) => Ok(RtVal::Time(x.union(y))),
            (RtVal::Space(x), RtVal::Space(y)) => Ok(RtVal::Space(g.containment.union(x, y)?)),
            (x, y) => Err(EvalError::ty(
                "union",
                format!("no union of {} and {}", x.kind(), y.kind())
            )),
        });
        reg!(r, "inter", 2, |a, g| match (&a[0], &a[1]) {
            (RtVal::Validity(x), RtVal::Validity(y)) =>
                Ok(RtVal::Validity(x.inter(y, &g.containment)?)),
            (RtVal::Time(x), RtVal::Time(y)) => Ok(RtVal::Time(x.inter(y))),
            (RtVal::Space(x), RtVal::Space(y)) => Ok(RtVal::Space(g.containment.inter(x, y)?)),
            (x, y) => Err(EvalError::ty(
                "inter",
                format!("no intersection of {} and {}", x.kind(), y.kind())
            )),
        });

        // Predicates.
        reg!(r, "testIntersectValidity", 2, |a, g| Ok(RtVal::Bool(
            a[0].validity("testIntersectValidity")?
                .test_intersect(&a[1].validity("testIntersectValidity")?, &g.containment)?
        )));
        reg!(r, "testIntersectInterval", 2, |a, g| Ok(RtVal::Bool(
            a[0].time("testIntersectInterval")?
                .test_intersect(&a[1].time("testIntersectInterval")?)
        )));
        reg!(r, "testIntersectSpace", 2, |a, g| Ok(RtVal::Bool(
            g.containment.test_intersect(
                &a[0].space("testIntersectSpace")?,
                &a[1].space("testIntersectSpace")?
            )?
        )));
        reg!(r, "disjoint", 2, |a, g| Ok(RtVal::Bool(
            a[0].time("disjoint")?.disjoint(&a[1].time("disjoint")?)
        )));
        reg!(r, "equal", 2, |a, g| Ok(RtVal::Bool(equal(&a[0], &a[1])?)));
        reg!(r, "lessThan", 2, |a, g| Ok(RtVal::Bool(
            a[0].instant("lessThan")?.lt(a[1].instant("lessThan")?)?
        )));
        reg!(r, "hasNext", 1, |a, g| Ok(RtVal::Bool(
            a[0].sequence("hasNext")?.has_next()
        )));
        reg!(r, "hasPrevious", 1, |a, g| Ok(RtVal::Bool(
            a[0].sequence("hasPrevious")?.has_previous()
        )));
        reg!(r, "hasOrdinal", 1, |a, g| Ok(RtVal::Bool(
            a[0].sequence("hasOrdinal")?.has_ordinal()
        )));
        reg!(r, "inside", 2, |a, g| Ok(RtVal::Bool(
            g.containment
                .inside(&a[0].space("inside")?, &a[1].space("inside")?)?
        )));
        reg!(r, "contains", 2, |a, g| match &a[0] {
            RtVal::Time(t) => Ok(RtVal::Bool(t.contains(a[1].instant("contains")?)?)),
            RtVal::Set(s) => Ok(RtVal::Bool(s.contains(&a[1].value("contains")?))),
            other => Err(EvalError::ty(
                "contains",
                format!("expected an interval or a set, found {}", other.kind())
            )),
        });
        reg!(r, "incl", 2, |a, g| match (&a[0], &a[1]) {
            (RtVal::Time(x), RtVal::Time(y)) => Ok(RtVal::Bool(x.incl(y))),
            (RtVal::Validity(x), RtVal::Validity(y)) => Ok(RtVal::Bool(x.incl(y, &g.containment)?)),
            (x, y) => Err(EvalError::ty(
                "incl",
                format!("no inclusion of {} in {}", x.kind(), y.kind())
            )),
        });
        reg!(r, "singleton", 1, |a, g| Ok(RtVal::Bool(
            a[0].set("singleton")?.len() == 1
        )));
        r
    }
}

fn entity_set(s: &BTreeSet<Iri>) -> RtVal {
    RtVal::Set(s.iter().cloned().map(Into::into).collect())
}
