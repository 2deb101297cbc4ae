//! Random generators shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use kgq_core::causality::InverseCause;
use kgq_core::{
    Annotations, Causality, Containment, Duration, Instant, InverseCauseMap, Iri, Literal,
    Provenance, SequenceNode, SpaceRegion, TimeInterval, ValidityContext, Value,
};
use proptest::prelude::*;

pub const DAY: i64 = 86_400;
/// 1700-01-01 and 2100-12-31 as Unix days.
pub const FIRST_DAY: i64 = -98_615;
pub const LAST_DAY: i64 = 47_846;

pub fn entity() -> impl Strategy<Value = Iri> {
    (0u32..24).prop_map(|n| Iri::wd(&format!("Q{n}")))
}

pub fn entities() -> impl Strategy<Value = BTreeSet<Iri>> {
    prop::collection::btree_set(entity(), 0..5)
}

pub fn value() -> impl Strategy<Value = Value> {
    prop_oneof![
        4 => entity().prop_map(Value::Entity),
        2 => (0u32..50).prop_map(|n| Value::Literal(Literal::string(format!("s{n}")))),
        1 => Just(Value::Undefined),
    ]
}

pub fn day() -> impl Strategy<Value = i64> {
    FIRST_DAY..=LAST_DAY
}

pub fn defined_instant() -> impl Strategy<Value = Instant> {
    day().prop_map(|d| Instant::At(d * DAY))
}

pub fn instant() -> impl Strategy<Value = Instant> {
    prop_oneof![6 => defined_instant(), 1 => Just(Instant::Undefined)]
}

pub fn duration() -> impl Strategy<Value = Duration> {
    (0i64..20_000).prop_map(|d| Duration::Seconds(d * DAY))
}

/// Intervals with defined endpoints.
pub fn bounded_interval() -> impl Strategy<Value = TimeInterval> {
    (day(), day()).prop_map(|(a, b)| {
        let (a, b) = (a.min(b), a.max(b));
        TimeInterval::new(Instant::At(a * DAY), Instant::At(b * DAY)).unwrap()
    })
}

/// Any interval: possibly unbounded on either side, occasionally bottom.
pub fn interval() -> impl Strategy<Value = TimeInterval> {
    prop_oneof![
        10 => (instant(), instant()).prop_map(|(a, b)| match (a, b) {
            (Instant::At(x), Instant::At(y)) => TimeInterval::new(Instant::At(x.min(y)), Instant::At(x.max(y))).unwrap(),
            _ => TimeInterval::new(a, b).unwrap(),
        }),
        1 => Just(TimeInterval::Bottom),
    ]
}

/// Containment forest used by space generators.
pub const REGION_TREE: &[(&str, &str)] = &[
    ("Geneva", "Switzerland"),
    ("Zurich", "Switzerland"),
    ("Switzerland", "Europe"),
    ("Paris", "France"),
    ("Lyon", "France"),
    ("France", "Europe"),
    ("KualaLumpur", "Malaysia"),
    ("Malaysia", "Asia"),
    ("Tokyo", "Japan"),
    ("Japan", "Asia"),
];

pub fn region_names() -> Vec<&'static str> {
    let mut v: BTreeSet<&str> = BTreeSet::new();
    for (a, b) in REGION_TREE {
        v.insert(a);
        v.insert(b);
    }
    v.into_iter().collect()
}

pub fn containment() -> Containment {
    Containment::from_facts(REGION_TREE.iter().map(|(a, b)| (Iri::wd(a), Iri::wd(b))))
}

pub fn region() -> impl Strategy<Value = Iri> {
    prop::sample::select(region_names()).prop_map(Iri::wd)
}

/// A normalized region set (an antichain) or the universal space.
pub fn space() -> impl Strategy<Value = SpaceRegion> {
    prop_oneof![
        1 => Just(SpaceRegion::Universal),
        6 => prop::collection::btree_set(region(), 0..4).prop_map(|set| {
            let c = containment();
            set.into_iter()
                .fold(SpaceRegion::bottom(), |acc, r| c.union(&acc, &SpaceRegion::region(r)).unwrap())
        }),
    ]
}

pub fn validity() -> impl Strategy<Value = ValidityContext> {
    (interval(), space()).prop_map(|(t, s)| ValidityContext::timespace(t, s))
}

pub fn causality() -> impl Strategy<Value = Causality> {
    (entities(), entities()).prop_map(|(h, e)| Causality::empty().add_has_cause(h).add_end_cause(e))
}

/// An inverse map over the generated entities: some pairs, some drops.
pub fn inverse_map() -> impl Strategy<Value = InverseCauseMap> {
    (
        prop::collection::vec((entity(), entity()), 0..4),
        prop::collection::vec(entity(), 0..3),
    )
        .prop_map(|(pairs, drops)| {
            let mut m = InverseCauseMap::empty();
            for (a, b) in pairs {
                m.insert_pair(a, b);
            }
            for d in drops {
                m.insert(d, InverseCause::Drop);
            }
            m
        })
}

pub fn sequence() -> impl Strategy<Value = SequenceNode> {
    prop_oneof![
        Just(SequenceNode::empty()),
        (entity(), entity()).prop_map(|(a, b)| SequenceNode::seq(a, b)),
        (entity(), entity(), 0u64..100)
            .prop_map(|(a, b, n)| SequenceNode::seq_with_ordinal_and_links(a, b, n)),
        entity().prop_map(SequenceNode::with_next),
        entity().prop_map(SequenceNode::with_prev),
        (0u64..100).prop_map(SequenceNode::with_ordinal),
    ]
}

pub fn provenance() -> impl Strategy<Value = Provenance> {
    entities().prop_map(|s| Provenance::empty().add_sources(s))
}

pub fn qualifier() -> impl Strategy<Value = Iri> {
    prop::sample::select(vec!["P2308", "P2309", "P2303", "P6607", "P1932"]).prop_map(Iri::wd)
}

pub fn annotations() -> impl Strategy<Value = Annotations> {
    prop::collection::vec((qualifier(), value()), 0..6).prop_map(|pairs| {
        pairs
            .into_iter()
            .fold(Annotations::empty(), |a, (q, v)| a.add(q, v))
    })
}
