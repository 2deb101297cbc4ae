//! Brute-force oracles the algebra and the engine are checked against.
#![allow(dead_code)]

use std::collections::BTreeSet;

use kgq_core::sort_builder::{decode_sort, encode_sort, SortValue};
use kgq_core::{
    load_builtin_rules, Algebra, EngineConfig, Instant, Iri, KnowledgeGraph, Selector, Statement,
    TimeInterval, ValidityContext,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use super::gen::*;

fn run<S>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    TestRunner::new_with_rng(config, rng)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

// ------------------------------------------------------- interval oracle

/// Sample points at half-day steps across the window, plus one sentinel on
/// each side standing in for the unbounded past and future.
struct Points {
    words: usize,
}

const SAMPLES: usize = 2 * (LAST_DAY - FIRST_DAY + 1) as usize + 2;

impl Points {
    fn new() -> Self {
        Points {
            words: SAMPLES.div_ceil(64),
        }
    }

    /// Index of the sample for a whole day.
    fn index_of_day(day: i64) -> usize {
        1 + 2 * (day - FIRST_DAY) as usize
    }

    /// Members of `[start, end]` in whole days; `None` is unbounded.
    fn members(&self, start: Option<i64>, end: Option<i64>) -> Vec<u64> {
        let lo = start.map_or(0, Self::index_of_day);
        let hi = end.map_or(SAMPLES - 1, Self::index_of_day);
        range(self.words, lo, hi)
    }

    fn of(&self, t: &TimeInterval) -> Vec<u64> {
        if t.is_bottom() {
            return vec![0; self.words];
        }
        let day = |i: Instant| i.seconds().map(|s| s.div_euclid(DAY));
        self.members(day(t.start_time()), day(t.end_time()))
    }

    fn all(&self) -> Vec<u64> {
        self.members(None, None)
    }
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn or(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x | y).collect()
}

fn is_empty(a: &[u64]) -> bool {
    a.iter().all(|w| *w == 0)
}

fn has_bit(a: &[u64], i: usize) -> bool {
    a[i / 64] >> (i % 64) & 1 == 1
}

/// Bits `lo..=hi`, empty when `lo > hi`.
fn range(words: usize, lo: usize, hi: usize) -> Vec<u64> {
    let mut bits = vec![0u64; words];
    if lo > hi {
        return bits;
    }
    for (w, word) in bits.iter_mut().enumerate().take(hi / 64 + 1).skip(lo / 64) {
        let first = if w == lo / 64 { lo % 64 } else { 0 };
        let last = if w == hi / 64 { hi % 64 } else { 63 };
        *word = (u64::MAX >> (63 - last)) & (u64::MAX << first);
    }
    bits
}

/// True when the set bits form one run.
fn contiguous(a: &[u64]) -> bool {
    let first = a.iter().enumerate().find(|(_, w)| **w != 0);
    let last = a.iter().enumerate().rev().find(|(_, w)| **w != 0);
    match (first, last) {
        (Some((i, w)), Some((j, v))) => {
            let lo = i * 64 + w.trailing_zeros() as usize;
            let hi = j * 64 + 63 - v.leading_zeros() as usize;
            a == range(a.len(), lo, hi).as_slice()
        }
        _ => true,
    }
}

/// Compares inside, disjoint, inter and union with point-set semantics on
/// `pairs` random interval pairs. Returns the number of comparisons made.
pub fn interval_oracle(pairs: u32) -> Result<usize, String> {
    let pts = Points::new();
    let checks = std::sync::atomic::AtomicUsize::new(0);
    run(pairs, (interval(), interval(), day()), |(t1, t2, x)| {
        let (a, b) = (pts.of(&t1), pts.of(&t2));
        if !t1.is_bottom() {
            let inside = t1.contains(Instant::At(x * DAY)).unwrap();
            prop_assert_eq!(
                inside,
                has_bit(&a, Points::index_of_day(x)),
                "inside {:?} {:?}",
                x,
                t1
            );
        }
        let meet = and(&a, &b);
        if !t1.is_bottom() && !t2.is_bottom() {
            prop_assert_eq!(
                t1.disjoint(&t2),
                is_empty(&meet),
                "disjoint {:?} {:?}",
                t1,
                t2
            );
        }
        prop_assert!(
            pts.of(&t1.inter(&t2)) == meet,
            "inter {:?} {:?} = {:?}",
            t1,
            t2,
            t1.inter(&t2)
        );
        let join = or(&a, &b);
        let expected = if contiguous(&join) { join } else { pts.all() };
        prop_assert!(
            pts.of(&t1.union(&t2)) == expected,
            "union {:?} {:?} = {:?}",
            t1,
            t2,
            t1.union(&t2)
        );
        checks.fetch_add(4, std::sync::atomic::Ordering::Relaxed);
        Ok(())
    })?;
    Ok(checks.into_inner())
}

// ----------------------------------------------------- saturation oracle

/// `(subject, property, object, start day, end day)`; `None` days are
/// unbounded and a fully unbounded row has no time constraint.
type Row = (Iri, Iri, Iri, Option<i64>, Option<i64>);
pub type Edge = (bool, usize, usize, Option<i64>, Option<i64>);

#[derive(Debug, Clone)]
pub struct Taxonomy {
    pub classes: usize,
    /// `(instance edge?, from, to, start, end)`; instance edges start at an
    /// individual, subclass edges at a class.
    pub edges: Vec<Edge>,
}

fn class(n: usize) -> Iri {
    Iri::wd(&format!("Q{}", 500 + n))
}

fn individual(n: usize) -> Iri {
    Iri::wd(&format!("Q{}", 9000 + n))
}

pub fn taxonomy() -> impl Strategy<Value = Taxonomy> {
    (2usize..=40).prop_flat_map(|classes| {
        let bound = prop_oneof![1 => Just(None), 4 => day().prop_map(Some)];
        let span = (bound.clone(), bound).prop_map(|(a, b)| match (a, b) {
            (Some(x), Some(y)) => (Some(x.min(y)), Some(x.max(y))),
            other => other,
        });
        // At most one edge per (kind, from, to); individuals are numbered 0..10.
        let key = (prop::bool::weighted(0.3), 0..classes, 0..classes)
            .prop_map(|(inst, from, to)| (inst, if inst { from % 10 } else { from }, to));
        prop::collection::btree_map(key, span, 1..=60).prop_map(move |edges| Taxonomy {
            classes,
            edges: edges
                .into_iter()
                .map(|((inst, from, to), (a, b))| (inst, from, to, a, b))
                .collect(),
        })
    })
}

fn row_of(tax_edge: &Edge) -> Row {
    let (inst, from, to, a, b) = *tax_edge;
    let (s, p) = if inst {
        (individual(from), Iri::wd("P31"))
    } else {
        (class(from), Iri::wd("P279"))
    };
    (s, p, class(to), a, b)
}

/// Intersection of two day ranges; `None` when empty.
fn meet(
    a: (Option<i64>, Option<i64>),
    b: (Option<i64>, Option<i64>),
) -> Option<(Option<i64>, Option<i64>)> {
    let lo = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    let hi = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    match (lo, hi) {
        (Some(l), Some(h)) if l > h => None,
        r => Some(r),
    }
}

/// Naive join iteration of the two rules until nothing changes.
pub fn closure(rows: &BTreeSet<Row>) -> BTreeSet<Row> {
    let p279 = Iri::wd("P279");
    let mut all = rows.clone();
    loop {
        let mut fresh = Vec::new();
        for (x, p, y, a1, b1) in &all {
            for (y2, q, z, a2, b2) in &all {
                if q != &p279 || y != y2 {
                    continue;
                }
                if let Some((lo, hi)) = meet((*a1, *b1), (*a2, *b2)) {
                    let row = (x.clone(), p.clone(), z.clone(), lo, hi);
                    if !all.contains(&row) {
                        fresh.push(row);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return all;
        }
        all.extend(fresh);
    }
}

fn statement_of(row: &Row) -> Statement {
    let (s, p, o, a, b) = row;
    let validity = match (a, b) {
        (None, None) => ValidityContext::empty(),
        _ => {
            let at = |d: &Option<i64>| d.map_or(Instant::Undefined, |d| Instant::At(d * DAY));
            ValidityContext::time_validity(TimeInterval::new(at(a), at(b)).unwrap())
        }
    };
    Statement::st(s.clone(), p.clone(), o.clone()).with_validity(validity)
}

pub fn graph_of(tax: &Taxonomy) -> KnowledgeGraph {
    let mut g = KnowledgeGraph::new();
    for e in &tax.edges {
        g.insert(statement_of(&row_of(e))).unwrap();
    }
    g
}

fn row_from(s: &Statement) -> Row {
    let t = s.validity.extract_time();
    let day = |i: Instant| i.seconds().map(|x| x.div_euclid(DAY));
    let obj = s
        .value
        .as_ref()
        .and_then(|v| v.as_entity())
        .cloned()
        .expect("entity object");
    (
        s.subject.clone(),
        s.property.clone(),
        obj,
        day(t.start_time()),
        day(t.end_time()),
    )
}

/// Saturates each random taxonomy with the engine and with [`closure`];
/// returns the number of seeds compared.
pub fn saturation_oracle(seeds: u32) -> Result<u32, String> {
    let rules = load_builtin_rules(&Selector::names(["instance_of", "subclass_of"]))
        .map_err(|e| e.to_string())?;
    run(seeds, taxonomy(), |tax| {
        let rows: BTreeSet<Row> = tax.edges.iter().map(row_of).collect();
        let mut g = KnowledgeGraph::new();
        for r in &rows {
            g.insert(statement_of(r)).unwrap();
        }
        let cfg = EngineConfig {
            max_rounds: 1000,
            ..EngineConfig::default()
        };
        let (out, report) = kgq_core::fixpoint(&g, &rules, Algebra::default(), cfg);
        prop_assert!(!report.limit_hit);
        let got: BTreeSet<Row> = out.iter().map(row_from).collect();
        prop_assert_eq!(
            got.len(),
            out.len(),
            "distinct statements collapsed to one row"
        );
        let want = closure(&rows);
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(report.inferred, want.len() - rows.len());
        Ok(())
    })?;
    Ok(seeds)
}

// ----------------------------------------------------------- round trips

pub fn sort_value() -> impl Strategy<Value = SortValue> {
    prop_oneof![
        (interval(), space())
            .prop_map(|(t, s)| SortValue::Validity(ValidityContext::timespace(t, s))),
        interval().prop_map(|t| SortValue::Validity(ValidityContext::time_validity(t))),
        space().prop_map(|s| SortValue::Validity(ValidityContext::space_validity(s))),
        causality().prop_map(SortValue::Causality),
        sequence().prop_map(SortValue::Sequence),
        annotations().prop_map(SortValue::Annotations),
        provenance().prop_map(SortValue::Provenance),
    ]
}

/// decode(encode(v)) = v and the encoding is a fixed point.
pub fn sort_round_trip(cases: u32) -> Result<u32, String> {
    run(cases, sort_value(), |v| {
        let text = encode_sort(&v);
        let back = decode_sort(v.category(), &text)
            .map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
        prop_assert_eq!(&back, &v);
        prop_assert_eq!(encode_sort(&back), text);
        Ok(())
    })?;
    Ok(cases)
}

pub fn statement() -> impl Strategy<Value = Statement> {
    (
        entity(),
        entity(),
        value(),
        validity(),
        causality(),
        sequence(),
        annotations(),
        provenance(),
    )
        .prop_map(|(s, p, v, va, c, sq, a, pr)| {
            Statement::st(s, p, v)
                .with_validity(va)
                .with_causality(c)
                .with_sequence(sq)
                .with_annotations(a)
                .with_provenance(pr)
        })
}

pub fn graph() -> impl Strategy<Value = KnowledgeGraph> {
    prop::collection::vec(statement(), 0..30).prop_map(|stmts| {
        let mut g = KnowledgeGraph::new();
        for s in stmts {
            g.insert(s).unwrap();
        }
        g
    })
}

/// write → read gives a set-equal graph and the same bytes again.
pub fn ndjson_round_trip(cases: u32) -> Result<u32, String> {
    use kgq_core::io::{read_ndjson, write_ndjson};
    run(cases, graph(), |g| {
        let text = write_ndjson(&g);
        let back = read_ndjson(&text, "mem").map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back.len(), g.len());
        for s in g.iter() {
            prop_assert!(back.contains(s));
        }
        prop_assert_eq!(write_ndjson(&back), text);
        Ok(())
    })?;
    Ok(cases)
}

/// print → parse is the identity on every corpus rule.
pub fn printer_round_trip() -> Result<usize, String> {
    use kgq_core::rule_dsl::{parse_rule, print_rule};
    let rules = load_builtin_rules(&Selector::All).map_err(|e| e.to_string())?;
    for r in &rules {
        let text = print_rule(r);
        let back = parse_rule(&text).map_err(|d| format!("{}: {d:?}", r.name))?;
        if back.name != r.name || print_rule(&back) != text {
            return Err(format!("{} does not survive printing", r.name));
        }
    }
    Ok(rules.len())
}
