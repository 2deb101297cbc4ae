use std::collections::BTreeSet;
use std::path::PathBuf;

use kgq_core::io::turtle::load_turtle;
use kgq_core::io::{emit_sort_triples, write_ndjson};
use kgq_core::rule_dsl::{load_rules, Signature};
use kgq_core::rules_corpus::{load_builtin_rules, Selector};
use kgq_core::sort_builder::{encode_validity, CategoryMap};
use kgq_core::{
    fixpoint, Algebra, Causality, EngineConfig, Instant, Iri, KnowledgeGraph, Origin, Provenance,
    SequenceNode, Statement, TimeInterval, ValidityContext, Value,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn graph(name: &str) -> KnowledgeGraph {
    let (g, r) = load_turtle(&fixture(name), &CategoryMap::default()).unwrap();
    assert_eq!(r.statements_skipped, 0, "{:?}", r.diagnostics);
    g
}

fn run(
    g: &KnowledgeGraph,
    rules: &[kgq_core::rule_dsl::Rule],
) -> (KnowledgeGraph, kgq_core::RunReport) {
    let (out, report) = fixpoint(g, rules, Algebra::default(), EngineConfig::default());
    assert!(!report.limit_hit);
    (out, report)
}

fn inferred(g: &KnowledgeGraph) -> Vec<&Statement> {
    g.iter()
        .filter(|s| matches!(s.origin, Origin::Inferred(_)))
        .collect()
}

fn interval(a: (i32, u32, u32), b: (i32, u32, u32)) -> TimeInterval {
    TimeInterval::new(
        Instant::from_ymd(a.0, a.1, a.2),
        Instant::from_ymd(b.0, b.1, b.2),
    )
    .unwrap()
}

#[test]
fn scott_ingest_matches_sort_listing() {
    let g = graph("scott.ttl");
    let expected = std::fs::read_to_string(fixture("scott_sorts.ttl")).unwrap();
    assert_eq!(emit_sort_triples(&g), expected);
}

#[test]
fn transitive_part_of() {
    let g = graph("part_of.ttl");
    let rules = load_rules(
        &std::fs::read_to_string(fixture("part_of.rules")).unwrap(),
        &Signature::default(),
    )
    .unwrap();
    let (out, report) = run(&g, &rules);
    let new = inferred(&out);
    assert_eq!(new.len(), 1, "{report:?}");
    let s = new[0];
    assert_eq!(
        (s.subject.as_str(), s.property.as_str()),
        ("wd:Q1332185", "wd:P361")
    );
    assert_eq!(s.value, Some(Value::Entity(Iri::wd("Q8680"))));
    assert_eq!(
        encode_validity(&s.validity).to_string(),
        r#"{"time":{"end":"1776-07-04T00:00:00Z","start":"1775-05-10T00:00:00Z"}}"#
    );
}

#[test]
fn symmetric_spouse() {
    let g = graph("symmetric_spouse.ttl");
    let rules = load_builtin_rules(&Selector::names(["symmetry"])).unwrap();
    let (out, _) = run(&g, &rules);
    let expected = Statement::st(Iri::wd("Q253916"), Iri::wd("P26"), Iri::wd("Q182450"))
        .with_validity(ValidityContext::time_validity(interval(
            (1960, 1, 1),
            (1965, 1, 1),
        )))
        .with_causality(Causality::empty().add_end_cause([Iri::wd("Q93190")]));
    assert!(out.contains(&expected));
    assert_eq!(inferred(&out).len(), 1);
}

#[test]
fn symmetric_inference_drops_sequence() {
    let g = graph("hino_yasuko.ttl");
    let rules = load_builtin_rules(&Selector::names(["symmetry"])).unwrap();
    let (out, _) = run(&g, &rules);
    let new = inferred(&out);
    // The image, and the image of the image (the original minus its pointer).
    assert_eq!(new.len(), 2);
    assert!(new.iter().all(|s| s.sequence.is_empty()));
    assert!(new.iter().any(|s| s.subject == Iri::wd("Q193263")));
}

#[test]
fn sequence_previous_from_obama() {
    let g = graph("obama.ttl");
    let rules = load_builtin_rules(&Selector::All).unwrap();
    let (out, _) = run(&g, &rules);
    let bush = out
        .iter()
        .find(|s| s.subject == Iri::wd("Q207") && s.property == Iri::wd("P39"))
        .expect("predecessor statement");
    assert_eq!(bush.value, Some(Value::Entity(Iri::wd("Q11696"))));
    let t = bush.validity.extract_time();
    assert_eq!(
        t.end_time().to_xsd().as_deref(),
        Some("2009-01-20T00:00:00Z")
    );
    assert!(!t.start_time().is_defined());
    assert_eq!(bush.sequence, SequenceNode::with_next(Iri::wd("Q76")));
    assert_eq!(bush.causality, Causality::empty());
    let src = Iri::from_canonical("wdref:obama-ref").unwrap();
    assert_eq!(bush.provenance, Provenance::empty().add_sources([src]));
}

#[test]
fn spouse_death_adds_end_cause() {
    let g = graph("spouse_death.ttl");
    let rules = load_builtin_rules(&Selector::names(["spouse_death"])).unwrap();
    let (out, _) = run(&g, &rules);
    let new = inferred(&out);
    assert_eq!(new.len(), 1);
    let s = new[0];
    assert_eq!(
        s.causality.get_end_cause(),
        &BTreeSet::from([Iri::wd("Q99521170")])
    );
    let sources: BTreeSet<&str> = s.provenance.get_sources().iter().map(Iri::as_str).collect();
    assert_eq!(
        sources,
        BTreeSet::from(["wdref:death-ref", "wdref:marriage-ref"])
    );
    assert_eq!(
        s.validity.extract_time(),
        interval((1972, 9, 4), (1999, 9, 22))
    );
}

#[test]
fn listing_form_keeps_first_provenance() {
    let g = graph("spouse_death.ttl");
    let text = std::fs::read_to_string(fixture("spouse_death_listing.rules")).unwrap();
    let rules = load_rules(&text, &Signature::default()).unwrap();
    let (out, _) = run(&g, &rules);
    let new = inferred(&out);
    assert_eq!(new.len(), 1);
    let sources: BTreeSet<&str> = new[0]
        .provenance
        .get_sources()
        .iter()
        .map(Iri::as_str)
        .collect();
    assert_eq!(sources, BTreeSet::from(["wdref:marriage-ref"]));
}

#[test]
fn rerun_on_output_adds_nothing() {
    let g = graph("obama.ttl");
    let rules = load_builtin_rules(&Selector::All).unwrap();
    let (once, _) = run(&g, &rules);
    let (twice, report) = run(&once, &rules);
    assert_eq!(report.inferred, 0);
    assert_eq!(write_ndjson(&once), write_ndjson(&twice));
}
