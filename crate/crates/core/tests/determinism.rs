mod support;

use std::path::PathBuf;

use kgq_core::io::turtle::load_turtle;
use kgq_core::io::write_ndjson;
use kgq_core::sort_builder::CategoryMap;
use kgq_core::{fixpoint, load_builtin_rules, Algebra, EngineConfig, KnowledgeGraph, Selector};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRng, TestRunner};

fn fixture_graph() -> KnowledgeGraph {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut g = KnowledgeGraph::new();
    for name in [
        "part_of.ttl",
        "symmetric_spouse.ttl",
        "hino_yasuko.ttl",
        "obama.ttl",
        "spouse_death.ttl",
    ] {
        let (part, _) = load_turtle(&dir.join(name), &CategoryMap::default()).unwrap();
        for s in part.iter() {
            g.insert(s.clone()).unwrap();
        }
    }
    g
}

fn with_threads(g: &KnowledgeGraph, threads: usize) -> (KnowledgeGraph, String) {
    let rules = load_builtin_rules(&Selector::All).unwrap();
    let cfg = EngineConfig {
        threads,
        ..EngineConfig::default()
    };
    let (out, report) = fixpoint(g, &rules, Algebra::default(), cfg);
    assert!(!report.limit_hit);
    let text = write_ndjson(&out);
    (out, text)
}

#[test]
fn thread_count_does_not_change_output() {
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(Default::default()),
    );
    let mut inputs = vec![fixture_graph()];
    for _ in 0..5 {
        let tax = support::oracles::taxonomy()
            .new_tree(&mut runner)
            .unwrap()
            .current();
        inputs.push(support::oracles::graph_of(&tax));
    }
    for g in &inputs {
        let (a, ta) = with_threads(g, 1);
        for threads in [0, 4] {
            let (b, tb) = with_threads(g, threads);
            assert!(a == b);
            assert_eq!(ta, tb);
        }
    }
}

#[test]
fn rerun_on_output_adds_nothing() {
    let (out, text) = with_threads(&fixture_graph(), 0);
    let rules = load_builtin_rules(&Selector::All).unwrap();
    let (again, report) = fixpoint(&out, &rules, Algebra::default(), EngineConfig::default());
    assert_eq!(report.inferred, 0);
    assert_eq!(write_ndjson(&again), text);
}

#[test]
fn output_contains_input() {
    let g = fixture_graph();
    let (out, _) = with_threads(&g, 0);
    assert!(g.iter().all(|s| out.contains(s)));
}
