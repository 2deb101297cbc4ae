use std::fs;
use std::path::{Path, PathBuf};

use kgq_core::io::{
    load_category_map, load_containment, load_inverse_map, load_ndjson, load_turtle, save_ndjson,
    save_sort_triples,
};
use kgq_core::rule_dsl::{check_rules, compile_rule, parse_rules, Rule, Signature};
use kgq_core::sort_builder::CategoryMap;
use kgq_core::{
    fixpoint, load_builtin_rules, Algebra, Containment, EngineConfig, InverseCauseMap,
    KnowledgeGraph, Selector,
};

use crate::{CheckArgs, CompileArgs, Failure, Format, InferArgs, IngestArgs, SortsArgs};

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn guess_format(path: &Path) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("ndjson" | "jsonl") => Format::Ndjson,
        _ => Format::Turtle,
    }
}

/// Rewrites every space value as an antichain of the containment order.
fn normalize_spaces(g: &KnowledgeGraph, c: &Containment) -> Result<KnowledgeGraph, Failure> {
    let mut out = KnowledgeGraph::new();
    out.prefixes = g.prefixes.clone();
    for s in g.iter() {
        let space = s.validity.extract_space();
        let normal = c
            .union(&kgq_core::SpaceRegion::bottom(), &space)
            .map_err(|e| Failure::Io(format!("statement {} {}: {e}", s.subject, s.property)))?;
        let mut s = s.clone();
        if !space.is_universal() {
            s.validity = s.validity.set_space(normal);
        }
        out.insert(s).map_err(|e| Failure::Io(e.to_string()))?;
    }
    Ok(out)
}

pub fn ingest(a: &IngestArgs) -> Result<(), Failure> {
    let map = match &a.category_map {
        Some(p) => load_category_map(p)?,
        None => CategoryMap::default(),
    };
    let mut g = match a.format.unwrap_or_else(|| guess_format(&a.input)) {
        Format::Turtle => {
            let (g, r) = load_turtle(&a.input, &map)?;
            for d in &r.diagnostics {
                eprintln!("{}: {d}", a.input.display());
            }
            eprintln!(
                "ingest: {} statements parsed, {} loaded, {} skipped; {} qualifier pairs: {} sorted, {} annotated, {} skipped; {} triples skipped",
                r.statements_parsed,
                r.statements_loaded,
                r.statements_skipped,
                r.qualifier_pairs,
                r.pairs_sorted,
                r.pairs_annotated,
                r.pairs_skipped,
                r.triples_skipped
            );
            g
        }
        Format::Ndjson => {
            let g = load_ndjson(&a.input)?;
            eprintln!("ingest: {} statements loaded", g.len());
            g
        }
    };
    if let Some(p) = &a.containment {
        g = normalize_spaces(&g, &load_containment(p)?)?;
    }
    save_ndjson(&g, &a.out)?;
    Ok(())
}

pub fn sorts(a: &SortsArgs) -> Result<(), Failure> {
    let g = load_ndjson(&a.input)?;
    save_sort_triples(&g, &a.out)?;
    Ok(())
}

fn selector(spec: &str) -> Result<Selector, Failure> {
    if spec.trim() == "all" {
        return Ok(Selector::All);
    }
    let names: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|n| !n.is_empty())
        .collect();
    if names.is_empty() {
        return Err(Failure::Usage("--builtin needs `all` or rule names".into()));
    }
    Ok(Selector::names(names))
}

/// Parses rule files, prefixing diagnostics with the file path.
fn parse_files(paths: &[PathBuf]) -> Result<Vec<(PathBuf, Rule)>, Failure> {
    let mut rules = Vec::new();
    let mut diags = Vec::new();
    for path in paths {
        match parse_rules(&read(path)?) {
            Ok(rs) => rules.extend(rs.into_iter().map(|r| (path.clone(), r))),
            Err(ds) => diags.extend(ds.iter().map(|d| format!("{}:{d}", path.display()))),
        }
    }
    if diags.is_empty() {
        Ok(rules)
    } else {
        Err(Failure::Rules(diags))
    }
}

/// Typechecks the combined set, so duplicate names across files are caught.
fn checked(rules: Vec<(PathBuf, Rule)>) -> Result<Vec<Rule>, Failure> {
    let (paths, rules): (Vec<PathBuf>, Vec<Rule>) = rules.into_iter().unzip();
    let diags = check_rules(&rules, &Signature::default());
    if diags.is_empty() {
        return Ok(rules);
    }
    let located = diags
        .iter()
        .map(|d| {
            let at = rules.iter().position(|r| Some(&r.name) == d.rule.as_ref());
            let at = d
                .rule
                .as_ref()
                .and_then(|_| at.map(|i| paths[i].display().to_string()));
            format!("{}:{d}", at.unwrap_or_else(|| "<rules>".into()))
        })
        .collect();
    Err(Failure::Rules(located))
}

pub fn infer(a: &InferArgs) -> Result<(), Failure> {
    if a.rules.is_empty() && a.builtin.is_none() {
        return Err(Failure::Usage(
            "infer needs --rules FILE... or --builtin".into(),
        ));
    }
    let mut rules = parse_files(&a.rules)?;
    if let Some(spec) = &a.builtin {
        let builtin =
            load_builtin_rules(&selector(spec)?).map_err(|e| Failure::Usage(e.to_string()))?;
        rules.extend(builtin.into_iter().map(|r| (PathBuf::from("<builtin>"), r)));
    }
    let rules = checked(rules)?;
    let config = EngineConfig {
        max_rounds: a.max_rounds,
        max_new_statements: a.max_new,
        trace_provenance: a.trace,
        threads: a.threads,
    };
    config.validate().map_err(Failure::Usage)?;
    let algebra = Algebra {
        containment: match &a.containment {
            Some(p) => load_containment(p)?,
            None => Containment::new(),
        },
        inverse: match &a.inverse_map {
            Some(p) => load_inverse_map(p)?,
            None => InverseCauseMap::default(),
        },
    };
    let g = load_ndjson(&a.graph)?;
    let (out, report) = fixpoint(&g, &rules, algebra, config);
    save_ndjson(&out, &a.out)?;
    if let Some(p) = &a.report {
        let text = serde_json::to_string_pretty(&report.to_json()).expect("json");
        write(p, &(text + "\n"))?;
    }
    for d in &report.diagnostics {
        eprintln!("{d}");
    }
    eprintln!(
        "infer: {} rounds, {} statements inferred",
        report.rounds, report.inferred
    );
    if report.limit_hit {
        return Err(Failure::LimitHit);
    }
    Ok(())
}

pub fn compile(a: &CompileArgs) -> Result<(), Failure> {
    let rules = checked(parse_files(std::slice::from_ref(&a.rule))?)?;
    fs::create_dir_all(&a.out).map_err(|e| Failure::Io(format!("{}: {e}", a.out.display())))?;
    let mut failed = Vec::new();
    for r in &rules {
        match compile_rule(r) {
            Ok(q) => write(&a.out.join(format!("{}.rq", r.name)), &q)?,
            Err(e) => failed.push(format!("{}: {e}", a.rule.display())),
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Rules(failed))
    }
}

pub fn check(a: &CheckArgs) -> Result<(), Failure> {
    let rules = checked(parse_files(&a.rules)?)?;
    println!("ok: {} rules", rules.len());
    Ok(())
}
