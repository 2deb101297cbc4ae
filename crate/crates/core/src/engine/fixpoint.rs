//! Naive saturation: every round re-runs all rules against the graph as it
//! stood at the start of the round, then merges the results in rule order.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::engine::eval::{apply_rule, RuleOutput};
use crate::engine::functions::{Algebra, FunctionRegistry};
use crate::io::ndjson::statement_key;
use crate::model::KnowledgeGraph;
use crate::rule_dsl::{Rule, Signature, Sort};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub max_rounds: usize,
    pub max_new_statements: usize,
    /// Record, for each inferred statement, the rule and premises that first
    /// produced it.
    pub trace_provenance: bool,
    /// Worker threads for rule application; 0 picks the rayon default and 1
    /// runs sequentially.
    pub threads: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_rounds: 100,
            max_new_statements: 1_000_000,
            trace_provenance: false,
            threads: 0,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_rounds == 0 {
            return Err("maxRounds must be positive".into());
        }
        if self.max_new_statements == 0 {
            return Err("maxNewStatements must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub statement: String,
    pub rule: String,
    pub premises: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    pub rounds: usize,
    pub inferred: usize,
    pub per_rule: BTreeMap<String, usize>,
    pub limit_hit: bool,
    pub diagnostics: Vec<String>,
    pub traces: Vec<Trace>,
}

impl RunReport {
    pub fn to_json(&self) -> Json {
        let mut j = json!({
            "rounds": self.rounds,
            "inferred": self.inferred,
            "perRule": self.per_rule,
            "limitHit": self.limit_hit,
            "diagnostics": self.diagnostics,
        });
        if !self.traces.is_empty() {
            j["traces"] = self
                .traces
                .iter()
                .map(|t| json!({"statement": t.statement, "rule": t.rule, "premises": t.premises}))
                .collect();
        }
        j
    }
}

/// Rule evaluator with its function table, algebra tables and limits.
#[derive(Debug, Clone, Default)]
pub struct Engine {
    pub signature: Signature,
    pub functions: FunctionRegistry,
    pub algebra: Algebra,
    pub config: EngineConfig,
}

impl Engine {
    pub fn new(algebra: Algebra, config: EngineConfig) -> Self {
        Engine {
            algebra,
            config,
            ..Engine::default()
        }
    }

    /// Adds a user function to both the signature and the evaluator.
    pub fn register_function<F>(&mut self, name: &str, params: &[Sort], result: Option<Sort>, f: F)
    where
        F: Fn(
                &[crate::engine::RtVal],
                &Algebra,
            ) -> Result<crate::engine::RtVal, crate::error::EvalError>
            + Send
            + Sync
            + 'static,
    {
        match result {
            Some(r) => self.signature.function(name, params, r),
            None => self.signature.predicate(name, params),
        }
        self.functions.register(name, f);
    }

    pub fn apply_rule(&self, g: &KnowledgeGraph, rule: &Rule) -> RuleOutput {
        apply_rule(g, rule, &self.functions, &self.algebra)
    }

    fn round(&self, g: &KnowledgeGraph, rules: &[Rule]) -> Vec<RuleOutput> {
        match self.config.threads {
            1 => rules.iter().map(|r| self.apply_rule(g, r)).collect(),
            n => {
                let run = || rules.par_iter().map(|r| self.apply_rule(g, r)).collect();
                if n == 0 {
                    run()
                } else {
                    match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                        Ok(pool) => pool.install(run),
                        Err(_) => rules.iter().map(|r| self.apply_rule(g, r)).collect(),
                    }
                }
            }
        }
    }

    /// Runs all rules to saturation or until a limit stops the run.
    pub fn fixpoint(&self, input: &KnowledgeGraph, rules: &[Rule]) -> (KnowledgeGraph, RunReport) {
        let mut g = input.clone();
        let mut report = RunReport::default();
        for r in rules {
            report.per_rule.insert(r.name.clone(), 0);
        }
        if let Err(e) = self.config.validate() {
            report.diagnostics.push(e);
            report.limit_hit = true;
            return (g, report);
        }
        let mut seen_diag = BTreeSet::new();
        loop {
            if report.rounds == self.config.max_rounds {
                report.limit_hit = true;
                break;
            }
            report.rounds += 1;
            let snapshot = g.clone();
            let outputs = self.round(&snapshot, rules);
            let mut added = 0;
            'merge: for (rule, out) in rules.iter().zip(outputs) {
                for e in out.errors {
                    if seen_diag.insert(e.clone()) {
                        report.diagnostics.push(e);
                    }
                }
                for d in out.derivations {
                    if g.contains(&d.statement) {
                        continue;
                    }
                    if report.inferred == self.config.max_new_statements {
                        report.limit_hit = true;
                        break 'merge;
                    }
                    let trace = self.config.trace_provenance.then(|| Trace {
                        statement: statement_key(&d.statement).to_string(),
                        rule: rule.name.clone(),
                        premises: d
                            .premises
                            .iter()
                            .map(|&i| statement_key(&snapshot.statements()[i]).to_string())
                            .collect(),
                    });
                    match g.insert(d.statement) {
                        Ok(true) => {
                            report.traces.extend(trace);
                            added += 1;
                            report.inferred += 1;
                            *report.per_rule.entry(rule.name.clone()).or_default() += 1;
                        }
                        Ok(false) => {}
                        Err(e) => {
                            let msg = format!("rule {}: {e}", rule.name);
                            if seen_diag.insert(msg.clone()) {
                                report.diagnostics.push(msg);
                            }
                        }
                    }
                }
            }
            if report.limit_hit || added == 0 {
                break;
            }
        }
        (g, report)
    }
}

/// Saturates `g` under `rules` with default functions.
pub fn fixpoint(
    g: &KnowledgeGraph,
    rules: &[Rule],
    algebra: Algebra,
    cfg: EngineConfig,
) -> (KnowledgeGraph, RunReport) {
    Engine::new(algebra, cfg).fixpoint(g, rules)
}
