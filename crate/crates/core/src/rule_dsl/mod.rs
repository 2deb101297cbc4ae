//! The rule language: parsing, sort checking, printing and compilation to
//! SPARQL CONSTRUCT.

pub mod ast;
pub mod compile;
pub mod diag;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod signature;
pub mod typecheck;

use std::collections::BTreeMap;

pub use ast::{Atom, Pos, Rule, Term, TermKind};
pub use compile::{compile_rule, CompileError};
pub use diag::{Diagnostic, DiagnosticKind};
pub use parser::{parse_rules, parse_single};
pub use printer::{print_rule, print_rules, print_term};
pub use signature::{Profile, Signature, Sort};
pub use typecheck::typecheck_rule;

/// Parses and checks one rule against the default signature.
pub fn parse_rule(text: &str) -> Result<Rule, Vec<Diagnostic>> {
    let rule = parse_single(text)?;
    let diags = typecheck_rule(&rule, &Signature::default());
    if diags.is_empty() {
        Ok(rule)
    } else {
        Err(diags)
    }
}

/// Parses and checks a rule file. All diagnostics are returned together.
pub fn load_rules(text: &str, sig: &Signature) -> Result<Vec<Rule>, Vec<Diagnostic>> {
    let rules = parse_rules(text)?;
    let diags = check_rules(&rules, sig);
    if diags.is_empty() {
        Ok(rules)
    } else {
        Err(diags)
    }
}

/// Diagnostics for a rule set, including duplicate names.
pub fn check_rules(rules: &[Rule], sig: &Signature) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut seen: BTreeMap<&str, Pos> = BTreeMap::new();
    for r in rules {
        if let Some(first) = seen.insert(&r.name, r.pos) {
            diags.push(
                Diagnostic::new(
                    DiagnosticKind::DuplicateRuleName,
                    r.pos,
                    format!("rule name already used at {first}"),
                )
                .in_rule(&r.name),
            );
        }
        diags.extend(typecheck_rule(r, sig));
    }
    diags
}
