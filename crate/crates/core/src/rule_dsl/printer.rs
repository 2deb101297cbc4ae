//! Canonical rule text. Re-parsing the output yields an equal tree.

use std::fmt::Write;

use crate::model::Literal;
use crate::rule_dsl::ast::{Atom, Rule, Term, TermKind};

pub fn print_rule(rule: &Rule) -> String {
    let mut out = format!("rule {}:\n", rule.name);
    for a in &rule.body {
        out.push_str("  ");
        out.push_str(&print_atom(a));
        out.push('\n');
    }
    out.push_str("  ->\n  ");
    out.push_str(&print_atom(&rule.head));
    out.push_str(" .\n");
    out
}

pub fn print_rules(rules: &[Rule]) -> String {
    rules.iter().map(print_rule).collect::<Vec<_>>().join("\n")
}

pub fn print_atom(atom: &Atom) -> String {
    let name = match atom {
        Atom::Statement { kind, .. } => kind.as_str(),
        Atom::Builtin { name, .. } => name,
    };
    format!("{name}({})", print_args(atom.args()))
}

fn print_args(args: &[Term]) -> String {
    args.iter().map(print_term).collect::<Vec<_>>().join(", ")
}

pub fn print_term(t: &Term) -> String {
    match &t.kind {
        TermKind::Var(v) => v.clone(),
        TermKind::Iri(i) => i.to_string(),
        TermKind::Literal(l) => print_literal(l),
        TermKind::Apply(f, args) if args.is_empty() => f.clone(),
        TermKind::Apply(f, args) => format!("{f}({})", print_args(args)),
    }
}

fn print_literal(l: &Literal) -> String {
    let dt = l.datatype.as_str();
    let digits = !l.lexical.is_empty()
        && l.lexical
            .strip_prefix('-')
            .unwrap_or(&l.lexical)
            .chars()
            .all(|c| c.is_ascii_digit())
        && l.lexical != "-";
    if dt == "xsd:integer" && digits {
        return l.lexical.clone();
    }
    let mut s = String::from("\"");
    for c in l.lexical.chars() {
        match c {
            '"' => s.push_str("\\\""),
            '\\' => s.push_str("\\\\"),
            '\n' => s.push_str("\\n"),
            '\t' => s.push_str("\\t"),
            c => s.push(c),
        }
    }
    s.push('"');
    if dt != "xsd:string" {
        let _ = write!(s, "^^{dt}");
    }
    s
}
