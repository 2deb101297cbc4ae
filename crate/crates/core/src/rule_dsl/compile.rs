//! Translation of rules into SPARQL CONSTRUCT queries over the statement-node
//! layout: `subject p:P node`, `node ps:P value`, and one `pq:<sort>J`
//! JSON literal per sort. Sort functions become `kgq:` extension calls.

use std::collections::BTreeSet;
use std::fmt::Write;

use thiserror::Error;

use crate::iri::{Iri, KGQ, P, PQ, PS, WD, WIKIBASE, XSD};
use crate::model::StatementKind;
use crate::rule_dsl::ast::{Atom, Rule, Term, TermKind};
use crate::rule_dsl::printer::print_term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("rule `{rule}`: {what} is not implemented by the SPARQL compiler")]
    NotImplemented { rule: String, what: String },
}

/// Predicates carrying the five sort values, in emission order.
pub const SORT_PREDICATES: [&str; 5] = [
    "validityJ",
    "causalityJ",
    "sequenceJ",
    "annotationsJ",
    "provenanceJ",
];

const PREFIXES: [(&str, &str); 7] = [
    ("wd", WD),
    ("p", P),
    ("ps", PS),
    ("pq", PQ),
    ("wikibase", WIKIBASE),
    ("xsd", XSD),
    ("kgq", KGQ),
];

pub fn compile_rule(rule: &Rule) -> Result<String, CompileError> {
    let not_impl = |what: &str| CompileError::NotImplemented {
        rule: rule.name.clone(),
        what: what.to_string(),
    };
    let Atom::Statement {
        kind, args: head, ..
    } = &rule.head
    else {
        return Err(not_impl("a builtin head"));
    };
    if *kind != StatementKind::St {
        return Err(not_impl(&format!("a `{}` head", kind.as_str())));
    }

    let mut out = String::new();
    for (p, ns) in PREFIXES {
        let _ = writeln!(out, "PREFIX {p}: <{ns}>");
    }
    let _ = writeln!(out, "\n# rule {}", rule.name);

    let mut wher = String::new();
    let mut filters = String::new();
    let mut claims = BTreeSet::new();
    for (n, atom) in rule.body.iter().enumerate() {
        match atom {
            Atom::Statement { kind, args, .. } => {
                if *kind != StatementKind::St {
                    return Err(not_impl(&format!("a `{}` body atom", kind.as_str())));
                }
                let node = format!("?_st{n}");
                let (p, ps) =
                    property_terms(&args[1], &mut claims, &mut wher).map_err(|w| not_impl(&w))?;
                let _ = writeln!(
                    wher,
                    "  {} {p} {node} .",
                    render_node(&args[0]).map_err(|w| not_impl(&w))?
                );
                let _ = writeln!(
                    wher,
                    "  {node} {ps} {} ;",
                    render_node(&args[2]).map_err(|w| not_impl(&w))?
                );
                for (k, pred) in SORT_PREDICATES.iter().enumerate() {
                    let t = &args[3 + k];
                    let obj = match &t.kind {
                        TermKind::Var(v) => format!("?{v}"),
                        _ => {
                            let tmp = format!("?_c{n}_{}", 3 + k);
                            let _ = writeln!(filters, "  FILTER(kgq:equal({tmp}, {}))", render(t));
                            tmp
                        }
                    };
                    let end = if k == 4 { " ." } else { " ;" };
                    let _ = writeln!(wher, "    pq:{pred} {obj}{end}");
                }
            }
            Atom::Builtin { name, args, .. } => {
                let _ = writeln!(filters, "  FILTER(kgq:{name}({}))", render_args(args));
            }
        }
    }

    // Head: variables are used directly, any other term is bound first.
    let mut binds = String::new();
    let mut head_obj = Vec::new();
    for (k, t) in head.iter().enumerate() {
        head_obj.push(match &t.kind {
            TermKind::Var(v) => format!("?{v}"),
            TermKind::Iri(_) | TermKind::Literal(_) if k < 3 => render(t),
            _ => {
                let tmp = format!("?_h{k}");
                let _ = writeln!(binds, "  BIND({} AS {tmp})", render(t));
                tmp
            }
        });
    }
    let (hp, hps) = property_terms(&head[1], &mut claims, &mut wher).map_err(|w| not_impl(&w))?;

    out.push_str("CONSTRUCT {\n");
    let _ = writeln!(out, "  {} {hp} _:h .", head_obj[0]);
    let _ = writeln!(out, "  _:h {hps} {} ;", head_obj[2]);
    for (k, pred) in SORT_PREDICATES.iter().enumerate() {
        let end = if k == 4 { " ." } else { " ;" };
        let _ = writeln!(out, "    pq:{pred} {}{end}", head_obj[3 + k]);
    }
    out.push_str("}\nWHERE {\n");
    out.push_str(&wher);
    out.push_str(&filters);
    out.push_str(&binds);
    out.push_str("}\n");
    Ok(out)
}

/// `p:`/`ps:` predicates for a property term. A variable property is
/// resolved through `wikibase:claim` and `wikibase:statementProperty`.
fn property_terms(
    t: &Term,
    claims: &mut BTreeSet<String>,
    wher: &mut String,
) -> Result<(String, String), String> {
    match &t.kind {
        TermKind::Var(v) => {
            let (p, ps) = (format!("?_claim_{v}"), format!("?_stprop_{v}"));
            if claims.insert(v.clone()) {
                let _ = writeln!(
                    wher,
                    "  ?{v} wikibase:claim {p} ;\n    wikibase:statementProperty {ps} ."
                );
            }
            Ok((p, ps))
        }
        TermKind::Iri(i) => {
            let full = i.expand();
            let local = full
                .strip_prefix(WD)
                .filter(|l| !l.contains('/'))
                .ok_or_else(|| format!("property `{i}` outside the entity namespace"))?;
            Ok((format!("p:{local}"), format!("ps:{local}")))
        }
        _ => Err(format!("computed property `{}`", print_term(t))),
    }
}

/// Subject or value position. Computed terms cannot be matched by a pattern.
fn render_node(t: &Term) -> Result<String, String> {
    match &t.kind {
        TermKind::Apply(..) => Err(format!("computed body term `{}`", print_term(t))),
        _ => Ok(render(t)),
    }
}

fn render_iri(i: &Iri) -> String {
    let full = i.expand();
    PREFIXES
        .iter()
        .filter(|(_, ns)| full.starts_with(ns) && full.len() > ns.len())
        .max_by_key(|(_, ns)| ns.len())
        .map(|(p, ns)| (p, &full[ns.len()..]))
        .filter(|(_, local)| {
            local
                .chars()
                .all(|c| c.is_alphanumeric() || c == '_' || c == '-')
        })
        .map(|(p, local)| format!("{p}:{local}"))
        .unwrap_or_else(|| format!("<{full}>"))
}

fn render_args(args: &[Term]) -> String {
    args.iter().map(render).collect::<Vec<_>>().join(", ")
}

fn render(t: &Term) -> String {
    match &t.kind {
        TermKind::Var(v) => format!("?{v}"),
        TermKind::Iri(i) => render_iri(i),
        TermKind::Literal(l) => {
            let lex = l
                .lexical
                .replace('\\', "\\\\")
                .replace('"', "\\\"")
                .replace('\n', "\\n");
            format!("\"{lex}\"^^{}", render_iri(&l.datatype))
        }
        TermKind::Apply(f, args) => format!("kgq:{f}({})", render_args(args)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule_dsl::parser::parse_single;

    #[test]
    fn symmetric_rule_swaps_subject_and_value() {
        let r = parse_single("st(X,:P1,Y,V,C,S,A,P) -> st(Y,:P1,X,V,C,S,A,P)").unwrap();
        let q = compile_rule(&r).unwrap();
        assert!(q.contains("  ?Y p:P1 _:h .\n  _:h ps:P1 ?X ;"));
        assert!(q.contains("  ?X p:P1 ?_st0 .\n  ?_st0 ps:P1 ?Y ;"));
        assert_eq!(q, compile_rule(&r).unwrap());
    }

    #[test]
    fn constant_sorts_become_filters() {
        let r = parse_single(
            "st(X,:P1,Y,emptyValidity,C,S,A,P) -> st(Y,:P1,X,emptyValidity,C,emptySequence,A,P)",
        )
        .unwrap();
        let q = compile_rule(&r).unwrap();
        assert!(q.contains("FILTER(kgq:equal(?_c0_3, kgq:emptyValidity()))"));
        assert!(q.contains("BIND(kgq:emptySequence() AS ?_h5)"));
    }

    #[test]
    fn variable_property_uses_claim_lookup() {
        let r = parse_single(
            "st(Q,:P1647,R,V,C,S,A,P) st(X,Q,Y,V2,C2,S2,A2,P2) -> st(X,R,Y,V2,C2,S2,A2,P2)",
        )
        .unwrap();
        let q = compile_rule(&r).unwrap();
        assert!(q.contains("?Q wikibase:claim ?_claim_Q ;"));
        assert!(q.contains("?R wikibase:claim ?_claim_R ;"));
        assert!(q.contains("?X ?_claim_R _:h ."));
    }

    #[test]
    fn sno_head_is_not_implemented() {
        let r = parse_single("st(X,:P1,Y,V,C,S,A,P) -> sno(X,:P2,V,C,S,A,P)").unwrap();
        assert!(matches!(
            compile_rule(&r),
            Err(CompileError::NotImplemented { .. })
        ));
    }
}
