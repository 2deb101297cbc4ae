//! Sort checking and range restriction.

use std::collections::{BTreeMap, BTreeSet};

use crate::iri::Iri;
use crate::model::StatementKind;
use crate::rule_dsl::ast::{Atom, Pos, Rule, Term, TermKind};
use crate::rule_dsl::diag::{Diagnostic, DiagnosticKind};
use crate::rule_dsl::signature::{Signature, Sort};

pub fn position_sorts(kind: StatementKind) -> &'static [Sort] {
    match kind {
        StatementKind::St => &Sort::STATEMENT,
        _ => &Sort::STATEMENT_NO_VALUE,
    }
}

/// Narrower of two compatible sorts, if they are compatible.
fn meet(a: Sort, b: Sort) -> Option<Sort> {
    match (a, b) {
        _ if a == b => Some(a),
        (Sort::Entity, Sort::Value) | (Sort::Value, Sort::Entity) => Some(Sort::Entity),
        _ => None,
    }
}

/// Returns every diagnostic for `rule`; empty iff the rule is well formed.
pub fn typecheck_rule(rule: &Rule, sig: &Signature) -> Vec<Diagnostic> {
    let mut c = Checker {
        sig,
        diags: Vec::new(),
        env: BTreeMap::new(),
    };
    c.rule(rule);
    c.diags.into_iter().map(|d| d.in_rule(&rule.name)).collect()
}

struct Checker<'a> {
    sig: &'a Signature,
    diags: Vec<Diagnostic>,
    env: BTreeMap<String, Sort>,
}

impl Checker<'_> {
    fn diag(&mut self, kind: DiagnosticKind, pos: Pos, msg: impl Into<String>) {
        self.diags.push(Diagnostic::new(kind, pos, msg));
    }

    fn rule(&mut self, rule: &Rule) {
        // Statement atoms bind variables and fix their sorts.
        for atom in rule.statement_atoms() {
            let Atom::Statement { kind, args, pos } = atom else {
                continue;
            };
            let sorts = position_sorts(*kind);
            if !self.arity(*kind, args.len(), *pos) {
                continue;
            }
            for (t, &want) in args.iter().zip(sorts) {
                match &t.kind {
                    TermKind::Var(v) => match self.env.get(v).copied() {
                        None => {
                            self.env.insert(v.clone(), want);
                        }
                        Some(prev) => match meet(prev, want) {
                            Some(m) => {
                                self.env.insert(v.clone(), m);
                            }
                            None => self.diag(
                                DiagnosticKind::SortMismatch,
                                t.pos,
                                format!("variable `{v}` used as {prev} and as {want}"),
                            ),
                        },
                    },
                    _ if !t.is_ground() => self.diag(
                        DiagnosticKind::NonGroundBodyTerm,
                        t.pos,
                        "body statement positions take variables or ground terms",
                    ),
                    _ => self.expect(t, want),
                }
            }
        }
        let bound: BTreeSet<String> = self.env.keys().cloned().collect();
        let mut head_vars = BTreeSet::new();
        if let Atom::Statement { args, .. } = &rule.head {
            let mut v = Vec::new();
            args.iter().for_each(|t| t.vars(&mut v));
            head_vars.extend(v.into_iter().map(str::to_string));
        }

        let mut existential = BTreeSet::new();
        for atom in &rule.body {
            let Atom::Builtin { name, args, pos } = atom else {
                continue;
            };
            let mut seen = BTreeSet::new();
            for v in atom.vars() {
                if bound.contains(v) || !seen.insert(v) {
                    continue;
                }
                if head_vars.contains(v) {
                    if existential.insert(v.to_string()) {
                        self.diag(
                            DiagnosticKind::Existential,
                            *pos,
                            format!(
                                "variable `{v}` is bound only by builtin `{name}`; existential rules are \
                                 unsupported, only the singleton-class form of a type constraint is a Horn rule"
                            ),
                        );
                    }
                } else {
                    self.diag(
                        DiagnosticKind::UnboundBuiltinVariable,
                        *pos,
                        format!(
                            "variable `{v}` of `{name}` does not occur in a body statement atom"
                        ),
                    );
                }
            }
            self.builtin(name, args, *pos);
        }

        let Atom::Statement { kind, args, pos } = &rule.head else {
            return;
        };
        if !self.arity(*kind, args.len(), *pos) {
            return;
        }
        for (t, &want) in args.iter().zip(position_sorts(*kind)) {
            let mut vs = Vec::new();
            t.vars(&mut vs);
            for v in vs {
                if !bound.contains(v) && !existential.contains(v) {
                    self.diag(
                        DiagnosticKind::UnboundHeadVariable,
                        t.pos,
                        format!("head variable `{v}` is not bound by the body"),
                    );
                }
            }
            self.expect(t, want);
        }
    }

    fn arity(&mut self, kind: StatementKind, n: usize, pos: Pos) -> bool {
        let want = position_sorts(kind).len();
        if n != want {
            self.diag(
                DiagnosticKind::Arity,
                pos,
                format!("`{}` takes {want} arguments, found {n}", kind.as_str()),
            );
        }
        n == want
    }

    fn expect(&mut self, t: &Term, want: Sort) {
        if let Some(got) = self.infer(t) {
            if !got.fits(want) {
                self.diag(
                    DiagnosticKind::SortMismatch,
                    t.pos,
                    format!("expected {want}, found {got}"),
                );
            }
        }
    }

    fn builtin(&mut self, name: &str, args: &[Term], pos: Pos) {
        if !self.sig.is_predicate(name) {
            let msg = if self.sig.is_function(name) {
                format!("`{name}` is a function, not a predicate")
            } else {
                format!("unknown predicate `{name}`")
            };
            self.diag(DiagnosticKind::UnknownFunction, pos, msg);
            for a in args {
                let _ = self.infer(a);
            }
            return;
        }
        self.apply(name, args, pos);
    }

    /// Checks an application and returns its result sort (`Any` for a
    /// predicate), or `None` after reporting a problem.
    fn apply(&mut self, name: &str, args: &[Term], pos: Pos) -> Option<Sort> {
        let sorts: Vec<Option<Sort>> = args.iter().map(|a| self.infer(a)).collect();
        let sorts: Vec<Sort> = sorts.into_iter().collect::<Option<_>>()?;
        let overloads = self.sig.overloads(name)?;
        if let Some(p) = self.sig.resolve(name, &sorts) {
            return Some(p.result.unwrap_or(Sort::Any));
        }
        let arities: BTreeSet<usize> = overloads.iter().map(|p| p.params.len()).collect();
        if !arities.contains(&args.len()) {
            let want = arities
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" or ");
            self.diag(
                DiagnosticKind::Arity,
                pos,
                format!("`{name}` takes {want} arguments, found {}", args.len()),
            );
        } else {
            let got = sorts
                .iter()
                .map(|s| s.name())
                .collect::<Vec<_>>()
                .join(", ");
            self.diag(
                DiagnosticKind::SortMismatch,
                pos,
                format!("no overload of `{name}` accepts ({got})"),
            );
        }
        None
    }

    fn infer(&mut self, t: &Term) -> Option<Sort> {
        match &t.kind {
            TermKind::Var(v) => Some(self.env.get(v).copied().unwrap_or(Sort::Any)),
            TermKind::Iri(_) => Some(Sort::Entity),
            TermKind::Literal(l) => Some(
                if l.datatype == Iri::from_canonical("xsd:integer").expect("constant") {
                    Sort::Nat
                } else {
                    Sort::Value
                },
            ),
            TermKind::Apply(name, args) => {
                if !self.sig.is_function(name) {
                    let msg = if self.sig.is_predicate(name) {
                        format!("`{name}` is a predicate and cannot be used as a term")
                    } else {
                        format!("unknown function `{name}`")
                    };
                    self.diag(DiagnosticKind::UnknownFunction, t.pos, msg);
                    for a in args {
                        let _ = self.infer(a);
                    }
                    return None;
                }
                self.apply(name, args, t.pos)
            }
        }
    }
}
