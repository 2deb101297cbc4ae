//! Term evaluation and single-rule application.

use std::collections::BTreeMap;

use crate::engine::functions::{Algebra, FunctionRegistry};
use crate::engine::value::RtVal;
use crate::error::EvalError;
use crate::iri::Iri;
use crate::model::{
    KnowledgeGraph, Origin, Slot, Statement, StatementKind, StatementPattern, Value,
};
use crate::rule_dsl::{Atom, Rule, Term, TermKind};

/// Variable → run-time value.
pub type Bindings = BTreeMap<String, RtVal>;

/// Evaluates `t` bottom-up under `b`.
pub fn eval_term(
    t: &Term,
    b: &Bindings,
    fns: &FunctionRegistry,
    alg: &Algebra,
) -> Result<RtVal, EvalError> {
    match &t.kind {
        TermKind::Var(v) => b
            .get(v)
            .cloned()
            .ok_or_else(|| EvalError::Unbound(v.clone())),
        TermKind::Iri(i) => Ok(RtVal::Value(Value::Entity(i.clone()))),
        TermKind::Literal(l) => Ok(RtVal::Value(Value::Literal(l.clone()))),
        TermKind::Apply(f, args) => {
            let vals = args
                .iter()
                .map(|a| eval_term(a, b, fns, alg))
                .collect::<Result<Vec<_>, _>>()?;
            fns.call(f, &vals, alg)
        }
    }
}

/// One successful head instantiation.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub statement: Statement,
    /// Indices (in the matched graph) of the body statements used.
    pub premises: Vec<usize>,
}

/// Result of applying one rule to a graph.
#[derive(Debug, Clone, Default)]
pub struct RuleOutput {
    pub derivations: Vec<Derivation>,
    pub errors: Vec<String>,
}

enum Step {
    Match {
        kind: StatementKind,
        slots: Vec<PlanSlot>,
    },
    Guard {
        name: String,
        args: Vec<Term>,
        atom: usize,
    },
}

enum PlanSlot {
    Var(String),
    Const(RtVal),
}

/// Evaluates all bindings of `rule` over `g` and instantiates the head.
/// Bindings whose evaluation fails are skipped and reported.
pub fn apply_rule(
    g: &KnowledgeGraph,
    rule: &Rule,
    fns: &FunctionRegistry,
    alg: &Algebra,
) -> RuleOutput {
    let mut out = RuleOutput::default();
    let steps = match plan(rule, fns, alg) {
        Ok(s) => s,
        Err(e) => {
            out.errors.push(format!("rule {}: {e}", rule.name));
            return out;
        }
    };
    let mut ctx = Ctx {
        g,
        rule,
        fns,
        alg,
        steps: &steps,
        out: &mut out,
        premises: Vec::new(),
    };
    ctx.search(0, &mut Bindings::new());
    out
}

/// Orders the body: statement atoms in textual order, each builtin right
/// after the statement atom that binds its last variable.
fn plan(rule: &Rule, fns: &FunctionRegistry, alg: &Algebra) -> Result<Vec<Step>, EvalError> {
    let mut bound: Vec<&str> = Vec::new();
    let mut guards: Vec<(usize, &Atom)> = rule
        .body
        .iter()
        .enumerate()
        .filter(|(_, a)| matches!(a, Atom::Builtin { .. }))
        .collect();
    let mut steps = Vec::new();
    let flush =
        |bound: &Vec<&str>, guards: &mut Vec<(usize, &Atom)>, steps: &mut Vec<Step>, all: bool| {
            guards.retain(|(i, a)| {
                let ready = all || a.vars().iter().all(|v| bound.contains(v));
                if ready {
                    let Atom::Builtin { name, args, .. } = a else {
                        unreachable!()
                    };
                    steps.push(Step::Guard {
                        name: name.clone(),
                        args: args.clone(),
                        atom: *i,
                    });
                }
                !ready
            });
        };
    flush(&bound, &mut guards, &mut steps, false);
    for atom in &rule.body {
        let Atom::Statement { kind, args, .. } = atom else {
            continue;
        };
        let mut slots = Vec::with_capacity(args.len());
        for t in args {
            slots.push(match &t.kind {
                TermKind::Var(v) => PlanSlot::Var(v.clone()),
                _ => PlanSlot::Const(eval_term(t, &Bindings::new(), fns, alg)?),
            });
        }
        bound.extend(atom.vars());
        steps.push(Step::Match { kind: *kind, slots });
        flush(&bound, &mut guards, &mut steps, false);
    }
    flush(&bound, &mut guards, &mut steps, true);
    Ok(steps)
}

struct Ctx<'a> {
    g: &'a KnowledgeGraph,
    rule: &'a Rule,
    fns: &'a FunctionRegistry,
    alg: &'a Algebra,
    steps: &'a [Step],
    out: &'a mut RuleOutput,
    premises: Vec<usize>,
}

fn as_iri(v: RtVal) -> Option<Iri> {
    match v {
        RtVal::Value(Value::Entity(i)) => Some(i),
        _ => None,
    }
}

impl Ctx<'_> {
    fn search(&mut self, k: usize, b: &mut Bindings) {
        let Some(step) = self.steps.get(k) else {
            self.emit(b);
            return;
        };
        match step {
            Step::Guard { name, args, atom } => {
                let vals: Result<Vec<RtVal>, EvalError> = args
                    .iter()
                    .map(|a| eval_term(a, b, self.fns, self.alg))
                    .collect();
                match vals
                    .and_then(|v| self.fns.call(name, &v, self.alg))
                    .and_then(|r| r.truth(name))
                {
                    Ok(true) => self.search(k + 1, b),
                    Ok(false) => {}
                    Err(e) => self.out.errors.push(format!(
                        "rule {}: body atom {}: {e}",
                        self.rule.name,
                        atom + 1
                    )),
                }
            }
            Step::Match { kind, slots } => {
                let Some(pattern) = self.pattern(*kind, slots, b) else {
                    return;
                };
                for i in self.g.candidates(&pattern).collect::<Vec<_>>() {
                    let s = &self.g.statements()[i];
                    let Some(found) = pattern.unify(s) else {
                        continue;
                    };
                    let added: Vec<String> = found.vars.keys().cloned().collect();
                    for (name, d) in found.vars {
                        b.insert(name, d.into());
                    }
                    self.premises.push(i);
                    self.search(k + 1, b);
                    self.premises.pop();
                    for name in added {
                        b.remove(&name);
                    }
                }
            }
        }
    }

    /// The statement pattern for the current binding, or `None` when a bound
    /// value cannot occur in its position.
    fn pattern(
        &self,
        kind: StatementKind,
        slots: &[PlanSlot],
        b: &Bindings,
    ) -> Option<StatementPattern> {
        let resolve = |s: &PlanSlot| -> Result<RtVal, String> {
            match s {
                PlanSlot::Var(v) => b.get(v).cloned().ok_or_else(|| v.clone()),
                PlanSlot::Const(c) => Ok(c.clone()),
            }
        };
        macro_rules! slot {
            ($idx:expr, $conv:expr) => {
                match resolve(&slots[$idx]) {
                    Err(v) => Slot::Var(v),
                    Ok(val) => Slot::Const($conv(val)?),
                }
            };
        }
        let (value, off) = if kind == StatementKind::St {
            (
                slot!(2, |v: RtVal| match v {
                    RtVal::Value(x) => Some(x),
                    RtVal::Nat(_) => v.value("match").ok(),
                    _ => None,
                }),
                1,
            )
        } else {
            (Slot::Var("_".into()), 0)
        };
        Some(StatementPattern {
            kind,
            subject: slot!(0, as_iri),
            property: slot!(1, as_iri),
            value,
            validity: slot!(2 + off, |v: RtVal| v.validity("match").ok()),
            causality: slot!(3 + off, |v: RtVal| v.causality("match").ok()),
            sequence: slot!(4 + off, |v: RtVal| v.sequence("match").ok()),
            annotations: slot!(5 + off, |v: RtVal| v.annotations("match").ok()),
            provenance: slot!(6 + off, |v: RtVal| v.provenance("match").ok()),
        })
    }

    fn emit(&mut self, b: &Bindings) {
        match instantiate(&self.rule.head, b, self.fns, self.alg) {
            Ok(mut s) => {
                s.origin = Origin::Inferred(self.rule.name.clone());
                self.out.derivations.push(Derivation {
                    statement: s,
                    premises: self.premises.clone(),
                });
            }
            Err(e) => self
                .out
                .errors
                .push(format!("rule {}: head: {e}", self.rule.name)),
        }
    }
}

/// Builds the head statement for one binding.
pub fn instantiate(
    head: &Atom,
    b: &Bindings,
    fns: &FunctionRegistry,
    alg: &Algebra,
) -> Result<Statement, EvalError> {
    let Atom::Statement { kind, args, .. } = head else {
        return Err(EvalError::ty("head", "not a statement atom"));
    };
    let ev = |i: usize| eval_term(&args[i], b, fns, alg);
    let subject = ev(0)?.entity("subject")?;
    let property = ev(1)?.entity("property")?;
    let (mut s, off) = if *kind == StatementKind::St {
        (Statement::st(subject, property, ev(2)?.value("value")?), 1)
    } else {
        (Statement::without_value(*kind, subject, property), 0)
    };
    s.validity = ev(2 + off)?.validity("validity position")?;
    s.causality = ev(3 + off)?.causality("causality position")?;
    s.sequence = ev(4 + off)?.sequence("sequence position")?;
    s.annotations = ev(5 + off)?.annotations("annotations position")?;
    s.provenance = ev(6 + off)?.provenance("provenance position")?;
    s.validate()?;
    Ok(s)
}
