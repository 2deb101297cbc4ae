//! Rule syntax tree.

use std::fmt;

use crate::iri::Iri;
use crate::model::{Literal, StatementKind};

/// 1-based source position. Positions never take part in equality, so two
/// trees parsed from differently laid-out text compare equal.
#[derive(Debug, Clone, Copy, Default, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Pos { line, col }
    }
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermKind {
    Var(String),
    Iri(Iri),
    Literal(Literal),
    /// Function application; constants such as `emptyCause` have no args.
    Apply(String, Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub kind: TermKind,
    pub pos: Pos,
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term {
            kind: TermKind::Var(name.to_string()),
            pos: Pos::default(),
        }
    }

    pub fn iri(iri: Iri) -> Self {
        Term {
            kind: TermKind::Iri(iri),
            pos: Pos::default(),
        }
    }

    pub fn apply(name: &str, args: Vec<Term>) -> Self {
        Term {
            kind: TermKind::Apply(name.to_string(), args),
            pos: Pos::default(),
        }
    }

    pub fn as_var(&self) -> Option<&str> {
        match &self.kind {
            TermKind::Var(v) => Some(v),
            _ => None,
        }
    }

    /// Whether the term contains no variables.
    pub fn is_ground(&self) -> bool {
        match &self.kind {
            TermKind::Var(_) => false,
            TermKind::Apply(_, args) => args.iter().all(Term::is_ground),
            _ => true,
        }
    }

    /// Variables in order of first occurrence (with repeats).
    pub fn vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match &self.kind {
            TermKind::Var(v) => out.push(v),
            TermKind::Apply(_, args) => args.iter().for_each(|a| a.vars(out)),
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// `st(..8 terms..)`, or `sno`/`ssome` with 7 terms (no value).
    Statement {
        kind: StatementKind,
        args: Vec<Term>,
        pos: Pos,
    },
    /// A builtin predicate such as `equal(..)` or `hasPrevious(..)`.
    Builtin {
        name: String,
        args: Vec<Term>,
        pos: Pos,
    },
}

impl Atom {
    pub fn args(&self) -> &[Term] {
        match self {
            Atom::Statement { args, .. } | Atom::Builtin { args, .. } => args,
        }
    }

    pub fn pos(&self) -> Pos {
        match self {
            Atom::Statement { pos, .. } | Atom::Builtin { pos, .. } => *pos,
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.args().iter().for_each(|t| t.vars(&mut out));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub name: String,
    pub body: Vec<Atom>,
    pub head: Atom,
    pub pos: Pos,
}

impl Rule {
    /// Body statement atoms in textual order.
    pub fn statement_atoms(&self) -> impl Iterator<Item = &Atom> {
        self.body
            .iter()
            .filter(|a| matches!(a, Atom::Statement { .. }))
    }
}
