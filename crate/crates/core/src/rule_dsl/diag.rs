//! Rule diagnostics.

use std::fmt;

use crate::rule_dsl::ast::Pos;

/// Machine-readable diagnostic class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagnosticKind {
    Syntax,
    UnknownFunction,
    Arity,
    UnboundHeadVariable,
    UnboundBuiltinVariable,
    SortMismatch,
    /// A head variable bound only through a builtin, i.e. an existential rule.
    Existential,
    NonGroundBodyTerm,
    DuplicateRuleName,
}

impl DiagnosticKind {
    pub fn code(self) -> &'static str {
        match self {
            DiagnosticKind::Syntax => "syntax",
            DiagnosticKind::UnknownFunction => "unknown-function",
            DiagnosticKind::Arity => "arity",
            DiagnosticKind::UnboundHeadVariable => "unbound-head-variable",
            DiagnosticKind::UnboundBuiltinVariable => "unbound-builtin-variable",
            DiagnosticKind::SortMismatch => "sort-mismatch",
            DiagnosticKind::Existential => "existential",
            DiagnosticKind::NonGroundBodyTerm => "non-ground-body-term",
            DiagnosticKind::DuplicateRuleName => "duplicate-rule-name",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub line: u32,
    pub col: u32,
    pub rule: Option<String>,
    pub message: String,
}

impl Diagnostic {
    pub fn new(kind: DiagnosticKind, pos: Pos, message: impl Into<String>) -> Self {
        Diagnostic {
            kind,
            line: pos.line,
            col: pos.col,
            rule: None,
            message: message.into(),
        }
    }

    pub fn in_rule(mut self, name: &str) -> Self {
        self.rule = Some(name.to_string());
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: [{}]", self.line, self.col, self.kind.code())?;
        if let Some(r) = &self.rule {
            write!(f, " rule {r}:")?;
        }
        write!(f, " {}", self.message)
    }
}
