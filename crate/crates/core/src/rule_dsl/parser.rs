//! Recursive-descent parser for rule files.
//!
//! ```text
//! file  := rule*
//! rule  := ("rule" NAME ":")? atom+ "->" atom "."?
//! atom  := NAME "(" terms? ")"
//! term  := VAR | PNAME | IRIREF | INT | STRING ("^^" iri)? | NAME ("(" terms? ")")?
//! ```

use crate::iri::{Iri, PrefixTable};
use crate::model::{Literal, StatementKind};
use crate::rule_dsl::ast::{Atom, Pos, Rule, Term, TermKind};
use crate::rule_dsl::diag::{Diagnostic, DiagnosticKind};
use crate::rule_dsl::lexer::{tokenize, Tok};

pub fn is_variable(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase())
}

/// Parses every rule in `text`. Syntax errors are collected; the parser
/// resynchronizes at the next rule header or after the next `.`.
pub fn parse_rules(text: &str) -> Result<Vec<Rule>, Vec<Diagnostic>> {
    let toks = tokenize(text).map_err(|d| vec![d])?;
    let mut p = Parser {
        toks,
        i: 0,
        prefixes: PrefixTable::default(),
    };
    let mut rules = Vec::new();
    let mut diags = Vec::new();
    while p.peek() != &Tok::Eof {
        let start = p.i;
        match p.rule(rules.len() + diags.len() + 1) {
            Ok(r) => rules.push(r),
            Err(d) => {
                diags.push(d);
                p.recover(start);
            }
        }
    }
    if diags.is_empty() {
        Ok(rules)
    } else {
        Err(diags)
    }
}

/// Parses text holding exactly one rule.
pub fn parse_single(text: &str) -> Result<Rule, Vec<Diagnostic>> {
    let mut rules = parse_rules(text)?;
    match rules.len() {
        1 => Ok(rules.remove(0)),
        n => Err(vec![Diagnostic::new(
            DiagnosticKind::Syntax,
            Pos::new(1, 1),
            format!("expected one rule, found {n}"),
        )]),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    prefixes: PrefixTable,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.i + k).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i < self.toks.len() - 1 {
            self.i += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::new(DiagnosticKind::Syntax, self.pos(), msg)
    }

    fn expect(&mut self, want: Tok) -> PResult<Pos> {
        if *self.peek() == want {
            Ok(self.next().1)
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn at_header(&self) -> bool {
        matches!(self.peek(), Tok::Ident(k) if k == "rule")
            && matches!(self.peek_at(1), Tok::Ident(_))
            && *self.peek_at(2) == Tok::Colon
    }

    fn recover(&mut self, start: usize) {
        if self.i == start {
            self.next();
        }
        while *self.peek() != Tok::Eof {
            if self.at_header() {
                return;
            }
            if self.next().0 == Tok::Dot {
                return;
            }
        }
    }

    fn rule(&mut self, ordinal: usize) -> PResult<Rule> {
        let pos = self.pos();
        let name = if self.at_header() {
            self.next();
            let (Tok::Ident(n), _) = self.next() else {
                unreachable!()
            };
            self.next();
            n
        } else {
            format!("rule{ordinal}")
        };
        let mut body = Vec::new();
        while *self.peek() != Tok::Arrow {
            if *self.peek() == Tok::Eof || self.at_header() {
                return Err(self.error(format!(
                    "expected `->` in rule `{name}`, found {}",
                    self.peek().describe()
                )));
            }
            body.push(self.atom()?);
        }
        self.next();
        if body.is_empty() {
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                pos,
                format!("rule `{name}` has an empty body"),
            ));
        }
        let head = self.atom()?;
        if let Atom::Builtin { name: b, pos, .. } = &head {
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                *pos,
                format!("head must be a statement atom, found `{b}`"),
            ));
        }
        if *self.peek() == Tok::Dot {
            self.next();
        }
        Ok(Rule {
            name,
            body,
            head,
            pos,
        })
    }

    fn atom(&mut self) -> PResult<Atom> {
        let (tok, pos) = self.next();
        let Tok::Ident(name) = tok else {
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                pos,
                format!("expected an atom, found {}", tok.describe()),
            ));
        };
        if is_variable(&name) {
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                pos,
                format!("expected an atom, found variable `{name}`"),
            ));
        }
        self.expect(Tok::LParen)?;
        let args = self.terms()?;
        Ok(match StatementKind::parse(&name) {
            Some(kind) => Atom::Statement { kind, args, pos },
            None => Atom::Builtin { name, args, pos },
        })
    }

    /// Comma-separated terms up to and including `)`.
    fn terms(&mut self) -> PResult<Vec<Term>> {
        let mut args = Vec::new();
        if *self.peek() == Tok::RParen {
            self.next();
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            match self.next() {
                (Tok::Comma, _) => continue,
                (Tok::RParen, _) => return Ok(args),
                (t, p) => {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Syntax,
                        p,
                        format!("expected `,` or `)`, found {}", t.describe()),
                    ))
                }
            }
        }
    }

    fn resolve(&self, text: &str, pos: Pos) -> PResult<Iri> {
        self.prefixes
            .resolve(text)
            .map_err(|e| Diagnostic::new(DiagnosticKind::Syntax, pos, e.to_string()))
    }

    fn term(&mut self) -> PResult<Term> {
        let (tok, pos) = self.next();
        let kind = match tok {
            Tok::Ident(name) if is_variable(&name) => TermKind::Var(name),
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    self.next();
                    TermKind::Apply(name, self.terms()?)
                } else {
                    TermKind::Apply(name, Vec::new())
                }
            }
            Tok::PName(t) | Tok::IriRef(t) => TermKind::Iri(self.resolve(&t, pos)?),
            Tok::Int(n) => TermKind::Literal(Literal::typed(
                n,
                Iri::from_canonical("xsd:integer").expect("constant"),
            )),
            Tok::Str(s) => {
                let dt = if *self.peek() == Tok::Carets {
                    self.next();
                    match self.next() {
                        (Tok::PName(t) | Tok::IriRef(t), p) => self.resolve(&t, p)?,
                        (t, p) => {
                            return Err(Diagnostic::new(
                                DiagnosticKind::Syntax,
                                p,
                                format!("expected a datatype IRI, found {}", t.describe()),
                            ))
                        }
                    }
                } else {
                    Iri::from_canonical("xsd:string").expect("constant")
                };
                TermKind::Literal(Literal::typed(s, dt))
            }
            t => {
                return Err(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    pos,
                    format!("expected a term, found {}", t.describe()),
                ))
            }
        };
        Ok(Term { kind, pos })
    }
}
