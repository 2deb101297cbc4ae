//! Tokenizer for rule text.

use crate::rule_dsl::ast::Pos;
use crate::rule_dsl::diag::{Diagnostic, DiagnosticKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    /// Identifier without a colon: variable, function, predicate or keyword.
    Ident(String),
    /// `prefix:local` or `:local`.
    PName(String),
    /// `<...>`, kept with its brackets.
    IriRef(String),
    Str(String),
    Int(String),
    LParen,
    RParen,
    Comma,
    Colon,
    Arrow,
    Dot,
    Carets,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::PName(s) | Tok::IriRef(s) | Tok::Int(s) => format!("`{s}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Carets => "`^^`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

pub fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(line, col);
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        match c {
            '(' => {
                bump!();
                out.push((Tok::LParen, pos));
            }
            ')' => {
                bump!();
                out.push((Tok::RParen, pos));
            }
            ',' => {
                bump!();
                out.push((Tok::Comma, pos));
            }
            '.' => {
                bump!();
                out.push((Tok::Dot, pos));
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                bump!();
                bump!();
                out.push((Tok::Arrow, pos));
            }
            '^' if chars.get(i + 1) == Some(&'^') => {
                bump!();
                bump!();
                out.push((Tok::Carets, pos));
            }
            '<' => {
                let mut s = String::new();
                loop {
                    if i >= chars.len() || chars[i] == '\n' {
                        return Err(Diagnostic::new(
                            DiagnosticKind::Syntax,
                            pos,
                            "unterminated IRI",
                        ));
                    }
                    let ch = chars[i];
                    s.push(ch);
                    bump!();
                    if ch == '>' {
                        break;
                    }
                }
                out.push((Tok::IriRef(s), pos));
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    if i >= chars.len() || chars[i] == '\n' {
                        return Err(Diagnostic::new(
                            DiagnosticKind::Syntax,
                            pos,
                            "unterminated string",
                        ));
                    }
                    let ch = chars[i];
                    bump!();
                    match ch {
                        '"' => break,
                        '\\' => {
                            let esc = chars.get(i).copied();
                            match esc {
                                Some('"') => s.push('"'),
                                Some('\\') => s.push('\\'),
                                Some('n') => s.push('\n'),
                                Some('t') => s.push('\t'),
                                _ => {
                                    return Err(Diagnostic::new(
                                        DiagnosticKind::Syntax,
                                        pos,
                                        "bad escape in string",
                                    ));
                                }
                            }
                            bump!();
                        }
                        _ => s.push(ch),
                    }
                }
                out.push((Tok::Str(s), pos));
            }
            ':' => {
                bump!();
                if i < chars.len() && is_name_char(chars[i]) {
                    let local = take_local(&chars, &mut i, &mut col);
                    out.push((Tok::PName(format!(":{local}")), pos));
                } else {
                    out.push((Tok::Colon, pos));
                }
            }
            c if c.is_ascii_digit()
                || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) =>
            {
                let mut s = String::new();
                s.push(c);
                bump!();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(chars[i]);
                    bump!();
                }
                out.push((Tok::Int(s), pos));
            }
            c if is_name_start(c) => {
                let mut s = String::new();
                while i < chars.len() && is_name_char(chars[i]) {
                    s.push(chars[i]);
                    bump!();
                }
                if chars.get(i) == Some(&':') && chars.get(i + 1).is_some_and(|&c| is_name_char(c))
                {
                    bump!();
                    let local = take_local(&chars, &mut i, &mut col);
                    out.push((Tok::PName(format!("{s}:{local}")), pos));
                } else {
                    out.push((Tok::Ident(s), pos));
                }
            }
            other => {
                return Err(Diagnostic::new(
                    DiagnosticKind::Syntax,
                    pos,
                    format!("unexpected character `{other}`"),
                ));
            }
        }
    }
    out.push((Tok::Eof, Pos::new(line, col)));
    Ok(out)
}

/// Local part of a prefixed name. Dots are allowed inside but a trailing dot
/// ends the rule instead.
fn take_local(chars: &[char], i: &mut usize, col: &mut u32) -> String {
    let mut s = String::new();
    while *i < chars.len() {
        let c = chars[*i];
        let inner_dot = c == '.' && chars.get(*i + 1).is_some_and(|&n| is_name_char(n));
        if is_name_char(c) || inner_dot {
            s.push(c);
            *i += 1;
            *col += 1;
        } else {
            break;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|(t, _)| t).collect()
    }

    #[test]
    fn names_and_punctuation() {
        assert_eq!(
            toks("rule r1: st(X, :P26, wd:Q5) -> # c\n ."),
            vec![
                Tok::Ident("rule".into()),
                Tok::Ident("r1".into()),
                Tok::Colon,
                Tok::Ident("st".into()),
                Tok::LParen,
                Tok::Ident("X".into()),
                Tok::Comma,
                Tok::PName(":P26".into()),
                Tok::Comma,
                Tok::PName("wd:Q5".into()),
                Tok::RParen,
                Tok::Arrow,
                Tok::Dot,
                Tok::Eof
            ]
        );
    }

    #[test]
    fn trailing_dot_after_pname() {
        assert_eq!(
            toks(":Q5."),
            vec![Tok::PName(":Q5".into()), Tok::Dot, Tok::Eof]
        );
    }

    #[test]
    fn literals() {
        assert_eq!(
            toks(r#""a\"b"^^xsd:string 44"#),
            vec![
                Tok::Str("a\"b".into()),
                Tok::Carets,
                Tok::PName("xsd:string".into()),
                Tok::Int("44".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn error_position() {
        let e = tokenize("st(X,\n  $)").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
    }
}
