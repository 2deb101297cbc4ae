//! Ingestion of the Wikidata statement-node pattern from a Turtle subset.
//!
//! Supported: `@prefix`/`PREFIX`, prefixed names, `<iri>`, blank node
//! labels, `a`, `;` and `,` lists, quoted literals with `^^` or `@lang`,
//! numbers, booleans and `#` comments. Other constructs are skipped up to the
//! next `.` and reported.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::IoError;
use crate::iri::{Iri, PrefixTable, RDF};
use crate::model::{KnowledgeGraph, Literal, QualifierBag, Statement, StatementKind, Value};
use crate::sort_builder::{build_sorts, decode_sort, Category, CategoryMap, SortValue};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Node {
    Iri(Iri),
    Blank(String),
    Literal(Literal),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Iri(i) => write!(f, "{i}"),
            Node::Blank(b) => write!(f, "_:{b}"),
            Node::Literal(l) => write!(f, "{}", Value::Literal(l.clone())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub subject: Node,
    pub predicate: Iri,
    pub object: Node,
    pub line: usize,
}

/// Counters and messages from one ingestion.
///
/// Conservation holds by construction:
/// `statements_parsed == statements_loaded + statements_skipped` and
/// `qualifier_pairs == pairs_sorted + pairs_annotated + pairs_skipped`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IngestReport {
    pub statements_parsed: usize,
    pub statements_loaded: usize,
    pub statements_skipped: usize,
    pub qualifier_pairs: usize,
    pub pairs_sorted: usize,
    pub pairs_annotated: usize,
    pub pairs_skipped: usize,
    /// Triples outside the statement pattern, plus unparsable blocks.
    pub triples_skipped: usize,
    pub diagnostics: Vec<String>,
}

impl IngestReport {
    fn diag(&mut self, line: usize, msg: impl fmt::Display) {
        self.diagnostics.push(format!("line {line}: {msg}"));
    }
}

// ---------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    IriRef(String),
    PName(String),
    Blank(String),
    Str(String),
    LangTag(String),
    Number(String, &'static str),
    Word(String),
    /// `true` for `@prefix` (needs a final `.`), `false` for `PREFIX`.
    PrefixKw(bool),
    Caret2,
    Dot,
    Semi,
    Comma,
    Bad(String),
}

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let is_name = |c: char| c.is_alphanumeric() || matches!(c, '_' | '-' | '.');
    while i < chars.len() {
        let c = chars[i];
        let start_line = line;
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '<' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j] != '>' && !chars[j].is_whitespace() {
                    j += 1;
                }
                if j < chars.len() && chars[j] == '>' {
                    out.push((Tok::IriRef(chars[i + 1..j].iter().collect()), line));
                    i = j + 1;
                } else {
                    out.push((Tok::Bad("unterminated <iri>".into()), line));
                    i = j;
                }
            }
            '"' | '\'' => {
                let mut j = i + 1;
                let mut s = String::new();
                let mut closed = false;
                while j < chars.len() {
                    match chars[j] {
                        ch if ch == c => {
                            closed = true;
                            j += 1;
                            break;
                        }
                        '\\' if j + 1 < chars.len() => {
                            j += 1;
                            s.push(match chars[j] {
                                'n' => '\n',
                                't' => '\t',
                                'r' => '\r',
                                other => other,
                            });
                        }
                        '\n' => {
                            line += 1;
                            s.push('\n');
                        }
                        ch => s.push(ch),
                    }
                    j += 1;
                }
                out.push((
                    if closed {
                        Tok::Str(s)
                    } else {
                        Tok::Bad("unterminated string".into())
                    },
                    start_line,
                ));
                i = j;
            }
            '@' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '-') {
                    j += 1;
                }
                let word: String = chars[i + 1..j].iter().collect();
                out.push((
                    if word == "prefix" {
                        Tok::PrefixKw(true)
                    } else {
                        Tok::LangTag(word)
                    },
                    line,
                ));
                i = j;
            }
            '^' if chars.get(i + 1) == Some(&'^') => {
                out.push((Tok::Caret2, line));
                i += 2;
            }
            '.' if !chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                out.push((Tok::Dot, line));
                i += 1;
            }
            ';' => {
                out.push((Tok::Semi, line));
                i += 1;
            }
            ',' => {
                out.push((Tok::Comma, line));
                i += 1;
            }
            '_' if chars.get(i + 1) == Some(&':') => {
                let mut j = i + 2;
                while j < chars.len() && is_name(chars[j]) {
                    j += 1;
                }
                while j > i + 2 && chars[j - 1] == '.' {
                    j -= 1;
                }
                out.push((Tok::Blank(chars[i + 2..j].iter().collect()), line));
                i = j;
            }
            c if c.is_ascii_digit()
                || ((c == '-' || c == '+' || c == '.')
                    && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                while chars[j - 1] == '.' {
                    j -= 1;
                }
                let n: String = chars[i..j].iter().collect();
                let dt = if n.contains('.') {
                    "xsd:decimal"
                } else {
                    "xsd:integer"
                };
                out.push((Tok::Number(n, dt), line));
                i = j;
            }
            c if c.is_alphanumeric() || c == ':' || c == '_' => {
                let mut j = i;
                while j < chars.len()
                    && (chars[j].is_alphanumeric() || matches!(chars[j], '_' | '-'))
                {
                    j += 1;
                }
                if j < chars.len() && chars[j] == ':' {
                    j += 1;
                    while j < chars.len() && is_name(chars[j]) {
                        j += 1;
                    }
                    while chars[j - 1] == '.' {
                        j -= 1;
                    }
                    out.push((Tok::PName(chars[i..j].iter().collect()), line));
                } else {
                    let w: String = chars[i..j].iter().collect();
                    out.push((
                        if w.eq_ignore_ascii_case("prefix") {
                            Tok::PrefixKw(false)
                        } else {
                            Tok::Word(w)
                        },
                        line,
                    ));
                }
                i = j.max(i + 1);
            }
            other => {
                out.push((Tok::Bad(format!("unsupported character `{other}`")), line));
                i += 1;
            }
        }
    }
    out
}

// ---------------------------------------------------------------- parsing

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    k: usize,
    prefixes: PrefixTable,
    path: &'a str,
    triples: Vec<Triple>,
}

enum Fail {
    /// Recoverable: skip to the next `.`.
    Syntax(usize, String),
    Fatal(IoError),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.k).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.k)
            .or(self.toks.last())
            .map_or(1, |(_, l)| *l)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.k).map(|(t, _)| t.clone());
        self.k += 1;
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, Fail> {
        Err(Fail::Syntax(self.line(), msg.into()))
    }

    fn resolve(&self, text: &str, line: usize) -> Result<Iri, Fail> {
        self.prefixes.resolve(text).map_err(|e| {
            Fail::Fatal(IoError::Parse {
                path: self.path.to_string(),
                line,
                message: e.to_string(),
            })
        })
    }

    fn iri(&mut self) -> Result<Iri, Fail> {
        let line = self.line();
        match self.next() {
            Some(Tok::IriRef(s)) => self.resolve(&format!("<{s}>"), line),
            Some(Tok::PName(s)) => self.resolve(&s, line),
            Some(Tok::Word(w)) if w == "a" => Ok(rdf_type()),
            other => self.syntax(format!(
                "expected an IRI, found {}",
                describe(other.as_ref())
            )),
        }
    }

    fn node(&mut self, object: bool) -> Result<Node, Fail> {
        let line = self.line();
        match self.peek().cloned() {
            Some(Tok::IriRef(_) | Tok::PName(_)) => Ok(Node::Iri(self.iri()?)),
            Some(Tok::Blank(b)) => {
                self.k += 1;
                Ok(Node::Blank(b))
            }
            Some(Tok::Str(s)) if object => {
                self.k += 1;
                match self.peek().cloned() {
                    Some(Tok::Caret2) => {
                        self.k += 1;
                        let dt = self.iri()?;
                        Ok(Node::Literal(Literal::typed(s, dt)))
                    }
                    Some(Tok::LangTag(lang)) => {
                        self.k += 1;
                        let mut l = Literal::string(s);
                        l.datatype = self.resolve("rdf:langString", line)?;
                        l.lang = Some(lang);
                        Ok(Node::Literal(l))
                    }
                    _ => Ok(Node::Literal(Literal::string(s))),
                }
            }
            Some(Tok::Number(n, dt)) if object => {
                self.k += 1;
                Ok(Node::Literal(Literal::typed(
                    n,
                    Iri::from_canonical(dt).expect("builtin"),
                )))
            }
            Some(Tok::Word(w)) if object && (w == "true" || w == "false") => {
                self.k += 1;
                Ok(Node::Literal(Literal::typed(
                    w,
                    Iri::from_canonical("xsd:boolean").expect("builtin"),
                )))
            }
            other => self.syntax(format!(
                "expected a term, found {}",
                describe(other.as_ref())
            )),
        }
    }

    fn prefix_decl(&mut self, at_form: bool) -> Result<(), Fail> {
        let name = match self.next() {
            Some(Tok::PName(p)) if p.ends_with(':') => p[..p.len() - 1].to_string(),
            other => {
                return self.syntax(format!(
                    "expected `prefix:` in declaration, found {}",
                    describe(other.as_ref())
                ))
            }
        };
        let ns = match self.next() {
            Some(Tok::IriRef(ns)) => ns,
            other => {
                return self.syntax(format!(
                    "expected <namespace>, found {}",
                    describe(other.as_ref())
                ))
            }
        };
        if at_form {
            match self.next() {
                Some(Tok::Dot) => {}
                other => {
                    return self.syntax(format!(
                        "expected `.` after @prefix, found {}",
                        describe(other.as_ref())
                    ))
                }
            }
        }
        self.prefixes.declare(name, ns);
        Ok(())
    }

    fn block(&mut self) -> Result<(), Fail> {
        let line = self.line();
        let subject = self.node(false)?;
        let mut out = Vec::new();
        loop {
            let predicate = self.iri()?;
            loop {
                let object = self.node(true)?;
                out.push(Triple {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                    line,
                });
                if self.peek() == Some(&Tok::Comma) {
                    self.k += 1;
                } else {
                    break;
                }
            }
            while self.peek() == Some(&Tok::Semi) {
                self.k += 1;
            }
            match self.peek() {
                Some(Tok::Dot) => {
                    self.k += 1;
                    break;
                }
                None => return self.syntax("missing final `.`"),
                _ if matches!(self.toks[self.k - 1].0, Tok::Semi) => continue,
                other => {
                    return self.syntax(format!(
                        "expected `;`, `,` or `.`, found {}",
                        describe(other)
                    ))
                }
            }
        }
        self.triples.extend(out);
        Ok(())
    }

    fn run(&mut self, report: &mut IngestReport) -> Result<(), IoError> {
        while let Some(t) = self.peek().cloned() {
            let start = self.k;
            let r = match t {
                Tok::PrefixKw(at) => {
                    self.k += 1;
                    self.prefix_decl(at)
                }
                _ => self.block(),
            };
            match r {
                Ok(()) => {}
                Err(Fail::Fatal(e)) => return Err(e),
                Err(Fail::Syntax(line, msg)) => {
                    report.triples_skipped += 1;
                    report.diag(line, format!("{msg}; block skipped"));
                    self.k = self.k.max(start + 1);
                    while let Some(t) = self.next() {
                        if t == Tok::Dot {
                            break;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn rdf_type() -> Iri {
    crate::iri::compact(&format!("{RDF}type"))
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Bad(m)) => m.clone(),
        Some(t) => format!("{t:?}"),
    }
}

/// Parses the supported subset into triples. Syntax problems become
/// diagnostics; an undeclared prefix is fatal.
pub fn parse_triples(
    text: &str,
    path: &str,
    report: &mut IngestReport,
) -> Result<Vec<Triple>, IoError> {
    let toks = lex(text);
    let mut p = Parser {
        toks,
        k: 0,
        prefixes: PrefixTable::default(),
        path,
        triples: Vec::new(),
    };
    p.run(report)?;
    Ok(p.triples)
}

// ---------------------------------------------------------------- grouping

const SORT_PREDICATES: [(&str, Category); 5] = [
    ("validityJ", Category::Validity),
    ("causalityJ", Category::Causality),
    ("sequenceJ", Category::Sequence),
    ("annotationsJ", Category::Annotation),
    ("provenanceJ", Category::Provenance),
];

/// Marker IRIs for values that have no RDF term of their own.
pub(crate) const UNDEFINED_MARKER: &str = "kgq:undefined";

fn object_value(n: &Node) -> Value {
    match n {
        Node::Iri(i) if i.as_str() == UNDEFINED_MARKER => Value::Undefined,
        Node::Iri(i) if i.as_str().contains("/.well-known/genid/") => Value::SomeValue,
        Node::Iri(i) => Value::Entity(i.clone()),
        Node::Blank(_) => Value::SomeValue,
        Node::Literal(l) => Value::Literal(l.clone()),
    }
}

#[derive(Default)]
struct NodeBlock {
    /// (subject, property, line) of each `p:` edge reaching the node.
    edges: Vec<(Iri, Iri, usize)>,
    main: Vec<(Iri, Node, usize)>,
    no_value: Vec<(Iri, usize)>,
    qualifiers: Vec<(Iri, Node, usize)>,
    sorts: Vec<(Category, String, usize)>,
    sources: Vec<Iri>,
    other: Vec<(Iri, usize)>,
    first_line: usize,
}

/// Reads a document in the subset and builds one statement per statement
/// node.
pub fn ingest_turtle(
    text: &str,
    path: &str,
    map: &CategoryMap,
) -> Result<(KnowledgeGraph, IngestReport), IoError> {
    let mut report = IngestReport::default();
    let triples = parse_triples(text, path, &mut report)?;
    let rdf_type = rdf_type();

    let mut blocks: BTreeMap<Node, NodeBlock> = BTreeMap::new();
    let mut order: Vec<Node> = Vec::new();
    for t in triples {
        let pred = &t.predicate;
        let entry = |blocks: &mut BTreeMap<Node, NodeBlock>, order: &mut Vec<Node>, n: &Node| {
            if !blocks.contains_key(n) {
                order.push(n.clone());
                blocks.insert(
                    n.clone(),
                    NodeBlock {
                        first_line: t.line,
                        ..NodeBlock::default()
                    },
                );
            }
        };
        match pred.prefix() {
            Some("p") => match (&t.subject, &t.object) {
                (Node::Iri(s), o @ (Node::Iri(_) | Node::Blank(_))) => {
                    entry(&mut blocks, &mut order, o);
                    blocks.get_mut(o).expect("inserted").edges.push((
                        s.clone(),
                        pred.to_entity(),
                        t.line,
                    ));
                }
                _ => {
                    report.triples_skipped += 1;
                    report.diag(
                        t.line,
                        format!("`{pred}` edge must link an entity to a statement node; skipped"),
                    );
                }
            },
            Some("ps") => {
                entry(&mut blocks, &mut order, &t.subject);
                blocks.get_mut(&t.subject).expect("inserted").main.push((
                    pred.to_entity(),
                    t.object,
                    t.line,
                ));
            }
            Some("pq") => {
                entry(&mut blocks, &mut order, &t.subject);
                let b = blocks.get_mut(&t.subject).expect("inserted");
                match SORT_PREDICATES.iter().find(|(n, _)| *n == pred.local()) {
                    Some((_, cat)) => match &t.object {
                        Node::Literal(l) => b.sorts.push((*cat, l.lexical.clone(), t.line)),
                        other => {
                            report.triples_skipped += 1;
                            report.diag(t.line, format!("`{pred}` expects a JSON string literal, found {other}; skipped"));
                        }
                    },
                    None => b.qualifiers.push((pred.to_entity(), t.object, t.line)),
                }
            }
            _ if *pred == rdf_type => match &t.object {
                Node::Iri(o) if o.prefix() == Some("wdno") => {
                    entry(&mut blocks, &mut order, &t.subject);
                    blocks
                        .get_mut(&t.subject)
                        .expect("inserted")
                        .no_value
                        .push((o.to_entity(), t.line));
                }
                _ if blocks.contains_key(&t.subject) => {
                    // Statement/rank typing carries no qualifier content.
                }
                other => {
                    report.triples_skipped += 1;
                    report.diag(
                        t.line,
                        format!("rdf:type {other} outside the statement pattern; skipped"),
                    );
                }
            },
            _ if pred.as_str() == "prov:wasDerivedFrom" => match &t.object {
                Node::Iri(o) => {
                    entry(&mut blocks, &mut order, &t.subject);
                    blocks
                        .get_mut(&t.subject)
                        .expect("inserted")
                        .sources
                        .push(o.clone());
                }
                other => {
                    report.triples_skipped += 1;
                    report.diag(
                        t.line,
                        format!("prov:wasDerivedFrom object {other} is not an IRI; skipped"),
                    );
                }
            },
            _ => match blocks.get_mut(&t.subject) {
                Some(b) => b.other.push((pred.clone(), t.line)),
                None => {
                    report.triples_skipped += 1;
                    report.diag(
                        t.line,
                        format!("predicate `{pred}` outside the statement pattern; skipped"),
                    );
                }
            },
        }
    }

    let mut g = KnowledgeGraph::new();
    for node in order {
        let b = blocks.remove(&node).expect("ordered");
        report.statements_parsed += 1;
        match build_statement(&node, b, map, &mut report) {
            Some(s) => match g.insert(s) {
                Ok(true) => report.statements_loaded += 1,
                Ok(false) => {
                    report.statements_skipped += 1;
                    report.diagnostics.push(format!(
                        "statement node {node}: duplicate of an earlier statement; skipped"
                    ));
                }
                Err(e) => {
                    report.statements_skipped += 1;
                    report
                        .diagnostics
                        .push(format!("statement node {node}: {e}; skipped"));
                }
            },
            None => report.statements_skipped += 1,
        }
    }
    Ok((g, report))
}

fn build_statement(
    node: &Node,
    b: NodeBlock,
    map: &CategoryMap,
    report: &mut IngestReport,
) -> Option<Statement> {
    let line = b.first_line;
    let pair_count = b.qualifiers.len();
    report.qualifier_pairs += pair_count;
    let skip = |report: &mut IngestReport, msg: String| -> Option<Statement> {
        report.pairs_skipped += pair_count;
        report.diag(line, format!("statement node {node}: {msg}; skipped"));
        None
    };
    let (subject, property) = match b.edges.as_slice() {
        [(s, p, _)] => (s.clone(), p.clone()),
        [] => return skip(report, "not reached by any `p:` edge".into()),
        _ => {
            return skip(
                report,
                format!("reached by {} `p:` edges, expected one", b.edges.len()),
            )
        }
    };
    for (p, l) in &b.other {
        report.triples_skipped += 1;
        report.diag(
            *l,
            format!("statement node {node}: predicate `{p}` outside the pattern; skipped"),
        );
    }
    let no_main: Vec<&(Iri, usize)> = b.no_value.iter().filter(|(p, _)| *p == property).collect();
    let mut s = match (b.main.as_slice(), no_main.is_empty()) {
        ([(p, o, _)], true) if *p == property => match object_value(o) {
            Value::SomeValue => Statement::without_value(StatementKind::Ssome, subject, property),
            v => Statement::st(subject, property, v),
        },
        ([(p, _, _)], true) => {
            return skip(
                report,
                format!(
                    "`ps:` property {} does not match the `p:` edge {}",
                    p.local(),
                    property.local()
                ),
            )
        }
        ([], false) => Statement::without_value(StatementKind::Sno, subject, property),
        ([], true) => return skip(report, "no `ps:` value and no noValue marker".into()),
        (_, false) => return skip(report, "both a value and a noValue marker".into()),
        (many, true) => return skip(report, format!("{} `ps:` values, expected one", many.len())),
    };

    let mut bag = QualifierBag::new();
    for (q, o, _) in &b.qualifiers {
        bag.push(q.clone(), object_value(o));
    }
    for (q, _) in b.no_value.iter().filter(|(p, _)| *p != s.property) {
        report.qualifier_pairs += 1;
        bag.push(q.clone(), Value::NoValue);
    }

    if b.sorts.is_empty() {
        let built = build_sorts(&bag, map);
        report.pairs_sorted += built.sorted;
        report.pairs_annotated += built.annotated;
        report.pairs_skipped += built.skipped;
        for d in &built.diagnostics {
            report.diag(line, format!("statement node {node}: {d}"));
        }
        s.validity = built.validity;
        s.causality = built.causality;
        s.sequence = built.sequence;
        s.annotations = built.annotations;
        s.provenance = built.provenance;
    } else {
        if !bag.is_empty() {
            report.pairs_skipped += bag.len();
            report.diag(
                line,
                format!(
                    "statement node {node}: {} qualifier pairs superseded by sort triples",
                    bag.len()
                ),
            );
        }
        let mut seen = BTreeSet::new();
        for (cat, json, l) in &b.sorts {
            if !seen.insert(cat.as_str()) {
                report.diag(
                    *l,
                    format!(
                        "statement node {node}: repeated `{}` sort triple; skipped",
                        cat.as_str()
                    ),
                );
                return None;
            }
            match decode_sort(*cat, json) {
                Ok(SortValue::Validity(v)) => s.validity = v,
                Ok(SortValue::Causality(c)) => s.causality = c,
                Ok(SortValue::Sequence(q)) => s.sequence = q,
                Ok(SortValue::Annotations(a)) => s.annotations = a,
                Ok(SortValue::Provenance(p)) => s.provenance = p,
                Err(e) => {
                    report.diag(*l, format!("statement node {node}: {e}; skipped"));
                    return None;
                }
            }
        }
    }
    if !b.sources.is_empty() {
        s.provenance = s.provenance.add_sources(b.sources);
    }
    if let Node::Iri(id) = node {
        s.id = Some(id.clone());
    }
    Some(s)
}

pub fn load_turtle(
    path: &std::path::Path,
    map: &CategoryMap,
) -> Result<(KnowledgeGraph, IngestReport), IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    ingest_turtle(&text, &path.display().to_string(), map)
}
