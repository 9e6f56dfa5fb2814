//! Scenario notation: parsing and printing.
//!
//! Three printed styles are supported:
//!
//! * bracketed: `I -> [P, P->S, P ->] O, O->F->E->I + F->I`
//! * flat: `I->P, P->S, P->O, O->F->E->I + F->I`
//! * topology-short: `I->{P,S}, P<->S, {P,S}->O, Topology 8`
//!
//! The parser accepts all three, ASCII or Unicode arrows (`->`, `→`, `<->`,
//! `↔`, `⇌`), the LaTeX arrow and brace commands used in published tables
//! (`\rightarrow`, `\rightleftharpoons`, `\{`), and ignores `$` math
//! delimiters. Brackets only mark the internal cluster. Inside a bracket
//! group the entry set, the arrangement and the dangling exit (`P ->`) may
//! appear in any order.

use std::fmt;

use serde::Serialize;

use crate::model::{InternalArrangement, InternalNode, Node, NodePattern, Scenario, Shortcut, ShortcutSet};

/// Byte range into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    EmptyInput,
    EmptyEntry,
    EmptyExit,
    UnknownToken,
    Syntax,
    MissingBackbone,
    MissingArrangement,
    ConflictingArrangement,
    InvalidEdge,
    TopologyOutOfRange,
    TopologyMismatch,
    RedundantBackbone,
    UnknownAnnotation,
    BrokenLink,
    Duplicate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub severity: Severity,
    pub span: Span,
    pub message: String,
}

impl Diagnostic {
    fn error(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { kind, severity: Severity::Error, span, message: message.into() }
    }

    fn warning(kind: DiagnosticKind, span: Span, message: impl Into<String>) -> Self {
        Diagnostic { kind, severity: Severity::Warning, span, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev} at {}..{}: {}", self.span.start, self.span.end, self.message)
    }
}

/// Result of parsing one notation string.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParseOutcome {
    /// Present iff no error diagnostics were produced.
    pub scenario: Option<Scenario>,
    pub diagnostics: Vec<Diagnostic>,
    /// Links written with the broken-link operator. A scenario carrying
    /// any is not part of the canonical space.
    pub broken_links: Vec<(Node, Node)>,
}

impl ParseOutcome {
    pub fn is_canonical(&self) -> bool {
        self.scenario.is_some() && self.broken_links.is_empty()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| !d.is_error())
    }

    /// The scenario, or every error diagnostic.
    pub fn into_result(self) -> Result<Scenario, Vec<Diagnostic>> {
        match self.scenario {
            Some(s) => Ok(s),
            None => Err(self.diagnostics.into_iter().filter(|d| d.is_error()).collect()),
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Arrow,
    BiArrow,
    Broken,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Node(Node),
    Op(Op),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Topology,
    Number(u64),
    Unknown(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

fn latex_command(name: &str) -> Option<Tok> {
    Some(match name {
        "rightarrow" | "to" | "longrightarrow" => Tok::Op(Op::Arrow),
        "rightleftharpoons" | "rightleftarrows" | "leftrightarrow" | "leftrightarrows" | "longleftrightarrow" => {
            Tok::Op(Op::BiArrow)
        }
        "otimes" => Tok::Op(Op::Broken),
        _ => return None,
    })
}

fn lex(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        let single = |tok: Tok| Token { tok, span: Span::new(start, start + c.len_utf8()) };
        match c {
            c if c.is_whitespace() || c == '$' => {}
            '→' | '⟶' => out.push(single(Tok::Op(Op::Arrow))),
            '↔' | '⇌' | '⇄' | '⟷' => out.push(single(Tok::Op(Op::BiArrow))),
            '⊗' => out.push(single(Tok::Op(Op::Broken))),
            '{' => out.push(single(Tok::LBrace)),
            '}' => out.push(single(Tok::RBrace)),
            '[' => out.push(single(Tok::LBracket)),
            ']' => out.push(single(Tok::RBracket)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            ',' => out.push(single(Tok::Comma)),
            '+' => out.push(single(Tok::Plus)),
            '-' if matches!(chars.peek(), Some((_, '>'))) => {
                let (i, _) = chars.next().unwrap();
                out.push(Token { tok: Tok::Op(Op::Arrow), span: Span::new(start, i + 1) });
            }
            '<' if text[start..].starts_with("<->") => {
                chars.next();
                let (i, _) = chars.next().unwrap();
                out.push(Token { tok: Tok::Op(Op::BiArrow), span: Span::new(start, i + 1) });
            }
            '\\' => {
                let rest = &text[start + 1..];
                match rest.chars().next() {
                    Some('{') => {
                        chars.next();
                        out.push(Token { tok: Tok::LBrace, span: Span::new(start, start + 2) });
                    }
                    Some('}') => {
                        chars.next();
                        out.push(Token { tok: Tok::RBrace, span: Span::new(start, start + 2) });
                    }
                    Some(',' | ';' | ' ' | '!') => {
                        chars.next();
                    }
                    Some(ch) if ch.is_ascii_alphabetic() => {
                        let len = rest.find(|ch: char| !ch.is_ascii_alphabetic()).unwrap_or(rest.len());
                        let name = &rest[..len];
                        for _ in 0..len {
                            chars.next();
                        }
                        let span = Span::new(start, start + 1 + len);
                        let tok = latex_command(name).unwrap_or_else(|| Tok::Unknown(format!("\\{name}")));
                        out.push(Token { tok, span });
                    }
                    _ => out.push(single(Tok::Unknown("\\".into()))),
                }
            }
            c if c.is_alphanumeric() => {
                let mut end = start + c.len_utf8();
                while let Some(&(i, ch)) = chars.peek() {
                    if ch.is_alphanumeric() {
                        end = i + ch.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = &text[start..end];
                let span = Span::new(start, end);
                let mut letters = word.chars();
                let tok = match (letters.next(), letters.next()) {
                    (Some(ch), None) if Node::from_symbol(ch).is_some() => Tok::Node(Node::from_symbol(ch).unwrap()),
                    _ if word.eq_ignore_ascii_case("topology") => Tok::Topology,
                    _ if word.bytes().all(|b| b.is_ascii_digit()) => match word.parse() {
                        Ok(n) => Tok::Number(n),
                        Err(_) => Tok::Unknown(word.to_string()),
                    },
                    _ => Tok::Unknown(word.to_string()),
                };
                out.push(Token { tok, span });
            }
            other => out.push(single(Tok::Unknown(other.to_string()))),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Syntax tree

#[derive(Debug)]
enum TermKind {
    Nodes(Vec<Node>),
    Group(Vec<Item>),
}

#[derive(Debug)]
struct Term {
    kind: TermKind,
    span: Span,
}

#[derive(Debug)]
enum Elem {
    Term(Term),
    Op(Op, Span),
}

#[derive(Debug)]
struct Chain {
    elems: Vec<Elem>,
    span: Span,
}

#[derive(Debug)]
enum Item {
    Chain(Chain),
    Topology(u64, Span),
    Annotation(Vec<Token>, Span),
}

struct Parser<'t> {
    toks: &'t [Token],
    pos: usize,
    input_len: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn eof_span(&self) -> Span {
        match self.toks.last() {
            Some(t) => t.span,
            None => Span::new(0, self.input_len),
        }
    }

    fn unexpected(&self, tok: &Token, what: &str) -> Diagnostic {
        match &tok.tok {
            Tok::Unknown(s) => Diagnostic::error(DiagnosticKind::UnknownToken, tok.span, format!("unknown token `{s}`")),
            _ => Diagnostic::error(DiagnosticKind::Syntax, tok.span, format!("expected {what}")),
        }
    }

    /// Items separated by `,` or `+`, up to `close` (exclusive) or the end.
    fn items(&mut self, close: Option<&Tok>) -> PResult<Vec<Item>> {
        let mut items = Vec::new();
        loop {
            match self.peek() {
                None => {
                    if close.is_some() {
                        return Err(Diagnostic::error(DiagnosticKind::Syntax, self.eof_span(), "unclosed `[`"));
                    }
                    return Ok(items);
                }
                Some(t) if Some(&t.tok) == close => return Ok(items),
                Some(t) if matches!(t.tok, Tok::Comma | Tok::Plus) => {
                    self.bump();
                }
                Some(t) if matches!(t.tok, Tok::LParen) => items.push(self.annotation()?),
                Some(t) if matches!(t.tok, Tok::Topology) => items.push(self.topology()?),
                Some(_) => {
                    items.push(Item::Chain(self.chain()?));
                    // Only a separator, an annotation or the closer may follow.
                    match self.peek() {
                        None => {}
                        Some(t) if matches!(t.tok, Tok::Comma | Tok::Plus | Tok::LParen) => {}
                        Some(t) if Some(&t.tok) == close => {}
                        Some(t) => return Err(self.unexpected(t, "`,` or `+` between connections")),
                    }
                }
            }
        }
    }

    fn annotation(&mut self) -> PResult<Item> {
        let open = self.bump().unwrap();
        let mut depth = 1usize;
        let mut inner = Vec::new();
        while let Some(t) = self.bump() {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(Item::Annotation(inner, open.span.to(t.span)));
                    }
                }
                _ => {}
            }
            inner.push(t.clone());
        }
        Err(Diagnostic::error(DiagnosticKind::Syntax, open.span, "unclosed `(`"))
    }

    fn topology(&mut self) -> PResult<Item> {
        let kw = self.bump().unwrap();
        match self.bump() {
            Some(Token { tok: Tok::Number(n), span }) => Ok(Item::Topology(*n, kw.span.to(*span))),
            Some(t) => Err(Diagnostic::error(DiagnosticKind::Syntax, t.span, "expected topology number after `Topology`")),
            None => Err(Diagnostic::error(DiagnosticKind::Syntax, kw.span, "expected topology number after `Topology`")),
        }
    }

    fn chain(&mut self) -> PResult<Chain> {
        let mut elems: Vec<Elem> = Vec::new();
        while let Some(t) = self.peek() {
            match &t.tok {
                Tok::Node(_) | Tok::LBrace | Tok::LBracket => {
                    let juxtaposed = match elems.last() {
                        None | Some(Elem::Op(..)) => false,
                        Some(Elem::Term(Term { kind: TermKind::Group(_), .. })) => true,
                        Some(Elem::Term(_)) => return Err(self.unexpected(t, "an arrow between nodes")),
                    };
                    let term = self.term()?;
                    if juxtaposed && !matches!(term.kind, TermKind::Nodes(_)) {
                        return Err(Diagnostic::error(DiagnosticKind::Syntax, term.span, "expected `O` after `]`"));
                    }
                    elems.push(Elem::Term(term));
                }
                Tok::Op(op) => {
                    if !matches!(elems.last(), Some(Elem::Term(_))) {
                        return Err(Diagnostic::error(DiagnosticKind::Syntax, t.span, "arrow without a source node"));
                    }
                    elems.push(Elem::Op(*op, t.span));
                    self.bump();
                }
                _ => break,
            }
        }
        let (Some(first), Some(last)) = (elems.first(), elems.last()) else {
            let t = self.peek().expect("chain called at a token");
            return Err(self.unexpected(t, "a node, `{`, or `[`"));
        };
        let span = elem_span(first).to(elem_span(last));
        Ok(Chain { elems, span })
    }

    fn term(&mut self) -> PResult<Term> {
        let t = self.bump().unwrap();
        match &t.tok {
            Tok::Node(n) => Ok(Term { kind: TermKind::Nodes(vec![*n]), span: t.span }),
            Tok::LBrace => {
                let mut nodes = Vec::new();
                loop {
                    match self.bump() {
                        Some(Token { tok: Tok::Node(n), .. }) => nodes.push(*n),
                        Some(u) => return Err(self.unexpected(u, "a node inside `{...}`")),
                        None => return Err(Diagnostic::error(DiagnosticKind::Syntax, t.span, "unclosed `{`")),
                    }
                    match self.bump() {
                        Some(Token { tok: Tok::Comma, .. }) => continue,
                        Some(Token { tok: Tok::RBrace, span }) => {
                            return Ok(Term { kind: TermKind::Nodes(nodes), span: t.span.to(*span) })
                        }
                        Some(u) => return Err(self.unexpected(u, "`,` or `}`")),
                        None => return Err(Diagnostic::error(DiagnosticKind::Syntax, t.span, "unclosed `{`")),
                    }
                }
            }
            Tok::LBracket => {
                let items = self.items(Some(&Tok::RBracket))?;
                let close = self.bump().unwrap();
                Ok(Term { kind: TermKind::Group(items), span: t.span.to(close.span) })
            }
            _ => unreachable!("term() only called on term-starting tokens"),
        }
    }
}

fn elem_span(e: &Elem) -> Span {
    match e {
        Elem::Term(t) => t.span,
        Elem::Op(_, s) => *s,
    }
}

// ---------------------------------------------------------------------------
// Semantic analysis

#[derive(Default)]
struct Collected {
    entry: Vec<InternalNode>,
    exit: Vec<InternalNode>,
    arrangements: Vec<(Vec<(InternalNode, InternalNode)>, Span)>,
    shortcuts: ShortcutSet,
    shortcut_spans: Vec<Span>,
    topology: Option<(u64, Span)>,
    backbone: Vec<Span>,
    broken: Vec<(Node, Node)>,
    diags: Vec<Diagnostic>,
}

impl Collected {
    fn error(&mut self, kind: DiagnosticKind, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::error(kind, span, msg));
    }

    fn warn(&mut self, kind: DiagnosticKind, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::warning(kind, span, msg));
    }

    fn top_items(&mut self, items: &[Item]) {
        for item in items {
            match item {
                Item::Chain(c) => self.top_chain(c),
                Item::Topology(n, span) => self.topology(*n, *span),
                Item::Annotation(toks, span) => self.annotation(toks, *span),
            }
        }
    }

    fn topology(&mut self, n: u64, span: Span) {
        if !(1..=8).contains(&n) {
            self.error(DiagnosticKind::TopologyOutOfRange, span, format!("topology {n} is outside 1..8"));
            return;
        }
        if let Some((prev, _)) = self.topology {
            if prev != n {
                self.error(DiagnosticKind::TopologyMismatch, span, format!("topology {n} conflicts with topology {prev}"));
            }
            return;
        }
        self.topology = Some((n, span));
    }

    fn annotation(&mut self, toks: &[Token], span: Span) {
        if let [Token { tok: Tok::Topology, .. }, Token { tok: Tok::Number(n), .. }] = toks {
            self.topology(*n, span);
        } else {
            self.warn(DiagnosticKind::UnknownAnnotation, span, "ignored annotation");
        }
    }

    fn top_chain(&mut self, chain: &Chain) {
        // A chain made of single external nodes only is either the backbone or
        // a single external edge.
        let externals: Option<Vec<Node>> = chain
            .elems
            .iter()
            .filter_map(|e| match e {
                Elem::Term(t) => Some(t),
                Elem::Op(..) => None,
            })
            .map(|t| match &t.kind {
                TermKind::Nodes(ns) if ns.len() == 1 && ns[0].internal().is_none() => Some(ns[0]),
                _ => None,
            })
            .collect();
        let plain_arrows = chain.elems.iter().all(|e| !matches!(e, Elem::Op(Op::BiArrow, _)));
        if let Some(nodes) = externals {
            if nodes.len() >= 3 && plain_arrows {
                if chain.elems.iter().any(|e| matches!(e, Elem::Op(Op::Broken, _))) {
                    self.broken_chain(chain);
                    return;
                }
                if nodes == [Node::O, Node::F, Node::E, Node::I] {
                    if !self.backbone.is_empty() {
                        self.warn(DiagnosticKind::Duplicate, chain.span, "backbone listed more than once");
                    }
                    self.backbone.push(chain.span);
                } else {
                    self.error(
                        DiagnosticKind::MissingBackbone,
                        chain.span,
                        "external chain must be exactly O->F->E->I",
                    );
                }
                return;
            }
        }
        self.chain_edges(chain, true);
    }

    fn broken_chain(&mut self, chain: &Chain) {
        // Only the broken operator is recorded; the backbone stays implicit.
        let mut prev: Option<Node> = None;
        let mut op: Option<(Op, Span)> = None;
        for e in &chain.elems {
            match e {
                Elem::Term(Term { kind: TermKind::Nodes(ns), .. }) => {
                    if let (Some(a), Some((Op::Broken, span))) = (prev, op) {
                        self.broken.push((a, ns[0]));
                        self.warn(DiagnosticKind::BrokenLink, span, format!("broken link {a}⊗{}", ns[0]));
                    }
                    prev = Some(ns[0]);
                }
                Elem::Op(o, s) => op = Some((*o, *s)),
                Elem::Term(_) => {}
            }
        }
    }

    /// Walks a chain and classifies each edge. `top` is false inside a
    /// bracket group, where dangling arrows and lone sets carry meaning.
    fn chain_edges(&mut self, chain: &Chain, top: bool) {
        let mut internal: Vec<(InternalNode, InternalNode)> = Vec::new();
        let mut prev: Option<&Term> = None;
        let mut pending: Option<(Op, Span)> = None;
        let mut i = 0;
        while i < chain.elems.len() {
            match &chain.elems[i] {
                Elem::Op(op, span) => pending = Some((*op, *span)),
                Elem::Term(term) => match &term.kind {
                    TermKind::Group(items) => {
                        let src_ok = matches!(prev, Some(Term { kind: TermKind::Nodes(ns), .. }) if ns == &[Node::I])
                            && matches!(pending, Some((Op::Arrow, _)));
                        let next = chain.elems.get(i + 1);
                        let dst_ok = matches!(next, Some(Elem::Term(Term { kind: TermKind::Nodes(ns), .. })) if ns == &[Node::O]);
                        if !src_ok || !dst_ok || !top {
                            self.error(
                                DiagnosticKind::Syntax,
                                term.span,
                                "internal cluster must be written as I -> [ ... ] O",
                            );
                            return;
                        }
                        self.group(items, term.span);
                        // Skip the juxtaposed `O`.
                        i += 1;
                        if let Some(Elem::Term(o)) = chain.elems.get(i) {
                            prev = Some(o);
                        }
                        pending = None;
                    }
                    TermKind::Nodes(dst) => {
                        if let (Some(src), Some((op, op_span))) = (prev, pending.take()) {
                            if let TermKind::Nodes(srcs) = &src.kind {
                                let span = src.span.to(term.span);
                                for &a in srcs {
                                    for &b in dst {
                                        self.edge(a, b, op, op_span, span, &mut internal);
                                    }
                                }
                            }
                        }
                        prev = Some(term);
                    }
                },
            }
            i += 1;
        }
        if top {
            if let Some((_, span)) = pending {
                self.error(DiagnosticKind::Syntax, span, "arrow without a target node");
            }
        }
        if !internal.is_empty() {
            self.arrangements.push((internal, chain.span));
        }
    }

    fn edge(
        &mut self,
        a: Node,
        b: Node,
        op: Op,
        op_span: Span,
        span: Span,
        internal: &mut Vec<(InternalNode, InternalNode)>,
    ) {
        match op {
            Op::Broken => {
                self.broken.push((a, b));
                self.warn(DiagnosticKind::BrokenLink, op_span, format!("broken link {a}⊗{b}"));
            }
            Op::BiArrow => match (a.internal(), b.internal()) {
                (Some(x), Some(y)) if x != y => {
                    internal.push((x, y));
                    internal.push((y, x));
                }
                _ => self.error(DiagnosticKind::InvalidEdge, span, format!("bidirectional link {a}<->{b} is not allowed")),
            },
            Op::Arrow => match (a, b) {
                (Node::I, n) if n.internal().is_some() => self.entry.push(n.internal().unwrap()),
                (n, Node::O) if n.internal().is_some() => self.exit.push(n.internal().unwrap()),
                (Node::P, Node::S) => internal.push((InternalNode::P, InternalNode::S)),
                (Node::S, Node::P) => internal.push((InternalNode::S, InternalNode::P)),
                (x, y) => {
                    if let Some(sc) = Shortcut::from_edge(x, y) {
                        self.shortcuts = self.shortcuts.with(sc);
                        self.shortcut_spans.push(span);
                    } else if crate::model::BACKBONE.contains(&(x, y)) {
                        self.warn(
                            DiagnosticKind::RedundantBackbone,
                            span,
                            format!("{x}->{y} is a backbone edge, not a shortcut; ignored"),
                        );
                    } else {
                        self.error(DiagnosticKind::InvalidEdge, span, format!("{x}->{y} is not a valid connection"));
                    }
                }
            },
        }
    }

    fn group(&mut self, items: &[Item], group_span: Span) {
        let mut saw_entry = false;
        let mut saw_exit = false;
        for item in items {
            let chain = match item {
                Item::Chain(c) => c,
                Item::Topology(_, span) => {
                    self.error(DiagnosticKind::Syntax, *span, "topology is not allowed inside the internal cluster");
                    continue;
                }
                Item::Annotation(toks, span) => {
                    self.annotation(toks, *span);
                    continue;
                }
            };
            let nodes_of = |e: &Elem| match e {
                Elem::Term(Term { kind: TermKind::Nodes(ns), .. }) => Some(ns.clone()),
                _ => None,
            };
            match chain.elems.as_slice() {
                // Lone set: entry pattern.
                [single] => match nodes_of(single) {
                    Some(ns) => {
                        saw_entry = true;
                        self.internal_members(&ns, chain.span, true);
                    }
                    None => self.error(DiagnosticKind::Syntax, chain.span, "nested brackets are not allowed"),
                },
                // Dangling arrow: exit pattern.
                [src, Elem::Op(Op::Arrow, _)] => match nodes_of(src) {
                    Some(ns) => {
                        saw_exit = true;
                        self.internal_members(&ns, chain.span, false);
                    }
                    None => self.error(DiagnosticKind::Syntax, chain.span, "nested brackets are not allowed"),
                },
                _ => self.chain_edges(chain, false),
            }
        }
        if !saw_entry {
            self.error(DiagnosticKind::EmptyEntry, group_span, "internal cluster names no entry nodes");
        }
        if !saw_exit {
            self.error(DiagnosticKind::EmptyExit, group_span, "internal cluster names no exit nodes");
        }
    }

    fn internal_members(&mut self, nodes: &[Node], span: Span, entry: bool) {
        for &n in nodes {
            match n.internal() {
                Some(x) if entry => self.entry.push(x),
                Some(x) => self.exit.push(x),
                None => self.error(
                    DiagnosticKind::InvalidEdge,
                    span,
                    format!("{n} is not an internal node (expected P or S)"),
                ),
            }
        }
    }

    fn finish(mut self, whole: Span) -> ParseOutcome {
        let entry = NodePattern::from_members(self.entry.iter().copied());
        let exit = NodePattern::from_members(self.exit.iter().copied());
        if entry.is_none() && !self.diags.iter().any(|d| d.kind == DiagnosticKind::EmptyEntry) {
            self.error(DiagnosticKind::EmptyEntry, whole, "no input edge I->P or I->S");
        }
        if exit.is_none() && !self.diags.iter().any(|d| d.kind == DiagnosticKind::EmptyExit) {
            self.error(DiagnosticKind::EmptyExit, whole, "no output edge P->O or S->O");
        }

        let mut arrangement = None;
        let decls = std::mem::take(&mut self.arrangements);
        for (edges, span) in &decls {
            let mon = edges.contains(&(InternalNode::P, InternalNode::S));
            let ctl = edges.contains(&(InternalNode::S, InternalNode::P));
            let this = match (mon, ctl) {
                (true, true) => InternalArrangement::Bidirectional,
                (true, false) => InternalArrangement::BottomUp,
                (false, true) => InternalArrangement::TopDown,
                (false, false) => continue,
            };
            match arrangement {
                None => arrangement = Some(this),
                Some(prev) if prev == this => {
                    self.warn(DiagnosticKind::Duplicate, *span, "internal arrangement repeated");
                }
                Some(prev) => self.error(
                    DiagnosticKind::ConflictingArrangement,
                    *span,
                    format!("{this} conflicts with earlier {prev} arrangement"),
                ),
            }
        }
        if arrangement.is_none() {
            self.error(DiagnosticKind::MissingArrangement, whole, "no internal arrangement (P->S, S->P or P<->S)");
        }

        let mut shortcuts = self.shortcuts;
        if let Some((id, span)) = self.topology {
            let from_id = topology_shortcuts(id as u8).expect("range checked when recorded");
            if self.shortcut_spans.is_empty() {
                shortcuts = from_id;
            } else if from_id != shortcuts {
                self.error(
                    DiagnosticKind::TopologyMismatch,
                    span,
                    format!("topology {id} does not match the listed shortcuts (topology {})", topology_id(shortcuts)),
                );
            }
        }

        let has_error = self.diags.iter().any(Diagnostic::is_error);
        let scenario = match (has_error, entry, arrangement, exit) {
            (false, Some(e), Some(i), Some(x)) => Some(Scenario::new(e, i, x, shortcuts)),
            _ => None,
        };
        ParseOutcome { scenario, diagnostics: self.diags, broken_links: self.broken }
    }
}

/// Parses a scenario from its notation. Never panics; malformed input yields
/// error diagnostics and no scenario.
pub fn parse_scenario(text: &str) -> ParseOutcome {
    let whole = Span::new(0, text.len());
    let toks = lex(text);
    if toks.is_empty() {
        return ParseOutcome {
            scenario: None,
            diagnostics: vec![Diagnostic::error(DiagnosticKind::EmptyInput, whole, "empty scenario notation")],
            broken_links: Vec::new(),
        };
    }
    let mut parser = Parser { toks: &toks, pos: 0, input_len: text.len() };
    let items = match parser.items(None) {
        Ok(items) => items,
        Err(d) => return ParseOutcome { scenario: None, diagnostics: vec![d], broken_links: Vec::new() },
    };
    let mut c = Collected::default();
    c.top_items(&items);
    c.finish(whole)
}

// ---------------------------------------------------------------------------
// Printing

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotationStyle {
    Bracketed,
    Flat,
    TopologyShort,
}

impl NotationStyle {
    pub const ALL: [NotationStyle; 3] = [NotationStyle::Bracketed, NotationStyle::Flat, NotationStyle::TopologyShort];
}

/// Arrow glyphs used when printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Glyphs {
    #[default]
    Ascii,
    Unicode,
}

impl Glyphs {
    fn arrow(self) -> &'static str {
        match self {
            Glyphs::Ascii => "->",
            Glyphs::Unicode => "→",
        }
    }

    fn biarrow(self) -> &'static str {
        match self {
            Glyphs::Ascii => "<->",
            Glyphs::Unicode => "↔",
        }
    }
}

fn pattern_text(p: NodePattern) -> &'static str {
    match p {
        NodePattern::P => "P",
        NodePattern::S => "S",
        NodePattern::Both => "{P,S}",
    }
}

fn arrangement_text(i: InternalArrangement, g: Glyphs) -> String {
    match i {
        InternalArrangement::BottomUp => format!("P{}S", g.arrow()),
        InternalArrangement::TopDown => format!("S{}P", g.arrow()),
        InternalArrangement::Bidirectional => format!("P{}S", g.biarrow()),
    }
}

fn external_text(sc: ShortcutSet, g: Glyphs) -> String {
    let a = g.arrow();
    let mut out = format!("O{a}F{a}E{a}I");
    for s in sc.iter() {
        let (x, y) = s.edge();
        out.push_str(&format!(" + {x}{a}{y}"));
    }
    out
}

pub fn format_scenario(s: &Scenario, style: NotationStyle) -> String {
    format_scenario_with(s, style, Glyphs::Ascii)
}

pub fn format_scenario_with(s: &Scenario, style: NotationStyle, glyphs: Glyphs) -> String {
    let a = glyphs.arrow();
    let entry = pattern_text(s.entry);
    let exit = pattern_text(s.exit);
    let internal = arrangement_text(s.internal, glyphs);
    match style {
        NotationStyle::Bracketed => {
            format!("I {a} [{entry}, {internal}, {exit} {a}] O, {}", external_text(s.shortcuts, glyphs))
        }
        NotationStyle::Flat => {
            format!("I{a}{entry}, {internal}, {exit}{a}O, {}", external_text(s.shortcuts, glyphs))
        }
        NotationStyle::TopologyShort => {
            format!("I{a}{entry}, {internal}, {exit}{a}O, Topology {}", topology_id(s.shortcuts))
        }
    }
}

// ---------------------------------------------------------------------------
// Topology numbering

const TOPOLOGIES: [u8; 8] = [
    0b000, // 1: none
    0b001, // 2: OE
    0b010, // 3: OI
    0b100, // 4: FI
    0b011, // 5: OE+OI
    0b101, // 6: OE+FI
    0b110, // 7: OI+FI
    0b111, // 8: all
];

fn mask(sc: ShortcutSet) -> u8 {
    sc.iter().fold(0, |acc, s| {
        acc | match s {
            Shortcut::OE => 0b001,
            Shortcut::OI => 0b010,
            Shortcut::FI => 0b100,
        }
    })
}

/// Topology identifier (1..=8) of a shortcut set.
pub fn topology_id(sc: ShortcutSet) -> u8 {
    let m = mask(sc);
    TOPOLOGIES.iter().position(|&t| t == m).expect("all 8 masks are listed") as u8 + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("topology id {0} is outside 1..8")]
pub struct IdOutOfRange(pub u8);

pub fn topology_shortcuts(id: u8) -> Result<ShortcutSet, IdOutOfRange> {
    if !(1..=8).contains(&id) {
        return Err(IdOutOfRange(id));
    }
    let m = TOPOLOGIES[(id - 1) as usize];
    Ok(ShortcutSet::new(Shortcut::ALL.into_iter().filter(|s| {
        m & match s {
            Shortcut::OE => 0b001,
            Shortcut::OI => 0b010,
            Shortcut::FI => 0b100,
        } != 0
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use InternalArrangement::*;
    use NodePattern as NP;

    fn sc(items: &[Shortcut]) -> ShortcutSet {
        ShortcutSet::new(items.iter().copied())
    }

    fn ok(text: &str) -> Scenario {
        let out = parse_scenario(text);
        assert!(out.errors().next().is_none(), "{text}: {:?}", out.diagnostics);
        out.scenario.unwrap()
    }

    fn kinds(text: &str) -> Vec<DiagnosticKind> {
        parse_scenario(text).errors().map(|d| d.kind).collect()
    }

    #[test]
    fn parses_bracketed_s1() {
        assert_eq!(ok("I → [P, P→S, P→] O, O→F→E→I + F→I"), Scenario::new(NP::P, BottomUp, NP::P, sc(&[Shortcut::FI])));
    }

    #[test]
    fn parses_topology_short() {
        assert_eq!(
            ok("I→{P,S}, P↔S, {P,S}→O, Topology 8"),
            Scenario::new(NP::Both, Bidirectional, NP::Both, ShortcutSet::FULL)
        );
    }

    #[test]
    fn parses_flat_baseline() {
        assert_eq!(ok("I→S, S→P, S→O, O→F→E→I"), Scenario::new(NP::S, TopDown, NP::S, ShortcutSet::EMPTY));
    }

    #[test]
    fn redundant_backbone_edge_warns() {
        let out = parse_scenario("I → [S, S→P, S→] O, O→F→E→I + E→I + F→I");
        assert_eq!(out.scenario, Some(Scenario::new(NP::S, TopDown, NP::S, sc(&[Shortcut::FI]))));
        let warnings: Vec<_> = out.warnings().collect();
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].kind, DiagnosticKind::RedundantBackbone);
        let text = "I → [S, S→P, S→] O, O→F→E→I + E→I + F→I";
        assert_eq!(&text[warnings[0].span.start..warnings[0].span.end], "E→I");
    }

    #[test]
    fn garbled_group_order_is_accepted() {
        assert_eq!(
            ok("I→ [P→S, {P,S},P→] O, O→F→E→I + F→I"),
            Scenario::new(NP::Both, BottomUp, NP::P, sc(&[Shortcut::FI]))
        );
    }

    #[test]
    fn latex_forms() {
        let text = r"$I \rightarrow [\{P, S\}, P \rightleftharpoons S, S \rightarrow] O,$ $O \rightarrow F \rightarrow E \rightarrow I + O \rightarrow I + F \rightarrow I +$ $O \rightarrow E$";
        assert_eq!(ok(text), Scenario::new(NP::Both, Bidirectional, NP::S, ShortcutSet::FULL));
    }

    #[test]
    fn topology_annotation_in_parentheses() {
        let s = ok("I -> [P, P<->S, {P,S} ->] O, O->F->E->I + O->E + O->I + F->I (Topology 8)");
        assert_eq!(s.shortcuts, ShortcutSet::FULL);
        assert_eq!(kinds("I -> [P, P<->S, P ->] O, O->F->E->I + O->I (Topology 8)"), vec![DiagnosticKind::TopologyMismatch]);
    }

    #[test]
    fn unknown_annotation_warns() {
        let out = parse_scenario("I->P, P->S, P->O, O->F->E->I (focal)");
        assert!(out.scenario.is_some());
        assert_eq!(out.warnings().next().unwrap().kind, DiagnosticKind::UnknownAnnotation);
    }

    #[test]
    fn error_kinds() {
        assert_eq!(kinds("P->S, P->O, O->F->E->I"), vec![DiagnosticKind::EmptyEntry]);
        assert_eq!(kinds("I->P, P->S, O->F->E->I"), vec![DiagnosticKind::EmptyExit]);
        assert_eq!(kinds("I->P, P->S, P->O, O->E->F->I"), vec![DiagnosticKind::MissingBackbone]);
        assert_eq!(kinds("I->P, P->S, P->O, O->F->I"), vec![DiagnosticKind::MissingBackbone]);
        assert_eq!(kinds("I->P, P->S, P<->S, P->O"), vec![DiagnosticKind::ConflictingArrangement]);
        assert_eq!(kinds("I->P, P->S, P->O, Q"), vec![DiagnosticKind::UnknownToken]);
        assert_eq!(kinds("I->P, P->O"), vec![DiagnosticKind::MissingArrangement]);
        assert_eq!(kinds("I->P, P->S, P->O, I->O"), vec![DiagnosticKind::InvalidEdge]);
        assert_eq!(kinds("I->P, P->S, P->O, Topology 9"), vec![DiagnosticKind::TopologyOutOfRange]);
        assert_eq!(kinds(""), vec![DiagnosticKind::EmptyInput]);
        assert_eq!(kinds("I -> [P, P->S] O"), vec![DiagnosticKind::EmptyExit]);
    }

    #[test]
    fn error_spans_are_nonempty_and_in_bounds() {
        for text in ["I->P, P->S, P->O, Q", "I -> [P, P->S, P ->", "{P,", "I->P, P->S, P->O, O->E->F->I", "->", "   "] {
            for d in parse_scenario(text).errors() {
                assert!(d.span.start < d.span.end, "{text}: {d:?}");
                assert!(d.span.end <= text.len(), "{text}: {d:?}");
            }
        }
    }

    #[test]
    fn broken_link_is_flagged_non_canonical() {
        let out = parse_scenario("I->P, P->S, P->O, O⊗F");
        assert!(out.scenario.is_some());
        assert!(!out.is_canonical());
        assert_eq!(out.broken_links, vec![(Node::O, Node::F)]);
        assert_eq!(out.warnings().next().unwrap().kind, DiagnosticKind::BrokenLink);
    }

    #[test]
    fn format_examples() {
        let s6 = Scenario::new(NP::P, Bidirectional, NP::P, sc(&[Shortcut::OI]));
        assert_eq!(format_scenario(&s6, NotationStyle::Bracketed), "I -> [P, P<->S, P ->] O, O->F->E->I + O->I");
        let base = Scenario::new(NP::S, TopDown, NP::S, ShortcutSet::EMPTY);
        assert_eq!(format_scenario(&base, NotationStyle::TopologyShort), "I->S, S->P, S->O, Topology 1");
        let s1 = Scenario::new(NP::P, BottomUp, NP::P, sc(&[Shortcut::FI]));
        assert_eq!(
            format_scenario_with(&s1, NotationStyle::Flat, Glyphs::Unicode),
            "I→P, P→S, P→O, O→F→E→I + F→I"
        );
    }

    #[test]
    fn topology_numbering() {
        assert_eq!(topology_id(ShortcutSet::EMPTY), 1);
        assert_eq!(topology_id(sc(&[Shortcut::OI, Shortcut::FI])), 7);
        assert_eq!(topology_id(ShortcutSet::FULL), 8);
        assert_eq!(topology_shortcuts(2).unwrap(), sc(&[Shortcut::OE]));
        assert_eq!(topology_shortcuts(6).unwrap(), sc(&[Shortcut::OE, Shortcut::FI]));
        assert_eq!(topology_shortcuts(0), Err(IdOutOfRange(0)));
        assert_eq!(topology_shortcuts(9), Err(IdOutOfRange(9)));
        for id in 1..=8 {
            assert_eq!(topology_id(topology_shortcuts(id).unwrap()), id);
        }
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(ok("I->P,P->S,P->O,O->F->E->I+F->I"), ok("  I ->  P ,  P ->S , P-> O , O -> F -> E -> I  +  F -> I "));
        assert_eq!(ok("I->P, P⇌S, P->O"), ok("I->P, P<->S, P->O"));
    }
}
