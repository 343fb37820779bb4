//! The line-oriented instance format.
//!
//! ```text
//! # comment
//! n 4
//! interval 1 4 2
//! ```
//!
//! or `facet v1 v2 ...` lines instead of `interval lo hi rank` lines, never both.

use std::collections::HashSet;
use std::fmt;

use sortable_core::{Face, IntervalComplexSpec, IntervalPart, SimplicialComplex};

/// What a file describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceBody {
    Complex(SimplicialComplex),
    Spec(IntervalComplexSpec),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub body: InstanceBody,
}

impl Instance {
    pub fn new(id: impl Into<String>, body: InstanceBody) -> Self {
        Instance { id: id.into(), body }
    }

    pub fn parse(id: impl Into<String>, text: &str) -> Result<Self, ParseError> {
        parse_instance(text).map(|body| Instance::new(id, body))
    }

    /// The complex `Δ`, built from the spec when given as one.
    pub fn complex(&self) -> SimplicialComplex {
        match &self.body {
            InstanceBody::Complex(cx) => cx.clone(),
            InstanceBody::Spec(s) => s.build(),
        }
    }

    pub fn spec(&self) -> Option<&IntervalComplexSpec> {
        match &self.body {
            InstanceBody::Spec(s) => Some(s),
            InstanceBody::Complex(_) => None,
        }
    }

    pub fn to_text(&self) -> String {
        match &self.body {
            InstanceBody::Spec(s) => s.to_text(),
            InstanceBody::Complex(cx) => {
                let mut s = format!("n {}\n", cx.n());
                for f in cx.facets() {
                    let vs: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
                    s.push_str(&format!("facet {}\n", vs.join(" ")));
                }
                s
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Malformed(String),
    MissingHeader,
    DuplicateHeader,
    VertexOutOfRange { vertex: usize, n: usize },
    DuplicateFacet(Face),
    DuplicateVertex(usize),
    MixedForms,
    NoBody,
    BadSpec(String),
}

/// 1-based line and column of the offending token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Malformed(m) => write!(f, "malformed line: {m}"),
            ParseErrorKind::MissingHeader => f.write_str("expected `n <int>` before any facet or interval line"),
            ParseErrorKind::DuplicateHeader => f.write_str("second `n` line"),
            ParseErrorKind::VertexOutOfRange { vertex, n } => write!(f, "vertex {vertex} out of range 1..={n}"),
            ParseErrorKind::DuplicateFacet(face) => write!(f, "duplicate facet {face}"),
            ParseErrorKind::DuplicateVertex(v) => write!(f, "vertex {v} repeated in one facet"),
            ParseErrorKind::MixedForms => f.write_str("facet and interval lines in one file"),
            ParseErrorKind::NoBody => f.write_str("no facet or interval lines"),
            ParseErrorKind::BadSpec(m) => write!(f, "invalid interval spec: {m}"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.kind)
    }
}

impl std::error::Error for ParseError {}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], column: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn int(tok: &Token<'_>, line: usize) -> Result<usize, ParseError> {
    tok.text.parse().map_err(|_| ParseError {
        line,
        column: tok.column,
        kind: ParseErrorKind::Malformed(format!("`{}` is not a nonnegative integer", tok.text)),
    })
}

fn vertex(tok: &Token<'_>, line: usize, n: usize) -> Result<usize, ParseError> {
    let v = int(tok, line)?;
    if v == 0 || v > n {
        return Err(ParseError { line, column: tok.column, kind: ParseErrorKind::VertexOutOfRange { vertex: v, n } });
    }
    Ok(v)
}

enum Body {
    Facets(Vec<Vec<usize>>),
    Intervals(Vec<IntervalPart>),
}

/// Parses the instance format.
pub fn parse_instance(text: &str) -> Result<InstanceBody, ParseError> {
    let mut n: Option<usize> = None;
    let mut body: Option<Body> = None;
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        if head.text.starts_with('#') {
            continue;
        }
        let err = |column, kind| ParseError { line, column, kind };
        match head.text {
            "n" => {
                if n.is_some() {
                    return Err(err(head.column, ParseErrorKind::DuplicateHeader));
                }
                if toks.len() != 2 {
                    return Err(err(head.column, ParseErrorKind::Malformed("expected `n <int>`".into())));
                }
                let v = int(&toks[1], line)?;
                if !(1..=64).contains(&v) {
                    return Err(err(toks[1].column, ParseErrorKind::Malformed(format!("n = {v} outside 1..=64"))));
                }
                n = Some(v);
            }
            "facet" => {
                let n = n.ok_or(err(head.column, ParseErrorKind::MissingHeader))?;
                if toks.len() < 2 {
                    return Err(err(head.column, ParseErrorKind::Malformed("facet needs at least one vertex".into())));
                }
                let facets = match body.get_or_insert_with(|| Body::Facets(Vec::new())) {
                    Body::Facets(f) => f,
                    Body::Intervals(_) => return Err(err(head.column, ParseErrorKind::MixedForms)),
                };
                let mut vs = Vec::new();
                let mut face = Face::EMPTY;
                for t in &toks[1..] {
                    let v = vertex(t, line, n)?;
                    if face.contains(v) {
                        return Err(err(t.column, ParseErrorKind::DuplicateVertex(v)));
                    }
                    face = face.with(v);
                    vs.push(v);
                }
                if !seen.insert(face) {
                    return Err(err(head.column, ParseErrorKind::DuplicateFacet(face)));
                }
                facets.push(vs);
            }
            "interval" => {
                let n = n.ok_or(err(head.column, ParseErrorKind::MissingHeader))?;
                if toks.len() != 4 {
                    return Err(err(head.column, ParseErrorKind::Malformed("expected `interval lo hi rank`".into())));
                }
                let parts = match body.get_or_insert_with(|| Body::Intervals(Vec::new())) {
                    Body::Intervals(p) => p,
                    Body::Facets(_) => return Err(err(head.column, ParseErrorKind::MixedForms)),
                };
                let lo = vertex(&toks[1], line, n)?;
                let hi = vertex(&toks[2], line, n)?;
                let rank = int(&toks[3], line)?;
                parts.push(IntervalPart::new(lo, hi, rank));
            }
            other => return Err(err(head.column, ParseErrorKind::Malformed(format!("unknown keyword `{other}`")))),
        }
        last_line = line;
    }
    let n = n.ok_or(ParseError { line: last_line.max(1), column: 1, kind: ParseErrorKind::MissingHeader })?;
    match body {
        None => Err(ParseError { line: last_line.max(1), column: 1, kind: ParseErrorKind::NoBody }),
        Some(Body::Facets(f)) => SimplicialComplex::new(n, &f)
            .map(InstanceBody::Complex)
            .map_err(|e| ParseError { line: last_line, column: 1, kind: ParseErrorKind::BadSpec(e.to_string()) }),
        Some(Body::Intervals(p)) => IntervalComplexSpec::new(n, p)
            .map(InstanceBody::Spec)
            .map_err(|e| ParseError { line: last_line, column: 1, kind: ParseErrorKind::BadSpec(e.to_string()) }),
    }
}
