//! N-Triples, N-Quads, Turtle and TriG.
//!
//! All parsers are pure functions from UTF-8 text to values. Writers emit a
//! canonical form (sorted prefixes, subjects in term order, LF endings) that
//! reparses to an isomorphic graph or dataset.

mod error;
mod iri;
mod lexer;
mod ntriples;
mod turtle;
mod writer;

use std::fmt;

pub use error::{ParseError, ParseErrorKind};
pub use ntriples::{parse_nquads, parse_ntriples, serialize_nquads, serialize_ntriples};
pub use writer::{serialize_trig, serialize_turtle, serialize_turtle_star};


use crate::model::{Dataset, Graph, Iri, PrefixMap};
use crate::reification::StarGraph;
use turtle::{Parsed, TurtleParser};

#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Base for relative IRI references; `@base` directives override it.
    pub base: Option<Iri>,
    /// Accept `<< s p o >>` in subject and object position.
    pub allow_embedded_triples: bool,
    /// Reject IRIREF-forbidden characters and invalid blank node labels.
    /// When false, such IRIs are kept verbatim and such labels are replaced
    /// by fresh ones.
    pub strict: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            base: None,
            allow_embedded_triples: false,
            strict: true,
        }
    }
}

impl ParseOptions {
    pub fn with_base(mut self, base: Iri) -> Self {
        self.base = Some(base);
        self
    }

    pub fn with_embedded_triples(mut self) -> Self {
        self.allow_embedded_triples = true;
        self
    }
}

/// Escapes a lexical form for a double-quoted string.
pub fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    NTriples,
    NQuads,
    Turtle,
    TriG,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::NTriples, Format::NQuads, Format::Turtle, Format::TriG];

    /// The short names `nt`, `nq`, `ttl`, `trig`.
    pub fn from_name(name: &str) -> Option<Format> {
        match name {
            "nt" => Some(Format::NTriples),
            "nq" => Some(Format::NQuads),
            "ttl" => Some(Format::Turtle),
            "trig" => Some(Format::TriG),
            _ => None,
        }
    }

    pub fn from_extension(path: &str) -> Option<Format> {
        let ext = std::path::Path::new(path).extension()?.to_str()?;
        Format::from_name(&ext.to_ascii_lowercase())
    }

    pub fn name(self) -> &'static str {
        match self {
            Format::NTriples => "nt",
            Format::NQuads => "nq",
            Format::Turtle => "ttl",
            Format::TriG => "trig",
        }
    }

    pub fn is_dataset(self) -> bool {
        matches!(self, Format::NQuads | Format::TriG)
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn run_turtle(text: &str, opts: &ParseOptions, trig: bool) -> Result<Parsed, ParseError> {
    TurtleParser::new(text, opts, trig).parse()
}

/// Parses Turtle. Statements with an embedded triple (when enabled) are not
/// part of the returned graph; use [`parse_turtle_star`] to keep them.
pub fn parse_turtle(text: &str, opts: &ParseOptions) -> Result<Graph, ParseError> {
    let parsed = run_turtle(text, opts, false)?;
    Ok(parsed.dataset.default_graph().clone())
}

/// Parses Turtle and also returns the prefixes and base it declared.
pub fn parse_turtle_with_prefixes(
    text: &str,
    opts: &ParseOptions,
) -> Result<(Graph, PrefixMap), ParseError> {
    let parsed = run_turtle(text, opts, false)?;
    Ok((parsed.dataset.default_graph().clone(), parsed.prefixes))
}

/// Parses Turtle with embedded triples enabled regardless of `opts`.
pub fn parse_turtle_star(text: &str, opts: &ParseOptions) -> Result<StarGraph, ParseError> {
    let opts = ParseOptions {
        allow_embedded_triples: true,
        ..opts.clone()
    };
    let parsed = run_turtle(text, &opts, false)?;
    let mut star = parsed.star;
    star.asserted = parsed.dataset.default_graph().clone();
    Ok(star)
}

pub fn parse_trig(text: &str, opts: &ParseOptions) -> Result<Dataset, ParseError> {
    Ok(run_turtle(text, opts, true)?.dataset)
}

pub fn parse_trig_with_prefixes(
    text: &str,
    opts: &ParseOptions,
) -> Result<(Dataset, PrefixMap), ParseError> {
    let parsed = run_turtle(text, opts, true)?;
    Ok((parsed.dataset, parsed.prefixes))
}

/// Parses any format into a dataset; graph formats fill the default graph.
pub fn parse_dataset(text: &str, format: Format, opts: &ParseOptions) -> Result<Dataset, ParseError> {
    match format {
        Format::NTriples => parse_ntriples(text).map(Dataset::from_default),
        Format::NQuads => parse_nquads(text),
        Format::Turtle => parse_turtle(text, opts).map(Dataset::from_default),
        Format::TriG => parse_trig(text, opts),
    }
}

/// Serializes a dataset; graph formats accept only datasets without named
/// graphs and return `None` otherwise.
pub fn serialize_dataset(ds: &Dataset, format: Format, pm: &PrefixMap) -> Option<String> {
    match format {
        Format::NQuads => Some(serialize_nquads(ds)),
        Format::TriG => Some(serialize_trig(ds, pm)),
        _ if ds.named_graph_count() > 0 => None,
        Format::NTriples => Some(serialize_ntriples(ds.default_graph())),
        Format::Turtle => Some(serialize_turtle(ds.default_graph(), pm)),
    }
}

#[cfg(test)]
mod tests;
