//! N-Triples and N-Quads: one statement per line, terminated by a dot.

use super::lexer::{absolute_iri, BlankScope, Cursor};
use super::{ParseError, ParseErrorKind};
use crate::model::{Dataset, Graph, GraphName, Iri, Literal, Term, Triple};

struct LineParser<'a> {
    cur: Cursor<'a>,
    blanks: BlankScope,
}

impl<'a> LineParser<'a> {
    fn new(text: &'a str) -> Self {
        LineParser {
            cur: Cursor::new(text),
            blanks: BlankScope::default(),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let start = self.cur.pos;
        match self.cur.peek() {
            Some('<') => {
                if self.cur.peek_nth(1) == Some('<') {
                    return Err(self.cur.error(
                        ParseErrorKind::EmbeddedTriple,
                        "embedded triples are not part of line-based formats",
                    ));
                }
                let text = self.cur.iriref(true)?;
                Ok(Term::Iri(absolute_iri(&self.cur, start, &text, None)?))
            }
            Some('_') => {
                let raw = self.cur.blank_label()?;
                let node = self
                    .blanks
                    .labeled(raw, false)
                    .expect("lenient scope always yields a node");
                Ok(Term::Blank(node))
            }
            Some('"') => {
                let lexical = self.cur.string(false)?;
                let lit = if self.cur.eat('@') {
                    let tag = self.cur.lang_tag()?;
                    Literal::new(&lexical, None, Some(tag))
                } else if self.cur.eat_str("^^") {
                    let dt_start = self.cur.pos;
                    let text = self.cur.iriref(true)?;
                    let dt = absolute_iri(&self.cur, dt_start, &text, None)?;
                    Literal::new(&lexical, Some(dt), None)
                } else {
                    Ok(Literal::simple(&lexical))
                };
                lit.map(Term::Literal)
                    .map_err(|e| self.cur.error_at(start, ParseErrorKind::InvalidLanguageTag, e.to_string()))
            }
            _ => Err(self.cur.unexpected("IRI, blank node or literal")),
        }
    }

    /// Parses every line; `max_terms` is 3 for N-Triples and 4 for N-Quads.
    fn run(
        mut self,
        max_terms: usize,
        mut sink: impl FnMut(Triple, Option<GraphName>),
    ) -> Result<(), ParseError> {
        loop {
            self.cur.skip_ws(false);
            match self.cur.peek() {
                None => return Ok(()),
                Some('\n') | Some('\r') => {
                    self.cur.bump();
                    continue;
                }
                _ => {}
            }
            let line_start = self.cur.pos;
            let mut terms = Vec::with_capacity(4);
            let mut starts = Vec::with_capacity(4);
            loop {
                self.cur.skip_ws(false);
                match self.cur.peek() {
                    Some('.') => break,
                    None | Some('\n') | Some('\r') => {
                        return Err(self.cur.error(
                            ParseErrorKind::MissingDot,
                            "statement must be terminated by '.'",
                        ))
                    }
                    _ => {}
                }
                if terms.len() == max_terms {
                    return Err(self.cur.error(
                        ParseErrorKind::TermCount,
                        format!("more than {max_terms} terms on one line"),
                    ));
                }
                starts.push(self.cur.pos);
                terms.push(self.term()?);
            }
            let dot = self.cur.pos;
            self.cur.bump();
            if terms.len() < 3 {
                return Err(self.cur.error_at(
                    dot,
                    ParseErrorKind::TermCount,
                    format!("expected 3{} terms, found {}", if max_terms == 4 { " or 4" } else { "" }, terms.len()),
                ));
            }
            self.cur.skip_ws(false);
            match self.cur.peek() {
                None | Some('\n') | Some('\r') => {}
                _ => return Err(self.cur.unexpected("end of line after '.'")),
            }
            let graph = if terms.len() == 4 {
                let g = terms.pop().expect("four terms");
                if g.is_literal() {
                    return Err(self.cur.error_at(
                        starts[3],
                        ParseErrorKind::LiteralGraphLabel,
                        "graph label must be an IRI or blank node",
                    ));
                }
                Some(GraphName::new(g).expect("non-literal"))
            } else {
                None
            };
            let o = terms.pop().expect("object");
            let p = terms.pop().expect("predicate");
            let s = terms.pop().expect("subject");
            if s.is_literal() {
                return Err(self.cur.error_at(line_start, ParseErrorKind::LiteralSubject, ""));
            }
            if p.as_iri().is_none() {
                return Err(self.cur.error_at(
                    starts[1],
                    ParseErrorKind::InvalidPredicate,
                    "predicate must be an IRI",
                ));
            }
            sink(Triple::new(s, p, o).expect("positions checked"), graph);
        }
    }
}

pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut g = Graph::new();
    LineParser::new(text).run(3, |t, _| {
        g.insert(t);
    })?;
    Ok(g)
}

pub fn parse_nquads(text: &str) -> Result<Dataset, ParseError> {
    let mut ds = Dataset::new();
    LineParser::new(text).run(4, |t, g| {
        ds.insert(t, g);
    })?;
    Ok(ds)
}

pub(crate) fn write_iri(out: &mut String, iri: &Iri) {
    out.push('<');
    for c in iri.as_str().chars() {
        let forbidden = c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\');
        if forbidden {
            out.push_str(&format!("\\u{:04X}", c as u32));
        } else {
            out.push(c);
        }
    }
    out.push('>');
}

pub(crate) fn write_literal(out: &mut String, lit: &Literal, datatype: impl FnOnce(&mut String, &Iri)) {
    out.push('"');
    out.push_str(&super::escape_string(lit.lexical_form()));
    out.push('"');
    if let Some(lang) = lit.language() {
        out.push('@');
        out.push_str(lang);
    } else if *lit.datatype() != crate::model::vocab::xsd::string() {
        out.push_str("^^");
        datatype(out, lit.datatype());
    }
}

pub(crate) fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(i) => write_iri(out, i),
        Term::Blank(b) => {
            out.push_str("_:");
            out.push_str(b.label());
        }
        Term::Literal(l) => write_literal(out, l, write_iri),
    }
}

fn write_triple(out: &mut String, t: &Triple) {
    write_term(out, t.subject());
    out.push(' ');
    write_iri(out, t.predicate());
    out.push(' ');
    write_term(out, t.object());
}

/// One line per triple, canonical order, LF line endings.
pub fn serialize_ntriples(g: &Graph) -> String {
    let mut out = String::new();
    for t in g {
        write_triple(&mut out, t);
        out.push_str(" .\n");
    }
    out
}

/// Default-graph triples as 3-term lines, then each named graph's triples
/// as 4-term lines.
pub fn serialize_nquads(ds: &Dataset) -> String {
    let mut out = serialize_ntriples(ds.default_graph());
    for (name, g) in ds.named_graphs() {
        for t in g {
            write_triple(&mut out, t);
            out.push(' ');
            write_term(&mut out, name.term());
            out.push_str(" .\n");
        }
    }
    out
}
