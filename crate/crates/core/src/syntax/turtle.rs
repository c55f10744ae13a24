//! Recursive-descent parser for Turtle and TriG, with the opt-in
//! `<< s p o >>` embedded-triple extension.

use super::lexer::{absolute_iri, is_pn_chars, is_pn_chars_base, BlankScope, Cursor};
use super::{ParseError, ParseErrorKind, ParseOptions};
use crate::model::vocab::rdf;
use crate::model::{Dataset, GraphName, Iri, Literal, PrefixMap, Term, Triple};
use crate::reification::{StarGraph, StarTriple};

/// A subject or object: an ordinary term or an embedded triple.
enum Node {
    Term(Term),
    Embedded(Triple),
}

pub(crate) struct TurtleParser<'a, 'o> {
    cur: Cursor<'a>,
    opts: &'o ParseOptions,
    prefixes: PrefixMap,
    base: Option<Iri>,
    blanks: BlankScope,
    trig: bool,
    graph: Option<GraphName>,
    dataset: Dataset,
    star: StarGraph,
}

/// Everything a Turtle or TriG document produced.
pub(crate) struct Parsed {
    pub dataset: Dataset,
    pub star: StarGraph,
    pub prefixes: PrefixMap,
}

const LOCAL_ESCAPES: &str = "_~.-!$&'()*+,;=/?#@%";

impl<'a, 'o> TurtleParser<'a, 'o> {
    pub fn new(text: &'a str, opts: &'o ParseOptions, trig: bool) -> Self {
        TurtleParser {
            cur: Cursor::new(text),
            opts,
            prefixes: PrefixMap::new(),
            base: opts.base.clone(),
            blanks: BlankScope::default(),
            trig,
            graph: None,
            dataset: Dataset::new(),
            star: StarGraph::default(),
        }
    }

    pub fn parse(mut self) -> Result<Parsed, ParseError> {
        loop {
            self.cur.skip_ws(true);
            if self.cur.at_end() {
                break;
            }
            if self.directive()? {
                continue;
            }
            if self.trig && self.graph_block()? {
                continue;
            }
            self.triples()?;
            self.cur.skip_ws(true);
            if !self.cur.eat('.') {
                return Err(self.missing_dot());
            }
        }
        self.prefixes.set_base(self.base.clone());
        Ok(Parsed {
            dataset: self.dataset,
            star: self.star,
            prefixes: self.prefixes,
        })
    }

    fn missing_dot(&self) -> ParseError {
        match self.cur.peek() {
            None => self.cur.error(ParseErrorKind::MissingDot, "statement must end with '.'"),
            Some(c) => self.cur.error(
                ParseErrorKind::MissingDot,
                format!("expected '.', found {c:?}"),
            ),
        }
    }

    /// A bare word at the cursor (letters only), if followed by whitespace.
    fn keyword(&self, word: &str) -> bool {
        let rest = self.cur.rest();
        rest.len() > word.len()
            && rest.is_char_boundary(word.len())
            && rest[..word.len()].eq_ignore_ascii_case(word)
            && rest[word.len()..]
                .chars()
                .next()
                .is_some_and(|c| c.is_whitespace() || c == '<' || c == '#')
    }

    fn directive(&mut self) -> Result<bool, ParseError> {
        let (is_prefix, sparql) = if self.cur.starts_with("@prefix") {
            self.cur.pos += "@prefix".len();
            (true, false)
        } else if self.cur.starts_with("@base") {
            self.cur.pos += "@base".len();
            (false, false)
        } else if self.keyword("prefix") {
            self.cur.pos += "prefix".len();
            (true, true)
        } else if self.keyword("base") {
            self.cur.pos += "base".len();
            (false, true)
        } else {
            return Ok(false);
        };
        self.cur.skip_ws(true);
        if is_prefix {
            let prefix = self.pname_ns()?;
            self.cur.skip_ws(true);
            let iri = self.iri_ref()?;
            self.prefixes.bind(prefix, iri);
        } else {
            let iri = self.iri_ref()?;
            self.base = Some(iri);
        }
        self.cur.skip_ws(true);
        // the '.' is required after @-forms and tolerated after the bare forms
        if !self.cur.eat('.') && !sparql {
            return Err(self.missing_dot());
        }
        Ok(true)
    }

    fn pname_ns(&mut self) -> Result<String, ParseError> {
        let start = self.cur.pos;
        while let Some(c) = self.cur.peek() {
            if c == ':' {
                break;
            }
            if is_pn_chars(c) || c == '.' {
                self.cur.bump();
            } else {
                return Err(self.cur.unexpected("prefix name followed by ':'"));
            }
        }
        let prefix = self.cur.src[start..self.cur.pos].to_owned();
        if !self.cur.eat(':') {
            return Err(self.cur.unexpected("':'"));
        }
        Ok(prefix)
    }

    fn iri_ref(&mut self) -> Result<Iri, ParseError> {
        let start = self.cur.pos;
        let text = self.cur.iriref(self.opts.strict)?;
        absolute_iri(&self.cur, start, &text, self.base.as_ref())
    }

    fn prefixed_name(&mut self) -> Result<Iri, ParseError> {
        let start = self.cur.pos;
        let prefix_start = self.cur.pos;
        if let Some(c) = self.cur.peek() {
            if c != ':' && !is_pn_chars_base(c) {
                return Err(self.cur.unexpected("IRI, prefixed name, blank node or literal"));
            }
        }
        while let Some(c) = self.cur.peek() {
            if is_pn_chars(c) || c == '.' {
                self.cur.bump();
            } else {
                break;
            }
        }
        let prefix = &self.cur.src[prefix_start..self.cur.pos];
        if !self.cur.eat(':') {
            let word = prefix.to_owned();
            self.cur.pos = start;
            if word == "true" || word == "false" {
                return Err(self.cur.error(
                    ParseErrorKind::UnsupportedShorthand,
                    "boolean shorthand is not supported; write \"true\"^^xsd:boolean",
                ));
            }
            return Err(self.cur.unexpected("prefixed name"));
        }
        let mut local = String::new();
        let mut local_end = self.cur.pos;
        let mut committed_len = 0;
        loop {
            let mut raw_dot = false;
            match self.cur.peek() {
                Some('\\') => {
                    let at = self.cur.pos;
                    self.cur.bump();
                    match self.cur.bump() {
                        Some(c) if LOCAL_ESCAPES.contains(c) => local.push(c),
                        _ => {
                            return Err(self.cur.error_at(at, ParseErrorKind::BadEscape, "invalid local name escape"))
                        }
                    }
                }
                Some('%') => {
                    let at = self.cur.pos;
                    let hex: String = self.cur.rest().chars().skip(1).take(2).collect();
                    if hex.len() != 2 || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                        return Err(self.cur.error_at(at, ParseErrorKind::BadEscape, "invalid percent escape"));
                    }
                    self.cur.pos += 3;
                    local.push('%');
                    local.push_str(&hex);
                }
                Some(c) if is_pn_chars(c) || c == ':' || c == '.' => {
                    self.cur.bump();
                    local.push(c);
                    raw_dot = c == '.';
                }
                _ => break,
            }
            if !raw_dot {
                local_end = self.cur.pos;
                committed_len = local.len();
            }
        }
        // trailing dots end the statement, not the name
        self.cur.pos = local_end;
        local.truncate(committed_len);
        let ns = self.prefixes.get(prefix).ok_or_else(|| {
            self.cur.error_at(start, ParseErrorKind::UnknownPrefix, format!("{prefix:?} is not bound"))
        })?;
        Iri::new(format!("{}{}", ns.as_str(), local))
            .map_err(|e| self.cur.error_at(start, ParseErrorKind::InvalidIri, e.to_string()))
    }

    fn iri(&mut self) -> Result<Iri, ParseError> {
        if self.cur.peek() == Some('<') {
            self.iri_ref()
        } else {
            self.prefixed_name()
        }
    }

    fn blank_label(&mut self) -> Result<Term, ParseError> {
        let start = self.cur.pos;
        let raw = self.cur.blank_label()?;
        self.blanks
            .labeled(raw, self.opts.strict)
            .map(Term::Blank)
            .ok_or_else(|| {
                self.cur.error_at(
                    start,
                    ParseErrorKind::InvalidBlankLabel,
                    format!("{raw:?} is outside [A-Za-z0-9][A-Za-z0-9_.-]*"),
                )
            })
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let start = self.cur.pos;
        let lexical = self.cur.string(true)?;
        let lit = if self.cur.eat('@') {
            let tag = self.cur.lang_tag()?;
            Literal::new(&lexical, None, Some(tag))
        } else if self.cur.eat_str("^^") {
            let dt = self.iri()?;
            Literal::new(&lexical, Some(dt), None)
        } else {
            Ok(Literal::simple(&lexical))
        };
        lit.map_err(|e| self.cur.error_at(start, ParseErrorKind::InvalidLanguageTag, e.to_string()))
    }

    fn shorthand_error(&self) -> ParseError {
        self.cur.error(
            ParseErrorKind::UnsupportedShorthand,
            "numeric shorthand is not supported; write a quoted literal with ^^datatype",
        )
    }

    fn is_embedded_start(&self) -> bool {
        self.cur.starts_with("<<")
    }

    fn embedded(&mut self) -> Result<Triple, ParseError> {
        let start = self.cur.pos;
        if !self.opts.allow_embedded_triples {
            return Err(self.cur.error(
                ParseErrorKind::EmbeddedTriple,
                "embedded triples are disabled",
            ));
        }
        if self.trig && self.graph.is_some() {
            return Err(self.cur.error(
                ParseErrorKind::EmbeddedTriple,
                "embedded triples are only supported outside graph blocks",
            ));
        }
        self.cur.pos += 2;
        self.cur.skip_ws(true);
        let s = self.embedded_term(false)?;
        if s.is_literal() {
            return Err(self.cur.error_at(start, ParseErrorKind::LiteralSubject, "in embedded triple"));
        }
        self.cur.skip_ws(true);
        let p = self.verb()?;
        self.cur.skip_ws(true);
        let o = self.embedded_term(true)?;
        self.cur.skip_ws(true);
        if !self.cur.eat_str(">>") {
            return Err(self.cur.unexpected("'>>'"));
        }
        Ok(Triple::new(s, p, o).expect("positions checked"))
    }

    fn embedded_term(&mut self, object: bool) -> Result<Term, ParseError> {
        match self.cur.peek() {
            Some('<') if self.is_embedded_start() => Err(self.cur.error(
                ParseErrorKind::EmbeddedTriple,
                "nested embedded triples are not supported",
            )),
            Some('<') => self.iri_ref().map(Term::Iri),
            Some('_') => self.blank_label(),
            Some('[') => {
                self.cur.bump();
                self.cur.skip_ws(true);
                if !self.cur.eat(']') {
                    return Err(self.cur.unexpected("']' (only [] is allowed inside << >>)"));
                }
                Ok(Term::Blank(self.blanks.fresh()))
            }
            Some('"') | Some('\'') if object => self.literal().map(Term::Literal),
            Some('"') | Some('\'') => Err(self.cur.error(ParseErrorKind::LiteralSubject, "")),
            _ => self.prefixed_name().map(Term::Iri),
        }
    }

    fn emit(&mut self, s: &Node, p: &Iri, o: Node) -> Result<(), ParseError> {
        match (s, o) {
            (Node::Term(s), Node::Term(o)) => {
                let t = Triple::new(s.clone(), p.clone(), o).expect("positions checked");
                self.dataset.insert(t, self.graph.clone());
            }
            (Node::Embedded(base), Node::Term(o)) => {
                self.star.annotations.insert(StarTriple {
                    base: base.clone(),
                    predicate: p.clone(),
                    object: o,
                });
            }
            (Node::Term(s), Node::Embedded(t)) => {
                self.star
                    .embedded_objects
                    .insert((s.clone(), p.clone(), t));
            }
            (Node::Embedded(_), Node::Embedded(_)) => {
                return Err(self.cur.error(
                    ParseErrorKind::EmbeddedTriple,
                    "embedded triples in both subject and object position",
                ))
            }
        }
        Ok(())
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        let start = self.cur.pos;
        let subject = match self.cur.peek() {
            Some('[') => {
                let node = self.blank_node_property_list()?;
                self.cur.skip_ws(true);
                if matches!(self.cur.peek(), Some('.') | Some('}') | None) {
                    return Ok(());
                }
                Node::Term(node)
            }
            Some('<') if self.is_embedded_start() => Node::Embedded(self.embedded()?),
            Some('<') => Node::Term(Term::Iri(self.iri_ref()?)),
            Some('_') => Node::Term(self.blank_label()?),
            Some('(') => Node::Term(self.collection()?),
            Some('"') | Some('\'') => {
                self.literal()?;
                self.cur.skip_ws(true);
                if self.trig && self.cur.peek() == Some('{') {
                    return Err(self.cur.error_at(
                        start,
                        ParseErrorKind::LiteralGraphLabel,
                        "graph label must be an IRI or blank node",
                    ));
                }
                return Err(self.cur.error_at(start, ParseErrorKind::LiteralSubject, ""));
            }
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-') => return Err(self.shorthand_error()),
            Some('{') if !self.trig => {
                return Err(self.cur.error(ParseErrorKind::UnexpectedChar, "graph blocks need TriG"))
            }
            _ => Node::Term(Term::Iri(self.prefixed_name()?)),
        };
        self.cur.skip_ws(true);
        self.predicate_object_list(&subject)
    }

    fn verb(&mut self) -> Result<Iri, ParseError> {
        let start = self.cur.pos;
        if self.cur.peek() == Some('a') {
            let next = self.cur.peek_nth(1);
            if next.is_none_or(|c| !(is_pn_chars(c) || c == ':' || c == '.')) {
                self.cur.bump();
                return Ok(rdf::type_());
            }
        }
        match self.cur.peek() {
            Some('_') | Some('[') | Some('(') => Err(self.cur.error(
                ParseErrorKind::InvalidPredicate,
                "predicate must be an IRI",
            )),
            Some('"') | Some('\'') => Err(self.cur.error_at(
                start,
                ParseErrorKind::InvalidPredicate,
                "literal in predicate position",
            )),
            Some('<') if self.is_embedded_start() => Err(self.cur.error(
                ParseErrorKind::EmbeddedTriple,
                "embedded triple in predicate position",
            )),
            _ => self.iri(),
        }
    }

    fn predicate_object_list(&mut self, subject: &Node) -> Result<(), ParseError> {
        loop {
            let p = self.verb()?;
            self.cur.skip_ws(true);
            self.object_list(subject, &p)?;
            self.cur.skip_ws(true);
            if !self.cur.eat(';') {
                return Ok(());
            }
            loop {
                self.cur.skip_ws(true);
                if !self.cur.eat(';') {
                    break;
                }
            }
            if matches!(self.cur.peek(), Some('.') | Some(']') | Some('}') | None) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Node, p: &Iri) -> Result<(), ParseError> {
        loop {
            let o = self.object()?;
            self.emit(subject, p, o)?;
            self.cur.skip_ws(true);
            if !self.cur.eat(',') {
                return Ok(());
            }
            self.cur.skip_ws(true);
        }
    }

    fn object(&mut self) -> Result<Node, ParseError> {
        Ok(match self.cur.peek() {
            Some('<') if self.is_embedded_start() => Node::Embedded(self.embedded()?),
            Some('<') => Node::Term(Term::Iri(self.iri_ref()?)),
            Some('_') => Node::Term(self.blank_label()?),
            Some('[') => Node::Term(self.blank_node_property_list()?),
            Some('(') => Node::Term(self.collection()?),
            Some('"') | Some('\'') => Node::Term(Term::Literal(self.literal()?)),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => {
                return Err(self.shorthand_error())
            }
            None => return Err(self.cur.unexpected("object")),
            _ => Node::Term(Term::Iri(self.prefixed_name()?)),
        })
    }

    fn blank_node_property_list(&mut self) -> Result<Term, ParseError> {
        self.cur.bump(); // '['
        let node = Term::Blank(self.blanks.fresh());
        self.cur.skip_ws(true);
        if self.cur.eat(']') {
            return Ok(node);
        }
        self.predicate_object_list(&Node::Term(node.clone()))?;
        self.cur.skip_ws(true);
        if !self.cur.eat(']') {
            return Err(self.cur.unexpected("']'"));
        }
        Ok(node)
    }

    fn collection(&mut self) -> Result<Term, ParseError> {
        self.cur.bump(); // '('
        let mut items = Vec::new();
        loop {
            self.cur.skip_ws(true);
            if self.cur.eat(')') {
                break;
            }
            match self.object()? {
                Node::Term(t) => items.push(t),
                Node::Embedded(_) => {
                    return Err(self.cur.error(
                        ParseErrorKind::EmbeddedTriple,
                        "embedded triples cannot be collection members",
                    ))
                }
            }
        }
        if items.is_empty() {
            return Ok(Term::Iri(rdf::nil()));
        }
        let cells: Vec<Term> = items.iter().map(|_| Term::Blank(self.blanks.fresh())).collect();
        for (i, item) in items.into_iter().enumerate() {
            let rest = cells.get(i + 1).cloned().unwrap_or(Term::Iri(rdf::nil()));
            let g = self.graph.clone();
            self.dataset
                .insert(Triple::new(cells[i].clone(), rdf::first(), item).expect("blank subject"), g.clone());
            self.dataset
                .insert(Triple::new(cells[i].clone(), rdf::rest(), rest).expect("blank subject"), g);
        }
        Ok(cells[0].clone())
    }

    /// Looks ahead for `label {` without consuming anything.
    fn label_then_brace(&mut self) -> Result<Option<usize>, ParseError> {
        let save = self.cur.pos;
        let found = match self.cur.peek() {
            Some('[') => {
                self.cur.bump();
                self.cur.skip_ws(true);
                self.cur.eat(']')
            }
            Some('<') if !self.is_embedded_start() => self.cur.iriref(false).is_ok(),
            Some('_') => self.cur.blank_label().is_ok(),
            Some(c) if c == ':' || is_pn_chars_base(c) => {
                while let Some(c) = self.cur.peek() {
                    if is_pn_chars(c) || matches!(c, ':' | '.' | '%' | '\\') {
                        self.cur.bump();
                    } else {
                        break;
                    }
                }
                true
            }
            _ => false,
        };
        let result = if found {
            self.cur.skip_ws(true);
            (self.cur.peek() == Some('{')).then_some(save)
        } else {
            None
        };
        self.cur.pos = save;
        Ok(result)
    }

    fn graph_label(&mut self) -> Result<GraphName, ParseError> {
        let term = match self.cur.peek() {
            Some('[') => {
                self.cur.bump();
                self.cur.skip_ws(true);
                if !self.cur.eat(']') {
                    return Err(self.cur.unexpected("']'"));
                }
                Term::Blank(self.blanks.fresh())
            }
            Some('_') => self.blank_label()?,
            Some('"') | Some('\'') => {
                return Err(self.cur.error(
                    ParseErrorKind::LiteralGraphLabel,
                    "graph label must be an IRI or blank node",
                ))
            }
            _ => Term::Iri(self.iri()?),
        };
        Ok(GraphName::new(term).expect("not a literal"))
    }

    fn graph_block(&mut self) -> Result<bool, ParseError> {
        let name = if self.keyword("graph") {
            self.cur.pos += "graph".len();
            self.cur.skip_ws(true);
            let name = self.graph_label()?;
            self.cur.skip_ws(true);
            if self.cur.peek() != Some('{') {
                return Err(self.cur.unexpected("'{'"));
            }
            Some(name)
        } else if self.cur.peek() == Some('{') {
            None
        } else if self.label_then_brace()?.is_some() {
            let name = self.graph_label()?;
            self.cur.skip_ws(true);
            Some(name)
        } else {
            return Ok(false);
        };
        self.cur.bump(); // '{'
        self.graph = name.clone();
        if let Some(name) = name {
            // an empty block still names a graph
            self.dataset.named_graph_mut(name);
        }
        loop {
            self.cur.skip_ws(true);
            if self.cur.eat('}') {
                break;
            }
            if self.cur.peek() == Some('{') || self.label_then_brace()?.is_some() || self.keyword("graph") {
                return Err(self.cur.error(ParseErrorKind::NestedGraph, "graph blocks cannot nest"));
            }
            if self.cur.at_end() {
                return Err(self.cur.unexpected("'}'"));
            }
            self.triples()?;
            self.cur.skip_ws(true);
            if self.cur.eat('.') {
                continue;
            }
            if self.cur.peek() != Some('}') {
                return Err(self.missing_dot());
            }
        }
        self.graph = None;
        Ok(true)
    }
}
