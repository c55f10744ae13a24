//! Character cursor and the token readers shared by every format.

use std::collections::{HashMap, HashSet};

use super::{ParseError, ParseErrorKind};
use crate::model::{is_valid_blank_label, BlankNode, Iri};

pub(crate) struct Cursor<'a> {
    pub src: &'a str,
    pub pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    pub fn peek_nth(&self, n: usize) -> Option<char> {
        self.rest().chars().nth(n)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    pub fn starts_with(&self, s: &str) -> bool {
        self.rest().starts_with(s)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn eat_str(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    pub fn error(&self, kind: ParseErrorKind, detail: impl Into<String>) -> ParseError {
        ParseError::at(self.src, self.pos, kind, detail)
    }

    pub fn error_at(&self, offset: usize, kind: ParseErrorKind, detail: impl Into<String>) -> ParseError {
        ParseError::at(self.src, offset, kind, detail)
    }

    /// Error for whatever sits at the cursor: end of input or an
    /// unexpected character.
    pub fn unexpected(&self, expected: &str) -> ParseError {
        match self.peek() {
            None => self.error(ParseErrorKind::UnexpectedEof, format!("expected {expected}")),
            Some(c) => self.error(
                ParseErrorKind::UnexpectedChar,
                format!("expected {expected}, found {c:?}"),
            ),
        }
    }

    /// Skips spaces and tabs (and newlines when `newlines`), plus `#`
    /// comments running to end of line.
    pub fn skip_ws(&mut self, newlines: bool) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' => {
                    self.pos += 1;
                }
                '\n' | '\r' if newlines => {
                    self.pos += 1;
                }
                '#' => {
                    while let Some(c) = self.peek() {
                        if c == '\n' || c == '\r' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn hex(&mut self, digits: usize, start: usize) -> Result<char, ParseError> {
        let text = self.rest();
        let hex: String = text.chars().take(digits).collect();
        if hex.len() != digits || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(self.error_at(start, ParseErrorKind::BadEscape, "expected hex digits"));
        }
        self.pos += digits;
        let code = u32::from_str_radix(&hex, 16).expect("checked hex");
        char::from_u32(code).ok_or_else(|| {
            self.error_at(start, ParseErrorKind::BadEscape, format!("invalid code point U+{code:X}"))
        })
    }

    /// After a backslash: `uXXXX` or `UXXXXXXXX`.
    fn uchar(&mut self, start: usize) -> Result<char, ParseError> {
        match self.bump() {
            Some('u') => self.hex(4, start),
            Some('U') => self.hex(8, start),
            _ => Err(self.error_at(start, ParseErrorKind::BadEscape, "expected \\u or \\U")),
        }
    }

    /// `<...>` with UCHAR escapes. Returns the decoded IRI text, unresolved.
    pub fn iriref(&mut self, strict: bool) -> Result<String, ParseError> {
        let start = self.pos;
        if !self.eat('<') {
            return Err(self.unexpected("'<'"));
        }
        let mut out = String::new();
        loop {
            let here = self.pos;
            match self.bump() {
                None | Some('\n') | Some('\r') => {
                    return Err(self.error_at(start, ParseErrorKind::UnterminatedIri, "missing '>'"))
                }
                Some('>') => return Ok(out),
                Some('\\') => out.push(self.uchar(here)?),
                Some(c) => {
                    let forbidden = c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`');
                    if forbidden && strict {
                        return Err(self.error_at(
                            here,
                            ParseErrorKind::InvalidIri,
                            format!("character {c:?} not allowed in an IRI"),
                        ));
                    }
                    out.push(c);
                }
            }
        }
    }

    /// After `_:`, the raw label text (Turtle BLANK_NODE_LABEL shape).
    pub fn blank_label(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        if !self.eat_str("_:") {
            return Err(self.unexpected("'_:'"));
        }
        let label_start = self.pos;
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                self.bump();
            }
            _ => {
                return Err(self.error_at(start, ParseErrorKind::InvalidBlankLabel, "empty blank node label"))
            }
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || c == '.' {
                self.bump();
            } else {
                break;
            }
        }
        // a label never ends in '.'; give trailing dots back
        while self.src[label_start..self.pos].ends_with('.') {
            self.pos -= 1;
        }
        Ok(&self.src[label_start..self.pos])
    }

    /// A quoted string. `turtle` enables the Turtle forms
    /// (`'...'`, `"""..."""`, `'''...'''`) and the full ECHAR set.
    pub fn string(&mut self, turtle: bool) -> Result<String, ParseError> {
        let start = self.pos;
        let (delim, long) = if self.starts_with("\"\"\"") && turtle {
            ("\"\"\"", true)
        } else if self.starts_with("'''") && turtle {
            ("'''", true)
        } else if self.starts_with("\"") {
            ("\"", false)
        } else if self.starts_with("'") && turtle {
            ("'", false)
        } else {
            return Err(self.unexpected("string literal"));
        };
        self.pos += delim.len();
        let mut out = String::new();
        let quote = delim.chars().next().expect("non-empty delimiter");
        loop {
            if long && self.starts_with(delim) && self.peek_nth(3) == Some(quote) {
                // """a"""" ends with a quote character inside the string
                self.bump();
                out.push(quote);
                continue;
            }
            if self.eat_str(delim) {
                return Ok(out);
            }
            let here = self.pos;
            match self.bump() {
                None => {
                    return Err(self.error_at(start, ParseErrorKind::UnterminatedLiteral, "missing closing quote"))
                }
                Some('\n') | Some('\r') if !long => {
                    return Err(self.error_at(start, ParseErrorKind::UnterminatedLiteral, "line break in string"))
                }
                Some('\\') => match self.peek() {
                    Some('t') => { self.bump(); out.push('\t') }
                    Some('n') => { self.bump(); out.push('\n') }
                    Some('r') => { self.bump(); out.push('\r') }
                    Some('"') => { self.bump(); out.push('"') }
                    Some('\\') => { self.bump(); out.push('\\') }
                    Some('b') => { self.bump(); out.push('\u{8}') }
                    Some('f') => { self.bump(); out.push('\u{c}') }
                    Some('\'') => { self.bump(); out.push('\'') }
                    Some('u') | Some('U') => out.push(self.uchar(here)?),
                    _ => {
                        return Err(self.error_at(here, ParseErrorKind::BadEscape, "unknown escape"))
                    }
                },
                Some(c) => out.push(c),
            }
        }
    }

    /// After `@`: `[a-zA-Z]+ ('-' [a-zA-Z0-9]+)*`.
    pub fn lang_tag(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '-' {
                self.bump();
            } else {
                break;
            }
        }
        let tag = &self.src[start..self.pos];
        if crate::model::is_valid_lang_tag(tag) {
            Ok(tag)
        } else {
            Err(self.error_at(start, ParseErrorKind::InvalidLanguageTag, format!("{tag:?}")))
        }
    }
}

pub(crate) fn is_pn_chars_base(c: char) -> bool {
    c.is_ascii_alphabetic() || (!c.is_ascii() && c.is_alphabetic())
}

pub(crate) fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

pub(crate) fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{B7}'
        || ('\u{300}'..='\u{36F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
        || (!c.is_ascii() && c.is_alphanumeric())
}

/// Document-scoped blank node labels.
///
/// Labels from the input are kept verbatim when they are valid and not yet
/// taken by a generated label; everything else (anonymous nodes, invalid or
/// colliding labels) gets a fresh `b{counter}` label.
#[derive(Default)]
pub(crate) struct BlankScope {
    by_label: HashMap<String, BlankNode>,
    used: HashSet<String>,
    counter: usize,
}

impl BlankScope {
    pub fn fresh(&mut self) -> BlankNode {
        loop {
            let label = format!("b{}", self.counter);
            self.counter += 1;
            if self.used.insert(label.clone()) {
                return BlankNode::new(label).expect("generated label is valid");
            }
        }
    }

    /// `None` when the label is invalid and the caller wants strictness.
    pub fn labeled(&mut self, raw: &str, strict: bool) -> Option<BlankNode> {
        if let Some(b) = self.by_label.get(raw) {
            return Some(b.clone());
        }
        let node = if is_valid_blank_label(raw) && !self.used.contains(raw) {
            self.used.insert(raw.to_owned());
            BlankNode::new(raw).expect("validated")
        } else if !is_valid_blank_label(raw) && strict {
            return None;
        } else {
            self.fresh()
        };
        self.by_label.insert(raw.to_owned(), node.clone());
        Some(node)
    }
}

/// Validates and resolves an IRIREF's text. Relative references need a base.
pub(crate) fn absolute_iri(
    cursor: &Cursor<'_>,
    start: usize,
    text: &str,
    base: Option<&Iri>,
) -> Result<Iri, ParseError> {
    if crate::model::has_scheme(text) {
        return Iri::new(text)
            .map_err(|e| cursor.error_at(start, ParseErrorKind::InvalidIri, e.to_string()));
    }
    match base {
        Some(base) => {
            let resolved = super::iri::resolve(base.as_str(), text);
            Iri::new(&resolved)
                .map_err(|e| cursor.error_at(start, ParseErrorKind::InvalidIri, e.to_string()))
        }
        None => Err(cursor.error_at(
            start,
            ParseErrorKind::RelativeIri,
            format!("<{text}> is relative and no base IRI is set"),
        )),
    }
}
