use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorKind {
    UnexpectedChar,
    UnexpectedEof,
    RelativeIri,
    InvalidIri,
    UnterminatedIri,
    BadEscape,
    UnterminatedLiteral,
    InvalidLanguageTag,
    MissingDot,
    LiteralSubject,
    InvalidPredicate,
    UnknownPrefix,
    InvalidBlankLabel,
    /// `<< … >>` seen while embedded triples are disabled, or used where
    /// they are not supported.
    EmbeddedTriple,
    NestedGraph,
    LiteralGraphLabel,
    /// A line-based statement with a term count other than 3 (or 4 for
    /// N-Quads).
    TermCount,
    /// Numeric or boolean shorthand, which this toolkit does not parse.
    UnsupportedShorthand,
}

impl ParseErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::UnexpectedChar => "unexpected character",
            Self::UnexpectedEof => "unexpected end of input",
            Self::RelativeIri => "relative IRI",
            Self::InvalidIri => "invalid IRI",
            Self::UnterminatedIri => "unterminated IRI",
            Self::BadEscape => "bad escape sequence",
            Self::UnterminatedLiteral => "unterminated literal",
            Self::InvalidLanguageTag => "invalid language tag",
            Self::MissingDot => "missing '.'",
            Self::LiteralSubject => "literal subject",
            Self::InvalidPredicate => "invalid predicate",
            Self::UnknownPrefix => "unknown prefix",
            Self::InvalidBlankLabel => "invalid blank node label",
            Self::EmbeddedTriple => "embedded triple",
            Self::NestedGraph => "nested graph",
            Self::LiteralGraphLabel => "literal graph label",
            Self::TermCount => "wrong number of terms",
            Self::UnsupportedShorthand => "unsupported literal shorthand",
        }
    }
}

/// A syntax error with a 1-based position in the decoded character stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub detail: String,
}

impl ParseError {
    /// Positions `offset` (a byte offset into `src`) on the character that
    /// contains it. Offsets at or past the end are clamped to the last
    /// character so the position always lies inside the text.
    pub(crate) fn at(src: &str, offset: usize, kind: ParseErrorKind, detail: impl Into<String>) -> Self {
        let (line, column) = position(src, offset);
        ParseError {
            line,
            column,
            kind,
            detail: detail.into(),
        }
    }
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let mut offset = offset.min(src.len());
    if offset == src.len() {
        if let Some((i, _)) = src.char_indices().next_back() {
            offset = i;
        }
    }
    while !src.is_char_boundary(offset) {
        offset -= 1;
    }
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    let column = before[line_start..].chars().count() + 1;
    (line, column)
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.kind.as_str())?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
