use std::fmt;
use std::sync::Arc;

use super::vocab::{rdf, xsd};
use super::ModelError;

/// An absolute IRI.
///
/// Only the presence of a scheme is checked. Equality is codepoint equality
/// of the stored string; no normalization is applied.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(text: impl AsRef<str>) -> Result<Self, ModelError> {
        let text = text.as_ref();
        if text.is_empty() {
            return Err(ModelError::EmptyIri);
        }
        if !has_scheme(text) {
            return Err(ModelError::RelativeIri(text.to_owned()));
        }
        Ok(Iri(Arc::from(text)))
    }

    /// Builds an IRI from a string known to be absolute (vocabulary constants).
    pub(crate) fn from_static(text: &str) -> Self {
        debug_assert!(has_scheme(text), "not absolute: {text}");
        Iri(Arc::from(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// `scheme ":"` where scheme is `ALPHA *( ALPHA / DIGIT / "+" / "-" / "." )`.
pub(crate) fn has_scheme(text: &str) -> bool {
    let Some(colon) = text.find(':') else {
        return false;
    };
    let scheme = &text[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

/// A blank node, identified by a label that is only meaningful inside one
/// document or graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNode(Arc<str>);

impl BlankNode {
    pub fn new(label: impl AsRef<str>) -> Result<Self, ModelError> {
        let label = label.as_ref();
        if is_valid_blank_label(label) {
            Ok(BlankNode(Arc::from(label)))
        } else {
            Err(ModelError::InvalidBlankLabel(label.to_owned()))
        }
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

/// `[A-Za-z0-9][A-Za-z0-9_.-]*`, not ending in `.`.
pub fn is_valid_blank_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphanumeric() => {}
        _ => return false,
    }
    if label.ends_with('.') {
        return false;
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

impl fmt::Debug for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

impl fmt::Display for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// A literal: lexical form, datatype IRI and, for `rdf:langString` only,
/// a lowercased language tag.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
    language: Option<Arc<str>>,
}

impl Literal {
    /// No datatype and no tag gives `xsd:string`. A tag forces
    /// `rdf:langString` and is lowercased.
    pub fn new(
        lexical: impl AsRef<str>,
        datatype: Option<Iri>,
        language: Option<&str>,
    ) -> Result<Self, ModelError> {
        let lexical: Arc<str> = Arc::from(lexical.as_ref());
        match (datatype, language) {
            (None, None) => Ok(Literal {
                lexical,
                datatype: xsd::string(),
                language: None,
            }),
            (Some(dt), None) => {
                if dt == rdf::lang_string() {
                    return Err(ModelError::LangStringWithoutLang);
                }
                Ok(Literal {
                    lexical,
                    datatype: dt,
                    language: None,
                })
            }
            (dt, Some(tag)) => {
                if let Some(dt) = dt {
                    if dt != rdf::lang_string() {
                        return Err(ModelError::LangWithoutLangString(dt.as_str().to_owned()));
                    }
                }
                if !is_valid_lang_tag(tag) {
                    return Err(ModelError::InvalidLanguageTag(tag.to_owned()));
                }
                Ok(Literal {
                    lexical,
                    datatype: rdf::lang_string(),
                    language: Some(Arc::from(tag.to_ascii_lowercase())),
                })
            }
        }
    }

    pub fn simple(lexical: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: xsd::string(),
            language: None,
        }
    }

    pub fn typed(lexical: impl AsRef<str>, datatype: Iri) -> Result<Self, ModelError> {
        Literal::new(lexical, Some(datatype), None)
    }

    pub fn lexical_form(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

/// BCP-47 shape: `[a-zA-Z]+ ('-' [a-zA-Z0-9]+)*`.
pub fn is_valid_lang_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or("");
    if first.is_empty() || !first.chars().all(|c| c.is_ascii_alphabetic()) {
        return false;
    }
    parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        f.write_str(&crate::syntax::escape_string(&self.lexical))?;
        f.write_str("\"")?;
        if let Some(lang) = &self.language {
            write!(f, "@{lang}")
        } else if self.datatype != xsd::string() {
            write!(f, "^^{}", self.datatype)
        } else {
            Ok(())
        }
    }
}

/// An RDF term. Variant order gives the canonical ordering:
/// IRIs before blank nodes before literals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_blank(&self) -> Option<&BlankNode> {
        match self {
            Term::Blank(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(i) => fmt::Display::fmt(i, f),
            Term::Blank(b) => fmt::Display::fmt(b, f),
            Term::Literal(l) => fmt::Display::fmt(l, f),
        }
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

/// An RDF triple. Subjects are IRIs or blank nodes; predicates are IRIs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(
        subject: impl Into<Term>,
        predicate: impl Into<Term>,
        object: impl Into<Term>,
    ) -> Result<Self, ModelError> {
        let subject = subject.into();
        if subject.is_literal() {
            return Err(ModelError::LiteralSubject);
        }
        let predicate = match predicate.into() {
            Term::Iri(i) => i,
            _ => return Err(ModelError::NonIriPredicate),
        };
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    /// Subject, predicate (as a term) and object.
    pub fn terms(&self) -> [Term; 3] {
        [
            self.subject.clone(),
            Term::Iri(self.predicate.clone()),
            self.object.clone(),
        ]
    }

    pub fn has_blank(&self) -> bool {
        self.subject.is_blank() || self.object.is_blank()
    }

    /// Rewrites subject and object through `f`. Returns `None` when the
    /// result would put a literal in subject position.
    pub fn map_nodes(&self, mut f: impl FnMut(&Term) -> Term) -> Option<Triple> {
        let subject = f(&self.subject);
        if subject.is_literal() {
            return None;
        }
        Some(Triple {
            subject,
            predicate: self.predicate.clone(),
            object: f(&self.object),
        })
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
