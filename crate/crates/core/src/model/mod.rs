//! Core value types: terms, triples, graphs, datasets, prefix maps and
//! datatypes.
//!
//! Every value is immutable once built and cheap to clone; term strings are
//! reference counted so graphs share them rather than copying.

mod datatype;
mod graph;
mod prefix;
mod term;
pub mod vocab;

pub use datatype::{literal_value, Datatype, DatatypeSet, LiteralValue, Value};
pub use graph::{graph_union, Dataset, Graph, GraphName};
pub use prefix::{expand_prefixed_name, PrefixMap};
pub use term::{is_valid_blank_label, is_valid_lang_tag, BlankNode, Iri, Literal, Term, Triple};

pub(crate) use term::has_scheme;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("empty IRI")]
    EmptyIri,
    #[error("relative IRI <{0}> (no scheme)")]
    RelativeIri(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankLabel(String),
    #[error("language tag given with datatype <{0}>; only rdf:langString carries a tag")]
    LangWithoutLangString(String),
    #[error("rdf:langString literal without a language tag")]
    LangStringWithoutLang,
    #[error("invalid language tag {0:?}")]
    InvalidLanguageTag(String),
    #[error("literal in subject position")]
    LiteralSubject,
    #[error("predicate is not an IRI")]
    NonIriPredicate,
    #[error("literal used as a graph name")]
    LiteralGraphName,
    #[error("unknown prefix {0:?}")]
    UnknownPrefix(String),
    #[error("malformed prefixed name {0:?}")]
    MalformedName(String),
}

/// `make_iri`.
pub fn make_iri(text: &str) -> Result<Iri, ModelError> {
    Iri::new(text)
}

/// `make_literal`.
pub fn make_literal(
    lexical: &str,
    datatype: Option<Iri>,
    lang: Option<&str>,
) -> Result<Literal, ModelError> {
    Literal::new(lexical, datatype, lang)
}

/// `make_triple`.
pub fn make_triple(s: Term, p: Term, o: Term) -> Result<Triple, ModelError> {
    Triple::new(s, p, o)
}

/// True iff no triple of `g` contains a blank node.
pub fn is_ground(g: &Graph) -> bool {
    g.is_ground()
}
