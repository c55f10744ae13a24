use std::collections::BTreeMap;
use std::fmt;

use super::vocab::{rdf, xsd};
use super::{Iri, Literal};

/// A value in the value space of a recognized datatype.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    String(String),
    LangString { text: String, language: String },
    Integer(i128),
    Boolean(bool),
}

/// Outcome of interpreting a literal against a set of recognized datatypes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiteralValue {
    Value(Value),
    /// The datatype is recognized but the lexical form is outside its
    /// lexical space.
    IllTyped,
    /// The datatype is not recognized; the literal denotes only itself.
    Unrecognized,
}

type LexicalToValue = fn(&Literal) -> Option<Value>;

/// A datatype: its IRI plus a deterministic lexical-to-value mapping.
#[derive(Clone)]
pub struct Datatype {
    iri: Iri,
    lexical_to_value: LexicalToValue,
}

impl Datatype {
    pub fn new(iri: Iri, lexical_to_value: LexicalToValue) -> Self {
        Datatype {
            iri,
            lexical_to_value,
        }
    }

    pub fn iri(&self) -> &Iri {
        &self.iri
    }

    /// `None` for a lexical form outside the lexical space.
    pub fn lexical_to_value(&self, literal: &Literal) -> Option<Value> {
        (self.lexical_to_value)(literal)
    }

    pub fn string() -> Self {
        Datatype::new(xsd::string(), |l| {
            Some(Value::String(l.lexical_form().to_owned()))
        })
    }

    pub fn lang_string() -> Self {
        Datatype::new(rdf::lang_string(), |l| {
            l.language().map(|tag| Value::LangString {
                text: l.lexical_form().to_owned(),
                language: tag.to_owned(),
            })
        })
    }

    pub fn integer() -> Self {
        Datatype::new(xsd::integer(), |l| parse_integer(l.lexical_form()).map(Value::Integer))
    }

    pub fn unsigned_int() -> Self {
        Datatype::new(xsd::unsigned_int(), |l| {
            parse_integer(l.lexical_form())
                .filter(|v| (0..=u32::MAX as i128).contains(v))
                .map(Value::Integer)
        })
    }

    pub fn boolean() -> Self {
        Datatype::new(xsd::boolean(), |l| match l.lexical_form() {
            "true" | "1" => Some(Value::Boolean(true)),
            "false" | "0" => Some(Value::Boolean(false)),
            _ => None,
        })
    }

    /// A datatype whose lexical space is every string (value = lexical form).
    /// Used for recognized datatypes configured by IRI only.
    pub fn opaque(iri: Iri) -> Self {
        Datatype::new(iri, |l| Some(Value::String(l.lexical_form().to_owned())))
    }
}

impl fmt::Debug for Datatype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Datatype").field(&self.iri).finish()
    }
}

/// xsd:integer lexical space: optional sign then one or more digits.
fn parse_integer(lexical: &str) -> Option<i128> {
    let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // out-of-range integers are reported ill-typed rather than wrapped
    lexical.parse::<i128>().ok()
}

/// The set D of recognized datatypes.
#[derive(Clone, Debug)]
pub struct DatatypeSet {
    by_iri: BTreeMap<Iri, Datatype>,
}

impl DatatypeSet {
    pub fn empty() -> Self {
        DatatypeSet {
            by_iri: BTreeMap::new(),
        }
    }

    /// `{xsd:string, rdf:langString}`, the minimum every RDF interpretation
    /// recognizes.
    pub fn rdf_minimum() -> Self {
        let mut d = Self::empty();
        d.insert(Datatype::string());
        d.insert(Datatype::lang_string());
        d
    }

    pub fn insert(&mut self, datatype: Datatype) {
        self.by_iri.insert(datatype.iri.clone(), datatype);
    }

    pub fn with(mut self, datatype: Datatype) -> Self {
        self.insert(datatype);
        self
    }

    /// Recognizes `iri`, using a built-in mapping when one exists.
    pub fn recognize(&mut self, iri: Iri) {
        let dt = builtin(&iri).unwrap_or_else(|| Datatype::opaque(iri));
        self.insert(dt);
    }

    pub fn contains(&self, iri: &Iri) -> bool {
        self.by_iri.contains_key(iri)
    }

    pub fn get(&self, iri: &Iri) -> Option<&Datatype> {
        self.by_iri.get(iri)
    }

    pub fn iris(&self) -> impl Iterator<Item = &Iri> + '_ {
        self.by_iri.keys()
    }

    pub fn len(&self) -> usize {
        self.by_iri.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_iri.is_empty()
    }
}

impl Default for DatatypeSet {
    /// `{xsd:string, rdf:langString, xsd:integer, xsd:unsignedInt, xsd:boolean}`.
    fn default() -> Self {
        Self::rdf_minimum()
            .with(Datatype::integer())
            .with(Datatype::unsigned_int())
            .with(Datatype::boolean())
    }
}

fn builtin(iri: &Iri) -> Option<Datatype> {
    [
        Datatype::string(),
        Datatype::lang_string(),
        Datatype::integer(),
        Datatype::unsigned_int(),
        Datatype::boolean(),
    ]
    .into_iter()
    .find(|d| d.iri() == iri)
}

/// Three-way interpretation of `literal` under the recognized set `d`.
pub fn literal_value(literal: &Literal, d: &DatatypeSet) -> LiteralValue {
    match d.get(literal.datatype()) {
        None => LiteralValue::Unrecognized,
        Some(dt) => match dt.lexical_to_value(literal) {
            Some(v) => LiteralValue::Value(v),
            None => LiteralValue::IllTyped,
        },
    }
}
