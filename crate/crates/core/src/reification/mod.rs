//! Statements about statements: five encodings of annotated triples and
//! their inverses.

mod codec;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::model::{BlankNode, Dataset, Graph, Iri, Term, Triple};

pub use codec::{decode, encode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReificationError {
    #[error("an annotated statement needs at least one annotation")]
    NoAnnotations,
    #[error("the rdr scheme needs embedded-triple syntax, which is disabled")]
    EmbeddedSyntaxDisabled,
}

/// A triple plus metadata pairs about it. Annotation order is kept as given.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnotatedStatement {
    base: Triple,
    annotations: Vec<(Iri, Term)>,
}

impl AnnotatedStatement {
    pub fn new(base: Triple, annotations: Vec<(Iri, Term)>) -> Result<Self, ReificationError> {
        if annotations.is_empty() {
            return Err(ReificationError::NoAnnotations);
        }
        Ok(AnnotatedStatement { base, annotations })
    }

    pub fn base(&self) -> &Triple {
        &self.base
    }

    pub fn annotations(&self) -> &[(Iri, Term)] {
        &self.annotations
    }

    /// Annotations sorted and deduplicated: the form that survives a trip
    /// through a graph, which has set semantics.
    pub fn normalized(&self) -> AnnotatedStatement {
        let set: BTreeSet<(Iri, Term)> = self.annotations.iter().cloned().collect();
        AnnotatedStatement {
            base: self.base.clone(),
            annotations: set.into_iter().collect(),
        }
    }
}

/// Statements in a canonical, order-insensitive form. Statements with the
/// same base triple are merged.
pub fn normalize_statements(stmts: &[AnnotatedStatement]) -> Vec<AnnotatedStatement> {
    let mut by_base: BTreeMap<&Triple, BTreeSet<(Iri, Term)>> = BTreeMap::new();
    for s in stmts {
        by_base
            .entry(&s.base)
            .or_default()
            .extend(s.annotations.iter().cloned());
    }
    by_base
        .into_iter()
        .map(|(base, anns)| AnnotatedStatement {
            base: base.clone(),
            annotations: anns.into_iter().collect(),
        })
        .collect()
}

/// `<< base >> predicate object`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarTriple {
    pub base: Triple,
    pub predicate: Iri,
    pub object: Term,
}

/// A graph extended with embedded triples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StarGraph {
    /// Plain triples.
    pub asserted: Graph,
    /// Statements whose subject is an embedded triple.
    pub annotations: BTreeSet<StarTriple>,
    /// Statements `s p << t >>` whose object is an embedded triple.
    pub embedded_objects: BTreeSet<(Term, Iri, Triple)>,
}

impl StarGraph {
    pub fn len(&self) -> usize {
        self.asserted.len() + self.annotations.len() + self.embedded_objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    /// Standard reification with rdf:Statement.
    Sr,
    /// N-ary relations.
    Nr,
    /// Embedded triples in subject position.
    Rdr,
    /// Singleton properties.
    Sp,
    /// One named graph per statement.
    Ng,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Sr, Scheme::Nr, Scheme::Rdr, Scheme::Sp, Scheme::Ng];

    pub fn from_name(name: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Sr => "sr",
            Scheme::Nr => "nr",
            Scheme::Rdr => "rdr",
            Scheme::Sp => "sp",
            Scheme::Ng => "ng",
        }
    }

    /// Whether the base triple appears as an ordinary triple in the output.
    pub fn asserts_base(self) -> bool {
        matches!(self, Scheme::Nr)
    }

    /// Whether each annotation is emitted as its own payload triple, apart
    /// from the scaffolding.
    fn has_payload_triples(self) -> bool {
        matches!(self, Scheme::Sr | Scheme::Sp | Scheme::Ng)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Scaffolding statements needed for `n` singly-annotated statements.
pub fn extra_statement_count(scheme: Scheme, n: usize) -> usize {
    match scheme {
        Scheme::Sr => 4 * n,
        Scheme::Nr | Scheme::Sp => 2 * n,
        Scheme::Rdr | Scheme::Ng => n,
    }
}

/// The output of an encoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Encoded {
    Graph(Graph),
    Star(StarGraph),
    Dataset(Dataset),
}

impl Encoded {
    /// Number of emitted statements (triples, extended triples or quads).
    pub fn statement_count(&self) -> usize {
        match self {
            Encoded::Graph(g) => g.len(),
            Encoded::Star(s) => s.len(),
            Encoded::Dataset(d) => d.quad_count(),
        }
    }
}

/// Emitted statements minus annotation payload minus asserted base triples.
/// Equals [`extra_statement_count`] when every statement has one annotation.
pub fn scaffolding_count(scheme: Scheme, stmts: &[AnnotatedStatement], encoded: &Encoded) -> usize {
    let payload: usize = if scheme.has_payload_triples() {
        stmts.iter().map(|s| s.annotations.len()).sum()
    } else {
        0
    };
    let asserted = if scheme.asserts_base() {
        stmts.iter().map(|s| &s.base).collect::<BTreeSet<_>>().len()
    } else {
        0
    };
    encoded.statement_count() - payload - asserted
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Whether the consumer accepts `<< s p o >>`; the rdr scheme fails
    /// without it.
    pub allow_embedded_triples: bool,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            allow_embedded_triples: true,
        }
    }
}

/// Fresh node generator for one encoding run. Never returns a blank label
/// or IRI that occurs in the input.
#[derive(Debug, Clone)]
pub struct FreshIds {
    prefix: String,
    iri_base: Option<String>,
    next: usize,
    singleton_next: usize,
    taken_labels: HashSet<String>,
    taken_iris: HashSet<String>,
}

impl Default for FreshIds {
    fn default() -> Self {
        FreshIds::new()
    }
}

impl FreshIds {
    /// Blank nodes `_:r0`, `_:r1`, …
    pub fn new() -> Self {
        FreshIds {
            prefix: "r".to_owned(),
            iri_base: None,
            next: 0,
            singleton_next: 1,
            taken_labels: HashSet::new(),
            taken_iris: HashSet::new(),
        }
    }

    /// Mint IRIs `{base}{prefix}{k}` instead of blank nodes for statement
    /// and graph nodes.
    pub fn with_iri_base(mut self, base: &Iri) -> Self {
        self.iri_base = Some(base.as_str().to_owned());
        self
    }

    pub fn with_prefix(mut self, prefix: &str) -> Self {
        self.prefix = prefix.to_owned();
        self
    }

    /// Keeps every blank label and IRI of `g` out of the generated ids, for
    /// output that will sit next to `g`.
    pub fn avoid(&mut self, g: &Graph) -> &mut Self {
        for t in g.iter() {
            self.reserve(t);
        }
        self
    }

    pub(crate) fn reserve(&mut self, t: &Triple) {
        for term in [t.subject(), t.object()] {
            match term {
                Term::Iri(i) => {
                    self.taken_iris.insert(i.as_str().to_owned());
                }
                Term::Blank(b) => {
                    self.taken_labels.insert(b.label().to_owned());
                }
                Term::Literal(_) => {}
            }
        }
        self.taken_iris.insert(t.predicate().as_str().to_owned());
    }

    pub(crate) fn reserve_term(&mut self, term: &Term) {
        match term {
            Term::Iri(i) => {
                self.taken_iris.insert(i.as_str().to_owned());
            }
            Term::Blank(b) => {
                self.taken_labels.insert(b.label().to_owned());
            }
            Term::Literal(_) => {}
        }
    }

    /// A statement, relation or graph node.
    pub fn node(&mut self) -> Term {
        loop {
            let id = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            match &self.iri_base {
                Some(base) => {
                    let iri = format!("{base}{id}");
                    if self.taken_iris.insert(iri.clone()) {
                        return Term::Iri(Iri::new(iri).expect("absolute base"));
                    }
                }
                None => {
                    if self.taken_labels.insert(id.clone()) {
                        return Term::Blank(BlankNode::new(id).expect("valid label"));
                    }
                }
            }
        }
    }

    /// A blank relation node, regardless of the IRI base.
    pub fn blank(&mut self) -> BlankNode {
        loop {
            let id = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.taken_labels.insert(id.clone()) {
                return BlankNode::new(id).expect("valid label");
            }
        }
    }

    /// `{predicate}#{k}` with a run-wide counter starting at 1.
    pub fn singleton(&mut self, predicate: &Iri) -> Iri {
        loop {
            let iri = format!("{}#{}", predicate.as_str(), self.singleton_next);
            self.singleton_next += 1;
            if self.taken_iris.insert(iri.clone()) {
                return Iri::new(iri).expect("absolute predicate");
            }
        }
    }
}

/// What `decode` recognized plus everything it did not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    /// Recognized statements in base-triple order.
    pub statements: Vec<AnnotatedStatement>,
    /// Input statements that are not part of a complete pattern, in the
    /// same shape as the input.
    pub residual: Encoded,
}
