//! RDF 1.1 toolkit: the abstract data model, the Turtle family of syntaxes,
//! blank-node algebra (isomorphism, homomorphism, leanness, merge,
//! skolemization), model theory with rule-based entailment, and statement
//! reification schemes.
//!
//! With the default `parallel` feature, rule closure evaluates each round's
//! matches on the rayon thread pool.

pub mod algebra;
pub mod model;
pub mod reification;
pub mod semantics;
pub mod syntax;

pub use algebra::{
    dataset_isomorphic, find_homomorphism, is_lean, is_well_behaved, isomorphic, merge, skolemize,
    BlankBijection, Budget, BudgetExhausted, TermMapping,
};
pub use model::{BlankNode, Dataset, DatatypeSet, Graph, GraphName, Iri, Literal, PrefixMap, Term, Triple};
pub use semantics::{apply_rules, rdf_entails, rdfs_entails, simple_entails, Regime, RuleSet};
pub use syntax::{Format, ParseError, ParseOptions};
