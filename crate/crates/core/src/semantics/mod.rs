//! Interpretations, model checking, rule closure and entailment regimes.
//!
//! Entailment is decided by closing the premise under the regime's rules
//! and then searching for a homomorphism from the conclusion.

mod closure;
mod entail;
mod interpretation;
mod rules;

pub use closure::{
    apply_rules, apply_rules_with, immediate_consequences, literal_surrogates, Strategy,
};
pub use entail::{entails, entails_with, rdf_entails, rdfs_entails, simple_entails};
pub use interpretation::{
    check_rdfs_conditions, satisfies_simple, FiniteInterpretation, InterpretationError, Resource,
    UncoveredVocabulary,
};
pub use rules::{
    parse_rule, Pattern, Regime, Rule, RuleErrorKind, RuleParseError, RuleSet, Slot, STANDARD_RULES,
};
