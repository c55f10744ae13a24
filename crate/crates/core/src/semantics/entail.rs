//! Entailment as closure followed by homomorphism search.

use super::closure::apply_rules;
use super::rules::{Regime, RuleSet};
use crate::algebra::{find_homomorphism_with, Budget, BudgetExhausted, SearchStats, TermMapping};
use crate::model::{DatatypeSet, Graph};

/// `g ⊨ h`: a map ν of `h`'s blank nodes with ν(h) ⊆ g, if one exists.
/// A ground `h` is decided by membership alone.
pub fn simple_entails(g: &Graph, h: &Graph) -> Option<TermMapping> {
    entails(Regime::Simple, g, h, &DatatypeSet::rdf_minimum())
}

/// Simple entailment from the RDF closure of `g`.
pub fn rdf_entails(g: &Graph, h: &Graph, d: &DatatypeSet) -> Option<TermMapping> {
    entails(Regime::Rdf, g, h, d)
}

/// Simple entailment from the RDFS closure of `g`.
pub fn rdfs_entails(g: &Graph, h: &Graph, d: &DatatypeSet) -> Option<TermMapping> {
    entails(Regime::Rdfs, g, h, d)
}

pub fn entails(regime: Regime, g: &Graph, h: &Graph, d: &DatatypeSet) -> Option<TermMapping> {
    entails_with(regime, g, h, d, &mut Budget::unlimited())
        .expect("unlimited budget")
        .0
}

/// [`entails`] with a step budget on the homomorphism search. The witness
/// maps into the closure of `g`, which may contain literal surrogates.
pub fn entails_with(
    regime: Regime,
    g: &Graph,
    h: &Graph,
    d: &DatatypeSet,
    budget: &mut Budget,
) -> Result<(Option<TermMapping>, SearchStats), BudgetExhausted> {
    if regime == Regime::Simple {
        return find_homomorphism_with(h, g, budget);
    }
    let closure = apply_rules(g, &RuleSet::standard(regime), d);
    find_homomorphism_with(h, &closure, budget)
}
