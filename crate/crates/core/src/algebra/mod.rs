//! Blank-node-aware operations on graphs and datasets.

mod hom;
mod iso;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use crate::model::{BlankNode, Graph, Term, Triple};

pub use hom::{
    find_homomorphism, find_homomorphism_with, is_lean, is_lean_with, lean_witness, SearchStats,
};
pub use iso::{dataset_isomorphic, dataset_isomorphism_with, isomorphic, isomorphic_with};
pub use ops::{
    deskolemize, is_well_behaved, is_well_behaved_with, merge, skolemize, skolemize_with_map,
    SkolemPolicy, GENID_PATH,
};

/// Search steps a caller allows before giving up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    remaining: Option<u64>,
}

/// The step budget ran out before the search reached an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("step budget exhausted")]
pub struct BudgetExhausted;

impl Budget {
    pub fn unlimited() -> Self {
        Budget { remaining: None }
    }

    pub fn steps(n: u64) -> Self {
        Budget { remaining: Some(n) }
    }

    pub fn remaining(&self) -> Option<u64> {
        self.remaining
    }

    pub(crate) fn tick(&mut self) -> Result<(), BudgetExhausted> {
        match &mut self.remaining {
            None => Ok(()),
            Some(0) => Err(BudgetExhausted),
            Some(n) => {
                *n -= 1;
                Ok(())
            }
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

/// A bijection between the blank nodes of two graphs. IRIs and literals map
/// to themselves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlankBijection(BTreeMap<BlankNode, BlankNode>);

impl BlankBijection {
    pub fn identity(g: &Graph) -> Self {
        BlankBijection(g.blank_nodes().into_iter().map(|b| (b.clone(), b)).collect())
    }

    pub fn get(&self, b: &BlankNode) -> Option<&BlankNode> {
        self.0.get(b)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BlankNode, &BlankNode)> + '_ {
        self.0.iter()
    }

    pub fn inverse(&self) -> Self {
        BlankBijection(self.0.iter().map(|(a, b)| (b.clone(), a.clone())).collect())
    }

    /// `other ∘ self`: first self, then other.
    pub fn then(&self, other: &BlankBijection) -> Self {
        BlankBijection(
            self.0
                .iter()
                .map(|(a, b)| (a.clone(), other.0.get(b).cloned().unwrap_or_else(|| b.clone())))
                .collect(),
        )
    }

    pub fn map_term(&self, t: &Term) -> Term {
        match t {
            Term::Blank(b) => Term::Blank(self.0.get(b).cloned().unwrap_or_else(|| b.clone())),
            other => other.clone(),
        }
    }

    pub fn apply(&self, g: &Graph) -> Graph {
        g.iter()
            .map(|t| t.map_nodes(|x| self.map_term(x)).expect("blank stays blank"))
            .collect()
    }
}

impl FromIterator<(BlankNode, BlankNode)> for BlankBijection {
    fn from_iter<I: IntoIterator<Item = (BlankNode, BlankNode)>>(iter: I) -> Self {
        BlankBijection(iter.into_iter().collect())
    }
}

/// A map from blank nodes to arbitrary terms. Unmapped terms are fixed.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TermMapping(BTreeMap<BlankNode, Term>);

impl TermMapping {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, b: BlankNode, t: Term) {
        self.0.insert(b, t);
    }

    pub fn get(&self, b: &BlankNode) -> Option<&Term> {
        self.0.get(b)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BlankNode, &Term)> + '_ {
        self.0.iter()
    }

    /// True iff every mapped blank node maps to itself.
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|(b, t)| t.as_blank() == Some(b))
    }

    pub fn map_term(&self, t: &Term) -> Term {
        match t {
            Term::Blank(b) => self.0.get(b).cloned().unwrap_or_else(|| t.clone()),
            other => other.clone(),
        }
    }

    pub fn apply_triple(&self, t: &Triple) -> Option<Triple> {
        t.map_nodes(|x| self.map_term(x))
    }

    /// `None` when some blank subject is sent to a literal.
    pub fn apply(&self, g: &Graph) -> Option<Graph> {
        g.iter().map(|t| self.apply_triple(t)).collect()
    }
}

impl fmt::Debug for TermMapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl FromIterator<(BlankNode, Term)> for TermMapping {
    fn from_iter<I: IntoIterator<Item = (BlankNode, Term)>>(iter: I) -> Self {
        TermMapping(iter.into_iter().collect())
    }
}
