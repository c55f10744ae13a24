use std::collections::{BTreeMap, BTreeSet};

use super::{BlankNode, Iri, ModelError, Term, Triple};

/// A finite set of triples, iterated in canonical (subject, predicate,
/// object) order.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    triples: BTreeSet<Triple>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `false` when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn remove(&mut self, triple: &Triple) -> bool {
        self.triples.remove(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    pub fn is_subset(&self, other: &Graph) -> bool {
        self.triples.is_subset(&other.triples)
    }

    /// Set union. Blank nodes with the same label are the same node.
    pub fn union(&self, other: &Graph) -> Graph {
        Graph {
            triples: self.triples.union(&other.triples).cloned().collect(),
        }
    }

    pub fn extend<I: IntoIterator<Item = Triple>>(&mut self, triples: I) {
        self.triples.extend(triples);
    }

    /// True iff no triple mentions a blank node.
    pub fn is_ground(&self) -> bool {
        self.triples.iter().all(|t| !t.has_blank())
    }

    /// Distinct blank nodes in first-occurrence order (subject before
    /// object, triples in canonical order).
    pub fn blank_nodes(&self) -> Vec<BlankNode> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for t in &self.triples {
            for term in [t.subject(), t.object()] {
                if let Term::Blank(b) = term {
                    if seen.insert(b.clone()) {
                        out.push(b.clone());
                    }
                }
            }
        }
        out
    }

    /// Distinct terms in subject or object position.
    pub fn nodes(&self) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            out.insert(t.subject().clone());
            out.insert(t.object().clone());
        }
        out
    }

    /// Every IRI mentioned in any position.
    pub fn iris(&self) -> BTreeSet<Iri> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            out.insert(t.predicate().clone());
            for term in [t.subject(), t.object()] {
                match term {
                    Term::Iri(i) => {
                        out.insert(i.clone());
                    }
                    Term::Literal(l) => {
                        out.insert(l.datatype().clone());
                    }
                    Term::Blank(_) => {}
                }
            }
        }
        out
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
        }
    }
}

impl IntoIterator for Graph {
    type Item = Triple;
    type IntoIter = std::collections::btree_set::IntoIter<Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.into_iter()
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.triples.iter()).finish()
    }
}

/// Set union without blank-node renaming.
pub fn graph_union(g1: &Graph, g2: &Graph) -> Graph {
    g1.union(g2)
}

/// Name of a named graph: an IRI or a blank node.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphName(Term);

impl GraphName {
    pub fn new(term: impl Into<Term>) -> Result<Self, ModelError> {
        let term = term.into();
        if term.is_literal() {
            return Err(ModelError::LiteralGraphName);
        }
        Ok(GraphName(term))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }
}

impl From<Iri> for GraphName {
    fn from(i: Iri) -> Self {
        GraphName(Term::Iri(i))
    }
}

impl From<BlankNode> for GraphName {
    fn from(b: BlankNode) -> Self {
        GraphName(Term::Blank(b))
    }
}

impl std::fmt::Debug for GraphName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(&self.0, f)
    }
}

/// A default graph plus zero or more named graphs.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Dataset {
    default_graph: Graph,
    named: BTreeMap<GraphName, Graph>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_default(graph: Graph) -> Self {
        Dataset {
            default_graph: graph,
            named: BTreeMap::new(),
        }
    }

    pub fn default_graph(&self) -> &Graph {
        &self.default_graph
    }

    pub fn default_graph_mut(&mut self) -> &mut Graph {
        &mut self.default_graph
    }

    pub fn named_graphs(&self) -> impl Iterator<Item = (&GraphName, &Graph)> + '_ {
        self.named.iter()
    }

    pub fn named_graph(&self, name: &GraphName) -> Option<&Graph> {
        self.named.get(name)
    }

    /// The graph for `name`, created empty on first use.
    pub fn named_graph_mut(&mut self, name: GraphName) -> &mut Graph {
        self.named.entry(name).or_default()
    }

    pub fn named_graph_count(&self) -> usize {
        self.named.len()
    }

    /// Adds `triple` to the default graph (`None`) or to the named graph.
    pub fn insert(&mut self, triple: Triple, graph: Option<GraphName>) -> bool {
        match graph {
            None => self.default_graph.insert(triple),
            Some(name) => self.named_graph_mut(name).insert(triple),
        }
    }

    /// Total number of (triple, graph) pairs.
    pub fn quad_count(&self) -> usize {
        self.default_graph.len() + self.named.values().map(Graph::len).sum::<usize>()
    }

    pub fn is_empty(&self) -> bool {
        self.default_graph.is_empty() && self.named.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Literal;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    fn t(s: impl Into<Term>, p: &str, o: impl Into<Term>) -> Triple {
        Triple::new(s, iri(p), o).unwrap()
    }

    #[test]
    fn set_semantics() {
        let mut g = Graph::new();
        assert!(g.insert(t(iri("a:s"), "a:p", iri("a:o"))));
        assert!(!g.insert(t(iri("a:s"), "a:p", iri("a:o"))));
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn union_laws() {
        let g = Graph::from_iter([t(iri("a:s"), "a:p", iri("a:o"))]);
        assert_eq!(graph_union(&g, &Graph::new()), g);
        assert_eq!(graph_union(&g, &g), g);

        let a = BlankNode::new("a").unwrap();
        let g1 = Graph::from_iter([t(a.clone(), "a:p", iri("a:o"))]);
        let g2 = Graph::from_iter([t(a.clone(), "a:p", iri("a:o2"))]);
        let u = graph_union(&g1, &g2);
        assert_eq!(u.len(), 2);
        assert_eq!(u.blank_nodes(), vec![a]);
    }

    #[test]
    fn ground_check() {
        assert!(Graph::new().is_ground());
        let g = Graph::from_iter([
            t(iri("http://example.com/p#js"), "a:p", Literal::simple("John Smith")),
            t(iri("http://univ.com/"), "a:label", Literal::simple("University")),
        ]);
        assert!(g.is_ground());
        let g = Graph::from_iter([t(BlankNode::new("a").unwrap(), "a:p", iri("a:o"))]);
        assert!(!g.is_ground());
    }

    #[test]
    fn dataset_names() {
        assert!(GraphName::new(Literal::simple("x")).is_err());
        let mut ds = Dataset::new();
        let g1 = GraphName::from(iri("a:g1"));
        ds.insert(t(iri("a:s"), "a:p", iri("a:o")), Some(g1.clone()));
        ds.insert(t(iri("a:s"), "a:p", iri("a:o2")), Some(g1.clone()));
        assert_eq!(ds.named_graph_count(), 1);
        assert_eq!(ds.named_graph(&g1).unwrap().len(), 2);
        assert_eq!(ds.quad_count(), 2);
    }
}
