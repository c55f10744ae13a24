//! Shared fixtures, seeded generators and brute-force oracles.
//!
//! The oracles are written from the definitions alone and share no code
//! with the library's search procedures.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdfkit::model::vocab::{rdf, rdfs, xsd};
use rdfkit::model::{BlankNode, Dataset, Graph, GraphName, Iri, Literal, Term, Triple};
use rdfkit::semantics::{FiniteInterpretation, Resource};
use rdfkit::TermMapping;

pub const FOAF: &str = "http://xmlns.com/foaf/0.1/";

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn ex(local: &str) -> Iri {
    iri(&format!("http://ex.org/{local}"))
}

pub fn foaf(local: &str) -> Iri {
    iri(&format!("{FOAF}{local}"))
}

pub fn blank(label: &str) -> BlankNode {
    BlankNode::new(label).unwrap()
}

pub fn t(s: impl Into<Term>, p: Iri, o: impl Into<Term>) -> Triple {
    Triple::new(s, p, o).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The four-triple FOAF profile used throughout the worked examples.
pub fn profile_graph() -> Graph {
    let js = iri("http://example.com/p#js");
    let univ = iri("http://univ.com/");
    [
        t(js.clone(), rdf::type_(), foaf("Person")),
        t(js.clone(), foaf("name"), Literal::simple("John Smith")),
        t(js, foaf("workplaceHomepage"), univ.clone()),
        t(univ, rdfs::label(), Literal::simple("University")),
    ]
    .into_iter()
    .collect()
}

/// The same profile written with prefixes, `a` and `;`.
pub const PROFILE_TURTLE: &str = r#"@prefix foaf: <http://xmlns.com/foaf/0.1/> .
prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
<http://example.com/p#js> a foaf:Person ;
                          foaf:name "John Smith" ;
                          foaf:workplaceHomepage <http://univ.com/> .
<http://univ.com/> rdfs:label "University" .
"#;

/// The profile as N-Triples lines with every IRI written out.
pub const PROFILE_NTRIPLES: &str = r#"<http://example.com/p#js> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://xmlns.com/foaf/0.1/Person> .
<http://example.com/p#js> <http://xmlns.com/foaf/0.1/workplaceHomepage> <http://univ.com/> .
<http://example.com/p#js> <http://xmlns.com/foaf/0.1/name> "John Smith" .
<http://univ.com/> <http://www.w3.org/2000/01/rdf-schema#label> "University" .
"#;

/// The profile with the person blanked and the name dropped to a blank.
pub fn blanked_profile() -> Graph {
    let x = blank("x");
    let y = blank("y");
    [
        t(x.clone(), rdf::type_(), foaf("Person")),
        t(x, foaf("name"), y),
    ]
    .into_iter()
    .collect()
}

/// Resource names of the profile's interpretation.
pub mod res {
    use super::Resource;

    pub fn upsilon() -> Resource {
        Resource::new("Υ")
    }
    pub fn phi() -> Resource {
        Resource::new("Φ")
    }
    pub fn psi() -> Resource {
        Resource::new("Ψ")
    }
    pub fn omega() -> Resource {
        Resource::new("Ω")
    }
    pub fn alpha() -> Resource {
        Resource::new("α")
    }
    pub fn beta() -> Resource {
        Resource::new("β")
    }
    pub fn gamma() -> Resource {
        Resource::new("γ")
    }
    pub fn delta() -> Resource {
        Resource::new("δ")
    }
    pub fn epsilon() -> Resource {
        Resource::new("ε")
    }
    pub fn property_class() -> Resource {
        Resource::new("π")
    }
}

/// The interpretation of the profile vocabulary, with each extension
/// pairing the subject and object of the triple its property occurs in.
pub fn profile_interpretation() -> FiniteInterpretation {
    use res::*;
    let mut i = FiniteInterpretation::new();
    for r in [upsilon(), phi(), psi(), omega(), alpha(), beta(), gamma(), delta(), epsilon()] {
        i.add_resource(&r);
    }
    i.add_pair(&upsilon(), &alpha(), &beta());
    i.add_pair(&phi(), &alpha(), &gamma());
    i.add_pair(&psi(), &alpha(), &delta());
    i.add_pair(&omega(), &delta(), &epsilon());
    i.map_iri(rdf::type_(), &upsilon())
        .map_iri(foaf("name"), &phi())
        .map_iri(foaf("workplaceHomepage"), &psi())
        .map_iri(rdfs::label(), &omega())
        .map_iri(iri("http://example.com/p#js"), &alpha())
        .map_iri(foaf("Person"), &beta())
        .map_iri(iri("http://univ.com/"), &delta());
    i.map_literal(Literal::simple("John Smith"), &gamma())
        .map_literal(Literal::simple("University"), &epsilon());
    i
}

/// [`profile_interpretation`] plus rdf:Property and the typing that makes
/// membership in P agree with the type extension.
pub fn extended_profile_interpretation() -> FiniteInterpretation {
    use res::*;
    let mut i = profile_interpretation();
    let pc = property_class();
    i.add_resource(&pc);
    i.map_iri(rdf::property(), &pc);
    for p in [upsilon(), phi(), psi(), omega()] {
        i.add_pair(&upsilon(), &p, &pc);
    }
    i
}

/// Knobs for random graphs.
#[derive(Clone, Copy)]
pub struct Shape {
    pub max_triples: usize,
    pub max_blanks: usize,
    pub iris: usize,
    pub predicates: usize,
    pub literal_chance: f64,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_triples: 20,
            max_blanks: 6,
            iris: 4,
            predicates: 3,
            literal_chance: 0.2,
        }
    }
}

/// Literals that stress escaping and datatypes. None contains `_:`.
pub fn literal_pool() -> Vec<Literal> {
    vec![
        Literal::simple("x"),
        Literal::simple("say \"hi\"\n\tback\\slash"),
        Literal::simple("żółw ☃"),
        Literal::typed("1", xsd::unsigned_int()).unwrap(),
        Literal::typed("-7", xsd::integer()).unwrap(),
        Literal::typed("true", xsd::boolean()).unwrap(),
        Literal::new("chat", None, Some("fr")).unwrap(),
        Literal::typed("opaque", ex("dt")).unwrap(),
    ]
}

pub fn random_graph(rng: &mut impl Rng, shape: Shape) -> Graph {
    let blanks: Vec<Term> = (0..rng.gen_range(0..=shape.max_blanks))
        .map(|k| Term::Blank(blank(&format!("n{k}"))))
        .collect();
    let iris: Vec<Term> = (0..shape.iris).map(|k| Term::Iri(ex(&format!("r{k}")))).collect();
    let preds: Vec<Iri> = (0..shape.predicates)
        .map(|k| if k == 0 { rdf::type_() } else { ex(&format!("p{k}")) })
        .collect();
    let literals = literal_pool();
    let target = rng.gen_range(0..=shape.max_triples);
    let mut g = Graph::new();
    let node = |rng: &mut dyn rand::RngCore| -> Term {
        if !blanks.is_empty() && rng.gen_bool(0.5) {
            blanks.choose(rng).unwrap().clone()
        } else {
            iris.choose(rng).unwrap().clone()
        }
    };
    for _ in 0..target * 3 {
        if g.len() >= target {
            break;
        }
        let s = node(rng);
        let p = preds.choose(rng).unwrap().clone();
        let o = if rng.gen_bool(shape.literal_chance) {
            Term::Literal(literals.choose(rng).unwrap().clone())
        } else {
            node(rng)
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}

/// A graph whose blank nodes form trees hanging off IRIs, so it is
/// serializable with nested brackets.
pub fn random_tree_graph(rng: &mut impl Rng, max_blanks: usize) -> Graph {
    let mut g = Graph::new();
    let roots: Vec<Term> = (0..3).map(|k| Term::Iri(ex(&format!("r{k}")))).collect();
    let mut parents: Vec<Term> = roots.clone();
    for k in 0..rng.gen_range(0..=max_blanks) {
        let b = Term::Blank(blank(&format!("t{k}")));
        let parent = parents.choose(rng).unwrap().clone();
        g.insert(Triple::new(parent, ex("child"), b.clone()).unwrap());
        g.insert(Triple::new(b.clone(), ex("label"), Literal::simple(format!("node {k}"))).unwrap());
        parents.push(b);
    }
    for r in &roots {
        if rng.gen_bool(0.5) {
            g.insert(Triple::new(r.clone(), rdf::type_(), ex("Root")).unwrap());
        }
    }
    g
}

pub fn random_dataset(rng: &mut impl Rng, shape: Shape) -> Dataset {
    let mut ds = Dataset::from_default(random_graph(rng, shape));
    for k in 0..rng.gen_range(0..=3) {
        let name = if rng.gen_bool(0.3) {
            GraphName::from(blank(&format!("g{k}")))
        } else {
            GraphName::from(ex(&format!("graph{k}")))
        };
        // reuse default-graph blank labels sometimes so blanks span graphs
        *ds.named_graph_mut(name) = random_graph(rng, shape);
    }
    ds
}

/// Renames every blank node of `g` by a random permutation onto fresh labels.
pub fn relabel(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut blanks = g.blank_nodes();
    let originals = blanks.clone();
    blanks.shuffle(rng);
    let map: BTreeMap<BlankNode, BlankNode> = originals
        .into_iter()
        .zip(blanks)
        .map(|(from, to)| (from, blank(&format!("z_{}", to.label()))))
        .collect();
    g.iter()
        .map(|tr| {
            tr.map_nodes(|x| match x {
                Term::Blank(b) => Term::Blank(map[b].clone()),
                other => other.clone(),
            })
            .unwrap()
        })
        .collect()
}

/// One random local edit: drop, add or rewrite a triple.
pub fn mutate(g: &Graph, rng: &mut impl Rng) -> Graph {
    let mut out = g.clone();
    let triples: Vec<Triple> = g.iter().cloned().collect();
    let extra = t(ex("r0"), ex("p1"), blank("n0"));
    match (rng.gen_range(0..3), triples.choose(rng)) {
        (0, Some(victim)) => {
            out.remove(victim);
        }
        (1, Some(victim)) => {
            out.remove(victim);
            let o = match victim.object() {
                Term::Blank(_) => Term::Iri(ex("r1")),
                _ => Term::Blank(blank("n1")),
            };
            out.insert(Triple::new(victim.subject().clone(), victim.predicate().clone(), o).unwrap());
        }
        _ => {
            out.insert(extra);
        }
    }
    out
}

fn apply(map: &BTreeMap<BlankNode, Term>, tr: &Triple) -> Option<Triple> {
    tr.map_nodes(|x| match x {
        Term::Blank(b) => map.get(b).cloned().unwrap_or_else(|| x.clone()),
        other => other.clone(),
    })
}

fn apply_graph(map: &BTreeMap<BlankNode, Term>, g: &Graph) -> Option<Graph> {
    g.iter().map(|tr| apply(map, tr)).collect()
}

/// Isomorphism by trying every bijection between the blank node sets.
pub fn brute_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    let b1 = g1.blank_nodes();
    let b2 = g2.blank_nodes();
    if g1.len() != g2.len() || b1.len() != b2.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..b2.len()).collect();
    loop {
        let map: BTreeMap<BlankNode, Term> = b1
            .iter()
            .cloned()
            .zip(perm.iter().map(|&k| Term::Blank(b2[k].clone())))
            .collect();
        if apply_graph(&map, g1).as_ref() == Some(g2) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every map from `h`'s blank nodes into the nodes of `g` with ν(h) ⊆ g,
/// stopping at the first accepted by `accept`. Plain enumeration; a
/// triple is checked once all its blank nodes are assigned.
pub fn brute_homomorphism(
    h: &Graph,
    g: &Graph,
    mut accept: impl FnMut(&BTreeMap<BlankNode, Term>) -> bool,
) -> Option<BTreeMap<BlankNode, Term>> {
    let blanks = h.blank_nodes();
    let nodes: Vec<Term> = g.nodes().into_iter().collect();
    let mut map = BTreeMap::new();
    fn go(
        k: usize,
        blanks: &[BlankNode],
        nodes: &[Term],
        h: &Graph,
        g: &Graph,
        map: &mut BTreeMap<BlankNode, Term>,
        accept: &mut dyn FnMut(&BTreeMap<BlankNode, Term>) -> bool,
    ) -> bool {
        let assigned: BTreeSet<&BlankNode> = blanks[..k].iter().collect();
        let ready = |tr: &Triple| {
            [tr.subject(), tr.object()]
                .iter()
                .all(|x| x.as_blank().is_none_or(|b| assigned.contains(b)))
        };
        for tr in h.iter().filter(|tr| ready(tr)) {
            match apply(map, tr) {
                Some(image) if g.contains(&image) => {}
                _ => return false,
            }
        }
        if k == blanks.len() {
            return accept(map);
        }
        for n in nodes {
            map.insert(blanks[k].clone(), n.clone());
            if go(k + 1, blanks, nodes, h, g, map, accept) {
                return true;
            }
        }
        map.remove(&blanks[k]);
        false
    }
    go(0, &blanks, &nodes, h, g, &mut map, &mut accept).then_some(map)
}

/// Leanness by enumeration: `g` is lean iff no ν has ν(g) ⊊ g.
pub fn brute_is_lean(g: &Graph) -> bool {
    brute_homomorphism(g, g, |map| apply_graph(map, g).is_some_and(|img| img.len() < g.len())).is_none()
}

/// ν(g) ⊊ g, checked directly.
pub fn is_proper_endomorphism(nu: &TermMapping, g: &Graph) -> bool {
    let Some(image) = nu.apply(g) else { return false };
    image.is_subset(g) && image.len() < g.len()
}

/// Proptest settings shared by the property suites; regressions are kept
/// next to each test file.
pub fn prop_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: Some(Box::new(proptest::test_runner::FileFailurePersistence::WithSource(
            "regressions",
        ))),
        ..proptest::test_runner::Config::default()
    }
}
