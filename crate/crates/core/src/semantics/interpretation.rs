//! Finite interpretations, model checking and the RDF/RDFS condition audit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::model::vocab::{rdf, rdfs};
use crate::model::{literal_value, BlankNode, DatatypeSet, Graph, Iri, Literal, LiteralValue, Term};

/// An element of a finite universe, identified by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Resource(Arc<str>);

impl Resource {
    pub fn new(name: impl AsRef<str>) -> Self {
        Resource(Arc::from(name.as_ref()))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Pairs = BTreeSet<(Resource, Resource)>;

/// Some term of the graph has no denotation in the structure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("term {0} is not interpreted")]
pub struct UncoveredVocabulary(pub Term);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InterpretationError {
    #[error("the universe is empty")]
    EmptyUniverse,
    #[error("{0} is used but not a resource")]
    UnknownResource(Resource),
}

/// An explicit finite interpretation: universe R, properties P, their
/// extensions, and the denotations of IRIs and literals.
///
/// Class extensions are derived from the extension of `int(rdf:type)`
/// unless overridden.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FiniteInterpretation {
    resources: BTreeSet<Resource>,
    properties: BTreeSet<Resource>,
    ext: BTreeMap<Resource, Pairs>,
    int: BTreeMap<Iri, Resource>,
    lit_val: BTreeMap<Literal, Resource>,
    cext_override: BTreeMap<Resource, BTreeSet<Resource>>,
}

impl FiniteInterpretation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_resource(&mut self, r: &Resource) -> &mut Self {
        self.resources.insert(r.clone());
        self
    }

    /// Declares `p` a property with an empty extension.
    pub fn add_property(&mut self, p: &Resource) -> &mut Self {
        self.properties.insert(p.clone());
        self.ext.entry(p.clone()).or_default();
        self
    }

    /// Adds ⟨x, y⟩ to ext(p); `p` becomes a property, `x` and `y` resources.
    pub fn add_pair(&mut self, p: &Resource, x: &Resource, y: &Resource) -> &mut Self {
        self.add_property(p);
        self.resources.insert(x.clone());
        self.resources.insert(y.clone());
        self.ext.get_mut(p).expect("just added").insert((x.clone(), y.clone()));
        self
    }

    pub fn remove_pair(&mut self, p: &Resource, x: &Resource, y: &Resource) -> bool {
        self.ext
            .get_mut(p)
            .is_some_and(|e| e.remove(&(x.clone(), y.clone())))
    }

    pub fn map_iri(&mut self, iri: Iri, r: &Resource) -> &mut Self {
        self.int.insert(iri, r.clone());
        self
    }

    pub fn map_literal(&mut self, l: Literal, r: &Resource) -> &mut Self {
        self.lit_val.insert(l, r.clone());
        self
    }

    /// Replaces the derived class extension of `class`.
    pub fn set_cext(&mut self, class: &Resource, members: BTreeSet<Resource>) -> &mut Self {
        self.cext_override.insert(class.clone(), members);
        self
    }

    pub fn resources(&self) -> &BTreeSet<Resource> {
        &self.resources
    }

    pub fn properties(&self) -> &BTreeSet<Resource> {
        &self.properties
    }

    /// ext(p), empty when `p` is not a property.
    pub fn ext(&self, p: &Resource) -> &Pairs {
        static EMPTY: Pairs = BTreeSet::new();
        self.ext.get(p).unwrap_or(&EMPTY)
    }

    pub fn int(&self, iri: &Iri) -> Option<&Resource> {
        self.int.get(iri)
    }

    pub fn lit_val(&self, l: &Literal) -> Option<&Resource> {
        self.lit_val.get(l)
    }

    /// {x : ⟨x, y⟩ ∈ ext(int(rdf:type))}.
    pub fn derived_cext(&self, y: &Resource) -> BTreeSet<Resource> {
        let Some(a) = self.int(&rdf::type_()) else {
            return BTreeSet::new();
        };
        self.ext(a)
            .iter()
            .filter(|(_, c)| c == y)
            .map(|(x, _)| x.clone())
            .collect()
    }

    /// The class extension of `y`: the override if one is set, otherwise
    /// the derived one.
    pub fn cext(&self, y: &Resource) -> BTreeSet<Resource> {
        match self.cext_override.get(y) {
            Some(members) => members.clone(),
            None => self.derived_cext(y),
        }
    }

    /// R is non-empty and every resource used by ext, int and lit_val is in
    /// R ∪ P.
    pub fn validate(&self) -> Result<(), InterpretationError> {
        if self.resources.is_empty() {
            return Err(InterpretationError::EmptyUniverse);
        }
        let known = |r: &Resource| self.resources.contains(r) || self.properties.contains(r);
        let used = self
            .int
            .values()
            .chain(self.lit_val.values())
            .chain(self.ext.values().flat_map(|e| e.iter().flat_map(|(x, y)| [x, y])));
        match used.into_iter().find(|r| !known(r)) {
            Some(r) => Err(InterpretationError::UnknownResource(r.clone())),
            None => Ok(()),
        }
    }

    fn denote(&self, t: &Term, alpha: &BTreeMap<&BlankNode, &Resource>) -> Option<Resource> {
        match t {
            Term::Iri(i) => self.int(i).cloned(),
            Term::Literal(l) => self.lit_val(l).cloned(),
            Term::Blank(b) => alpha.get(b).map(|r| (*r).clone()),
        }
    }
}

/// Whether `i` is a model of `g`: some assignment α of `g`'s blank nodes
/// to resources makes every triple hold. Returns that α.
///
/// The search is exhaustive over R^|blanks| with pruning: each triple is
/// checked as soon as its last blank node is assigned.
pub fn satisfies_simple(
    i: &FiniteInterpretation,
    g: &Graph,
) -> Result<Option<BTreeMap<BlankNode, Resource>>, UncoveredVocabulary> {
    for t in g {
        for term in t.terms() {
            let covered = match &term {
                Term::Iri(x) => i.int(x).is_some(),
                Term::Literal(l) => i.lit_val(l).is_some(),
                Term::Blank(_) => true,
            };
            if !covered {
                return Err(UncoveredVocabulary(term));
            }
        }
    }
    let blanks = g.blank_nodes();
    let position: BTreeMap<&BlankNode, usize> = blanks.iter().enumerate().map(|(k, b)| (b, k)).collect();
    // checks[k] holds the triples whose last blank node is blanks[k - 1];
    // checks[0] the ground ones
    let mut checks: Vec<Vec<&crate::model::Triple>> = vec![Vec::new(); blanks.len() + 1];
    for t in g {
        let last = [t.subject(), t.object()]
            .into_iter()
            .filter_map(Term::as_blank)
            .map(|b| position[b] + 1)
            .max()
            .unwrap_or(0);
        checks[last].push(t);
    }
    let holds = |t: &crate::model::Triple, alpha: &BTreeMap<&BlankNode, &Resource>| {
        let p = i.int(t.predicate()).expect("coverage checked");
        let (Some(s), Some(o)) = (i.denote(t.subject(), alpha), i.denote(t.object(), alpha)) else {
            return false;
        };
        i.properties.contains(p) && i.ext(p).contains(&(s, o))
    };
    let universe: Vec<&Resource> = i.resources.iter().collect();
    let mut alpha: BTreeMap<&BlankNode, &Resource> = BTreeMap::new();
    if !checks[0].iter().all(|t| holds(t, &alpha)) {
        return Ok(None);
    }
    // iterative odometer over assignments, depth = number of assigned blanks
    let mut choice = vec![0usize; blanks.len()];
    let mut depth = 0;
    loop {
        if depth == blanks.len() {
            let witness = alpha.iter().map(|(b, r)| ((*b).clone(), (*r).clone())).collect();
            return Ok(Some(witness));
        }
        if choice[depth] == universe.len() {
            choice[depth] = 0;
            alpha.remove(&blanks[depth]);
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        alpha.insert(&blanks[depth], universe[choice[depth]]);
        if checks[depth + 1].iter().all(|t| holds(t, &alpha)) {
            depth += 1;
        } else {
            choice[depth] += 1;
        }
    }
}

/// Names the structure's denotations of the built-in vocabulary.
struct Vocab<'a> {
    i: &'a FiniteInterpretation,
}

impl Vocab<'_> {
    fn get(&self, iri: Iri) -> Option<&Resource> {
        self.i.int(&iri)
    }
}

/// Value space of `dt` relativized to the structure: denotations of the
/// well-typed literals of datatype `dt` that the structure interprets.
fn value_space(i: &FiniteInterpretation, dt: &Iri, d: &DatatypeSet) -> BTreeSet<Resource> {
    i.lit_val
        .iter()
        .filter(|(l, _)| l.datatype() == dt && matches!(literal_value(l, d), LiteralValue::Value(_)))
        .map(|(_, r)| r.clone())
        .collect()
}

fn transitive(pairs: &Pairs) -> bool {
    pairs.iter().all(|(x, y)| {
        pairs
            .range((y.clone(), Resource::new(""))..)
            .take_while(|(y2, _)| y2 == y)
            .all(|(_, z)| pairs.contains(&(x.clone(), z.clone())))
    })
}

/// Audits `i` against the RDF conditions (`rdf-cond-1`, `rdf-cond-2`) and the
/// RDFS conditions (`rdfs-cond-1` … `rdfs-cond-16`); returns the violated
/// ids.
///
/// Quantifiers range over the finite structure: value spaces are the
/// denotations of interpreted literals, conditions over all IRIs range over
/// D, and a condition whose vocabulary is not interpreted is skipped.
/// Conditions 2 and 3 define IC and LV and always hold.
pub fn check_rdfs_conditions(i: &FiniteInterpretation, d: &DatatypeSet) -> Vec<String> {
    let v = Vocab { i };
    let mut violated = Vec::new();
    let mut check = |id: &str, ok: bool| {
        if !ok {
            violated.push(id.to_owned());
        }
    };
    let everything: BTreeSet<Resource> = i.resources.union(&i.properties).cloned().collect();
    let type_ext = v.get(rdf::type_()).map(|a| i.ext(a));
    let has_type = |x: &Resource, c: &Resource| type_ext.is_some_and(|e| e.contains(&(x.clone(), c.clone())));
    let recognized: Vec<(&Iri, &Resource)> = d.iris().filter_map(|dt| i.int(dt).map(|r| (dt, r))).collect();

    if let (Some(_), Some(prop)) = (v.get(rdf::type_()), v.get(rdf::property())) {
        check(
            "rdf-cond-1",
            everything.iter().all(|x| i.properties.contains(x) == has_type(x, prop)),
        );
    }
    if type_ext.is_some() {
        check(
            "rdf-cond-2",
            recognized.iter().all(|(dt, r)| {
                let vs = value_space(i, dt, d);
                everything.iter().all(|x| has_type(x, r) == vs.contains(x))
            }),
        );
    }

    check(
        "rdfs-cond-1",
        i.cext_override.iter().all(|(y, members)| *members == i.derived_cext(y)),
    );
    if let Some(res) = v.get(rdfs::resource()) {
        check("rdfs-cond-4", i.cext(res) == i.resources);
    }
    if let Some(ls) = v.get(rdf::lang_string()) {
        let tagged: BTreeSet<Resource> = i
            .lit_val
            .iter()
            .filter(|(l, _)| l.language().is_some())
            .map(|(_, r)| r.clone())
            .collect();
        check("rdfs-cond-5", i.cext(ls) == tagged);
    }
    check(
        "rdfs-cond-6",
        recognized
            .iter()
            .filter(|(dt, _)| **dt != rdf::lang_string())
            .all(|(dt, r)| i.cext(r) == value_space(i, dt, d)),
    );
    if let Some(dt_class) = v.get(rdfs::datatype()) {
        let datatypes = i.cext(dt_class);
        check("rdfs-cond-7", recognized.iter().all(|(_, r)| datatypes.contains(*r)));
    }
    for (id, prop, subject_side) in [
        ("rdfs-cond-8", v.get(rdfs::domain()), true),
        ("rdfs-cond-9", v.get(rdfs::range()), false),
    ] {
        if let Some(prop) = prop {
            check(
                id,
                i.ext(prop).iter().all(|(x, y)| {
                    let members = i.cext(y);
                    i.ext(x)
                        .iter()
                        .all(|(u, w)| members.contains(if subject_side { u } else { w }))
                }),
            );
        }
    }
    if let Some(spo) = v.get(rdfs::sub_property_of()) {
        let pairs = i.ext(spo);
        let reflexive = i.properties.iter().all(|x| pairs.contains(&(x.clone(), x.clone())));
        check("rdfs-cond-10", transitive(pairs) && reflexive);
        check(
            "rdfs-cond-11",
            pairs.iter().all(|(x, y)| {
                i.properties.contains(x) && i.properties.contains(y) && i.ext(x).is_subset(i.ext(y))
            }),
        );
    }
    let classes = v.get(rdfs::class()).map(|c| i.cext(c));
    if let Some(sco) = v.get(rdfs::sub_class_of()) {
        let pairs = i.ext(sco);
        if let (Some(classes), Some(res)) = (&classes, v.get(rdfs::resource())) {
            check(
                "rdfs-cond-12",
                classes.iter().all(|x| pairs.contains(&(x.clone(), res.clone()))),
            );
        }
        let reflexive = classes
            .as_ref()
            .is_none_or(|cs| cs.iter().all(|x| pairs.contains(&(x.clone(), x.clone()))));
        check("rdfs-cond-13", transitive(pairs) && reflexive);
        check(
            "rdfs-cond-14",
            pairs.iter().all(|(x, y)| {
                let in_c = classes.as_ref().is_none_or(|cs| cs.contains(x) && cs.contains(y));
                in_c && i.cext(x).is_subset(&i.cext(y))
            }),
        );
    }
    if let (Some(cmp), Some(m), Some(spo)) = (
        v.get(rdfs::container_membership_property()),
        v.get(rdfs::member()),
        v.get(rdfs::sub_property_of()),
    ) {
        let pairs = i.ext(spo);
        check(
            "rdfs-cond-15",
            i.cext(cmp).iter().all(|x| pairs.contains(&(x.clone(), m.clone()))),
        );
    }
    if let (Some(dt_class), Some(lit), Some(sco)) = (
        v.get(rdfs::datatype()),
        v.get(rdfs::literal()),
        v.get(rdfs::sub_class_of()),
    ) {
        let pairs = i.ext(sco);
        check(
            "rdfs-cond-16",
            i.cext(dt_class).iter().all(|x| pairs.contains(&(x.clone(), lit.clone()))),
        );
    }
    violated
}
