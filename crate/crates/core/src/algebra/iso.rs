//! Isomorphism by color refinement with individualization.
//!
//! Graphs and datasets are both flattened to four-slot statements
//! `(s, p, o, g)`; blank nodes may sit in the s, o and g slots. Each named
//! graph also contributes a marker statement so empty named graphs and blank
//! graph names take part in the matching.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use super::{BlankBijection, Budget, BudgetExhausted};
use crate::model::{BlankNode, Dataset, Graph, Term};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Slot {
    Term(Term),
    Default,
    GraphMarker,
}

type Statement = [Slot; 4];

fn graph_statements(g: &Graph, name: &Slot, out: &mut BTreeSet<Statement>) {
    for t in g {
        out.insert([
            Slot::Term(t.subject().clone()),
            Slot::Term(Term::Iri(t.predicate().clone())),
            Slot::Term(t.object().clone()),
            name.clone(),
        ]);
    }
}

fn dataset_statements(ds: &Dataset) -> BTreeSet<Statement> {
    let mut out = BTreeSet::new();
    graph_statements(ds.default_graph(), &Slot::Default, &mut out);
    for (name, g) in ds.named_graphs() {
        let name = Slot::Term(name.term().clone());
        out.insert([name.clone(), Slot::GraphMarker, Slot::GraphMarker, Slot::GraphMarker]);
        graph_statements(g, &name, &mut out);
    }
    out
}

fn blank_of(slot: &Slot) -> Option<&BlankNode> {
    match slot {
        Slot::Term(Term::Blank(b)) => Some(b),
        _ => None,
    }
}

fn hash_of(value: impl Hash) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// One side of the matching problem.
struct Side {
    stmts: BTreeSet<Statement>,
    /// Statements with at least one blank node, as slot codes: a blank
    /// node index or the hash of a fixed term.
    coded: Vec<[Code; 4]>,
    blanks: Vec<BlankNode>,
    index: HashMap<BlankNode, usize>,
    /// For each blank node, the coded statements it occurs in.
    occurrences: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Code {
    Blank(usize),
    Fixed(u64),
}

impl Side {
    fn new(stmts: BTreeSet<Statement>) -> Self {
        let mut index: HashMap<BlankNode, usize> = HashMap::new();
        let mut blanks = Vec::new();
        let mut coded = Vec::new();
        let mut occurrences: Vec<Vec<usize>> = Vec::new();
        for st in &stmts {
            if !st.iter().any(|s| blank_of(s).is_some()) {
                continue;
            }
            let row = coded.len();
            let mut codes = [Code::Fixed(0); 4];
            for (i, slot) in st.iter().enumerate() {
                codes[i] = match blank_of(slot) {
                    Some(b) => {
                        let idx = *index.entry(b.clone()).or_insert_with(|| {
                            blanks.push(b.clone());
                            occurrences.push(Vec::new());
                            blanks.len() - 1
                        });
                        if occurrences[idx].last() != Some(&row) {
                            occurrences[idx].push(row);
                        }
                        Code::Blank(idx)
                    }
                    None => Code::Fixed(hash_of(slot)),
                };
            }
            coded.push(codes);
        }
        Side {
            stmts,
            coded,
            blanks,
            index,
            occurrences,
        }
    }

    fn ground(&self) -> impl Iterator<Item = &Statement> + '_ {
        self.stmts.iter().filter(|st| !st.iter().any(|s| blank_of(s).is_some()))
    }

    /// One refinement round: each node's new color summarizes its old color
    /// and the colored statements around it.
    fn refine_once(&self, colors: &[u64]) -> Vec<u64> {
        (0..self.blanks.len())
            .map(|i| {
                let mut sigs: Vec<u64> = self.occurrences[i]
                    .iter()
                    .map(|&row| {
                        let codes = self.coded[row].map(|c| match c {
                            Code::Blank(j) if j == i => (0u8, 0u64),
                            Code::Blank(j) => (1, colors[j]),
                            Code::Fixed(h) => (2, h),
                        });
                        hash_of(codes)
                    })
                    .collect();
                sigs.sort_unstable();
                hash_of((colors[i], sigs))
            })
            .collect()
    }
}

fn distinct(colors: &[u64]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

fn histogram(colors: &[u64]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Refines both colorings to a joint fixpoint. `None` when the color
/// histograms diverge, which rules out any color-preserving bijection.
fn refine(a: &Side, b: &Side, mut ca: Vec<u64>, mut cb: Vec<u64>) -> Option<(Vec<u64>, Vec<u64>)> {
    loop {
        if histogram(&ca) != histogram(&cb) {
            return None;
        }
        let before = distinct(&ca);
        let na = a.refine_once(&ca);
        let nb = b.refine_once(&cb);
        let stable = distinct(&na) == before;
        ca = na;
        cb = nb;
        if stable {
            return (histogram(&ca) == histogram(&cb)).then_some((ca, cb));
        }
    }
}

struct Matcher<'a> {
    a: &'a Side,
    b: &'a Side,
    budget: &'a mut Budget,
}

impl Matcher<'_> {
    fn verify(&self, map: &[usize]) -> bool {
        self.a.stmts.iter().all(|st| {
            let mapped = st.clone().map(|slot| match blank_of(&slot) {
                Some(x) => Slot::Term(Term::Blank(self.b.blanks[map[self.a.index[x]]].clone())),
                None => slot,
            });
            self.b.stmts.contains(&mapped)
        })
    }

    fn search(
        &mut self,
        ca: Vec<u64>,
        cb: Vec<u64>,
        depth: u64,
    ) -> Result<Option<Vec<usize>>, BudgetExhausted> {
        self.budget.tick()?;
        let hist = histogram(&ca);
        let cell = hist
            .iter()
            .filter(|(_, &n)| n > 1)
            .min_by_key(|(&c, &n)| (n, c))
            .map(|(&c, _)| c);
        let Some(cell) = cell else {
            // discrete coloring: the only candidate bijection
            let by_color: HashMap<u64, usize> = cb.iter().enumerate().map(|(j, &c)| (c, j)).collect();
            let map: Vec<usize> = ca.iter().map(|c| by_color[c]).collect();
            return Ok(self.verify(&map).then_some(map));
        };
        let x = ca.iter().position(|&c| c == cell).expect("cell is non-empty");
        let marker = hash_of((cell, depth, "individualized"));
        for y in (0..cb.len()).filter(|&j| cb[j] == cell) {
            let mut na = ca.clone();
            let mut nb = cb.clone();
            na[x] = marker;
            nb[y] = marker;
            if let Some((ra, rb)) = refine(self.a, self.b, na, nb) {
                if let Some(map) = self.search(ra, rb, depth + 1)? {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }
}

fn solve(
    s1: BTreeSet<Statement>,
    s2: BTreeSet<Statement>,
    budget: &mut Budget,
) -> Result<Option<BlankBijection>, BudgetExhausted> {
    if s1.len() != s2.len() {
        return Ok(None);
    }
    let a = Side::new(s1);
    let b = Side::new(s2);
    if a.blanks.len() != b.blanks.len() || a.coded.len() != b.coded.len() {
        return Ok(None);
    }
    if !a.ground().eq(b.ground()) {
        return Ok(None);
    }
    if a.blanks.is_empty() {
        return Ok(Some(BlankBijection::default()));
    }
    let start = vec![0u64; a.blanks.len()];
    let Some((ca, cb)) = refine(&a, &b, start.clone(), start) else {
        return Ok(None);
    };
    let mut m = Matcher {
        a: &a,
        b: &b,
        budget,
    };
    Ok(m.search(ca, cb, 0)?.map(|map| {
        map.iter()
            .enumerate()
            .map(|(i, &j)| (a.blanks[i].clone(), b.blanks[j].clone()))
            .collect()
    }))
}

/// A blank-node bijection mapping `g1` onto `g2`, if one exists.
pub fn isomorphic(g1: &Graph, g2: &Graph) -> Option<BlankBijection> {
    isomorphic_with(g1, g2, &mut Budget::unlimited()).expect("unlimited budget")
}

pub fn isomorphic_with(
    g1: &Graph,
    g2: &Graph,
    budget: &mut Budget,
) -> Result<Option<BlankBijection>, BudgetExhausted> {
    let mut s1 = BTreeSet::new();
    let mut s2 = BTreeSet::new();
    graph_statements(g1, &Slot::Default, &mut s1);
    graph_statements(g2, &Slot::Default, &mut s2);
    solve(s1, s2, budget)
}

/// True iff one bijection maps the default graph and every named graph,
/// names included, of `ds1` onto those of `ds2`.
pub fn dataset_isomorphic(ds1: &Dataset, ds2: &Dataset) -> bool {
    dataset_isomorphism_with(ds1, ds2, &mut Budget::unlimited())
        .expect("unlimited budget")
        .is_some()
}

pub fn dataset_isomorphism_with(
    ds1: &Dataset,
    ds2: &Dataset,
    budget: &mut Budget,
) -> Result<Option<BlankBijection>, BudgetExhausted> {
    solve(dataset_statements(ds1), dataset_statements(ds2), budget)
}
