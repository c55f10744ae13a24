//! Merge, skolemization and well-behavedness.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::model::{BlankNode, Graph, Iri, Term};

/// Path segment between the base and the id of a skolem IRI.
pub const GENID_PATH: &str = "/.well-known/genid/";

/// Union of `g1` and a copy of `g2` whose blank nodes are disjoint from
/// `g1`'s. `g1` keeps its labels; a colliding `g2` label `x` becomes the
/// first free `x_k`.
pub fn merge(g1: &Graph, g2: &Graph) -> Graph {
    let left: HashSet<BlankNode> = g1.blank_nodes().into_iter().collect();
    let right = g2.blank_nodes();
    let mut taken: HashSet<String> = left
        .iter()
        .chain(right.iter())
        .map(|b| b.label().to_owned())
        .collect();
    let mut rename: HashMap<BlankNode, BlankNode> = HashMap::new();
    for b in right {
        if !left.contains(&b) {
            continue;
        }
        let fresh = (1..)
            .map(|k| format!("{}_{k}", b.label()))
            .find(|l| !taken.contains(l))
            .expect("unbounded suffixes");
        taken.insert(fresh.clone());
        rename.insert(b, BlankNode::new(fresh).expect("suffix keeps label valid"));
    }
    let mut out = g1.clone();
    for t in g2 {
        let t = t
            .map_nodes(|x| match x {
                Term::Blank(b) => Term::Blank(rename.get(b).cloned().unwrap_or_else(|| b.clone())),
                other => other.clone(),
            })
            .expect("blank stays blank");
        out.insert(t);
    }
    out
}

/// How skolem IRIs are minted.
#[derive(Debug, Clone)]
pub struct SkolemPolicy {
    base: String,
    deterministic: bool,
    seed: Option<u64>,
}

impl SkolemPolicy {
    /// Ids `b0`, `b1`, … in first-occurrence order.
    pub fn deterministic(base: &Iri) -> Self {
        SkolemPolicy {
            base: base.as_str().trim_end_matches('/').to_owned(),
            deterministic: true,
            seed: None,
        }
    }

    /// 128-bit random hex ids.
    pub fn random(base: &Iri) -> Self {
        SkolemPolicy {
            deterministic: false,
            ..SkolemPolicy::deterministic(base)
        }
    }

    /// Random ids from a fixed seed, for reproducible runs.
    pub fn seeded(base: &Iri, seed: u64) -> Self {
        SkolemPolicy {
            seed: Some(seed),
            ..SkolemPolicy::random(base)
        }
    }

    pub fn is_deterministic(&self) -> bool {
        self.deterministic
    }

    /// `{base}/.well-known/genid/`
    pub fn prefix(&self) -> String {
        format!("{}{GENID_PATH}", self.base)
    }
}

/// Replaces every blank node by a distinct fresh IRI.
pub fn skolemize(g: &Graph, policy: &SkolemPolicy) -> Graph {
    skolemize_with_map(g, policy).0
}

/// [`skolemize`] plus the blank node to IRI assignment it used.
pub fn skolemize_with_map(g: &Graph, policy: &SkolemPolicy) -> (Graph, BTreeMap<BlankNode, Iri>) {
    use rand::{Rng, SeedableRng};

    let prefix = policy.prefix();
    let mut taken: HashSet<String> = g.iris().into_iter().map(|i| i.as_str().to_owned()).collect();
    let mut rng = match policy.seed {
        Some(seed) => rand::rngs::StdRng::seed_from_u64(seed),
        None => rand::rngs::StdRng::from_entropy(),
    };
    let mut counter = 0usize;
    let mut map = BTreeMap::new();
    for b in g.blank_nodes() {
        let iri = loop {
            let id = if policy.deterministic {
                counter += 1;
                format!("b{}", counter - 1)
            } else {
                format!("{:032x}", rng.gen::<u128>())
            };
            let candidate = format!("{prefix}{id}");
            if taken.insert(candidate.clone()) {
                break Iri::new(candidate).expect("base is absolute");
            }
        };
        map.insert(b, iri);
    }
    let out = g
        .iter()
        .map(|t| {
            t.map_nodes(|x| match x {
                Term::Blank(b) => Term::Iri(map[b].clone()),
                other => other.clone(),
            })
            .expect("IRIs are valid subjects")
        })
        .collect();
    (out, map)
}

/// Replaces every IRI under `{base}/.well-known/genid/` by a blank node.
/// New labels are `sk0`, `sk1`, … skipping labels already in `g`.
pub fn deskolemize(g: &Graph, base: &Iri) -> Graph {
    let prefix = format!("{}{GENID_PATH}", base.as_str().trim_end_matches('/'));
    let mut taken: HashSet<String> = g.blank_nodes().iter().map(|b| b.label().to_owned()).collect();
    let mut counter = 0usize;
    let mut map: HashMap<Iri, BlankNode> = HashMap::new();
    let mut rewrite = |t: &Term| -> Term {
        match t {
            Term::Iri(i) if i.as_str().starts_with(&prefix) => {
                let b = map.entry(i.clone()).or_insert_with(|| loop {
                    let label = format!("sk{counter}");
                    counter += 1;
                    if taken.insert(label.clone()) {
                        break BlankNode::new(label).expect("valid label");
                    }
                });
                Term::Blank(b.clone())
            }
            other => other.clone(),
        }
    };
    g.iter()
        .map(|t| t.map_nodes(&mut rewrite).expect("blank subjects are valid"))
        .collect()
}

/// Serializable with nested `[ … ]` only: each blank node is the object of
/// at most one triple and blank subject-to-object links form no cycle.
pub fn is_well_behaved(g: &Graph) -> bool {
    is_well_behaved_with(g, &[])
}

/// [`is_well_behaved`] that also rejects any IRI in `deprecated`.
pub fn is_well_behaved_with(g: &Graph, deprecated: &[Iri]) -> bool {
    if !deprecated.is_empty() {
        let iris = g.iris();
        if deprecated.iter().any(|d| iris.contains(d)) {
            return false;
        }
    }
    let mut as_object: HashSet<&BlankNode> = HashSet::new();
    let mut edges: BTreeMap<&BlankNode, Vec<&BlankNode>> = BTreeMap::new();
    for t in g {
        if let Term::Blank(o) = t.object() {
            if !as_object.insert(o) {
                return false;
            }
            if let Term::Blank(s) = t.subject() {
                edges.entry(s).or_default().push(o);
            }
        }
    }
    // each node has in-degree at most one, so the blank links form a forest
    // unless some walk revisits a node
    let mut done: BTreeSet<&BlankNode> = BTreeSet::new();
    for &start in edges.keys() {
        if done.contains(start) {
            continue;
        }
        let mut on_path: BTreeSet<&BlankNode> = BTreeSet::new();
        let mut stack = vec![(start, 0usize)];
        on_path.insert(start);
        while let Some((node, next)) = stack.pop() {
            let succ = edges.get(node).map_or(&[][..], Vec::as_slice);
            if next < succ.len() {
                stack.push((node, next + 1));
                let child = succ[next];
                if on_path.contains(child) {
                    return false;
                }
                if !done.contains(child) {
                    on_path.insert(child);
                    stack.push((child, 0));
                }
            } else {
                on_path.remove(node);
                done.insert(node);
            }
        }
    }
    true
}
