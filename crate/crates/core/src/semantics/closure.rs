//! Semi-naive forward chaining to the least fixpoint of a rule set.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::rules::{Pattern, Rule, RuleSet, Slot};
use crate::model::{BlankNode, DatatypeSet, Graph, Iri, Literal, Term, Triple};

/// How each round's rule matches are evaluated. Both give the same closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Data-parallel over rules and chunks of the new triples. Runs
    /// sequentially when built without the `parallel` feature.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// New triples handed to one matching task.
const CHUNK: usize = 512;

/// One blank node per distinct literal of `g` whose datatype is in `d`.
///
/// The label is `lv` followed by the hex bytes of the literal's N-Triples
/// form. It is injective and depends on the literal alone, so a closure
/// recomputed over its own output reuses the same surrogates.
pub fn literal_surrogates(g: &Graph, d: &DatatypeSet) -> BTreeMap<Literal, BlankNode> {
    g.iter()
        .filter_map(|t| t.object().as_literal())
        .filter(|l| d.contains(l.datatype()))
        .map(|l| (l.clone(), surrogate_for(l)))
        .collect()
}

fn surrogate_for(l: &Literal) -> BlankNode {
    use std::fmt::Write;
    let text = l.to_string();
    let mut label = String::with_capacity(2 + 2 * text.len());
    label.push_str("lv");
    for byte in text.bytes() {
        write!(label, "{byte:02x}").expect("writing to a String");
    }
    BlankNode::new(label).expect("hex labels are valid")
}

#[derive(Default)]
struct Store {
    set: HashSet<Triple>,
    all: Vec<Triple>,
    by_p: HashMap<Iri, Vec<Triple>>,
    by_ps: HashMap<(Iri, Term), Vec<Triple>>,
    by_po: HashMap<(Iri, Term), Vec<Triple>>,
}

impl Store {
    fn insert(&mut self, t: Triple) -> bool {
        if !self.set.insert(t.clone()) {
            return false;
        }
        let p = t.predicate().clone();
        self.by_p.entry(p.clone()).or_default().push(t.clone());
        self.by_ps.entry((p.clone(), t.subject().clone())).or_default().push(t.clone());
        self.by_po.entry((p, t.object().clone())).or_default().push(t.clone());
        self.all.push(t);
        true
    }

    fn candidates(&self, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> &[Triple] {
        let empty: &[Triple] = &[];
        let p = match p {
            None => return &self.all,
            Some(Term::Iri(p)) => p,
            Some(_) => return empty,
        };
        // the key tuples own their parts, so lookups clone two Arcs
        match (s, o) {
            (Some(s), _) => self.by_ps.get(&(p.clone(), s.clone())).map_or(empty, Vec::as_slice),
            (None, Some(o)) => self.by_po.get(&(p.clone(), o.clone())).map_or(empty, Vec::as_slice),
            (None, None) => self.by_p.get(p).map_or(empty, Vec::as_slice),
        }
    }
}

type Binding = Vec<Option<Term>>;

struct Matcher<'a> {
    store: &'a Store,
    d: &'a DatatypeSet,
    surrogates: &'a BTreeMap<Literal, BlankNode>,
}

fn resolve<'b>(slot: &'b Slot, binding: &'b Binding) -> Option<&'b Term> {
    match slot {
        Slot::Var(v) => binding[*v].as_ref(),
        Slot::Const(t) => Some(t),
        Slot::TypedLiteral { literal, .. } => binding[*literal].as_ref(),
        Slot::Surrogate => None,
    }
}

fn bind_slot(slot: &Slot, term: &Term, binding: &mut Binding) -> bool {
    let set = |v: usize, value: Term, binding: &mut Binding| match &binding[v] {
        Some(bound) => *bound == value,
        None => {
            binding[v] = Some(value);
            true
        }
    };
    match slot {
        Slot::Var(v) => set(*v, term.clone(), binding),
        Slot::Const(t) => t == term,
        Slot::TypedLiteral { literal, datatype } => match term {
            Term::Literal(l) => {
                set(*literal, term.clone(), binding)
                    && set(*datatype, Term::Iri(l.datatype().clone()), binding)
            }
            _ => false,
        },
        Slot::Surrogate => false,
    }
}

fn bind_triple(pattern: &Pattern, t: &Triple, binding: &Binding) -> Option<Binding> {
    let mut next = binding.clone();
    let ok = bind_slot(&pattern.subject, t.subject(), &mut next)
        && bind_slot(&pattern.predicate, &Term::Iri(t.predicate().clone()), &mut next)
        && bind_slot(&pattern.object, t.object(), &mut next);
    ok.then_some(next)
}

impl Matcher<'_> {
    /// Joins the body patterns in `rest` against the whole store.
    fn join(&self, rule: &Rule, rest: &[usize], binding: Binding, out: &mut Vec<Triple>) {
        let Some((&first, tail)) = rest.split_first() else {
            self.emit(rule, &binding, out);
            return;
        };
        let pattern = &rule.body()[first];
        let candidates = self.store.candidates(
            resolve(&pattern.subject, &binding),
            resolve(&pattern.predicate, &binding),
            resolve(&pattern.object, &binding),
        );
        for t in candidates {
            if let Some(next) = bind_triple(pattern, t, &binding) {
                self.join(rule, tail, next, out);
            }
        }
    }

    fn emit(&self, rule: &Rule, binding: &Binding, out: &mut Vec<Triple>) {
        let recognized = |v: &usize| matches!(&binding[*v], Some(Term::Iri(i)) if self.d.contains(i));
        if !rule.recognized().iter().all(recognized) {
            return;
        }
        let surrogate = rule
            .surrogate_source()
            .and_then(|v| binding[v].as_ref())
            .and_then(Term::as_literal)
            .and_then(|l| self.surrogates.get(l))
            .map(|b| Term::Blank(b.clone()));
        for head in rule.head() {
            let term = |slot: &Slot| match slot {
                Slot::Surrogate => surrogate.clone(),
                other => resolve(other, binding).cloned(),
            };
            let (Some(s), Some(p), Some(o)) = (term(&head.subject), term(&head.predicate), term(&head.object))
            else {
                continue;
            };
            // heads that would place a literal as subject are not triples
            if let Ok(t) = Triple::new(s, p, o) {
                if !self.store.set.contains(&t) {
                    out.push(t);
                }
            }
        }
    }

    /// Matches body pattern `pos` against `delta` and the rest against the
    /// store, under every generator assignment.
    fn run_task(&self, rule: &Rule, pos: usize, delta: &[Triple], out: &mut Vec<Triple>) {
        let rest: Vec<usize> = (0..rule.body().len()).filter(|k| *k != pos).collect();
        for seed in self.generator_bindings(rule) {
            for t in delta {
                if let Some(b) = bind_triple(&rule.body()[pos], t, &seed) {
                    self.join(rule, &rest, b, out);
                }
            }
        }
    }

    fn generator_bindings(&self, rule: &Rule) -> Vec<Binding> {
        let mut seeds = vec![vec![None; rule.var_count()]];
        for &v in rule.generators() {
            seeds = seeds
                .into_iter()
                .flat_map(|b| {
                    self.d.iris().map(move |d| {
                        let mut next = b.clone();
                        next[v] = Some(Term::Iri(d.clone()));
                        next
                    })
                })
                .collect();
        }
        seeds
    }
}

/// The closure of `g` under `rules`, recognizing the datatypes in `d`.
pub fn apply_rules(g: &Graph, rules: &RuleSet, d: &DatatypeSet) -> Graph {
    apply_rules_with(g, rules, d, Strategy::default())
}

pub fn apply_rules_with(g: &Graph, rules: &RuleSet, d: &DatatypeSet, strategy: Strategy) -> Graph {
    saturate(g, rules, d, strategy, usize::MAX)
}

/// Triples not in `g` that one application of some rule to `g` derives.
pub fn immediate_consequences(g: &Graph, rules: &RuleSet, d: &DatatypeSet) -> Graph {
    saturate(g, rules, d, Strategy::Sequential, 1)
        .into_iter()
        .filter(|t| !g.contains(t))
        .collect()
}

/// A rule, plus the body position and delta chunk it matches, or nothing
/// for body-less rules.
type Task<'r, 'd> = (&'r Rule, Option<(usize, &'d [Triple])>);

fn saturate(g: &Graph, rules: &RuleSet, d: &DatatypeSet, strategy: Strategy, max_rounds: usize) -> Graph {
    let surrogates = literal_surrogates(g, d);
    let mut store = Store::default();
    for t in g {
        store.insert(t.clone());
    }
    let mut delta: Vec<Triple> = store.all.clone();
    let mut first_round = true;
    let mut rounds = 0;
    while (!delta.is_empty() || first_round) && rounds < max_rounds {
        rounds += 1;
        let matcher = Matcher {
            store: &store,
            d,
            surrogates: &surrogates,
        };
        let mut tasks: Vec<Task> = Vec::new();
        for rule in rules.rules() {
            if rule.body().is_empty() {
                // nothing in the body can change after the first round
                if first_round {
                    tasks.push((rule, None));
                }
                continue;
            }
            for pos in 0..rule.body().len() {
                for chunk in delta.chunks(CHUNK) {
                    tasks.push((rule, Some((pos, chunk))));
                }
            }
        }
        let run = |&(rule, work): &Task| {
            let mut out = Vec::new();
            match work {
                Some((pos, chunk)) => matcher.run_task(rule, pos, chunk, &mut out),
                None => {
                    for seed in matcher.generator_bindings(rule) {
                        matcher.emit(rule, &seed, &mut out);
                    }
                }
            }
            out
        };
        let fresh: BTreeSet<Triple> = match strategy {
            Strategy::Sequential => tasks.iter().flat_map(run).collect(),
            Strategy::Parallel => parallel_collect(&tasks, run),
        };
        first_round = false;
        delta = fresh.into_iter().filter(|t| store.insert(t.clone())).collect();
    }
    store.all.into_iter().collect()
}

#[cfg(feature = "parallel")]
fn parallel_collect<T: Sync>(
    tasks: &[T],
    run: impl Fn(&T) -> Vec<Triple> + Sync + Send,
) -> BTreeSet<Triple> {
    use rayon::prelude::*;
    // the set union is order independent, so the result is deterministic
    tasks
        .par_iter()
        .map(run)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_collect<T>(tasks: &[T], run: impl Fn(&T) -> Vec<Triple>) -> BTreeSet<Triple> {
    tasks.iter().flat_map(run).collect()
}
