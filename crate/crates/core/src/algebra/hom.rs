//! Homomorphism search and leanness.

use std::collections::HashMap;

use super::{Budget, BudgetExhausted, TermMapping};
use crate::model::{BlankNode, Graph, Iri, Term, Triple};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Candidate bindings tried by the backtracking search.
    pub nodes_expanded: u64,
}

struct Index<'g> {
    by_p: HashMap<&'g Iri, Vec<&'g Triple>>,
    by_ps: HashMap<(Iri, Term), Vec<&'g Triple>>,
    by_po: HashMap<(Iri, Term), Vec<&'g Triple>>,
}

impl<'g> Index<'g> {
    fn new(g: &'g Graph) -> Self {
        let mut idx = Index {
            by_p: HashMap::new(),
            by_ps: HashMap::new(),
            by_po: HashMap::new(),
        };
        for t in g {
            idx.by_p.entry(t.predicate()).or_default().push(t);
            // owned keys let lookups use terms resolved during the search
            idx.by_ps.entry((t.predicate().clone(), t.subject().clone())).or_default().push(t);
            idx.by_po.entry((t.predicate().clone(), t.object().clone())).or_default().push(t);
        }
        idx
    }
}

enum Candidates<'b, 'g> {
    Known(bool),
    List(&'b [&'g Triple]),
}

impl Candidates<'_, '_> {
    fn len(&self) -> usize {
        match self {
            Candidates::Known(b) => usize::from(*b),
            Candidates::List(l) => l.len(),
        }
    }
}

struct Search<'h, 'g, 'b> {
    g: &'g Graph,
    index: &'b Index<'g>,
    excluded: Option<&'g Triple>,
    binding: HashMap<&'h BlankNode, &'g Term>,
    stats: SearchStats,
    budget: &'b mut Budget,
}

impl<'h, 'g, 'b> Search<'h, 'g, 'b> {
    fn resolve(&self, t: &'h Term) -> Option<Term> {
        match t {
            Term::Blank(b) => self.binding.get(b).map(|x| (*x).clone()),
            other => Some(other.clone()),
        }
    }

    fn present(&self, t: &Triple) -> bool {
        self.g.contains(t) && self.excluded != Some(t)
    }

    fn candidates(&self, pattern: &'h Triple) -> Candidates<'b, 'g> {
        let index: &'b Index<'g> = self.index;
        let p = pattern.predicate();
        match (self.resolve(pattern.subject()), self.resolve(pattern.object())) {
            (Some(s), Some(o)) => {
                let known = !s.is_literal()
                    && self.present(&Triple::new(s, p.clone(), o).expect("subject checked"));
                Candidates::Known(known)
            }
            (Some(s), None) => Candidates::List(
                index.by_ps.get(&(p.clone(), s)).map_or(&[][..], Vec::as_slice),
            ),
            (None, Some(o)) => Candidates::List(
                index.by_po.get(&(p.clone(), o)).map_or(&[][..], Vec::as_slice),
            ),
            (None, None) => Candidates::List(index.by_p.get(p).map_or(&[][..], Vec::as_slice)),
        }
    }

    /// Binds the pattern's unbound blank nodes to `t`'s terms. Returns the
    /// newly bound nodes, or `None` on a clash.
    fn bind(&mut self, pattern: &'h Triple, t: &'g Triple) -> Option<Vec<&'h BlankNode>> {
        let mut fresh = Vec::new();
        for (pat, val) in [(pattern.subject(), t.subject()), (pattern.object(), t.object())] {
            match pat {
                Term::Blank(b) => match self.binding.get(b) {
                    Some(bound) if *bound != val => {
                        for f in &fresh {
                            self.binding.remove(f);
                        }
                        return None;
                    }
                    Some(_) => {}
                    None => {
                        self.binding.insert(b, val);
                        fresh.push(b);
                    }
                },
                fixed if fixed != val => {
                    for f in &fresh {
                        self.binding.remove(f);
                    }
                    return None;
                }
                _ => {}
            }
        }
        Some(fresh)
    }

    fn run(&mut self, pending: &mut Vec<&'h Triple>) -> Result<bool, BudgetExhausted> {
        if pending.is_empty() {
            return Ok(true);
        }
        // most constrained pattern first
        let mut best = 0;
        let mut best_len = usize::MAX;
        for (k, pat) in pending.iter().enumerate() {
            let n = self.candidates(pat).len();
            if n < best_len {
                best = k;
                best_len = n;
                if n == 0 {
                    return Ok(false);
                }
            }
        }
        let pattern = pending.swap_remove(best);
        let found = match self.candidates(pattern) {
            Candidates::Known(true) => self.run(pending)?,
            Candidates::Known(false) => false,
            Candidates::List(list) => {
                let mut found = false;
                for &t in list {
                    if self.excluded == Some(t) {
                        continue;
                    }
                    self.budget.tick()?;
                    self.stats.nodes_expanded += 1;
                    let Some(fresh) = self.bind(pattern, t) else { continue };
                    let ok = self.run(pending)?;
                    if ok {
                        found = true;
                        break;
                    }
                    for f in fresh {
                        self.binding.remove(f);
                    }
                }
                found
            }
        };
        pending.push(pattern);
        let last = pending.len() - 1;
        pending.swap(best, last);
        Ok(found)
    }
}

fn search<'g>(
    h: &Graph,
    g: &'g Graph,
    index: Option<&Index<'g>>,
    excluded: Option<&'g Triple>,
    budget: &mut Budget,
) -> Result<(Option<TermMapping>, SearchStats), BudgetExhausted> {
    let stats = SearchStats::default();
    let present = |t: &Triple| g.contains(t) && excluded != Some(t);
    // ground triples are a plain membership test
    if !h.iter().filter(|t| !t.has_blank()).all(present) {
        return Ok((None, stats));
    }
    let patterns: Vec<&Triple> = h.iter().filter(|t| t.has_blank()).collect();
    if patterns.is_empty() {
        return Ok((Some(TermMapping::new()), stats));
    }
    let owned;
    let index = match index {
        Some(i) => i,
        None => {
            owned = Index::new(g);
            &owned
        }
    };
    let mut s = Search {
        g,
        index,
        excluded,
        binding: HashMap::new(),
        stats,
        budget,
    };
    let mut pending = patterns;
    let found = s.run(&mut pending)?;
    let mapping = found.then(|| {
        s.binding
            .iter()
            .map(|(b, t)| ((*b).clone(), (*t).clone()))
            .collect()
    });
    Ok((mapping, s.stats))
}

/// A map ν from `h`'s blank nodes to terms of `g` with ν(h) ⊆ g.
pub fn find_homomorphism(h: &Graph, g: &Graph) -> Option<TermMapping> {
    find_homomorphism_with(h, g, &mut Budget::unlimited())
        .expect("unlimited budget")
        .0
}

pub fn find_homomorphism_with(
    h: &Graph,
    g: &Graph,
    budget: &mut Budget,
) -> Result<(Option<TermMapping>, SearchStats), BudgetExhausted> {
    search(h, g, None, None, budget)
}

/// A mapping ν with ν(g) a proper subgraph of `g`, if one exists.
///
/// ν(g) ⊊ g holds iff ν(g) ⊆ g ∖ {t} for some triple t; t must contain a
/// blank node, since ground triples are fixed by every ν.
pub fn lean_witness(g: &Graph) -> Option<TermMapping> {
    is_lean_with(g, &mut Budget::unlimited()).expect("unlimited budget")
}

pub fn is_lean(g: &Graph) -> bool {
    lean_witness(g).is_none()
}

/// `Ok(None)` when `g` is lean, `Ok(Some(ν))` with a witness otherwise.
pub fn is_lean_with(g: &Graph, budget: &mut Budget) -> Result<Option<TermMapping>, BudgetExhausted> {
    let index = Index::new(g);
    for t in g.iter().filter(|t| t.has_blank()) {
        if let (Some(nu), _) = search(g, g, Some(&index), Some(t), budget)? {
            return Ok(Some(nu));
        }
    }
    Ok(None)
}
