use std::collections::{BTreeMap, BTreeSet};

use super::{
    AnnotatedStatement, Decoded, EncodeOptions, Encoded, FreshIds, ReificationError, Scheme,
    StarGraph, StarTriple,
};
use crate::model::vocab::rdf;
use crate::model::{Dataset, Graph, GraphName, Iri, Term, Triple};

fn value_predicate(p: &Iri) -> Iri {
    Iri::new(format!("{}-value", p.as_str())).expect("absolute predicate")
}

fn triple(s: impl Into<Term>, p: Iri, o: impl Into<Term>) -> Triple {
    Triple::new(s, p, o).expect("encoder emits valid triples")
}

pub fn encode(
    stmts: &[AnnotatedStatement],
    scheme: Scheme,
    fresh: &mut FreshIds,
    opts: &EncodeOptions,
) -> Result<Encoded, ReificationError> {
    if scheme == Scheme::Rdr && !opts.allow_embedded_triples {
        return Err(ReificationError::EmbeddedSyntaxDisabled);
    }
    for s in stmts {
        fresh.reserve(&s.base);
        for (p, o) in &s.annotations {
            fresh.reserve_term(&Term::Iri(p.clone()));
            fresh.reserve_term(o);
        }
    }
    Ok(match scheme {
        Scheme::Sr => Encoded::Graph(encode_sr(stmts, fresh)),
        Scheme::Nr => Encoded::Graph(encode_nr(stmts, fresh)),
        Scheme::Rdr => Encoded::Star(encode_rdr(stmts)),
        Scheme::Sp => Encoded::Graph(encode_sp(stmts, fresh)),
        Scheme::Ng => Encoded::Dataset(encode_ng(stmts, fresh)),
    })
}

fn encode_sr(stmts: &[AnnotatedStatement], fresh: &mut FreshIds) -> Graph {
    let mut g = Graph::new();
    for s in stmts {
        let node = fresh.node();
        g.insert(triple(node.clone(), rdf::type_(), rdf::statement()));
        g.insert(triple(node.clone(), rdf::subject(), s.base.subject().clone()));
        g.insert(triple(node.clone(), rdf::predicate(), s.base.predicate().clone()));
        g.insert(triple(node.clone(), rdf::object(), s.base.object().clone()));
        for (p, o) in &s.annotations {
            g.insert(triple(node.clone(), p.clone(), o.clone()));
        }
    }
    g
}

fn encode_nr(stmts: &[AnnotatedStatement], fresh: &mut FreshIds) -> Graph {
    let mut g = Graph::new();
    for s in stmts {
        g.insert(s.base.clone());
        for (p, o) in &s.annotations {
            let r = fresh.blank();
            g.insert(triple(s.base.subject().clone(), p.clone(), r.clone()));
            g.insert(triple(r, value_predicate(p), o.clone()));
        }
    }
    g
}

fn encode_rdr(stmts: &[AnnotatedStatement]) -> StarGraph {
    let mut sg = StarGraph::default();
    for s in stmts {
        for (p, o) in &s.annotations {
            sg.annotations.insert(StarTriple {
                base: s.base.clone(),
                predicate: p.clone(),
                object: o.clone(),
            });
        }
    }
    sg
}

fn encode_sp(stmts: &[AnnotatedStatement], fresh: &mut FreshIds) -> Graph {
    let mut g = Graph::new();
    for s in stmts {
        let sp = fresh.singleton(s.base.predicate());
        g.insert(triple(sp.clone(), rdf::singleton_property_of(), s.base.predicate().clone()));
        g.insert(triple(s.base.subject().clone(), sp.clone(), s.base.object().clone()));
        for (p, o) in &s.annotations {
            g.insert(triple(sp.clone(), p.clone(), o.clone()));
        }
    }
    g
}

fn encode_ng(stmts: &[AnnotatedStatement], fresh: &mut FreshIds) -> Dataset {
    let mut ds = Dataset::new();
    for s in stmts {
        let node = fresh.node();
        let name = GraphName::new(node.clone()).expect("fresh nodes are not literals");
        ds.insert(s.base.clone(), Some(name));
        for (p, o) in &s.annotations {
            ds.insert(triple(node.clone(), p.clone(), o.clone()), None);
        }
    }
    ds
}

/// Recognizes complete instances of `scheme`'s pattern. Everything else is
/// returned untouched as the residual.
pub fn decode(data: &Encoded, scheme: Scheme) -> Decoded {
    let (mut statements, residual) = match (scheme, data) {
        (Scheme::Sr | Scheme::Nr | Scheme::Sp, _) => {
            let decode_graph = match scheme {
                Scheme::Sr => decode_sr,
                Scheme::Nr => decode_nr,
                _ => decode_sp,
            };
            match data {
                Encoded::Graph(g) => {
                    let (stmts, rest) = decode_graph(g);
                    (stmts, Encoded::Graph(rest))
                }
                Encoded::Star(sg) => {
                    let (stmts, rest) = decode_graph(&sg.asserted);
                    let mut sg = sg.clone();
                    sg.asserted = rest;
                    (stmts, Encoded::Star(sg))
                }
                Encoded::Dataset(ds) => {
                    let (stmts, rest) = decode_graph(ds.default_graph());
                    let mut ds = ds.clone();
                    *ds.default_graph_mut() = rest;
                    (stmts, Encoded::Dataset(ds))
                }
            }
        }
        (Scheme::Rdr, Encoded::Star(sg)) => decode_rdr(sg),
        (Scheme::Ng, Encoded::Dataset(ds)) => decode_ng(ds),
        (Scheme::Rdr | Scheme::Ng, other) => (Vec::new(), other.clone()),
    };
    statements.sort();
    Decoded {
        statements,
        residual,
    }
}

fn by_subject(g: &Graph) -> BTreeMap<&Term, Vec<&Triple>> {
    let mut map: BTreeMap<&Term, Vec<&Triple>> = BTreeMap::new();
    for t in g {
        map.entry(t.subject()).or_default().push(t);
    }
    map
}

fn single<'g>(triples: &[&'g Triple], p: &Iri) -> Option<&'g Triple> {
    let mut it = triples.iter().filter(|t| t.predicate() == p);
    let first = it.next()?;
    it.next().is_none().then_some(*first)
}

fn decode_sr(g: &Graph) -> (Vec<AnnotatedStatement>, Graph) {
    let subjects = by_subject(g);
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    let is_statement = Term::Iri(rdf::statement());
    for triples in subjects.values() {
        let typed = triples
            .iter()
            .find(|t| *t.predicate() == rdf::type_() && *t.object() == is_statement);
        let Some(typed) = typed else { continue };
        let (Some(s), Some(p), Some(o)) = (
            single(triples, &rdf::subject()),
            single(triples, &rdf::predicate()),
            single(triples, &rdf::object()),
        ) else {
            continue;
        };
        let Some(pred) = p.object().as_iri() else { continue };
        let Ok(base) = Triple::new(s.object().clone(), pred.clone(), o.object().clone()) else {
            continue;
        };
        let scaffold = [*typed, s, p, o];
        let annotations: Vec<(Iri, Term)> = triples
            .iter()
            .filter(|t| !scaffold.contains(t))
            .map(|t| (t.predicate().clone(), t.object().clone()))
            .collect();
        if annotations.is_empty() {
            continue;
        }
        used.extend(triples.iter().copied());
        out.push(AnnotatedStatement { base, annotations });
    }
    (out, residual(g, &used))
}

fn residual(g: &Graph, used: &BTreeSet<&Triple>) -> Graph {
    g.iter().filter(|t| !used.contains(t)).cloned().collect()
}

fn decode_nr(g: &Graph) -> (Vec<AnnotatedStatement>, Graph) {
    // occurrences of every node in subject or object position
    let mut occurrences: BTreeMap<&Term, usize> = BTreeMap::new();
    for t in g {
        *occurrences.entry(t.subject()).or_default() += 1;
        *occurrences.entry(t.object()).or_default() += 1;
    }
    let subjects = by_subject(g);
    // link triple -> value triple, for relation nodes used exactly twice
    let mut links: BTreeMap<&Triple, &Triple> = BTreeMap::new();
    for t in g {
        let r = t.object();
        if r.is_literal() || occurrences.get(r) != Some(&2) || r == t.subject() {
            continue;
        }
        let Some(out) = subjects.get(r) else { continue };
        if let [value] = out.as_slice() {
            if *value.predicate() == value_predicate(t.predicate()) {
                links.insert(t, value);
            }
        }
    }
    let link_values: BTreeSet<&Triple> = links.values().copied().collect();
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for triples in subjects.values() {
        let mine: Vec<&&Triple> = triples.iter().filter(|t| links.contains_key(**t)).collect();
        if mine.is_empty() {
            continue;
        }
        let bases: Vec<&&Triple> = triples
            .iter()
            .filter(|t| !links.contains_key(**t) && !link_values.contains(**t))
            .collect();
        let [base] = bases.as_slice() else { continue };
        let annotations = mine
            .iter()
            .map(|link| (link.predicate().clone(), links[**link].object().clone()))
            .collect();
        used.insert(**base);
        for link in mine {
            used.insert(*link);
            used.insert(links[*link]);
        }
        out.push(AnnotatedStatement {
            base: (**base).clone(),
            annotations,
        });
    }
    (out, residual(g, &used))
}

fn decode_rdr(sg: &StarGraph) -> (Vec<AnnotatedStatement>, Encoded) {
    let mut groups: BTreeMap<&Triple, Vec<(Iri, Term)>> = BTreeMap::new();
    for st in &sg.annotations {
        groups
            .entry(&st.base)
            .or_default()
            .push((st.predicate.clone(), st.object.clone()));
    }
    let stmts = groups
        .into_iter()
        .map(|(base, annotations)| AnnotatedStatement {
            base: base.clone(),
            annotations,
        })
        .collect();
    let rest = StarGraph {
        asserted: sg.asserted.clone(),
        annotations: Default::default(),
        embedded_objects: sg.embedded_objects.clone(),
    };
    (stmts, Encoded::Star(rest))
}

fn decode_sp(g: &Graph) -> (Vec<AnnotatedStatement>, Graph) {
    let subjects = by_subject(g);
    let mut by_predicate: BTreeMap<&Iri, Vec<&Triple>> = BTreeMap::new();
    for t in g {
        by_predicate.entry(t.predicate()).or_default().push(t);
    }
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for link in by_predicate.get(&rdf::singleton_property_of()).into_iter().flatten() {
        let (Term::Iri(sp), Some(original)) = (link.subject(), link.object().as_iri()) else {
            continue;
        };
        let Some([uses]) = by_predicate.get(sp).map(Vec::as_slice) else { continue };
        let Some(own) = subjects.get(link.subject()) else { continue };
        let sp_links = own
            .iter()
            .filter(|t| *t.predicate() == rdf::singleton_property_of())
            .count();
        if sp_links != 1 {
            continue;
        }
        let annotations: Vec<(Iri, Term)> = own
            .iter()
            .filter(|t| t != &link)
            .map(|t| (t.predicate().clone(), t.object().clone()))
            .collect();
        if annotations.is_empty() {
            continue;
        }
        let base = triple(uses.subject().clone(), original.clone(), uses.object().clone());
        used.insert(*link);
        used.insert(*uses);
        used.extend(own.iter().copied());
        out.push(AnnotatedStatement { base, annotations });
    }
    (out, residual(g, &used))
}

fn decode_ng(ds: &Dataset) -> (Vec<AnnotatedStatement>, Encoded) {
    let defaults = by_subject(ds.default_graph());
    let mut used = BTreeSet::new();
    let mut rest = Dataset::new();
    let mut out = Vec::new();
    for (name, g) in ds.named_graphs() {
        let annotations: Vec<(Iri, Term)> = defaults
            .get(name.term())
            .map(|ts| {
                ts.iter()
                    .map(|t| (t.predicate().clone(), t.object().clone()))
                    .collect()
            })
            .unwrap_or_default();
        let mut triples = g.iter();
        match (triples.next(), triples.next()) {
            (Some(base), None) if !annotations.is_empty() => {
                used.extend(defaults[name.term()].iter().copied());
                out.push(AnnotatedStatement {
                    base: base.clone(),
                    annotations,
                });
            }
            _ => {
                *rest.named_graph_mut(name.clone()) = g.clone();
            }
        }
    }
    *rest.default_graph_mut() = residual(ds.default_graph(), &used);
    (out, Encoded::Dataset(rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BlankNode, Literal};
    use crate::reification::{extra_statement_count, normalize_statements, scaffolding_count};

    fn ex(s: &str) -> Iri {
        Iri::new(format!("http://ex.org/{s}")).unwrap()
    }

    fn statements(n: usize) -> Vec<AnnotatedStatement> {
        (0..n)
            .map(|k| {
                let base = triple(ex(&format!("s{k}")), ex("worksAt"), ex("univ"));
                AnnotatedStatement::new(base, vec![(ex("since"), Term::Literal(Literal::simple("2010")))]).unwrap()
            })
            .collect()
    }

    #[test]
    fn counts_match_the_table() {
        for n in [1, 2, 5] {
            let stmts = statements(n);
            for scheme in Scheme::ALL {
                let enc = encode(&stmts, scheme, &mut FreshIds::new(), &EncodeOptions::default()).unwrap();
                assert_eq!(
                    scaffolding_count(scheme, &stmts, &enc),
                    extra_statement_count(scheme, n),
                    "{scheme} n={n}"
                );
            }
        }
    }

    #[test]
    fn decode_inverts_encode() {
        let stmts = statements(3);
        for scheme in Scheme::ALL {
            let enc = encode(&stmts, scheme, &mut FreshIds::new(), &EncodeOptions::default()).unwrap();
            let dec = decode(&enc, scheme);
            assert_eq!(normalize_statements(&dec.statements), normalize_statements(&stmts), "{scheme}");
            assert_eq!(dec.residual.statement_count(), 0, "{scheme}");
        }
    }

    #[test]
    fn rdr_merges_groups_on_the_same_base() {
        let base = triple(ex("s"), ex("p"), ex("o"));
        let a = AnnotatedStatement::new(base.clone(), vec![(ex("src"), Term::Iri(ex("a")))]).unwrap();
        let b = AnnotatedStatement::new(base, vec![(ex("src"), Term::Iri(ex("b")))]).unwrap();
        let enc = encode(&[a.clone(), b], Scheme::Rdr, &mut FreshIds::new(), &EncodeOptions::default()).unwrap();
        let dec = decode(&enc, Scheme::Rdr);
        assert_eq!(dec.statements.len(), 1);
        assert_eq!(dec.statements[0].annotations().len(), 2);
        let sr = encode(&[a], Scheme::Sr, &mut FreshIds::new(), &EncodeOptions::default()).unwrap();
        assert_eq!(decode(&sr, Scheme::Rdr).statements, []);
    }

    #[test]
    fn fresh_nodes_avoid_input_terms() {
        let taken = BlankNode::new("r0").unwrap();
        let base = triple(taken.clone(), ex("p"), ex("o"));
        let stmt = AnnotatedStatement::new(base, vec![(ex("q"), Term::Iri(ex("p#1")))]).unwrap();
        let Encoded::Graph(g) = encode(std::slice::from_ref(&stmt), Scheme::Sr, &mut FreshIds::new(), &EncodeOptions::default())
            .unwrap()
        else {
            panic!("sr emits a graph");
        };
        assert!(g.iter().all(|t| t.subject() != &Term::Blank(taken.clone()) || t.predicate() == &ex("p")));
        let Encoded::Graph(g) = encode(&[stmt], Scheme::Sp, &mut FreshIds::new(), &EncodeOptions::default()).unwrap()
        else {
            panic!("sp emits a graph");
        };
        assert!(g.iter().any(|t| t.predicate() == &ex("p#2")));
    }

    #[test]
    fn errors() {
        let base = triple(ex("s"), ex("p"), ex("o"));
        assert_eq!(AnnotatedStatement::new(base, vec![]), Err(ReificationError::NoAnnotations));
        let opts = EncodeOptions {
            allow_embedded_triples: false,
        };
        assert_eq!(
            encode(&statements(1), Scheme::Rdr, &mut FreshIds::new(), &opts),
            Err(ReificationError::EmbeddedSyntaxDisabled)
        );
    }

    #[test]
    fn incomplete_patterns_stay_in_the_residual() {
        let stmts = statements(1);
        let Encoded::Graph(mut g) = encode(&stmts, Scheme::Sr, &mut FreshIds::new(), &EncodeOptions::default()).unwrap()
        else {
            panic!("sr emits a graph");
        };
        let object_link = g.iter().find(|t| *t.predicate() == rdf::object()).unwrap().clone();
        g.remove(&object_link);
        let dec = decode(&Encoded::Graph(g.clone()), Scheme::Sr);
        assert!(dec.statements.is_empty());
        assert_eq!(dec.residual, Encoded::Graph(g));
    }
}
