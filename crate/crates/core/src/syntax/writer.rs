//! Turtle, TriG and Turtle-with-embedded-triples writers.
//!
//! Output is canonical: prefixes sorted by prefix, subjects in term order,
//! predicates grouped with `;` and objects with `,`. Blank nodes are written
//! as nested `[ … ]` when the graph is well-behaved and the nodes are not
//! referenced from anywhere else; otherwise every blank node gets its label.

use std::collections::{BTreeMap, BTreeSet};

use super::ntriples::{write_iri, write_literal};
use crate::algebra::is_well_behaved;
use crate::model::vocab::rdf;
use crate::model::{BlankNode, Dataset, Graph, Iri, PrefixMap, Term, Triple};
use crate::reification::StarGraph;

struct Writer<'p> {
    pm: &'p PrefixMap,
    out: String,
}

fn is_safe_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        }
        Some(_) => false,
    }
}

fn blank_set(g: &Graph) -> BTreeSet<BlankNode> {
    g.blank_nodes().into_iter().collect()
}

/// Blank nodes of `g` may be nested iff `g` is well-behaved and none of
/// its blank nodes is referenced outside `g`.
fn can_nest(g: &Graph, external: &BTreeSet<BlankNode>) -> bool {
    is_well_behaved(g) && blank_set(g).is_disjoint(external)
}

impl<'p> Writer<'p> {
    fn new(pm: &'p PrefixMap) -> Self {
        let mut w = Writer {
            pm,
            out: String::new(),
        };
        for (prefix, ns) in pm.iter() {
            w.out.push_str("@prefix ");
            w.out.push_str(prefix);
            w.out.push_str(": ");
            write_iri(&mut w.out, ns);
            w.out.push_str(" .\n");
        }
        w
    }

    fn separate(&mut self) {
        if !self.out.is_empty() && !self.out.ends_with("\n\n") {
            self.out.push('\n');
        }
    }

    fn iri(&mut self, iri: &Iri) {
        match self.pm.compact(iri) {
            Some((prefix, local)) if is_safe_local(local) => {
                self.out.push_str(prefix);
                self.out.push(':');
                self.out.push_str(local);
            }
            _ => write_iri(&mut self.out, iri),
        }
    }

    fn predicate(&mut self, p: &Iri) {
        if *p == rdf::type_() {
            self.out.push('a');
        } else {
            self.iri(p);
        }
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Iri(i) => self.iri(i),
            Term::Blank(b) => {
                self.out.push_str("_:");
                self.out.push_str(b.label());
            }
            Term::Literal(l) => {
                let pm = self.pm;
                write_literal(&mut self.out, l, |out, dt| {
                    let mut w = Writer {
                        pm,
                        out: std::mem::take(out),
                    };
                    w.iri(dt);
                    *out = w.out;
                });
            }
        }
    }

    fn triple_terms(&mut self, t: &Triple) {
        self.term(t.subject());
        self.out.push(' ');
        self.predicate(t.predicate());
        self.out.push(' ');
        self.term(t.object());
    }

    fn graph_body(&mut self, g: &Graph, nest: bool, indent: &str) {
        let mut by_subject: BTreeMap<&Term, Vec<&Triple>> = BTreeMap::new();
        for t in g {
            by_subject.entry(t.subject()).or_default().push(t);
        }
        let inline: BTreeSet<&Term> = if nest {
            g.iter().map(Triple::object).filter(|o| o.is_blank()).collect()
        } else {
            BTreeSet::new()
        };
        let body = Body {
            by_subject: &by_subject,
            inline: &inline,
        };
        for (subject, triples) in &by_subject {
            if inline.contains(subject) {
                continue;
            }
            self.out.push_str(indent);
            if nest && subject.is_blank() {
                self.out.push_str("[]");
            } else {
                self.term(subject);
            }
            self.out.push(' ');
            let sep = format!(" ;\n{indent}    ");
            self.predicate_objects(&body, triples, &sep);
            self.out.push_str(" .\n");
        }
    }

    fn predicate_objects(&mut self, body: &Body<'_, '_>, triples: &[&Triple], sep: &str) {
        let mut last: Option<&Iri> = None;
        for t in triples {
            match last {
                Some(p) if p == t.predicate() => self.out.push_str(", "),
                Some(_) => {
                    self.out.push_str(sep);
                    self.predicate(t.predicate());
                    self.out.push(' ');
                }
                None => {
                    self.predicate(t.predicate());
                    self.out.push(' ');
                }
            }
            last = Some(t.predicate());
            self.object(body, t.object());
        }
    }

    fn object(&mut self, body: &Body<'_, '_>, o: &Term) {
        if !body.inline.contains(o) {
            self.term(o);
            return;
        }
        match body.by_subject.get(o) {
            None => self.out.push_str("[]"),
            Some(triples) => {
                self.out.push_str("[ ");
                self.predicate_objects(body, triples, " ; ");
                self.out.push_str(" ]");
            }
        }
    }
}

struct Body<'a, 'g> {
    by_subject: &'a BTreeMap<&'g Term, Vec<&'g Triple>>,
    inline: &'a BTreeSet<&'g Term>,
}

pub fn serialize_turtle(g: &Graph, pm: &PrefixMap) -> String {
    let mut w = Writer::new(pm);
    if !g.is_empty() {
        w.separate();
        w.graph_body(g, can_nest(g, &BTreeSet::new()), "");
    }
    w.out
}

pub fn serialize_trig(ds: &Dataset, pm: &PrefixMap) -> String {
    let mut w = Writer::new(pm);
    let mut graphs: Vec<(Option<&Term>, &Graph)> = vec![(None, ds.default_graph())];
    graphs.extend(ds.named_graphs().map(|(n, g)| (Some(n.term()), g)));
    let per_graph: Vec<BTreeSet<BlankNode>> = graphs.iter().map(|(_, g)| blank_set(g)).collect();
    let names: BTreeSet<BlankNode> = graphs
        .iter()
        .filter_map(|(n, _)| n.and_then(Term::as_blank).cloned())
        .collect();
    for (i, (name, g)) in graphs.iter().enumerate() {
        if name.is_none() && g.is_empty() {
            continue;
        }
        let mut external = names.clone();
        for (j, blanks) in per_graph.iter().enumerate() {
            if j != i {
                external.extend(blanks.iter().cloned());
            }
        }
        let nest = can_nest(g, &external);
        w.separate();
        match name {
            None => w.graph_body(g, nest, ""),
            Some(name) => {
                w.term(name);
                w.out.push_str(" {\n");
                w.graph_body(g, nest, "    ");
                w.out.push_str("}\n");
            }
        }
    }
    w.out
}

/// Asserted triples, then one `<< s p o >> p o .` line per annotation and
/// one `s p << s p o >> .` line per embedded object.
pub fn serialize_turtle_star(sg: &StarGraph, pm: &PrefixMap) -> String {
    let mut w = Writer::new(pm);
    let mut external = BTreeSet::new();
    let mut note = |t: &Term| {
        if let Term::Blank(b) = t {
            external.insert(b.clone());
        }
    };
    for st in &sg.annotations {
        note(st.base.subject());
        note(st.base.object());
        note(&st.object);
    }
    for (s, _, t) in &sg.embedded_objects {
        note(s);
        note(t.subject());
        note(t.object());
    }
    if !sg.asserted.is_empty() {
        w.separate();
        w.graph_body(&sg.asserted, can_nest(&sg.asserted, &external), "");
    }
    if !sg.annotations.is_empty() || !sg.embedded_objects.is_empty() {
        w.separate();
    }
    for st in &sg.annotations {
        w.out.push_str("<< ");
        w.triple_terms(&st.base);
        w.out.push_str(" >> ");
        w.predicate(&st.predicate);
        w.out.push(' ');
        w.term(&st.object);
        w.out.push_str(" .\n");
    }
    for (s, p, t) in &sg.embedded_objects {
        w.term(s);
        w.out.push(' ');
        w.predicate(p);
        w.out.push_str(" << ");
        w.triple_terms(t);
        w.out.push_str(" >> .\n");
    }
    w.out
}
