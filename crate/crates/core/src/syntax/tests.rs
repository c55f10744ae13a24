use super::*;
use crate::model::vocab::{rdf, xsd};
use crate::model::{Literal, Term, Triple};

const EXAMPLE_13: &str = r#"@prefix foaf: <http://xmlns.com/foaf/0.1/> .
prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
<http://example.com/p#js> a foaf:Person ;
                          foaf:name "John Smith" ;
                          foaf:workplaceHomepage <http://univ.com/> .
<http://univ.com/> rdfs:label "University" .
"#;

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

fn opts() -> ParseOptions {
    ParseOptions::default()
}

#[test]
fn turtle_directives_and_abbreviations() {
    let g = parse_turtle(EXAMPLE_13, &opts()).unwrap();
    assert_eq!(g.len(), 4);
    assert!(g.contains(
        &Triple::new(
            iri("http://example.com/p#js"),
            rdf::type_(),
            iri("http://xmlns.com/foaf/0.1/Person")
        )
        .unwrap()
    ));
    assert!(g.contains(
        &Triple::new(
            iri("http://univ.com/"),
            iri("http://www.w3.org/2000/01/rdf-schema#label"),
            Literal::simple("University")
        )
        .unwrap()
    ));
}

#[test]
fn directive_case_and_forms() {
    let g = parse_turtle("PREFIX p: <a:>\nBaSe <http://x.org/>\np:s p:p <o> .", &opts()).unwrap();
    let t = g.iter().next().unwrap();
    assert_eq!(t.subject(), &Term::Iri(iri("a:s")));
    assert_eq!(t.object(), &Term::Iri(iri("http://x.org/o")));
    let g = parse_turtle("@prefix p: <a:> . p:s p:p p:o .", &opts()).unwrap();
    assert_eq!(g.len(), 1);
}

#[test]
fn collections_desugar() {
    let g = parse_turtle("<a:s> <a:p> ( <a:x> <a:y> ) .", &opts()).unwrap();
    assert_eq!(g.len(), 5);
    let firsts = g.iter().filter(|t| *t.predicate() == rdf::first()).count();
    let nils = g
        .iter()
        .filter(|t| *t.predicate() == rdf::rest() && t.object() == &Term::Iri(rdf::nil()))
        .count();
    assert_eq!((firsts, nils), (2, 1));
    let g = parse_turtle("<a:s> <a:p> () .", &opts()).unwrap();
    assert_eq!(g.iter().next().unwrap().object(), &Term::Iri(rdf::nil()));
}

#[test]
fn blank_property_lists_and_labels() {
    let g = parse_turtle(
        "_:b0 <a:p> [ <a:q> [ <a:r> \"x\" ] ] . [] <a:p> <a:o> .",
        &opts(),
    )
    .unwrap();
    assert_eq!(g.len(), 4);
    // the user label b0 is kept, fresh nodes skip it
    assert_eq!(g.blank_nodes().len(), 4);
}

#[test]
fn local_names_with_dots_and_escapes() {
    let g = parse_turtle("@prefix p: <a:> . p:s.x p:p p:o.", &opts()).unwrap();
    let t = g.iter().next().unwrap();
    assert_eq!(t.subject(), &Term::Iri(iri("a:s.x")));
    assert_eq!(t.object(), &Term::Iri(iri("a:o")));
    let g = parse_turtle(r"@prefix p: <a:> . p:s p:p p:o\. .", &opts()).unwrap();
    assert_eq!(g.iter().next().unwrap().object(), &Term::Iri(iri("a:o.")));
}

#[test]
fn string_forms() {
    let g = parse_turtle(
        "<a:s> <a:p> 'single', \"\"\"long\nline\"\"\", \"tag\"@EN, \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .",
        &opts(),
    )
    .unwrap();
    assert_eq!(g.len(), 4);
    assert!(g.iter().any(|t| t.object().as_literal().is_some_and(|l| l.language() == Some("en"))));
    assert!(g
        .iter()
        .any(|t| t.object().as_literal().is_some_and(|l| *l.datatype() == xsd::integer())));
}

#[test]
fn turtle_errors() {
    let cases = [
        ("<a:s> <a:p> q:o .", ParseErrorKind::UnknownPrefix),
        ("<a:s> <a:p> \"open .", ParseErrorKind::UnterminatedLiteral),
        ("<s> <a:p> <a:o> .", ParseErrorKind::RelativeIri),
        ("<< <a:s> <a:p> <a:o> >> <a:q> <a:r> .", ParseErrorKind::EmbeddedTriple),
        ("<a:s> <a:p> <a:o>", ParseErrorKind::MissingDot),
        ("<a:s> <a:p> 1 .", ParseErrorKind::UnsupportedShorthand),
        ("<a:s> <a:p> true .", ParseErrorKind::UnsupportedShorthand),
        ("\"x\" <a:p> <a:o> .", ParseErrorKind::LiteralSubject),
        ("<a:s> \"p\" <a:o> .", ParseErrorKind::InvalidPredicate),
        ("<a:s> <a:p> <a:o> . <a:g> { <a:s> <a:p> <a:o> }", ParseErrorKind::UnexpectedChar),
    ];
    for (text, kind) in cases {
        let err = parse_turtle(text, &opts()).unwrap_err();
        assert_eq!(err.kind, kind, "{text:?}: {err}");
        assert!(err.line >= 1 && err.column >= 1);
    }
}

#[test]
fn error_positions_are_inside_text() {
    let err = parse_turtle("<a:s> <a:p>\n  q:o .", &opts()).unwrap_err();
    assert_eq!((err.line, err.column), (2, 3));
    let err = parse_turtle("<a:s> <a:p> <a:o>", &opts()).unwrap_err();
    assert_eq!((err.line, err.column), (1, 17));
}

#[test]
fn trig_blocks() {
    let text = "@prefix foaf: <http://xmlns.com/foaf/0.1/> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
<http://example.com/#people> {
  <http://example.com/p#js> a foaf:Person ;
                            foaf:name \"John Smith\" ;
                            foaf:workplaceHomepage <http://univ.com/> .
  <http://univ.com/> rdfs:label \"University\" .
}";
    let ds = parse_trig(text, &opts()).unwrap();
    assert!(ds.default_graph().is_empty());
    assert_eq!(ds.named_graph_count(), 1);

    let relative = "<#people> { <#js> a <http://xmlns.com/foaf/0.1/Person> }";
    let ds = parse_trig(relative, &opts().with_base(iri("http://example.com/"))).unwrap();
    let (name, g) = ds.named_graphs().next().unwrap();
    assert_eq!(name.term(), &Term::Iri(iri("http://example.com/#people")));
    assert_eq!(g.len(), 1);
}

#[test]
fn trig_union_and_default_blocks() {
    let text = "@prefix ex: <http://ex.org/> .
{ }
ex:g { ex:a ex:p ex:b }
GRAPH ex:g { ex:c ex:p ex:d . }
ex:h { }
_:n { ex:a ex:p ex:b }
ex:x ex:y ex:z .";
    let ds = parse_trig(text, &opts()).unwrap();
    assert_eq!(ds.default_graph().len(), 1);
    assert_eq!(ds.named_graph_count(), 3);
    let g = ds
        .named_graph(&GraphNameFor::iri("http://ex.org/g"))
        .unwrap();
    assert_eq!(g.len(), 2);
}

struct GraphNameFor;
impl GraphNameFor {
    fn iri(s: &str) -> crate::model::GraphName {
        crate::model::GraphName::from(iri(s))
    }
}

#[test]
fn trig_errors() {
    let e = parse_trig("<a:g> { <a:h> { } }", &opts()).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::NestedGraph);
    let e = parse_trig("\"g\" { <a:s> <a:p> <a:o> }", &opts()).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::LiteralGraphLabel);
}

#[test]
fn turtle_is_a_subset_of_trig() {
    let g = parse_turtle(EXAMPLE_13, &opts()).unwrap();
    let ds = parse_trig(EXAMPLE_13, &opts()).unwrap();
    assert_eq!(ds.default_graph(), &g);
    assert_eq!(ds.named_graph_count(), 0);
}

#[test]
fn embedded_triples() {
    let text = "<<<#js> <http://xmlns.com/foaf/0.1/name> \"John Smith\">> <http://ex2.org/certainty> \"0.5\" .";
    let o = opts().with_base(iri("http://example.com/"));
    assert_eq!(
        parse_turtle(text, &o).unwrap_err().kind,
        ParseErrorKind::EmbeddedTriple
    );
    let star = parse_turtle_star(text, &o).unwrap();
    assert!(star.asserted.is_empty());
    assert_eq!(star.annotations.len(), 1);
    let st = star.annotations.iter().next().unwrap();
    assert_eq!(st.base.subject(), &Term::Iri(iri("http://example.com/#js")));

    let text = "<a:s> <a:says> << <a:x> <a:y> <a:z> >> .";
    let star = parse_turtle_star(text, &opts()).unwrap();
    assert_eq!(star.embedded_objects.len(), 1);

    let e = parse_turtle_star("<< << <a:a> <a:b> <a:c> >> <a:y> <a:z> >> <a:p> <a:o> .", &opts())
        .unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::EmbeddedTriple);
}

#[test]
fn turtle_round_trip_with_prefixes() {
    let (g, pm) = parse_turtle_with_prefixes(EXAMPLE_13, &opts()).unwrap();
    let text = serialize_turtle(&g, &pm);
    assert!(text.starts_with("@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n"));
    assert!(text.contains(" a foaf:Person"));
    assert_eq!(parse_turtle(&text, &opts()).unwrap(), g);
    assert_eq!(serialize_turtle(&Graph::new(), &pm).lines().count(), 2);
    assert_eq!(serialize_turtle(&Graph::new(), &PrefixMap::new()), "");
}

#[test]
fn nesting_follows_well_behavedness() {
    let nested = parse_turtle("<a:s> <a:p> [ <a:q> [ <a:r> <a:o> ] ] . [] <a:p> <a:o> .", &opts()).unwrap();
    let text = serialize_turtle(&nested, &PrefixMap::new());
    assert!(!text.contains("_:"), "{text}");
    assert!(crate::algebra::isomorphic(&parse_turtle(&text, &opts()).unwrap(), &nested).is_some());

    let shared = parse_turtle("<a:s> <a:p> _:x . <a:t> <a:p> _:x .", &opts()).unwrap();
    let text = serialize_turtle(&shared, &PrefixMap::new());
    assert!(text.contains("_:x"));
    assert_eq!(parse_turtle(&text, &opts()).unwrap(), shared);
}

#[test]
fn trig_round_trip_shares_blank_nodes_across_graphs() {
    let text = "_:g { _:a <a:p> _:b } _:a <a:q> <a:o> . <a:h> { [] <a:p> <a:o> }";
    let ds = parse_trig(text, &opts()).unwrap();
    let out = serialize_trig(&ds, &PrefixMap::new());
    let back = parse_trig(&out, &opts()).unwrap();
    assert!(crate::algebra::dataset_isomorphic(&ds, &back), "{out}");
}

#[test]
fn star_round_trip() {
    let text = "<a:s> <a:p> <a:o> .\n<< _:x <a:p> \"v\" >> <a:q> _:y .\n<a:s> <a:says> << <a:x> <a:y> <a:z> >> .";
    let star = parse_turtle_star(text, &opts()).unwrap();
    let out = serialize_turtle_star(&star, &PrefixMap::new());
    assert_eq!(parse_turtle_star(&out, &opts()).unwrap(), star);
}

#[test]
fn escaping() {
    assert_eq!(escape_string("a\"b\\c\n\u{1}"), "a\\\"b\\\\c\\n\\u0001");
}

#[test]
fn formats() {
    assert_eq!(Format::from_extension("x/g.TTL"), Some(Format::Turtle));
    assert_eq!(Format::from_extension("g.nq"), Some(Format::NQuads));
    assert_eq!(Format::from_extension("g"), None);
    for f in Format::ALL {
        assert_eq!(Format::from_name(f.name()), Some(f));
    }
}
