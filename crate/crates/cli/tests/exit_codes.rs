//! Drives `run` in-process and checks every predicate subcommand's exit
//! code against the library's answer.

use std::io::Cursor;

use rdfkit::model::DatatypeSet;
use rdfkit::semantics::{entails, Regime};
use rdfkit::syntax::parse_ntriples;
use rdfkit::{is_lean, is_well_behaved, isomorphic};
use rdfkit_cli::run;
use tempfile::TempDir;

const GRAPHS: [&str; 6] = [
    "",
    "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\n",
    "<http://ex.org/a> <http://ex.org/p> _:x .\n",
    "<http://ex.org/a> <http://ex.org/p> _:x .\n<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .\n",
    "_:x <http://ex.org/p> _:y .\n_:y <http://ex.org/p> _:x .\n",
    "_:x <http://ex.org/p> _:x .\n<http://ex.org/p> <http://www.w3.org/2000/01/rdf-schema#domain> <http://ex.org/C> .\n",
];

fn exit(args: &[&str]) -> i32 {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let argv = std::iter::once("rdfkit").chain(args.iter().copied());
    run(argv, &mut Cursor::new(Vec::new()), &mut stdout, &mut stderr)
}

fn code(answer: bool) -> i32 {
    if answer {
        0
    } else {
        1
    }
}

#[test]
fn predicate_exit_codes_match_the_library() {
    let dir = TempDir::new().unwrap();
    let paths: Vec<String> = GRAPHS
        .iter()
        .enumerate()
        .map(|(k, text)| {
            let path = dir.path().join(format!("g{k}.nt"));
            std::fs::write(&path, text).unwrap();
            path.display().to_string()
        })
        .collect();
    let graphs: Vec<_> = GRAPHS.iter().map(|text| parse_ntriples(text).unwrap()).collect();
    let d = DatatypeSet::default();
    for (g, gp) in graphs.iter().zip(&paths) {
        assert_eq!(exit(&["lean", gp]), code(is_lean(g)), "lean {gp}");
        assert_eq!(exit(&["wellbehaved", gp]), code(is_well_behaved(g)), "wellbehaved {gp}");
        for (h, hp) in graphs.iter().zip(&paths) {
            assert_eq!(exit(&["isomorphic", gp, hp]), code(isomorphic(g, h).is_some()));
            for regime in Regime::ALL {
                let expected = code(entails(regime, g, h, &d).is_some());
                assert_eq!(exit(&["entails", "--regime", regime.name(), gp, hp]), expected, "{regime} {gp} {hp}");
            }
        }
    }
}

#[test]
fn run_reads_stdin_and_keeps_diagnostics_off_stdout() {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let input = Cursor::new(GRAPHS[3].as_bytes().to_vec());
    let argv = ["rdfkit", "convert", "--from", "nt", "--to", "ttl"];
    assert_eq!(run(argv, &mut input.clone(), &mut stdout, &mut stderr), 0);
    assert_eq!(String::from_utf8(stdout).unwrap(), "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b>, [] .\n");
    assert!(stderr.is_empty());

    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let broken = Cursor::new(b"<http://ex.org/a> <http://ex.org/p> .\n".to_vec());
    assert_eq!(run(["rdfkit", "lean", "--from", "nt", "-"], &mut broken.clone(), &mut stdout, &mut stderr), 2);
    assert!(stdout.is_empty());
    assert!(String::from_utf8(stderr).unwrap().starts_with("rdfkit: -:1:"));
}
