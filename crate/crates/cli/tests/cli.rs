use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_rdfkit");

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn finish(out: Output) -> Run {
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn rdfkit(args: &[&str]) -> Run {
    finish(Command::new(BIN).args(args).env_remove("RDFKIT_CONFIG").output().unwrap())
}

fn rdfkit_with_config(config: &Path, args: &[&str]) -> Run {
    finish(Command::new(BIN).args(args).env("RDFKIT_CONFIG", config).output().unwrap())
}

fn rdfkit_stdin(args: &[&str], input: &str) -> Run {
    let mut child = Command::new(BIN)
        .args(args)
        .env_remove("RDFKIT_CONFIG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    finish(child.wait_with_output().unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

/// Four blank nodes on one predicate: not lean, and a search is needed to
/// tell.
const REDUNDANT: &str = "_:a <http://ex.org/p> _:b .\n_:b <http://ex.org/p> _:c .\n_:c <http://ex.org/p> _:d .\n_:a <http://ex.org/p> _:d .\n_:d <http://ex.org/p> _:d .\n";

#[test]
fn profile_entails_its_blanked_variant() {
    let run = rdfkit(&["entails", "--regime", "simple", &data("profile.ttl"), &data("blanked.ttl")]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let run = rdfkit(&["entails", "--regime", "simple", &data("blanked.ttl"), &data("profile.ttl")]);
    assert_eq!(run.code, 1);
}

#[test]
fn isomorphism_is_reflexive() {
    let run = rdfkit(&["isomorphic", &data("profile.nt"), &data("profile.nt")]);
    assert_eq!(run.code, 0);
}

#[test]
fn turtle_converts_to_the_ntriples_listing() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("profile.nt").display().to_string();
    let run = rdfkit(&["convert", "--from", "ttl", "--to", "nt", "--in", &data("profile.ttl"), "--out", &out]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.is_empty());
    assert_eq!(rdfkit(&["isomorphic", &out, &data("profile.nt")]).code, 0);
}

#[test]
fn stdin_and_stdout_via_dash() {
    let text = fs::read_to_string(data("profile.ttl")).unwrap();
    let run = rdfkit_stdin(&["convert", "--from", "ttl", "--to", "nt"], &text);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout.lines().count(), 4);
    let missing_format = rdfkit_stdin(&["convert", "--to", "nt"], &text);
    assert_eq!(missing_format.code, 2);
    assert!(missing_format.stdout.is_empty());
}

#[test]
fn output_is_deterministic() {
    let args = ["convert", "--in", &data("profile.ttl"), "--to", "ttl"];
    let first = rdfkit(&args);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, rdfkit(&args).stdout);
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.nt", REDUNDANT);
    let sk = ["skolemize", "--base", "http://ex.org/", "--deterministic", &g];
    let once = rdfkit(&sk);
    assert_eq!(once.code, 0);
    assert_eq!(once.stdout, rdfkit(&sk).stdout);
    assert!(once.stdout.contains("<http://ex.org/.well-known/genid/b0>"));
    assert!(!once.stdout.contains("_:"));
}

#[test]
fn parse_errors_exit_2_with_a_position() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.ttl", "@prefix ex: <http://ex.org/> .\nex:a ex:p ex:b ;\n  ex:q \"open .\n");
    let run = rdfkit(&["lean", &bad]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty());
    let position = run.stderr.split(':').skip_while(|p| !p.ends_with("bad.ttl")).nth(1).unwrap_or("");
    assert!(run.stderr.contains("bad.ttl:3:"), "{}", run.stderr);
    assert!(position.parse::<usize>().is_ok(), "{}", run.stderr);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(rdfkit(&[]).code, 2);
    assert_eq!(rdfkit(&["entails", "--regime", "owl", "a.nt", "b.nt"]).code, 2);
    assert_eq!(rdfkit(&["closure", "--regime", "simple", "a.nt"]).code, 2);
    assert_eq!(rdfkit(&["lean", "graph.unknown"]).code, 2);
    assert_eq!(rdfkit(&["lean", "/nonexistent/graph.nt"]).code, 2);
    let help = rdfkit(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("entails"));
}

#[test]
fn lean_and_well_behaved_predicates() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.nt", REDUNDANT);
    let run = rdfkit(&["lean", "--witness", &g]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains(" -> "));
    assert_eq!(rdfkit(&["lean", &data("profile.nt")]).code, 0);
    assert_eq!(rdfkit(&["wellbehaved", &g]).code, 1);
    assert_eq!(rdfkit(&["wellbehaved", &data("blanked.ttl")]).code, 0);
}

#[test]
fn budget_exhaustion_exits_3_and_flags_override_config() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.nt", REDUNDANT);
    let config = write(&dir, "rdfkit.toml", "step_budget = 1\n");
    let run = rdfkit_with_config(Path::new(&config), &["lean", &g]);
    assert_eq!(run.code, 3, "{}", run.stderr);
    assert!(run.stdout.is_empty());
    assert_eq!(rdfkit_with_config(Path::new(&config), &["lean", "--budget", "100000", &g]).code, 1);
    assert_eq!(rdfkit(&["lean", "--budget", "1", &g]).code, 3);
}

#[test]
fn recognized_datatypes_come_from_config_or_flags() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.ttl",
        "<http://ex.org/s> <http://ex.org/p> \"1\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n",
    );
    let h = write(
        &dir,
        "h.ttl",
        "<http://ex.org/s> <http://ex.org/p> _:v .\n_:v a <http://www.w3.org/2001/XMLSchema#integer> .\n",
    );
    assert_eq!(rdfkit(&["entails", "--regime", "rdf", &g, &h]).code, 0);
    assert_eq!(rdfkit(&["entails", "--regime", "simple", &g, &h]).code, 1);
    let narrow = write(&dir, "narrow.toml", "recognized_datatypes = []\n");
    assert_eq!(rdfkit_with_config(Path::new(&narrow), &["entails", "--regime", "rdf", &g, &h]).code, 1);
    let flag = ["entails", "--regime", "rdf", "--datatype", "http://www.w3.org/2001/XMLSchema#integer", &g, &h];
    assert_eq!(rdfkit_with_config(Path::new(&narrow), &flag).code, 0);
    let broken = write(&dir, "broken.toml", "step_budget = \"lots\"\n");
    assert_eq!(rdfkit_with_config(Path::new(&broken), &["lean", &g]).code, 2);
}

#[test]
fn merge_keeps_blank_nodes_apart() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("merged.nt").display().to_string();
    let b = data("blanked.ttl");
    let run = rdfkit(&["merge", &b, &b, "--out", &out]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let merged = fs::read_to_string(&out).unwrap();
    assert_eq!(merged.lines().count(), 4);
    let twice = write(&dir, "twice.ttl", "@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n_:x a foaf:Person ; foaf:name _:y .\n_:u a foaf:Person ; foaf:name _:w .\n");
    assert_eq!(rdfkit(&["isomorphic", &out, &twice]).code, 0);
    assert_eq!(rdfkit(&["lean", &out]).code, 1);
}

#[test]
fn datasets_compare_by_isomorphism() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.trig", "<http://ex.org/g> { _:x <http://ex.org/p> <http://ex.org/o> . }\n");
    let b = write(&dir, "b.nq", "_:y <http://ex.org/p> <http://ex.org/o> <http://ex.org/g> .\n");
    let c = write(&dir, "c.nq", "_:y <http://ex.org/p> <http://ex.org/o> <http://ex.org/h> .\n");
    assert_eq!(rdfkit(&["dataset-isomorphic", &a, &b]).code, 0);
    assert_eq!(rdfkit(&["dataset-isomorphic", &a, &c]).code, 1);
    // a graph command refuses named graphs rather than dropping them
    assert_eq!(rdfkit(&["lean", &a]).code, 2);
    assert_eq!(rdfkit(&["convert", "--in", &a, "--to", "nt"]).code, 2);
}

#[test]
fn closure_adds_rdfs_consequences() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.ttl",
        "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n@prefix ex: <http://ex.org/> .\nex:Cat rdfs:subClassOf ex:Animal .\nex:tom a ex:Cat .\n",
    );
    let run = rdfkit(&["closure", "--regime", "rdfs", &g, "--to", "nt"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("<http://ex.org/tom> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://ex.org/Animal> ."));
    let rdf_only = rdfkit(&["closure", "--regime", "rdf", &g, "--to", "nt"]);
    assert!(!rdf_only.stdout.contains("<http://ex.org/tom> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://ex.org/Animal>"));
}

#[test]
fn reify_then_unreify_recovers_the_annotations() {
    let dir = TempDir::new().unwrap();
    // nr hangs relation nodes off the subject and asserts the base triple,
    // so it needs one annotated base per subject and no separate assertion
    let one_per_subject = write(
        &dir,
        "one-per-subject.ttl",
        "@prefix ex: <http://example.com/> .\n<< ex:js ex:name \"John Smith\" >> ex:certainty \"0.8\" ; ex:source ex:crawl .\n<< ex:univ ex:label \"University\" >> ex:certainty \"0.5\" .\n",
    );
    for (scheme, ext) in [("sr", "ttl"), ("nr", "ttl"), ("rdr", "ttl"), ("sp", "nt"), ("ng", "trig")] {
        let original = if scheme == "nr" { one_per_subject.clone() } else { data("annotated.ttl") };
        let encoded = dir.path().join(format!("{scheme}.{ext}")).display().to_string();
        let run = rdfkit(&["reify", "--scheme", scheme, &original, "--out", &encoded]);
        assert_eq!(run.code, 0, "{scheme}: {}", run.stderr);
        let text = fs::read_to_string(&encoded).unwrap();
        assert_eq!(text.contains("<< "), scheme == "rdr", "{scheme}: {text}");
        let back = rdfkit(&["unreify", "--scheme", scheme, &encoded]);
        assert_eq!(back.code, 0, "{scheme}: {}", back.stderr);
        let recovered = write(&dir, &format!("{scheme}-back.ttl"), &back.stdout);
        // the star form is compared through its rdr re-encoding
        let expected = rdfkit(&["reify", "--scheme", "sr", &original, "--to", "nt"]);
        let actual = rdfkit(&["reify", "--scheme", "sr", &recovered, "--to", "nt"]);
        let e = write(&dir, &format!("{scheme}-e.nt"), &expected.stdout);
        let a = write(&dir, &format!("{scheme}-a.nt"), &actual.stdout);
        assert_eq!(rdfkit(&["isomorphic", &e, &a]).code, 0, "{scheme}:\n{}", back.stdout);
    }
}

#[test]
fn sr_output_matches_the_standard_vocabulary() {
    let run = rdfkit(&["reify", "--scheme", "sr", &data("annotated.ttl"), "--to", "nt"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    for term in ["type", "subject", "predicate", "object"] {
        assert_eq!(run.stdout.matches(&format!("<{rdf}{term}>")).count(), 2, "{term}\n{}", run.stdout);
    }
    assert_eq!(run.stdout.matches(&format!("<{rdf}Statement>")).count(), 2);
}
