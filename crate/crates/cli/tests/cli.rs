use std::process::{Command, Output};

use serde_json::Value;

fn sclosure(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sclosure")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = sclosure(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--output", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/ideal.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

#[test]
fn closure_example() {
    let out = ok(&["closure", "--ideal", "x^3,y^3", "--s", "5/4"]);
    assert_eq!(out, "x^3, x^2*y^2, y^3\n");
}

#[test]
fn jumping_numbers_example() {
    assert_eq!(ok(&["jumping-numbers", "--ideal", "x^3,y^3", "--from", "1", "--to", "3"]), "1, 4/3\n");
    assert_eq!(ok(&["jumping-numbers", "--ideal", "x, y", "--from", "1", "--to", "2"]), "\n");
}

#[test]
fn bs_check_example() {
    let out = ok(&["bs-check", "--ideal", "x^3,y^3", "--t", "1", "--s", "2", "--nmax", "4"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "t = 1, s = 2, r = 1");
    assert_eq!(lines.len(), 5);
    assert!(lines[1..].iter().all(|l| l.ends_with(" holds")));
}

#[test]
fn other_commands() {
    assert_eq!(ok(&["integral-closure", "--ideal", "x^3, y^3"]), "x^3, x^2*y, x*y^2, y^3\n");
    assert_eq!(ok(&["rational-power", "--ideal", "x^3, y^3", "--alpha", "4/3"]), "x^4, x^3*y, x^2*y^2, x*y^3, y^4\n");
    assert_eq!(ok(&["mixed-power", "--ideal", "x, y", "--s", "3", "--q", "4"]), "x^4, y^4\n");
    assert_eq!(ok(&["s-closure", "--ideal", "x^3, y^3", "--s", "5/4"]), "x^3, x^2*y^2, y^3\niterations: 1\n");
    assert_eq!(ok(&["collapse", "--ideal", "x^3, y^3", "--s", "9/8"]), "collapse at n = 3 (bound 8)\n");
    let out = ok(&["degree-check", "--ideal", "x^2, y^2", "--s", "3/2"]);
    assert!(out.contains("lower bound: holds") && out.contains("upper bound: holds"), "{out}");
    let out = ok(&["degree-check", "--ideal", "x^2*y, y^3", "--s", "1"]);
    assert!(out.contains("skipped"), "{out}");
    let out = ok(&["oracle", "--ideal", "x^3, y^3", "--s", "5/4", "--monomial", "x^2*y^2"]);
    assert_eq!(out, "member_evidence\nc = y^2\nq = 2, 4, 8, 16\n");
}

#[test]
fn multiplicity_table() {
    let out = ok(&["multiplicity", "--ideal", "x, y", "--s", "1", "--kmax", "3"]);
    assert_eq!(
        out,
        "q\tcolength\tnormalized\n2\t3\t3/2\n4\t10\t5/4\n8\t36\t9/8\nestimate (extrapolated, not certified): 1\n"
    );
    let out = ok(&["multiplicity", "--ideal", "x^3, y^3", "--s", "9/8", "--kmax", "4", "--consistency"]);
    assert!(out.contains("consistency with I + (x^2*y^2)") && out.contains("holds"), "{out}");
}

#[test]
fn custom_variables() {
    assert_eq!(ok(&["integral-closure", "--vars", "a,b", "--ideal", "a^2, b^2"]), "a^2, a*b, b^2\n");
    assert_eq!(ok(&["integral-closure", "--nvars", "3", "--ideal", "x^2"]), "x^2\n");
    let o = sclosure(&["integral-closure", "--vars", "a,b", "--nvars", "3", "--ideal", "a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_outputs_match_schema() {
    let v = schema();
    let out = json(&["closure", "--ideal", "x^3,y^3", "--s", "5/4"]);
    assert!(v.is_valid(&out), "{out}");
    assert_eq!(out["nvars"], 2);
    assert_eq!(out["generators"], serde_json::json!([[3, 0], [2, 2], [0, 3]]));
    assert_eq!(out["meta"]["s"], "5/4");
    assert_eq!(out["meta"]["route"], "closed_form");

    for args in [
        vec!["integral-closure", "--ideal", "x^2, x*y^3, z"],
        vec!["rational-power", "--ideal", "x^2, y^3", "--alpha", "5/2"],
        vec!["mixed-power", "--ideal", "x^2, y", "--s", "3/2", "--q", "8"],
        vec!["s-closure", "--ideal", "x^2, y^3", "--s", "1"],
    ] {
        let out = json(&args);
        assert!(v.is_valid(&out), "{args:?}: {out}");
    }

    let out = json(&["jumping-numbers", "--ideal", "x^3,y^3", "--from", "1", "--to", "3"]);
    let jumps = out["jumping_numbers"].as_array().unwrap();
    assert_eq!(jumps.len(), 2);
    for j in jumps {
        assert!(v.is_valid(&j["at"]) && v.is_valid(&j["after"]));
    }
    let out = json(&["bs-check", "--ideal", "x^3,y^3", "--t", "5/4", "--s", "3/2"]);
    for row in out["rows"].as_array().unwrap() {
        assert_eq!(row["holds"], true);
        assert!(v.is_valid(&row["lhs"]) && v.is_valid(&row["rhs"]));
    }
    let out = json(&["oracle", "--ideal", "x^3,y^3", "--s", "3/2", "--monomial", "x^2*y^2", "--p", "3"]);
    assert_eq!(out["witness"]["verdict"], "non_member_evidence");
    assert_eq!(out["witness"]["checked_q"], serde_json::json!([3, 9, 27, 81]));
}

#[test]
fn round_trip_through_printed_text() {
    for (text, s) in [("x^3, y^3", "5/4"), ("x^4*y, x*y^3*z^2, z^5, y^4", "9/8"), ("x^2*y^3, x^5", "3/2")] {
        let printed = ok(&["closure", "--nvars", "3", "--ideal", text, "--s", s]);
        let reparsed = json(&["closure", "--nvars", "3", "--ideal", printed.trim(), "--s", "1000"]);
        // For large s the weak closure adds nothing, so this reparses the printed text.
        let first = json(&["closure", "--nvars", "3", "--ideal", text, "--s", s]);
        assert_eq!(reparsed["generators"], first["generators"], "{text}");
    }
}

#[test]
fn exit_codes_and_error_codes() {
    let o = sclosure(&["closure", "--ideal", "x^3,y^3", "--s", "1.25"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error[invalid-rational]"));

    let o = sclosure(&["closure", "--ideal", "x^3,,y", "--s", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("error[syntax]"));

    let o = sclosure(&["closure", "--ideal", "x^3", "--vars", "x", "--s", "1", "--bogus"]);
    assert_eq!(o.status.code(), Some(1));

    let o = sclosure(&["closure", "--ideal", "0", "--nvars", "2", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[zero-ideal]"));

    let o = sclosure(&["closure", "--ideal", "x^3,y^3", "--s", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[scale-below-one]"));

    let o = sclosure(&["multiplicity", "--ideal", "x^2*y, y^3", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[not-primary]"));

    let o = sclosure(&["mixed-power", "--ideal", "x", "--s", "1", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[not-prime-power]"));

    let o = sclosure(&["closure", "--ideal", "x", "--s", "1", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error[not-prime]"));

    let o = sclosure(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(sclosure(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_is_deterministic() {
    let a = ok(&["verify", "--suite", "all", "--seed", "7", "--size", "6"]);
    let b = ok(&["verify", "--suite", "all", "--seed", "7", "--size", "6"]);
    assert_eq!(a, b);
    assert!(a.lines().skip(1).all(|l| l.contains(": pass (")), "{a}");
    assert_eq!(a.lines().count(), 8);
    let one = ok(&["verify", "--suite", "stabilization", "--seed", "7", "--size", "6"]);
    assert_eq!(one.lines().count(), 2);
}

#[test]
fn out_file_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("closure.txt");
    let o = Command::new(env!("CARGO_BIN_EXE_sclosure"))
        .args(["closure", "--ideal", "x^3,y^3", "--s", "5/4", "--out"])
        .arg(&path)
        .env("SCLOSURE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "x^3, x^2*y^2, y^3\n");
}
