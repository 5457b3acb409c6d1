use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn mvdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mvdyn")).args(args).output().expect("binary runs")
}

fn mvdyn_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mvdyn"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn double_negation_is_a_tautology() {
    let o = mvdyn(&["taut", "--logic", "luk", "--method", "exact-pwl", "!!x0 -> x0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Tautology\n");
}

#[test]
fn excluded_middle_fails_at_one_half() {
    let o = mvdyn(&["taut", "--logic", "luk", "--format", "json", "x0 | !x0"]);
    let j = json(&o);
    assert_eq!(j["verdict"], "Countermodel");
    assert_eq!(j["point"][0], "1/2");
}

#[test]
fn tent_orbit_of_one_fifth() {
    let j = json(&mvdyn(&["orbit", "--subst", "tent", "--start", "1/5", "--max", "100"]));
    assert_eq!(j["period"], 2);
    assert_eq!(j["preperiod"], 1);
    assert_eq!(j["start"][0], "1/5");
}

#[test]
fn rotation_validates() {
    let j = json(&mvdyn(&["homeo", "rotation", "--validate"]));
    let r = &j["report"];
    assert_eq!(r["common_det"], "1");
    assert_eq!(r["measure_preserving"], true);
    assert_eq!(r["image_measure"], "1");
    assert_eq!(j["components"].as_array().unwrap().len(), 2);
}

#[test]
fn homeo_build_from_vertex_images() {
    // The flip of [0,1] as a one-cell complex.
    let input = r#"{"dim": 1, "vertices": [["0","1"], ["1","1"]], "cells": [[0, 1]], "targets": [["1","1"], ["0","1"]]}"#;
    let j = json(&mvdyn_stdin(&["homeo", "build", "--json", "-", "--validate"], input));
    assert_eq!(j["report"]["common_det"], "-1");
    assert_eq!(j["report"]["invertible"], true);
}

#[test]
fn unknown_subcommand_and_bad_flags_are_usage_errors() {
    assert_eq!(mvdyn(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mvdyn(&["orbit", "--subst", "tent"]).status.code(), Some(2));
    assert_eq!(mvdyn(&["eval", "--at", "1/2", "x0 ->"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let o = mvdyn(&["orbit", "--subst", "tent", "--start", "3/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
    assert_eq!(mvdyn(&["subst", "reach", "--from", "1/2", "--to", "1/3"]).status.code(), Some(1));
}

#[test]
fn every_subcommand_has_help() {
    for cmd in [
        "eval", "taut", "identity", "pwl", "orbit", "subst", "homeo", "diff", "boxhit", "stats", "avg", "odometer",
        "prove", "algebra", "filters", "spec", "duality",
    ] {
        let o = mvdyn(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        assert!(stdout(&o).contains("Usage"), "{cmd}");
    }
}

#[test]
fn averages_as_csv() {
    let o = mvdyn(&["avg", "--subst", "tent", "--box", "0..1/4", "--k", "3", "--format", "csv", "x0"]);
    assert_eq!(stdout(&o), "k,value\n0,1/8\n1,1/4\n2,1/2\n3,1/2\n");
}

#[test]
fn csv_is_refused_where_not_tabular() {
    assert_eq!(mvdyn(&["duality", "--alg", "two", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn stats_are_reproducible_and_thread_independent() {
    let base = ["stats", "--subst", "tent", "--start", "0.1234567", "--iterations", "20000", "--runs", "3"];
    let a = mvdyn(&[&base[..], &["--seed", "7", "--threads", "1"]].concat());
    let b = mvdyn(&[&base[..], &["--seed", "7", "--threads", "3"]].concat());
    let c = mvdyn(&[&base[..], &["--seed", "8"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn derived_proof_checks() {
    let o = mvdyn(&["odometer", "derive", "--n", "2", "--target", "x1", "--format", "text", "x0 * x1"]);
    assert!(o.status.success());
    let proof = stdout(&o);
    let c = mvdyn_stdin(&["prove", "check", "--file", "-", "--axioms", "oracle:boole"], &proof);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(json(&c)["verdict"], "Valid");
}

#[test]
fn proof_verdicts_map_to_exit_codes() {
    let bad = r#"{"formula": "x0", "just": {"hyp": 1}}
{"formula": "x1", "just": {"mp": [1, 1]}}"#;
    let o = mvdyn_stdin(&["prove", "check", "--file", "-"], bad);
    assert_eq!(o.status.code(), Some(1));
    let j: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["line"], 2);
    let malformed = mvdyn_stdin(&["prove", "check", "--file", "-"], "{\"formula\": 3}");
    assert_eq!(malformed.status.code(), Some(2));
}

#[test]
fn oversized_proof_is_refused() {
    let o = mvdyn(&["odometer", "derive", "--n", "3", "--cap", "100", "x0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn odometer_permutation() {
    let j = json(&mvdyn(&["odometer", "perm", "--n", "3"]));
    assert_eq!(j["map"], serde_json::json!([1, 2, 3, 4, 5, 6, 7, 0]));
    assert_eq!(j["single_cycle"], true);
}

#[test]
fn algebra_commands() {
    let j = json(&mvdyn(&["algebra", "product", "luk:2", "luk:3"]));
    assert_eq!(j["names"].as_array().unwrap().len(), 12);
    let j = json(&mvdyn(&["filters", "--alg", "godel:3"]));
    assert_eq!(j["filters"].as_array().unwrap().len(), 4);
    let j = json(&mvdyn(&["spec", "--alg", "boolean:2"]));
    assert_eq!(j["points"].as_array().unwrap().len(), 4);
    let j = json(&mvdyn(&["duality", "--alg", "luk:2*luk:3"]));
    assert_eq!(j["holds"], true);
    let j = json(&mvdyn(&["algebra", "sub", "--alg", "luk:4", "--gens", "2"]));
    assert_eq!(j["embedding"].as_array().unwrap().len(), 3);
}

#[test]
fn pwl_round_trip_through_files() {
    let compiled = mvdyn(&["pwl", "compile", "x0 (+) x0"]);
    let text = stdout(&compiled);
    let j = json(&mvdyn_stdin(&["pwl", "synthesize", "--json", "-"], &text));
    let f = j["formula"].as_str().unwrap().to_string();
    let same = mvdyn(&["identity", "--logic", "luk", &f, "x0 (+) x0"]);
    assert_eq!(stdout(&same), "Tautology\n");
    let i = json(&mvdyn_stdin(&["pwl", "integrate", "--json", "-"], &text));
    assert_eq!(i["integral"], "3/4");
}

#[test]
fn substitution_commands() {
    let j = json(&mvdyn(&["subst", "reach", "--from", "1/3", "--to", "2/3"]));
    assert_eq!(j["components"][0], "x0 (+) x0");
    assert_eq!(j["image"][0], "2/3");
    let o = mvdyn(&["subst", "apply", "--subst", "!x0", "--format", "text", "x0 * x1"]);
    assert_eq!(stdout(&o), "!x0 * x1\n");
    let j = json(&mvdyn(&["diff", "--subst", "tent", "--at", "1/4", "--dir", "-1"]));
    assert_eq!(j["differential"][0], "-2");
    let j = json(&mvdyn(&["boxhit", "--q", "tent", "--r", "identity:1", "--a", "0..1/8", "--b", "7/8..1"]));
    assert_eq!(j["found"], true);
    assert!(j["h"].as_u64().unwrap() <= 4);
}
