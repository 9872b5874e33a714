use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liarlab")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}; stderr: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

fn fact(report: &Value, label: &str) -> Value {
    report["facts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["label"] == label)
        .unwrap_or_else(|| panic!("no fact {label}"))["value"]
        .clone()
}

fn witness(report: &Value, label: &str) -> String {
    report["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .find(|w| w["label"] == label)
        .unwrap_or_else(|| panic!("no witness {label}"))["value"]
        .as_str()
        .unwrap()
        .to_string()
}

/// Splits a recipe written with single-quoted arguments.
fn split_recipe(recipe: &str) -> Vec<String> {
    let mut args = Vec::new();
    let mut cur = String::new();
    let mut in_quote = false;
    let mut has = false;
    let mut chars = recipe.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\'' => {
                in_quote = !in_quote;
                has = true;
            }
            '\\' if !in_quote => {
                if let Some(n) = chars.next() {
                    cur.push(n);
                }
            }
            ' ' if !in_quote => {
                if has || !cur.is_empty() {
                    args.push(std::mem::take(&mut cur));
                }
                has = false;
            }
            c => cur.push(c),
        }
    }
    if has || !cur.is_empty() {
        args.push(cur);
    }
    args
}

fn assert_facts_round_trip(report: &Value) {
    for f in report["facts"].as_array().unwrap() {
        let recipe = split_recipe(f["recipe"].as_str().unwrap());
        assert_eq!(recipe[0], "liarlab");
        let args: Vec<&str> = recipe[1..].iter().map(String::as_str).filter(|a| *a != "--json").collect();
        let (again, _) = json(&args);
        let same_fact = again["facts"]
            .as_array()
            .unwrap()
            .iter()
            .any(|g| g["label"] == f["label"] && g["value"] == f["value"]);
        let same_result = again.get("result") == Some(&f["value"]);
        assert!(same_fact || same_result, "fact {} not reproduced by {:?}", f["label"], args);
    }
}

#[test]
fn decide_prints_verdict() {
    let out = run(&["pres", "decide", "E y. y+y = 1+1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "true\n");
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["pres", "decide", "E y. y+y = 1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "false\n");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn goedel_report() {
    let (r, code) = json(&["quine", "goedel"]);
    assert_eq!(code, 0);
    assert_eq!(r["instance"], "quineland");
    assert_eq!(r["status"], "witness");
    assert_eq!(fact(&r, "truth_lambda"), true);
    assert_eq!(fact(&r, "printable_lambda"), false);
    assert_eq!(fact(&r, "printable_negation"), false);
    assert_eq!(witness(&r, "lambda"), "~Pr(diag(<~Pr(diag(x))>))");
    assert_facts_round_trip(&r);
}

#[test]
fn tarski_liar_on_presburger_is_expected_violation() {
    let (r, code) = json(&["liar", "--system", "pres", "--variant", "tarski", "--pi", "E y. y+y = x"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "violation");
    assert_eq!(fact(&r, "represents_at_self"), false);
    let (named, _) = json(&["pres", "name", "E y. y+y = x"]);
    assert_eq!(witness(&r, "name"), named["result"].to_string());
}

#[test]
fn goedel_semantic_liar_on_quineland() {
    let (r, code) = json(&["liar", "--system", "quine", "--variant", "goedel-sem", "--pi", "~Pr(diag(x))"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "witness");
    assert_eq!(fact(&r, "lambda_in_B"), true);
    assert_eq!(fact(&r, "lambda_in_A"), false);
    assert_eq!(fact(&r, "separates"), true);
}

#[test]
fn every_variant_runs_on_both_systems() {
    for system in ["pres", "quine"] {
        let pi = if system == "pres" { "A y. y+y != x" } else { "Pr(x)" };
        for variant in ["goedel-syn", "goedel-sem", "tarski", "church"] {
            let (_, code) = json(&["liar", "--system", system, "--variant", variant, "--pi", pi]);
            assert_eq!(code, 0, "{system} {variant}");
        }
    }
}

#[test]
fn quine_tarski_report() {
    let (r, code) = json(&["quine", "tarski", "--phi", "Pr(x)"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "violation");
    assert_eq!(fact(&r, "phi_at_name_true"), false);
    assert_eq!(fact(&r, "named_sentence_true"), true);
    assert_facts_round_trip(&r);
    let (r, code) = json(&["quine", "tarski", "--phi", "~Pr(x)"]);
    assert_eq!(code, 0);
    assert_ne!(fact(&r, "phi_at_name_true"), fact(&r, "named_sentence_true"));
}

#[test]
fn quine_queries() {
    let (r, _) = json(&["quine", "truth", "Pr(<~Pr(<x>)>)"]);
    assert_eq!(r["result"], true);
    let (r, _) = json(&["quine", "printable", "Pr(<~Pr(<x>)>)"]);
    assert_eq!(r["result"], true);
    assert_eq!(fact(&r, "min_proof_length"), 2);
    assert_facts_round_trip(&r);
    let (r, _) = json(&["quine", "minproof", "~~~~~Pr(<x>)"]);
    assert_eq!(r["result"], 3);
    let (r, _) = json(&["quine", "minproof", "Pr(<x>)"]);
    assert_eq!(r["result"], "none");
    let (r, _) = json(&["quine", "diag", "~Pr(diag(x))"]);
    assert_eq!(r["result"], "~Pr(diag(<~Pr(diag(x))>))");
    let (r, code) = json(&["quine", "longtheorem", "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(fact(&r, "min_proof_length"), 6);
    assert_eq!(fact(&r, "in_p_n"), false);
    assert_facts_round_trip(&r);
}

#[test]
fn pres_naming_round_trip() {
    let (r, code) = json(&["pres", "name", "0 = 0"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"], 0);
    let (r, _) = json(&["pres", "name", "E y. y+y = x"]);
    let n = r["result"].as_u64().unwrap();
    assert_eq!(fact(&r, "parity"), "odd");
    assert_facts_round_trip(&r);
    let (r, _) = json(&["pres", "name", "A y. E z. z+z = y"]);
    assert_eq!(fact(&r, "parity"), "odd");
    assert_eq!(fact(&r, "provable_sentence"), false);
    assert_facts_round_trip(&r);
    let (back, _) = json(&["pres", "unname", &n.to_string()]);
    assert_eq!(back["result"], "E y. y+y = x");
    assert_facts_round_trip(&back);
}

#[test]
fn pres_checks() {
    let (r, code) = json(&["pres", "truthdef", "--samples", "50"]);
    assert_eq!((r["status"].as_str(), code), (Some("pass"), 0));
    let (r, code) = json(&["pres", "noselfref", "--cap", "5", "--samples", "30"]);
    assert_eq!((r["status"].as_str(), code), (Some("pass"), 0));
    assert_eq!(fact(&r, "survivors"), 0);
    let (r, _) = json(&["pres", "enum", "--count", "3"]);
    assert_eq!(witness(&r, "0"), "0 = 0");
    assert_eq!(fact(&r, "count"), 3);
}

#[test]
fn usage_and_input_errors_exit_2() {
    for args in [
        &["pres", "decide", "y = 0"][..],
        &["pres", "decide", "E y. y+y = x"],
        &["pres", "decide", "E y. ("],
        &["quine", "truth", "Pr(x"],
        &["quine", "truth", "Pr(x)"],
        &["quine", "longtheorem", "--n", "0"],
        &["liar", "--system", "pres", "--variant", "rosser", "--pi", "0 = 0"],
        &["pres"],
        &["nonsense"],
        &["--budget", "10", "pres", "name", "E y. y+y = x"],
        &["--budget", "10", "pres", "unname", "4000"],
        &["--budget", "10", "pres", "enum", "--count", "11"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn text_report_lists_facts() {
    let out = run(&["quine", "goedel"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("truth_lambda = true"));
    assert!(text.ends_with("status: witness\n"));
}

#[test]
fn json_output_is_deterministic() {
    for args in [&["quine", "goedel"][..], &["pres", "enum", "--count", "20"]] {
        let mut full = vec!["--json"];
        full.extend_from_slice(args);
        assert_eq!(run(&full).stdout, run(&full).stdout);
    }
}

#[test]
fn recipe_splitter() {
    assert_eq!(
        split_recipe(r"liarlab pres decide 'a b' 'it'\''s'"),
        vec!["liarlab", "pres", "decide", "a b", "it's"]
    );
}
