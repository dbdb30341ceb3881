//! End-to-end checks of the command-line surface: grammars, output format,
//! error reporting and exit codes.

use std::process::{Command, Output};

fn dendrizeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dendrizeta"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = dendrizeta(args);
    assert!(
        out.status.success(),
        "`{args:?}` failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn product_word_full_matches_published_expansion() {
    let out = stdout(&["product", "word", "full", "1 2", "3 2"]);
    assert_eq!(
        out.trim(),
        "1*(4 4) + 1*(1 3 4) + 1*(1 5 2) + 1*(3 1 4) + 1*(3 3 2) + 2*(4 2 2) \
         + 1*(1 2 3 2) + 2*(1 3 2 2) + 2*(3 1 2 2) + 1*(3 2 1 2)"
    );
    let bin = stdout(&["product", "word", "full", "xy", "xy"]);
    assert_eq!(bin.trim(), "4*(xxyy) + 2*(xyxy)");
}

#[test]
fn product_tree_kinds_and_pieces() {
    let out = stdout(&["product", "vertex-tree", "left", "N{2}(N{1},N{1})", "N{2}"]);
    assert_eq!(
        out.trim(),
        "1*(N{2}(N{1}(|,|),N{1}(|,N{2}(|,|)))) + 1*(N{2}(N{1}(|,|),N{2}(N{1}(|,|),|))) \
         + 1*(N{2}(N{1}(|,|),N{3}(|,|,|)))"
    );
    let out = stdout(&["product", "binary-tree", "full", "B{x}", "B{y}"]);
    assert_eq!(
        out.trim(),
        "1*(B{x}(|,B{y}(|,|))) + 1*(B{y}(B{x}(|,|),|))"
    );
    let json = stdout(&["product", "word", "mid", "1", "1", "--json"]);
    assert_eq!(json.trim(), r#"[{"coeff":"1","basis":"2"}]"#);
}

#[test]
fn structural_map_commands() {
    assert_eq!(
        stdout(&["flatten", "N{2}(N{1},N{1})"]).trim(),
        "1*(2 2) + 2*(2 1 1)"
    );
    assert_eq!(stdout(&["flatten", "B{x}(B{y},B{y})"]).trim(), "2*(xyy)");
    assert_eq!(stdout(&["iota", "V[1,2]"]).trim(), "N{3}(|,|,|)");
    assert_eq!(stdout(&["binarize", "2 1"]).trim(), "xyy");
    assert_eq!(stdout(&["binarize", "()"]).trim(), "()");
}

#[test]
fn eval_targets_and_flags() {
    let out = stdout(&["eval", "word-series", "2", "--cutoff", "10000"]);
    assert!(out.contains("expression = 1*(2)"), "{out}");
    assert!(out.contains("value = 1.6448"), "{out}");
    assert!(out.contains("tail_bound = 1.000e-4"), "{out}");

    let quad = stdout(&["eval", "word-integral", "xy", "--path", "quad", "--quad-nodes", "32"]);
    assert!(quad.contains("value = 1.64"), "{quad}");
    assert!(quad.contains("tail_bound = n/a"), "{quad}");

    let tree = stdout(&["eval", "tree-series", "N{2}(N{1},N{1})", "--cutoff", "5000"]);
    assert!(tree.contains("expression = 1*(2 2) + 2*(2 1 1)"), "{tree}");

    let shin = stdout(&["eval", "shintani", "B{x}(B{y},B{y})", "--cutoff", "500"]);
    assert!(shin.contains("omega = 1 1 1"), "{shin}");
    assert!(shin.contains("value = 2.3"), "{shin}");

    let json = stdout(&["eval", "word-series", "3", "--cutoff", "1000", "--json"]);
    assert!(json.trim().starts_with('{') && json.contains("\"tail_bound\""), "{json}");
}

#[test]
fn shintani_matrix_output() {
    let out = stdout(&["shintani-matrix", "B{x}(B{x}(B{y},B{y}),B{y}(|,B{x}(|,B{y})))"]);
    let digit_rows: Vec<&str> = out
        .lines()
        .filter(|l| l.starts_with(['0', '1']))
        .collect();
    assert_eq!(digit_rows.len(), 6);
    assert!(out.contains("omega = 1 1 1 1 1 2"), "{out}");

    let json = stdout(&["shintani-matrix", "B{x}(|,B{y})", "--json"]);
    assert!(json.contains("\"matrix\":[[1]]"), "{json}");
    assert!(json.contains("\"omega\":[2]"), "{json}");
    assert!(json.contains("row_labels"), "{json}");
}

#[test]
fn verify_subsets_exit_zero() {
    let out = dendrizeta(&["verify", "--morphisms", "--max-leaves", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS]"), "{text}");
    assert!(text.contains("0 failed"), "{text}");
}

#[test]
fn errors_set_exit_code_and_stderr() {
    // divergent word
    let out = dendrizeta(&["eval", "word-series", "1 2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divergent"));

    // parse error carries a position
    let out = dendrizeta(&["product", "vertex-tree", "full", "N{1}(|,|,|)", "N{2}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));

    // split piece on an empty operand
    let out = dendrizeta(&["product", "word", "left", "()", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undefined"));

    // middle piece of binary words is rejected
    let out = dendrizeta(&["product", "word", "mid", "xy", "xy"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown flag
    let out = dendrizeta(&["eval", "word-series", "2", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_without_arguments() {
    let out = stdout(&[]);
    assert!(out.contains("usage: dendrizeta"));
    assert!(out.contains("shintani-matrix"));
}
