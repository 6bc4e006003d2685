//! Every `docs/corpus/*.kappa` file is run in text and JSON mode and
//! compared with its golden `.out`, `.json` and `.err` files. Set
//! `KAPPA_BLESS=1` to rewrite the goldens.

mod common;

use common::{code, corpus, kappa, stderr, stdout};
use std::fs;
use std::path::Path;

fn expected_exit(text: &str) -> i32 {
    text.lines()
        .find_map(|l| l.strip_prefix("# expect-exit:"))
        .map(|v| v.trim().parse().unwrap())
        .unwrap_or(0)
}

fn check(path: &Path, got: &str, bless: bool) -> Option<String> {
    if bless {
        if got.is_empty() {
            let _ = fs::remove_file(path);
        } else {
            fs::write(path, got).unwrap();
        }
        return None;
    }
    let want = fs::read_to_string(path).unwrap_or_default();
    (want != got).then(|| format!("{}: output differs\n--- expected\n{want}--- got\n{got}", path.display()))
}

#[test]
fn corpus_matches_goldens() {
    let dir = corpus();
    let bless = std::env::var_os("KAPPA_BLESS").is_some();
    let mut files: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "kappa"))
        .collect();
    files.sort();
    assert!(files.len() >= 10, "corpus looks incomplete: {files:?}");
    let mut failures = Vec::new();
    for f in &files {
        let name = f.file_name().unwrap().to_str().unwrap();
        let want_code = expected_exit(&fs::read_to_string(f).unwrap());
        let text = kappa(&dir).args(["run", name]).output().unwrap();
        let json = kappa(&dir).args(["--json", "run", name]).output().unwrap();
        for (o, mode) in [(&text, "text"), (&json, "json")] {
            if code(o) != want_code {
                failures.push(format!("{name} ({mode}): exit {} but expected {want_code}\n{}", code(o), stderr(o)));
            }
        }
        let stem = f.with_extension("");
        failures.extend(check(&stem.with_extension("out"), &stdout(&text), bless));
        failures.extend(check(&stem.with_extension("json"), &stdout(&json), bless));
        failures.extend(check(&stem.with_extension("err"), &stderr(&text), bless));
        assert_eq!(stderr(&text), stderr(&json), "{name}: stderr depends on --json");
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn parse_errors_carry_positions() {
    let dir = corpus();
    for (file, pos) in [
        ("bad_unknown_generator.kappa", "4:12"),
        ("bad_missing_end.kappa", "2:1"),
        ("bad_rational.kappa", "5:20"),
        ("bad_statement.kappa", "3:1"),
    ] {
        let o = kappa(&dir).args(["run", file]).output().unwrap();
        assert_eq!(code(&o), 2, "{file}");
        assert!(stderr(&o).starts_with(&format!("{file}:{pos}: parse error")), "{file}: {}", stderr(&o));
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn corrupted_bracket_names_the_offending_tuple() {
    let dir = corpus();
    let o = kappa(&dir).args(["check-jacobi", "corrupted_bracket.kappa"]).output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("(x, x, y): residual"), "{}", stdout(&o));
    let o = kappa(&dir).args(["--json", "check-jacobi", "corrupted_bracket.kappa"]).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = &v["reports"][0];
    assert_eq!(r["passed"], false);
    let bad: Vec<_> = r["arities"].as_array().unwrap().iter().flat_map(|a| a["violations"].as_array().unwrap().clone()).collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["tuple"], serde_json::json!(["x", "x", "y"]));
    let o = kappa(&dir).args(["check-jacobi", "free_xy.kappa"]).output().unwrap();
    assert_eq!(code(&o), 0);
}
