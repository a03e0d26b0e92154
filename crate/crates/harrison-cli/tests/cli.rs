//! End-to-end checks of the command-line interface: exit codes, JSON
//! schema, and determinism.

use std::process::Command;

fn harrison(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_harrison"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = harrison(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn center_json_schema() {
    let out = stdout(&["center", "--expr", "x1^3+x2^3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "center");
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    assert_eq!(v["result"]["dim"], 2);
    let basis = v["result"]["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 2);
    // matrices are arrays of arrays of rational strings
    assert_eq!(basis[0][0][0], "1");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "decompose",
        "--expr",
        "x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + 2*x2^3",
        "--seed",
        "7",
        "--format",
        "json",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn exit_codes() {
    // parse error -> 1
    let out = harrison(&["center", "--expr", "x1^"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("offset 4"));
    // degenerate input (center refused) -> 2
    let out = harrison(&["center", "--expr", "(x1+x2)^3"]);
    assert_eq!(out.status.code(), Some(2));
    // missing input -> 1
    let out = harrison(&["center"]);
    assert_eq!(out.status.code(), Some(1));
    // success -> 0
    let out = harrison(&["refute", "-r", "2", "-d", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_identity_fixture() {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/fixtures/cor33_d4.json"
    );
    let out = stdout(&["check-identity", "-i", path, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["holds"], true);
    assert!(v["result"]["residual"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn thm32_command() {
    let out = stdout(&["thm32", "-n", "2", "-d", "4", "-a", "1,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["center_dim"], 1);
}

#[test]
fn form_document_input_roundtrip() {
    // write a FormDocument, feed it back through -i
    let doc = serde_json::json!({
        "variables": ["x1", "x2"],
        "terms": [
            {"coefficient": "1", "exponents": [3, 0]},
            {"coefficient": "1", "exponents": [0, 3]}
        ]
    });
    let dir = std::env::temp_dir().join("harrison-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cubic.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = stdout(&["center", "-i", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["dim"], 2);
}

#[test]
fn diagonalize_text_output() {
    let out = stdout(&["diagonalize", "--expr", "x1^3 + 8*x2^3"]);
    assert!(out.contains("diagonalizable: true"));
    let out = stdout(&["diagonalize", "--expr", "x1^2*x2 + x3^3"]);
    assert!(out.contains("diagonalizable: false"));
}

#[test]
fn rational_strings_reparse_exactly() {
    let out = stdout(&[
        "symtensor",
        "--expr",
        "1/3*x1^2*x2 + x2^3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for e in v["result"]["entries"].as_array().unwrap() {
        let s = e["value"].as_str().unwrap();
        // "p" or "p/q" with integer parts
        let mut parts = s.splitn(2, '/');
        parts.next().unwrap().parse::<i64>().unwrap();
        if let Some(q) = parts.next() {
            assert!(q.parse::<u64>().unwrap() > 0);
        }
    }
}
