use std::fs;
use std::process::{Command, Output};

fn riley(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riley"))
        .args(args)
        .env_remove("RILEY_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn riley_text_output() {
    let out = riley(&["riley", "7", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "S(7,3)\neps = (1, 1, -1, -1, 1, 1)\nphi = 1 - 2u + u^2 - u^3\n");
}

#[test]
fn riley_json_output() {
    let out = riley(&["riley", "3", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, serde_json::json!({"alpha": 3, "beta": 1, "eps": [1, 1], "phi": ["1", "-1"]}));
}

#[test]
fn invalid_pair_exits_2() {
    let out = riley(&["riley", "9", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("gcd(alpha,beta) must be 1"), "{}", stderr(&out));
    assert_eq!(riley(&["riley", "8", "3"]).status.code(), Some(2));
    assert_eq!(riley(&["riley", "7", "9"]).status.code(), Some(2));
}

#[test]
fn even_beta_is_normalized() {
    let out = riley(&["riley", "7", "2"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("normalized to S(7,-5)"));
    assert!(stdout(&out).contains("phi = 1 - 2u - 3u^2 - u^3"));
}

#[test]
fn table_csv_rows() {
    let out = riley(&["table", "--max-alpha", "7", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,beta,degree,coefficients");
    assert_eq!(lines.len(), 7);
    assert!(lines.contains(&"7,3,3,1;-2;1;-1"));
}

#[test]
fn table_mirrors_doubles_rows() {
    let plain = stdout(&riley(&["table", "--max-alpha", "9", "--format", "json"])).lines().count();
    let mirrored = stdout(&riley(&["table", "--max-alpha", "9", "--format", "json", "--mirrors"])).lines().count();
    assert_eq!(mirrored, 2 * plain);
}

#[test]
fn table_bounds() {
    assert_eq!(riley(&["table", "--max-alpha", "2"]).status.code(), Some(2));
    let out = riley(&["table", "--max-alpha", "8"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("even"));
    assert_eq!(stdout(&out), stdout(&riley(&["table", "--max-alpha", "7"])));
}

#[test]
fn epi_single_pair() {
    let no = riley(&["epi", "7", "3", "3", "1"]);
    assert!(no.status.success());
    assert!(stdout(&no).contains("factor: no"));

    let yes = riley(&["epi", "15", "1", "3", "1"]);
    assert!(yes.status.success());
    assert!(stdout(&yes).contains("factor: yes; psi = 1 - 27u + 99u^2 - 111u^3 + 54u^4 - 12u^5 + u^6 (degree 6)"));

    let json: serde_json::Value = serde_json::from_slice(&riley(&["epi", "9", "1", "3", "1", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["factor"], true);
    assert_eq!(json["evidence"]["integral"], true);

    let mirrored: serde_json::Value =
        serde_json::from_slice(&riley(&["epi", "9", "-1", "3", "-1", "--format", "json"]).stdout).unwrap();
    assert_eq!(mirrored["factor"], true);

    assert_eq!(riley(&["epi", "7", "3"]).status.code(), Some(2));
}

#[test]
fn epi_scan() {
    let empty = riley(&["epi", "--scan", "--max-alpha", "7"]);
    assert!(empty.status.success());
    assert_eq!(stdout(&empty), "0 pair(s)\n");

    let found = stdout(&riley(&["epi", "--scan", "--max-alpha", "15"]));
    assert!(found.contains("S(9,1) -> S(3,1)"));
    assert!(found.contains("S(15,1) -> S(3,1)"));
    assert_eq!(riley(&["epi", "--scan"]).status.code(), Some(2));
}

#[test]
fn verify_and_torus_check() {
    let out = riley(&["verify", "3", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("verified: yes"));

    let torus = riley(&["verify", "5", "1", "--torus-check"]);
    assert!(torus.status.success());
    assert!(stdout(&torus).contains("all roots real: yes"));

    let eight = riley(&["verify", "5", "3", "--torus-check"]);
    assert!(stdout(&eight).contains("all roots real: no"));

    let json: serde_json::Value = serde_json::from_slice(&riley(&["verify", "7", "3", "--format", "json"]).stdout).unwrap();
    assert_eq!(json["roots"].as_array().unwrap().len(), 3);
    assert_eq!(json["passed"], true);
}

#[test]
fn verify_large_alpha() {
    let out = riley(&["verify", "97", "25"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).matches(" ok").count(), 48);
}

#[test]
fn impossible_tolerance_is_reported() {
    let out = riley(&["verify", "31", "7", "--root-tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("did not converge"));
    assert_eq!(riley(&["verify", "7", "3", "--rep-tol", "0"]).status.code(), Some(2));
}

#[test]
fn classify_exit_codes_and_formats() {
    let out = riley(&["classify", "--max-alpha", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("injective on Sbar: yes"));

    let csv = stdout(&riley(&["classify", "--max-alpha", "9", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("alpha,s_plus,sbar,classes"));
    assert!(csv.contains("\n7,3,2,2\n"), "{csv}");
}

#[test]
fn cache_flag_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.jsonl");
    let p = path.to_str().unwrap();
    let reference = stdout(&riley(&["table", "--max-alpha", "15"]));

    let first = riley(&["table", "--max-alpha", "15", "--cache", p]);
    assert!(first.status.success());
    assert!(path.exists());
    assert_eq!(stdout(&first), reference);

    let from_env = Command::new(env!("CARGO_BIN_EXE_riley"))
        .args(["table", "--max-alpha", "15"])
        .env("RILEY_CACHE", p)
        .output()
        .unwrap();
    assert!(from_env.status.success());
    assert_eq!(stdout(&from_env), reference);
}

#[test]
fn poisoned_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.jsonl");
    let p = path.to_str().unwrap();
    assert!(riley(&["table", "--max-alpha", "7", "--cache", p]).status.success());
    let text = fs::read_to_string(&path).unwrap();
    let poisoned = text.replacen("\"phi\":[\"1\",\"-1\"]", "\"phi\":[\"1\",\"-2\"]", 1);
    assert_ne!(text, poisoned);
    fs::write(&path, poisoned).unwrap();
    let out = riley(&["table", "--max-alpha", "7", "--cache", p]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unwritable_cache_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("records.jsonl");
    let out = riley(&["table", "--max-alpha", "7", "--cache", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}
