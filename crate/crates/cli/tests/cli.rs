use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TRIANGLE: &str = "# boundary of a triangle\na b\nb c\na c\n";

fn dtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtc")).args(args).output().expect("dtc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn tc_of_triangle_boundary() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", TRIANGLE);
    let o = dtc(&["tc", &k]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("TC = 2 (exact)"), "{out}");
    assert!(out.contains("cover by 3 Farber subcomplexes"), "{out}");
}

#[test]
fn scat_reads_json_input() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.json", r#"  {"facets": [["a","b"],["b","c"],["a","c"]]}"#);
    let o = dtc(&["scat", &k]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("scat = 1 (exact)"));
}

#[test]
fn core_of_a_simplex_is_a_point() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", "a b c d\n");
    let o = dtc(&["core", &k]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("core: 1 vertices, 1 facets, dimension 0"), "{out}");
    assert!(out.contains("collapses (3):"));
}

#[test]
fn product_lists_facet_pairs() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", TRIANGLE);
    let o = dtc(&["product", &k]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()).count(), 9);
}

#[test]
fn certificates_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", TRIANGLE);
    for verb in ["tc", "scat", "core"] {
        let o = dtc(&["--json", verb, &k]);
        assert_eq!(o.status.code(), Some(0), "{verb}");
        let cert = write(&dir, &format!("{verb}.json"), &stdout(&o));
        let v = dtc(&["verify", &cert]);
        assert_eq!(v.status.code(), Some(0), "{verb}: {}", String::from_utf8_lossy(&v.stderr));
        assert!(stdout(&v).starts_with("certificate accepted"));
    }
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", TRIANGLE);
    let json = stdout(&dtc(&["--json", "tc", &k]));
    let mut cert: serde_json::Value = serde_json::from_str(&json).unwrap();
    cert["value"] = serde_json::json!(1);
    cert["upper_bound"] = serde_json::json!(1);
    let bad = write(&dir, "bad.json", &cert.to_string());
    let o = dtc(&["verify", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn parse_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.json", "{\"facets\": [[\"a\", ");
    let o = dtc(&["tc", &k]);
    assert_eq!(o.status.code(), Some(1));
    let missing = dir.path().join("missing.txt");
    assert_eq!(dtc(&["tc", path(&missing)]).status.code(), Some(1));
}

#[test]
fn tiny_budget_is_reported_honestly() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", "a b\nb c\nc d\nd e\na e\n");
    let o = dtc(&["--budget", "1", "tc", &k]);
    let out = stdout(&o);
    match o.status.code() {
        Some(0) => assert!(out.contains("(exact)"), "{out}"),
        Some(2) => assert!(out.contains("budget exhausted"), "{out}"),
        code => panic!("unexpected exit {code:?}: {out}"),
    }
    let j = dtc(&["--budget", "1", "--json", "tc", &k]);
    let cert = write(&dir, "c.json", &stdout(&j));
    assert_eq!(dtc(&["verify", &cert]).status.code(), j.status.code());
}

#[test]
fn farber_and_categorical_verdicts() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", TRIANGLE);
    let yes = dtc(&["is-farber", &k, "--omega", "a|a b|b; a|a a|b"]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(stdout(&yes).starts_with("yes"));
    let square = write(&dir, "square.txt", &stdout(&dtc(&["product", &k])));
    let no = dtc(&["is-farber", &k, "--omega", &square]);
    assert_eq!(no.status.code(), Some(0));
    assert!(stdout(&no).starts_with("no"));
    let cat = dtc(&["is-categorical", &k, "--sub", "a b; b c"]);
    assert!(stdout(&cat).starts_with("yes"));
    let not_cat = dtc(&["is-categorical", &k, "--sub", TRIANGLE]);
    assert!(stdout(&not_cat).starts_with("no"));
    let j = dtc(&["--json", "is-farber", &k, "--omega", "a|a b|b"]);
    let cert = write(&dir, "f.json", &stdout(&j));
    assert_eq!(dtc(&["verify", &cert]).status.code(), Some(0));
}

#[test]
fn plan_walks_from_source_to_target() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", TRIANGLE);
    let o = dtc(&["plan", &k, "--from", "a", "--to", "c"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let first = out.lines().next().unwrap();
    assert!(first.starts_with("a") && first.ends_with("c"), "{out}");
    let j = dtc(&["--json", "plan", &k, "--from", "b", "--to", "a"]);
    let cert = write(&dir, "p.json", &stdout(&j));
    assert_eq!(dtc(&["verify", &cert]).status.code(), Some(0));
    assert_eq!(dtc(&["plan", &k, "--from", "a", "--to", "zz"]).status.code(), Some(1));
}

#[test]
fn disconnected_complexes_have_no_cover() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", "a\nb\n");
    let o = dtc(&["tc", &k]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no admissible cover"));
    assert_eq!(dtc(&["plan", &k, "--from", "a", "--to", "b"]).status.code(), Some(1));
}

#[test]
fn thread_count_is_accepted() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", TRIANGLE);
    let o = dtc(&["--threads", "1", "tc", &k]);
    assert!(stdout(&o).starts_with("TC = 2 (exact)"));
}

#[test]
fn json_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let k = write(&dir, "k.txt", "a b\nb c\nc d\na d\n");
    let first = stdout(&dtc(&["--json", "tc", &k]));
    assert_eq!(first, stdout(&dtc(&["--json", "tc", &k])));
}
