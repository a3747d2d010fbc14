use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_coxdec");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn classify_reports_type_and_signature() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"rank":3,"m":[[1,2,7],[2,1,3],[7,3,1]]}"#,
    );
    let o = run(&["classify", s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("type: hyperbolic, signature (2,0,1)"));

    let a = write(
        &dir,
        "a.json",
        r#"{"rank":3,"m":[[1,3,3],[3,1,3],[3,3,1]]}"#,
    );
    let o = run(&["classify", s(&a)]);
    assert!(stdout(&o).contains("type: parabolic, components [Ã2]"));

    let o = run(&["classify", "--json", s(&a)]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["type"], "parabolic");
    assert_eq!(v["signature"]["zero"], 1);
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"rank":2,"m":[[1,1],[1,1]]}"#);
    assert_eq!(run(&["classify", s(&bad)]).status.code(), Some(2));
    let broken = write(&dir, "broken.json", "{\"rank\": 2,\n \"m\": [[1,");
    let o = run(&["classify", s(&broken)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        run(&["classify", "/nonexistent/x.json"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let tet = write(
        &dir,
        "tet.json",
        r#"{"rank":4,"m":[[1,4,2,2],[4,1,3,2],[2,3,1,4],[2,2,4,1]]}"#,
    );
    assert_eq!(run(&["render", s(&tet)]).status.code(), Some(2));
}

#[test]
fn subgroup_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"rank":3,"m":[[1,2,8],[2,1,3],[8,3,1]]}"#,
    );
    let h = write(
        &dir,
        "h.json",
        r#"{"reflections":[{"word":[1]},{"word":[2]},{"word":[0,2,0]}]}"#,
    );
    let o = run(&["subgroup", s(&g), s(&h)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], 2);
    assert_eq!(v["holds"], true);

    let o = run(&["subgroup", "--max-index", "1", s(&g), s(&h)]);
    assert_eq!(o.status.code(), Some(3));

    let strip = write(
        &dir,
        "strip.json",
        r#"{"rank":3,"m":[[1,2,2],[2,1,0],[2,0,1]]}"#,
    );
    let pair = write(
        &dir,
        "pair.json",
        r#"{"reflections":[{"word":[1]},{"word":[2]}]}"#,
    );
    let o = run(&["subgroup", s(&strip), s(&pair)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(v["finite_volume"], false);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "lemma2", "--max-rank", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["suite"], "lemma2");
    assert_eq!(v[0]["cases"], 625);

    let small = run(&[
        "verify",
        "--suite",
        "theorem",
        "--max-index",
        "4",
        "--jobs",
        "2",
    ]);
    assert_eq!(small.status.code(), Some(0));
    let full = run(&["verify", "--suite", "theorem"]);
    let count = |o: &Output| {
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v[0]["entries"].as_array().unwrap().len()
    };
    assert!(count(&small) < count(&full));

    assert_eq!(
        run(&["verify", "--suite", "remark2"]).status.code(),
        Some(0)
    );
}

#[test]
fn render_writes_deterministic_svg() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"rank":3,"m":[[1,2,7],[2,1,3],[7,3,1]]}"#,
    );
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for out in [&a, &b] {
        let o = run(&["render", s(&g), "--depth", "4", "--output", s(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    let o = run(&["render", s(&g), "--depth", "0"]);
    assert_eq!(stdout(&o).matches("<path class=\"chamber").count(), 1);
    let o = run(&["render", s(&g), "--model", "euclidean-plane"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_lists_entries() {
    let dir = TempDir::new().unwrap();
    let g = write(
        &dir,
        "g.json",
        r#"{"rank":3,"m":[[1,2,4],[2,1,4],[4,4,1]]}"#,
    );
    let o = run(&["enumerate", s(&g), "--max-index", "16"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert!(entries
        .iter()
        .any(|e| e["verdict"]["index"] == 8 && e["verdict"]["k_P"] == 4));
}
