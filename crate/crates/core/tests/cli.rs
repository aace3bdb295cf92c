use std::fs;
use std::path::{Path, PathBuf};

use linespace::cli::{run, sidecar_path};
use linespace::format::{parse_model, parse_structure};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("linespace").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate(dir: &TempDir, kind: &str, q: Option<&str>, name: &str) -> PathBuf {
    let out = path(dir, name);
    let mut args = vec!["generate", kind, "--out", s(&out)];
    if let Some(q) = q {
        args.extend(["--q", q]);
    }
    let r = cli(&args);
    assert_eq!(r.code, 0, "{}", r.stderr);
    out
}

#[test]
fn generate_writes_expected_files() {
    let dir = TempDir::new().unwrap();
    let t = generate(&dir, "tetrahedron", None, "t.json");
    let st = parse_structure(&fs::read_to_string(&t).unwrap(), 4096).unwrap();
    assert_eq!(st.line_count(), 6);
    assert_eq!(st.skew_pairs().count(), 3);

    let p = generate(&dir, "pg3", Some("2"), "pg.json");
    let sp = parse_structure(&fs::read_to_string(&p).unwrap(), 4096).unwrap();
    assert_eq!(sp.line_count(), 35);
    assert!(sidecar_path(&p).exists());

    let r = cli(&[
        "generate",
        "pg3",
        "--q",
        "4",
        "--out",
        s(&path(&dir, "x.json")),
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("unsupported field"));

    for bad in [
        vec!["generate", "cube", "--out", "y.json"],
        vec!["generate", "negative:unknown", "--out", "y.json"],
        vec!["generate", "pg3", "--out", "y.json"],
        vec!["frobnicate"],
    ] {
        assert_eq!(cli(&bad).code, 2, "{bad:?}");
    }
}

#[test]
fn repeated_generation_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = generate(&dir, "pg3", Some("3"), "a.json");
    let b = generate(&dir, "pg3", Some("3"), "b.json");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(
        fs::read(sidecar_path(&a)).unwrap(),
        fs::read(sidecar_path(&b)).unwrap()
    );
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let t = generate(&dir, "tetrahedron", None, "t.json");
    let report = path(&dir, "r.json");
    let r = cli(&["check", s(&t), "--which", "axioms", "--report", s(&report)]);
    assert_eq!(r.code, 1);
    let failing: Vec<&str> = r.stdout.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].contains("axiom_1"));
    // labels, not indices, in human output
    assert!(failing[0].contains("l=a"));

    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["format"], "linespace-report-v1");
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 6);
    assert_eq!(reports[0]["passed"], false);
    assert_eq!(reports[0]["counterexample"]["lines"]["l"], "a");

    let p = generate(&dir, "pg3", Some("2"), "pg.json");
    assert_eq!(cli(&["check", s(&p), "--which", "all"]).code, 0);
    assert_eq!(cli(&["check", s(&t), "--which", "theorems"]).code, 0);

    let bad = path(&dir, "bad.json");
    fs::write(&bad, "{\"format\": \"linespace-v1\", \"name\": 3}").unwrap();
    assert_eq!(cli(&["check", s(&bad)]).code, 2);
    assert_eq!(cli(&["check", s(&path(&dir, "missing.json"))]).code, 2);
    assert_eq!(cli(&["check", s(&t), "--which", "nonsense"]).code, 2);
}

#[test]
fn derive_and_dualize() {
    let dir = TempDir::new().unwrap();
    let t = generate(&dir, "tetrahedron", None, "t.json");
    let m0 = path(&dir, "m0.json");
    let m1 = path(&dir, "m1.json");
    assert_eq!(
        cli(&["derive", s(&t), "--out", s(&m0), "--seed", "0,1,0"]).code,
        0
    );
    assert_eq!(
        cli(&["derive", s(&t), "--out", s(&m1), "--seed", "0,1,1"]).code,
        0
    );
    let a = parse_model(&fs::read_to_string(&m0).unwrap(), 4096).unwrap();
    let b = parse_model(&fs::read_to_string(&m1).unwrap(), 4096).unwrap();
    assert_eq!((a.points().len(), a.planes().len()), (4, 4));
    assert_eq!(a.points(), b.planes());
    assert_eq!(a.planes(), b.points());

    let d = path(&dir, "d.json");
    let dd = path(&dir, "dd.json");
    assert_eq!(cli(&["dualize", s(&m0), "--out", s(&d)]).code, 0);
    assert_eq!(cli(&["dualize", s(&d), "--out", s(&dd)]).code, 0);
    assert_eq!(fs::read(&m0).unwrap(), fs::read(&dd).unwrap());
    // the dual of the class-0 model is the class-1 model
    assert_eq!(fs::read(&d).unwrap(), fs::read(&m1).unwrap());

    let p = generate(&dir, "pg3", Some("2"), "pg.json");
    let pm = path(&dir, "pm.json");
    let r = cli(&["derive", s(&p), "--out", s(&pm)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("15 points and 15 planes"));
    assert_eq!(
        cli(&["dualize", s(&pm), "--out", s(&path(&dir, "pd.json"))]).code,
        0
    );

    // a model whose points and planes are the same sets is inconsistent
    let text = fs::read_to_string(&m0).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let broken = text.replace(
        &format!("\"planes\": {}", v["planes"]),
        &format!("\"planes\": {}", v["points"]),
    );
    assert_ne!(broken, text);
    let bad = path(&dir, "bad_model.json");
    fs::write(&bad, broken).unwrap();
    assert_eq!(
        cli(&["dualize", s(&bad), "--out", s(&path(&dir, "o.json"))]).code,
        1
    );

    assert_eq!(
        cli(&["derive", s(&t), "--out", s(&m0), "--seed", "0,3,0"]).code,
        2
    );
    assert_eq!(
        cli(&["derive", s(&t), "--out", s(&m0), "--seed", "0,1"]).code,
        2
    );
    let n = generate(&dir, "negative:two_components", None, "n.json");
    assert_eq!(cli(&["derive", s(&n), "--out", s(&m0)]).code, 1);
    // a structure file is not a model
    assert_eq!(cli(&["dualize", s(&t), "--out", s(&d)]).code, 2);
}

#[test]
fn info_summaries() {
    let dir = TempDir::new().unwrap();
    let t = generate(&dir, "tetrahedron", None, "t.json");
    let r = cli(&["info", s(&t)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("lines: 6"));
    assert!(r.stdout.contains("skew pairs: 3"));
    assert!(r.stdout.contains("points: 4, planes: 4"));

    let p = generate(&dir, "pg3", Some("3"), "pg.json");
    let r = cli(&["info", s(&p)]);
    assert!(r.stdout.contains("lines: 130"));
    assert!(r.stdout.contains("points: 40, planes: 40"));

    let empty = path(&dir, "empty.json");
    fs::write(&empty, "").unwrap();
    assert_eq!(cli(&["info", s(&empty)]).code, 2);

    let n = generate(&dir, "negative:single_line", None, "n.json");
    let r = cli(&["info", s(&n)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("lines: 1"));
}

#[test]
fn binary_honours_line_cap() {
    let dir = TempDir::new().unwrap();
    let t = generate(&dir, "tetrahedron", None, "t.json");
    let bin = env!("CARGO_BIN_EXE_linespace");
    let status = |cap: &str| {
        std::process::Command::new(bin)
            .args(["info", s(&t)])
            .env("LINESPACE_MAX_LINES", cap)
            .output()
            .unwrap()
    };
    assert_eq!(status("6").status.code(), Some(0));
    let capped = status("5");
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("maximum of 5"));
    assert_eq!(status("lots").status.code(), Some(2));
}
