use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const FILLED: &str = "0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n2 0 1 2\n";
const HOLLOW: &str = "0 0\n0 1\n0 2\n1 0 1\n1 1 2\n1 0 2\n";

fn harmonia(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmonia")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", FILLED);
    assert_eq!(harmonia(&["validate", s(&good)]).status.code(), Some(0));

    let bad = write(&dir, "bad.txt", "0 0\n0 1\n1 0 2\n");
    let out = harmonia(&["validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3") && err.contains("[0 2]"), "{err}");

    let missing = dir.path().join("nope.txt");
    assert_eq!(harmonia(&["validate", s(&missing)]).status.code(), Some(1));
}

#[test]
fn barcode_text_output() {
    let dir = TempDir::new().unwrap();
    let filled = write(&dir, "filled.txt", FILLED);
    let hollow = write(&dir, "hollow.txt", HOLLOW);
    let out = harmonia(&["barcode", s(&filled), "--dim", "1", "--algo", "canonical"]);
    assert_eq!((out.status.code(), stdout(&out)), (Some(0), "1 2\n".to_string()));
    let out = harmonia(&["barcode", s(&hollow), "--dim", "1"]);
    assert_eq!(stdout(&out), "1 inf\n");
    for algo in ["persistence", "subordinate"] {
        assert_eq!(stdout(&harmonia(&["barcode", s(&filled), "--algo", algo])), "1 2\n");
    }
}

#[test]
fn barcode_json_is_order_independent() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", FILLED);
    let shuffled: String = FILLED.lines().rev().map(|l| format!("{l}\n")).collect();
    let b = write(&dir, "b.txt", &shuffled);
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["provenance"]["input_sha256"] = serde_json::Value::Null;
        serde_json::to_string(&v).unwrap()
    };
    let ja = strip(harmonia(&["barcode", s(&a), "--format", "json", "--reps"]));
    let jb = strip(harmonia(&["barcode", s(&b), "--format", "json", "--reps"]));
    assert_eq!(ja, jb);
    assert!(ja.contains(r#""death":"2""#), "{ja}");
}

#[test]
fn bottleneck_outputs() {
    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.txt", "0 2\n");
    let empty = write(&dir, "empty.txt", "");
    let half = write(&dir, "half.txt", "0 1\n");
    assert_eq!(stdout(&harmonia(&["bottleneck", s(&one), s(&one)])), "0\n");
    assert_eq!(stdout(&harmonia(&["bottleneck", s(&one), s(&empty)])), "1\n");
    assert_eq!(stdout(&harmonia(&["bottleneck", s(&half), s(&empty)])), "1/2\n");
    assert_eq!(stdout(&harmonia(&["bottleneck", s(&half), s(&empty), "--decimal"])), "0.5\n");
    let inf = write(&dir, "inf.txt", "0 inf\n");
    assert_eq!(stdout(&harmonia(&["bottleneck", s(&inf), s(&empty)])), "inf\n");
}

#[test]
fn bottleneck_on_documents_checks_dimensions() {
    let dir = TempDir::new().unwrap();
    let filled = write(&dir, "filled.txt", FILLED);
    let h0 = harmonia(&["barcode", s(&filled), "--dim", "0", "--format", "json"]);
    let h1 = harmonia(&["barcode", s(&filled), "--dim", "1", "--format", "json"]);
    let d0 = write(&dir, "d0.json", &stdout(&h0));
    let d1 = write(&dir, "d1.json", &stdout(&h1));
    assert_eq!(stdout(&harmonia(&["bottleneck", s(&d1), s(&d1)])), "0\n");
    assert_eq!(harmonia(&["bottleneck", s(&d0), s(&d1)]).status.code(), Some(2));
    assert_eq!(harmonia(&["bottleneck", s(&d1), s(&d1), "--dim", "0"]).status.code(), Some(2));
}

#[test]
fn render_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let filled = write(&dir, "filled.txt", FILLED);
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    assert_eq!(harmonia(&["render", s(&filled), "--out", s(&a)]).status.code(), Some(0));
    assert_eq!(harmonia(&["render", s(&filled), "--out", s(&b)]).status.code(), Some(0));
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches(r#"class="bar""#).count(), 1);

    let empty = dir.path().join("e.svg");
    harmonia(&["render", s(&filled), "--dim", "2", "--out", s(&empty)]);
    assert_eq!(std::fs::read_to_string(&empty).unwrap().matches(r#"class="bar""#).count(), 0);

    let unwritable = dir.path().join("missing-dir").join("x.svg");
    assert_eq!(harmonia(&["render", s(&filled), "--out", s(&unwritable)]).status.code(), Some(1));
}

fn summary(o: &Output) -> serde_json::Value {
    let text = stdout(o);
    serde_json::from_str(text.lines().last().unwrap()).unwrap()
}

#[test]
fn stability_runs() {
    let out = harmonia(&["stability", "--random", "3", "--trials", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 21);
    let sum = summary(&out);
    assert_eq!(sum["summary"]["failed"], 0);

    let zero = harmonia(&["stability", "--random", "3", "--trials", "5", "--eps", "0"]);
    assert_eq!(zero.status.code(), Some(0));
    for line in stdout(&zero).lines().take(5) {
        let r: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!((r["d_chd"].as_str(), r["d_dgm"].as_str()), (Some("0"), Some("0")));
    }

    let dir = TempDir::new().unwrap();
    let filled = write(&dir, "filled.txt", FILLED);
    let out = harmonia(&["stability", "--complex", s(&filled), "--trials", "10", "--generator", "lower-star"]);
    assert_eq!(out.status.code(), Some(0));

    assert_eq!(harmonia(&["stability", "--trials", "3"]).status.code(), Some(2));
    assert_eq!(harmonia(&["stability", "--random", "1", "--eps", "-1"]).status.code(), Some(2));
    assert_eq!(harmonia(&["stability", "--random", "1", "--eps", "abc"]).status.code(), Some(2));
}

#[test]
fn thread_variable() {
    let dir = TempDir::new().unwrap();
    let filled = write(&dir, "filled.txt", FILLED);
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_harmonia"))
            .args(["barcode", s(&filled)])
            .env("HARMONIA_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(stdout(&run("1")), "1 2\n");
    assert_eq!(run("zero").status.code(), Some(2));
}
