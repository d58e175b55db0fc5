//! End-to-end runs of the binary. Expected stdout lives in `tests/golden`;
//! run with `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzy-horn"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str], code: i32) {
    let out = run(args);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        out.status.code(),
        Some(code),
        "{name}: stdout:\n{stdout}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let path = root().join("tests/golden").join(format!("{name}.out"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &stdout).unwrap();
        return;
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stdout, expected, "{name} drifted from its golden output");
}

#[test]
fn classify_outputs() {
    golden("classify-horn", &["classify", "tests/data/horn.theory"], 0);
    golden("classify-exists", &["classify", "tests/data/exists.theory"], 1);
    golden(
        "classify-disjunction",
        &["classify", "tests/data/disjunction.theory"],
        1,
    );
    golden(
        "classify-horn-machine",
        &["--format", "machine", "classify", "tests/data/horn.theory"],
        0,
    );
}

#[test]
fn saturate_outputs() {
    golden("saturate-horn", &["saturate", "tests/data/horn.theory"], 0);
    golden("saturate-equality", &["saturate", "tests/data/equality.theory"], 0);
    golden(
        "saturate-equality-machine",
        &["saturate", "--format", "machine", "tests/data/equality.theory"],
        0,
    );
    golden(
        "saturate-successor",
        &["saturate", "--depth", "3", "tests/data/successor.theory"],
        0,
    );
    golden(
        "saturate-inconsistent",
        &["saturate", "tests/data/inconsistent.theory"],
        1,
    );
}

#[test]
fn inconsistent_reports_on_stderr() {
    let out = run(&["saturate", "tests/data/inconsistent.theory"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("inconsistent: 0\u{304} derived"));
}

#[test]
fn eval_outputs() {
    golden(
        "eval-lukasiewicz",
        &["eval", "tests/data/lukasiewicz.struct", "P1(c) & P2(c) -> P3(c)"],
        0,
    );
    golden(
        "eval-lukasiewicz-decimal",
        &[
            "eval",
            "--decimal",
            "tests/data/lukasiewicz.struct",
            "P1(c) & P2(c) -> P3(c)",
        ],
        0,
    );
    golden("eval-godel", &["eval", "tests/data/godel.struct", "~(P(c) -> bot)"], 0);
    golden("eval-bot", &["eval", "tests/data/godel.struct", "bot"], 0);
    golden(
        "eval-assign",
        &[
            "eval",
            "--format",
            "machine",
            "tests/data/target.struct",
            "P(x) -> Q(x)",
            "--assign",
            "x=b",
        ],
        0,
    );
}

#[test]
fn algebra_override() {
    // the same table read over product: 1 * 9/10 => 1/2 is 5/9
    golden(
        "eval-product-override",
        &[
            "eval",
            "--algebra",
            "product",
            "tests/data/lukasiewicz.struct",
            "P1(c) & P2(c) -> P3(c)",
        ],
        0,
    );
}

#[test]
fn model_check_and_herbrand() {
    golden(
        "model-check-godel",
        &["model-check", "tests/data/godel.struct", "tests/data/godel.theory"],
        0,
    );
    golden(
        "model-check-lukasiewicz",
        &[
            "model-check",
            "tests/data/lukasiewicz.struct",
            "tests/data/lukasiewicz.theory",
        ],
        1,
    );
    golden(
        "herbrand-of-model",
        &[
            "herbrand",
            "tests/data/lukasiewicz.theory",
            "--model",
            "tests/data/lukasiewicz.struct",
        ],
        0,
    );
    golden("herbrand-least", &["herbrand", "tests/data/horn.theory"], 0);
    golden(
        "herbrand-inconsistent",
        &["herbrand", "tests/data/inconsistent.theory"],
        1,
    );
}

#[test]
fn morphism_commands() {
    golden(
        "free-hom",
        &[
            "free-hom",
            "tests/data/horn.theory",
            "tests/data/target.struct",
            "--assign",
            "v1=b",
        ],
        0,
    );
    golden("repro-all", &["repro", "all"], 0);
    golden("repro-godel-machine", &["--format", "machine", "repro", "godel-0.8"], 0);
}

#[test]
fn written_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let p = |n: &str| d.join(n).to_string_lossy().into_owned();
    let out = run(&["saturate", "tests/data/horn.theory", "--out", &p("sat")]);
    assert_eq!(out.status.code(), Some(0));
    let term = fs::read_to_string(d.join("sat/term-structure.txt")).unwrap();
    assert!(term.starts_with("algebra boolean"), "{term}");
    assert_eq!(fs::read_to_string(d.join("sat/classes.txt")).unwrap(), "c: c\nv1: v1\n");

    // the term structure models its own theory
    let mc = run(&["model-check", &p("sat/term-structure.txt"), "tests/data/horn.theory"]);
    assert_eq!(mc.status.code(), Some(0), "{}", String::from_utf8_lossy(&mc.stdout));

    // the written map checks out against the written term structure
    let fh = run(&[
        "free-hom",
        "tests/data/horn.theory",
        "tests/data/target.struct",
        "--assign",
        "v1=b",
        "--out",
        &p("map.txt"),
    ]);
    assert_eq!(fh.status.code(), Some(0));
    let hc = run(&[
        "hom-check",
        &p("sat/term-structure.txt"),
        "tests/data/target.struct",
        &p("map.txt"),
    ]);
    assert_eq!(hc.status.code(), Some(0), "{}", String::from_utf8_lossy(&hc.stdout));

    let hx = run(&["herbrand", "tests/data/horn.theory", "--export", &p("h.struct")]);
    assert_eq!(hx.status.code(), Some(0));
    let mc = run(&["model-check", &p("h.struct"), "tests/data/horn.theory"]);
    assert_eq!(mc.status.code(), Some(0));
}

#[test]
fn hom_check_rejects_a_bad_map() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("bad.map");
    // c -> b loses P(c)
    fs::write(&map, "f: 0->0,1->1\ng: c -> b\ng: v1 -> b\n").unwrap();
    let sat = dir.path().join("sat");
    let out = run(&["saturate", "tests/data/horn.theory", "--out", sat.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let hc = run(&[
        "--format",
        "machine",
        "hom-check",
        sat.join("term-structure.txt").to_str().unwrap(),
        "tests/data/target.struct",
        map.to_str().unwrap(),
    ]);
    assert_eq!(hc.status.code(), Some(1));
    let text = String::from_utf8(hc.stdout).unwrap();
    assert!(text.contains("kind=not-homomorphism"), "{text}");
    assert!(text.contains("predicate-condition=P(c)"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["classify", "tests/data/no-such-file.theory"],
        vec!["repro", "no-such-example"],
        vec!["eval", "tests/data/godel.struct", "P(c) ->"],
        vec!["eval", "tests/data/godel.struct", "P(x)"],
        vec!["frobnicate"],
        vec![],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.theory");
    fs::write(&path, "pred P/1\nconst c\nP(c)\nP(c) -> -> P(c)\n").unwrap();
    let out = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn golden_directory_has_no_strays() {
    let names: Vec<String> = fs::read_dir(root().join("tests/golden"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(names.iter().all(|n| n.ends_with(".out")), "{names:?}");
    assert!(Path::new(&root().join("tests/golden/repro-all.out")).exists());
}
