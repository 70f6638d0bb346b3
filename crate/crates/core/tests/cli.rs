//! End-to-end tests of the `spalex` binary.

mod common;

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use common::*;
use spatial_alexander::Laurent;

fn data_path(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn spalex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spalex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn spalex_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spalex"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spalex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn published_matrix_examples() {
    let m = data_path("bouquet_matrix.json");
    let out = spalex(&["alex", "--raw-matrix", &m, "--k", "1"]);
    assert_eq!(stdout(&out).trim(), "t^2 - 2*t + 2");
    let out = spalex(&["det", "--raw-matrix", &m, "--n", "-1", "--k", "1"]);
    assert!(stdout(&out).trim().starts_with("5"), "{}", stdout(&out));
    let out = spalex(&["--json", "det", "--raw-matrix", &m, "--n", "5", "--k", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["value"], "17");
}

#[test]
fn loop_has_trivial_polynomial() {
    let out = spalex(&["alex", &data_path("loop.json"), "--k", "1"]);
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn json_envelope() {
    let out = spalex(&[
        "--json",
        "alex",
        &data_path("trefoil_vertex.json"),
        "--k",
        "1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["operation"], "alex");
    assert_eq!(v["inputs"]["k"], 1);
    assert_eq!(v["result"]["text"], "t^2 - t + 1");
    assert_eq!(
        v["result"]["terms"],
        serde_json::json!([[0, "1"], [1, "-1"], [2, "1"]])
    );
}

#[test]
fn exit_codes() {
    let out = spalex_stdin(&["alex", "-"], b"{not json");
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("malformed JSON"), "{}", stderr(&out));

    let out = spalex(&["alex", "/nonexistent/diagram.json"]);
    assert_eq!(out.status.code(), Some(1));

    let unbalanced = br#"{"edges":[{"id":"a","weight":1,"arcs":["x"]}],"crossings":[],
        "vertices":[{"id":"v","incident":[{"arc":"x","sign":-1}]},
                    {"id":"w","incident":[{"arc":"x","sign":1}]}]}"#;
    let out = spalex_stdin(&["alex", "-"], unbalanced);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("unbalanced weighting at vertex v"),
        "{}",
        stderr(&out)
    );

    let out = spalex(&["color", &data_path("bouquet.json"), "--p", "5", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("5 divides 5"), "{}", stderr(&out));

    let out = spalex(&["color", &data_path("bouquet.json"), "--p", "9", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = spalex(&["alex", &data_path("bouquet.json"), "--naive", "--cap", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cap exceeded"), "{}", stderr(&out));

    let out = spalex(&[
        "color",
        &data_path("bouquet.json"),
        "--p",
        "13",
        "--n",
        "2",
        "--enumerate",
        "--cap",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let bouquet = data_path("bouquet.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["--json", "matrix", &bouquet],
        vec!["--json", "alex", &bouquet, "--k", "1"],
        vec!["--json", "det", &bouquet, "--n", "-1", "--k", "1"],
        vec![
            "--json",
            "color",
            &bouquet,
            "--p",
            "5",
            "--n",
            "-1",
            "--enumerate",
            "--check-k",
            "1",
        ],
        vec!["--json", "reps", &bouquet, "--p", "5", "--k", "2", "--list"],
        vec!["--json", "weightings", &bouquet],
        vec!["transform", &bouquet, "parallel", "2", "2"],
        vec!["alex", &bouquet, "--k", "1", "--threads", "4"],
    ];
    for args in &commands {
        let first = spalex(args);
        let second = spalex(args);
        assert!(first.status.success(), "{args:?}: {}", stderr(&first));
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn threads_do_not_change_results() {
    let bouquet = data_path("bouquet.json");
    let one = stdout(&spalex(&["alex", &bouquet, "--k", "1", "--naive"]));
    let many = stdout(&spalex(&[
        "--threads",
        "4",
        "alex",
        &bouquet,
        "--k",
        "1",
        "--naive",
    ]));
    assert_eq!(one, many);
}

#[test]
fn representation_counts_for_the_bouquet() {
    let out = spalex(&[
        "--json",
        "reps",
        &data_path("bouquet.json"),
        "--p",
        "5",
        "--k",
        "-1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["total"], 125);
    assert_eq!(v["result"]["cyclic"], 5);
    assert_eq!(v["result"]["orbits"], 6);
}

/// `transform mirror | alex -` against `alex` followed by `t ↦ t⁻¹`, over the whole corpus.
#[test]
fn mirror_pipeline_inverts_polynomial() {
    let dir = scratch_dir();
    for (i, d) in corpus().iter().enumerate() {
        let path = dir.join(format!("d{i}.json"));
        std::fs::write(&path, d.to_json()).unwrap();
        let path = path.to_str().unwrap();
        let base: Laurent = stdout(&spalex(&["alex", path, "--k", "1"]))
            .trim()
            .parse()
            .unwrap();
        let mirrored = stdout(&spalex(&["transform", path, "mirror"]));
        let piped: Laurent = stdout(&spalex_stdin(
            &["alex", "-", "--k", "1"],
            mirrored.as_bytes(),
        ))
        .trim()
        .parse()
        .unwrap();
        assert_eq!(
            piped,
            base.substitute(-1).unwrap().normalize_unit(),
            "corpus diagram {i}"
        );
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn transforms_emit_valid_diagrams() {
    let trefoil = data_path("trefoil_vertex.json");
    let bouquet = data_path("bouquet.json");
    for op in [
        vec!["mirror"],
        vec!["reverse-all"],
        vec!["parallel", "3", "2"],
        vec!["wedge", &bouquet, "v", "v"],
    ] {
        let mut args = vec!["transform", trefoil.as_str()];
        args.extend(op.iter().copied());
        let json = stdout(&spalex(&args));
        let out = spalex_stdin(&["validate", "-"], json.as_bytes());
        assert!(out.status.success(), "{op:?}: {}", stderr(&out));
    }
    let json = stdout(&spalex(&[
        "transform",
        &trefoil,
        "wedge",
        &bouquet,
        "v",
        "v",
    ]));
    let product: Laurent = stdout(&spalex_stdin(&["alex", "-"], json.as_bytes()))
        .trim()
        .parse()
        .unwrap();
    assert_eq!(product, poly("t^2 - t + 1") * poly("t^2 - 2*t + 2"));
}
