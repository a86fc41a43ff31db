use std::process::{Command, Output};

use serde_json::Value;

fn talex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_talex"))
        .args(args)
        .output()
        .expect("spawn talex")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn whitehead_single_passes() {
    let out = talex(&["single", "--family", "J", "--m", "1", "--n", "1"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json(&out);
    let cases = report["cases"].as_array().unwrap();
    assert!(cases.iter().any(|c| c["twisted"]["span"] == 4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("pass"));
}

#[test]
fn off_variety_z_is_a_computational_failure() {
    let out = talex(&[
        "single", "--family", "C", "--m", "1", "--n", "1", "--p", "1", "--z", "0.5,1.2",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["cases"].as_array().unwrap().len(), 1);
}

#[test]
fn negative_z_parses() {
    let out = talex(&[
        "single", "--family", "J", "--m", "1", "--n", "1", "--z", "1,-1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(
        talex(&["single", "--family", "J", "--m", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        talex(&["single", "--family", "J", "--m", "0", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(talex(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        talex(&["riley", "--family", "C", "--m", "1", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn out_file_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dfj.csv");
    let p = path.to_str().unwrap();
    let out = talex(&[
        "suite", "dfj", "--m-max", "2", "--n-max", "1", "--format", "csv", "--out", p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("status"));
    assert!(lines.count() > 0);
}

#[test]
fn loci_suite_is_seeded() {
    let run = |seed: &str| {
        talex(&[
            "suite",
            "loci",
            "--m",
            "1",
            "--n",
            "2",
            "--samples",
            "5",
            "--points",
            "1",
            "--seed",
            seed,
        ])
    };
    let (a, b) = (run("7"), run("7"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, run("8").stdout);
}

#[test]
fn presentation_with_rep_files() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("whitehead.pres");
    let rep = dir.path().join("whitehead.rep");
    std::fs::write(
        &pres,
        "gens: a b\nlet u = b A b a B a\nlet w = B a u\nrel: a w A W\n",
    )
    .unwrap();
    std::fs::write(&rep, "a: 1,0 1,0 0,0 1,0\nb: 1,0 0,0 1,-1 1,0\n").unwrap();
    let out = talex(&[
        "single",
        "--presentation",
        pres.to_str().unwrap(),
        "--rep",
        rep.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["cases"][0]["twisted"]["span"], 4);

    std::fs::write(&rep, "a: 1,0 1,0 0,0\n").unwrap();
    let out = talex(&[
        "single",
        "--presentation",
        pres.to_str().unwrap(),
        "--rep",
        rep.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn riley_text_and_json() {
    let out = talex(&["riley", "--family", "J", "--m", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("J(3,3)"));
    assert_eq!(text.matches("nonreal").count(), 2);

    let out = talex(&[
        "riley", "--family", "C", "--m", "1", "--n", "1", "--p", "3", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rec = json(&out);
    assert_eq!(rec["roots"].as_array().unwrap().len(), 13);
}
