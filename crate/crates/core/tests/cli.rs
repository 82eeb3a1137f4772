//! End-to-end CLI checks: subcommands, file formats, exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn eds() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eds"))
}

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eds-cli-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

const P5: &str = "p eds 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n";
const P3: &str = "p eds 3 2\ne 1 2\ne 2 3\n";
const PENDANT_P6: &str = "p eds 6 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 6\nk 2\nx 6\n";

#[test]
fn classify_exit_codes_and_json() {
    let dir = workdir("classify");
    let p5 = write(&dir, "p5.graph", P5);
    let p3 = write(&dir, "p3.graph", P3);

    let out = eds().args(["classify", "--json", "--family"]).arg(&p5).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "quadratic");

    let out = eds().args(["classify", "--json", "--family"]).arg(&p3).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "no-poly-kernel");
    assert_eq!(v["item"], "1a");
}

#[test]
fn solve_yes_and_no() {
    let dir = workdir("solve");
    let inst = write(&dir, "inst.eds", PENDANT_P6);
    let out = eds().args(["solve", "--json", "--input"]).arg(&inst).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["answer"], true);

    let no = write(&dir, "no.eds", &PENDANT_P6.replace("k 2", "k 1"));
    let out = eds().args(["solve", "--input"]).arg(&no).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn kernelize_writes_reduced_instance() {
    let dir = workdir("kernelize");
    let inst = write(&dir, "inst.eds", PENDANT_P6);
    let p5 = write(&dir, "p5.graph", P5);
    let outfile = dir.join("reduced.eds");
    let out = eds()
        .args(["kernelize", "--json", "--input"])
        .arg(&inst)
        .arg("--family")
        .arg(&p5)
        .arg("--output")
        .arg(&outfile)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = fs::read_to_string(&outfile).unwrap();
    assert_eq!(text, "p eds 0 0\nk 0\nx\n");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["path"], "p5");
    assert_eq!(v["budget_delta"], 2);

    // no-poly-kernel family: exit 1 with the witness item in the message
    let p3 = write(&dir, "p3.graph", P3);
    let p3inst = write(&dir, "p3inst.eds", "p eds 3 2\ne 1 2\ne 2 3\nk 1\nx\n");
    let out = eds()
        .args(["kernelize", "--input"])
        .arg(&p3inst)
        .arg("--family")
        .arg(&p3)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1a"), "{err}");

    // generous budget: the trivial-yes certificate, exit 4
    let fat = write(&dir, "fat.eds", &PENDANT_P6.replace("k 2", "k 9"));
    let out = eds()
        .args(["kernelize", "--input"])
        .arg(&fat)
        .arg("--family")
        .arg(&p5)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn parse_errors_exit_2_and_cap_exit_3() {
    let dir = workdir("errors");
    let bad = write(&dir, "bad.graph", "p eds 3 1\ne 2 2\n");
    let out = eds().args(["analyze", "--input"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let big = {
        let n = 30;
        let mut text = format!("p eds {n} {}\n", n - 1);
        for i in 1..n {
            text.push_str(&format!("e {i} {}\n", i + 1));
        }
        text.push_str("k 3\nx\n");
        write(&dir, "big.eds", &text)
    };
    let out = eds().args(["solve", "--input"]).arg(&big).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn atlas_deterministic_bytes() {
    let dir = workdir("atlas");
    let out1 = dir.join("a1.json");
    let out2 = dir.join("a2.json");
    for out in [&out1, &out2] {
        let status = eds()
            .args(["atlas", "--n-max", "5", "--output"])
            .arg(out)
            .status()
            .unwrap();
        assert!(status.success());
    }
    assert_eq!(fs::read(&out1).unwrap(), fs::read(&out2).unwrap());
    // verdicts recompute from the stored edges
    let rows: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out1).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 1 + 1 + 2 + 6 + 21);
}

#[test]
fn generate_and_verify_round_trip() {
    let dir = workdir("generate");
    let p5 = write(&dir, "p5.graph", P5);
    let inst = dir.join("random.eds");
    let status = eds()
        .args(["generate", "--reduction", "random", "--seed", "11", "--x-size", "3"])
        .args(["--components", "3", "--density", "0.4", "--family"])
        .arg(&p5)
        .arg("--output")
        .arg(&inst)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(inst.with_extension("manifest.json").exists());

    let out = eds()
        .args(["verify", "--json", "--input"])
        .arg(&inst)
        .arg("--family")
        .arg(&p5)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["pass"], true);

    // composed instance generation evaluates the closed formulas
    let comp = dir.join("p3comp.eds");
    let out = eds()
        .args(["generate", "--json", "--reduction", "p3", "--count", "2"])
        .args(["--mcc-k", "2", "--mcc-n", "2", "--edge-prob", "0.9", "--seed", "5"])
        .arg("--output")
        .arg(&comp)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reduction"], "p3");
    assert!(comp.exists());

    // satisfiability gadget with the matching recorded as witness lines
    let sat = dir.join("sat.eds");
    let status = eds()
        .args(["generate", "--reduction", "sat", "--vars", "1", "--clauses", "1"])
        .arg("--output")
        .arg(&sat)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&sat).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 6);
}

#[test]
fn verify_batch_mode() {
    let dir = workdir("batch");
    let p5 = write(&dir, "p5.graph", P5);
    let out = eds()
        .args(["verify", "--batch", "5", "--seed", "3", "--x-size", "3", "--components", "2"])
        .arg("--family")
        .arg(&p5)
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
}
