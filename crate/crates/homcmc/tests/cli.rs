//! End-to-end runs of the command-line binary.

use std::path::Path;
use std::process::Command;

fn homcmc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homcmc"))
}

fn run_ok(args: &[&str]) -> String {
    let out = homcmc().args(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "command {:?} failed:\nstdout: {}\nstderr: {}",
        args,
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn generate_minimize_report_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ring.json");
    run_ok(&["gen", "ring", "--areas", "1,2,3", "--out", file.to_str().unwrap()]);

    let out = run_ok(&["minimize", file.to_str().unwrap(), "--surface", "S"]);
    assert!(out.contains("area = 1 (1)"), "{out}");
    assert!(out.contains("faces = f12"), "{out}");
    assert!(out.contains("certified = true"), "{out}");

    let json = dir.path().join("report.json");
    let out = run_ok(&[
        "report",
        file.to_str().unwrap(),
        "--surface",
        "S",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert!(out.contains("width-floor"), "{out}");
    let text = std::fs::read_to_string(&json).unwrap();
    assert!(text.contains("\"format\": \"homcmc-report/1\""));

    let out = run_ok(&["verify", file.to_str().unwrap(), "--surface", "S"]);
    assert!(out.contains("all checks passed"), "{out}");
}

#[test]
fn profile_spectrum_width_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("grid.json");
    run_ok(&["gen", "grid3", "--dims", "2x2x3", "--out", file.to_str().unwrap()]);

    let csv = dir.path().join("profile.csv");
    run_ok(&[
        "profile",
        file.to_str().unwrap(),
        "--surface",
        "S",
        "--out",
        csv.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("K,area,left_slope,right_slope,on_envelope,witness\n"));
    assert!(text.lines().count() > 2);

    let csv = dir.path().join("spectrum.csv");
    let out = run_ok(&[
        "spectrum",
        file.to_str().unwrap(),
        "--surface",
        "S",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.contains("swept"), "{out}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("H_star,vol_before,vol_after,area_before,area_after\n"));

    let out = run_ok(&["width", file.to_str().unwrap(), "--surface", "S"]);
    assert!(out.contains("width = "), "{out}");
    assert!(out.contains("size floor = "), "{out}");
    assert!(out.contains("ordering = "), "{out}");
}

#[test]
fn cut_emit_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ring.json");
    run_ok(&["gen", "ring", "--areas", "1,2,3", "--out", file.to_str().unwrap()]);
    let cut_file = dir.path().join("cut.json");
    let out = run_ok(&[
        "cut",
        file.to_str().unwrap(),
        "--surface",
        "S",
        "--seed-cell",
        "c2",
        "--out",
        cut_file.to_str().unwrap(),
    ]);
    assert!(out.contains("cut network"), "{out}");
    let text = std::fs::read_to_string(&cut_file).unwrap();
    assert!(text.contains("\"format\": \"homcmc-cut/1\""));
    assert!(text.contains("SOURCE"));
    let slab = homcmc::cut::load_cut_json(&text).unwrap();
    assert!(slab.is_slab());
    assert_eq!(slab.cell_count(), 3);
}

#[test]
fn spectrum_with_explicit_barrier() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("two.json");
    // Name a second surface to use as the barrier.
    std::fs::write(
        &file,
        r#"{
            "format": "homcmc-complex/1",
            "cells": [{"id": "c1", "volume": "1"}, {"id": "c2", "volume": "1"}],
            "faces": [
                {"id": "f0", "area": "1", "cells": ["c1", "c2"]},
                {"id": "f12", "area": "3", "cells": ["c1", "c2"]}
            ],
            "surfaces": {"S": ["f0"], "B": ["f12"]}
        }"#,
    )
    .unwrap();
    let csv = dir.path().join("spectrum.csv");
    let out = run_ok(&[
        "spectrum",
        file.to_str().unwrap(),
        "--surface",
        "S",
        "--barrier",
        "B",
        "--h-range",
        "0:2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.contains("1 breakpoints"), "{out}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("1,0,1,1,3"), "{text}");

    // An explicit barrier without a range is an error.
    let bad = homcmc()
        .args([
            "spectrum",
            file.to_str().unwrap(),
            "--surface",
            "S",
            "--barrier",
            "B",
            "--out",
            csv.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(!bad.status.success());

    // Barrier given by exact volume.
    let out = run_ok(&[
        "spectrum",
        file.to_str().unwrap(),
        "--surface",
        "S",
        "--barrier-volume",
        "1",
        "--h-range",
        "0:2",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert!(out.contains("1 breakpoints"), "{out}");
}

#[test]
fn failures_exit_nonzero() {
    let out = homcmc()
        .args(["minimize", "/nonexistent.json", "--surface", "S"])
        .output()
        .unwrap();
    assert!(!out.status.success());

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(&file, "{\"format\": \"homcmc-complex/1\", \"cells\": []}").unwrap();
    let out = homcmc()
        .args(["minimize", file.to_str().unwrap(), "--surface", "S"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"), "{err}");
}

#[test]
fn thread_flag_does_not_change_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rand.json");
    run_ok(&[
        "gen", "random", "--cells", "10", "--degree", "3", "--weights", "1:40",
        "--seed", "5", "--out", file.to_str().unwrap(),
    ]);
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let json = dir.path().join(format!("report-{threads}.json"));
        run_ok(&[
            "--threads",
            threads,
            "report",
            file.to_str().unwrap(),
            "--surface",
            "S",
            "--json",
            json.to_str().unwrap(),
        ]);
        outputs.push(std::fs::read_to_string(&json).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(Path::new(&file).exists());
}
