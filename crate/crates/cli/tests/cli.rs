use std::path::Path;
use std::process::{Command, Output};

use nilcrunch_cli::report::{DimsReport, GeneratorsReport, NilpotencyReport, Report, Status};

fn run(args: &[&str], checkpoint_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcrunch"))
        .args(args)
        .env("NILCRUNCH_CHECKPOINT_DIR", checkpoint_dir)
        .output()
        .expect("binary runs")
}

fn json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn nilpotency_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (n, d, f, c) in [("3", "2", "q2", 6), ("3", "4", "q2", 7), ("4", "2", "inf0", 10)] {
        let out = run(&["nilpotency", "--n", n, "--d", d, "--field", f], dir.path());
        assert_eq!(out.status.code(), Some(0));
        let r: NilpotencyReport = json(&out);
        assert_eq!(r.c, Some(c));
        assert_eq!(r.status, Status::Reached);
        assert!(r.certified);
        assert_eq!(r.schema, 1);
    }
}

#[test]
fn json_reports_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["nilpotency", "--n", "3", "--d", "2", "--field", "q2"],
        vec!["nilpotency", "--n", "3", "--d", "2", "--field", "q2", "--dmax", "5"],
        vec!["basis", "--n", "3", "--d", "2", "--field", "q2", "--out", "json"],
        vec!["generators", "--n", "5", "--field", "q3"],
        vec!["oracle-compare", "--n", "2", "--d", "2", "--q", "2", "--truncation", "4", "--k", "2"],
        vec!["verify", "--n-max", "4"],
    ] {
        let out = run(&args, dir.path());
        let text = String::from_utf8(out.stdout.clone()).unwrap();
        let parsed: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_json() + "\n", text, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| run(args, dir.path()).status.code();
    assert_eq!(code(&["nilpotency", "--n", "3", "--d", "2", "--field", "q6"]), Some(3));
    assert_eq!(code(&["nilpotency", "--n", "3", "--d", "2", "--field", "inf4"]), Some(3));
    assert_eq!(code(&["nilpotency", "--n", "3"]), Some(3));
    assert_eq!(code(&["generators", "--n", "3", "--field", "q2", "--out", "csv"]), Some(3));
    assert_eq!(code(&["nilpotency", "--n", "3", "--d", "2", "--field", "q2", "--dmax", "5"]), Some(2));
    assert_eq!(code(&["nilpotency", "--n", "3", "--d", "2", "--field", "q2", "--max-rows", "10"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn generator_listings() {
    let dir = tempfile::tempdir().unwrap();
    let gens = |n: &str, f: &str| -> Vec<String> {
        let r: GeneratorsReport = json(&run(&["generators", "--n", n, "--field", f], dir.path()));
        r.generators.into_iter().map(|g| g.text).collect()
    };
    assert_eq!(gens("5", "q3").len(), 6);
    assert_eq!(gens("6", "q2"), vec!["P1", "P2", "P3", "P4", "P5", "P6"]);
    assert_eq!(gens("3", "q2"), vec!["P1", "P2", "P3"]);
    assert_eq!(gens("3", "q3"), vec!["L(3)", "L(2,1)", "L(1,1,1)"]);
}

#[test]
fn dimension_delta_against_infinite_fields() {
    let dir = tempfile::tempdir().unwrap();
    for (d, delta) in [("2", 1), ("3", 3)] {
        let out = run(&["dims", "--n", "3", "--d", d, "--field", "q2", "--out", "json"], dir.path());
        let r: DimsReport = json(&out);
        assert_eq!(r.infinite.unwrap().delta, delta);
    }
    let out = run(&["dims", "--n", "3", "--d", "2", "--field", "q2"], dir.path());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("degree,dim,dim_infinite\n"));
    assert!(csv.contains("\n3,5,4\n"));
}

#[test]
fn basis_over_f2_contains_the_alternating_word() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["basis", "--n", "3", "--d", "2", "--field", "q2", "--out", "json"], dir.path());
    let r: DimsReport = json(&out);
    let basis = r.basis.unwrap();
    assert!(basis.contains(&"x1*x2*x1".to_string()));
    assert_eq!(basis.iter().filter(|w| w.split('*').count() == 3).count(), 5);
    assert_eq!(r.infinite.unwrap().extra_words.unwrap().len(), 1);
}

#[test]
fn interrupted_search_resumes_from_its_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["nilpotency", "--n", "3", "--d", "3", "--field", "q2", "--max-rows", "200"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let ckpt = dir.path().join("nilcrunch-nilpotency-n3-d3-q2.ckpt");
    assert!(ckpt.is_file());
    assert!(String::from_utf8_lossy(&out.stderr).contains("resume"));
    let resumed = run(&["resume", "--checkpoint", ckpt.to_str().unwrap()], dir.path());
    assert_eq!(resumed.status.code(), Some(0));
    let r: NilpotencyReport = json(&resumed);
    assert_eq!(r.c, Some(6));
    let fresh: NilpotencyReport = json(&run(&["nilpotency", "--n", "3", "--d", "3", "--field", "q2"], dir.path()));
    assert_eq!(r.dims, fresh.dims);
}

#[test]
fn explicit_checkpoint_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub").join("run.ckpt");
    let out = run(
        &[
            "dims", "--n", "3", "--d", "2", "--field", "q3", "--max-rows", "40", "--checkpoint", path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(path.is_file());
    let resumed = run(&["resume", "--checkpoint", path.to_str().unwrap(), "--out", "json"], dir.path());
    let r: DimsReport = json(&resumed);
    assert_eq!(r.c, 7);
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["verify"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
