use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gorenstein_cli::corpus::{self, Params};
use serde_json::Value;

fn gorenstein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gorenstein")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

/// Writes the jobs of a corpus case into `dir` and returns their paths by label.
fn corpus_jobs(dir: &Path, case: &str) -> Vec<(String, PathBuf)> {
    let report = corpus::run(case, &Params::committed()).unwrap();
    report
        .jobs
        .iter()
        .map(|(label, text)| {
            let path = dir.join(format!("{case}-{label}.toml"));
            fs::write(&path, text).unwrap();
            (label.to_string(), path)
        })
        .collect()
}

fn job(dir: &Path, case: &str, label: &str) -> String {
    let jobs = corpus_jobs(dir, case);
    let (_, path) = jobs.iter().find(|(l, _)| l == label).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let curve = job(dir.path(), "genus6-curve", "algebra");
    let a = gorenstein(&["certify", "--in", &curve, "--dump"]);
    let b = gorenstein(&["certify", "--in", &curve, "--dump"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let a = gorenstein(&["corpus", "all", "--seed", "3"]);
    let b = gorenstein(&["corpus", "all", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn printed_curve_complex_is_refused_and_corrected_one_certified() {
    let dir = tempfile::tempdir().unwrap();
    let printed = gorenstein(&["certify", "--in", &job(dir.path(), "genus6-curve-printed", "printed")]);
    assert_eq!(printed.status.code(), Some(2));
    assert_eq!(json(&printed)["status"], "error");
    let fixed = gorenstein(&["certify", "--in", &job(dir.path(), "genus6-curve-printed", "corrected")]);
    assert_eq!(fixed.status.code(), Some(0));
    let cert = &json(&fixed)["certificate"];
    assert_eq!((cert["codimension"].as_u64(), cert["half"].as_u64(), cert["twist"].as_i64()), (Some(3), Some(1), Some(-6)));
    assert_eq!(cert["middle_alternating"], true);
    assert_eq!(cert["transcript"]["all_passed"], true);
    assert_eq!(json(&fixed)["schema"], "v1");
}

#[test]
fn exit_codes_classify_failures() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "[ring]\nvars = [\"x\"]\n[ideal]\ngenerators = [\"x^\"]\n").unwrap();
    let out = gorenstein(&["resolve", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = json(&out);
    assert_eq!(err["error"]["kind"], "MalformedInput");
    assert!(err["error"]["message"].as_str().unwrap().contains("line 4, column"), "{err}");

    assert_eq!(gorenstein(&["resolve"]).status.code(), Some(1));
    assert_eq!(gorenstein(&["corpus", "no-such-case"]).status.code(), Some(1));

    let perturbed = gorenstein(&["certify", "--in", &job(dir.path(), "perturbed-middle-map", "perturbed")]);
    assert_eq!(perturbed.status.code(), Some(2));
    assert_eq!(json(&perturbed)["error"]["kind"], "MiddleMapNotSymmetric");

    let surface = job(dir.path(), "surface-k2-6", "consistent");
    let mismatch = gorenstein(&["certify", "--in", &surface, "--twist", "-4"]);
    assert_eq!(mismatch.status.code(), Some(2));
    assert_eq!(json(&mismatch)["error"]["kind"], "TwistMismatch");
    assert_eq!(gorenstein(&["certify", "--in", &surface, "--twist", "-5"]).status.code(), Some(0));
}

#[test]
fn commands_report_their_results() {
    let dir = tempfile::tempdir().unwrap();
    let koszul = gorenstein(&["resolve", "--in", &job(dir.path(), "koszul", "ideal")]);
    assert_eq!(json(&koszul)["betti"]["ranks"], serde_json::json!([1, 3, 3, 1]));

    let bad = gorenstein(&["rank-condition", "--in", &job(dir.path(), "surface-k2-6", "perturbed")]);
    assert_eq!(bad.status.code(), Some(0));
    assert_eq!(json(&bad)["holds"], false);

    let skew = dir.path().join("skew.toml");
    fs::write(&skew, "[ring]\nvars = [\"a\", \"b\", \"c\"]\n[skew]\nsize = 3\nupper = [\"a\", \"b\", \"c\"]\n").unwrap();
    let pf = json(&gorenstein(&["pfaffian", "--in", skew.to_str().unwrap()]));
    assert_eq!(pf["submaximal_pfaffians"], serde_json::json!(["c", "-b", "a"]));
    assert_eq!(pf["exact"], true);

    let ring = dir.path().join("ring.toml");
    fs::write(&ring, "[ring]\nvars = [\"x\", \"y\"]\n").unwrap();
    let ideal = dir.path().join("ideal.toml");
    fs::write(&ideal, "[ideal]\ngenerators = [\"1/2*x + y\"]\n").unwrap();
    let rational = json(&gorenstein(&["resolve", "--ring", ring.to_str().unwrap(), "--in", ideal.to_str().unwrap(), "--field", "QQ"]));
    assert_eq!(rational["ring"]["field"], "QQ");
    assert_eq!(rational["betti"]["ranks"], serde_json::json!([1, 1]));
}

#[test]
fn out_writes_files_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("koszul.json");
    let out = gorenstein(&["resolve", "--in", &job(dir.path(), "koszul", "ideal"), "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(serde_json::from_str::<Value>(&fs::read_to_string(&target).unwrap()).unwrap()["command"], "resolve");

    let reports = dir.path().join("reports");
    assert_eq!(gorenstein(&["corpus", "all", "--out", reports.to_str().unwrap()]).status.code(), Some(0));
    let mut names: Vec<String> = fs::read_dir(&reports).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    let mut expected: Vec<String> = corpus::names().iter().map(|n| format!("{n}.json")).collect();
    expected.push("index.json".into());
    expected.sort();
    assert_eq!(names, expected);
}
