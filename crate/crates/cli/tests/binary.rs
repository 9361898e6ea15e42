use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::json;
use workbench_cli::report::parse_machine;

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .env_remove("WORKBENCH_MAX_OPS")
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (i32, Vec<workbench_cli::report::Report>) {
    let mut full = args.to_vec();
    full.extend(["--format", "machine"]);
    let out = workbench(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    (out.status.code().unwrap(), parse_machine(&text).unwrap())
}

#[test]
fn step4_emits_twelve_passing_records() {
    let (code, reps) = machine(&["verify", "step4", "--n", "6"]);
    assert_eq!(code, 0);
    assert_eq!(reps.len(), 12);
    assert!(reps.iter().all(|r| r.passed()));
}

#[test]
fn lemma5_1_reports_degree_three() {
    let (code, reps) = machine(&["verify", "lemma5.1", "--n", "3", "--p", "2", "--t", "1", "--rmax", "12"]);
    assert_eq!(code, 0);
    let degree = reps.iter().find(|r| r.claim_id == "lemma5.1.degree").unwrap();
    assert_eq!(degree.outputs["degree"], json!("3"));
}

#[test]
fn step8_reports_slope_sixteen() {
    let (code, reps) = machine(&["verify", "step8", "--n", "2", "--rmax", "16"]);
    assert_eq!(code, 0);
    let slope = reps.iter().find(|r| r.claim_id == "step8.slope").unwrap();
    assert_eq!(slope.outputs["slope"], json!(16));
}

#[test]
fn failing_record_sets_exit_status() {
    let (code, reps) = machine(&["quantum", "hom-check", "--n", "2", "--t", "1", "--src-t", "1", "--images", "x2, x1"]);
    assert_eq!(code, 1);
    assert_eq!(reps[0].verdict.as_str(), "fail");
    assert_eq!(reps[0].outputs["failures"][0]["relation"], json!([1, 2]));
}

#[test]
fn diagnostics_exit_with_two() {
    let out = workbench(&["eval", "--context", "quantum", "x1 + g"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1, column 6"), "{err}");

    let out = workbench(&["verify", "step9"]);
    assert_eq!(out.status.code(), Some(2));

    let out = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["verify", "lemma5.1"])
        .env("WORKBENCH_MAX_OPS", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("budget"));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = workbench(&["gamma", "witness", "--n", "3", "--format", "machine", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let reps = parse_machine(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(reps[0].outputs["diagonal"], json!(["1", "2", "6"]));
    assert_eq!(reps[0].outputs["independent"], json!(true));
}

#[test]
fn series_files_feed_the_growth_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rn.csv");
    let out = workbench(&["gamma", "growth", "--n", "2", "--series", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let file = path.to_str().unwrap();
    let (code, reps) = machine(&["growth", "slope", file, "--expect", "16"]);
    assert_eq!(code, 0);
    assert_eq!(reps[0].outputs["slope"], json!(16));
    let (code, reps) = machine(&["growth", "estimate", file, "--expect", "1"]);
    assert_eq!(code, 0);
    assert_eq!(reps[0].outputs["degree"], json!("1"));
}

#[test]
fn growth_estimate_reads_standard_input() {
    let series: String = (1..=25u32).map(|r| format!("{r},{}\n", (r as u128).pow(r))).collect();
    let mut child = Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(["growth", "estimate", "-", "--expect", "unbounded", "--format", "machine"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(series.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let reps = parse_machine(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(reps[0].outputs["degree"], json!("unbounded"));
}

#[test]
fn quantum_commands() {
    let (code, reps) = machine(&["quantum", "nf", "x2*x1*x2", "--p", "3", "--t", "1"]);
    assert_eq!(code, 0);
    assert_eq!(reps[0].outputs["letters"], json!([2, 1, 2]));
    let (code, reps) = machine(&["quantum", "mul", "x2", "x1"]);
    assert_eq!(code, 0);
    assert_eq!(reps[0].outputs["product"], json!("(-z)*x1*x2"));
    let (code, reps) = machine(&["quantum", "growth", "--n", "3", "--rmax", "14"]);
    assert_eq!(code, 0);
    assert_eq!(reps[0].outputs["degree"], json!("3"));
    let (code, _) = machine(&["quantum", "hom-check", "--n", "3", "--p", "3", "--t", "2"]);
    assert_eq!(code, 0);
}

#[test]
fn gamma_coeff_examples() {
    let (code, reps) = machine(&["gamma", "coeff", "--power", "3", "--target", "x1^-3"]);
    assert_eq!(code, 0);
    assert_eq!(reps[0].outputs["coefficient"], json!("1"));
    let (_, reps) = machine(&["gamma", "coeff", "--power", "2", "--target", "x1^-1"]);
    assert_eq!(reps[0].outputs["coefficient"], json!("0"));
}

#[test]
fn human_format_is_a_table() {
    let out = workbench(&["verify", "lemma5.3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("CLAIM"));
    assert_eq!(lines.last(), Some(&"2/2 passed"));
    let col = lines[0].find("VERDICT").unwrap();
    assert!(lines[1..lines.len() - 1].iter().all(|l| l[col..].starts_with("PASS")));
}

#[test]
fn series_without_points_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("none.csv");
    std::fs::write(&path, "# no data\n").unwrap();
    let out = workbench(&["growth", "slope", path.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(out.status.code(), Some(2));
}
