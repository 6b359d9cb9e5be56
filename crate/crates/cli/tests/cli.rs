use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mctele"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let idx = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(idx).unwrap().to_string())
        .collect()
}

#[test]
fn qubit_formula_column() {
    let o = run(&[
        "verify",
        "--d",
        "2",
        "--k",
        "1..4",
        "--samples",
        "3",
        "--no-timestamp",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ps: Vec<f64> = column(&stdout(&o), "p_formula")
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let expected = [0.25, 1.0 / 3.0, 0.375, 0.4];
    assert_eq!(ps.len(), 4);
    for (p, e) in ps.iter().zip(expected) {
        assert!((p - e).abs() < 1e-15);
    }
    assert!(column(&stdout(&o), "pass").iter().all(|s| s == "true"));
}

#[test]
fn timestamp_line_and_seconds() {
    let o = run(&["lemmas", "--d", "2", "--k", "1"]);
    let text = stdout(&o);
    assert!(text
        .lines()
        .next()
        .unwrap()
        .starts_with("# generated_unix="));
    assert!(!column(&text, "seconds")[0].is_empty());
    let o = run(&["lemmas", "--d", "2", "--k", "1", "--no-timestamp"]);
    let text = stdout(&o);
    assert!(text.starts_with("d,k,p_formula"));
    assert_eq!(column(&text, "seconds"), vec![String::new()]);
}

#[test]
fn seed_changes_samples_not_formula() {
    let a = stdout(&run(&[
        "verify",
        "--d",
        "3",
        "--k",
        "2",
        "--samples",
        "4",
        "--seed",
        "1",
        "--no-timestamp",
    ]));
    let b = stdout(&run(&[
        "verify",
        "--d",
        "3",
        "--k",
        "2",
        "--samples",
        "4",
        "--seed",
        "2",
        "--no-timestamp",
    ]));
    assert_eq!(column(&a, "p_formula"), column(&b, "p_formula"));
    assert_ne!(column(&a, "p_std"), column(&b, "p_std"));
}

#[test]
fn json_report_shape() {
    let o = run(&[
        "sweep",
        "--d",
        "2",
        "--k",
        "1..2",
        "--samples",
        "2",
        "--format",
        "json",
        "--no-timestamp",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["k"], serde_json::json!([1, 2]));
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert!((cells[1]["c2"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!(cells[0]["reports"]["theorem"]["pass"].as_bool().unwrap());
    assert!(cells[0]["seconds"].is_null());
}

#[test]
fn oversized_cell_is_skipped_and_fails() {
    let o = run(&[
        "verify",
        "--d",
        "2,4",
        "--k",
        "6",
        "--samples",
        "2",
        "--no-timestamp",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(column(&stdout(&o), "pass"), vec!["true", "skipped"]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--d", "0"][..],
        &["verify", "--k", "2..1"],
        &["verify", "--tol", "-1"],
        &["verify", "--samples", "0"],
        &["verify", "--format", "xml"],
        &["sar", "--kraus-rank", "0"],
        &[],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn writes_output_file() {
    let path = std::env::temp_dir().join(format!("mctele-cli-test-{}.csv", std::process::id()));
    let o = run(&[
        "optimality",
        "--d",
        "2",
        "--k",
        "1",
        "--samples",
        "5",
        "--no-timestamp",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(column(&text, "p_mean"), vec!["0.25"]);
}

#[test]
fn sar_with_wider_output() {
    let o = run(&[
        "sar",
        "--d",
        "2",
        "--d-out",
        "3",
        "--k",
        "1..2",
        "--samples",
        "4",
        "--no-timestamp",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&stdout(&o), "pass"), vec!["true", "true"]);
}
