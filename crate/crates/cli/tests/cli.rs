use std::process::{Command, Output};

fn weylgate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylgate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn flag_building_reports_counts() {
    let out = weylgate(&["flag-building", "--n", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["scenario"], "flag-building");
    assert_eq!(r["counts"]["chambers"], 21);
    assert_eq!(r["counts"]["opposite_pairs"], 168);
    assert_eq!(r["counts"]["diagonal_orbits"], 6);
    assert_eq!(r["counts"]["closed_quotients"], 4);
    assert!(r["timing_ms"].is_null());
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["product", "--m1", "3", "--m2", "4", "--seed", "7"];
    let a = weylgate(&args);
    let b = weylgate(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_is_opt_in() {
    let out = weylgate(&["obstruct", "--source", "S3", "--target", "S3", "--timing"]);
    assert!(json(&out)["timing_ms"].is_u64());
}

#[test]
fn obstruction_lists_pinned_maps() {
    let out = weylgate(&["obstruct", "--source", "Z2^2", "--target", "S3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["counts"]["pinned_homomorphisms"], 2);
    assert_eq!(r["details"]["homomorphisms"].as_array().unwrap().len(), 2);

    let out = weylgate(&["obstruct", "--source", "S4", "--target", "S3"]);
    assert_eq!(json(&out)["counts"]["injective"], 0);
}

#[test]
fn failing_checks_exit_two() {
    let out = weylgate(&["embed-check", "--n", "3", "--q", "2", "--map", "random:42"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert_eq!(r["verdicts"][0]["pass"], false);

    let out = weylgate(&["embed-check", "--n", "3", "--q", "2", "--map", "matrix:1,1,0;0,1,0;0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_three() {
    for args in [
        &["product", "--m1", "1", "--m2", "5"][..],
        &["flag-building", "--n", "4", "--q", "4"],
        &["flag-building", "--n", "4", "--q", "3"],
        &["obstruct", "--source", "B3", "--target", "S3"],
        &["embed-check", "--n", "3", "--q", "2", "--map", "matrix:1,1"],
        &["embed-check", "--n", "3", "--q", "2", "--map", "bogus"],
        &["nonsense"],
        &["flag-building", "--n", "x", "--q", "2"],
        &["obstruct", "--source", "S3", "--target", "S2", "--format", "dot"],
    ] {
        let out = weylgate(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(weylgate(&["--help"]).status.code(), Some(0));
}

#[test]
fn dot_and_text_formats() {
    let out = weylgate(&["product", "--m1", "2", "--m2", "2", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("style=dashed").count(), 4);

    let out = weylgate(&["flag-building", "--n", "2", "--q", "3", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("chambers: 4"));
    assert!(text.contains("PASS"));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = weylgate(&["product", "--m1", "3", "--m2", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["counts"]["closed_quotients"], 4);
}
