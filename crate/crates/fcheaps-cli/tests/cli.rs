use std::io::Write;
use std::process::{Command, Output, Stdio};

fn fcheaps(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_fcheaps"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn fcheaps");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const PEAK: &str = r#"{"n":2,"family":"Ctilde","vertices":[{"id":0,"col":1},{"id":1,"col":2},{"id":2,"col":1}],"covers":[[0,1],[1,2]]}"#;

#[test]
fn theta_marks_middle_strand_with_black_triangle() {
    let o = fcheaps(&["theta", "1 2 1", "--n", "2"], "");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pairs = v["pairs"].as_array().unwrap();
    let i = pairs
        .iter()
        .position(|p| {
            p[0]["pos"] == 3 && p[0]["face"] == "N" && p[1]["pos"] == 3 && p[1]["face"] == "S"
        })
        .unwrap();
    assert_eq!(v["edges"][i]["dec"], serde_json::json!(["B"]));
}

#[test]
fn decorate_then_invert_returns_the_heap() {
    let d = fcheaps(&["decorate"], PEAK);
    assert!(d.status.success());
    let h = fcheaps(&["invert"], &stdout(&d));
    assert!(h.status.success());
    assert_eq!(stdout(&h).trim(), PEAK);
}

#[test]
fn classify_and_reduce() {
    assert_eq!(stdout(&fcheaps(&["classify"], PEAK)).trim(), "ALT");
    let r: serde_json::Value = serde_json::from_str(&stdout(&fcheaps(&["reduce"], PEAK))).unwrap();
    assert_eq!(r["del"], 0);
    assert_eq!(r["reduced"]["family"], "A");
    assert_eq!(r["reduced"]["vertices"].as_array().unwrap().len(), 1);
}

#[test]
fn catalan_suite_reports_fourteen() {
    let o = fcheaps(
        &[
            "verify", "--type", "A", "--n", "2", "--suite", "catalan", "--format", "json",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["count"], 14);
}

#[test]
fn empty_heap_svg_has_vertical_strands_only() {
    let empty = r#"{"n":3,"family":"Ctilde","vertices":[],"covers":[]}"#;
    let o = fcheaps(&["render", "--svg"], empty);
    let svg = stdout(&o);
    assert_eq!(svg.matches("<polyline").count(), 5);
    assert!(!svg.contains("<polygon"));
    assert_eq!(svg, stdout(&fcheaps(&["render", "--svg"], empty)));
}

#[test]
fn exit_codes() {
    let bad = fcheaps(&["classify"], "{");
    assert_eq!(bad.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8(bad.stderr).unwrap().trim()).unwrap();
    assert_eq!(err["error"], "input");

    let big = fcheaps(&["enumerate", "--n", "2", "--max-len", "1000"], "");
    assert_eq!(big.status.code(), Some(3));

    let loopless = r#"{"k":4,"pairs":[[{"pos":1,"face":"N"},{"pos":1,"face":"S"}],[{"pos":2,"face":"N"},{"pos":2,"face":"S"}],[{"pos":3,"face":"N"},{"pos":3,"face":"S"}],[{"pos":4,"face":"N"},{"pos":4,"face":"S"}]],"edges":[{"dec":["B","B"],"blocks":[2]},{"dec":[],"blocks":[]},{"dec":[],"blocks":[]},{"dec":[],"blocks":[]}],"loops":[]}"#;
    assert_eq!(fcheaps(&["invert"], loopless).status.code(), Some(1));
}

#[test]
fn enumerate_lists_one_record_per_heap() {
    let o = fcheaps(&["enumerate", "--type", "A", "--n", "3"], "");
    assert_eq!(stdout(&o).lines().count(), 42);
}
