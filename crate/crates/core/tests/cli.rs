use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affine-shuffles"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn measure_single_coefficient() {
    let o = cli(&["measure", "--family", "A", "--n", "3", "--k", "2", "--element", "2,3,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2,3,1\t1/4\n");
    let o = cli(&["measure", "--family", "C", "--n", "1", "--k", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"], serde_json::json!([["-1", "1/3"], ["1", "2/3"]]));
}

#[test]
fn measure_decimal_and_csv() {
    let o = cli(&[
        "measure",
        "--family",
        "C",
        "--n",
        "1",
        "--k",
        "3",
        "--csv",
        "--decimal",
        "3",
    ]);
    assert_eq!(stdout(&o), "element,coefficient\n-1,0.333\n1,0.667\n");
}

#[test]
fn bad_element_is_an_error() {
    let o = cli(&["measure", "--family", "A", "--n", "3", "--k", "2", "--element", "1,1,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}

#[test]
fn verify_json_and_exit_codes() {
    let o = cli(&["verify", "reciprocity", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["check_name"], "reciprocity");
    assert_eq!(v[0]["status"], "pass");

    let o = cli(&["verify", "reciprocity", "--inject-fault"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL dmp"));
}

#[test]
fn verify_all_quick_passes() {
    let o = cli(&["verify", "all", "--profile", "quick", "--csv"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("check_name,status"));
    assert!(lines.all(|l| l.contains(",pass,")));
}

#[test]
fn samples_are_reproducible_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("draws.txt");
    let p = path.to_str().unwrap();
    let args = [
        "sample", "--model", "affine-c", "--n", "4", "--k", "3", "--seed", "11", "--count", "50",
    ];
    let o = cli(&[&args[..], &["--out", p]].concat());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(first.lines().count(), 50);
    assert_eq!(stdout(&cli(&args)), first);
    for line in first.lines() {
        line.parse::<affine_shuffles::SignedPermutation>().unwrap();
    }
}

#[test]
fn affine_a_needs_two_piles() {
    let o = cli(&["sample", "--model", "affine-a", "--n", "4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unimodal_listing_and_histogram() {
    let o = cli(&["unimodal", "--n", "3"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let o = cli(&["unimodal", "--n", "3", "--histogram", "--csv"]);
    assert_eq!(stdout(&o), "shapes,count\n(1)(1)(1),1\n(1)(12),2\n(123),1\n");
}

#[test]
fn tv_table() {
    let o = cli(&["tv", "--max-n", "2", "--k", "2", "--csv"]);
    assert_eq!(stdout(&o), "n,k,tv\n1,2,0/1\n2,2,1/2\n");
    let o = cli(&["tv", "--max-n", "2", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
