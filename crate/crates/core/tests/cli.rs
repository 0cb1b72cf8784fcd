use std::process::{Command, Output};

fn circroute(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circroute"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn report_table_shows_tight_bracket() {
    let o = circroute(&["report", "--n", "25", "--s", "5", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let pi = text.lines().find(|l| l.starts_with("pi ")).expect("pi row");
    assert!(pi.contains("[30, 30]") && pi.contains("TIGHT"), "{pi}");
}

#[test]
fn report_json_is_deterministic() {
    let args = ["report", "--n", "12", "--s", "3", "--format", "json"];
    let (a, b) = (circroute(&args), circroute(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["loads"]["max_arc"], 7);
    assert_eq!(v["colouring"]["palette"], 34);
    let lower = &v["brackets"][0]["lower"]["value"];
    assert_eq!((lower["num"].as_i64(), lower["den"].as_i64()), (Some(10), Some(1)));
    assert_eq!(lower["approx"].as_f64(), Some(10.0));
}

#[test]
fn report_above_ceiling_is_formula_only() {
    let o = circroute(&["report", "--n", "500", "--s", "9", "--format", "json", "--max-exhaustive", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mode"], "formula_only");
    assert_eq!(v["verification"], "skipped");
    assert_eq!(v["distances"]["distance_sum"], "skipped");
}

#[test]
fn domain_errors_exit_2() {
    let o = circroute(&["report", "--n", "12", "--s", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("s < n/2 violated"), "{}", stderr(&o));
    let o = circroute(&["verify", "--n", "4", "--s", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("n >= 5"));
    let o = circroute(&["verify", "--n", "3000", "--s", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = circroute(&["route", "--n", "7", "--s", "2", "--from", "3", "--to", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = circroute(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = circroute(&["sweep", "--n", "9-5", "--out", "-"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = circroute(&["verify", "--n", "7", "--s", "2", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
    let o = circroute(&["verify", "--n", "200", "--s", "14", "--suite", "routing"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = circroute(&["verify", "--n", "34", "--s", "10", "--suite", "lattice"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("packed basis: not applicable, skipped corner-distance"));
}

#[test]
fn route_prints_path_and_class() {
    let o = circroute(&["route", "--n", "20", "--s", "4", "--from", "3", "--to", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("path: 3,7,11,10"), "{text}");
    assert!(text.contains("class: (2,-1)"), "{text}");
}

#[test]
fn colour_table_and_conflicts() {
    let o = circroute(&["colour", "--n", "7", "--s", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1 + 42);
    assert!(text.contains("conflict-free, 12 colours"), "{text}");
    assert!(text.contains("0,1,\"(0,1)\",\"(0,0,1)\""));

    let o = circroute(&["colour", "--n", "7", "--s", "2", "--variant", "edge"]);
    assert_eq!(o.status.code(), Some(0));

    let o = circroute(&["colour", "--n", "26", "--s", "5", "--wrap", "direct"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("arc 9->14"));
}

#[test]
fn sweep_writes_versioned_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let path_str = path.to_str().unwrap();
    let o = circroute(&["sweep", "--n", "5..30", "--out", path_str, "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("182"));
    let first = std::fs::read_to_string(&path).unwrap();
    let mut lines = first.lines();
    assert_eq!(lines.next(), Some("# circroute-schema v1"));
    let header = lines.next().unwrap();
    assert!(header.starts_with("n,s,q,r,status,"), "{header}");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 182);

    let cols: Vec<&str> = header.split(',').collect();
    let ratio = cols.iter().position(|c| *c == "forwarding_ratio").unwrap();
    let row = rows.iter().find(|r| r.starts_with("25,5,")).unwrap();
    assert_eq!(row.split(',').nth(ratio), Some("1.0"));
    assert!(rows.iter().all(|r| r.split(',').nth(4) == Some("ok")));

    let keys: Vec<(usize, usize)> = rows
        .iter()
        .map(|r| {
            let mut f = r.split(',').map(|x| x.parse::<usize>().unwrap_or(0));
            (f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    assert_eq!(keys, sorted);

    let o = circroute(&["sweep", "--n", "5..30", "--out", path_str, "--jobs", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);
}

#[test]
fn sweep_skip_list_and_bad_path() {
    let o = circroute(&["sweep", "--n", "10..12", "--s", "2,4", "--out", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 6, "{text}");
    let o = circroute(&["sweep", "--n", "5..6", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/nonexistent/dir/out.csv"));
}
