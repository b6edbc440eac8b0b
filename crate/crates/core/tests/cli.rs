use std::fs;
use std::process::{Command, Output};

fn bipcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bipcount"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn counts_column(csv: &str) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(3).unwrap().to_string()).collect()
}

#[test]
fn count_prints_json_record() {
    let o = bipcount(&["count", "--family", "x", "--n", "3", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"family\":\"x\",\"n\":3,\"r\":2,\"count\":\"25\",\"method\":\"recurrence\"}\n");

    let o = bipcount(&["count", "--family", "u", "--n", "0", "--r", "0"]);
    assert!(stdout(&o).contains("\"count\":\"1\""));
}

#[test]
fn burnside_and_brute_agree_or_brute_refuses() {
    let b = bipcount(&["count", "--family", "u", "--n", "5", "--r", "5", "--method", "burnside"]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).contains("\"count\":\"5624\""));
    let brute = bipcount(&["count", "--family", "u", "--n", "5", "--r", "5", "--method", "brute"]);
    assert_eq!(brute.status.code(), Some(2));
    assert!(stderr(&brute).contains("limit exceeded"));

    let b = bipcount(&["count", "--family", "xy", "--n", "3", "--r", "4", "--method", "burnside"]);
    let brute = bipcount(&["count", "--family", "xy", "--n", "3", "--r", "4", "--method", "brute"]);
    let strip = |s: String| s.replace("\"burnside\"", "").replace("\"brute_force\"", "");
    assert_eq!(strip(stdout(&b)), strip(stdout(&brute)));
}

#[test]
fn large_counts_are_strings() {
    let o = bipcount(&["count", "--family", "xy", "--n", "8", "--r", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let count = v["count"].as_str().unwrap();
    assert!(count.len() > 20, "{count}");
}

#[test]
fn bounds_reports() {
    let o = bipcount(&["bounds", "--family", "u", "--n", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exact"], "13");
    assert_eq!(v["bounds"][0]["lower"], "10");
    assert_eq!(v["bounds"][0]["upper"], "20");

    let o = bipcount(&["bounds", "--family", "x", "--n", "2", "--r", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let bounds = v["bounds"].as_array().unwrap();
    let value = |name: &str, side: &str| bounds.iter().find(|b| b["bound"] == name).unwrap()[side].clone();
    assert_eq!(value("lower_x", "lower"), "8");
    assert_eq!(value("upper_x_small_n", "upper"), "31");

    let o = bipcount(&["bounds", "--family", "y", "--n", "2", "--r", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no bounds defined for family y"));
}

#[test]
fn table_csv_and_json() {
    let o = bipcount(&["table", "--family", "x", "--n", "2..2", "--r", "1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("family,n,r,count,method"));
    assert_eq!(counts_column(&text), ["4", "9", "16"]);

    let o = bipcount(&["table", "--family", "u", "--n", "1..1", "--r", "0..4"]);
    assert_eq!(counts_column(&stdout(&o)), ["1", "2", "3", "4", "5"]);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("xy.json");
    let o = bipcount(&[
        "table", "--family", "xy", "--n", "1..3", "--r", "2..2", "--format", "json",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text.trim_end(), text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let counts: Vec<_> = v.as_array().unwrap().iter().map(|rec| rec["count"].as_str().unwrap()).collect();
    assert_eq!(counts, ["4", "12", "32"]);
}

#[test]
fn table_orders_n_outer_r_inner() {
    let o = bipcount(&["table", "--family", "u", "--n", "1..2", "--r", "1..2"]);
    let cells: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').skip(1).take(2).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(cells, ["1,1", "1,2", "2,1", "2,2"]);
}

#[test]
fn table_methods_agree() {
    let run = |family: &str, method: &str| {
        let o = bipcount(&["table", "--family", family, "--n", "0..4", "--r", "0..4", "--method", method]);
        assert_eq!(o.status.code(), Some(0));
        counts_column(&stdout(&o))
    };
    assert_eq!(run("u", "auto"), run("u", "burnside"));
    for family in ["u", "x", "y", "xy"] {
        assert_eq!(run(family, "auto"), run(family, "brute"), "{family}");
    }
}

#[test]
fn table_errors_per_cell() {
    let o = bipcount(&["table", "--family", "u", "--n", "3..5", "--r", "5..5", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(0));
    let counts = counts_column(&stdout(&o));
    assert!(!counts[0].starts_with("ERROR:"));
    assert!(counts[1].starts_with("ERROR:") && counts[2].starts_with("ERROR:"));

    let o = bipcount(&["table", "--family", "u", "--n", "5..6", "--r", "5..5", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["table", "--family", "xy", "--n", "0..5", "--r", "0..5", "--format", "json"];
    assert_eq!(bipcount(&args).stdout, bipcount(&args).stdout);
    let args = ["dump-classes", "--family", "x", "--n", "3", "--r", "3"];
    assert_eq!(bipcount(&args).stdout, bipcount(&args).stdout);
}

#[test]
fn dump_classes_lines() {
    let o = bipcount(&["dump-classes", "--family", "u", "--n", "2", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let bits: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["bits"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(bits, ["0000", "0001", "0011", "0101", "0110", "0111", "1111"]);

    let o = bipcount(&["dump-classes", "--family", "xy", "--n", "1", "--r", "2"]);
    assert!(stdout(&o).contains("{\"family\":\"xy\",\"n\":1,\"r\":2,\"supportRows\":[0],\"supportCols\":[1],\"bits\":\"01\"}"));

    let o = bipcount(&["dump-classes", "--family", "u", "--n", "5", "--r", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "# budgets\nfamily = xy\nn=3\nr=2\nmax_bits=4\n").unwrap();
    let conf = path.to_str().unwrap();

    let o = bipcount(&["--config", conf, "count"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("\"count\":\"32\""));

    // Flags on the command line win over the file.
    let o = bipcount(&["count", "--config", conf, "--n", "2"]);
    assert!(stdout(&o).contains("\"count\":\"12\""), "{}", stderr(&o));

    let o = bipcount(&["--config", conf, "count", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(2));

    fs::write(&path, "bogus=1\n").unwrap();
    let o = bipcount(&["--config", conf, "count", "--family", "u", "--n", "1", "--r", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = bipcount(&["--config", "/nonexistent/run.conf", "count"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_small_budget_passes() {
    let o = bipcount(&["verify", "--max-bits", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
}

#[test]
fn verify_reports_injected_fault() {
    let o = bipcount(&["verify", "--max-bits", "6", "--inject-fault", "xy:3:2"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let first_fail = text.lines().find(|l| l.starts_with("FAIL ")).unwrap();
    assert!(first_fail.contains("family=xy n=3 r=2"), "{first_fail}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bipcount(&["count", "--family", "q", "--n", "1", "--r", "1"]).status.code(), Some(2));
    assert_eq!(bipcount(&["count", "--family", "u", "--n", "-1", "--r", "1"]).status.code(), Some(2));
    assert_eq!(bipcount(&["table", "--family", "u", "--n", "3..1", "--r", "1"]).status.code(), Some(2));
    assert_eq!(bipcount(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bipcount(&["--help"]).status.code(), Some(0));
}
