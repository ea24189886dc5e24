use std::process::{Command, Output};

fn blc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blc")).args(args).output().expect("run blc")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = blc(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim_end().to_string()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&ok(args)).expect("valid JSON")
}

#[test]
fn count_prints_exact_decimals() {
    assert_eq!(ok(&["count", "--size", "19", "--free", "0"]), "431");
    assert_eq!(ok(&["count", "--size", "19", "--all"]), "4259");
    assert_eq!(ok(&["count", "--size", "1", "--free", "0"]), "0");
    let big = ok(&["count", "--size", "1000", "--all"]);
    assert!(big.len() > 250 && big.bytes().all(|b| b.is_ascii_digit()));
}

#[test]
fn count_formats() {
    assert_eq!(ok(&["count", "--size", "10", "--free", "0", "--format", "csv"]), "n,m,count\n10,0,6");
    let v = json(&["count", "--size", "19", "--all", "--format", "json"]);
    assert_eq!(v["count"], "4259");
    assert_eq!(v["m"], "inf");
    assert!(v["version"].is_string());
}

#[test]
fn table_lists_every_size() {
    let csv = ok(&["table", "--max-n", "6", "--m", "0,inf"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,m,count");
    assert_eq!(lines.len(), 1 + 2 * 7);
    assert!(lines.contains(&"4,0,1") && lines.contains(&"6,inf,4"));
    let v = json(&["table", "--max-n", "4", "--m", "1", "--format", "json"]);
    assert_eq!(v["rows"][0]["counts"], serde_json::json!(["0", "0", "1", "0", "1"]));
}

#[test]
fn unrank_and_rank() {
    assert_eq!(ok(&["unrank", "--size", "4", "--free", "0", "--index", "1", "--term-format", "binary"]), "0010");
    assert_eq!(ok(&["unrank", "--size", "4", "--free", "0", "--index", "1", "--term-format", "text"]), r"\1");
    assert_eq!(ok(&["rank", "--free", "0", "--term", "0010"]), "1");
    assert_eq!(ok(&["rank", "--free", "0", "--text", r"\1"]), "1");
    for k in 1..=6 {
        let k = k.to_string();
        let t = ok(&["unrank", "--size", "10", "--free", "0", "--index", &k]);
        assert_eq!(ok(&["rank", "--free", "0", "--term", &t]), k);
    }
}

#[test]
fn domain_errors_exit_3() {
    let o = blc(&["unrank", "--size", "10", "--free", "0", "--index", "7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("1..=6"));
    assert!(o.stdout.is_empty());
    assert_eq!(blc(&["unrank", "--size", "5", "--free", "0", "--index", "1"]).status.code(), Some(3));
    assert_eq!(blc(&["rank", "--free", "0", "--text", "2"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(blc(&["count", "--size", "4"]).status.code(), Some(2));
    assert_eq!(blc(&["count", "--size", "4", "--free", "0", "--all"]).status.code(), Some(2));
    assert_eq!(blc(&["rank", "--free", "0", "--term", "0012"]).status.code(), Some(2));
    assert_eq!(blc(&["rank", "--free", "0", "--term", "00"]).status.code(), Some(2));
    assert_eq!(blc(&["typecheck", "--text", r"\(1"]).status.code(), Some(2));
    assert_eq!(blc(&["sample", "--size", "10", "--free", "0"]).status.code(), Some(2));
    assert_eq!(blc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn size_guard_exits_4() {
    let o = blc(&["count", "--size", "2001", "--all"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-n"));
    assert_eq!(ok(&["count", "--size", "8", "--all", "--max-n", "8"]), "10");
    assert_eq!(blc(&["count", "--size", "9", "--all", "--max-n", "8"]).status.code(), Some(4));
}

#[test]
fn sampling_is_reproducible() {
    let args = ["sample", "--size", "10", "--free", "0", "--count", "2", "--seed", "42"];
    let a = blc(&args);
    let b = blc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 2);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed=42"));
    let v = json(&["sample", "--size", "30", "--all", "--seed", "5", "--count", "3", "--format", "json"]);
    assert_eq!(v["seed"], 5);
    assert_eq!(v["generator"], "chacha20-seed_from_u64");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn typable_samples_typecheck() {
    let out = ok(&["sample", "--size", "40", "--free", "0", "--seed", "9", "--count", "5", "--typable"]);
    for term in out.lines() {
        assert_ne!(ok(&["typecheck", "--term", term]), "untypable");
    }
}

#[test]
fn typecheck_reports_types_as_data() {
    assert_eq!(ok(&["typecheck", "--term", "0010"]), "a -> a");
    assert_eq!(ok(&["typecheck", "--text", r"\(1 1)"]), "untypable");
    assert_eq!(ok(&["typecheck", "--text", r"(\\((2 1) 1) \1)"]), "untypable");
    assert_eq!(ok(&["typecheck", "--text", r"\\((2 1) 1)"]), "(a -> a -> b) -> a -> b");
    assert_eq!(ok(&["typecheck", "--text", "(1 2)"]), "a");
    let v = json(&["typecheck", "--text", "(1 2)", "--format", "json"]);
    assert_eq!(v["context"], serde_json::json!(["b -> a", "b"]));
}

#[test]
fn count_typable_matches_census() {
    assert_eq!(ok(&["count-typable", "--size", "20", "--closed"]), "503");
    assert_eq!(ok(&["count-typable", "--size", "20", "--all", "--jobs", "3"]), "5207");
    assert_eq!(ok(&["count-typable", "--size", "20", "--all", "--jobs", "1"]), "5207");
}

#[test]
fn asymptotics_report() {
    let v = json(&["asymptotics"]);
    for key in ["rho", "growth", "c_tilde", "c", "real_roots", "q_at_rho"] {
        assert!(!v[key].is_null(), "missing {key}");
    }
    assert!((v["rho"].as_f64().unwrap() - 0.509308127).abs() < 1e-9);
    assert!((v["growth"].as_f64().unwrap() - 1.963447954).abs() < 1e-9);
    assert!((v["c"].as_f64().unwrap() - 1.021874073).abs() < 1e-6);
    assert_eq!(v["real_roots"].as_array().unwrap().len(), 4);
    assert!(v["c_tilde_reference"].is_number());
}

#[test]
fn convergence_csv() {
    let csv = ok(&["convergence", "--max-n", "600", "--m", "0,1,2,3,4,5,6,7,8,9,10,inf"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("m,n,value"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 3));
    let inf: Vec<&Vec<&str>> = rows.iter().filter(|r| r[0] == "inf").collect();
    assert_eq!(inf.len(), 599);
    assert_eq!(inf.last().unwrap()[1], "600");
    let last: f64 = inf.last().unwrap()[2].parse().unwrap();
    assert!((1.016..=1.027).contains(&last));
    let mantissa = inf[0][2].split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 12);
    let order: Vec<&str> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(order.first(), Some(&"0"));
    assert_eq!(order.last(), Some(&"inf"));
    assert_eq!(blc(&["convergence", "--max-n", "1"]).status.code(), Some(2));
}
