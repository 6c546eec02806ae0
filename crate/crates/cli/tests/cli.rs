use std::process::{Command, Output};

use serde_json::Value;

fn blab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blab"))
        .args(args)
        .env_remove("BLAB_PRIMES")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn strip_millis(mut v: Value) -> Value {
    for r in v["results"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("millis");
    }
    v
}

#[test]
fn duality_smallest_case() {
    let out = blab(&["verify", "--suite", "duality", "--m", "1", "--n", "2", "--f", "0", "--fields", "q"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let first = &r["results"][0];
    assert_eq!(first["expected"]["dim_ht"], 3);
    assert_eq!(first["computed"]["dim_ht"], 3);
    assert_eq!(first["pass"], true);
    assert_eq!(r["summary"]["failed"], 0);
    assert_eq!(r["config"]["fields"], serde_json::json!(["q"]));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let args = ["verify", "--suite", "all", "--m", "1", "--n", "3", "--fields", "q,fp3"];
    let a = strip_millis(report(&blab(&args)));
    let b = strip_millis(report(&blab(&args)));
    assert_eq!(a, b);
}

#[test]
fn warm_cache_reproduces_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let out_a = dir.path().join("a.json");
    let out_b = dir.path().join("b.json");
    let base = ["verify", "--suite", "ideal-dims", "--m", "1", "--n", "4", "--fields", "q,fp2"];
    let run = |out: &std::path::Path| {
        let mut args: Vec<&str> = base.to_vec();
        args.extend(["--cache", cache.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        let o = blab(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        serde_json::from_str::<Value>(&std::fs::read_to_string(out).unwrap()).unwrap()
    };
    let cold = run(&out_a);
    // garbage lines are ignored
    std::fs::OpenOptions::new()
        .append(true)
        .open(&cache)
        .and_then(|mut f| std::io::Write::write_all(&mut f, b"not json\n"))
        .unwrap();
    let warm = run(&out_b);
    assert!(warm["results"].as_array().unwrap().iter().all(|r| r["millis"] == "cached"));
    assert!(cold["results"].as_array().unwrap().iter().all(|r| r["millis"].is_u64()));
    assert_eq!(strip_millis(cold), strip_millis(warm));
}

#[test]
fn injected_fault_is_caught() {
    let out = blab(&["verify", "--suite", "presentation", "--m", "1", "--n", "3", "--fields", "q", "--inject-fault", "wrong-delta"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["config"]["fault"], "wrong-delta");
    let bad: Vec<&Value> = r["results"].as_array().unwrap().iter().filter(|x| x["pass"] == false).collect();
    assert!(!bad.is_empty());
    assert!(bad.iter().all(|x| x["witness"].is_string()));
}

#[test]
fn usage_errors_exit_two() {
    let out = blab(&["verify", "--suite", "duality", "--m", "99", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget exceeded"));
    assert_eq!(blab(&["verify", "--suite", "duality", "--m", "1", "--n", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(blab(&["verify", "--suite", "nope", "--m", "1", "--n", "2"]).status.code(), Some(2));
    assert_eq!(blab(&["verify", "--suite", "duality", "--m", "1", "--n", "2", "--fields", "fp4"]).status.code(), Some(2));
    assert_eq!(blab(&["show", "--check", "nope"]).status.code(), Some(2));
    assert_eq!(blab(&["--help"]).status.code(), Some(0));
}

#[test]
fn unwritable_output_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("r.json");
    let o = blab(&["verify", "--suite", "basis-count", "--m", "1", "--n", "2", "--fields", "q", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing"));
}

#[test]
fn primes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_blab"))
        .args(["verify", "--suite", "basis-count", "--m", "1", "--n", "2"])
        .env("BLAB_PRIMES", "7,11")
        .output()
        .unwrap();
    assert_eq!(report(&out)["config"]["fields"], serde_json::json!(["q", "fp7", "fp11"]));
}

#[test]
fn listing_and_describing() {
    let out = blab(&["list-suites"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for id in ["presentation", "duality", "bmw", "all"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id}");
    }
    let out = blab(&["show", "--check", "duality"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("duality: "));
}
