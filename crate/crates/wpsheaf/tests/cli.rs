use std::process::Command;

use serde_json::Value;
use wpsheaf::cli::{run, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn call(args: &str) -> (i32, Vec<Value>) {
    let mut buf = Vec::new();
    let code = run(std::iter::once("wpsheaf").chain(args.split_whitespace()), &mut buf);
    let text = String::from_utf8(buf).unwrap();
    let recs = text.lines().filter_map(|l| serde_json::from_str(l).ok()).collect();
    (code, recs)
}

fn series_coeffs(recs: &[Value], name: &str) -> Vec<(i64, String)> {
    recs.iter()
        .filter(|r| r["record"] == "term" && r["series"] == name)
        .map(|r| (r["monomial"]["q"].as_i64().unwrap_or(0), r["coeff"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn hilb_examples() {
    let (code, recs) = call("hilb --abc 1 1 1 --r 0");
    assert_eq!(code, EXIT_OK);
    assert_eq!(recs[1]["quad"], "1/2");
    assert_eq!(recs[1]["lin"], "3/2");
    assert_eq!(recs[1]["match"], true);

    let (code, recs) = call("hilb --abc 2 2 4 --r 1");
    assert_eq!(code, EXIT_OK);
    assert_eq!((recs[1]["quad"].as_str(), recs[1]["lin"].as_str()), (Some("0"), Some("0")));
    assert_eq!(recs[1]["vanishing"], true);

    let (code, recs) = call("hilb --abc 1 2 3 --r 4 --E 6 --check");
    assert_eq!(code, EXIT_OK);
    let e = recs.iter().find(|r| r["record"] == "hilb_E").unwrap();
    assert_eq!((e["quad"].as_str(), e["lin"].as_str(), e["additivity"].as_bool()), (Some("18"), Some("57"), Some(true)));
}

#[test]
fn gseries_checks() {
    let (code, recs) = call("gseries --abc 1 1 2 --beta 0 --order 6 --specialize color0");
    assert_eq!(code, EXIT_OK);
    let c = series_coeffs(&recs, "G");
    assert_eq!(&c[..3], &[(0, "1".into()), (1, "6".into()), (2, "22".into())]);
    for args in [
        "gseries --abc 1 1 2 --order 4 --specialize color0 --check",
        "gseries --abc 1 2 3 --order 3 --specialize color0 --check",
        "gseries --abc 1 1 1 --order 6 --specialize all --check",
        "gseries --abc 1 2 2 --order 3 --specialize none --check",
    ] {
        let (code, recs) = call(args);
        assert_eq!(code, EXIT_OK, "{args}");
        assert_eq!(recs.last().unwrap()["ok"], true, "{args}");
    }
    assert_eq!(call("gseries --abc 2 2 2 --beta 1 --order 3").0, EXIT_USAGE);
}

#[test]
fn stable_and_hseries_checks() {
    let (code, recs) = call("stable --abc 1 1 1 --c1 -1 --max 9 --check");
    assert_eq!(code, EXIT_OK);
    assert_eq!(recs[1]["A"], -1);
    assert_eq!(recs[1]["delta"], serde_json::json!([1, 1, 1]));
    assert_eq!(recs.last().unwrap()["ok"], true);

    let (code, recs) = call("hseries --abc 1 1 2 --c1 -2 --max 10 --order 3 --check");
    assert_eq!(code, EXIT_OK);
    assert!(!series_coeffs(&recs, "Hvb").is_empty());
    assert!(!series_coeffs(&recs, "H").is_empty());
    assert_eq!(recs.last().unwrap()["ok"], true);
    assert_eq!(call("hseries --abc 1 2 3 --E 5 --c1 0").0, EXIT_USAGE);
}

#[test]
fn kclass_checks() {
    let (code, recs) = call("kclass --abc 1 1 2 --twist 0 0 1 --partitions 2,1 1 1 --check");
    assert_eq!(code, EXIT_OK);
    assert_eq!(recs.last().unwrap()["ok"], true);
    let (code, recs) = call("kclass --abc 1 2 2 --delta 2 2 1 --check");
    assert_eq!(code, EXIT_OK);
    assert_eq!(recs.last().unwrap()["closed_form_compared"], true);
    let (code, _) = call("kclass --abc 2 2 2 --delta 2 2 2 --coincide --check");
    assert_eq!(code, EXIT_OK);
    assert_eq!(call("kclass --abc 1 1 2 --delta 1 1 1").0, EXIT_USAGE);
}

#[test]
fn glue_demos() {
    let (code, recs) = call("glue --demo rank1 --abc 1 1 2");
    assert_eq!(code, EXIT_OK);
    let verdicts: Vec<bool> = recs.iter().filter(|r| r["record"] == "glue").map(|r| r["pass"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, vec![true, false]);
    assert_eq!(call("glue --demo rank1 --abc 1 1 1").0, EXIT_OK);
    assert_eq!(call("glue --demo rank2 --abc 1 2 2").0, EXIT_OK);
    let (code, recs) = call("glue --abc 2 2 2 --twist 1 0 1 --check");
    assert_eq!(code, EXIT_OK);
    assert_eq!(recs.last().unwrap()["unique"], true);
    assert_eq!(call("glue --demo bogus --abc 1 1 1").0, EXIT_USAGE);
}

#[test]
fn usage_errors_exit_one() {
    for args in ["", "hilb --abc 1 1", "hilb --abc 1 1 -2 --r 0", "nope", "gseries --abc 1 1 1 --specialize xyz"] {
        assert_eq!(call(args).0, EXIT_USAGE, "{args:?}");
    }
    assert_ne!(EXIT_MISMATCH, EXIT_OK);
}

#[test]
fn binary_output_is_deterministic() {
    let bin = env!("CARGO_BIN_EXE_wpsheaf");
    let go = || Command::new(bin).args(["stable", "--abc", "1", "2", "2", "--c1", "-1", "--max", "10"]).output().unwrap();
    let (x, y) = (go(), go());
    assert!(x.status.success());
    assert_eq!(x.stdout, y.stdout);
    let first: Value = serde_json::from_slice(x.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(first["record"], "meta");
    assert_eq!(first["version"], env!("CARGO_PKG_VERSION"));
    let bad = Command::new(bin).args(["hilb", "--abc", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}

#[test]
fn env_overrides_default_order_only() {
    let bin = env!("CARGO_BIN_EXE_wpsheaf");
    let out = Command::new(bin).args(["gseries", "--abc", "1", "1", "1", "--specialize", "all"]).env("WPSHEAF_ORDER", "3").output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let meta: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(meta["config"]["order"], 3);
    let out = Command::new(bin)
        .args(["gseries", "--abc", "1", "1", "1", "--specialize", "all", "--order", "2"])
        .env("WPSHEAF_ORDER", "9")
        .output()
        .unwrap();
    let meta: Value = serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(meta["config"]["order"], 2);
}
