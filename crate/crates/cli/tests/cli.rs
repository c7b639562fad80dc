use std::process::{Command, Output};

use serde_json::Value;

fn drinfeld(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drinfeld"))
        .args(args)
        .env_remove("DRINFELD_ORDER")
        .env_remove("DRINFELD_PRECISION")
        .output()
        .expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn json_err(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).expect("stderr is JSON")
}

#[test]
fn brackets_q2() {
    let o = drinfeld(&["compute", "brackets", "--i", "3", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["value"]["d"][1], "[0,1,1]");
    assert_eq!(v["value"]["l"][2], "[0,0,1,1,0,1,1]");
    assert_eq!(v["value"]["d"].as_array().unwrap().len(), 4);
    assert_eq!(v["engine"], env!("CARGO_PKG_VERSION"));
    assert!(v["formula"].is_string());
}

#[test]
fn h_starts_with_minus_one() {
    for q in ["2", "3"] {
        let v = json_out(&drinfeld(&["compute", "uexp:h", "--order", "20", "--q", q]));
        let minus_one = if q == "2" { "[1]" } else { "[2]" };
        assert_eq!(v["value"]["coeffs"][0], "[]");
        assert_eq!(v["value"]["coeffs"][1], minus_one);
        assert_eq!(v["value"]["trunc"], 20);
        assert_eq!(v["value"]["weight"], q.parse::<i64>().unwrap() + 1);
        assert_eq!(v["value"]["domain"], "A");
    }
}

#[test]
fn mzv_matches_minus_pi_over_d1() {
    // ζ_A(q−1) = −π̃^{q−1}/d_1; at q = 2, d_1 = θ² + θ and −1 = 1.
    let z = json_out(&drinfeld(&["compute", "mzv", "--weights", "q-1", "--precision", "25"]));
    let pi = json_out(&drinfeld(&["compute", "pi", "--precision", "30"]));
    let z = &z["value"]["series"];
    let pi = &pi["value"]["series"];
    assert_eq!(pi["val"], -2);
    assert_eq!(z["val"], 0);
    let digits =
        |s: &Value| -> Vec<u64> { s["coeffs"].as_array().unwrap().iter().map(|c| c[0].as_u64().unwrap()).collect() };
    // π̃ = (θ² + θ)ζ_A(1): compare coefficientwise in F_2.
    let (zd, pd) = (digits(z), digits(pi));
    for k in 0..25 {
        let lhs = pd[k];
        let rhs = zd[k] ^ if k >= 1 { zd[k - 1] } else { 0 };
        assert_eq!(lhs, rhs, "digit {k}");
    }
}

#[test]
fn verify_uexp_names_h_check() {
    let o = drinfeld(&["verify", "--suite", "uexp", "--q", "2", "--order", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    let checks = v["checks"].as_array().unwrap();
    let h = checks.iter().find(|c| c["id"].as_str().unwrap().contains("h_lopez==h_gekeler")).unwrap();
    assert_eq!(h["pass"], true);
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn verify_carlitz_q3_passes() {
    let o = drinfeld(&["verify", "--suite", "carlitz", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn verify_perkins_reports_digit_box() {
    let o = drinfeld(&[
        "verify",
        "--suite",
        "perkins",
        "--q",
        "2",
        "--z-order",
        "5",
        "--t-order",
        "6",
        "--precision",
        "25",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["pass"], true);
    assert!(v.get("firstFailure").is_none());
    assert_eq!(v["digitBox"]["zOrder"], 5);
    assert_eq!(v["digitBox"]["tOrder"], 6);
}

#[test]
fn failing_suite_exits_one() {
    let o = drinfeld(&["geometry-verify", "--seed", "1", "--cases", "20", "--q", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_out(&o);
    assert_eq!(v["firstFailure"], "geometry.j0_invariance");
    let inv = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "geometry.invariance").unwrap();
    assert_eq!(inv["pass"], true);
}

#[test]
fn seeded_report_is_byte_identical() {
    let a = drinfeld(&["verify", "--suite", "geometry", "--q", "3", "--seed", "7", "--cases", "30"]);
    let b = drinfeld(&["verify", "--suite", "geometry", "--q", "3", "--seed", "7", "--cases", "30"]);
    assert_eq!(a.stdout, b.stdout);
    let c = drinfeld(&["verify", "--suite", "geometry", "--q", "3", "--seed", "8", "--cases", "30"]);
    assert_eq!(json_out(&c)["config"]["seed"], 8);
}

#[test]
fn config_errors_exit_two() {
    let o = drinfeld(&["verify", "--suite", "carlitz", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_err(&o)["error"]["kind"], "Invalid");

    let o = drinfeld(&["verify", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_err(&o)["error"]["kind"], "Usage");

    let o = drinfeld(&["compute", "brackets", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(2));

    let o = drinfeld(&["compute", "mzv", "--weights", "q-"]);
    assert_eq!(o.status.code(), Some(2));

    let o = drinfeld(&["reduce", "--point", "{not json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json_err(&o)["error"]["kind"], "Json");
}

#[test]
fn environment_overrides_order() {
    let o = Command::new(env!("CARGO_BIN_EXE_drinfeld"))
        .args(["uexp", "--form", "h", "--q", "2"])
        .env("DRINFELD_ORDER", "12")
        .env_remove("DRINFELD_PRECISION")
        .output()
        .unwrap();
    assert_eq!(json_out(&o)["value"]["trunc"], 12);
    let o = drinfeld(&["uexp", "--form", "h", "--q", "2"]);
    assert_eq!(json_out(&o)["value"]["trunc"], 30);
}

#[test]
fn csv_table() {
    let o = drinfeld(&["uexp", "--form", "h", "--order", "8", "--q", "3", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,coefficient");
    assert_eq!(lines[2], "1,[2]");
    assert_eq!(lines.len(), 9);
    let o = drinfeld(&[
        "uexp",
        "--form",
        "eisenstein:q-1",
        "--order",
        "6",
        "--precision",
        "10",
        "--q",
        "3",
        "--out",
        "csv",
    ]);
    let text = String::from_utf8(o.stdout).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("0,\"{"), "{row}");
}

#[test]
fn reduce_point() {
    let p = r#"{"val":1,"trunc":40,"coeffs":[[1],[0],[1]],"m":1,"e":2}"#;
    let o = drinfeld(&["reduce", "--q", "2", "--point", p]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["inFundamentalDomain"], true);
    assert_eq!(v["logImBefore"], "-1/2");
    assert_eq!(v["logImAfter"], "1/2");
    assert_eq!(v["steps"][0]["kind"], "inversion");
    assert_eq!(v["point"]["e"], 2);
}

#[test]
fn every_compute_object_runs() {
    let cases: &[&[&str]] = &[
        &["compute", "exp-c", "--n", "4", "--q", "3"],
        &["compute", "log-c", "--n", "4", "--q", "3"],
        &["compute", "pi", "--precision", "10", "--q", "4"],
        &["compute", "omega", "--t-order", "3", "--precision", "8", "--q", "3"],
        &["compute", "zeta", "--w", "3", "--precision", "10"],
        &["compute", "goss", "--n", "5"],
        &["compute", "u-a", "--a", "[1,1]", "--order", "10"],
        &["compute", "uexp:g", "--order", "10", "--precision", "10", "--q", "3"],
        &["compute", "uexp:delta", "--order", "10", "--q", "3"],
        &["compute", "uexp:eisenstein:2", "--order", "10", "--precision", "10", "--q", "3"],
        &["compute", "eisenstein-chi:1", "--t-order", "2", "--precision", "5", "--q", "3"],
    ];
    for args in cases {
        let o = drinfeld(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let v = json_out(&o);
        assert!(v["value"].is_object(), "{args:?}");
    }
    let v = json_out(&drinfeld(&["compute", "pi", "--precision", "10", "--q", "3"]));
    assert_eq!(v["value"]["power"], "q-1");
    assert_eq!(v["value"]["ramified"]["var"], "1/s");
}
