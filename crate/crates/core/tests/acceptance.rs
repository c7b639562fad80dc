//! Acceptance suite. Every test prints one PASS/FAIL line per field size to
//! stdout (bypassing the test harness capture) and fails if any line fails.

use std::io::Write;
use std::time::{Duration, Instant};

use drinfeld_core::geometry::geometry_report;
use drinfeld_core::uexp::UExpEngine;
use drinfeld_core::verify::{
    carlitz_poly_kmax, check_alpha1, check_carlitz_action, check_carlitz_poly_product, check_carlitz_poly_recursion,
    check_delta_alpha, check_eisenstein_constant, check_eisenstein_vanishing, check_exp_c_slopes, check_exp_log,
    check_factorization, check_growth, check_h_pattern, check_h_two_ways, check_mzv, check_omega, check_perkins,
    check_pi_consistency, check_ze, perkins_box, run_suite, Check, Suite, VerifyConfig,
};
use drinfeld_core::{Field, FqField};
use serde_json::{json, Value};

const P: i64 = 40;

fn field(q: u64) -> Field {
    match q {
        4 => FqField::new(2, 2).unwrap(),
        _ => FqField::new(q, 1).unwrap(),
    }
}

fn line(name: &str, q: u64, ok: bool, elapsed: Duration, detail: &Value) {
    let tag = if ok { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "[acceptance] {tag} {name} q={q} ({:.2}s) {detail}", elapsed.as_secs_f64());
}

/// Runs `f` for each q, prints a line each, and asserts that all passed
/// within `budget`.
fn criterion(name: &str, qs: &[u64], budget: Option<Duration>, f: impl Fn(&Field) -> (bool, Value)) {
    let mut failed = Vec::new();
    for &q in qs {
        let fld = field(q);
        let t = Instant::now();
        let (ok, mut detail) = f(&fld);
        let el = t.elapsed();
        let in_time = budget.is_none_or(|b| el <= b);
        if !in_time {
            detail = json!({"detail": detail, "overBudget": budget.unwrap().as_secs_f64()});
        }
        line(name, q, ok && in_time, el, &detail);
        if !(ok && in_time) {
            failed.push(q);
        }
    }
    assert!(failed.is_empty(), "{name} failed for q in {failed:?}");
}

fn all(checks: &[Check]) -> (bool, Value) {
    let ok = checks.iter().all(|c| c.pass);
    let v: Vec<Value> = checks.iter().map(|c| json!({"id": c.id, "pass": c.pass, "digitBox": c.digit_box})).collect();
    (ok, json!(v))
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

#[test]
fn ore_carlitz_core() {
    criterion("ore_carlitz_core", &[2, 3], secs(5), |f| all(&[check_exp_log(f, 8), check_carlitz_action(f, 0, 20, 5)]));
}

#[test]
fn carlitz_polynomials() {
    criterion("carlitz_polynomials", &[2, 3, 5], secs(10), |f| {
        let k = carlitz_poly_kmax(f.q());
        all(&[check_carlitz_poly_product(f, k), check_carlitz_poly_recursion(f, k)])
    });
}

#[test]
fn exp_a_factorization() {
    criterion("exp_a_factorization", &[2, 3], secs(10), |f| all(&[check_factorization(f, 8, 25)]));
}

#[test]
fn pi_consistency_q2() {
    criterion("pi_consistency", &[2], None, |f| all(&[check_pi_consistency(f, 12, 20)]));
}

#[test]
fn pi_consistency_q3() {
    criterion("pi_consistency", &[3], None, |f| all(&[check_pi_consistency(f, 12, 20)]));
}

#[test]
fn exp_c_newton_slopes() {
    criterion("exp_c_newton_slopes", &[2, 3], None, |f| {
        let c = check_exp_c_slopes(f, 5);
        (c.pass, c.detail)
    });
}

#[test]
fn mzv_identities() {
    criterion("mzv_identities", &[2, 3], secs(30), |f| all(&[check_mzv(f, P, 20)]));
}

#[test]
fn h_two_ways() {
    criterion("h_two_ways", &[2, 3], None, |f| {
        let engine = UExpEngine::new(f, 30, P).unwrap();
        all(&[check_h_two_ways(&engine), check_h_pattern(&engine)])
    });
}

#[test]
fn delta_alpha_route() {
    criterion("delta_alpha_route", &[2, 3], None, |f| {
        let mut engine = UExpEngine::new(f, 30, P).unwrap();
        all(&[check_delta_alpha(&mut engine, 20), check_ze(f, 20, P)])
    });
}

#[test]
fn eisenstein() {
    criterion("eisenstein", &[2, 3], None, |f| {
        let mut engine = UExpEngine::new(f, 20, P).unwrap();
        all(&[check_eisenstein_vanishing(&mut engine), check_eisenstein_constant(&mut engine), check_alpha1(f, 20, P)])
    });
}

#[test]
fn perkins_identity() {
    criterion("perkins_identity", &[2, 3], secs(60), |f| {
        let (z, t, p) = perkins_box(f.q());
        let expected = if f.q() == 2 { (5, 6, 25) } else { (9, 4, 20) };
        assert_eq!((z, t, p), expected);
        all(&[check_perkins(f, z, t, p)])
    });
}

#[test]
fn omega() {
    criterion("omega", &[2, 3], None, |f| all(&[check_omega(f, 6, 15)]));
}

#[test]
fn geometry_invariance_and_reduction() {
    criterion("geometry_invariance_and_reduction", &[2, 3], None, |f| {
        let r = geometry_report(f, 0, 100).unwrap();
        let ok = r.invariance_ok() && r.reduction_ok() && r.invariance.exhausted == 0;
        (ok, json!({"invariance": r.invariance.to_json(), "reduction": r.reduction.to_json()}))
    });
}

#[test]
fn geometry_j0_invariance() {
    criterion("geometry_j0_invariance", &[2, 3, 4, 5], None, |f| {
        let r = geometry_report(f, 0, 1).unwrap();
        let gens: Vec<Value> = r.j0.iter().map(|(g, ok)| json!({"generator": g, "pass": ok})).collect();
        (r.j0_ok(), json!(gens))
    });
}

#[test]
fn coefficient_growth() {
    criterion("coefficient_growth", &[2, 3], None, |f| {
        let c = check_growth(f, 4, 20, P);
        (c.pass, c.detail)
    });
}

/// Every suite at q = 4 and q = 5. The j0 generator check is excluded here
/// because `geometry_j0_invariance` reports it for these fields.
#[test]
fn extended_fields() {
    criterion("extended_fields", &[4, 5], None, |f| {
        let r = run_suite(f, Suite::All, &VerifyConfig::defaults(f.q())).unwrap();
        let failing: Vec<&str> =
            r.checks.iter().filter(|c| !c.pass && c.id != "geometry.j0_invariance").map(|c| c.id.as_str()).collect();
        (failing.is_empty(), json!({"checks": r.checks.len(), "failing": failing}))
    });
}
