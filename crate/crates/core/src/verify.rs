//! Identity checks grouped into suites, with JSON reports. Each check names
//! the identity it tests and the digit box it certified.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::carlitz::{
    brackets, carlitz_action, carlitz_poly, exp_a, exp_a_product, exp_c, exp_c_limit_check, lambda_mu_sequence, log_c,
    mzv, omega_functional_defect, omega_product, omega_series, pi_pow_q_minus_1, pi_ramified, residue_sum,
    vanishing_product, zeta_carlitz, BracketCache, RamifiedContext,
};
use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::geometry::geometry_report;
use crate::laurent::LaurentSeries;
use crate::newton::{newton_polygon, Q};
use crate::ore::TwistedSeries;
use crate::perkins::{eisenstein_chi, exp_a_reciprocal_check, finite_translation_check, perkins_identity_report};
use crate::poly::FqPoly;
use crate::ratfunc::RatFunc;
use crate::uexp::{growth_constant, UExpEngine};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    /// The identity under test, in the notation of this crate.
    pub formula: String,
    pub pass: bool,
    pub digit_box: Option<Value>,
    pub detail: Value,
}

impl Check {
    fn new(id: &str, formula: &str, pass: bool, digit_box: Option<Value>, detail: Value) -> Self {
        Check { id: id.to_string(), formula: formula.to_string(), pass, digit_box, detail }
    }
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "formula": self.formula,
            "pass": self.pass,
            "digitBox": self.digit_box,
            "detail": self.detail,
        })
    }
}

/// Runs `f`; an arithmetic failure inside becomes a failing check.
fn guarded(id: &str, formula: &str, f: impl FnOnce() -> Result<Check>) -> Check {
    match f() {
        Ok(c) => c,
        Err(e) => Check::new(id, formula, false, None, json!({"error": e.to_string()})),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    Carlitz,
    Uexp,
    Perkins,
    Geometry,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "carlitz" => Suite::Carlitz,
            "uexp" => Suite::Uexp,
            "perkins" => Suite::Perkins,
            "geometry" => Suite::Geometry,
            "all" => Suite::All,
            _ => return Err(Error::Invalid(format!("unknown suite {s}"))),
        })
    }
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Carlitz => "carlitz",
            Suite::Uexp => "uexp",
            Suite::Perkins => "perkins",
            Suite::Geometry => "geometry",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    /// u-order U for the u-expansion checks.
    pub order: usize,
    /// Working precision P in 1/θ-digits.
    pub precision: i64,
    pub seed: u64,
    /// Random cases per randomized family.
    pub cases: usize,
    /// Overrides of the Perkins digit box (Z-order, t-order, inner precision).
    pub z_order: Option<usize>,
    pub t_order: Option<usize>,
    pub perkins_precision: Option<i64>,
}

impl VerifyConfig {
    pub fn defaults(q: u32) -> Self {
        VerifyConfig {
            order: UExpEngine::default_order(q),
            precision: UExpEngine::DEFAULT_PRECISION,
            seed: 0,
            cases: 100,
            z_order: None,
            t_order: None,
            perkins_precision: None,
        }
    }
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "precision": self.precision,
            "seed": self.seed,
            "cases": self.cases,
            "zOrder": self.z_order,
            "tOrder": self.t_order,
            "perkinsPrecision": self.perkins_precision,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub q: u32,
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
    pub fn to_json(&self) -> Value {
        let mut sorted: Vec<&Check> = self.checks.iter().collect();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        let mut v = json!({
            "suite": self.suite.name(),
            "q": self.q,
            "engine": ENGINE_VERSION,
            "config": self.config.to_json(),
            "pass": self.pass(),
            "checks": sorted.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        });
        if let Some(f) = sorted.iter().find(|c| !c.pass) {
            v["firstFailure"] = json!(f.id);
        }
        if let Some(db) = self.check("perkins.identity").and_then(|c| c.digit_box.clone()) {
            v["digitBox"] = db;
        }
        v
    }
}

pub fn run_suite(field: &Field, suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Carlitz | Suite::All) {
        checks.extend(carlitz_suite(field, cfg));
    }
    if matches!(suite, Suite::Uexp | Suite::All) {
        checks.extend(uexp_suite(field, cfg));
    }
    if matches!(suite, Suite::Perkins | Suite::All) {
        checks.extend(perkins_suite(field, cfg));
    }
    if matches!(suite, Suite::Geometry | Suite::All) {
        checks.extend(geometry_suite(field, cfg)?);
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(Report { suite, q: field.q(), config: cfg.clone(), checks })
}

/// Digits of `got` agreeing with `expected`, counted from the leading term of
/// `expected`; `None` when a known digit differs.
pub fn agreement_digits(got: &LaurentSeries, expected: &LaurentSeries) -> Result<Option<i64>> {
    let d = got.try_sub(expected)?;
    let from = expected.val().or(got.val()).unwrap_or(0);
    if d.val().is_some() {
        return Ok(None);
    }
    Ok(Some(d.trunc().map_or(i64::MAX, |t| t - from)))
}

fn digit_box(required: i64, achieved: Option<i64>) -> Value {
    json!({"required": required, "achieved": achieved.map(|a| a.min(1 << 40))})
}

/// Exact Ore checks use τ^8 for q <= 3 and τ^6 beyond.
pub fn ore_order(q: u32) -> usize {
    if q <= 3 {
        8
    } else {
        6
    }
}

/// k-range of the Carlitz polynomial identities.
pub fn carlitz_poly_kmax(q: u32) -> usize {
    if q == 2 {
        6
    } else {
        3
    }
}

pub fn carlitz_suite(field: &Field, cfg: &VerifyConfig) -> Vec<Check> {
    let q = field.q();
    vec![
        check_brackets(field, 6),
        check_exp_log(field, ore_order(q)),
        check_carlitz_action(field, cfg.seed, 20, 5),
        check_exp_c_limit(field, 4, 8),
        check_carlitz_poly_product(field, carlitz_poly_kmax(q)),
        check_carlitz_poly_recursion(field, carlitz_poly_kmax(q)),
        check_factorization(field, ore_order(q), 25),
        check_pi_consistency(field, 12, 20),
        check_exp_c_slopes(field, 5),
        check_mzv(field, cfg.precision, 20),
        check_omega(field, 6, 15),
    ]
}

pub fn check_brackets(field: &Field, imax: usize) -> Check {
    let id = "carlitz.brackets";
    let formula = "deg d_i = i q^i, deg l_i = q(q^i−1)/(q−1), d_0 = l_0 = 1";
    let c = brackets(field, imax);
    let q = field.q() as u64;
    let ok = c.d(0).is_one()
        && c.l(0).is_one()
        && (0..=imax).all(|i| {
            c.d(i).deg() == Some(crate::carlitz::deg_d(q, i as u32) as usize)
                && c.l(i).deg() == Some(crate::carlitz::deg_l(q, i as u32) as usize)
        });
    Check::new(id, formula, ok, None, json!({"imax": imax}))
}

fn rat(p: &FqPoly) -> RatFunc {
    RatFunc::new(p.clone(), FqPoly::one(p.field())).expect("unit denominator")
}

pub fn check_exp_log(field: &Field, n: usize) -> Check {
    let id = "carlitz.exp_log";
    let formula = "exp_C·log_C ≡ log_C·exp_C ≡ 1 mod τ^N";
    guarded(id, formula, || {
        let mut cache = BracketCache::new(field);
        let e = exp_c(&mut cache, n);
        let l = log_c(&mut cache, n);
        let one = TwistedSeries::one(&RatFunc::zero(field)).with_trunc(n);
        let ok = e.mul(&l)? == one && l.mul(&e)? == one;
        Ok(Check::new(id, formula, ok, None, json!({"N": n, "exact": true})))
    })
}

/// C_a ≡ exp_C a log_C mod τ^{deg a + 1} for random a with deg a <= `max_deg`.
pub fn check_carlitz_action(field: &Field, seed: u64, count: usize, max_deg: usize) -> Check {
    let id = "carlitz.action";
    let formula = "C_a ≡ exp_C·a·log_C mod τ^{deg a+1}";
    guarded(id, formula, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = field.q() as usize;
        let mut cache = BracketCache::new(field);
        let mut failures = Vec::new();
        for _ in 0..count {
            let deg = rng.gen_range(0..=max_deg);
            let mut c: Vec<FqElem> = (0..deg).map(|_| FqElem(rng.gen_range(0..q) as u8)).collect();
            c.push(FqElem(rng.gen_range(1..q) as u8));
            let a = FqPoly::new(field, c);
            let n = deg + 1;
            let conj = exp_c(&mut cache, n).mul(&TwistedSeries::constant(rat(&a)))?.mul(&log_c(&mut cache, n))?;
            let ca = carlitz_action(&a);
            if (0..n).any(|i| *conj.coeff(i) != rat(ca.coeff(i))) {
                failures.push(a.to_text());
            }
        }
        Ok(Check::new(
            id,
            formula,
            failures.is_empty(),
            None,
            json!({"cases": count, "maxDeg": max_deg, "failures": failures}),
        ))
    })
}

pub fn check_exp_c_limit(field: &Field, n: usize, nsteps: usize) -> Check {
    let id = "carlitz.exp_c_limit";
    let formula = "[τ^i] C_{θ^m}θ^{−m} → 1/d_i as m → ∞";
    guarded(id, formula, || {
        let rows = exp_c_limit_check(field, n, nsteps)?;
        let last: Vec<Value> = rows.iter().map(|r| json!(r.digits.last().map(|x| x.1))).collect();
        Ok(Check::new(id, formula, true, None, json!({"N": n, "steps": nsteps, "finalDigits": last})))
    })
}

/// E_k(z) = d_k^{-1} ∏_{deg a < k} (z − a), compared coefficientwise in z.
pub fn check_carlitz_poly_product(field: &Field, kmax: usize) -> Check {
    let id = "carlitz.E_k_product";
    let formula = "E_k(z) = d_k^{-1}·∏_{|a|<q^k}(z−a)";
    let mut cache = BracketCache::new(field);
    let mut bad = Vec::new();
    for k in 0..=kmax {
        let dense = carlitz_poly(&mut cache, k).to_dense();
        let prod = vanishing_product(field, k);
        let ok = prod.len() == dense.len()
            && prod.iter().zip(&dense).all(|(p, e)| RatFunc::new(p.clone(), cache.d(k).clone()).is_ok_and(|r| r == *e));
        if !ok {
            bad.push(k);
        }
    }
    Check::new(id, formula, bad.is_empty(), None, json!({"kmax": kmax, "exact": true, "failures": bad}))
}

/// E_k^q = E_k + (θ^{q^{k+1}} − θ) E_{k+1}, compared as linearized polynomials.
pub fn check_carlitz_poly_recursion(field: &Field, kmax: usize) -> Check {
    let id = "carlitz.E_k_recursion";
    let formula = "E_k(z)^q = E_k(z) + (θ^{q^{k+1}}−θ)·E_{k+1}(z)";
    let mut cache = BracketCache::new(field);
    let th = FqPoly::theta(field);
    let mut bad = Vec::new();
    for k in 0..=kmax {
        let ek = carlitz_poly(&mut cache, k).coeffs;
        let ek1 = carlitz_poly(&mut cache, k + 1).coeffs;
        let br = rat(&th.frobenius_pow(k as u32 + 1).sub(&th));
        let zero = RatFunc::zero(field);
        let ok = (0..=k + 1).all(|i| {
            let lhs = if i == 0 { zero.clone() } else { ek[i - 1].frobenius() };
            let rhs = ek.get(i).unwrap_or(&zero).add(&br.mul(&ek1[i]));
            lhs == rhs
        });
        if !ok {
            bad.push(k);
        }
    }
    Check::new(id, formula, bad.is_empty(), None, json!({"kmax": kmax, "exact": true, "failures": bad}))
}

/// ∏(1 − l_k^{1−q}τ) against Σ_{i<N} d_i^{-1} π̃^{q^i−1} τ^i.
pub fn check_factorization(field: &Field, n: usize, required: i64) -> Check {
    let id = "carlitz.factorization";
    let formula = "(1−τ/l_{N−1}^{q−1})⋯(1−τ/l_1^{q−1})(1−τ) ≡ Σ_{i<N} d_i^{-1}π̃^{q^i−1}τ^i mod τ^N";
    guarded(id, formula, || {
        let p = required + 10;
        let mut cache = BracketCache::new(field);
        let prod = exp_a_product(&mut cache, n, p)?;
        let sum = exp_a(&mut cache, n, p)?;
        let mut worst: Option<i64> = Some(i64::MAX);
        for i in 0..n {
            let d = agreement_digits(prod.coeff(i), sum.coeff(i))?;
            worst = match (worst, d) {
                (Some(w), Some(d)) => Some(w.min(d)),
                _ => None,
            };
        }
        let ok = worst.is_some_and(|w| w >= required);
        Ok(Check::new(id, formula, ok, Some(digit_box(required, worst)), json!({"N": n, "unit": "1/θ"})))
    })
}

/// (μ_n)^{q−1} against the product formula for π̃^{q−1}, in s-digits.
pub fn check_pi_consistency(field: &Field, n: usize, required: i64) -> Check {
    let id = "carlitz.pi_consistency";
    let formula = "μ_n^{q−1} ≈ −θ^q·∏_{i>0}(1−θ^{1−q^i})^{−(q−1)}";
    guarded(id, formula, || {
        let q = field.q() as i64;
        let e = q - 1;
        let ctx = RamifiedContext::new(field);
        let rel = e * e * n as i64 + 10;
        let lm = lambda_mu_sequence(&ctx, n, rel)?;
        let mu = lm.mu_as_pi(n, field.q()).powi(e)?;
        let pi = ctx.embed(&pi_pow_q_minus_1(field, rel / e + q + 2)?);
        let got = agreement_digits(&mu, &pi)?;
        let ok = got.is_some_and(|d| d >= required);
        Ok(Check::new(id, formula, ok, Some(digit_box(required, got)), json!({"n": n, "unit": "1/s"})))
    })
}

/// Slopes of the Newton polygon of Σ_{i<=imax} d_i^{-1} z^{q^i}.
pub fn check_exp_c_slopes(field: &Field, imax: usize) -> Check {
    let id = "carlitz.exp_c_slopes";
    let formula = "slopes of NP(exp_C mod τ^{imax+1}) = {i + q/(q−1) : i < imax}";
    guarded(id, formula, || {
        let q = field.q() as i64;
        let mut cache = BracketCache::new(field);
        let e = exp_c(&mut cache, imax + 1);
        let pts: Vec<(i64, Option<Q>)> =
            (0..=imax).map(|i| (q.pow(i as u32), e.coeff(i).degree().map(|d| Q::from(-d)))).collect();
        let np = newton_polygon(&pts)?;
        let expect: Vec<Q> = (0..imax as i64).map(|i| Q::from(i) + Q::new(q, q - 1)).collect();
        let got: Vec<String> = np.slopes().iter().map(|s| s.to_string()).collect();
        Ok(Check::new(id, formula, np.slopes() == expect, None, json!({"slopes": got})))
    })
}

/// ζ_A(q−1) = −π̃^{q−1}/d_1 and ζ_A(q−1, q(q−1)) = π̃^{q²−1}/d_2.
pub fn check_mzv(field: &Field, precision: i64, required: i64) -> Check {
    let id = "carlitz.mzv";
    let formula = "ζ_A(q−1,…,q^{r−1}(q−1)) = (−1)^r π̃^{q^r−1}/d_r, r = 1, 2";
    guarded(id, formula, || {
        let q = field.q() as i64;
        let p = precision.max(required + q * (q - 1) + 5);
        let cache = brackets(field, 2);
        let pi = pi_pow_q_minus_1(field, p + q * q)?;
        let r1 = pi.try_div(&LaurentSeries::from_poly(cache.d(1)))?.neg();
        let r2 = pi.powi(q + 1)?.try_div(&LaurentSeries::from_poly(cache.d(2)))?;
        let z1 = mzv(field, &[q - 1], p)?;
        let z2 = mzv(field, &[q - 1, q * (q - 1)], p)?;
        let d1 = agreement_digits(&z1, &r1)?;
        let d2 = agreement_digits(&z2, &r2)?;
        let worst = d1.zip(d2).map(|(a, b)| a.min(b));
        let ok = worst.is_some_and(|w| w >= required);
        Ok(Check::new(id, formula, ok, Some(digit_box(required, worst)), json!({"r1": d1, "r2": d2, "unit": "1/θ"})))
    })
}

/// Product form against λ-series form of ω, τω = (t−θ)ω, and
/// −lim_{t→θ}(t−θ)ω(t) = π̃ to `required` s-digits.
pub fn check_omega(field: &Field, t_order: usize, required: i64) -> Check {
    let id = "carlitz.omega";
    let formula = "ω = s∏(1−t/θ^{q^i})^{−1} = Σλ_{i+1}t^i; τω = (t−θ)ω; −lim_{t→θ}(t−θ)ω = π̃";
    guarded(id, formula, || {
        let q = field.q() as i64;
        let e = q - 1;
        let ctx = RamifiedContext::new(field);
        let rel = 20;
        let ser = omega_series(&ctx, t_order, rel)?;
        let prod = omega_product(&ctx, t_order, rel)?;
        let mut forms = Some(i64::MAX);
        for k in 0..t_order {
            forms = forms.zip(agreement_digits(ser.coeff(k), prod.coeff(k))?).map(|(a, b)| a.min(b));
        }
        let defect = omega_functional_defect(&ctx, &ser)?;
        let functional = (0..t_order.saturating_sub(1)).all(|k| defect.coeff(k).is_zero());
        let n = (required + q) / (e * e) + 2;
        let lm = lambda_mu_sequence(&ctx, n as usize, e * e * n + 10)?;
        let res = residue_sum(&ctx, &lm)?;
        let pi = pi_ramified(&ctx, required + 10)?;
        let residue = agreement_digits(&res, &pi)?;
        let ok = forms.is_some_and(|d| d >= rel) && functional && residue.is_some_and(|d| d >= required);
        Ok(Check::new(
            id,
            formula,
            ok,
            Some(json!({"tOrder": t_order, "formsDigits": forms, "residue": digit_box(required, residue)})),
            json!({"functionalEquation": functional, "unit": "1/s"}),
        ))
    })
}

pub fn uexp_suite(field: &Field, cfg: &VerifyConfig) -> Vec<Check> {
    let mut engine = match UExpEngine::new(field, cfg.order, cfg.precision) {
        Ok(e) => e,
        Err(e) => return vec![Check::new("uexp.engine", "bootstrap", false, None, json!({"error": e.to_string()}))],
    };
    vec![
        check_h_two_ways(&engine),
        check_h_pattern(&engine),
        check_delta_alpha(&mut engine, 20),
        check_ze(field, 20, cfg.precision),
        check_eisenstein_vanishing(&mut engine),
        check_eisenstein_constant(&mut engine),
        check_alpha1(field, 20, cfg.precision),
        check_growth(field, 4, 20, cfg.precision),
    ]
}

pub fn check_h_two_ways(engine: &UExpEngine) -> Check {
    let id = "uexp.h_lopez==h_gekeler";
    let formula = "−Σ_{a monic} a^q u_a = −u∏_{a monic}(u^{|a|}C_a(1/u))^{q²−1}";
    guarded(id, formula, || {
        let a = engine.h_lopez();
        let b = engine.h_gekeler()?;
        let ok = a.series == b.series;
        Ok(Check::new(id, formula, ok, Some(json!({"uOrder": engine.order()})), json!({"domain": "A", "exact": true})))
    })
}

pub fn check_h_pattern(engine: &UExpEngine) -> Check {
    let id = "uexp.h_leading_pattern";
    let formula = "h = −u − u^{(q−1)²+1} + …, zero at u^2..u^{(q−1)²}";
    let q = engine.field().q() as usize;
    let h = engine.h_lopez();
    let f = engine.field();
    let minus_one = FqPoly::constant(f, f.from_int(-1));
    let k = (q - 1) * (q - 1) + 1;
    let ok =
        k < h.trunc() && *h.coeff(1) == minus_one && (2..k).all(|m| h.coeff(m).is_zero()) && *h.coeff(k) == minus_one;
    Check::new(
        id,
        formula,
        ok,
        None,
        json!({"uOrder": h.trunc(), "leading": (0..=k.min(h.trunc() - 1)).map(|m| h.coeff(m).to_text()).collect::<Vec<_>>()}),
    )
}

pub fn check_delta_alpha(engine: &mut UExpEngine, required: i64) -> Check {
    let id = "uexp.delta_alpha_route";
    let formula = "π̃^{1−q²}((θ^{q²}−θ)α_2 − g̃α_1^q) = −h^{q−1}";
    let u = engine.order();
    guarded(id, formula, || {
        let (_, cmp) = engine.delta_alpha_route()?;
        let ok = cmp.mismatch.is_none() && cmp.min_digits >= required;
        Ok(Check::new(
            id,
            formula,
            ok,
            Some(json!({"uOrder": u, "required": required, "achieved": cmp.min_digits})),
            json!({"mismatchAt": cmp.mismatch, "unit": "1/θ"}),
        ))
    })
}

pub fn check_ze(field: &Field, u: usize, p: i64) -> Check {
    let id = "uexp.ze_cross_check";
    let formula = "Z/𝔼 = 1 − Σ_k E_k Z^k, 𝔼 = Σ_i α_i Z^{q^i}, k <= q²−1";
    guarded(id, formula, || {
        let rep = UExpEngine::new(field, u, p)?.ze_cross_check()?;
        let min = rep.rows.iter().map(|r| r.comparison.min_digits).min().unwrap_or(i64::MAX);
        Ok(Check::new(
            id,
            formula,
            true,
            Some(json!({"uOrder": u, "kmax": rep.rows.len(), "minDigits": min.min(1 << 40)})),
            json!({"discrepancies": 0}),
        ))
    })
}

pub fn check_eisenstein_vanishing(engine: &mut UExpEngine) -> Check {
    let id = "uexp.eisenstein_vanishing";
    let formula = "E_w = 0 for (q−1) ∤ w";
    let q = engine.field().q() as i64;
    guarded(id, formula, || {
        let mut tested = Vec::new();
        let mut ok = true;
        for w in (1..=q * q).filter(|w| w % (q - 1) != 0) {
            tested.push(w);
            ok &= engine.eisenstein(w)?.series.is_zero();
        }
        Ok(Check::new(id, formula, ok, None, json!({"weights": tested})))
    })
}

pub fn check_eisenstein_constant(engine: &mut UExpEngine) -> Check {
    let id = "uexp.eisenstein_constant";
    let formula = "E_w(u=0) = −ζ_A(w) for (q−1) | w";
    let q = engine.field().q() as i64;
    let p = engine.precision();
    guarded(id, formula, || {
        let mut worst = Some(i64::MAX);
        let mut integral = BTreeMap::new();
        for w in (1..q * q).filter(|w| w % (q - 1) == 0) {
            let ne = engine.eisenstein_normalized(w)?;
            let z = zeta_carlitz(engine.field(), w, p)?.neg();
            worst = worst.zip(agreement_digits(ne.raw.coeff(0), &z)?).map(|(a, b)| a.min(b));
            integral.insert(w.to_string(), ne.integral);
        }
        let ok = worst.is_some_and(|d| d >= p);
        Ok(Check::new(id, formula, ok, Some(digit_box(p, worst)), json!({"normalizedIntegral": integral})))
    })
}

pub fn check_alpha1(field: &Field, u: usize, p: i64) -> Check {
    let id = "uexp.alpha1==E_{q-1}";
    let formula = "α_1 ≡ E_{q−1} mod u^U";
    guarded(id, formula, || {
        let mut engine = UExpEngine::new(field, u, p)?;
        let a = engine.alpha(1)?;
        let e = engine.eisenstein(field.q() as i64 - 1)?;
        let cmp = crate::uexp::compare_series(&a[1].series, &e.series);
        let ok = cmp.mismatch.is_none() && cmp.min_digits >= p / 2;
        Ok(Check::new(id, formula, ok, Some(json!({"uOrder": u, "minDigits": cmp.min_digits.min(1 << 40)})), json!({})))
    })
}

pub fn check_growth(field: &Field, imax: usize, mmax: usize, p: i64) -> Check {
    let id = "uexp.alpha_growth";
    let formula = "|c_{i,m}| <= q^{−iq^i}|π̃|^{q^i−1}C^m";
    guarded(id, formula, || {
        let alphas = UExpEngine::new(field, mmax + 1, p)?.alpha(imax)?;
        let g = growth_constant(field.q(), &alphas, mmax);
        Ok(Check::new(
            id,
            formula,
            g.holds,
            Some(json!({"imax": imax, "mmax": mmax})),
            json!({"logQC": g.log_q_c.to_string(), "constantTermsExact": g.constant_terms_exact, "skipped": g.skipped.len()}),
        ))
    })
}

/// (Z-order, t-order, inner precision) for the Perkins identity.
pub fn perkins_box(q: u32) -> (usize, usize, i64) {
    match q {
        2 => (5, 6, 25),
        3 => (9, 4, 20),
        _ => (q as usize + 2, 3, 15),
    }
}

pub fn perkins_suite(field: &Field, cfg: &VerifyConfig) -> Vec<Check> {
    let (z, t, p) = perkins_box(field.q());
    let (z, t, p) = (cfg.z_order.unwrap_or(z), cfg.t_order.unwrap_or(t), cfg.perkins_precision.unwrap_or(p));
    vec![
        check_perkins(field, z, t, p),
        check_exp_a_reciprocal(field, z, p),
        check_finite_translation(field, p),
        check_chi_vanishing(field, t),
    ]
}

pub fn check_perkins(field: &Field, z_order: usize, t_order: usize, p: i64) -> Check {
    let id = "perkins.identity";
    let formula = "exp_A(Z)ω(t)Σ_a a(t)/(Z−a) = π̃·exp_A(Z/(θ−t)), τt = t";
    guarded(id, formula, || {
        let r = perkins_identity_report(field, z_order, t_order, p)?;
        let mut v = r.to_json();
        let db = v.as_object_mut().and_then(|o| o.remove("digitBox")).unwrap_or(Value::Null);
        Ok(Check::new(id, formula, r.pass, Some(db), v))
    })
}

pub fn check_exp_a_reciprocal(field: &Field, z_order: usize, p: i64) -> Check {
    let id = "perkins.exp_a_reciprocal";
    let formula = "Z/exp_A(Z) = 1 + Σ_{(q−1)|j} ζ_A(j)Z^j";
    guarded(id, formula, || {
        let rows = exp_a_reciprocal_check(field, z_order, p)?;
        let worst = rows.iter().try_fold(i64::MAX, |w, r| r.1.map(|d| w.min(d)));
        let ok = worst.is_some_and(|w| w >= p);
        Ok(Check::new(id, formula, ok, Some(digit_box(p, worst)), json!({"zOrder": z_order})))
    })
}

pub fn check_finite_translation(field: &Field, p: i64) -> Check {
    let id = "perkins.finite_translation";
    let formula = "Σ_{a∈V} a(t)/(z−b−a) = Σ_{a∈V} a(t)/(z−a) − b(t)Σ_{a∈V} 1/(z−a), V = {deg a < d}";
    guarded(id, formula, || {
        let d = if field.q() <= 3 { 3 } else { 2 };
        let b = FqPoly::from_ints(field, &[1, 1]);
        let z = LaurentSeries::new(
            field,
            crate::laurent::Var::InvTheta,
            1,
            vec![FqElem::ONE, FqElem::ZERO, FqElem::ONE],
            Some(p + 20),
        );
        let got = finite_translation_check(field, d, &b, &z, p)?;
        let ok = got.is_some_and(|g| g >= p);
        Ok(Check::new(id, formula, ok, Some(digit_box(p, got)), json!({"d": d, "b": b.to_text()})))
    })
}

pub fn check_chi_vanishing(field: &Field, t_order: usize) -> Check {
    let id = "perkins.eisenstein_chi_vanishing";
    let formula = "𝓔(j;χ_t) = 0 for j ≢ 1 mod (q−1)";
    let q = field.q() as i64;
    guarded(id, formula, || {
        let mut ok = true;
        for j in (1..=2 * q).filter(|j| (j - 1) % (q - 1) != 0) {
            ok &= eisenstein_chi(field, j, t_order, 5)?.is_zero();
        }
        Ok(Check::new(id, formula, ok, None, json!({})))
    })
}

pub fn geometry_suite(field: &Field, cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let r = geometry_report(field, cfg.seed, cfg.cases)?;
    let tally = |t: &crate::geometry::Tally| t.to_json();
    let gens =
        |v: &[(String, bool)]| -> Value { v.iter().map(|(n, ok)| json!({"generator": n, "pass": ok})).collect() };
    Ok(vec![
        Check::new(
            "geometry.invariance",
            "|γz|_Im = |z|_Im·|det γ|/|cz+d|²",
            r.invariance_ok(),
            Some(json!({"cases": r.cases})),
            tally(&r.invariance),
        ),
        Check::new(
            "geometry.reduction",
            "reduce(z) ∈ 𝔉 = {|z| = |z|_Im >= 1}, γ ∈ GL_2(A)",
            r.reduction_ok(),
            Some(json!({"cases": r.cases})),
            tally(&r.reduction),
        ),
        Check::new("geometry.cocycle", "J_{γδ}(z) = J_γ(δz)·J_δ(z)", r.cocycle_ok(), None, tally(&r.cocycle)),
        Check::new("geometry.borel", "c ≠ 0, |z|_Im > 1 ⇒ |γz|_Im <= 1/|z|_Im", r.borel_ok(), None, tally(&r.borel)),
        Check::new(
            "geometry.j0_invariance",
            "j_0 = −(1+z^{q−1})^{q+1}/z^{q−1} fixed by z↦1/z, z↦λz, z↦z+μ",
            r.j0_ok(),
            None,
            gens(&r.j0),
        ),
        Check::new(
            "geometry.gl2_invariant",
            "(z^{q²}−z)^{q+1}/(z^q−z)^{q²+1} fixed by z↦1/z, z↦λz, z↦z+μ",
            r.gl2_invariant_ok(),
            None,
            gens(&r.gl2_invariant),
        ),
    ])
}
