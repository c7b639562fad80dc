//! The `compute` and `uexp` commands: one function per object, each returning
//! the value as JSON together with the formula it was computed from.

use drinfeld_core::carlitz::{
    brackets, exp_c, log_c, mzv, omega_series, pi_pow_q_minus_1, pi_ramified, zeta_carlitz, BracketCache,
    RamifiedContext,
};
use drinfeld_core::perkins::eisenstein_chi;
use drinfeld_core::serial::{power_to_json, twisted_to_json, JsonCoeff};
use drinfeld_core::uexp::{goss_poly, u_sub_a, UExp, UExpEngine};
use drinfeld_core::{Error, Field, FqPoly, Result};
use serde_json::{json, Value};

use crate::expr;

/// Options shared by all objects; each object reads the ones it needs.
#[derive(Clone, Debug)]
pub struct Params {
    pub order: usize,
    pub precision: i64,
    pub i: usize,
    pub n: usize,
    pub t_order: usize,
    pub w: Option<String>,
    pub weights: Option<String>,
    pub a: String,
}

/// A computed object: its JSON value, the formula used, the truncation, and
/// an optional flat coefficient table for CSV output.
pub struct Computed {
    pub formula: &'static str,
    pub truncation: Value,
    pub value: Value,
    pub table: Option<Vec<(usize, String)>>,
}

pub fn compute(field: &Field, object: &str, prm: &Params) -> Result<Computed> {
    let q = field.q() as i64;
    if let Some(form) = object.strip_prefix("uexp:") {
        return uexp_form(field, form, prm.order, prm.precision);
    }
    if let Some(j) = object.strip_prefix("eisenstein-chi:") {
        let j = expr::eval(j, q)?;
        let s = eisenstein_chi(field, j, prm.t_order, prm.precision)?;
        return Ok(Computed {
            formula: "𝓔(j;χ_t) = −Σ_{a monic} a(t)/a^j",
            truncation: json!({"tOrder": prm.t_order, "precision": prm.precision}),
            value: json!({"j": j, "series": power_to_json(&s)}),
            table: Some(table(s.coeffs())),
        });
    }
    match object {
        "brackets" => {
            let c = brackets(field, prm.i);
            let text = |v: &[FqPoly]| v.iter().map(|p| p.to_text()).collect::<Vec<_>>();
            Ok(Computed {
                formula: "[i] = θ^{q^i} − θ, d_i = [i]d_{i−1}^q, l_i = −[i]l_{i−1}, d_0 = l_0 = 1",
                truncation: json!({"i": prm.i}),
                value: json!({"d": text(c.ds()), "l": text(c.ls())}),
                table: None,
            })
        }
        "exp-c" | "log-c" => {
            let mut cache = BracketCache::new(field);
            let (s, formula) = if object == "exp-c" {
                (exp_c(&mut cache, prm.n), "exp_C = Σ_i d_i^{-1} τ^i")
            } else {
                (log_c(&mut cache, prm.n), "log_C = Σ_i l_i^{-1} τ^i")
            };
            Ok(Computed {
                formula,
                truncation: json!({"n": prm.n}),
                value: twisted_to_json(&s),
                table: Some(table(s.coeffs())),
            })
        }
        "pi" => {
            let pow = pi_pow_q_minus_1(field, prm.precision)?;
            let ram = pi_ramified(&RamifiedContext::new(field), prm.precision)?;
            Ok(Computed {
                formula:
                    "π̃^{q−1} = −θ^q ∏_{i≥1}(1 − θ^{1−q^i})^{−(q−1)}; π̃ = θs∏_{i≥1}(1 − θ^{1−q^i})^{−1}, s^{q−1} = −θ",
                truncation: json!({"precision": prm.precision}),
                value: json!({"power": "q-1", "series": pow.to_json(), "ramified": ram.to_json()}),
                table: None,
            })
        }
        "omega" => {
            let s = omega_series(&RamifiedContext::new(field), prm.t_order, prm.precision)?;
            Ok(Computed {
                formula: "ω(t) = Σ_i λ_{i+1} t^i, λ_1 = s, λ_{i+1}^q + θλ_{i+1} = λ_i",
                truncation: json!({"tOrder": prm.t_order, "precision": prm.precision}),
                value: power_to_json(&s),
                table: Some(table(s.coeffs())),
            })
        }
        "zeta" => {
            let w = expr::eval(prm.w.as_deref().unwrap_or("q-1"), q)?;
            let z = zeta_carlitz(field, w, prm.precision)?;
            Ok(Computed {
                formula: "ζ_A(w) = Σ_{a monic} a^{−w}",
                truncation: json!({"precision": prm.precision}),
                value: json!({"w": w, "series": z.to_json()}),
                table: None,
            })
        }
        "mzv" => {
            let ws = expr::eval_list(prm.weights.as_deref().unwrap_or("q-1"), q)?;
            let z = mzv(field, &ws, prm.precision)?;
            Ok(Computed {
                formula: "ζ_A(n_1,…,n_r) = Σ_{deg a_1 > … > deg a_r} a_1^{−n_1}⋯a_r^{−n_r}, a_i monic",
                truncation: json!({"precision": prm.precision}),
                value: json!({"weights": ws, "series": z.to_json()}),
                table: None,
            })
        }
        "goss" => {
            if prm.n == 0 {
                return Err(Error::Invalid("goss needs --n >= 1".into()));
            }
            let g = goss_poly(field, prm.n);
            Ok(Computed {
                formula: "G_n = u Σ_{q^k < n} G_{n−q^k}/d_k, G_0 = 0, G_1 = u",
                truncation: json!({"n": prm.n}),
                value: json!({"n": prm.n, "var": "u", "coeffs": g.iter().map(|c| c.coeff_to_json()).collect::<Vec<_>>()}),
                table: Some(table(&g)),
            })
        }
        "u-a" => {
            let a = FqPoly::from_text(field, &prm.a)?;
            let s = u_sub_a(&a, prm.order)?;
            Ok(Computed {
                formula: "u_a = u^{|a|}(Σ_i [a]_i u^{|a|−q^i})^{−1}",
                truncation: json!({"order": prm.order}),
                value: json!({"a": a.to_text(), "series": power_to_json(&s)}),
                table: Some(table(s.coeffs())),
            })
        }
        _ => Err(Error::Invalid(format!("unknown object {object}"))),
    }
}

fn table<C: JsonCoeff>(coeffs: &[C]) -> Vec<(usize, String)> {
    coeffs
        .iter()
        .enumerate()
        .map(|(m, c)| {
            let v = c.coeff_to_json();
            (m, v.as_str().map_or_else(|| v.to_string(), str::to_string))
        })
        .collect()
}

fn uexp_json<C: JsonCoeff>(u: &UExp<C>) -> (Value, Vec<(usize, String)>) {
    (u.to_json(|c| c.coeff_to_json()), table(u.series.coeffs()))
}

pub fn uexp_form(field: &Field, form: &str, order: usize, precision: i64) -> Result<Computed> {
    let mut engine = UExpEngine::new(field, order, precision)?;
    let (formula, (value, rows)) = match form {
        "g" => ("g = (θ^q − θ)π̃^{1−q}E_{q−1}", uexp_json(&engine.g()?)),
        "h" => ("h = −Σ_{a monic} a^q u_a", uexp_json(&engine.h_lopez())),
        "delta" => ("Δ = −h^{q−1}", uexp_json(&engine.delta()?)),
        _ => match form.strip_prefix("eisenstein:") {
            Some(w) => {
                let w = expr::eval(w, field.q() as i64)?;
                ("E_w = −ζ_A(w) − π̃^w Σ_{a monic} G_w(u_a)", uexp_json(&engine.eisenstein(w)?))
            }
            None => return Err(Error::Invalid(format!("unknown form {form}"))),
        },
    };
    Ok(Computed { formula, truncation: json!({"order": order, "precision": precision}), value, table: Some(rows) })
}
