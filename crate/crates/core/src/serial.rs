//! JSON forms of coefficients, twisted series and power series, with parsers
//! that invert them exactly.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::ore::TwistedSeries;
use crate::poly::FqPoly;
use crate::power::{OuterVar, PowerSeries};
use crate::ratfunc::RatFunc;
use crate::ring::CoeffRing;

pub trait JsonCoeff: CoeffRing + Sized {
    fn coeff_to_json(&self) -> Value;
    /// Parses a coefficient in the domain of `zero`.
    fn coeff_from_json(zero: &Self, v: &Value) -> Result<Self>;
}

fn bad(m: impl Into<String>) -> Error {
    Error::Json(m.into())
}

impl JsonCoeff for FqPoly {
    fn coeff_to_json(&self) -> Value {
        json!(self.to_text())
    }
    fn coeff_from_json(zero: &Self, v: &Value) -> Result<Self> {
        FqPoly::from_text(zero.field(), v.as_str().ok_or_else(|| bad("polynomial must be a string"))?)
    }
}

impl JsonCoeff for RatFunc {
    fn coeff_to_json(&self) -> Value {
        json!({"num": self.num().to_text(), "den": self.den().to_text()})
    }
    fn coeff_from_json(zero: &Self, v: &Value) -> Result<Self> {
        let f = zero.field();
        let part = |k: &str| -> Result<FqPoly> {
            FqPoly::from_text(f, v[k].as_str().ok_or_else(|| bad(format!("missing {k}")))?)
        };
        let r = RatFunc::new(part("num")?, part("den")?)?;
        if r.num() != &part("num")? || r.den() != &part("den")? {
            return Err(bad("rational function not in lowest terms with monic denominator"));
        }
        Ok(r)
    }
}

impl JsonCoeff for LaurentSeries {
    fn coeff_to_json(&self) -> Value {
        self.to_json()
    }
    fn coeff_from_json(zero: &Self, v: &Value) -> Result<Self> {
        let s = LaurentSeries::from_json(zero.field(), v)?;
        if s.var() != zero.var() {
            return Err(Error::VariableMismatch(zero.var().name(), s.var().name()));
        }
        Ok(s)
    }
}

impl<C: JsonCoeff> JsonCoeff for PowerSeries<C> {
    fn coeff_to_json(&self) -> Value {
        power_to_json(self)
    }
    fn coeff_from_json(zero: &Self, v: &Value) -> Result<Self> {
        power_from_json(zero.zero_elem(), v)
    }
}

pub fn twisted_to_json<C: JsonCoeff>(t: &TwistedSeries<C>) -> Value {
    t.to_json(|c| c.coeff_to_json())
}

/// Parses `{"domain":…,"trunc":N|null,"coeffs":[…]}` over the domain of `zero`.
pub fn twisted_from_json<C: JsonCoeff>(zero: &C, v: &Value) -> Result<TwistedSeries<C>> {
    if v["domain"].as_str() != Some(zero.domain_tag()) {
        return Err(Error::DomainMismatch);
    }
    let trunc = match &v["trunc"] {
        Value::Null => None,
        t => Some(t.as_u64().ok_or_else(|| bad("bad trunc"))? as usize),
    };
    let coeffs = v["coeffs"]
        .as_array()
        .ok_or_else(|| bad("missing coeffs"))?
        .iter()
        .map(|c| C::coeff_from_json(zero, c))
        .collect::<Result<Vec<_>>>()?;
    if trunc.is_some_and(|n| n != coeffs.len()) {
        return Err(bad("coefficient count differs from trunc"));
    }
    Ok(TwistedSeries::new(coeffs, trunc, zero.clone()))
}

pub fn power_to_json<C: JsonCoeff>(p: &PowerSeries<C>) -> Value {
    json!({
        "var": p.var().name(),
        "trunc": p.trunc(),
        "domain": p.zero_elem().domain_tag(),
        "coeffs": p.coeffs().iter().map(|c| c.coeff_to_json()).collect::<Vec<_>>(),
    })
}

pub fn power_from_json<C: JsonCoeff>(zero: &C, v: &Value) -> Result<PowerSeries<C>> {
    let var = match v["var"].as_str() {
        Some("u") => OuterVar::U,
        Some("t") => OuterVar::T,
        Some("Z") => OuterVar::Z,
        _ => return Err(bad("var must be u, t or Z")),
    };
    if v["domain"].as_str() != Some(zero.domain_tag()) {
        return Err(Error::DomainMismatch);
    }
    let trunc = v["trunc"].as_u64().ok_or_else(|| bad("bad trunc"))? as usize;
    let coeffs = v["coeffs"]
        .as_array()
        .ok_or_else(|| bad("missing coeffs"))?
        .iter()
        .map(|c| C::coeff_from_json(zero, c))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != trunc {
        return Err(bad("coefficient count differs from trunc"));
    }
    Ok(PowerSeries::new(var, coeffs, trunc, zero.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::{exp_a, exp_c, BracketCache};
    use crate::field::FqField;
    use crate::laurent::Var;

    #[test]
    fn twisted_round_trips() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let f = FqField::new(p, e).unwrap();
            let mut cache = BracketCache::new(&f);
            let ec = exp_c(&mut cache, 4);
            assert_eq!(twisted_from_json(&RatFunc::zero(&f), &twisted_to_json(&ec)).unwrap(), ec);
            let ea = exp_a(&mut cache, 3, 10).unwrap();
            let z = LaurentSeries::zero(&f, Var::InvTheta, None);
            assert_eq!(twisted_from_json(&z, &twisted_to_json(&ea)).unwrap(), ea);
            let ca = crate::carlitz::carlitz_action(&FqPoly::from_ints(&f, &[1, 0, 1]));
            assert_eq!(twisted_from_json(&FqPoly::zero(&f), &twisted_to_json(&ca)).unwrap(), ca);
            assert!(twisted_from_json(&FqPoly::zero(&f), &twisted_to_json(&ec)).is_err());
        }
    }

    #[test]
    fn poly_text() {
        let f = FqField::new(2, 1).unwrap();
        assert_eq!(FqPoly::from_text(&f, "[1,0,1]").unwrap(), FqPoly::from_ints(&f, &[1, 0, 1]));
        assert!(FqPoly::from_text(&f, "[2]").is_err());
        let f4 = FqField::new(2, 2).unwrap();
        let a = FqPoly::new(&f4, vec![crate::FqElem(3), crate::FqElem(0), crate::FqElem(2)]);
        assert_eq!(FqPoly::from_text(&f4, &a.to_text()).unwrap(), a);
    }
}
