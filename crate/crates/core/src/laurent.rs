//! Truncated Laurent series c_v x^v + ... + O(x^T) over a finite field.
//!
//! Precision rules: a sum is known to min(T_a, T_b); a product to
//! min(T_a + v_b, T_b + v_a); an inverse of x^v·unit known to O(x^T) is
//! known to O(x^{T−2v}). A series without truncation is an exact Laurent
//! polynomial. The zero series known to O(x^T) behaves like valuation T.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::kernel;
use crate::poly::FqPoly;
use crate::ratfunc::RatFunc;
use crate::ring::CoeffRing;

/// Series variable.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// x = 1/θ, the uniformizer of K_∞.
    InvTheta,
    /// y = 1/s in the ramified field, s^{q−1} = −θ.
    InvS,
    /// π^{1/e} with π = 1/θ, used for points of C_∞.
    PiRoot(u32),
}

impl Var {
    pub fn name(&self) -> String {
        match self {
            Var::InvTheta => "1/θ".into(),
            Var::InvS => "1/s".into(),
            Var::PiRoot(1) => "π".into(),
            Var::PiRoot(e) => format!("π^(1/{e})"),
        }
    }
    pub fn parse(s: &str) -> Result<Var> {
        match s {
            "1/θ" | "1/theta" => Ok(Var::InvTheta),
            "1/s" => Ok(Var::InvS),
            "π" | "pi" => Ok(Var::PiRoot(1)),
            _ => {
                let e = s
                    .strip_prefix("π^(1/")
                    .or_else(|| s.strip_prefix("pi^(1/"))
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.parse::<u32>().ok())
                    .filter(|&e| e >= 1)
                    .ok_or_else(|| Error::Json(format!("unknown variable {s}")))?;
                Ok(Var::PiRoot(e))
            }
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct LaurentSeries {
    field: Field,
    var: Var,
    val: i64,
    coeffs: Vec<FqElem>,
    trunc: Option<i64>,
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn add_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    a.zip(b).map(|(x, y)| x + y)
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.var.name();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*({x})^{}", c.0, self.val + i as i64));
            }
            if parts.len() > 12 {
                parts.push("...".into());
                break;
            }
        }
        if let Some(t) = self.trunc {
            parts.push(format!("O(({x})^{t})"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl LaurentSeries {
    /// Series with coefficients at exponents val, val+1, ...; entries at or
    /// beyond `trunc` are discarded.
    pub fn new(field: &Field, var: Var, val: i64, coeffs: Vec<FqElem>, trunc: Option<i64>) -> Self {
        let mut s = LaurentSeries { field: field.clone(), var, val, coeffs, trunc };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(t) = self.trunc {
            let keep = (t - self.val).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        kernel::trim(&mut self.coeffs);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.val = self.trunc.unwrap_or(0);
            }
        }
    }

    pub fn zero(field: &Field, var: Var, trunc: Option<i64>) -> Self {
        Self::new(field, var, 0, Vec::new(), trunc)
    }
    pub fn one(field: &Field, var: Var) -> Self {
        Self::monomial(field, var, FqElem::ONE, 0)
    }
    /// Exact c x^k.
    pub fn monomial(field: &Field, var: Var, c: FqElem, k: i64) -> Self {
        Self::new(field, var, k, vec![c], None)
    }
    /// Exact image of a polynomial in θ as a Laurent polynomial in 1/θ.
    pub fn from_poly(p: &FqPoly) -> Self {
        let d = p.deg().unwrap_or(0) as i64;
        let mut c = p.coeffs().to_vec();
        c.reverse();
        Self::new(p.field(), Var::InvTheta, -d, c, None)
    }
    /// Expansion of a rational function in 1/θ known to O((1/θ)^trunc).
    pub fn from_ratfunc(r: &RatFunc, trunc: i64) -> Self {
        let f = r.field();
        if r.is_zero() {
            return Self::zero(f, Var::InvTheta, Some(trunc));
        }
        if r.is_polynomial() {
            return Self::from_poly(r.num()).with_trunc(trunc);
        }
        let val = -r.degree().unwrap();
        let n = (trunc - val).max(0) as usize;
        let mut a = r.num().coeffs().to_vec();
        a.reverse();
        let mut b = r.den().coeffs().to_vec();
        b.reverse();
        let c = kernel::series_div(f, &a, &b, n);
        Self::new(f, Var::InvTheta, val, c, Some(trunc))
    }

    /// Expansion of a rational function with `rel` digits after its leading
    /// term; the zero function stays an exact zero.
    pub fn from_ratfunc_rel(r: &RatFunc, rel: i64) -> Self {
        match r.degree() {
            None => Self::zero(r.field(), Var::InvTheta, None),
            Some(d) => Self::from_ratfunc(r, -d + rel),
        }
    }

    /// The polynomial in θ represented by a 1/θ-series, provided every
    /// digit at a positive exponent is known and zero.
    pub fn as_polynomial(&self) -> Option<FqPoly> {
        if self.var != Var::InvTheta || self.trunc.is_some_and(|t| t < 1) {
            return None;
        }
        if self.terms().any(|(k, _)| k > 0) {
            return None;
        }
        let deg = (-self.val).max(0) as usize;
        let mut c = vec![FqElem::ZERO; deg + 1];
        for (k, a) in self.terms() {
            c[(-k) as usize] = a;
        }
        Some(FqPoly::new(&self.field, c))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn var(&self) -> Var {
        self.var
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }
    /// Exponent of the leading nonzero coefficient.
    pub fn val(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }
    pub fn trunc(&self) -> Option<i64> {
        self.trunc
    }
    /// Lower bound for the valuation: the valuation, or the truncation for
    /// a zero-to-truncation series (`None` for the exact zero).
    pub fn val_bound(&self) -> Option<i64> {
        if self.is_zero() {
            self.trunc
        } else {
            Some(self.val)
        }
    }
    /// Number of known digits counted from the leading term.
    pub fn rel_prec(&self) -> Option<i64> {
        self.trunc.map(|t| t - self.val_bound().unwrap())
    }
    /// Coefficients from the leading exponent up to the last nonzero one.
    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }
    pub fn coeff(&self, k: i64) -> FqElem {
        if k < self.val {
            return FqElem::ZERO;
        }
        self.coeffs.get((k - self.val) as usize).copied().unwrap_or(FqElem::ZERO)
    }
    pub fn leading(&self) -> FqElem {
        self.coeffs.first().copied().unwrap_or(FqElem::ZERO)
    }
    /// Exponents and coefficients of the nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FqElem)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, &c)| (self.val + i as i64, c))
    }

    /// Forget all digits at exponents >= t.
    pub fn with_trunc(&self, t: i64) -> Self {
        let mut s = self.clone();
        s.trunc = min_opt(s.trunc, Some(t));
        s.normalize();
        s
    }
    /// Keep at most `r` digits after the leading exponent.
    pub fn with_rel_prec(&self, r: i64) -> Self {
        match self.val_bound() {
            Some(v) => self.with_trunc(v + r),
            None => self.clone(),
        }
    }
    pub fn with_var(&self, var: Var) -> Self {
        let mut s = self.clone();
        s.var = var;
        s
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return Err(Error::VariableMismatch(self.var.name(), o.var.name()));
        }
        if *self.field != *o.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let trunc = min_opt(self.trunc, o.trunc);
        if self.is_zero() {
            return Ok(o.with_trunc_opt(trunc));
        }
        if o.is_zero() {
            return Ok(self.with_trunc_opt(trunc));
        }
        let lo = self.val.min(o.val);
        let mut hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64);
        if let Some(t) = trunc {
            hi = hi.min(t);
        }
        let f = &self.field;
        let mut v = vec![FqElem::ZERO; (hi - lo).max(0) as usize];
        for (src, base) in [(self, self.val), (o, o.val)] {
            let off = (base - lo) as usize;
            for (slot, &c) in v.iter_mut().skip(off).zip(&src.coeffs) {
                *slot = f.add(*slot, c);
            }
        }
        Ok(Self::new(f, self.var, lo, v, trunc))
    }

    pub(crate) fn with_trunc_opt(&self, t: Option<i64>) -> Self {
        match t {
            Some(t) => self.with_trunc(t),
            None => self.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        LaurentSeries { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(), ..self.clone() }
    }
    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }
    pub fn scale(&self, c: FqElem) -> Self {
        let f = &self.field;
        Self::new(f, self.var, self.val, self.coeffs.iter().map(|&x| f.mul(x, c)).collect(), self.trunc)
    }
    /// Multiplication by x^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries { val: self.val + k, trunc: self.trunc.map(|t| t + k), ..self.clone() }
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        let trunc = min_opt(add_opt(self.trunc, o.val_bound()), add_opt(o.trunc, self.val_bound()));
        let exact_zero = (self.is_zero() && self.is_exact()) || (o.is_zero() && o.is_exact());
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(&self.field, self.var, if exact_zero { None } else { trunc }));
        }
        let val = self.val + o.val;
        let n = match trunc {
            Some(t) => (t - val).max(0) as usize,
            None => usize::MAX,
        };
        let c = kernel::mul_trunc(&self.field, &self.coeffs, &o.coeffs, n);
        Ok(Self::new(&self.field, self.var, val, c, trunc))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvertZeroToTruncation);
        }
        let f = &self.field;
        let l0 = f.inv(self.leading()).unwrap();
        match self.trunc {
            None if self.coeffs.len() == 1 => Ok(Self::monomial(f, self.var, l0, -self.val)),
            None => Err(Error::PrecisionExhausted("inverse of an exact non-monomial series needs a truncation".into())),
            Some(t) => {
                let n = (t - self.val) as usize;
                let c = kernel::series_div(f, &[FqElem::ONE], &self.coeffs, n);
                Ok(Self::new(f, self.var, -self.val, c, Some(t - 2 * self.val)))
            }
        }
    }

    /// self / o; an exact divisor is expanded to the relative precision of self.
    pub fn try_div(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        if o.is_zero() {
            return Err(Error::InvertZeroToTruncation);
        }
        let inv = match (o.trunc, self.rel_prec()) {
            (None, Some(r)) if o.coeffs.len() > 1 => o.with_rel_prec(r.max(1)).inv()?,
            _ => o.inv()?,
        };
        self.try_mul(&inv)
    }

    pub fn powi(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut r = Self::one(&self.field, self.var);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                r = r.try_mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.try_mul(&b)?;
            }
        }
        Ok(r)
    }

    /// x ↦ x^{q^k}, coefficients raised to the q^k-th power.
    pub fn frobenius_pow(&self, k: u32) -> Self {
        self.frobenius_pow_capped(k, None)
    }

    /// As `frobenius_pow`, keeping at most `rel` digits after the leading term.
    pub fn frobenius_pow_capped(&self, k: u32, rel: Option<i64>) -> Self {
        if k == 0 {
            return match rel {
                Some(r) => self.with_rel_prec(r),
                None => self.clone(),
            };
        }
        let f = &self.field;
        let qk = (f.q() as i64).pow(k);
        let val = self.val * qk;
        let mut trunc = self.trunc.map(|t| t * qk);
        if let Some(r) = rel {
            trunc = min_opt(trunc, Some(val + r));
        }
        if self.is_zero() {
            return Self::zero(f, self.var, trunc);
        }
        let mut len = (self.coeffs.len() as i64 - 1) * qk + 1;
        if let Some(t) = trunc {
            len = len.min(t - val);
        }
        let mut v = vec![FqElem::ZERO; len.max(0) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let pos = i * qk as usize;
            if pos >= v.len() {
                break;
            }
            v[pos] = f.pow(c, qk as u64);
        }
        Self::new(f, self.var, val, v, trunc)
    }

    /// Substitution x ↦ c·y^m (m ≥ 1) into a new variable.
    pub fn substitute_monomial(&self, var: Var, c: FqElem, m: i64) -> Self {
        let f = &self.field;
        assert!(m >= 1);
        let mut v = vec![FqElem::ZERO; ((self.coeffs.len().max(1) - 1) as i64 * m + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let e = self.val + i as i64;
            let ce = if e >= 0 { f.pow(c, e as u64) } else { f.inv(f.pow(c, (-e) as u64)).unwrap() };
            v[i * m as usize] = f.mul(a, ce);
        }
        Self::new(f, var, self.val * m, v, self.trunc.map(|t| t * m))
    }

    /// Composition self(g) for g of positive valuation; negative powers of g
    /// use its inverse.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.compatible(g)?;
        let vg = match g.val() {
            Some(v) if v > 0 => v,
            _ => return Err(Error::NotContracting("composition needs an argument of positive valuation".into())),
        };
        let f = &self.field;
        let tail = self.trunc.map(|t| t * vg);
        let mut acc = Self::zero(f, self.var, None);
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            let term = Self::monomial(f, self.var, c, 0);
            acc = acc.try_mul(g)?.try_add(&term)?;
            if i > 0 {
                if let Some(t) = tail {
                    acc = acc.with_trunc(t - vg * self.val);
                }
            }
        }
        if self.is_zero() {
            acc = Self::zero(f, self.var, tail);
        }
        let gv = g.powi(self.val)?;
        let mut out = acc.try_mul(&gv)?;
        if let Some(t) = tail {
            out = out.with_trunc(t);
        }
        Ok(out)
    }

    /// Number of leading digits on which self and o agree, measured from
    /// exponent `from`: the first exponent where they differ minus `from`, or
    /// the common truncation minus `from` when no difference is visible.
    pub fn agreement(&self, o: &Self, from: i64) -> i64 {
        let d = self.try_sub(o).expect("compatible series");
        match d.val() {
            Some(v) => v - from,
            None => d.trunc.map_or(i64::MAX, |t| t - from),
        }
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let hi = match self.trunc {
            Some(t) => t,
            None => self.val + self.coeffs.len() as i64,
        };
        let coeffs: Vec<Value> = (self.val..hi).map(|k| json!(f.coords(self.coeff(k)))).collect();
        json!({"var": self.var.name(), "val": self.val, "trunc": self.trunc, "coeffs": coeffs})
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Json(m.to_string());
        let var = Var::parse(v["var"].as_str().ok_or_else(|| bad("missing var"))?)?;
        let val = v["val"].as_i64().ok_or_else(|| bad("missing val"))?;
        let trunc = match &v["trunc"] {
            Value::Null => None,
            t => Some(t.as_i64().ok_or_else(|| bad("bad trunc"))?),
        };
        let arr = v["coeffs"].as_array().ok_or_else(|| bad("missing coeffs"))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for c in arr {
            let coords: Vec<u32> = c
                .as_array()
                .ok_or_else(|| bad("coefficient must be a coordinate vector"))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("bad coordinate")))
                .collect::<Result<_>>()?;
            coeffs.push(field.from_coords(&coords)?);
        }
        if let Some(t) = trunc {
            if val + coeffs.len() as i64 > t {
                return Err(bad("coefficients beyond truncation"));
            }
        }
        Ok(Self::new(field, var, val, coeffs, trunc))
    }
}

impl CoeffRing for LaurentSeries {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field, self.var, None)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field, self.var)
    }
    fn is_zero(&self) -> bool {
        LaurentSeries::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("compatible series")
    }
    fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("compatible series")
    }
    fn neg(&self) -> Self {
        LaurentSeries::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("compatible series")
    }
    fn frobenius(&self) -> Self {
        self.frobenius_pow(1)
    }
    fn frobenius_pow(&self, k: u32) -> Self {
        LaurentSeries::frobenius_pow(self, k)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn domain_tag(&self) -> &'static str {
        "Laurent"
    }
    fn q_hint(&self) -> u32 {
        self.field.q()
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }
}
