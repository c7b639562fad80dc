//! The Carlitz period, the torsion tower λ_i, μ_i = θ^i λ_i and the
//! function ω(t), computed in the ramified field F_q((y)), y = 1/s,
//! s^{q−1} = −θ, so that 1/θ = −y^{q−1}.

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::laurent::{LaurentSeries, Var};
use crate::power::{OuterVar, PowerSeries};

/// −θ^q ∏_{i≥1} (1 − θ^{1−q^i})^{−(q−1)} with `p` digits after its leading term θ^q.
pub fn pi_pow_q_minus_1(field: &Field, p: i64) -> Result<LaurentSeries> {
    if p < 1 {
        return Err(Error::PrecisionExhausted("precision must be positive".into()));
    }
    let q = field.q() as i64;
    let prod = product_factor(field, p)?;
    let inv = prod.inv()?.powi(q - 1)?;
    Ok(inv.shift(-q).neg())
}

/// ∏_{i≥1} (1 − x^{q^i−1}) to O(x^p).
fn product_factor(field: &Field, p: i64) -> Result<LaurentSeries> {
    let q = field.q() as i64;
    let mut acc = LaurentSeries::one(field, Var::InvTheta).with_trunc(p);
    let mut qi = q;
    while qi - 1 < p {
        let m = LaurentSeries::monomial(field, Var::InvTheta, field.from_int(-1), qi - 1);
        acc = acc.try_mul(&LaurentSeries::one(field, Var::InvTheta).try_add(&m)?)?;
        qi *= q;
    }
    Ok(acc)
}

/// Conversions between K_∞ = F_q((1/θ)) and F_q((y)).
#[derive(Clone, Debug)]
pub struct RamifiedContext {
    field: Field,
}

impl RamifiedContext {
    pub fn new(field: &Field) -> Self {
        RamifiedContext { field: field.clone() }
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn e(&self) -> i64 {
        self.field.q() as i64 - 1
    }
    /// 1/θ ↦ −y^{q−1}.
    pub fn embed(&self, x: &LaurentSeries) -> LaurentSeries {
        x.substitute_monomial(Var::InvS, self.field.from_int(-1), self.e())
    }
    /// Inverse of `embed`; fails when a y-exponent is not divisible by q−1.
    pub fn descend(&self, y: &LaurentSeries) -> Result<LaurentSeries> {
        let e = self.e();
        let f = &self.field;
        let mut terms = Vec::new();
        for (k, c) in y.terms() {
            if k.rem_euclid(e) != 0 {
                return Err(Error::Invalid(format!("exponent {k} of 1/s is not a multiple of {e}")));
            }
            let kx = k.div_euclid(e);
            // c y^k = c (−1)^{kx} x^{kx}
            let sign = if kx.rem_euclid(2) == 0 { FqElem::ONE } else { f.from_int(-1) };
            terms.push((kx, f.mul(c, sign)));
        }
        let trunc = y.trunc().map(|t| t.div_euclid(e) + i64::from(t.rem_euclid(e) != 0));
        let mut out = LaurentSeries::zero(f, Var::InvTheta, trunc);
        for (k, c) in terms {
            out = out.try_add(&LaurentSeries::monomial(f, Var::InvTheta, c, k).with_trunc_opt(trunc))?;
        }
        Ok(out)
    }
    /// θ = −y^{−(q−1)}, exact.
    pub fn theta(&self) -> LaurentSeries {
        LaurentSeries::monomial(&self.field, Var::InvS, self.field.from_int(-1), -self.e())
    }
    /// s = y^{−1}, exact.
    pub fn s(&self) -> LaurentSeries {
        LaurentSeries::monomial(&self.field, Var::InvS, FqElem::ONE, -1)
    }
}

/// π̃ = θ s ∏_{i≥1} (1 − θ^{1−q^i})^{−1} in F_q((y)) with `p` digits after its
/// leading term y^{−q}.
pub fn pi_ramified(ctx: &RamifiedContext, p: i64) -> Result<LaurentSeries> {
    let f = ctx.field();
    let e = ctx.e();
    // p y-digits need ceil(p/e) x-digits of the product
    let px = (p + e - 1) / e;
    let prod = ctx.embed(&product_factor(f, px)?.inv()?).with_trunc(p);
    prod.try_mul(&ctx.theta())?.try_mul(&ctx.s())
}

#[derive(Clone, Debug)]
pub struct LambdaMu {
    /// λ_1, λ_2, ...
    pub lambda: Vec<LaurentSeries>,
    /// μ_1, μ_2, ...
    pub mu: Vec<LaurentSeries>,
}

impl LambdaMu {
    /// μ_n read as an approximation of π̃: the omitted differences
    /// μ_{i+1} − μ_i = −θ^i λ_{i+1}^q have y-valuation (q−1)²i − q, so the
    /// result is cut at y^{(q−1)²n − q}.
    pub fn mu_as_pi(&self, n: usize, q: u32) -> LaurentSeries {
        let e = q as i64 - 1;
        let t = e * e * n as i64 - q as i64;
        self.mu[n - 1].with_trunc(t)
    }
}

/// λ_1 = s and λ_{i+1} the solution of λ^q + θλ = λ_i near λ_i/θ, obtained by
/// iterating x ↦ (λ_i − x^q)/θ; every λ_i carries `rel` digits after its
/// leading term y^{(q−1)i − q}.
pub fn lambda_mu_sequence(ctx: &RamifiedContext, imax: usize, rel: i64) -> Result<LambdaMu> {
    if rel < 1 {
        return Err(Error::PrecisionExhausted("relative precision must be positive".into()));
    }
    let theta = ctx.theta();
    let inv_theta = theta.inv()?;
    let mut lambda = vec![ctx.s().with_trunc(-1 + rel)];
    while lambda.len() < imax {
        let prev = lambda.last().unwrap();
        let mut x = prev.try_mul(&inv_theta)?;
        let mut converged = false;
        for _ in 0..64 {
            let next = prev.try_sub(&x.frobenius_pow(1))?.try_mul(&inv_theta)?;
            if next == x {
                converged = true;
                break;
            }
            x = next;
        }
        if !converged {
            return Err(Error::ContractionDiverged(lambda.len() + 1));
        }
        lambda.push(x);
    }
    let mut mu = Vec::with_capacity(imax);
    let mut th_pow = LaurentSeries::one(ctx.field(), Var::InvS);
    for l in &lambda {
        th_pow = th_pow.try_mul(&theta)?;
        mu.push(l.try_mul(&th_pow)?);
    }
    Ok(LambdaMu { lambda, mu })
}

/// ω(t) = Σ_{i<t_order} λ_{i+1} t^i.
pub fn omega_series(ctx: &RamifiedContext, t_order: usize, rel: i64) -> Result<PowerSeries<LaurentSeries>> {
    let lm = lambda_mu_sequence(ctx, t_order, rel)?;
    let zero = LaurentSeries::zero(ctx.field(), Var::InvS, None);
    Ok(PowerSeries::new(OuterVar::T, lm.lambda, t_order, zero))
}

/// ω(t) = s ∏_{i≥0} (1 − t/θ^{q^i})^{−1}, with the t^k coefficient cut at the
/// same absolute truncation (q−1)(k+1) − q + rel as the λ-route.
pub fn omega_product(ctx: &RamifiedContext, t_order: usize, rel: i64) -> Result<PowerSeries<LaurentSeries>> {
    if rel < 1 || t_order < 1 {
        return Err(Error::PrecisionExhausted("orders must be positive".into()));
    }
    let f = ctx.field();
    let q = f.q() as i64;
    let e = q - 1;
    let tmax = e * t_order as i64 - q + rel + 1;
    let zero = LaurentSeries::zero(f, Var::InvS, None);
    let mut acc = PowerSeries::one(OuterVar::T, t_order, &zero);
    let x = LaurentSeries::monomial(f, Var::InvS, f.from_int(-1), e);
    let mut xq = x.clone();
    loop {
        // (1 − x^{q^i} t)^{−1} = Σ_k x^{k q^i} t^k
        let v = xq.val().unwrap();
        if v >= tmax {
            break;
        }
        let mut terms = Vec::with_capacity(t_order);
        let mut pw = LaurentSeries::one(f, Var::InvS);
        for _ in 0..t_order {
            terms.push(pw.with_trunc(tmax + 1));
            pw = pw.try_mul(&xq)?;
        }
        acc = acc.try_mul(&PowerSeries::new(OuterVar::T, terms, t_order, zero.clone()))?;
        xq = xq.frobenius_pow(1);
    }
    let s = ctx.s();
    let coeffs: Vec<LaurentSeries> = (0..t_order)
        .map(|k| {
            let t_abs = e * (k as i64 + 1) - q + rel;
            acc.coeff(k).try_mul(&s).map(|c| c.with_trunc(t_abs))
        })
        .collect::<Result<_>>()?;
    Ok(PowerSeries::new(OuterVar::T, coeffs, t_order, zero))
}

/// τω − (t − θ)ω, with τ acting on coefficients only.
pub fn omega_functional_defect(
    ctx: &RamifiedContext,
    omega: &PowerSeries<LaurentSeries>,
) -> Result<PowerSeries<LaurentSeries>> {
    let q = ctx.field().q();
    let tau_omega = omega.frobenius_pow_capped(1, q, None);
    let t_omega = omega.shift(1).with_trunc(omega.trunc());
    let th_omega = omega.scale(&ctx.theta());
    tau_omega.try_sub(&t_omega.try_sub(&th_omega)?)
}

/// −Σ_{i<n} θ^i λ_{i+1}^q, i.e. −(t−θ)ω(t) at t = θ; the omitted terms have
/// y-valuation >= (q−1)²n − q, so the sum is cut there.
pub fn residue_sum(ctx: &RamifiedContext, lm: &LambdaMu) -> Result<LaurentSeries> {
    let f = ctx.field();
    let q = f.q() as i64;
    let n = lm.lambda.len() as i64;
    let cut = (q - 1) * (q - 1) * n - q;
    let theta = ctx.theta();
    let mut acc = LaurentSeries::zero(f, Var::InvS, Some(cut));
    let mut th_pow = LaurentSeries::one(f, Var::InvS);
    for l in &lm.lambda {
        acc = acc.try_sub(&th_pow.try_mul(&l.frobenius_pow(1))?)?;
        th_pow = th_pow.try_mul(&theta)?;
    }
    Ok(acc.with_trunc(cut))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;

    #[test]
    fn pi_valuation_and_lead() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FqField::new(p, e).unwrap();
            let pi = pi_pow_q_minus_1(&f, 20).unwrap();
            assert_eq!(pi.val(), Some(-(f.q() as i64)));
            assert_eq!(pi.leading(), f.from_int(-1));
            let ctx = RamifiedContext::new(&f);
            assert_eq!(ctx.descend(&ctx.embed(&pi)).unwrap(), pi);
        }
    }

    #[test]
    fn lambda_valuations() {
        let f = FqField::new(3, 1).unwrap();
        let ctx = RamifiedContext::new(&f);
        let lm = lambda_mu_sequence(&ctx, 6, 30).unwrap();
        for (i, l) in lm.lambda.iter().enumerate() {
            let i = i as i64 + 1;
            assert_eq!(l.val(), Some(2 * i - 3));
            assert_eq!(l.rel_prec(), Some(30));
            assert_eq!(lm.mu[i as usize - 1].val(), Some(-3));
        }
        // λ_{i+1}^q + θ λ_{i+1} = λ_i
        let th = ctx.theta();
        for w in lm.lambda.windows(2) {
            let lhs = w[1].frobenius_pow(1).try_add(&th.try_mul(&w[1]).unwrap()).unwrap();
            assert!(lhs.try_sub(&w[0]).unwrap().is_zero());
        }
    }
}
