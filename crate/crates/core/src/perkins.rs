//! The evaluation character χ_t(a) = a(t), the χ_t-twisted Eisenstein series
//! 𝓔(j; χ_t) = Σ'_{a∈A} a(t)/a^j for the lattice A, the series
//! ψ(Z) = Σ_{a∈A} a(t)/(Z − a) = −Σ_j Z^{j−1} 𝓔(j; χ_t), and a digit-box
//! check of exp_A(Z) ω(t) ψ(Z) = π̃ exp_A(Z/(θ − t)).
//!
//! Only one variable t and the rank-one lattice A are covered.

use serde_json::{json, Value};

use crate::carlitz::{exp_a, inv_power, lambda_mu_sequence, pi_ramified, zeta_carlitz, BracketCache, RamifiedContext};
use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::laurent::{LaurentSeries, Var};
use crate::poly::FqPoly;
use crate::power::{OuterVar, PowerSeries};
use crate::ring::CoeffRing;

/// χ_t(a) = a(t): the same coefficient vector read as a polynomial in t.
pub fn chi_t(a: &FqPoly) -> FqPoly {
    a.clone()
}

/// Lower bound for the valuation of Σ_{a monic, deg a = d} a_k a^{−j}, where a_k
/// is the θ^k-coefficient of a; `None` when the sum is zero (k > d).
///
/// For k = d it is the power sum bound dj + q^d − 1. For k < d, b ↦ b_k is a
/// K-combination of b, b^q, ..., b^{q^{d−1}} on polynomials of degree < d,
/// and Σ_b b^N vanishes for N < q^d − 1, which gives dj + (q−1)q^{d−1} − 1.
pub fn chi_stratum_bound(q: u64, d: u32, j: i64, k: u32) -> Option<i64> {
    if k > d {
        return None;
    }
    if d == 0 {
        return Some(0);
    }
    let dj = d as i64 * j;
    if k == d {
        Some(dj + q.pow(d) as i64 - 1)
    } else {
        Some(dj + ((q - 1) * q.pow(d - 1)) as i64 - 1)
    }
}

/// Σ_{a monic, deg a = d} a_k a^{−j} to O((1/θ)^trunc).
pub fn chi_stratum(field: &Field, d: usize, j: i64, k: usize, trunc: i64) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::zero(field, Var::InvTheta, Some(trunc));
    match chi_stratum_bound(field.q() as u64, d as u32, j, k as u32) {
        Some(b) if b < trunc => {}
        _ => return Ok(acc),
    }
    for a in FqPoly::monic_enumerate(field, d) {
        let c = a.coeff(k);
        if !c.is_zero() {
            acc = acc.try_add(&inv_power(&a, j, trunc)?.scale(c))?;
        }
    }
    Ok(acc)
}

/// Σ_{a monic} a_k a^{−j} to O((1/θ)^trunc).
fn chi_coefficient(field: &Field, j: i64, k: usize, trunc: i64) -> Result<LaurentSeries> {
    let q = field.q() as u64;
    let mut acc = LaurentSeries::zero(field, Var::InvTheta, Some(trunc));
    let mut d = k;
    while chi_stratum_bound(q, d as u32, j, k as u32).is_some_and(|b| b < trunc) || d == k {
        acc = acc.try_add(&chi_stratum(field, d, j, k, trunc)?)?;
        d += 1;
    }
    Ok(acc)
}

/// 𝓔(j; χ_t) = −Σ_{a monic} a(t)/a^j for j ≡ 1 (mod q−1), else 0, as a
/// t-series of order `t_order`. Each t^k-coefficient carries at least `rel`
/// digits after its leading term; a coefficient still zero after a search to
/// 4·rel digits past its a-priori bound is returned as zero to that truncation.
pub fn eisenstein_chi(field: &Field, j: i64, t_order: usize, rel: i64) -> Result<PowerSeries<LaurentSeries>> {
    if j < 1 {
        return Err(Error::NonpositiveWeight);
    }
    let q = field.q() as i64;
    let zero = LaurentSeries::zero(field, Var::InvTheta, None);
    if (j - 1) % (q - 1) != 0 {
        return Ok(PowerSeries::zero(OuterVar::T, t_order, zero));
    }
    let mut coeffs = Vec::with_capacity(t_order);
    for k in 0..t_order {
        let lower = chi_stratum_bound(q as u64, k as u32, j, k as u32).unwrap();
        let mut t = lower + rel;
        let c = loop {
            let c = chi_coefficient(field, j, k, t)?;
            if c.rel_prec().is_some_and(|r| r >= rel && !c.is_zero()) || t >= lower + 4 * rel {
                break c;
            }
            t += rel;
        };
        coeffs.push(c.neg());
    }
    Ok(PowerSeries::new(OuterVar::T, coeffs, t_order, zero))
}

/// ψ(Z) = −Σ_{j <= z_order} Z^{j−1} 𝓔(j; χ_t), a Z-series of t-series.
pub fn perkins_psi(
    field: &Field,
    z_order: usize,
    t_order: usize,
    rel: i64,
) -> Result<PowerSeries<PowerSeries<LaurentSeries>>> {
    let tzero = PowerSeries::zero(OuterVar::T, t_order, LaurentSeries::zero(field, Var::InvTheta, None));
    let mut v = Vec::with_capacity(z_order);
    for j in 1..=z_order as i64 {
        v.push(eisenstein_chi(field, j, t_order, rel)?.neg());
    }
    Ok(PowerSeries::new(OuterVar::Z, v, z_order, tzero))
}

/// Result of the identity check on one (Z^n, t^k) slot.
#[derive(Clone, Debug, PartialEq)]
pub struct Slot {
    pub z_exp: usize,
    pub t_exp: usize,
    /// Whether n is a power of q (otherwise both sides must vanish).
    pub q_power: bool,
    /// Digits known to agree past the dominant term of the slot; `None`
    /// when every term and the right side vanish identically.
    pub digits: Option<i64>,
    /// Whether a known digit differs.
    pub mismatch: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DigitBox {
    pub z_order: usize,
    pub t_order: usize,
    /// Required inner precision in 1/s-digits.
    pub required: i64,
    /// Smallest number of verified digits over all slots.
    pub achieved: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerkinsReport {
    pub pass: bool,
    pub first_failure: Option<(usize, usize)>,
    pub digit_box: DigitBox,
    /// Number of slots at Z-exponents that are not powers of q.
    pub vanishing_slots: usize,
    pub slots: Vec<Slot>,
}

impl PerkinsReport {
    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.pass,
            "firstFailure": self.first_failure.map(|(n, k)| json!({"Z": n, "t": k})),
            "digitBox": {
                "zOrder": self.digit_box.z_order,
                "tOrder": self.digit_box.t_order,
                "required": self.digit_box.required,
                "achieved": self.digit_box.achieved,
            },
            "vanishingSlots": self.vanishing_slots,
        })
    }
}

fn is_q_power(n: usize, q: usize) -> bool {
    let mut m = 1;
    while m < n {
        m *= q;
    }
    m == n
}

/// Compares exp_A(Z) ω(t) ψ(Z) with π̃ Σ_i d_i^{−1} π̃^{q^i−1} (θ^{q^i} − t)^{−1} Z^{q^i}
/// (τ fixes t, so τ^i sends 1/(θ − t) to 1/(θ^{q^i} − t)) in F_q((1/s)) on Z^1..Z^{z_order} × t^0..t^{t_order−1}, every input
/// carried with at least `p` digits (1/s-units) after its leading term.
pub fn perkins_identity_report(field: &Field, z_order: usize, t_order: usize, p: i64) -> Result<PerkinsReport> {
    if z_order < 1 || t_order < 1 || p < 1 {
        return Err(Error::Invalid("orders and precision must be positive".into()));
    }
    let q = field.q() as usize;
    let e = q as i64 - 1;
    let px = (p + e - 1) / e;
    let ctx = RamifiedContext::new(field);
    let mut imax = 0;
    while q.pow(imax as u32 + 1) <= z_order {
        imax += 1;
    }
    let mut cache = BracketCache::new(field);
    let ea = exp_a(&mut cache, imax + 1, px)?;
    let zero_y = LaurentSeries::zero(field, Var::InvS, None);
    let mut exp_y = vec![zero_y.clone(); z_order + 1];
    for i in 0..=imax {
        exp_y[q.pow(i as u32)] = ctx.embed(ea.coeff(i));
    }
    let omega = lambda_mu_sequence(&ctx, t_order, p)?.lambda;
    let psi = perkins_psi(field, z_order, t_order, px)?;
    let psi_y: Vec<Vec<LaurentSeries>> =
        (0..z_order).map(|n| (0..t_order).map(|k| ctx.embed(psi.coeff(n).coeff(k))).collect()).collect();
    let pi = pi_ramified(&ctx, p)?;
    let theta_inv = LaurentSeries::monomial(field, Var::InvTheta, FqElem::ONE, 1);

    let mut slots = Vec::new();
    let mut first_failure = None;
    let mut achieved = i64::MAX;
    let mut vanishing_slots = 0;
    for n in 1..=z_order {
        let qp = is_q_power(n, q);
        if !qp {
            vanishing_slots += t_order;
        }
        for k in 0..t_order {
            let mut lhs = zero_y.clone();
            let mut dominant: Option<i64> = None;
            for (m, c) in exp_y.iter().enumerate().take(n + 1).skip(1) {
                if c.is_exact_zero() {
                    continue;
                }
                for k1 in 0..=k {
                    let term = c.try_mul(&omega[k1])?.try_mul(&psi_y[n - m][k - k1])?;
                    if let (Some(a), Some(b), Some(d)) = (c.val(), omega[k1].val(), psi_y[n - m][k - k1].val()) {
                        dominant = Some(dominant.map_or(a + b + d, |x| x.min(a + b + d)));
                    }
                    lhs = lhs.try_add(&term)?;
                }
            }
            let rhs = if qp {
                let th = ctx.embed(&theta_inv.powi((n * (k + 1)) as i64)?);
                pi.try_mul(&exp_y[n])?.try_mul(&th)?
            } else {
                zero_y.clone()
            };
            if let Some(v) = rhs.val() {
                dominant = Some(dominant.map_or(v, |x| x.min(v)));
            }
            let diff = lhs.try_sub(&rhs)?;
            let mismatch = diff.val().is_some();
            let digits = dominant.map(|v| diff.trunc().map_or(i64::MAX, |t| t - v));
            if mismatch {
                first_failure.get_or_insert((n, k));
            }
            if let Some(d) = digits {
                achieved = achieved.min(d);
            }
            slots.push(Slot { z_exp: n, t_exp: k, q_power: qp, digits, mismatch });
        }
    }
    let pass = first_failure.is_none() && achieved >= p;
    Ok(PerkinsReport {
        pass,
        first_failure,
        digit_box: DigitBox { z_order, t_order, required: p, achieved },
        vanishing_slots,
        slots,
    })
}

/// As `perkins_identity_report`, failing with the first discrepant slot.
pub fn perkins_identity_check(field: &Field, z_order: usize, t_order: usize, p: i64) -> Result<PerkinsReport> {
    let r = perkins_identity_report(field, z_order, t_order, p)?;
    if let Some((n, k)) = r.first_failure {
        return Err(Error::IdentityFailed(format!("Z^{n} t^{k}")));
    }
    if !r.pass {
        return Err(Error::IdentityFailed(format!(
            "only {} of {} digits verified",
            r.digit_box.achieved, r.digit_box.required
        )));
    }
    Ok(r)
}

/// Z/exp_A(Z) = 1 + Σ_{(q−1)|j} ζ_A(j) Z^j, the t-free counterpart of the
/// translation rule ψ(Z − b) = ψ(Z) − b(t)/exp_A(Z). Returns, for j = 1..z_order,
/// the digits of agreement with the right side (`None` on a mismatch).
pub fn exp_a_reciprocal_check(field: &Field, z_order: usize, p: i64) -> Result<Vec<(usize, Option<i64>)>> {
    let q = field.q() as usize;
    let mut imax = 0;
    while q.pow(imax as u32 + 1) <= z_order + 1 {
        imax += 1;
    }
    let mut cache = BracketCache::new(field);
    let ea = exp_a(&mut cache, imax + 1, p)?;
    let zero = LaurentSeries::zero(field, Var::InvTheta, None);
    let mut w = vec![zero.clone(); z_order + 1];
    for i in 0..=imax {
        let k = q.pow(i as u32) - 1;
        if k <= z_order {
            w[k] = ea.coeff(i).clone();
        }
    }
    let inv = PowerSeries::new(OuterVar::Z, w, z_order + 1, zero.clone()).inv()?;
    let mut out = Vec::with_capacity(z_order);
    for j in 1..=z_order {
        let expected = if j % (q - 1) == 0 { zeta_carlitz(field, j as i64, p)? } else { zero.clone() };
        let d = inv.coeff(j).try_sub(&expected)?;
        let from = expected.val().unwrap_or(0);
        out.push((j, if d.val().is_some() { None } else { Some(d.trunc().map_or(i64::MAX, |t| t - from)) }));
    }
    Ok(out)
}

/// ψ_V(z) = Σ_{a∈V} a(t)/(z − a) over V = {deg a < d}, as t^k-coefficients.
fn psi_finite(field: &Field, d: usize, z: &LaurentSeries, p: i64) -> Result<(Vec<LaurentSeries>, LaurentSeries)> {
    let tz = LaurentSeries::zero(field, Var::InvTheta, None);
    let mut coeffs = vec![tz.clone(); d.max(1)];
    let mut plain = tz;
    for a in all_below(field, d) {
        let x = z.try_sub(&LaurentSeries::from_poly(&a))?.with_rel_prec(p).inv()?;
        plain = plain.try_add(&x)?;
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let c = a.coeff(k);
            if !c.is_zero() {
                *slot = slot.try_add(&x.scale(c))?;
            }
        }
    }
    Ok((coeffs, plain))
}

fn all_below(field: &Field, d: usize) -> Vec<FqPoly> {
    let mut out = vec![FqPoly::zero(field)];
    for k in 0..d {
        for a in FqPoly::monic_enumerate(field, k) {
            for c in field.elements().skip(1) {
                out.push(a.scale(c));
            }
        }
    }
    out
}

/// Finite form of the translation rule on V = {deg a < d}: for b ∈ V,
/// ψ_V(z − b) = ψ_V(z) − b(t) Σ_{a∈V} 1/(z − a). Returns the smallest number of
/// agreeing digits over the t-coefficients, measured from the valuation of
/// 1/z, or `None` on a mismatch.
pub fn finite_translation_check(field: &Field, d: usize, b: &FqPoly, z: &LaurentSeries, p: i64) -> Result<Option<i64>> {
    if b.deg().is_some_and(|x| x >= d) {
        return Err(Error::Invalid("b must have degree < d".into()));
    }
    if z.val().is_none_or(|v| v < 1) {
        return Err(Error::Invalid("z must have positive valuation".into()));
    }
    let shifted = z.try_sub(&LaurentSeries::from_poly(b))?;
    let (lhs, _) = psi_finite(field, d, &shifted, p)?;
    let (base, plain) = psi_finite(field, d, z, p)?;
    let from = -z.val().unwrap();
    let mut worst = i64::MAX;
    for (k, l) in lhs.iter().enumerate() {
        let r = base[k].try_sub(&plain.scale(b.coeff(k)))?;
        let diff = l.try_sub(&r)?;
        if diff.val().is_some() {
            return Ok(None);
        }
        worst = worst.min(diff.trunc().map_or(i64::MAX, |t| t - from));
    }
    Ok(Some(worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::power_sum;
    use crate::field::FqField;
    use crate::ratfunc::RatFunc;

    #[test]
    fn chi_examples() {
        let f = FqField::new(3, 1).unwrap();
        let a = FqPoly::from_ints(&f, &[1, 0, 1]);
        assert_eq!(chi_t(&a).to_text(), "[1,0,1]");
        assert_eq!(chi_t(&FqPoly::theta(&f)).to_text(), "[0,1]");
    }

    #[test]
    fn stratum_bound_holds() {
        for q in [2u64, 3] {
            let f = FqField::new(q, 1).unwrap();
            for d in 1..=4usize {
                if q.pow(d as u32) > 81 {
                    continue;
                }
                for j in 1..4 {
                    for k in 0..=d {
                        let t = 120;
                        let mut acc = LaurentSeries::zero(&f, Var::InvTheta, Some(t));
                        for a in FqPoly::monic_enumerate(&f, d) {
                            acc = acc.try_add(&inv_power(&a, j, t).unwrap().scale(a.coeff(k))).unwrap();
                        }
                        let b = chi_stratum_bound(q, d as u32, j, k as u32).unwrap();
                        assert!(acc.val_bound().unwrap() >= b, "q={q} d={d} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn stratum_at_t_equals_theta() {
        // Σ_{deg a = d} a(θ)/a^j = Σ_{deg a = d} a^{1−j}
        let f = FqField::new(3, 1).unwrap();
        for d in 0..=3usize {
            for j in [2i64, 3, 5] {
                let t = 60;
                let mut acc = LaurentSeries::zero(&f, Var::InvTheta, Some(t - d as i64));
                for k in 0..=d {
                    let c = chi_stratum(&f, d, j, k, t).unwrap();
                    acc = acc.try_add(&c.shift(-(k as i64))).unwrap();
                }
                let ps = power_sum(&f, d, j - 1, t - d as i64).unwrap();
                assert!(acc.try_sub(&ps).unwrap().is_zero(), "d={d} j={j}");
            }
        }
    }

    #[test]
    fn j1_q2_against_direct_sum() {
        let f = FqField::new(2, 1).unwrap();
        let e = eisenstein_chi(&f, 1, 3, 6).unwrap();
        for k in 0..3 {
            let mut direct = RatFunc::zero(&f);
            for d in 0..=3 {
                for a in FqPoly::monic_enumerate(&f, d) {
                    if !a.coeff(k).is_zero() {
                        direct = direct.add(&RatFunc::recip(&a).unwrap());
                    }
                }
            }
            // strata of degree >= 4 start at 4 + 8 − 1 = 11
            let ds = LaurentSeries::from_ratfunc(&direct, 11).neg();
            let c = e.coeff(k).with_trunc(11);
            assert!(c.try_sub(&ds).unwrap().is_zero(), "k={k}");
        }
    }

    #[test]
    fn vanishing_off_residue_class() {
        let f = FqField::new(3, 1).unwrap();
        assert!(eisenstein_chi(&f, 2, 3, 5).unwrap().is_zero());
        assert!(!eisenstein_chi(&f, 3, 3, 5).unwrap().is_zero());
    }
}
