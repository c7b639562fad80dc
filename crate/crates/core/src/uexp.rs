//! u-expansions of Drinfeld modular forms for GL_2(A): the series u_a,
//! Goss polynomials, Eisenstein series, h, Δ, g and the coefficient forms
//! α_i of the exponential of the lattice Az + A.

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::carlitz::{carlitz_action, pi_pow_q_minus_1, zeta_carlitz, BracketCache};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::{LaurentSeries, Var};
use crate::poly::FqPoly;
use crate::power::{OuterVar, PowerSeries};
use crate::ratfunc::RatFunc;
use crate::ring::CoeffRing;

/// A u-expansion Σ_{m<U} c_m u^m + O(u^U) tagged with weight and type.
#[derive(Clone, Debug, PartialEq)]
pub struct UExp<C> {
    pub series: PowerSeries<C>,
    pub weight: Option<i64>,
    /// Type modulo q−1.
    pub type_tag: Option<i64>,
}

impl<C: CoeffRing> UExp<C> {
    pub fn new(series: PowerSeries<C>, weight: Option<i64>, type_tag: Option<i64>) -> Self {
        UExp { series, weight, type_tag }
    }
    pub fn coeff(&self, m: usize) -> &C {
        self.series.coeff(m)
    }
    pub fn trunc(&self) -> usize {
        self.series.trunc()
    }
    pub fn is_cusp(&self) -> bool {
        self.coeff(0).is_zero()
    }
    /// First u-degree with a nonzero coefficient outside the class of the type tag.
    pub fn type_gap_violation(&self, q: u32) -> Option<usize> {
        let t = self.type_tag?;
        let e = q as i64 - 1;
        (0..self.trunc()).find(|&m| (m as i64 - t).rem_euclid(e) != 0 && !self.coeff(m).is_zero())
    }
    pub fn to_json(&self, ser: impl Fn(&C) -> Value) -> Value {
        json!({
            "var": "u",
            "trunc": self.trunc(),
            "weight": self.weight,
            "type": self.type_tag,
            "domain": self.series.zero_elem().domain_tag(),
            "coeffs": self.series.coeffs().iter().map(ser).collect::<Vec<_>>(),
        })
    }
}

/// Monic a with |a| = q^{deg a} < U.
pub fn monic_below(field: &Field, u: usize) -> Vec<FqPoly> {
    let q = field.q() as usize;
    let mut out = Vec::new();
    let mut d = 0;
    while q.pow(d as u32) < u {
        out.extend(FqPoly::monic_enumerate(field, d));
        d += 1;
    }
    out
}

/// u^{|a|} C_a(1/u) = Σ_i [a]_i u^{q^d − q^i}, a polynomial in u over A.
pub fn ca_reversed(a: &FqPoly, u: usize) -> PowerSeries<FqPoly> {
    let f = a.field();
    let q = f.q() as usize;
    let d = a.deg().unwrap_or(0);
    let ca = carlitz_action(a);
    let mut v = vec![FqPoly::zero(f); u];
    for (i, c) in ca.coeffs().iter().enumerate() {
        let k = q.pow(d as u32) - q.pow(i as u32);
        if k < u {
            v[k] = c.clone();
        }
    }
    PowerSeries::new(OuterVar::U, v, u, FqPoly::zero(f))
}

/// u_a = u(az) = u^{|a|} (Σ_i [a]_i u^{|a| − q^i})^{-1} to O(u^U), for monic a.
pub fn u_sub_a(a: &FqPoly, u: usize) -> Result<PowerSeries<FqPoly>> {
    if !a.is_monic() {
        return Err(Error::NonMonicInput);
    }
    let f = a.field();
    let zero = FqPoly::zero(f);
    let qd = (f.q() as usize).pow(a.deg().unwrap() as u32);
    if qd >= u {
        return Ok(PowerSeries::zero(OuterVar::U, u, zero));
    }
    let inv = ca_reversed(a, u - qd).inv()?;
    Ok(inv.shift(qd))
}

/// G_1, ..., G_nmax as dense coefficient vectors in u over K, from
/// G_n = u Σ_{q^k < n} G_{n−q^k}/d_k with G_0 = 0 and G_1 = u.
#[derive(Clone, Debug)]
pub struct GossTable {
    polys: Vec<Vec<RatFunc>>,
}

impl GossTable {
    pub fn new(cache: &mut BracketCache, nmax: usize) -> Self {
        let f = cache.field().clone();
        let q = f.q() as usize;
        let mut kmax = 0;
        while q.pow(kmax as u32 + 1) < nmax {
            kmax += 1;
        }
        cache.extend_to(kmax);
        let inv_d: Vec<RatFunc> = (0..=kmax).map(|k| RatFunc::recip(cache.d(k)).unwrap()).collect();
        let zero = RatFunc::zero(&f);
        let mut polys: Vec<Vec<RatFunc>> = vec![Vec::new()];
        if nmax >= 1 {
            polys.push(vec![zero.clone(), RatFunc::one(&f)]);
        }
        for n in 2..=nmax {
            let mut g = vec![zero.clone(); n + 1];
            let mut k = 0;
            while q.pow(k as u32) < n {
                let prev = &polys[n - q.pow(k as u32)];
                for (j, c) in prev.iter().enumerate() {
                    if !c.is_zero() {
                        g[j + 1] = g[j + 1].add(&c.mul(&inv_d[k]));
                    }
                }
                k += 1;
            }
            polys.push(g);
        }
        GossTable { polys }
    }
    pub fn nmax(&self) -> usize {
        self.polys.len() - 1
    }
    /// Coefficients of G_n, index = power of u.
    pub fn get(&self, n: usize) -> &[RatFunc] {
        &self.polys[n]
    }
}

/// G_n as a dense vector over K.
pub fn goss_poly(field: &Field, n: usize) -> Vec<RatFunc> {
    let mut cache = BracketCache::new(field);
    GossTable::new(&mut cache, n).get(n).to_vec()
}

fn scale_poly(s: &PowerSeries<FqPoly>, c: &FqPoly) -> PowerSeries<FqPoly> {
    s.map(|x| x.mul(c), FqPoly::zero(c.field()))
}

fn to_laurent(s: &PowerSeries<FqPoly>) -> PowerSeries<LaurentSeries> {
    let f = s.zero_elem().field().clone();
    s.map(LaurentSeries::from_poly, LaurentSeries::zero(&f, Var::InvTheta, None))
}

fn div_by_poly(s: &PowerSeries<LaurentSeries>, p: &FqPoly) -> Result<PowerSeries<LaurentSeries>> {
    let d = LaurentSeries::from_poly(p);
    let v: Vec<LaurentSeries> = s
        .coeffs()
        .iter()
        .map(|c| if c.is_exact_zero() { Ok(c.clone()) } else { c.try_div(&d) })
        .collect::<Result<_>>()?;
    Ok(PowerSeries::new(s.var(), v, s.trunc(), s.zero_elem().clone()))
}

/// Number of matching 1/θ-digits of a computed coefficient against an
/// expected one, counted from the expected leading exponent (from 0 when the
/// expected value is zero); `None` when a known digit differs.
fn coefficient_digits(got: &LaurentSeries, expected: &LaurentSeries) -> Option<i64> {
    let from = expected.val().unwrap_or(0);
    let d = got.try_sub(expected).ok()?;
    match d.val() {
        Some(_) => None,
        None => Some(d.trunc().map_or(i64::MAX, |t| t - from)),
    }
}

/// Per-coefficient comparison of two u-expansions with Laurent coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesComparison {
    /// Smallest number of matching digits over all compared coefficients.
    pub min_digits: i64,
    /// First u-degree at which a known digit differs.
    pub mismatch: Option<usize>,
}

pub fn compare_series(got: &PowerSeries<LaurentSeries>, expected: &PowerSeries<LaurentSeries>) -> SeriesComparison {
    let t = got.trunc().min(expected.trunc());
    let mut min_digits = i64::MAX;
    let mut mismatch = None;
    for m in 0..t {
        match coefficient_digits(got.coeff(m), expected.coeff(m)) {
            Some(d) => min_digits = min_digits.min(d),
            None => {
                mismatch.get_or_insert(m);
            }
        }
    }
    SeriesComparison { min_digits, mismatch }
}

/// Row of the Z/𝔼 cross-check for one k.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeRow {
    pub k: usize,
    /// Whether (q−1) | k.
    pub admissible: bool,
    pub comparison: SeriesComparison,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeReport {
    pub u_order: usize,
    pub rows: Vec<ZeRow>,
}

/// The bound |c_{i,m}| <= q^{−iq^i} |π̃|^{q^i−1} C^m over a computed range.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// Smallest log_q C for which the bound holds on every computed coefficient.
    pub log_q_c: Ratio<i64>,
    /// Whether c_{i,0} attains the bound with equality for every i.
    pub constant_terms_exact: bool,
    /// (i, m) whose coefficient is zero to its precision and was skipped.
    pub skipped: Vec<(usize, usize)>,
    /// Whether the bound holds with the reported C at every checked (i, m).
    pub holds: bool,
}

/// Eisenstein series together with its normalization by −ζ_A(w).
#[derive(Clone, Debug)]
pub struct NormalizedEisenstein {
    pub raw: UExp<LaurentSeries>,
    pub normalized: UExp<LaurentSeries>,
    /// Whether every coefficient of the normalized series is visibly in A.
    pub integral: bool,
}

/// Shared state for the bootstrap brackets → π̃^{q−1} → ζ_A → u_a/G_n →
/// E_{q−1} → g → h → Δ → α_i.
#[derive(Clone, Debug)]
pub struct UExpEngine {
    field: Field,
    u: usize,
    p: i64,
    cache: BracketCache,
    ua: Vec<(FqPoly, PowerSeries<FqPoly>)>,
    /// power_sums[j] = Σ_a u_a^j.
    power_sums: Vec<PowerSeries<FqPoly>>,
    pi_q1: LaurentSeries,
}

impl UExpEngine {
    /// Defaults: U = max(q²+q+2, 30), P = 40.
    pub fn default_order(q: u32) -> usize {
        ((q * q + q + 2) as usize).max(30)
    }
    pub const DEFAULT_PRECISION: i64 = 40;

    pub fn new(field: &Field, u: usize, p: i64) -> Result<Self> {
        if u < 2 {
            return Err(Error::Invalid(format!("u-order {u} must be at least 2")));
        }
        let pi_q1 = pi_pow_q_minus_1(field, p)?;
        let ua = monic_below(field, u).into_iter().map(|a| u_sub_a(&a, u).map(|s| (a, s))).collect::<Result<_>>()?;
        let zero = PowerSeries::zero(OuterVar::U, u, FqPoly::zero(field));
        Ok(UExpEngine {
            field: field.clone(),
            u,
            p,
            cache: BracketCache::new(field),
            ua,
            power_sums: vec![zero],
            pi_q1,
        })
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn order(&self) -> usize {
        self.u
    }
    pub fn precision(&self) -> i64 {
        self.p
    }
    pub fn pi_pow_q_minus_1(&self) -> &LaurentSeries {
        &self.pi_q1
    }
    pub fn ua(&self) -> &[(FqPoly, PowerSeries<FqPoly>)] {
        &self.ua
    }
    fn q(&self) -> usize {
        self.field.q() as usize
    }
    fn laurent_zero(&self) -> LaurentSeries {
        LaurentSeries::zero(&self.field, Var::InvTheta, None)
    }

    fn ensure_power_sums(&mut self, jmax: usize) -> Result<()> {
        let q = self.q();
        let u = self.u;
        let start = self.power_sums.len();
        if start > jmax {
            return Ok(());
        }
        let zero = PowerSeries::zero(OuterVar::U, u, FqPoly::zero(&self.field));
        let mut sums = vec![zero; jmax + 1 - start];
        for (a, ua) in &self.ua {
            let qd = q.pow(a.deg().unwrap() as u32);
            let mut pw = ua.pow(start as u64)?;
            for (off, slot) in sums.iter_mut().enumerate() {
                if (start + off) * qd >= u {
                    break;
                }
                if off > 0 {
                    pw = pw.try_mul(ua)?;
                }
                *slot = slot.try_add(&pw)?;
            }
        }
        self.power_sums.extend(sums);
        Ok(())
    }

    /// π̃^w for (q−1) | w.
    fn pi_pow(&self, w: i64) -> Result<LaurentSeries> {
        let e = self.q() as i64 - 1;
        self.pi_q1.powi(w / e)
    }

    /// E_w = −ζ_A(w) − π̃^w Σ_{a monic} G_w(u_a), zero unless (q−1) | w.
    pub fn eisenstein(&mut self, w: i64) -> Result<UExp<LaurentSeries>> {
        if w < 1 {
            return Err(Error::NonpositiveWeight);
        }
        let e = self.q() as i64 - 1;
        let zero = self.laurent_zero();
        if w % e != 0 {
            return Ok(UExp::new(PowerSeries::zero(OuterVar::U, self.u, zero), Some(w), Some(0)));
        }
        let wu = w as usize;
        let goss = GossTable::new(&mut self.cache, wu);
        self.ensure_power_sums(wu)?;
        let g = goss.get(wu);
        let pi_w = self.pi_pow(w)?;
        let mut coeffs = vec![zeta_carlitz(&self.field, w, self.p)?.neg()];
        for m in 1..self.u {
            let mut k = RatFunc::zero(&self.field);
            for (j, gj) in g.iter().enumerate().skip(1) {
                let s = self.power_sums[j].coeff(m);
                if !gj.is_zero() && !s.is_zero() {
                    k = k.add(&gj.mul_poly(s));
                }
            }
            let c = LaurentSeries::from_ratfunc_rel(&k, self.p);
            coeffs.push(if c.is_exact_zero() { c } else { c.try_mul(&pi_w)?.neg() });
        }
        Ok(UExp::new(PowerSeries::new(OuterVar::U, coeffs, self.u, zero), Some(w), Some(0)))
    }

    /// E_w together with E_w/(−ζ_A(w)) and an integrality flag for the latter.
    pub fn eisenstein_normalized(&mut self, w: i64) -> Result<NormalizedEisenstein> {
        let raw = self.eisenstein(w)?;
        let c0 = raw.coeff(0).clone();
        if c0.is_zero() {
            return Ok(NormalizedEisenstein { normalized: raw.clone(), raw, integral: true });
        }
        let inv = c0.inv()?;
        let normalized = UExp::new(raw.series.scale(&inv), raw.weight, raw.type_tag);
        let integral = normalized.series.coeffs().iter().all(|c| c.as_polynomial().is_some());
        Ok(NormalizedEisenstein { raw, normalized, integral })
    }

    /// h = −Σ_{a monic} a^q u_a.
    pub fn h_lopez(&self) -> UExp<FqPoly> {
        let q = self.q() as u64;
        let mut acc = PowerSeries::zero(OuterVar::U, self.u, FqPoly::zero(&self.field));
        for (a, ua) in &self.ua {
            acc = acc.try_sub(&scale_poly(ua, &a.pow(q))).expect("same variable");
        }
        UExp::new(acc, Some(q as i64 + 1), Some(1))
    }

    /// h = −u ∏_{a monic} (u^{|a|} C_a(1/u))^{q²−1}; a factor lies in
    /// 1 + u^{c(a)}A[u] with c(a) >= (q−1)q^{deg a − 1}, and factors with c(a) >= U
    /// are skipped.
    pub fn h_gekeler(&self) -> Result<UExp<FqPoly>> {
        let f = &self.field;
        let q = self.q();
        let u = self.u;
        let one = PowerSeries::one(OuterVar::U, u, &FqPoly::zero(f));
        let mut acc = one.clone();
        let mut d = 0usize;
        loop {
            let bound = if d == 0 { usize::MAX } else { (q - 1) * q.pow(d as u32 - 1) };
            if d > 0 && bound >= u {
                break;
            }
            for a in FqPoly::monic_enumerate(f, d) {
                let fa = ca_reversed(&a, u);
                let factor = fa.frobenius_pow_capped(2, q as u32, Some(u)).try_mul(&fa.inv()?)?;
                let c = factor.try_sub(&one)?.val().unwrap_or(u);
                if c < u {
                    acc = acc.try_mul(&factor)?;
                }
            }
            d += 1;
        }
        let h = acc.shift(1).with_trunc(u).neg();
        Ok(UExp::new(h, Some(q as i64 + 1), Some(1)))
    }

    /// Δ = −h^{q−1}.
    pub fn delta(&self) -> Result<UExp<FqPoly>> {
        let h = self.h_lopez();
        let d = h.series.pow(self.q() as u64 - 1)?.neg();
        Ok(UExp::new(d, Some((self.q() * self.q()) as i64 - 1), Some(0)))
    }

    /// g = (θ^q − θ) π̃^{1−q} E_{q−1}.
    pub fn g(&mut self) -> Result<UExp<LaurentSeries>> {
        let e = self.eisenstein(self.q() as i64 - 1)?;
        self.cache.extend_to(1);
        let c = LaurentSeries::from_poly(self.cache.d(1)).try_div(&self.pi_q1)?;
        Ok(UExp::new(e.series.scale(&c), Some(self.q() as i64 - 1), Some(0)))
    }

    /// α_0, ..., α_imax from α_i = (g̃ α_{i−1}^q + Δ̃ α_{i−2}^{q²})/(θ^{q^i} − θ),
    /// g̃ = π̃^{q−1} g and Δ̃ = π̃^{q²−1} Δ.
    pub fn alpha(&mut self, imax: usize) -> Result<Vec<UExp<LaurentSeries>>> {
        let q = self.q();
        let u = self.u;
        let gt = self.g()?.series.scale(&self.pi_q1);
        let dt = to_laurent(&self.delta()?.series).scale(&self.pi_pow((q * q) as i64 - 1)?);
        let zero = self.laurent_zero();
        let one = PowerSeries::one(OuterVar::U, u, &zero);
        let mut alphas: Vec<PowerSeries<LaurentSeries>> = vec![one];
        let th = FqPoly::theta(&self.field);
        for i in 1..=imax {
            let mut num = gt.try_mul(&alphas[i - 1].frobenius_pow_capped(1, q as u32, Some(u)))?;
            if i >= 2 {
                num = num.try_add(&dt.try_mul(&alphas[i - 2].frobenius_pow_capped(2, q as u32, Some(u)))?)?;
            }
            let br = th.frobenius_pow(i as u32).sub(&th);
            alphas.push(div_by_poly(&num, &br)?);
        }
        Ok(alphas
            .into_iter()
            .enumerate()
            .map(|(i, s)| UExp::new(s, Some(q.pow(i as u32) as i64 - 1), Some(0)))
            .collect())
    }

    /// E_1, ..., E_kmax read off from Z/𝔼(z, Z) = 1 − Σ_k E_k Z^k with
    /// 𝔼 = Σ_i α_i Z^{q^i}; index 0 of the result is unused.
    pub fn eisenstein_from_alpha(
        &self,
        alphas: &[UExp<LaurentSeries>],
        kmax: usize,
    ) -> Result<Vec<PowerSeries<LaurentSeries>>> {
        let q = self.q();
        let uzero = PowerSeries::zero(OuterVar::U, self.u, self.laurent_zero());
        let mut w = vec![uzero.clone(); kmax + 1];
        for (i, a) in alphas.iter().enumerate() {
            let k = q.pow(i as u32) - 1;
            if k <= kmax {
                w[k] = a.series.clone();
            }
        }
        let wz = PowerSeries::new(OuterVar::Z, w, kmax + 1, uzero);
        let inv = wz.inv()?;
        Ok((0..=kmax).map(|k| inv.coeff(k).neg()).collect())
    }

    /// α_0, ..., α_imax read off from 𝔼 = Z (1 − Σ_k E_k Z^k)^{-1}, with
    /// E_k taken from `eisenstein`.
    pub fn alpha_from_eisenstein(&mut self, imax: usize) -> Result<Vec<UExp<LaurentSeries>>> {
        let q = self.q();
        let kmax = q.pow(imax as u32) - 1;
        let zero = self.laurent_zero();
        let uzero = PowerSeries::zero(OuterVar::U, self.u, zero.clone());
        let mut w = vec![PowerSeries::one(OuterVar::U, self.u, &zero)];
        for k in 1..=kmax {
            w.push(self.eisenstein(k as i64)?.series.neg());
        }
        let inv = PowerSeries::new(OuterVar::Z, w, kmax + 1, uzero).inv()?;
        Ok((0..=imax)
            .map(|i| UExp::new(inv.coeff(q.pow(i as u32) - 1).clone(), Some(q.pow(i as u32) as i64 - 1), Some(0)))
            .collect())
    }

    /// Δ = π̃^{1−q²}((θ^{q²} − θ) α_2 − g̃ α_1^q) with α_1, α_2 from the
    /// Eisenstein series, compared against −h^{q−1}.
    pub fn delta_alpha_route(&mut self) -> Result<(UExp<LaurentSeries>, SeriesComparison)> {
        let q = self.q();
        let u = self.u;
        let al = self.alpha_from_eisenstein(2)?;
        self.cache.extend_to(1);
        let gt = al[1].series.scale(&LaurentSeries::from_poly(self.cache.d(1)));
        let th = FqPoly::theta(&self.field);
        let b2 = LaurentSeries::from_poly(&th.frobenius_pow(2).sub(&th));
        let dt = al[2].series.scale(&b2).try_sub(&gt.try_mul(&al[1].series.frobenius_pow_capped(
            1,
            q as u32,
            Some(u),
        ))?)?;
        let inv_pi = self.pi_pow((q * q) as i64 - 1)?.inv()?;
        let delta = UExp::new(dt.scale(&inv_pi), Some((q * q) as i64 - 1), Some(0));
        let expected = to_laurent(&self.delta()?.series);
        let cmp = compare_series(&delta.series, &expected);
        Ok((delta, cmp))
    }

    /// Inverts Z/𝔼 with α_1, α_2 from the recursion and compares each E_k,
    /// k <= q² − 1, with `eisenstein(k)`.
    pub fn ze_cross_check(&mut self) -> Result<ZeReport> {
        let q = self.q();
        let kmax = q * q - 1;
        let alphas = self.alpha(2)?;
        let from_alpha = self.eisenstein_from_alpha(&alphas, kmax)?;
        let mut rows = Vec::new();
        for k in 1..=kmax {
            let direct = self.eisenstein(k as i64)?;
            let comparison = compare_series(&from_alpha[k], &direct.series);
            if let Some(m) = comparison.mismatch {
                return Err(Error::CrossCheckFailed { k, u_degree: m });
            }
            rows.push(ZeRow { k, admissible: k % (q - 1) == 0, comparison });
        }
        Ok(ZeReport { u_order: self.u, rows })
    }
}

/// Smallest log_q C such that v(c_{i,m}) >= i q^i − q(q^i − 1)/(q − 1) − m log_q C
/// for the given α_i (index = i) and m <= mmax.
pub fn growth_constant(q: u32, alphas: &[UExp<LaurentSeries>], mmax: usize) -> GrowthReport {
    let q = q as i64;
    let mut best: Option<Ratio<i64>> = None;
    let mut exact = true;
    let mut skipped = Vec::new();
    let mut pts = Vec::new();
    for (i, a) in alphas.iter().enumerate() {
        let qi = q.pow(i as u32);
        let base = i as i64 * qi - q * (qi - 1) / (q - 1);
        for m in 0..=mmax.min(a.trunc() - 1) {
            let Some(v) = a.coeff(m).val() else {
                if !a.coeff(m).is_exact_zero() {
                    skipped.push((i, m));
                }
                continue;
            };
            if m == 0 {
                exact &= v == base;
                continue;
            }
            let r = Ratio::new(base - v, m as i64);
            pts.push((base, v, m as i64));
            best = Some(best.map_or(r, |b: Ratio<i64>| b.max(r)));
        }
    }
    let c = best.unwrap_or_else(|| Ratio::from(0));
    let holds = pts.iter().all(|&(base, v, m)| Ratio::from(v) >= Ratio::from(base) - c * m);
    GrowthReport { log_q_c: c, constant_terms_exact: exact, skipped, holds }
}

pub fn eisenstein_uexp(field: &Field, w: i64, u: usize, p: i64) -> Result<UExp<LaurentSeries>> {
    UExpEngine::new(field, u, p)?.eisenstein(w)
}
pub fn h_lopez(field: &Field, u: usize) -> Result<UExp<FqPoly>> {
    Ok(UExpEngine::new(field, u, 1)?.h_lopez())
}
pub fn h_gekeler(field: &Field, u: usize) -> Result<UExp<FqPoly>> {
    UExpEngine::new(field, u, 1)?.h_gekeler()
}
pub fn delta_uexp(field: &Field, u: usize) -> Result<UExp<FqPoly>> {
    UExpEngine::new(field, u, 1)?.delta()
}
pub fn g_uexp(field: &Field, u: usize, p: i64) -> Result<UExp<LaurentSeries>> {
    UExpEngine::new(field, u, p)?.g()
}
pub fn alpha_uexp(field: &Field, imax: usize, u: usize, p: i64) -> Result<Vec<UExp<LaurentSeries>>> {
    UExpEngine::new(field, u, p)?.alpha(imax)
}
pub fn ze_cross_check(field: &Field, u: usize, p: i64) -> Result<ZeReport> {
    UExpEngine::new(field, u, p)?.ze_cross_check()
}
