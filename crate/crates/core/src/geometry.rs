//! Points of C_∞ given as truncated Laurent series over F_{q^m} in x = π^{1/e},
//! π = 1/θ; the distance |z|_Im to K_∞, the action of GL_2(A) by
//! homographies, reduction to 𝔉 = {|z| = |z|_Im ≥ 1} and the function j_0.

use std::sync::Arc;

use num_rational::Ratio;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FqElem, FqField};
use crate::laurent::{LaurentSeries, Var};
use crate::poly::FqPoly;
use crate::ratfunc::RatFunc;

pub type Q = Ratio<i64>;

/// The base field F_q and the coefficient field F_{q^m} of points.
#[derive(Debug)]
pub struct PointField {
    base: Field,
    ext: Field,
    m: u32,
    /// Image in F_{q^m} of each element of F_q, by index.
    emb: Vec<FqElem>,
}

impl PointField {
    pub fn new(base: &Field, m: u32) -> Result<Arc<Self>> {
        if m < 1 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let ext = FqField::new(base.p() as u64, (base.e() * m) as u64)?;
        let emb = ext.embedding_of(base)?;
        Ok(Arc::new(PointField { base: base.clone(), ext, m, emb }))
    }
    pub fn base(&self) -> &Field {
        &self.base
    }
    pub fn ext(&self) -> &Field {
        &self.ext
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn embed(&self, c: FqElem) -> FqElem {
        self.emb[c.index()]
    }
    /// Whether c ∈ F_{q^m} lies in F_q.
    pub fn in_base(&self, c: FqElem) -> bool {
        self.ext.in_subfield(c, self.base.q())
    }
    /// a(θ) with θ = x^{−e}, exact.
    pub fn embed_poly(&self, a: &FqPoly, e: u32) -> LaurentSeries {
        let e = e as i64;
        let mut s = LaurentSeries::zero(&self.ext, Var::PiRoot(e as u32), None);
        for (i, &c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let t = LaurentSeries::monomial(&self.ext, Var::PiRoot(e as u32), self.embed(c), -e * i as i64);
                s = s.try_add(&t).expect("same variable");
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct CInfPoint {
    pf: Arc<PointField>,
    e: u32,
    series: LaurentSeries,
}

impl PartialEq for CInfPoint {
    fn eq(&self, o: &Self) -> bool {
        self.e == o.e && self.series == o.series
    }
}

impl CInfPoint {
    pub fn new(pf: &Arc<PointField>, e: u32, series: LaurentSeries) -> Result<Self> {
        if e < 1 || series.var() != Var::PiRoot(e) || **series.field() != *pf.ext {
            return Err(Error::Invalid("point series must be over F_{q^m} in π^(1/e)".into()));
        }
        Ok(CInfPoint { pf: pf.clone(), e, series })
    }
    pub fn from_poly(pf: &Arc<PointField>, a: &FqPoly, e: u32) -> Self {
        CInfPoint { pf: pf.clone(), e, series: pf.embed_poly(a, e) }
    }
    pub fn field(&self) -> &Arc<PointField> {
        &self.pf
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn series(&self) -> &LaurentSeries {
        &self.series
    }
    /// log_q |z|, `None` for a point that is zero to its truncation.
    pub fn log_abs(&self) -> Option<Q> {
        self.series.val().map(|v| Q::new(-v, self.e as i64))
    }
    fn with_series(&self, series: LaurentSeries) -> Self {
        CInfPoint { pf: self.pf.clone(), e: self.e, series }
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.series.to_json();
        v["m"] = json!(self.pf.m);
        v["e"] = json!(self.e);
        v
    }
    pub fn from_json(pf: &Arc<PointField>, v: &Value) -> Result<Self> {
        let e = v["e"].as_u64().ok_or_else(|| Error::Json("missing e".into()))? as u32;
        let m = v["m"].as_u64().ok_or_else(|| Error::Json("missing m".into()))? as u32;
        if m != pf.m {
            return Err(Error::FieldMismatch);
        }
        let mut obj = v.clone();
        if obj.get("var").is_none() {
            obj["var"] = json!(Var::PiRoot(e).name());
        }
        let s = LaurentSeries::from_json(&pf.ext, &obj)?;
        Self::new(pf, e, s)
    }
}

/// |z|_Im = |z_1| for z = z_0 + z_1 with z_0 ∈ F_q[π, π^{−1}] and the leading
/// term of z_1 outside K_∞.
#[derive(Clone, Debug, PartialEq)]
pub struct ImNorm {
    /// log_q |z|_Im.
    pub log_q: Q,
    /// The stripped part, an exact Laurent polynomial in π.
    pub z0: LaurentSeries,
    pub z1: LaurentSeries,
    /// Exponent (in π^{1/e}) of the leading term of z_1, which certifies the decision.
    pub depth: i64,
}

pub fn imaginary_norm(z: &CInfPoint) -> Result<ImNorm> {
    let pf = &z.pf;
    let e = z.e as i64;
    let mut z0 = LaurentSeries::zero(&pf.ext, Var::PiRoot(z.e), None);
    let mut z1 = z.series.clone();
    loop {
        let Some(k) = z1.val() else {
            return Err(Error::IndistinguishableFromKInfinity);
        };
        let c = z1.leading();
        if k % e == 0 && pf.in_base(c) {
            let t = LaurentSeries::monomial(&pf.ext, Var::PiRoot(z.e), c, k);
            z0 = z0.try_add(&t)?;
            z1 = z1.try_sub(&t)?;
        } else {
            return Ok(ImNorm { log_q: Q::new(-k, e), z0, z1, depth: k });
        }
    }
}

/// [[a, b], [c, d]] with entries in A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub a: FqPoly,
    pub b: FqPoly,
    pub c: FqPoly,
    pub d: FqPoly,
}

impl Matrix2 {
    pub fn new(a: FqPoly, b: FqPoly, c: FqPoly, d: FqPoly) -> Self {
        Matrix2 { a, b, c, d }
    }
    pub fn identity(f: &Field) -> Self {
        Self::new(FqPoly::one(f), FqPoly::zero(f), FqPoly::zero(f), FqPoly::one(f))
    }
    /// z ↦ z + t.
    pub fn translation(t: &FqPoly) -> Self {
        let f = t.field();
        Self::new(FqPoly::one(f), t.clone(), FqPoly::zero(f), FqPoly::one(f))
    }
    /// z ↦ 1/z.
    pub fn inversion(f: &Field) -> Self {
        Self::new(FqPoly::zero(f), FqPoly::one(f), FqPoly::one(f), FqPoly::zero(f))
    }
    pub fn det(&self) -> FqPoly {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }
    /// det ∈ F_q^×.
    pub fn in_gl2_a(&self) -> bool {
        self.det().deg() == Some(0)
    }
    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }
    pub fn to_json(&self) -> Value {
        json!([[self.a.to_text(), self.b.to_text()], [self.c.to_text(), self.d.to_text()]])
    }
}

/// γ(z) = (az + b)/(cz + d).
pub fn homography(g: &Matrix2, z: &CInfPoint) -> Result<CInfPoint> {
    if g.det().is_zero() {
        return Err(Error::Invalid("singular matrix".into()));
    }
    let pf = &z.pf;
    let e = z.e;
    let lin = |p: &FqPoly, q: &FqPoly| -> Result<LaurentSeries> {
        pf.embed_poly(p, e).try_mul(&z.series)?.try_add(&pf.embed_poly(q, e))
    };
    let num = lin(&g.a, &g.b)?;
    let den = lin(&g.c, &g.d)?;
    if den.is_zero() {
        return Err(if den.is_exact() {
            Error::PoleHit
        } else {
            Error::PrecisionExhausted("cz + d vanishes to truncation".into())
        });
    }
    Ok(z.with_series(num.try_div(&den)?))
}

/// log_q of both sides of |γ(z)|_Im = |z|_Im |det γ| / |cz + d|².
pub fn invariance_sides(g: &Matrix2, z: &CInfPoint) -> Result<(Q, Q)> {
    let gz = homography(g, z)?;
    let lhs = imaginary_norm(&gz).map_err(exhausted)?.log_q;
    let im = imaginary_norm(z).map_err(exhausted)?.log_q;
    let den = z.pf.embed_poly(&g.c, z.e).try_mul(&z.series)?.try_add(&z.pf.embed_poly(&g.d, z.e))?;
    let vden = den.val().ok_or_else(|| Error::PrecisionExhausted("cz + d vanishes to truncation".into()))?;
    let ldet = g.det().deg().ok_or_else(|| Error::Invalid("singular matrix".into()))? as i64;
    let rhs = im + Q::from(ldet) - Q::new(-2 * vden, z.e as i64);
    Ok((lhs, rhs))
}

fn exhausted(e: Error) -> Error {
    match e {
        Error::IndistinguishableFromKInfinity => Error::PrecisionExhausted("point indistinguishable from K_∞".into()),
        other => other,
    }
}

/// |z| = |z|_Im ≥ 1.
pub fn in_fundamental_domain(z: &CInfPoint) -> Result<bool> {
    let im = imaginary_norm(z)?.log_q;
    Ok(z.log_abs() == Some(im) && im >= Q::from(0))
}

#[derive(Clone, Debug, PartialEq)]
pub enum StepKind {
    Translation,
    Inversion,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub kind: StepKind,
    pub log_im_before: Q,
    pub log_im_after: Q,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub gamma: Matrix2,
    pub point: CInfPoint,
    pub steps: Vec<Step>,
}

/// Translates z by the polynomial part a ∈ A of its K_∞-component; if then
/// |z|_Im < 1 the translate has |z − a| < 1 and z ↦ 1/z raises |z|_Im by the
/// factor |z − a|^{−2}. Repeats until z ∈ 𝔉. Every step re-checks the
/// invariance law.
pub fn reduce_to_fundamental(z: &CInfPoint, max_steps: usize) -> Result<Reduction> {
    let base = z.pf.base.clone();
    let mut gamma = Matrix2::identity(&base);
    let mut cur = z.clone();
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        let im = imaginary_norm(&cur).map_err(exhausted)?;
        let a = polynomial_part(&cur, &im.z0);
        if !a.is_zero() {
            let t = Matrix2::translation(&a.neg());
            let step = audited_step(&t, &cur, StepKind::Translation)?;
            cur = step.0;
            gamma = t.mul(&gamma);
            steps.push(step.1);
        }
        if im.log_q >= Q::from(0) {
            if !in_fundamental_domain(&cur).map_err(exhausted)? {
                return Err(Error::PrecisionExhausted("translate failed the fundamental-domain test".into()));
            }
            return Ok(Reduction { gamma, point: cur, steps });
        }
        let s = Matrix2::inversion(&base);
        let (next, step) = audited_step(&s, &cur, StepKind::Inversion)?;
        if step.log_im_after <= step.log_im_before {
            return Err(Error::IdentityFailed("inversion did not increase |z|_Im".into()));
        }
        cur = next;
        gamma = s.mul(&gamma);
        steps.push(step);
    }
    Err(Error::StepLimitExceeded(max_steps))
}

fn audited_step(g: &Matrix2, z: &CInfPoint, kind: StepKind) -> Result<(CInfPoint, Step)> {
    let (lhs, rhs) = invariance_sides(g, z)?;
    if lhs != rhs {
        return Err(Error::IdentityFailed(format!("invariance law: {lhs} != {rhs}")));
    }
    let before = imaginary_norm(z).map_err(exhausted)?.log_q;
    Ok((homography(g, z)?, Step { kind, log_im_before: before, log_im_after: lhs }))
}

/// J_γ(z) = cz + d.
pub fn automorphy_factor(g: &Matrix2, z: &CInfPoint) -> Result<LaurentSeries> {
    z.pf.embed_poly(&g.c, z.e).try_mul(&z.series)?.try_add(&z.pf.embed_poly(&g.d, z.e))
}

/// Digits (in π^{1/e}, relative to the leading term) to which
/// J_{γδ}(z) = J_γ(δ(z)) J_δ(z) holds; `None` on a visible mismatch.
pub fn cocycle_digits(g: &Matrix2, d: &Matrix2, z: &CInfPoint) -> Result<Option<i64>> {
    let lhs = automorphy_factor(&g.mul(d), z)?;
    let rhs = automorphy_factor(g, &homography(d, z)?)?.try_mul(&automorphy_factor(d, z)?)?;
    let diff = lhs.try_sub(&rhs)?;
    if !diff.is_zero() {
        return Ok(None);
    }
    let lead = lhs.val().or(rhs.val()).unwrap_or(0);
    Ok(Some(diff.trunc().map_or(i64::MAX, |t| t - lead)))
}

/// The terms of z_0 at nonpositive integer powers of π, read as an element of A.
fn polynomial_part(z: &CInfPoint, z0: &LaurentSeries) -> FqPoly {
    let pf = &z.pf;
    let e = z.e as i64;
    let inv: Vec<(FqElem, FqElem)> = pf.base.elements().map(|c| (pf.embed(c), c)).collect();
    let mut coeffs = Vec::new();
    for (k, c) in z0.terms() {
        if k <= 0 {
            let i = (-k / e) as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, FqElem::ZERO);
            }
            coeffs[i] = inv.iter().find(|(img, _)| *img == c).map(|x| x.1).expect("coefficient in F_q");
        }
    }
    FqPoly::new(&pf.base, coeffs)
}

/// For γ with c ≠ 0 and |z|_Im > 1: |γ(z)|_Im <= 1/|z|_Im. Returns `None` when
/// the hypothesis does not apply.
pub fn borel_check(g: &Matrix2, z: &CInfPoint) -> Result<Option<bool>> {
    let im = imaginary_norm(z).map_err(exhausted)?.log_q;
    if g.c.is_zero() || im <= Q::from(0) {
        return Ok(None);
    }
    let after = imaginary_norm(&homography(g, z)?).map_err(exhausted)?.log_q;
    Ok(Some(after <= -im))
}

/// j_0(z) = −(1 + z^{q−1})^{q+1} / z^{q−1} in F_q(z).
pub fn j0_symbolic(field: &Field) -> RatFunc {
    let q = field.q() as usize;
    let z = FqPoly::theta(field);
    let zq1 = z.pow(q as u64 - 1);
    let num = FqPoly::one(field).add(&zq1).pow(q as u64 + 1).neg();
    RatFunc::new(num, zq1).expect("nonzero denominator")
}

/// f((az + b)/(cz + d)) for a, b, c, d ∈ F_q with ad − bc ≠ 0.
pub fn mobius_substitute(f: &RatFunc, a: FqElem, b: FqElem, c: FqElem, d: FqElem) -> Result<RatFunc> {
    let fld = f.field();
    if fld.sub(fld.mul(a, d), fld.mul(b, c)).is_zero() {
        return Err(Error::Invalid("singular substitution".into()));
    }
    let num_lin = FqPoly::new(fld, vec![b, a]);
    let den_lin = FqPoly::new(fld, vec![d, c]);
    let k = f.num().deg().unwrap_or(0).max(f.den().deg().unwrap_or(0));
    let hom = |p: &FqPoly| {
        let mut acc = FqPoly::zero(fld);
        for (i, &pi) in p.coeffs().iter().enumerate() {
            if !pi.is_zero() {
                acc = acc.add(&num_lin.pow(i as u64).mul(&den_lin.pow((k - i) as u64)).scale(pi));
            }
        }
        acc
    };
    RatFunc::new(hom(f.num()), hom(f.den()))
}

/// The generators z ↦ 1/z, z ↦ λz (λ ∈ F_q^× \ {1}) and z ↦ z + μ (μ ∈ F_q^×) of the
/// action of GL_2(F_q), as (label, [a, b, c, d]).
pub fn gl2_fq_generators(field: &Field) -> Vec<(String, [FqElem; 4])> {
    let (zero, one) = (FqElem::ZERO, FqElem::ONE);
    let mut out = vec![("z -> 1/z".to_string(), [zero, one, one, zero])];
    for l in field.elements().skip(2) {
        out.push((format!("z -> {}z", l.index()), [l, zero, zero, one]));
    }
    for mu in field.elements().skip(1) {
        out.push((format!("z -> z+{}", mu.index()), [one, mu, zero, one]));
    }
    out
}

/// For each generator, whether f ∘ γ = f in F_q(z).
pub fn invariance_under_generators(f: &RatFunc) -> Result<Vec<(String, bool)>> {
    gl2_fq_generators(f.field())
        .into_iter()
        .map(|(name, [a, b, c, d])| Ok((name, mobius_substitute(f, a, b, c, d)? == *f)))
        .collect()
}

pub fn j0_invariance(field: &Field) -> Result<Vec<(String, bool)>> {
    invariance_under_generators(&j0_symbolic(field))
}

/// (z^{q²} − z)^{q+1} / (z^q − z)^{q²+1}, of degree q³ − q, generating the
/// GL_2(F_q)-invariant subfield of F_q(z).
pub fn gl2_fq_invariant(field: &Field) -> RatFunc {
    let q = field.q() as u64;
    let z = FqPoly::theta(field);
    let a = z.pow(q * q).sub(&z);
    let b = z.pow(q).sub(&z);
    RatFunc::new(a.pow(q + 1), b.pow(q * q + 1)).expect("nonzero denominator")
}

/// j_0 at a point.
pub fn j0_point(z: &CInfPoint) -> Result<LaurentSeries> {
    let q = z.pf.base.q() as i64;
    let s = &z.series;
    if s.is_zero() {
        return Err(Error::PoleHit);
    }
    let zq1 = s.powi(q - 1)?;
    let one = LaurentSeries::one(s.field(), s.var());
    let base = one.try_add(&zq1)?;
    if base.is_zero() {
        return Err(Error::PoleHit);
    }
    Ok(base.powi(q + 1)?.try_div(&zq1)?.neg())
}

/// A random point of Ω with valuation in [−3e, 3e], `digits` known digits
/// and a term outside K_∞ among its first four.
pub fn random_point<R: Rng>(pf: &Arc<PointField>, e: u32, digits: i64, rng: &mut R) -> CInfPoint {
    let ext = &pf.ext;
    let q = ext.q() as usize;
    let ei = e as i64;
    let val = rng.gen_range(-3 * ei..=3 * ei);
    let mut coeffs: Vec<FqElem> = (0..digits).map(|_| FqElem(rng.gen_range(0..q) as u8)).collect();
    coeffs[0] = FqElem(rng.gen_range(1..q) as u8);
    let outside: Vec<FqElem> = ext.elements().filter(|&c| !pf.in_base(c)).collect();
    let candidates: Vec<usize> =
        (0..4usize.min(digits as usize)).filter(|&i| (val + i as i64) % ei != 0 || !outside.is_empty()).collect();
    if let Some(&i) = candidates.get(rng.gen_range(0..candidates.len().max(1))) {
        if (val + i as i64) % ei == 0 {
            coeffs[i] = outside[rng.gen_range(0..outside.len())];
        } else if coeffs[i].is_zero() {
            coeffs[i] = FqElem::ONE;
        }
    }
    let s = LaurentSeries::new(ext, Var::PiRoot(e), val, coeffs, Some(val + digits));
    CInfPoint { pf: pf.clone(), e, series: s }
}

/// A random element of GL_2(A): a product of `len` factors z ↦ 1/(z + a_i) with
/// deg a_i <= `max_deg`, times a random diagonal matrix.
pub fn random_matrix<R: Rng>(base: &Field, len: usize, max_deg: usize, rng: &mut R) -> Matrix2 {
    let q = base.q() as usize;
    let mut g = Matrix2::identity(base);
    for _ in 0..len {
        let deg = rng.gen_range(0..=max_deg);
        let c: Vec<FqElem> = (0..=deg).map(|_| FqElem(rng.gen_range(0..q) as u8)).collect();
        let t = Matrix2::translation(&FqPoly::new(base, c));
        g = Matrix2::inversion(base).mul(&t).mul(&g);
    }
    let l1 = FqPoly::constant(base, FqElem(rng.gen_range(1..q) as u8));
    let l2 = FqPoly::constant(base, FqElem(rng.gen_range(1..q) as u8));
    Matrix2::new(l1, FqPoly::zero(base), FqPoly::zero(base), l2).mul(&g)
}

/// Outcome counts of a randomized family of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    /// Cases skipped because the truncation could not certify the decision.
    pub exhausted: usize,
}

impl Tally {
    fn record(&mut self, r: Result<bool>) -> Result<()> {
        match r {
            Ok(true) => self.passed += 1,
            Ok(false) => self.failed += 1,
            Err(Error::PrecisionExhausted(_)) | Err(Error::IndistinguishableFromKInfinity) => self.exhausted += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }
    pub fn to_json(&self) -> Value {
        json!({"passed": self.passed, "failed": self.failed, "exhausted": self.exhausted})
    }
}

#[derive(Clone, Debug)]
pub struct GeometryReport {
    pub q: u32,
    pub seed: u64,
    pub cases: usize,
    pub invariance: Tally,
    pub reduction: Tally,
    pub cocycle: Tally,
    /// Pairs (γ, z) with c ≠ 0 and |z|_Im > 1; passed means |γ(z)|_Im ≤ 1/|z|_Im.
    pub borel: Tally,
    pub j0: Vec<(String, bool)>,
    pub gl2_invariant: Vec<(String, bool)>,
}

impl GeometryReport {
    pub fn invariance_ok(&self) -> bool {
        self.invariance.failed == 0 && self.invariance.passed >= self.cases
    }
    pub fn reduction_ok(&self) -> bool {
        self.reduction.failed == 0 && self.reduction.passed >= self.cases
    }
    pub fn cocycle_ok(&self) -> bool {
        self.cocycle.failed == 0 && self.cocycle.passed > 0
    }
    pub fn borel_ok(&self) -> bool {
        self.borel.failed == 0 && self.borel.passed > 0
    }
    pub fn j0_ok(&self) -> bool {
        self.j0.iter().all(|x| x.1)
    }
    pub fn gl2_invariant_ok(&self) -> bool {
        self.gl2_invariant.iter().all(|x| x.1)
    }
    pub fn to_json(&self) -> Value {
        let gens =
            |v: &[(String, bool)]| -> Value { v.iter().map(|(n, ok)| json!({"generator": n, "pass": ok})).collect() };
        json!({
            "q": self.q,
            "seed": self.seed,
            "cases": self.cases,
            "invariance": self.invariance.to_json(),
            "reduction": self.reduction.to_json(),
            "cocycle": self.cocycle.to_json(),
            "borel": self.borel.to_json(),
            "j0": gens(&self.j0),
            "gl2Invariant": gens(&self.gl2_invariant),
        })
    }
}

/// Runs the randomized geometry checks until `cases` certified outcomes are
/// collected for the invariance law and for reduction (at most 10·cases tries).
pub fn geometry_report(base: &Field, seed: u64, cases: usize) -> Result<GeometryReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let shapes = [(1u32, 2u32), (2, 1), (2, 2), (1, 3)];
    let fields: Vec<Arc<PointField>> = [1, 2].iter().map(|&m| PointField::new(base, m)).collect::<Result<_>>()?;
    let point = |rng: &mut rand_chacha::ChaCha8Rng| {
        let (m, e) = shapes[rng.gen_range(0..shapes.len())];
        random_point(&fields[m as usize - 1], e, 40 * e as i64, rng)
    };
    let mut rep = GeometryReport {
        q: base.q(),
        seed,
        cases,
        invariance: Tally::default(),
        reduction: Tally::default(),
        cocycle: Tally::default(),
        borel: Tally::default(),
        j0: j0_invariance(base)?,
        gl2_invariant: invariance_under_generators(&gl2_fq_invariant(base))?,
    };
    let tries = 10 * cases;
    for _ in 0..tries {
        if rep.invariance.passed + rep.invariance.failed >= cases {
            break;
        }
        let z = point(&mut rng);
        let g = random_matrix(base, rng.gen_range(1..=3), 2, &mut rng);
        rep.invariance.record(invariance_sides(&g, &z).map(|(l, r)| l == r))?;
        let d = random_matrix(base, rng.gen_range(1..=2), 2, &mut rng);
        rep.cocycle.record(cocycle_digits(&g, &d, &z).map(|x| x.is_some()))?;
        if !g.c.is_zero() {
            match borel_check(&g, &z) {
                Ok(None) => {}
                Ok(Some(ok)) => rep.borel.record(Ok(ok))?,
                Err(e) => rep.borel.record(Err(e))?,
            }
        }
    }
    for _ in 0..tries {
        if rep.reduction.passed + rep.reduction.failed >= cases {
            break;
        }
        let z = point(&mut rng);
        let g = random_matrix(base, rng.gen_range(0..=3), 2, &mut rng);
        let outcome = homography(&g, &z).and_then(|w| {
            let r = reduce_to_fundamental(&w, 64)?;
            let landed = in_fundamental_domain(&r.point)?;
            let same = homography(&r.gamma, &w)?.series().try_sub(r.point.series())?.is_zero();
            Ok(landed && r.gamma.in_gl2_a() && same)
        });
        rep.reduction.record(outcome)?;
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pf(q: u64, m: u32) -> Arc<PointField> {
        PointField::new(&FqField::new(q, 1).unwrap(), m).unwrap()
    }

    #[test]
    fn non_integral_valuation() {
        let p = pf(2, 1);
        let s = LaurentSeries::new(p.ext(), Var::PiRoot(2), 1, vec![FqElem::ONE], Some(20));
        let z = CInfPoint::new(&p, 2, s).unwrap();
        let im = imaginary_norm(&z).unwrap();
        assert_eq!(im.log_q, Q::new(-1, 2));
        assert_eq!(Some(im.log_q), z.log_abs());
    }

    #[test]
    fn one_strip_step() {
        // z = θ + ζ π^{1/2}, ζ ∈ F_4 \ F_2
        let p = pf(2, 2);
        let zeta = p.ext().elements().find(|&c| !p.in_base(c)).unwrap();
        let th = p.embed_poly(&FqPoly::theta(p.base()), 2);
        let s = th.try_add(&LaurentSeries::monomial(p.ext(), Var::PiRoot(2), zeta, 1)).unwrap().with_trunc(30);
        let z = CInfPoint::new(&p, 2, s).unwrap();
        let im = imaginary_norm(&z).unwrap();
        assert_eq!(im.log_q, Q::new(-1, 2));
        assert_eq!(im.z0, th);
    }

    #[test]
    fn residue_outside_base() {
        let p = pf(3, 2);
        let zeta = p.ext().elements().find(|&c| !p.in_base(c)).unwrap();
        let s = LaurentSeries::new(p.ext(), Var::PiRoot(1), 0, vec![zeta, FqElem::ONE], Some(10));
        let z = CInfPoint::new(&p, 1, s).unwrap();
        assert_eq!(imaginary_norm(&z).unwrap().log_q, Q::from(0));
        assert!(in_fundamental_domain(&z).unwrap());
        let k = CInfPoint::new(&p, 1, LaurentSeries::one(p.ext(), Var::PiRoot(1)).with_trunc(8)).unwrap();
        assert!(matches!(imaginary_norm(&k), Err(Error::IndistinguishableFromKInfinity)));
    }

    #[test]
    fn identity_and_inversion() {
        let p = pf(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let z = random_point(&p, 2, 30, &mut rng);
        let id = Matrix2::identity(p.base());
        assert_eq!(homography(&id, &z).unwrap(), z);
        let w = homography(&Matrix2::inversion(p.base()), &z).unwrap();
        assert_eq!(w.log_abs().unwrap(), -z.log_abs().unwrap());
    }

    #[test]
    fn inversion_step_example() {
        // z = ζ π^{3/2}: |z|_Im = q^{−3/2}, |1/z|_Im = q^{3/2}
        let p = pf(2, 2);
        let zeta = p.ext().elements().find(|&c| !p.in_base(c)).unwrap();
        let s = LaurentSeries::new(p.ext(), Var::PiRoot(2), 3, vec![zeta], Some(40));
        let z = CInfPoint::new(&p, 2, s).unwrap();
        let r = reduce_to_fundamental(&z, 64).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].log_im_after, Q::new(3, 2));
        assert!(in_fundamental_domain(&r.point).unwrap());
    }

    #[test]
    fn random_suite_q2_q3() {
        for q in [2, 3] {
            let f = FqField::new(q, 1).unwrap();
            let r = geometry_report(&f, 1, 100).unwrap();
            println!("{}", r.to_json());
            assert!(r.invariance_ok() && r.reduction_ok() && r.cocycle_ok() && r.borel_ok());
        }
    }

    #[test]
    fn j0_scalings() {
        for q in [2, 3, 5] {
            let f = FqField::new(q, 1).unwrap();
            let r = j0_invariance(&f).unwrap();
            assert!(r.iter().filter(|(n, _)| !n.contains('+') && !n.contains('/')).all(|(_, ok)| *ok));
        }
    }

    #[test]
    fn j0_not_inversion_invariant() {
        // q = 2: j_0(1/z) = (1 + z)^3 / z^2
        let f = FqField::new(2, 1).unwrap();
        let j = j0_symbolic(&f);
        let inv = mobius_substitute(&j, FqElem::ZERO, FqElem::ONE, FqElem::ONE, FqElem::ZERO).unwrap();
        let expect = RatFunc::new(FqPoly::from_ints(&f, &[1, 1]).pow(3), FqPoly::monomial(&f, FqElem::ONE, 2)).unwrap();
        assert_eq!(inv, expect);
    }

    #[test]
    fn gl2_invariant_generators() {
        for q in [2, 3, 4, 5] {
            let f = if q == 4 { FqField::new(2, 2).unwrap() } else { FqField::new(q, 1).unwrap() };
            let j = gl2_fq_invariant(&f);
            let d = j.num().deg().unwrap().max(j.den().deg().unwrap());
            assert_eq!(d as u64, q * q * q - q);
            assert!(invariance_under_generators(&j).unwrap().iter().all(|(_, ok)| *ok));
        }
    }
}
