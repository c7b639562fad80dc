//! The Carlitz module C_θ = θ + τ and its attached objects.

mod omega;
mod zeta;

pub use omega::{
    lambda_mu_sequence, omega_functional_defect, omega_product, omega_series, pi_pow_q_minus_1, pi_ramified,
    residue_sum, LambdaMu, RamifiedContext,
};
pub(crate) use zeta::inv_power;
pub use zeta::{euler_product, mzv, power_sum, power_sum_bound, zeta_carlitz};

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::laurent::LaurentSeries;
use crate::ore::{ore_product_truncated, TwistedSeries};
use crate::poly::FqPoly;
use crate::ratfunc::RatFunc;

/// d_i and l_i for 0 <= i <= imax.
#[derive(Clone, Debug)]
pub struct BracketCache {
    field: Field,
    d: Vec<FqPoly>,
    l: Vec<FqPoly>,
}

impl BracketCache {
    pub fn new(field: &Field) -> Self {
        let one = FqPoly::one(field);
        BracketCache { field: field.clone(), d: vec![one.clone()], l: vec![one] }
    }

    /// θ^{q^i} − θ
    fn bracket(&self, i: usize) -> FqPoly {
        let q = self.field.q() as usize;
        let th = FqPoly::theta(&self.field);
        FqPoly::monomial(&self.field, FqElem::ONE, q.pow(i as u32)).sub(&th)
    }

    pub fn extend_to(&mut self, imax: usize) {
        while self.d.len() <= imax {
            let i = self.d.len();
            let b = self.bracket(i);
            let d = b.mul(&self.d[i - 1].frobenius());
            let l = b.neg().mul(&self.l[i - 1]);
            self.d.push(d);
            self.l.push(l);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn imax(&self) -> usize {
        self.d.len() - 1
    }
    pub fn d(&self, i: usize) -> &FqPoly {
        &self.d[i]
    }
    pub fn l(&self, i: usize) -> &FqPoly {
        &self.l[i]
    }
    pub fn ds(&self) -> &[FqPoly] {
        &self.d
    }
    pub fn ls(&self) -> &[FqPoly] {
        &self.l
    }
}

pub fn brackets(field: &Field, imax: usize) -> BracketCache {
    let mut c = BracketCache::new(field);
    c.extend_to(imax);
    c
}

/// deg d_i = i q^i.
pub fn deg_d(q: u64, i: u32) -> u64 {
    i as u64 * q.pow(i)
}
/// deg l_i = q (q^i − 1)/(q − 1).
pub fn deg_l(q: u64, i: u32) -> u64 {
    q * (q.pow(i) - 1) / (q - 1)
}

/// C_a as an exact twisted polynomial of τ-degree deg a.
pub fn carlitz_action(a: &FqPoly) -> TwistedSeries<FqPoly> {
    let f = a.field();
    let zero = FqPoly::zero(f);
    let c_theta = TwistedSeries::exact(vec![FqPoly::theta(f), FqPoly::one(f)], zero.clone());
    let mut power = TwistedSeries::one(&zero);
    let mut acc = TwistedSeries::exact(Vec::new(), zero.clone());
    for (k, &ak) in a.coeffs().iter().enumerate() {
        if k > 0 {
            power = c_theta.mul(&power).expect("same domain");
        }
        if !ak.is_zero() {
            let scaled = TwistedSeries::exact(power.coeffs().iter().map(|c| c.scale(ak)).collect(), zero.clone());
            acc = acc.add(&scaled).expect("same domain");
        }
    }
    acc
}

/// Σ_{i<N} d_i^{-1} τ^i + O(τ^N)
pub fn exp_c(cache: &mut BracketCache, n: usize) -> TwistedSeries<RatFunc> {
    cache.extend_to(n.saturating_sub(1));
    let v = (0..n).map(|i| RatFunc::recip(cache.d(i)).unwrap()).collect();
    TwistedSeries::new(v, Some(n), RatFunc::zero(cache.field()))
}

/// Σ_{i<N} l_i^{-1} τ^i + O(τ^N)
pub fn log_c(cache: &mut BracketCache, n: usize) -> TwistedSeries<RatFunc> {
    cache.extend_to(n.saturating_sub(1));
    let v = (0..n).map(|i| RatFunc::recip(cache.l(i)).unwrap()).collect();
    TwistedSeries::new(v, Some(n), RatFunc::zero(cache.field()))
}

/// exp_A = Σ_{i<N} d_i^{-1} π̃^{q^i−1} τ^i, each π̃-power an integer power of
/// π̃^{q−1} carried with `p` digits after its leading term.
pub fn exp_a(cache: &mut BracketCache, n: usize, p: i64) -> Result<TwistedSeries<LaurentSeries>> {
    cache.extend_to(n.saturating_sub(1));
    let f = cache.field().clone();
    let q = f.q() as i64;
    let pi = pi_pow_q_minus_1(&f, p)?;
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let k = (q.pow(i as u32) - 1) / (q - 1);
        let d = LaurentSeries::from_poly(cache.d(i));
        v.push(pi.powi(k)?.try_div(&d)?);
    }
    let zero = LaurentSeries::zero(&f, crate::laurent::Var::InvTheta, None);
    Ok(TwistedSeries::new(v, Some(n), zero))
}

/// The factor 1 − l_k^{1−q} τ, with the coefficient carried to `p` digits.
pub fn exp_a_factor(cache: &mut BracketCache, k: usize, p: i64) -> Result<TwistedSeries<LaurentSeries>> {
    cache.extend_to(k);
    let f = cache.field().clone();
    let q = f.q() as i64;
    let zero = LaurentSeries::zero(&f, crate::laurent::Var::InvTheta, None);
    let c = LaurentSeries::from_poly(cache.l(k)).with_rel_prec(p).inv()?.powi(q - 1)?;
    Ok(TwistedSeries::exact(vec![LaurentSeries::one(&f, crate::laurent::Var::InvTheta), c.neg()], zero))
}

/// (1 − l_{N−1}^{1−q}τ) ⋯ (1 − l_1^{1−q}τ)(1 − τ) mod τ^N.
pub fn exp_a_product(cache: &mut BracketCache, n: usize, p: i64) -> Result<TwistedSeries<LaurentSeries>> {
    let factors: Vec<_> = (0..n).map(|k| exp_a_factor(cache, k, p)).collect::<Result<_>>()?;
    let zero = LaurentSeries::zero(cache.field(), crate::laurent::Var::InvTheta, None);
    ore_product_truncated(factors, n, &zero)
}

/// Convergence of the τ^i-coefficient of C_{θ^m} θ^{−m} to 1/d_i.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitRow {
    pub index: usize,
    /// First m from which the coefficient equals 1/d_i exactly, if any.
    pub exact_from: Option<usize>,
    /// (m, number of leading 1/θ-digits shared with 1/d_i); `None` means equal.
    pub digits: Vec<(usize, Option<i64>)>,
}

/// For i < n and m <= nsteps, compares the τ^i-coefficient of C_{θ^m}θ^{−m},
/// which is [θ^m]_i / θ^{m q^i}, with 1/d_i. Agreement must grow strictly
/// with m once m >= i, otherwise the arithmetic is inconsistent.
pub fn exp_c_limit_check(field: &Field, n: usize, nsteps: usize) -> Result<Vec<LimitRow>> {
    if nsteps < n {
        return Err(Error::Invalid(format!("nsteps {nsteps} must be at least N = {n}")));
    }
    let cache = brackets(field, n.saturating_sub(1));
    let q = field.q() as usize;
    let zero = FqPoly::zero(field);
    let c_theta = TwistedSeries::exact(vec![FqPoly::theta(field), FqPoly::one(field)], zero.clone());
    let mut power = TwistedSeries::one(&zero);
    let mut rows: Vec<LimitRow> = (0..n).map(|i| LimitRow { index: i, exact_from: None, digits: Vec::new() }).collect();
    for m in 0..=nsteps {
        if m > 0 {
            power = c_theta.mul(&power)?;
        }
        for (i, row) in rows.iter_mut().enumerate() {
            let target = RatFunc::recip(cache.d(i)).unwrap();
            let den = FqPoly::monomial(field, FqElem::ONE, m * q.pow(i as u32));
            let coef = RatFunc::new(power.coeff(i).clone(), den)?;
            let diff = coef.sub(&target);
            let digits = diff.degree().map(|deg| -deg - cache.d(i).deg().unwrap() as i64);
            if digits.is_none() {
                row.exact_from.get_or_insert(m);
            } else {
                row.exact_from = None;
            }
            row.digits.push((m, digits));
        }
    }
    for row in &rows {
        let tail: Vec<Option<i64>> = row.digits.iter().filter(|(m, _)| *m >= row.index).map(|x| x.1).collect();
        for w in tail.windows(2) {
            let ok = match (w[0], w[1]) {
                (Some(a), Some(b)) => b > a,
                (None, None) => true,
                (Some(_), None) => true,
                (None, Some(_)) => false,
            };
            if !ok {
                return Err(Error::StabilizationFailure {
                    index: row.index,
                    detail: format!("agreement sequence {:?}", row.digits),
                });
            }
        }
    }
    Ok(rows)
}

/// An F_q-linear polynomial Σ_i c_i z^{q^i}.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearizedPoly {
    pub coeffs: Vec<RatFunc>,
}

impl LinearizedPoly {
    /// Dense coefficients in z (index = exponent).
    pub fn to_dense(&self) -> Vec<RatFunc> {
        let f = self.coeffs[0].field();
        let q = f.q() as usize;
        let deg = q.pow(self.coeffs.len() as u32 - 1);
        let mut v = vec![RatFunc::zero(f); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[q.pow(i as u32)] = c.clone();
        }
        v
    }
    pub fn eval(&self, z: &RatFunc) -> RatFunc {
        let mut zp = z.clone();
        let mut acc = RatFunc::zero(z.field());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                zp = zp.frobenius();
            }
            acc = acc.add(&c.mul(&zp));
        }
        acc
    }
}

/// E_k(z) = Σ_{i<=k} d_i^{-1} l_{k−i}^{−q^i} z^{q^i}.
pub fn carlitz_poly(cache: &mut BracketCache, k: usize) -> LinearizedPoly {
    cache.extend_to(k);
    let coeffs = (0..=k)
        .map(|i| {
            let den = cache.d(i).mul(&cache.l(k - i).frobenius_pow(i as u32));
            RatFunc::recip(&den).unwrap()
        })
        .collect();
    LinearizedPoly { coeffs }
}

/// ∏_{deg a < k} (z − a) in A[z], dense in z, by direct multiplication of linear factors.
pub fn vanishing_product(field: &Field, k: usize) -> Vec<FqPoly> {
    let mut prod = vec![FqPoly::one(field)];
    let elems: Vec<FqPoly> = std::iter::once(FqPoly::zero(field))
        .chain((0..k).flat_map(|d| {
            let f = field.clone();
            FqPoly::monic_enumerate(field, d)
                .flat_map(move |m| f.elements().skip(1).map(move |c| m.scale(c)).collect::<Vec<_>>())
        }))
        .collect();
    for a in &elems {
        let mut next = vec![FqPoly::zero(field); prod.len() + 1];
        for (j, c) in prod.iter().enumerate() {
            next[j + 1] = next[j + 1].add(c);
            next[j] = next[j].sub(&c.mul(a));
        }
        prod = next;
    }
    prod
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;

    #[test]
    fn bracket_values() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FqField::new(p, e).unwrap();
            let q = f.q() as u64;
            let c = brackets(&f, 4);
            assert!(c.d(0).is_one() && c.l(0).is_one());
            let th = FqPoly::theta(&f);
            let thq = th.frobenius();
            assert_eq!(c.d(1), &thq.sub(&th));
            assert_eq!(c.l(2), &th.sub(&thq).mul(&th.sub(&th.frobenius_pow(2))));
            for i in 0..=4u32 {
                assert_eq!(c.d(i as usize).deg().unwrap() as u64, deg_d(q, i));
                assert_eq!(c.l(i as usize).deg().unwrap() as u64, deg_l(q, i));
            }
        }
    }

    #[test]
    fn carlitz_action_examples() {
        let f = FqField::new(2, 1).unwrap();
        assert_eq!(carlitz_action(&FqPoly::one(&f)).coeffs(), &[FqPoly::one(&f)]);
        let th = FqPoly::theta(&f);
        assert_eq!(carlitz_action(&th).coeffs(), &[th.clone(), FqPoly::one(&f)]);
        let c2 = carlitz_action(&th.mul(&th));
        assert_eq!(c2.coeffs(), &[th.mul(&th), th.add(&th.frobenius()), FqPoly::one(&f)]);
        // 1 is a (θ²+θ)-torsion point when q = 2; C_θ(1) = θ + 1
        assert_eq!(carlitz_action(&th).eval(&FqPoly::one(&f)).unwrap(), FqPoly::from_ints(&f, &[1, 1]));
        let a = FqPoly::from_ints(&f, &[0, 1, 1]);
        assert!(carlitz_action(&a).eval(&FqPoly::one(&f)).unwrap().is_zero());
    }

    #[test]
    fn carlitz_poly_small() {
        let f = FqField::new(2, 1).unwrap();
        let mut c = BracketCache::new(&f);
        let e0 = carlitz_poly(&mut c, 0);
        assert_eq!(e0.coeffs, vec![RatFunc::one(&f)]);
        let e1 = carlitz_poly(&mut c, 1);
        let d1inv = RatFunc::recip(c.d(1)).unwrap();
        assert_eq!(e1.coeffs, vec![RatFunc::recip(c.l(1)).unwrap(), d1inv.clone()]);
        // (z² − z)/d_1 in characteristic 2
        assert_eq!(e1.to_dense(), vec![RatFunc::zero(&f), d1inv.neg(), d1inv]);
    }

    #[test]
    fn limit_check_rows() {
        let f = FqField::new(2, 1).unwrap();
        let rows = exp_c_limit_check(&f, 3, 6).unwrap();
        assert_eq!(rows[0].exact_from, Some(0));
        // coefficient of τ is (1 − θ^{−m(q−1)})/d_1
        let r1: Vec<Option<i64>> = rows[1].digits.iter().skip(1).map(|x| x.1).collect();
        assert_eq!(r1, vec![Some(1), Some(2), Some(3), Some(4), Some(5), Some(6)]);
    }
}
