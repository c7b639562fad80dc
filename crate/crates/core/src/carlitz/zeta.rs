//! Power sums over monic polynomials, Carlitz zeta values and multiple zeta values.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::{LaurentSeries, Var};
use crate::poly::FqPoly;

/// Lower bound for v(Σ_{a monic, deg a = d} a^{−w}): the sum Σ_b b^n over the
/// polynomials b of degree < d vanishes unless n >= q^d − 1, and each term of
/// the expansion of (θ^d + b)^{−w} in powers of b/θ^d has valuation >= dw + n.
pub fn power_sum_bound(q: u64, d: u32, w: i64) -> i64 {
    d as i64 * w + q.pow(d) as i64 - 1
}

/// a^{−w} as a series in 1/θ known to O((1/θ)^trunc).
pub(crate) fn inv_power(a: &FqPoly, w: i64, trunc: i64) -> Result<LaurentSeries> {
    let d = a.deg().ok_or(Error::DivisionByZeroPoly)? as i64;
    let rel = trunc - d * w;
    if rel <= 0 {
        return Ok(LaurentSeries::zero(a.field(), Var::InvTheta, Some(trunc)));
    }
    LaurentSeries::from_poly(a).with_rel_prec(rel).inv()?.powi(w)
}

/// Σ_{a monic, deg a = d} a^{−w} known to O((1/θ)^trunc).
pub fn power_sum(field: &Field, d: usize, w: i64, trunc: i64) -> Result<LaurentSeries> {
    let mut acc = LaurentSeries::zero(field, Var::InvTheta, Some(trunc));
    if power_sum_bound(field.q() as u64, d as u32, w) >= trunc {
        return Ok(acc);
    }
    for a in FqPoly::monic_enumerate(field, d) {
        acc = acc.try_add(&inv_power(&a, w, trunc)?)?;
    }
    Ok(acc)
}

/// ζ_A(w) = Σ_{a monic} a^{−w} to O((1/θ)^P). The sum over all nonzero a
/// of a^{−w} equals −ζ_A(w) when (q−1) | w.
pub fn zeta_carlitz(field: &Field, w: i64, p: i64) -> Result<LaurentSeries> {
    mzv(field, &[w], p)
}

/// Σ_{deg a_1 > ... > deg a_r} a_1^{−n_1} ⋯ a_r^{−n_r} over monic a_i, to O((1/θ)^P).
pub fn mzv(field: &Field, weights: &[i64], p: i64) -> Result<LaurentSeries> {
    if weights.is_empty() || weights.iter().any(|&n| n < 1) {
        return Err(Error::Invalid(format!("weights must be positive, got {weights:?}")));
    }
    if p < 1 {
        return Err(Error::PrecisionExhausted("precision must be positive".into()));
    }
    let q = field.q() as u64;
    let r = weights.len();
    let mut dmax = 0usize;
    while power_sum_bound(q, dmax as u32 + 1, weights[0]) < p {
        dmax += 1;
    }
    // partial[d] = Σ over tuples for weights[k..] with leading degree exactly d
    let mut partial: Vec<LaurentSeries> =
        (0..=dmax).map(|d| power_sum(field, d, weights[r - 1], p)).collect::<Result<_>>()?;
    for k in (0..r - 1).rev() {
        let mut next = Vec::with_capacity(dmax + 1);
        let mut below = LaurentSeries::zero(field, Var::InvTheta, Some(p));
        for d in 0..=dmax {
            let s = power_sum(field, d, weights[k], p)?;
            next.push(s.try_mul(&below)?.with_trunc(p));
            below = below.try_add(&partial[d])?;
        }
        partial = next;
    }
    let mut acc = LaurentSeries::zero(field, Var::InvTheta, Some(p));
    for s in &partial {
        acc = acc.try_add(s)?;
    }
    Ok(acc)
}

fn is_irreducible(a: &FqPoly) -> bool {
    let d = a.deg().unwrap_or(0);
    if d <= 1 {
        return d == 1;
    }
    (1..=d / 2).all(|k| FqPoly::monic_enumerate(a.field(), k).all(|b| !a.divmod(&b).unwrap().1.is_zero()))
}

/// ∏_{P monic irreducible, deg P <= dmax} (1 − P^{−w})^{−1}; primes of larger
/// degree change only digits at or beyond (dmax+1)·w, so the result is
/// truncated there (or at P if smaller).
pub fn euler_product(field: &Field, w: i64, dmax: usize, p: i64) -> Result<LaurentSeries> {
    let t = p.min((dmax as i64 + 1) * w);
    let mut acc = LaurentSeries::one(field, Var::InvTheta).with_trunc(t);
    for d in 1..=dmax {
        for a in FqPoly::monic_enumerate(field, d).filter(is_irreducible) {
            let term = inv_power(&a, w, t)?;
            let factor = LaurentSeries::one(field, Var::InvTheta).try_sub(&term)?.inv()?;
            acc = acc.try_mul(&factor)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use crate::ratfunc::RatFunc;

    #[test]
    fn stratum_bound_holds() {
        for (p, e) in [(2, 1), (3, 1), (2, 2)] {
            let f = FqField::new(p, e).unwrap();
            for d in 0..4usize {
                for w in 1..5 {
                    if (f.q() as usize).pow(d as u32) > 64 {
                        continue;
                    }
                    let t = 200;
                    let mut acc = LaurentSeries::zero(&f, Var::InvTheta, Some(t));
                    for a in FqPoly::monic_enumerate(&f, d) {
                        acc = acc.try_add(&inv_power(&a, w, t).unwrap()).unwrap();
                    }
                    let v = acc.val_bound().unwrap();
                    assert!(v >= power_sum_bound(f.q() as u64, d as u32, w), "q={} d={d} w={w} v={v}", f.q());
                }
            }
        }
    }

    #[test]
    fn zeta_direct_q2() {
        let f = FqField::new(2, 1).unwrap();
        let z = zeta_carlitz(&f, 1, 30).unwrap();
        assert_eq!(z.val(), Some(0));
        assert_eq!(z.leading(), crate::FqElem::ONE);
        // direct sum over monic a of degree <= 6 as an element of K
        let mut direct = RatFunc::zero(&f);
        for d in 0..=6 {
            for a in FqPoly::monic_enumerate(&f, d) {
                direct = direct.add(&RatFunc::recip(&a).unwrap());
            }
        }
        let ds = LaurentSeries::from_ratfunc(&direct, 30);
        assert_eq!(ds, z);
    }

    #[test]
    fn euler_product_agrees() {
        let f = FqField::new(3, 1).unwrap();
        let z = zeta_carlitz(&f, 2, 20).unwrap();
        let e = euler_product(&f, 2, 4, 20).unwrap();
        assert!(e.agreement(&z, 0) >= e.trunc().unwrap());
    }
}
