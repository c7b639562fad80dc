//! Twisted polynomials and series Σ f_i τ^i with τ b = b^q τ.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::ring::CoeffRing;

/// Σ_{i<N} f_i τ^i + O(τ^N); `trunc == None` marks an exact twisted polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedSeries<C> {
    coeffs: Vec<C>,
    trunc: Option<usize>,
    zero: C,
}

impl<C: CoeffRing> TwistedSeries<C> {
    pub fn new(mut coeffs: Vec<C>, trunc: Option<usize>, zero: C) -> Self {
        match trunc {
            Some(n) => {
                coeffs.truncate(n);
                while coeffs.len() < n {
                    coeffs.push(zero.clone());
                }
            }
            None => {
                while coeffs.last().is_some_and(|c| c.is_exact_zero()) {
                    coeffs.pop();
                }
            }
        }
        TwistedSeries { coeffs, trunc, zero }
    }
    pub fn exact(coeffs: Vec<C>, zero: C) -> Self {
        Self::new(coeffs, None, zero)
    }
    pub fn one(zero: &C) -> Self {
        Self::exact(vec![zero.one_like()], zero.clone())
    }
    /// The exact constant b (a twisted polynomial of τ-degree 0).
    pub fn constant(b: C) -> Self {
        let z = b.zero_like();
        Self::exact(vec![b], z)
    }
    /// τ itself over the domain of `zero`.
    pub fn tau(zero: &C) -> Self {
        Self::exact(vec![zero.clone(), zero.one_like()], zero.clone())
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> &C {
        self.coeffs.get(i).unwrap_or(&self.zero)
    }
    pub fn trunc(&self) -> Option<usize> {
        self.trunc
    }
    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }
    pub fn zero_elem(&self) -> &C {
        &self.zero
    }
    /// τ-degree of an exact twisted polynomial (`None` for zero).
    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn with_trunc(&self, n: usize) -> Self {
        Self::new(self.coeffs.clone(), Some(self.trunc.map_or(n, |t| t.min(n))), self.zero.clone())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.zero.domain_tag() != o.zero.domain_tag() {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let trunc = match (self.trunc, o.trunc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let len = self.coeffs.len().max(o.coeffs.len());
        let v = (0..len).map(|k| self.coeff(k).add(o.coeff(k))).collect();
        Ok(Self::new(v, trunc, self.zero.clone()))
    }
    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.trunc, self.zero.clone())
    }
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// (fg)_k = Σ_{i+j=k} f_i g_j^{q^i}.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let trunc = match (self.trunc, o.trunc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, None) => a,
            (None, b) => b,
        };
        let len = match trunc {
            Some(n) => n,
            None => (self.coeffs.len() + o.coeffs.len()).saturating_sub(1),
        };
        let mut out = vec![self.zero.clone(); len];
        for (i, fi) in self.coeffs.iter().enumerate().take(len) {
            if fi.is_exact_zero() {
                continue;
            }
            for (j, gj) in o.coeffs.iter().enumerate().take(len - i) {
                if gj.is_exact_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&fi.mul(&gj.frobenius_pow(i as u32)));
            }
        }
        Ok(Self::new(out, trunc, self.zero.clone()))
    }

    /// Σ f_i x^{q^i} for an exact twisted polynomial.
    pub fn eval(&self, x: &C) -> Result<C> {
        if self.trunc.is_some() {
            return Err(Error::DivergentEvaluation("a truncated series has no exact value; use a tail bound".into()));
        }
        let mut acc = x.zero_like();
        let mut xp = x.clone();
        for (i, fi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = xp.frobenius();
            }
            acc = acc.add(&fi.mul(&xp));
        }
        Ok(acc)
    }

    /// Right inverse mod τ^N by the triangular recursion
    /// g_k = −f_0^{-1} Σ_{i≥1} f_i g_{k−i}^{q^i}; it is also a left inverse.
    pub fn invert(&self, n: usize) -> Result<Self> {
        let f0inv = self.coeff(0).try_inv().map_err(|_| Error::NonUnitConstantTerm)?;
        let mut g: Vec<C> = vec![f0inv.clone()];
        for k in 1..n {
            let mut acc = self.zero.clone();
            for i in 1..=k {
                let fi = self.coeff(i);
                if fi.is_exact_zero() {
                    continue;
                }
                acc = acc.add(&fi.mul(&g[k - i].frobenius_pow(i as u32)));
            }
            g.push(f0inv.mul(&acc).neg());
        }
        let n = self.trunc.map_or(n, |t| t.min(n));
        Ok(Self::new(g, Some(n), self.zero.clone()))
    }

    pub fn to_json(&self, ser: impl Fn(&C) -> Value) -> Value {
        json!({
            "domain": self.zero.domain_tag(),
            "trunc": self.trunc,
            "coeffs": self.coeffs.iter().map(ser).collect::<Vec<_>>(),
        })
    }
}

/// Left-multiplies the first `n` factors of the stream in order:
/// the result is F_{n−1} ⋯ F_1 F_0, truncated mod τ^n. Each factor must be
/// congruent to 1 mod τ.
pub fn ore_product_truncated<C: CoeffRing>(
    factors: impl IntoIterator<Item = TwistedSeries<C>>,
    n: usize,
    zero: &C,
) -> Result<TwistedSeries<C>> {
    let mut acc = TwistedSeries::one(zero).with_trunc(n);
    for (k, f) in factors.into_iter().take(n).enumerate() {
        let c0 = f.coeff(0);
        if c0.sub(&c0.one_like()).is_zero() && !c0.is_zero() {
            acc = f.with_trunc(n).mul(&acc)?;
        } else {
            return Err(Error::NotUnipotentFactor(k));
        }
    }
    Ok(acc)
}

impl TwistedSeries<LaurentSeries> {
    /// Σ_{i<N} f_i x^{q^i} for a truncated series whose omitted tail
    /// Σ_{i≥N} f_i x^{q^i} is known to have valuation ≥ `tail_val`.
    pub fn eval_with_tail(&self, x: &LaurentSeries, tail_val: i64) -> Result<LaurentSeries> {
        let mut acc = x.zero_like().with_trunc(tail_val);
        let mut xp = x.clone();
        let mut lowest = i64::MAX;
        for (i, fi) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xp = xp.frobenius_pow(1);
            }
            let term = fi.mul(&xp);
            if let Some(v) = term.val() {
                lowest = lowest.min(v);
            }
            acc = acc.add(&term);
        }
        if self.trunc.is_some() && tail_val <= lowest.min(acc.val().unwrap_or(i64::MAX)) && lowest != i64::MAX {
            return Err(Error::DivergentEvaluation(format!(
                "tail valuation {tail_val} does not exceed the partial sum"
            )));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use crate::poly::FqPoly;
    use crate::ratfunc::RatFunc;

    #[test]
    fn commutation_and_squares() {
        let f = FqField::new(3, 1).unwrap();
        let z = RatFunc::zero(&f);
        let th = RatFunc::from(FqPoly::theta(&f));
        let tau = TwistedSeries::tau(&z);
        let t_th = tau.mul(&TwistedSeries::constant(th.clone())).unwrap();
        assert_eq!(t_th.coeffs(), &[z.clone(), th.frobenius()]);
        let one = TwistedSeries::one(&z);
        let a = one.add(&tau).unwrap();
        let b = one.sub(&tau).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.coeffs(), &[RatFunc::one(&f), z.clone(), RatFunc::one(&f).neg()]);
        let c = TwistedSeries::constant(th.clone()).add(&tau).unwrap();
        let c2 = c.mul(&c).unwrap();
        assert_eq!(c2.coeffs(), &[th.mul(&th), th.add(&th.frobenius()), RatFunc::one(&f)]);
    }

    #[test]
    fn geometric_inverse() {
        let f = FqField::new(2, 1).unwrap();
        let z = RatFunc::zero(&f);
        let g = TwistedSeries::one(&z).sub(&TwistedSeries::tau(&z)).unwrap();
        let inv = g.invert(4).unwrap();
        assert_eq!(inv.coeffs(), &vec![RatFunc::one(&f); 4][..]);
        assert_eq!(inv.mul(&g).unwrap(), TwistedSeries::one(&z).with_trunc(4));
        assert!(matches!(TwistedSeries::tau(&z).invert(3), Err(Error::NonUnitConstantTerm)));
    }

    #[test]
    fn product_of_two_factors() {
        let f = FqField::new(3, 1).unwrap();
        let z = RatFunc::zero(&f);
        let a = RatFunc::from(FqPoly::from_ints(&f, &[1, 1]));
        let f0 = TwistedSeries::exact(vec![RatFunc::one(&f), RatFunc::one(&f).neg()], z.clone());
        let f1 = TwistedSeries::exact(vec![RatFunc::one(&f), a.neg()], z.clone());
        let p = ore_product_truncated(vec![f0, f1], 3, &z).unwrap();
        let one = RatFunc::one(&f);
        assert_eq!(p.coeffs(), &[one.clone(), one.add(&a).neg(), a]);
        let empty = ore_product_truncated(Vec::<TwistedSeries<RatFunc>>::new(), 3, &z).unwrap();
        assert_eq!(empty, TwistedSeries::one(&z).with_trunc(3));
        let bad = TwistedSeries::tau(&z);
        assert!(matches!(ore_product_truncated(vec![bad], 3, &z), Err(Error::NotUnipotentFactor(0))));
    }
}
