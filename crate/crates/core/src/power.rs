//! Truncated power series Σ_{k<T} c_k X^k in an outer variable u, t or Z
//! whose coefficients live in any `CoeffRing` (including nested series).

use crate::error::{Error, Result};
use crate::ring::CoeffRing;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum OuterVar {
    U,
    T,
    Z,
}

impl OuterVar {
    /// Whether the q-power Frobenius raises this variable to its q-th power
    /// (u and Z) or leaves it fixed (t).
    pub fn covariant(self) -> bool {
        !matches!(self, OuterVar::T)
    }
    pub fn name(self) -> &'static str {
        match self {
            OuterVar::U => "u",
            OuterVar::T => "t",
            OuterVar::Z => "Z",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C> {
    var: OuterVar,
    coeffs: Vec<C>,
    trunc: usize,
    zero: C,
}

impl<C: CoeffRing> PowerSeries<C> {
    /// Entries at index >= trunc are dropped; missing entries are zero.
    pub fn new(var: OuterVar, mut coeffs: Vec<C>, trunc: usize, zero: C) -> Self {
        coeffs.truncate(trunc);
        while coeffs.len() < trunc {
            coeffs.push(zero.clone());
        }
        PowerSeries { var, coeffs, trunc, zero }
    }
    pub fn zero(var: OuterVar, trunc: usize, zero: C) -> Self {
        Self::new(var, Vec::new(), trunc, zero)
    }
    pub fn constant(var: OuterVar, c: C, trunc: usize) -> Self {
        let z = c.zero_like();
        Self::new(var, vec![c], trunc, z)
    }
    pub fn one(var: OuterVar, trunc: usize, zero: &C) -> Self {
        Self::constant(var, zero.one_like(), trunc)
    }
    /// The variable itself, c·X.
    pub fn monomial(var: OuterVar, c: C, k: usize, trunc: usize) -> Self {
        let z = c.zero_like();
        let mut v = vec![z.clone(); k];
        v.push(c);
        Self::new(var, v, trunc, z)
    }

    pub fn var(&self) -> OuterVar {
        self.var
    }
    pub fn trunc(&self) -> usize {
        self.trunc
    }
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }
    pub fn coeff(&self, k: usize) -> &C {
        self.coeffs.get(k).unwrap_or(&self.zero)
    }
    pub fn zero_elem(&self) -> &C {
        &self.zero
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    /// Index of the first coefficient that is not an exact zero.
    pub fn exact_val(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_exact_zero()).unwrap_or(self.trunc)
    }
    /// Index of the first coefficient that is nonzero to its own precision.
    pub fn val(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn with_trunc(&self, t: usize) -> Self {
        Self::new(self.var, self.coeffs.clone(), t.min(self.trunc), self.zero.clone())
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return Err(Error::VariableMismatch(self.var.name().into(), o.var.name().into()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let t = self.trunc.min(o.trunc);
        let v = (0..t).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect();
        Ok(Self::new(self.var, v, t, self.zero.clone()))
    }
    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|c| c.neg()).collect(), self.trunc, self.zero.clone())
    }
    pub fn map<D: CoeffRing>(&self, f: impl Fn(&C) -> D, zero: D) -> PowerSeries<D> {
        PowerSeries::new(self.var, self.coeffs.iter().map(f).collect(), self.trunc, zero)
    }
    /// Multiplication of every coefficient by a scalar of the coefficient ring.
    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|x| x.mul(c)).collect(), self.trunc, self.zero.clone())
    }
    /// Multiplication by X^k.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.var, v, self.trunc + k, self.zero.clone())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let va = self.exact_val();
        let vb = o.exact_val();
        let t = (self.trunc + vb).min(o.trunc + va);
        let mut out = vec![self.zero.clone(); t];
        for i in va..self.trunc.min(t) {
            let a = &self.coeffs[i];
            if a.is_exact_zero() {
                continue;
            }
            for j in vb..o.trunc.min(t - i) {
                let b = &o.coeffs[j];
                if b.is_exact_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Ok(Self::new(self.var, out, t, self.zero.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        let a0inv =
            self.coeffs.first().ok_or(Error::NonUnitConstantTerm)?.try_inv().map_err(|_| Error::NonUnitConstantTerm)?;
        let t = self.trunc;
        let mut b: Vec<C> = Vec::with_capacity(t);
        b.push(a0inv.clone());
        for k in 1..t {
            let mut acc = self.zero.clone();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if a.is_exact_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(&b[k - j]));
            }
            b.push(acc.mul(&a0inv).neg());
        }
        Ok(Self::new(self.var, b, t, self.zero.clone()))
    }

    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let mut r = Self::one(self.var, self.trunc, &self.zero);
        let mut b = self.clone();
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

    /// q^k-power Frobenius; for covariant variables X^m ↦ X^{m q^k} and the
    /// result is cut at `cap` when given.
    pub fn frobenius_pow_capped(&self, k: u32, q: u32, cap: Option<usize>) -> Self {
        if !self.var.covariant() {
            let v = self.coeffs.iter().map(|c| c.frobenius_pow(k)).collect();
            let t = cap.map_or(self.trunc, |c| c.min(self.trunc));
            return Self::new(self.var, v, t, self.zero.clone());
        }
        let qk = (q as usize).pow(k);
        let mut t = self.trunc * qk;
        if let Some(c) = cap {
            t = t.min(c);
        }
        let mut v = vec![self.zero.clone(); t];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * qk >= t {
                break;
            }
            v[i * qk] = c.frobenius_pow(k);
        }
        Self::new(self.var, v, t, self.zero.clone())
    }

    /// Σ p_i X^i evaluated at this series by Horner's rule.
    pub fn eval_poly(p: &[C], x: &Self) -> Result<Self> {
        let mut acc = Self::zero(x.var, x.trunc, x.zero.clone());
        for c in p.iter().rev() {
            acc = acc.try_mul(x)?.try_add(&Self::constant(x.var, c.clone(), x.trunc))?;
        }
        Ok(acc)
    }
}

impl<C: CoeffRing> CoeffRing for PowerSeries<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.var, self.trunc, self.zero.clone())
    }
    fn one_like(&self) -> Self {
        Self::one(self.var, self.trunc, &self.zero)
    }
    fn is_zero(&self) -> bool {
        PowerSeries::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_exact_zero())
    }
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("compatible series")
    }
    fn sub(&self, o: &Self) -> Self {
        self.try_sub(o).expect("compatible series")
    }
    fn neg(&self) -> Self {
        PowerSeries::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("compatible series")
    }
    fn frobenius(&self) -> Self {
        self.frobenius_pow(1)
    }
    fn frobenius_pow(&self, k: u32) -> Self {
        let q = self.zero.q_hint();
        self.frobenius_pow_capped(k, q, None)
    }
    fn q_hint(&self) -> u32 {
        self.zero.q_hint()
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn domain_tag(&self) -> &'static str {
        match self.var {
            OuterVar::U => "series(u)",
            OuterVar::T => "series(t)",
            OuterVar::Z => "series(Z)",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;
    use crate::poly::FqPoly;
    use crate::ratfunc::RatFunc;

    #[test]
    fn inverse_and_frobenius() {
        let f = FqField::new(2, 1).unwrap();
        let theta = RatFunc::from(FqPoly::theta(&f));
        let z = RatFunc::zero(&f);
        let one = RatFunc::one(&f);
        // u^2 (1 + θu)^{-1}
        let s = PowerSeries::new(OuterVar::U, vec![one.clone(), theta.clone()], 4, z.clone());
        let ua = s.inv().unwrap().shift(2);
        let expect: Vec<RatFunc> = (0..4).map(|k| theta.pow(k).unwrap()).collect();
        assert_eq!(ua, PowerSeries::new(OuterVar::U, expect, 4, z.clone()).shift(2));
        let fr = s.frobenius_pow(1);
        assert_eq!(fr.coeff(2), &theta.frobenius());
        assert_eq!(fr.trunc(), 8);
        let st = PowerSeries::new(OuterVar::T, vec![one, theta.clone()], 4, z);
        assert_eq!(st.frobenius_pow(1).coeff(1), &theta.frobenius());
        assert_eq!(st.frobenius_pow(1).trunc(), 4);
    }
}
