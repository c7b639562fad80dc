//! The rational function field K = F_q(θ), kept in lowest terms with a monic denominator.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::poly::FqPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FqPoly,
    den: FqPoly,
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl From<FqPoly> for RatFunc {
    fn from(p: FqPoly) -> Self {
        let den = FqPoly::one(p.field());
        RatFunc { num: p, den }
    }
}

impl RatFunc {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if *num.field() != *den.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: FqPoly, den: FqPoly) -> Self {
        let f = num.field().clone();
        if num.is_zero() {
            return RatFunc { num, den: FqPoly::one(&f) };
        }
        let (num, den) = if den.deg() == Some(0) || num.deg() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            }
        };
        let li = f.inv(den.leading()).unwrap();
        if li == FqElem::ONE {
            RatFunc { num, den }
        } else {
            RatFunc { num: num.scale(li), den: den.scale(li) }
        }
    }

    pub fn zero(field: &Field) -> Self {
        FqPoly::zero(field).into()
    }
    pub fn one(field: &Field) -> Self {
        FqPoly::one(field).into()
    }
    /// 1/p for nonzero p.
    pub fn recip(p: &FqPoly) -> Result<Self> {
        Self::new(FqPoly::one(p.field()), p.clone())
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }
    pub fn num(&self) -> &FqPoly {
        &self.num
    }
    pub fn den(&self) -> &FqPoly {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }
    pub fn as_poly(&self) -> Option<&FqPoly> {
        self.is_polynomial().then_some(&self.num)
    }
    /// deg num − deg den, i.e. minus the valuation at infinity; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.deg()? as i64 - self.den.deg().unwrap() as i64)
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFunc { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&b).add(&o.num.mul(&a));
        let den = a.mul(&o.den);
        if g.is_one() {
            // a coprime to b: num is coprime to a*b already
            let li = self.field().inv(den.leading()).unwrap();
            return RatFunc { num: num.scale(li), den: den.scale(li) };
        }
        Self::reduce(num, den)
    }
    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero(self.field());
        }
        let g1 = if self.num.deg() == Some(0) || o.den.is_one() { None } else { Some(self.num.gcd(&o.den)) };
        let g2 = if o.num.deg() == Some(0) || self.den.is_one() { None } else { Some(o.num.gcd(&self.den)) };
        let cut = |x: &FqPoly, g: &Option<FqPoly>| match g {
            Some(g) if !g.is_one() => x.div_exact(g).unwrap(),
            _ => x.clone(),
        };
        let num = cut(&self.num, &g1).mul(&cut(&o.num, &g2));
        let den = cut(&self.den, &g2).mul(&cut(&o.den, &g1));
        RatFunc { num, den }
    }
    pub fn mul_poly(&self, p: &FqPoly) -> RatFunc {
        self.mul(&RatFunc::from(p.clone()))
    }
    pub fn scale(&self, c: FqElem) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }
    pub fn inv(&self) -> Result<RatFunc> {
        Self::new(self.den.clone(), self.num.clone())
    }
    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }
    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        // powers of a reduced fraction stay reduced
        Ok(RatFunc { num: base.num.pow(k), den: base.den.pow(k) })
    }
    pub fn frobenius(&self) -> RatFunc {
        self.frobenius_pow(1)
    }
    pub fn frobenius_pow(&self, k: u32) -> RatFunc {
        RatFunc { num: self.num.frobenius_pow(k), den: self.den.frobenius_pow(k) }
    }
}

impl crate::ring::CoeffRing for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.field())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn frobenius(&self) -> Self {
        RatFunc::frobenius(self)
    }
    fn frobenius_pow(&self, k: u32) -> Self {
        RatFunc::frobenius_pow(self, k)
    }
    fn try_inv(&self) -> Result<Self> {
        self.inv()
    }
    fn domain_tag(&self) -> &'static str {
        "K"
    }
    fn q_hint(&self) -> u32 {
        self.field().q()
    }
}

impl crate::ring::CoeffRing for FqPoly {
    fn zero_like(&self) -> Self {
        FqPoly::zero(self.field())
    }
    fn one_like(&self) -> Self {
        FqPoly::one(self.field())
    }
    fn is_zero(&self) -> bool {
        FqPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        FqPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        FqPoly::sub(self, o)
    }
    fn neg(&self) -> Self {
        FqPoly::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        FqPoly::mul(self, o)
    }
    fn frobenius(&self) -> Self {
        FqPoly::frobenius(self)
    }
    fn frobenius_pow(&self, k: u32) -> Self {
        FqPoly::frobenius_pow(self, k)
    }
    fn try_inv(&self) -> Result<Self> {
        match self.deg() {
            Some(0) => Ok(FqPoly::constant(self.field(), self.field().inv(self.leading()).unwrap())),
            _ => Err(Error::NonUnitConstantTerm),
        }
    }
    fn domain_tag(&self) -> &'static str {
        "A"
    }
    fn q_hint(&self) -> u32 {
        self.field().q()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;

    #[test]
    fn arithmetic_reduces() {
        let f = FqField::new(3, 1).unwrap();
        let a = FqPoly::from_ints(&f, &[1, 1]);
        let b = FqPoly::from_ints(&f, &[2, 0, 1]);
        let x = RatFunc::new(a.mul(&b), b.scale(f.from_int(2))).unwrap();
        assert_eq!(x.num(), &a.scale(f.from_int(2)));
        assert!(x.den().is_one());
        let y = RatFunc::recip(&a).unwrap();
        let z = RatFunc::recip(&b).unwrap();
        let s = y.add(&z);
        assert_eq!(s.mul(&RatFunc::from(a.mul(&b))), RatFunc::from(a.add(&b)));
        assert_eq!(s.sub(&s), RatFunc::zero(&f));
        assert_eq!(y.div(&y).unwrap(), RatFunc::one(&f));
        assert_eq!(y.pow(-2).unwrap(), RatFunc::from(a.mul(&a)));
    }
}
