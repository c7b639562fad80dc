//! The polynomial ring A = F_q[θ].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FqElem};
use crate::kernel;

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// |a| = q^k stored as the exponent k; `None` is |0| = 0.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbsValue(pub Option<i64>);

impl PartialOrd for AbsValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for AbsValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(&b),
        }
    }
}
impl std::ops::Mul for AbsValue {
    type Output = AbsValue;
    fn mul(self, rhs: AbsValue) -> AbsValue {
        AbsValue(self.0.zip(rhs.0).map(|(a, b)| a + b))
    }
}

#[derive(Clone)]
pub struct FqPoly {
    field: Field,
    coeffs: Vec<FqElem>,
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && *self.field == *other.field
    }
}
impl Eq for FqPoly {}

impl std::hash::Hash for FqPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state)
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl FqPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FqElem>) -> Self {
        kernel::trim(&mut coeffs);
        FqPoly { field: field.clone(), coeffs }
    }
    pub fn zero(field: &Field) -> Self {
        FqPoly { field: field.clone(), coeffs: Vec::new() }
    }
    pub fn one(field: &Field) -> Self {
        Self::constant(field, FqElem::ONE)
    }
    pub fn constant(field: &Field, c: FqElem) -> Self {
        Self::new(field, vec![c])
    }
    /// c θ^k
    pub fn monomial(field: &Field, c: FqElem, k: usize) -> Self {
        let mut v = vec![FqElem::ZERO; k + 1];
        v[k] = c;
        Self::new(field, v)
    }
    pub fn theta(field: &Field) -> Self {
        Self::monomial(field, FqElem::ONE, 1)
    }
    /// Polynomial with integer coefficients reduced into F_p.
    pub fn from_ints(field: &Field, c: &[i64]) -> Self {
        Self::new(field, c.iter().map(|&x| field.from_int(x)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<FqElem> {
        self.coeffs
    }
    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }
    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }
    /// Degree as an integer, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }
    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }
    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }
    pub fn abs(&self) -> AbsValue {
        AbsValue(self.deg().map(|d| d as i64))
    }

    fn check(&self, other: &FqPoly) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check(other)?;
        Ok(self.add(other))
    }
    pub fn try_mul(&self, other: &FqPoly) -> Result<FqPoly> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &FqPoly) -> FqPoly {
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() { (self, other) } else { (other, self) };
        let mut v = long.coeffs.clone();
        for (d, &s) in v.iter_mut().zip(&short.coeffs) {
            *d = f.add(*d, s);
        }
        FqPoly::new(f, v)
    }
    pub fn neg(&self) -> FqPoly {
        let f = &self.field;
        FqPoly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }
    pub fn sub(&self, other: &FqPoly) -> FqPoly {
        self.add(&other.neg())
    }
    pub fn mul(&self, other: &FqPoly) -> FqPoly {
        FqPoly::new(&self.field, kernel::mul_trunc(&self.field, &self.coeffs, &other.coeffs, usize::MAX))
    }
    pub fn scale(&self, c: FqElem) -> FqPoly {
        let f = &self.field;
        FqPoly::new(f, self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }
    /// Multiplication by θ^k.
    pub fn shift(&self, k: usize) -> FqPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![FqElem::ZERO; k];
        v.extend_from_slice(&self.coeffs);
        FqPoly { field: self.field.clone(), coeffs: v }
    }
    pub fn pow(&self, mut k: u64) -> FqPoly {
        let mut r = FqPoly::one(&self.field);
        let mut b = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    /// a ↦ a^q; coefficients are fixed by the q-power map, so only exponents scale.
    pub fn frobenius(&self) -> FqPoly {
        self.frobenius_pow(1)
    }
    pub fn frobenius_pow(&self, k: u32) -> FqPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let qk = (self.field.q() as usize).pow(k);
        let mut v = vec![FqElem::ZERO; (self.coeffs.len() - 1) * qk + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * qk] = c;
        }
        FqPoly { field: self.field.clone(), coeffs: v }
    }

    pub fn divmod(&self, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        self.check(b)?;
        let db = b.deg().ok_or(Error::DivisionByZeroPoly)?;
        let f = &self.field;
        if self.coeffs.len() <= db {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(b.leading()).unwrap();
        let mut r = self.coeffs.clone();
        let mut quo = vec![FqElem::ZERO; r.len() - db];
        if f.is_prime_field() {
            let p = f.p() as u64;
            let bn: Vec<u64> = b.coeffs.iter().map(|c| p - c.0 as u64).collect();
            let li = lead_inv.0 as u64;
            let mut rr: Vec<u64> = r.iter().map(|c| c.0 as u64).collect();
            for top in (db..rr.len()).rev() {
                let c = rr[top] % p * li % p;
                if c == 0 {
                    continue;
                }
                quo[top - db] = FqElem(c as u8);
                let base = top - db;
                for (slot, &nb) in rr[base..=top].iter_mut().zip(&bn) {
                    *slot += c * nb;
                }
            }
            r = rr.into_iter().map(|x| FqElem((x % p) as u8)).collect();
        } else {
            for top in (db..r.len()).rev() {
                let c = f.mul(r[top], lead_inv);
                if c.is_zero() {
                    continue;
                }
                quo[top - db] = c;
                let base = top - db;
                for (i, &bi) in b.coeffs.iter().enumerate() {
                    r[base + i] = f.sub(r[base + i], f.mul(c, bi));
                }
            }
        }
        r.truncate(db);
        Ok((FqPoly::new(f, quo), FqPoly::new(f, r)))
    }

    /// Exact quotient; errors if `b` does not divide `self`.
    pub fn div_exact(&self, b: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.divmod(b)?;
        if !r.is_zero() {
            return Err(Error::Invalid("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn make_monic(&self) -> FqPoly {
        match self.field.inv(self.leading()) {
            Some(li) => self.scale(li),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &FqPoly) -> FqPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Canonical text form, coefficients low to high: "[1,0,1]".
    /// Over F_p entries are residues; over F_{p^e} each entry is a coordinate vector.
    pub fn to_text(&self) -> String {
        let f = &self.field;
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|&c| {
                if f.is_prime_field() {
                    c.0.to_string()
                } else {
                    let v: Vec<String> = f.coords(c).iter().map(|x| x.to_string()).collect();
                    format!("[{}]", v.join(","))
                }
            })
            .collect();
        format!("[{}]", parts.join(","))
    }

    /// Inverse of `to_text`.
    pub fn from_text(field: &Field, s: &str) -> Result<FqPoly> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Json(format!("polynomial {s:?}: {e}")))?;
        let arr = v.as_array().ok_or_else(|| Error::Json(format!("polynomial {s:?} is not a list")))?;
        let coeffs = arr
            .iter()
            .map(|c| {
                let coords: Vec<u32> = match c {
                    serde_json::Value::Array(xs) => {
                        xs.iter().map(|x| x.as_u64().map(|n| n as u32)).collect::<Option<_>>()
                    }
                    x => x.as_u64().map(|n| vec![n as u32]),
                }
                .ok_or_else(|| Error::Json(format!("bad coefficient {c} in {s:?}")))?;
                field.from_coords(&coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FqPoly::new(field, coeffs))
    }

    /// All q^d monic polynomials of degree d, in increasing order of the
    /// index sum_{i<d} c_i q^i of their lower coefficients.
    pub fn monic_enumerate(field: &Field, d: usize) -> MonicIter {
        MonicIter { field: field.clone(), d, next: Some(vec![FqElem::ZERO; d]) }
    }
}

pub struct MonicIter {
    field: Field,
    d: usize,
    next: Option<Vec<FqElem>>,
}

impl Iterator for MonicIter {
    type Item = FqPoly;
    fn next(&mut self) -> Option<FqPoly> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let q = self.field.q();
        let mut carried = true;
        for c in succ.iter_mut() {
            if (c.0 as u32) + 1 < q {
                c.0 += 1;
                carried = false;
                break;
            }
            c.0 = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        let mut v = cur;
        v.push(FqElem::ONE);
        debug_assert_eq!(v.len(), self.d + 1);
        Some(FqPoly { field: self.field.clone(), coeffs: v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FqField;

    #[test]
    fn examples() {
        let f3 = FqField::new(3, 1).unwrap();
        let a = FqPoly::from_ints(&f3, &[1, 1]);
        let b = FqPoly::from_ints(&f3, &[-1, 1]);
        assert_eq!(a.mul(&b), FqPoly::from_ints(&f3, &[-1, 0, 1]));
        let f2 = FqField::new(2, 1).unwrap();
        assert_eq!(FqPoly::from_ints(&f2, &[1, 1]).frobenius(), FqPoly::from_ints(&f2, &[1, 0, 1]));
        assert_eq!(FqPoly::from_ints(&f2, &[0, 1, 1]).abs(), AbsValue(Some(2)));
        assert_eq!(FqPoly::zero(&f2).abs(), AbsValue(None));
        assert_eq!(FqPoly::zero(&f2).degree(), Degree::MinusInfinity);
        assert_eq!(FqPoly::from_ints(&f2, &[1, 0, 1]).to_text(), "[1,0,1]");
    }

    #[test]
    fn enumeration() {
        let f2 = FqField::new(2, 1).unwrap();
        let d0: Vec<_> = FqPoly::monic_enumerate(&f2, 0).collect();
        assert_eq!(d0, vec![FqPoly::one(&f2)]);
        let d1: Vec<_> = FqPoly::monic_enumerate(&f2, 1).map(|p| p.to_text()).collect();
        assert_eq!(d1, vec!["[0,1]", "[1,1]"]);
        let f3 = FqField::new(3, 1).unwrap();
        let d2: std::collections::HashSet<_> = FqPoly::monic_enumerate(&f3, 2).collect();
        assert_eq!(d2.len(), 9);
        assert!(d2.iter().all(|p| p.is_monic() && p.deg() == Some(2)));
    }

    #[test]
    fn divmod_and_gcd() {
        let f = FqField::new(2, 2).unwrap();
        let a = FqPoly::new(&f, vec![FqElem(2), FqElem(3), FqElem(0), FqElem(1), FqElem(1)]);
        let b = FqPoly::new(&f, vec![FqElem(1), FqElem(2), FqElem(3)]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
        let g = a.mul(&b).gcd(&b.mul(&b));
        assert_eq!(g, b.mul(&a.gcd(&b)).make_monic());
        assert!(matches!(a.divmod(&FqPoly::zero(&f)), Err(Error::DivisionByZeroPoly)));
    }
}
