//! Finite fields F_q with q = p^e <= 256.
//!
//! Elements are stored as a single byte: the index sum_i c_i p^i of the
//! coordinate vector (c_0, .., c_{e-1}) in the power basis of the modulus.
//! For prime fields the index is the residue itself.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub u8);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Field = Arc<FqField>;

pub struct FqField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(p={}, e={}, modulus={:?})", self.q, self.p, self.e, self.modulus)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FqField {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// polynomials over F_p as coefficient vectors, low to high
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            let k = top - dm + i;
            r[k] = (r[k] + p * p - c * mi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let mut r = 1u32;
    let mut b = a % p;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        k >>= 1;
    }
    r
}

fn monic_from_index(idx: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(deg as usize + 1);
    let mut x = idx;
    for _ in 0..deg {
        v.push(x % p);
        x /= p;
    }
    v.push(1);
    v
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = (m.len() - 1) as u32;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d) {
            let f = monic_from_index(idx, d, p);
            if fp_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FqField {
    /// Builds F_{p^e} using the smallest monic irreducible modulus, where
    /// candidates are ordered by the integer sum_{i<e} c_i p^i.
    pub fn new(p: u64, e: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::UnsupportedSize { p, e });
        }
        let q = p.checked_pow(e as u32).filter(|&q| q <= 256).ok_or(Error::UnsupportedSize { p, e })?;
        let (p, e, q) = (p as u32, e as u32, q as u32);
        let modulus = (0..p.pow(e))
            .map(|idx| monic_from_index(idx, e, p))
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");
        let coords = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut t = x;
            for _ in 0..e {
                v.push(t % p);
                t /= p;
            }
            v
        };
        let from_coords = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..q {
            let ca = coords(a);
            for b in 0..q {
                let cb = coords(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_coords(&s) as u8;
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in ca.iter().enumerate() {
                    for (j, y) in cb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = fp_rem(&prod, &modulus, p);
                r.resize(e as usize, 0);
                mul[(a * q + b) as usize] = from_coords(&r) as u8;
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u8;
            }
        }
        Ok(Arc::new(FqField { p, e, q, modulus, add, mul, neg, inv }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Monic modulus over F_p, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut t = a.0 as u32;
        for _ in 0..self.e {
            v.push(t % self.p);
            t /= self.p;
        }
        v
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<FqElem> {
        if c.len() != self.e as usize || c.iter().any(|&x| x >= self.p) {
            return Err(Error::Invalid(format!("bad coordinates {c:?} for F_{}", self.q)));
        }
        Ok(FqElem(c.iter().rev().fold(0, |acc, &x| acc * self.p + x) as u8))
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(|i| FqElem(i as u8))
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.add[a.index() * self.q as usize + b.index()])
    }
    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.neg[a.index()])
    }
    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(self.mul[a.index() * self.q as usize + b.index()])
    }
    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        (!a.is_zero()).then(|| FqElem(self.inv[a.index()]))
    }
    pub fn pow(&self, a: FqElem, mut k: u64) -> FqElem {
        let mut r = FqElem::ONE;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }
    /// Lies in the subfield with `sub_q` elements.
    pub fn in_subfield(&self, a: FqElem, sub_q: u32) -> bool {
        self.pow(a, sub_q as u64) == a
    }

    /// Images of the elements of `small` under an embedding into `self`,
    /// obtained by sending the generator of `small` to a root of its modulus.
    pub fn embedding_of(&self, small: &FqField) -> Result<Vec<FqElem>> {
        if small.p != self.p || !self.e.is_multiple_of(small.e) {
            return Err(Error::FieldMismatch);
        }
        let eval = |beta: FqElem, c: &[u32]| {
            c.iter().rev().fold(FqElem::ZERO, |acc, &ci| self.add(self.mul(acc, beta), self.from_int(ci as i64)))
        };
        let beta = self.elements().find(|&b| eval(b, &small.modulus) == FqElem::ZERO).ok_or(Error::FieldMismatch)?;
        Ok(small.elements().map(|a| eval(beta, &small.coords(a))).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(FqField::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FqField::new(3, 1).unwrap().q(), 3);
        assert_eq!(FqField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FqField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert!(matches!(FqField::new(4, 1), Err(Error::NonPrimeCharacteristic(4))));
        assert!(matches!(FqField::new(2, 9), Err(Error::UnsupportedSize { .. })));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (7, 1)] {
            let f = FqField::new(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), FqElem::ONE);
                }
                assert_eq!(f.pow(a, f.q() as u64), a);
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = FqField::new(2, 2).unwrap();
        let big = FqField::new(2, 4).unwrap();
        let emb = big.embedding_of(&small).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb[small.mul(a, b).index()], big.mul(emb[a.index()], emb[b.index()]));
                assert_eq!(emb[small.add(a, b).index()], big.add(emb[a.index()], emb[b.index()]));
            }
            assert!(big.in_subfield(emb[a.index()], 4));
        }
    }
}
