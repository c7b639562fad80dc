//! Common interface of the coefficient domains used by series and Ore algebras.

use crate::error::Result;

pub trait CoeffRing: Clone + std::fmt::Debug + PartialEq {
    /// Additive identity in the same domain (same field, variable, truncation context).
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Zero with no truncation tail; differs from `is_zero` for truncated series.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    /// Size of the constant field, the q of the q-power Frobenius.
    fn q_hint(&self) -> u32;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// The q-power Frobenius.
    fn frobenius(&self) -> Self;
    /// Multiplicative inverse when it exists in the domain.
    fn try_inv(&self) -> Result<Self>;
    /// Short domain tag used in serialized output.
    fn domain_tag(&self) -> &'static str;

    fn frobenius_pow(&self, k: u32) -> Self {
        let mut x = self.clone();
        for _ in 0..k {
            x = x.frobenius();
        }
        x
    }

    fn pow(&self, mut k: u64) -> Self {
        let mut r = self.one_like();
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
}
