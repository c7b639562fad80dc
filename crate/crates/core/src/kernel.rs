//! Dense coefficient-vector kernels shared by polynomials and series.

use crate::field::{FqElem, FqField};

const KARATSUBA_CUTOFF: usize = 48;

fn nonzeros(a: &[FqElem]) -> usize {
    a.iter().filter(|c| !c.is_zero()).count()
}

/// First `n` coefficients of a*b computed by the schoolbook method,
/// skipping zero entries of the sparser operand.
pub(crate) fn mul_school(f: &FqField, a: &[FqElem], b: &[FqElem], n: usize) -> Vec<FqElem> {
    if a.is_empty() || b.is_empty() || n == 0 {
        return Vec::new();
    }
    let (a, b) = if nonzeros(a) <= nonzeros(b) { (a, b) } else { (b, a) };
    let len = n.min(a.len() + b.len() - 1);
    if f.is_prime_field() {
        let p = f.p() as u64;
        let mut acc = vec![0u64; len];
        for (i, &ai) in a.iter().enumerate().take(len) {
            if ai.is_zero() {
                continue;
            }
            let x = ai.0 as u64;
            let top = b.len().min(len - i);
            for (slot, bj) in acc[i..i + top].iter_mut().zip(&b[..top]) {
                *slot += x * bj.0 as u64;
            }
        }
        acc.into_iter().map(|v| FqElem((v % p) as u8)).collect()
    } else {
        let mut out = vec![FqElem::ZERO; len];
        for (i, &ai) in a.iter().enumerate().take(len) {
            if ai.is_zero() {
                continue;
            }
            let top = b.len().min(len - i);
            for (slot, &bj) in out[i..i + top].iter_mut().zip(&b[..top]) {
                *slot = f.add(*slot, f.mul(ai, bj));
            }
        }
        out
    }
}

fn add_into(f: &FqField, dst: &mut [FqElem], src: &[FqElem]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.add(*d, s);
    }
}

fn sub_into(f: &FqField, dst: &mut [FqElem], src: &[FqElem]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = f.sub(*d, s);
    }
}

fn sum(f: &FqField, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    let mut out = vec![FqElem::ZERO; a.len().max(b.len())];
    add_into(f, &mut out, a);
    add_into(f, &mut out, b);
    out
}

fn karatsuba(f: &FqField, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return mul_school(f, a, b, usize::MAX);
    }
    let h = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(h.min(a.len()));
    let (b0, b1) = b.split_at(h.min(b.len()));
    let z0 = karatsuba(f, a0, b0);
    let z2 = karatsuba(f, a1, b1);
    let mut z1 = karatsuba(f, &sum(f, a0, a1), &sum(f, b0, b1));
    sub_into(f, &mut z1, &z0);
    sub_into(f, &mut z1, &z2);
    let mut out = vec![FqElem::ZERO; a.len() + b.len() - 1];
    add_into(f, &mut out, &z0);
    add_into(f, &mut out[h..], &z1);
    add_into(f, &mut out[2 * h..], &z2);
    out
}

/// First `n` coefficients of the product (all of them for `usize::MAX`).
pub(crate) fn mul_trunc(f: &FqField, a: &[FqElem], b: &[FqElem], n: usize) -> Vec<FqElem> {
    if a.is_empty() || b.is_empty() || n == 0 {
        return Vec::new();
    }
    let full = a.len() + b.len() - 1;
    let dense = a.len().min(b.len()) >= KARATSUBA_CUTOFF && 4 * nonzeros(a) > a.len() && 4 * nonzeros(b) > b.len();
    if dense && n >= full.div_ceil(2) {
        let mut out = karatsuba(f, a, b);
        out.truncate(n);
        out
    } else if dense {
        let a = &a[..a.len().min(n)];
        let b = &b[..b.len().min(n)];
        let mut out = karatsuba(f, a, b);
        out.truncate(n);
        out
    } else {
        mul_school(f, a, b, n)
    }
}

/// First `n` coefficients of a/b, where b[0] is a unit.
pub(crate) fn series_div(f: &FqField, a: &[FqElem], b: &[FqElem], n: usize) -> Vec<FqElem> {
    let b0inv = f.inv(b[0]).expect("unit constant term");
    let mut out = vec![FqElem::ZERO; n];
    let bnz: Vec<(usize, FqElem)> = b.iter().copied().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
    if f.is_prime_field() {
        let p = f.p() as u64;
        let binv = b0inv.0 as u64;
        let negb: Vec<(usize, u64)> = bnz.iter().map(|&(j, c)| (j, p - c.0 as u64)).collect();
        for k in 0..n {
            let mut acc = a.get(k).map_or(0, |c| c.0 as u64);
            for &(j, nb) in &negb {
                if j > k {
                    break;
                }
                acc += nb * out[k - j].0 as u64;
            }
            out[k] = FqElem((acc % p * binv % p) as u8);
        }
    } else {
        for k in 0..n {
            let mut acc = a.get(k).copied().unwrap_or(FqElem::ZERO);
            for &(j, bj) in &bnz {
                if j > k {
                    break;
                }
                acc = f.sub(acc, f.mul(bj, out[k - j]));
            }
            out[k] = f.mul(acc, b0inv);
        }
    }
    out
}

pub(crate) fn trim(v: &mut Vec<FqElem>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn karatsuba_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FqField::new(p, e).unwrap();
            for _ in 0..10 {
                let la = rng.gen_range(1..300);
                let lb = rng.gen_range(1..300);
                let a: Vec<FqElem> = (0..la).map(|_| FqElem(rng.gen_range(0..f.q()) as u8)).collect();
                let b: Vec<FqElem> = (0..lb).map(|_| FqElem(rng.gen_range(0..f.q()) as u8)).collect();
                assert_eq!(karatsuba(&f, &a, &b), mul_school(&f, &a, &b, usize::MAX));
                let n = rng.gen_range(1..la + lb);
                assert_eq!(mul_trunc(&f, &a, &b, n), mul_school(&f, &a, &b, n));
            }
        }
    }
}
