//! Property tests for the algebraic invariants and the serialization formats.

use crate::carlitz::{brackets, carlitz_action, exp_c, log_c, BracketCache};
use crate::geometry::{
    cocycle_digits, homography, invariance_sides, random_matrix, random_point, CInfPoint, PointField,
};
use crate::serial::{power_from_json, power_to_json, twisted_from_json, twisted_to_json};
use crate::uexp::{u_sub_a, UExpEngine};
use crate::{
    CoeffRing, Field, FqElem, FqField, FqPoly, LaurentSeries, OuterVar, PowerSeries, RatFunc, TwistedSeries, Var,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(pe: (u64, u64)) -> Field {
    FqField::new(pe.0, pe.1).unwrap()
}

fn any_field() -> impl Strategy<Value = (u64, u64)> {
    prop_oneof![Just((2, 1)), Just((3, 1)), Just((2, 2)), Just((5, 1))]
}

fn small_field() -> impl Strategy<Value = (u64, u64)> {
    prop_oneof![Just((2, 1)), Just((3, 1))]
}

/// Raw element indices; reduced mod q once the field is known.
fn raw(len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), 0..=len)
}

fn elems(f: &Field, raw: &[u8]) -> Vec<FqElem> {
    raw.iter().map(|&r| FqElem((r as u32 % f.q()) as u8)).collect()
}

fn poly(f: &Field, raw: &[u8]) -> FqPoly {
    FqPoly::new(f, elems(f, raw))
}

fn monic(f: &Field, raw: &[u8]) -> FqPoly {
    let mut c = elems(f, raw);
    c.push(FqElem::ONE);
    FqPoly::new(f, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(pe in any_field(), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let f = field(pe);
        let [a, b, c] = [a, b, c].map(|x| FqElem((x as u32 % f.q()) as u8));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
        }
    }

    #[test]
    fn poly_division(pe in any_field(), a in raw(12), b in raw(6)) {
        let f = field(pe);
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.is_zero() || rem.deg() < b.deg());
    }

    #[test]
    fn poly_text_round_trip(pe in any_field(), a in raw(10)) {
        let f = field(pe);
        let a = poly(&f, &a);
        prop_assert_eq!(FqPoly::from_text(&f, &a.to_text()).unwrap(), a);
    }

    #[test]
    fn laurent_json_round_trip(
        pe in any_field(),
        var in prop_oneof![Just(Var::InvTheta), Just(Var::InvS), Just(Var::PiRoot(2))],
        val in -8i64..8,
        c in raw(12),
        tail in prop::option::of(0i64..6),
    ) {
        let f = field(pe);
        let coeffs = elems(&f, &c);
        let trunc = tail.map(|t| val + coeffs.len() as i64 + t);
        let s = LaurentSeries::new(&f, var, val, coeffs, trunc);
        let text = s.to_json().to_string();
        let back = LaurentSeries::from_json(&f, &serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.to_json().to_string(), text);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn laurent_inverse(pe in any_field(), val in -4i64..4, c in raw(15)) {
        let f = field(pe);
        let mut coeffs = elems(&f, &c);
        coeffs.insert(0, FqElem::ONE);
        let n = coeffs.len() as i64;
        let x = LaurentSeries::new(&f, Var::InvTheta, val, coeffs, Some(val + n));
        let prod = x.try_mul(&x.inv().unwrap()).unwrap();
        let diff = prod.try_sub(&LaurentSeries::one(&f, Var::InvTheta)).unwrap();
        prop_assert!(diff.is_zero());
        prop_assert_eq!(diff.trunc(), Some(n));
    }

    #[test]
    fn laurent_frobenius_additive(pe in any_field(), a in raw(10), b in raw(10)) {
        let f = field(pe);
        let x = LaurentSeries::new(&f, Var::InvTheta, -2, elems(&f, &a), Some(8));
        let y = LaurentSeries::new(&f, Var::InvTheta, 1, elems(&f, &b), Some(12));
        let lhs = x.try_add(&y).unwrap().frobenius_pow(1);
        let rhs = x.frobenius_pow(1).try_add(&y.frobenius_pow(1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn carlitz_action_is_a_ring_map(pe in any_field(), a in raw(4), b in raw(4)) {
        let f = field(pe);
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        let (ca, cb) = (carlitz_action(&a), carlitz_action(&b));
        let cab = carlitz_action(&a.mul(&b));
        prop_assert_eq!(&ca.mul(&cb).unwrap(), &cab);
        prop_assert_eq!(&cb.mul(&ca).unwrap(), &cab);
        prop_assert_eq!(ca.add(&cb).unwrap(), carlitz_action(&a.add(&b)));
        prop_assert_eq!(cab.tau_degree(), a.mul(&b).deg());
        if !a.is_zero() {
            prop_assert_eq!(ca.coeff(0), &a);
        }
    }

    #[test]
    fn ore_inverse_and_associativity(pe in small_field(), c in prop::collection::vec(raw(3), 1..5), n in 1usize..6) {
        let f = field(pe);
        let zero = RatFunc::zero(&f);
        let mut coeffs: Vec<RatFunc> = c.iter().map(|r| RatFunc::new(poly(&f, r), FqPoly::one(&f)).unwrap()).collect();
        coeffs[0] = RatFunc::new(FqPoly::one(&f), FqPoly::from_ints(&f, &[1, 1])).unwrap();
        let x = TwistedSeries::new(coeffs, Some(n), zero.clone());
        let y = x.invert(n).unwrap();
        let one = TwistedSeries::one(&zero).with_trunc(n);
        prop_assert_eq!(&x.mul(&y).unwrap(), &one);
        prop_assert_eq!(&y.mul(&x).unwrap(), &one);
        let t = TwistedSeries::tau(&zero);
        prop_assert_eq!(x.mul(&y).unwrap().mul(&t).unwrap(), x.mul(&y.mul(&t).unwrap()).unwrap());
    }

    #[test]
    fn twisted_json_round_trip(pe in any_field(), c in prop::collection::vec(raw(4), 0..5), exact in any::<bool>()) {
        let f = field(pe);
        let zero = FqPoly::zero(&f);
        let coeffs: Vec<FqPoly> = c.iter().map(|r| poly(&f, r)).collect();
        let n = coeffs.len();
        let x = TwistedSeries::new(coeffs, if exact { None } else { Some(n) }, zero.clone());
        let v = twisted_to_json(&x);
        prop_assert_eq!(twisted_from_json(&zero, &v).unwrap(), x);
        prop_assert!(twisted_from_json(&RatFunc::zero(&f), &v).is_err());
    }

    #[test]
    fn power_json_round_trip(pe in any_field(), c in prop::collection::vec(raw(6), 1..6)) {
        let f = field(pe);
        let zero = LaurentSeries::zero(&f, Var::InvTheta, None);
        let coeffs: Vec<LaurentSeries> = c.iter().enumerate()
            .map(|(i, r)| LaurentSeries::new(&f, Var::InvTheta, -(i as i64), elems(&f, r), Some(10)))
            .collect();
        let n = coeffs.len();
        let s = PowerSeries::new(OuterVar::T, coeffs, n, zero.clone());
        prop_assert_eq!(power_from_json(&zero, &power_to_json(&s)).unwrap(), s);
    }

    #[test]
    fn power_series_inverse(pe in any_field(), c in raw(10)) {
        let f = field(pe);
        let zero = FqPoly::zero(&f);
        let mut coeffs: Vec<FqPoly> = elems(&f, &c).into_iter().map(|e| FqPoly::constant(&f, e)).collect();
        coeffs.insert(0, FqPoly::one(&f));
        let n = coeffs.len();
        let s = PowerSeries::new(OuterVar::U, coeffs, n, zero.clone());
        let prod = s.try_mul(&s.inv().unwrap()).unwrap();
        prop_assert_eq!(prod, PowerSeries::one(OuterVar::U, n, &zero));
    }

    #[test]
    fn carlitz_from_exponential(pe in small_field(), a in raw(4)) {
        // C_a = exp_C·a·log_C mod τ^{deg a + 1}
        let f = field(pe);
        let a = monic(&f, &a);
        let n = a.deg().unwrap() + 1;
        let mut cache = BracketCache::new(&f);
        let e = exp_c(&mut cache, n);
        let l = log_c(&mut cache, n);
        let ar = TwistedSeries::constant(RatFunc::new(a.clone(), FqPoly::one(&f)).unwrap());
        let got = e.mul(&ar).unwrap().mul(&l).unwrap();
        let ca = carlitz_action(&a);
        for i in 0..n {
            prop_assert_eq!(got.coeff(i).as_poly(), Some(ca.coeff(i)));
        }
        prop_assert_eq!(e.mul(&l).unwrap(), TwistedSeries::one(&RatFunc::zero(&f)).with_trunc(n));
    }

    #[test]
    fn bracket_recursions(pe in any_field(), i in 1usize..4) {
        let f = field(pe);
        let q = f.q() as usize;
        let c = brackets(&f, i);
        let th = FqPoly::theta(&f);
        let b = FqPoly::monomial(&f, FqElem::ONE, q.pow(i as u32)).sub(&th);
        prop_assert_eq!(c.d(i), &b.mul(&c.d(i - 1).pow(q as u64)));
        prop_assert_eq!(c.l(i), &b.neg().mul(c.l(i - 1)));
        prop_assert_eq!(c.d(i).deg(), Some(i * q.pow(i as u32)));
    }

    #[test]
    fn u_a_valuation(pe in small_field(), a in raw(1)) {
        // u_a ∈ u^{|a|}(1 + u A[[u]]) for monic a
        let f = field(pe);
        let a = monic(&f, &a);
        let qd = (f.q() as usize).pow(a.deg().unwrap() as u32);
        let s = u_sub_a(&a, qd + 8).unwrap();
        prop_assert_eq!(s.val(), Some(qd));
        prop_assert!(s.coeff(qd).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariance_law_and_cocycle(pe in small_field(), seed in any::<u64>(), m in 1u32..=2, e in 1u32..=3) {
        prop_assume!(m * e > 1);
        let base = field(pe);
        let pf = PointField::new(&base, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_point(&pf, e, 30 * e as i64, &mut rng);
        let g = random_matrix(&base, 2, 2, &mut rng);
        let d = random_matrix(&base, 1, 2, &mut rng);
        if let Ok((lhs, rhs)) = invariance_sides(&g, &z) {
            prop_assert_eq!(lhs, rhs);
        }
        if let Ok(c) = cocycle_digits(&g, &d, &z) {
            prop_assert!(c.is_some());
        }
        // (γδ)z = γ(δz) to the known digits
        if let (Ok(a), Ok(b)) = (homography(&g.mul(&d), &z), homography(&d, &z).and_then(|w| homography(&g, &w))) {
            prop_assert!(a.series().try_sub(b.series()).unwrap().is_zero());
        }
    }

    #[test]
    fn point_json_round_trip(pe in small_field(), seed in any::<u64>(), m in 1u32..=2, e in 1u32..=3) {
        let base = field(pe);
        let pf = PointField::new(&base, m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_point(&pf, e, 20, &mut rng);
        let text = z.to_json().to_string();
        let back = CInfPoint::from_json(&pf, &serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.to_json().to_string(), text);
    }
}

#[test]
fn h_respects_its_type() {
    for (p, order) in [(2, 24), (3, 24)] {
        let f = FqField::new(p, 1).unwrap();
        let eng = UExpEngine::new(&f, order, 10).unwrap();
        let h = eng.h_lopez();
        assert_eq!(h.type_gap_violation(f.q()), None);
        let d = eng.delta().unwrap();
        assert_eq!(d.type_gap_violation(f.q()), None);
        assert!(d.is_cusp());
    }
}

#[test]
fn coeff_ring_frobenius_on_polys() {
    let f = FqField::new(3, 1).unwrap();
    let a = FqPoly::from_ints(&f, &[1, 2, 1]);
    assert_eq!(CoeffRing::frobenius(&a), a.pow(3));
}
