//! Newton polygons of series with coefficients in a valued field, and the
//! Artin–Schreier equation X^q − X = M.
//!
//! Convention: a side of slope s and horizontal length r accounts for r
//! zeros of valuation −s.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;

pub type Q = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Side {
    pub slope: Q,
    pub length: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub vertices: Vec<(i64, Q)>,
    pub sides: Vec<Side>,
}

fn cross(o: &(i64, Q), a: &(i64, Q), b: &(i64, Q)) -> Q {
    (a.1 - o.1) * Q::from(b.0 - o.0) - (b.1 - o.1) * Q::from(a.0 - o.0)
}

/// Lower convex hull of the points (i, v_i); `None` valuations (zero
/// coefficients) are skipped. Collinear points are merged into one side.
pub fn newton_polygon(points: &[(i64, Option<Q>)]) -> Result<NewtonPolygon> {
    let mut pts: Vec<(i64, Q)> = points.iter().filter_map(|&(i, v)| v.map(|v| (i, v))).collect();
    if pts.is_empty() {
        return Err(Error::EmptyInput);
    }
    pts.sort();
    pts.dedup_by(|b, a| a.0 == b.0);
    let mut hull: Vec<(i64, Q)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) >= Q::from(0) {
            hull.pop();
        }
        hull.push(p);
    }
    let sides = hull
        .windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            Side { slope: (w[1].1 - w[0].1) / Q::from(len), length: len }
        })
        .collect();
    Ok(NewtonPolygon { vertices: hull, sides })
}

impl NewtonPolygon {
    pub fn slopes(&self) -> Vec<Q> {
        self.sides.iter().map(|s| s.slope).collect()
    }
    /// Slopes repeated according to horizontal length.
    pub fn slope_multiset(&self) -> Vec<Q> {
        self.sides.iter().flat_map(|s| std::iter::repeat_n(s.slope, s.length as usize)).collect()
    }
}

/// Number of zeros of valuation m, i.e. the length of the side of slope −m.
pub fn zero_count_at_valuation(np: &NewtonPolygon, m: Q) -> i64 {
    np.sides.iter().find(|s| s.slope == -m).map_or(0, |s| s.length)
}

/// Newton polygon of Σ f_i X^i from a list of series coefficients.
pub fn newton_polygon_of_series(coeffs: &[(i64, &LaurentSeries)]) -> Result<NewtonPolygon> {
    let pts: Vec<(i64, Option<Q>)> = coeffs.iter().map(|(i, c)| (*i, c.val().map(Q::from))).collect();
    newton_polygon(&pts)
}

/// H = −Σ_{i≥0} M^{q^i}, the solution of X^q − X = M with |H| = |M|,
/// known to the truncation of M. Requires v(M) > 0.
pub fn artin_schreier_solve(m: &LaurentSeries) -> Result<LaurentSeries> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let v = m.val().unwrap();
    if v <= 0 {
        return Err(Error::NotContracting(format!("v(M) = {v}")));
    }
    let t = m.trunc().ok_or_else(|| {
        Error::PrecisionExhausted("an exact right-hand side gives an infinite series; truncate it first".into())
    })?;
    let mut h = LaurentSeries::zero(m.field(), m.var(), Some(t));
    let mut term = m.clone();
    while term.val_bound().is_some_and(|vb| vb < t) {
        h = h.try_sub(&term)?;
        term = term.frobenius_pow_capped(1, None).with_trunc(t);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FqElem, FqField};
    use crate::laurent::Var;
    use crate::ring::CoeffRing;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn exp_c_slopes() {
        for qq in [2i64, 3, 4, 5] {
            let pts: Vec<(i64, Option<Q>)> = (0..5).map(|i| (qq.pow(i), Some(Q::from(i as i64 * qq.pow(i))))).collect();
            let np = newton_polygon(&pts).unwrap();
            let expect: Vec<Q> = (0..4).map(|i| Q::from(i) + q(qq, qq - 1)).collect();
            assert_eq!(np.slopes(), expect);
            assert_eq!(zero_count_at_valuation(&np, -q(qq, qq - 1)), qq - 1);
            assert_eq!(zero_count_at_valuation(&np, -(Q::from(1) + q(qq, qq - 1))), qq * (qq - 1));
            assert_eq!(zero_count_at_valuation(&np, Q::from(7)), 0);
        }
    }

    #[test]
    fn artin_schreier_polygon_and_constant() {
        // X^q − X − M with v(M) = 2, q = 3
        let np = newton_polygon(&[(0, Some(Q::from(2))), (1, Some(Q::from(0))), (3, Some(Q::from(0)))]).unwrap();
        assert_eq!(zero_count_at_valuation(&np, Q::from(2)), 1);
        assert_eq!(zero_count_at_valuation(&np, Q::from(0)), 2);
        let c = newton_polygon(&[(0, Some(Q::from(3)))]).unwrap();
        assert!(c.sides.is_empty());
        assert_eq!(c.vertices.len(), 1);
        assert!(matches!(newton_polygon(&[(0, None)]), Err(Error::EmptyInput)));
    }

    #[test]
    fn collinear_points_merge() {
        let np = newton_polygon(&[(0, Some(Q::from(0))), (1, Some(Q::from(1))), (2, Some(Q::from(2)))]).unwrap();
        assert_eq!(np.sides, vec![Side { slope: Q::from(1), length: 2 }]);
    }

    #[test]
    fn artin_schreier_q2() {
        let f = FqField::new(2, 1).unwrap();
        let m = LaurentSeries::monomial(&f, Var::InvTheta, FqElem::ONE, 1).with_trunc(20);
        let h = artin_schreier_solve(&m).unwrap();
        let expect: Vec<i64> = h.terms().map(|(k, _)| k).collect();
        assert_eq!(expect, vec![1, 2, 4, 8, 16]);
        let lhs = h.frobenius().sub(&h);
        assert_eq!(lhs.sub(&m).val(), None);
        assert!(matches!(
            artin_schreier_solve(&LaurentSeries::one(&f, Var::InvTheta).with_trunc(4)),
            Err(Error::NotContracting(_))
        ));
    }
}
