//! Hodge polynomials of Hilbert schemes of points via the product formula
//!
//! `sum_n e(Hilb^n X) q^n = prod_{n>=1} prod_{s,t} (1 - x^{s+n-1} y^{t+n-1} q^n)^{(-1)^{s+t+1} h^{s,t}}`.

use crate::lattice::SurfaceLattice;
use crate::qseries::{HodgePoly, QExp, QSeries};

/// `sum_n e(Hilb^n(X); x, y) q^n` truncated to `cap`.
///
/// Factors are multiplied in increasing `n`, truncating after each one.
pub fn hilb_series(lattice: &SurfaceLattice, cap: QExp) -> QSeries {
    let mut out = QSeries::one(cap);
    if cap.num() < 0 {
        return QSeries::zero(cap);
    }
    for n in 1..=cap.floor() {
        let e = QExp::integer(n);
        for (&(s, t), &h) in &lattice.hodge {
            if h == 0 {
                continue;
            }
            let (s, t) = (i64::from(s), i64::from(t));
            let u = QSeries::monomial(e, HodgePoly::monomial(s + n - 1, t + n - 1, 1), cap);
            let sign_odd = (s + t) % 2 == 1;
            // exponent (-1)^{s+t+1} h: negative for even s+t
            let multiplicity = h.unsigned_abs() as u32;
            let factor =
                if sign_odd == (h > 0) { QSeries::one(cap).sub(&u) } else { u.geom().expect("positive valuation") };
            for _ in 0..multiplicity {
                out = out.mul(&factor);
            }
        }
    }
    out
}

/// `prod_{n>=1} (1 - (xy)^{2n} q^n)` truncated to `cap`.
pub fn t2_product(cap: QExp) -> QSeries {
    let mut out = QSeries::one(cap);
    for n in 1..=cap.floor() {
        let factor = QSeries::one(cap).sub(&QSeries::monomial(QExp::integer(n), HodgePoly::t_power(2 * n), cap));
        out = out.mul(&factor);
    }
    out
}

/// Both sides of the Hilbert-series ratio between the blowup and `F1` in
/// cross-multiplied form:
/// `H~(xyq) * prod (1 - (xy)^{2n} q^n)` and `H(xyq)`.
pub fn hilb_ratio_sides(cap: QExp) -> (QSeries, QSeries) {
    let f1 = SurfaceLattice::f1();
    let blown = f1.blowup();
    let lhs = hilb_series(&blown, cap).subst_q_to_tq().expect("integer exponents").mul(&t2_product(cap));
    let rhs = hilb_series(&f1, cap).subst_q_to_tq().expect("integer exponents");
    (lhs, rhs)
}

pub fn hilb_ratio_check(cap: QExp) -> bool {
    let (lhs, rhs) = hilb_ratio_sides(cap);
    lhs.agrees_with(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn constant_term_is_one() {
        let s = hilb_series(&SurfaceLattice::f1(), QExp::integer(3));
        assert!(s.coeff(QExp::ZERO).is_one());
        assert!(hilb_series(&SurfaceLattice::f1(), QExp::ZERO) == QSeries::one(QExp::ZERO));
    }

    #[test]
    fn first_coefficient_is_surface_hodge_polynomial() {
        let q1 = QExp::integer(1);
        let f1 = SurfaceLattice::f1();
        assert_eq!(hilb_series(&f1, QExp::integer(4)).coeff(q1), HodgePoly::from_t_coeffs([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(
            hilb_series(&f1.blowup(), QExp::integer(4)).coeff(q1),
            HodgePoly::from_t_coeffs([(0, 1), (1, 3), (2, 1)])
        );
    }

    #[test]
    fn second_coefficient_f1() {
        // Hilb^2 of F1: Poincare polynomial 1 + 3t + 6t^2 + 3t^3 + t^4 by direct expansion
        // of 1/(1-q) 1/(1-tq)^2 1/(1-t^2 q) 1/(1-tq^2) 1/(1-t^2q^2)^2 1/(1-t^3q^2).
        let s = hilb_series(&SurfaceLattice::f1(), QExp::integer(2));
        assert_eq!(s.coeff(QExp::integer(2)), HodgePoly::from_t_coeffs([(0, 1), (1, 3), (2, 6), (3, 3), (4, 1)]));
    }

    #[test]
    fn ratio_small_caps() {
        assert!(hilb_ratio_check(QExp::ZERO));
        assert!(hilb_ratio_check(QExp::integer(5)));
    }

    #[test]
    fn euler_specialization() {
        // prod (1 - q^n)^{-4} coefficients
        let expect = [1, 4, 14, 40, 105, 252, 574];
        let s = hilb_series(&SurfaceLattice::f1(), QExp::integer(6)).specialize_xy1();
        for (n, c) in expect.iter().enumerate() {
            assert_eq!(s.coeff(QExp::integer(n as i64)).coeff(0, 0), BigInt::from(*c));
        }
    }
}
