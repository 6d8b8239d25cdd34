use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{HodgePoly, QExp};
use crate::par::{self, Strategy};
use crate::{Error, Result};

/// A truncated series `sum_e c_e q^e` known exactly for every exponent `e <= cap`.
///
/// Invariants: exponents are non-negative and at most `cap`, and no stored
/// coefficient is zero. Binary operations take the smaller cap of their
/// operands, which is exact because no operand has negative exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    cap: QExp,
    terms: BTreeMap<QExp, HodgePoly>,
}

impl QSeries {
    pub fn zero(cap: QExp) -> Self {
        QSeries { cap, terms: BTreeMap::new() }
    }

    pub fn one(cap: QExp) -> Self {
        Self::monomial(QExp::ZERO, HodgePoly::one(), cap)
    }

    /// `coeff * q^e`, truncated to `cap`.
    ///
    /// # Panics
    /// If `e` is negative.
    pub fn monomial(e: QExp, coeff: HodgePoly, cap: QExp) -> Self {
        assert!(e.num() >= 0, "negative q-exponent {e}");
        let mut s = Self::zero(cap);
        s.add_term(e, coeff);
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing repeated
    /// exponents and dropping everything above `cap`.
    pub fn try_from_terms(cap: QExp, terms: impl IntoIterator<Item = (QExp, HodgePoly)>) -> Result<Self> {
        let mut s = Self::zero(cap);
        for (e, c) in terms {
            if e.num() < 0 {
                return Err(Error::NegativeExponent(e.to_string()));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// Adds `coeff * q^e` in place; ignored above the cap.
    pub(crate) fn add_term(&mut self, e: QExp, coeff: HodgePoly) {
        debug_assert!(e.num() >= 0);
        if e > self.cap || coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn cap(&self) -> QExp {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&QExp, &HodgePoly)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: QExp) -> HodgePoly {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<QExp> {
        self.terms.keys().next().copied()
    }

    /// Drops everything above `cap`; the result cap is `min(self.cap, cap)`.
    pub fn truncate(&self, cap: QExp) -> Self {
        let cap = cap.min(self.cap);
        QSeries { cap, terms: self.terms.range(..=cap).map(|(e, c)| (*e, c.clone())).collect() }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let mut out = self.truncate(other.cap);
        for (e, c) in other.terms.range(..=out.cap) {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QSeries {
        QSeries { cap: self.cap, terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }

    /// Multiplies every coefficient by a polynomial.
    pub fn scale(&self, p: &HodgePoly) -> QSeries {
        let mut out = QSeries::zero(self.cap);
        for (e, c) in &self.terms {
            out.add_term(*e, c * p);
        }
        out
    }

    /// Multiplies by the exact monomial `(xy)^t_pow q^e`. The cap moves up by
    /// `e`, since the product is known exactly that much further.
    pub fn shift(&self, e: QExp, t_pow: i64) -> QSeries {
        let cap = self.cap + e;
        let mut out = QSeries::zero(cap);
        for (k, c) in &self.terms {
            out.add_term(*k + e, c.shift(t_pow, t_pow));
        }
        out
    }

    /// Cauchy product truncated to the smaller cap, using the default [`Strategy`].
    pub fn mul(&self, other: &QSeries) -> QSeries {
        self.mul_with(other, Strategy::default())
    }

    pub fn mul_with(&self, other: &QSeries, strategy: Strategy) -> QSeries {
        // Tiny operands are not worth the fork-join overhead.
        if !strategy.is_parallel() || self.len().min(other.len()) < 4 {
            return self.mul_sequential(other);
        }
        let cap = self.cap.min(other.cap);
        let lhs: Vec<(QExp, &HodgePoly)> = self.terms.range(..=cap).map(|(e, c)| (*e, c)).collect();
        let rhs: Vec<(QExp, &HodgePoly)> = other.terms.range(..=cap).map(|(e, c)| (*e, c)).collect();
        let terms = par::fold_reduce(
            strategy,
            &lhs,
            BTreeMap::new,
            |mut acc: BTreeMap<QExp, HodgePoly>, &(ea, pa)| {
                for &(eb, pb) in &rhs {
                    let e = ea + eb;
                    if e > cap {
                        break;
                    }
                    acc.entry(e).or_default().add_product(pa, pb);
                }
                acc
            },
            merge_terms,
        );
        let mut out = QSeries::zero(cap);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul_sequential(&self, other: &QSeries) -> QSeries {
        let cap = self.cap.min(other.cap);
        let mut acc: BTreeMap<QExp, HodgePoly> = BTreeMap::new();
        for (&ea, pa) in self.terms.range(..=cap) {
            for (&eb, pb) in other.terms.range(..=cap) {
                let e = ea + eb;
                if e > cap {
                    break;
                }
                acc.entry(e).or_default().add_product(pa, pb);
            }
        }
        let mut out = QSeries::zero(cap);
        for (e, c) in acc {
            out.add_term(e, c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> QSeries {
        let mut out = QSeries::one(self.cap);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `1 / (1 - self) = sum_k self^k`, truncated to `self.cap`.
    pub fn geom(&self) -> Result<QSeries> {
        let Some(v) = self.valuation() else {
            return Ok(QSeries::one(self.cap));
        };
        if v.num() <= 0 {
            return Err(Error::NonPositiveValuation { found: v.to_string() });
        }
        let mut out = QSeries::one(self.cap);
        let mut power = self.clone();
        while !power.is_zero() {
            out = out.add(&power);
            power = power.mul(self);
        }
        Ok(out)
    }

    /// Replaces `q^n` by `(xy q)^n`; every exponent must be an integer.
    pub fn subst_q_to_tq(&self) -> Result<QSeries> {
        let mut out = QSeries::zero(self.cap);
        for (e, c) in &self.terms {
            let n = e.as_integer().ok_or_else(|| Error::NonIntegralExponent(e.to_string()))?;
            out.add_term(*e, c.shift(n, n));
        }
        Ok(out)
    }

    /// Evaluates every coefficient at `x = y = 1`.
    pub fn specialize_xy1(&self) -> QSeries {
        let mut out = QSeries::zero(self.cap);
        for (e, c) in &self.terms {
            out.add_term(*e, HodgePoly::monomial(0, 0, c.eval_at_one()));
        }
        out
    }

    /// Every coefficient is a polynomial in `t = xy`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.values().all(HodgePoly::is_diagonal)
    }

    /// First exponent, up to the common cap, where the two series differ.
    pub fn first_difference(&self, other: &QSeries) -> Option<QExp> {
        let cap = self.cap.min(other.cap);
        let mut a = self.terms.range(..=cap);
        let mut b = other.terms.range(..=cap);
        loop {
            match (a.next(), b.next()) {
                (None, None) => return None,
                (Some((ea, _)), None) => return Some(*ea),
                (None, Some((eb, _))) => return Some(*eb),
                (Some((ea, ca)), Some((eb, cb))) => {
                    if ea != eb {
                        return Some(*ea.min(eb));
                    }
                    if ca != cb {
                        return Some(*ea);
                    }
                }
            }
        }
    }

    /// Equality of both series up to the smaller of the two caps.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_difference(other).is_none()
    }

    /// Integer coefficients of a series whose coefficients are all constants,
    /// indexed by exponent numerator.
    pub fn constant_coeffs(&self) -> Option<BTreeMap<QExp, BigInt>> {
        self.terms
            .iter()
            .map(|(e, c)| match c.terms().collect::<Vec<_>>()[..] {
                [(&(0, 0), v)] => Some((*e, v.clone())),
                _ => None,
            })
            .collect()
    }
}

fn merge_terms(mut a: BTreeMap<QExp, HodgePoly>, mut b: BTreeMap<QExp, HodgePoly>) -> BTreeMap<QExp, HodgePoly> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (e, c) in b {
        *a.entry(e).or_default() += &c;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(k: i64) -> HodgePoly {
        HodgePoly::t_power(k)
    }

    fn q(n: i64) -> QExp {
        QExp::integer(n)
    }

    fn series(cap: QExp, terms: &[(QExp, HodgePoly)]) -> QSeries {
        QSeries::try_from_terms(cap, terms.iter().cloned()).unwrap()
    }

    #[test]
    fn add_examples() {
        let one = QSeries::one(q(3));
        assert!(one.add(&one.neg()).is_zero());

        let quarter = QExp::ratio(1, 4).unwrap();
        let s = QSeries::monomial(quarter, HodgePoly::one(), q(1));
        assert_eq!(s.add(&s), QSeries::monomial(quarter, HodgePoly::from(2), q(1)));

        let a = series(q(2), &[(q(0), HodgePoly::one()), (q(1), t(1))]);
        let b = series(q(2), &[(q(0), HodgePoly::one()), (q(1), -t(1))]);
        assert_eq!(a.add(&b), QSeries::monomial(q(0), HodgePoly::from(2), q(2)));
    }

    #[test]
    fn add_takes_min_cap() {
        let a = series(q(3), &[(q(3), HodgePoly::one())]);
        let b = QSeries::one(q(2));
        let s = a.add(&b);
        assert_eq!(s.cap(), q(2));
        assert_eq!(s, QSeries::one(q(2)));
    }

    #[test]
    fn mul_examples() {
        let a = series(q(2), &[(q(0), HodgePoly::one()), (q(1), t(1))]);
        let b = series(q(2), &[(q(0), HodgePoly::one()), (q(1), -t(1))]);
        let expect = series(q(2), &[(q(0), HodgePoly::one()), (q(2), -t(2))]);
        assert_eq!(a.mul(&b), expect);

        let twelfth = QExp::ratio(1, 12).unwrap();
        let m = QSeries::monomial(twelfth, HodgePoly::one(), q(1));
        assert_eq!(m.mul(&m), QSeries::monomial(QExp(4), HodgePoly::one(), q(1)));

        let geo = series(q(5), &(0..=5).map(|n| (q(n), HodgePoly::one())).collect::<Vec<_>>());
        let one_minus_q = series(q(5), &[(q(0), HodgePoly::one()), (q(1), HodgePoly::from(-1))]);
        assert_eq!(geo.mul(&one_minus_q), QSeries::one(q(5)));
    }

    #[test]
    fn parallel_and_sequential_mul_agree() {
        let a = series(
            q(6),
            &(0..40).map(|i| (QExp(i * 3), HodgePoly::from_t_coeffs([(i % 5, i + 1), (-1, 2)]))).collect::<Vec<_>>(),
        );
        let b = series(
            q(6),
            &(0..30).map(|i| (QExp(i * 5), HodgePoly::from_t_coeffs([(i % 3, 1 - i)]))).collect::<Vec<_>>(),
        );
        assert_eq!(a.mul_with(&b, Strategy::Parallel), a.mul_sequential(&b));
    }

    #[test]
    fn geom_examples() {
        let u = QSeries::monomial(q(1), HodgePoly::one(), q(3));
        let expect = series(q(3), &(0..=3).map(|n| (q(n), HodgePoly::one())).collect::<Vec<_>>());
        assert_eq!(u.geom().unwrap(), expect);

        let u = QSeries::monomial(q(1), t(2), q(2));
        let expect = series(q(2), &[(q(0), t(0)), (q(1), t(2)), (q(2), t(4))]);
        assert_eq!(u.geom().unwrap(), expect);

        let quarter = QExp::ratio(1, 4).unwrap();
        let u = QSeries::monomial(quarter, HodgePoly::one(), QExp::ratio(1, 2).unwrap());
        let expect = series(
            QExp::ratio(1, 2).unwrap(),
            &[(q(0), HodgePoly::one()), (quarter, HodgePoly::one()), (QExp(12), HodgePoly::one())],
        );
        assert_eq!(u.geom().unwrap(), expect);
    }

    #[test]
    fn geom_rejects_constant_term() {
        let u = QSeries::one(q(2));
        assert!(matches!(u.geom(), Err(Error::NonPositiveValuation { .. })));
    }

    #[test]
    fn subst_examples() {
        let s = series(q(2), &[(q(0), HodgePoly::one()), (q(1), HodgePoly::one())]);
        let expect = series(q(2), &[(q(0), HodgePoly::one()), (q(1), t(1))]);
        assert_eq!(s.subst_q_to_tq().unwrap(), expect);

        let s = series(q(2), &[(q(0), HodgePoly::one()), (q(1), t(1).scale(&2.into())), (q(2), HodgePoly::one())]);
        let expect = series(q(2), &[(q(0), HodgePoly::one()), (q(1), t(2).scale(&2.into())), (q(2), t(2))]);
        assert_eq!(s.subst_q_to_tq().unwrap(), expect);

        let frac = QSeries::monomial(QExp(6), HodgePoly::one(), q(1));
        assert!(matches!(frac.subst_q_to_tq(), Err(Error::NonIntegralExponent(_))));
    }

    #[test]
    fn specialize_examples() {
        let s = QSeries::monomial(q(1), HodgePoly::t_range(0, 2), q(2));
        assert_eq!(s.specialize_xy1(), QSeries::monomial(q(1), HodgePoly::from(3), q(2)));
        assert!(QSeries::zero(q(2)).specialize_xy1().is_zero());
    }

    #[test]
    fn negative_exponents_rejected() {
        let r = QSeries::try_from_terms(q(1), [(QExp(-1), HodgePoly::one())]);
        assert!(matches!(r, Err(Error::NegativeExponent(_))));
    }

    #[test]
    fn first_difference_reports_lowest() {
        let a = series(q(3), &[(q(0), HodgePoly::one()), (q(2), t(1))]);
        let b = series(q(3), &[(q(0), HodgePoly::one()), (q(2), t(2))]);
        assert_eq!(a.first_difference(&b), Some(q(2)));
        assert_eq!(a.first_difference(&a.truncate(q(1))), None);
    }
}
