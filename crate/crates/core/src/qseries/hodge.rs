use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse Laurent polynomial in `x, y` with big-integer coefficients: the value
/// of a virtual Hodge polynomial `sum e^{s,t} x^s y^t`.
///
/// No stored coefficient is zero, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HodgePoly {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl HodgePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(ex: i64, ey: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(ex, ey, c.into());
        p
    }

    /// `(xy)^k`.
    pub fn t_power(k: i64) -> Self {
        Self::monomial(k, k, 1)
    }

    /// `sum c_k (xy)^k` from `(k, c_k)` pairs.
    pub fn from_t_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs {
            p.add_term(k, k, c.into());
        }
        p
    }

    /// `t^lo + t^(lo+1) + ... + t^hi`; zero when `hi < lo`.
    pub fn t_range(lo: i64, hi: i64) -> Self {
        Self::from_t_coeffs((lo..=hi).map(|k| (k, 1)))
    }

    /// The exact quotient `(1 - t^k) / (1 - t)` for any integer `k`.
    pub fn t_geometric_quotient(k: i64) -> Self {
        match k {
            0 => Self::zero(),
            k if k > 0 => Self::t_range(0, k - 1),
            k => -Self::t_range(k, -1),
        }
    }

    pub fn add_term(&mut self, ex: i64, ey: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((ex, ey)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials in ascending `(ex, ey)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ex: i64, ey: i64) -> BigInt {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_default()
    }

    /// Coefficient of `(xy)^k`.
    pub fn t_coeff(&self, k: i64) -> BigInt {
        self.coeff(k, k)
    }

    /// Every monomial has equal `x` and `y` degree, i.e. this is a polynomial in `t = xy`.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(ex, ey)| ex == ey)
    }

    /// Value at `x = y = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value at `t = xy = value` for a diagonal polynomial with non-negative exponents.
    ///
    /// Returns `None` when the polynomial is not diagonal or has a negative power.
    pub fn eval_t(&self, value: &BigInt) -> Option<BigInt> {
        let mut acc = BigInt::zero();
        for (&(ex, ey), c) in &self.terms {
            if ex != ey || ex < 0 {
                return None;
            }
            acc += c * num_traits::pow(value.clone(), ex as usize);
        }
        Some(acc)
    }

    /// Multiplies by the monomial `x^dx y^dy`.
    pub fn shift(&self, dx: i64, dy: i64) -> Self {
        HodgePoly { terms: self.terms.iter().map(|(&(ex, ey), c)| ((ex + dx, ey + dy), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        HodgePoly { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// `x, y` exponent ranges, or `None` for the zero polynomial.
    pub fn degree_bounds(&self) -> Option<((i64, i64), (i64, i64))> {
        let mut it = self.terms.keys();
        let &(x0, y0) = it.next()?;
        let (mut xl, mut xh, mut yl, mut yh) = (x0, x0, y0, y0);
        for &(ex, ey) in it {
            xl = xl.min(ex);
            xh = xh.max(ex);
            yl = yl.min(ey);
            yh = yh.max(ey);
        }
        Some(((xl, xh), (yl, yh)))
    }

    /// Accumulates `a * b` into `self`.
    pub fn add_product(&mut self, a: &HodgePoly, b: &HodgePoly) {
        for (&(ax, ay), ac) in &a.terms {
            for (&(bx, by), bc) in &b.terms {
                self.add_term(ax + bx, ay + by, ac * bc);
            }
        }
    }
}

impl From<i64> for HodgePoly {
    fn from(c: i64) -> Self {
        HodgePoly::monomial(0, 0, c)
    }
}

impl AddAssign<&HodgePoly> for HodgePoly {
    fn add_assign(&mut self, rhs: &HodgePoly) {
        for (&(ex, ey), c) in &rhs.terms {
            self.add_term(ex, ey, c.clone());
        }
    }
}

impl SubAssign<&HodgePoly> for HodgePoly {
    fn sub_assign(&mut self, rhs: &HodgePoly) {
        for (&(ex, ey), c) in &rhs.terms {
            self.add_term(ex, ey, -c);
        }
    }
}

impl Add for &HodgePoly {
    type Output = HodgePoly;
    fn add(self, rhs: &HodgePoly) -> HodgePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for HodgePoly {
    type Output = HodgePoly;
    fn add(mut self, rhs: HodgePoly) -> HodgePoly {
        self += &rhs;
        self
    }
}

impl Sub for &HodgePoly {
    type Output = HodgePoly;
    fn sub(self, rhs: &HodgePoly) -> HodgePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for HodgePoly {
    type Output = HodgePoly;
    fn sub(mut self, rhs: HodgePoly) -> HodgePoly {
        self -= &rhs;
        self
    }
}

impl Neg for HodgePoly {
    type Output = HodgePoly;
    fn neg(mut self) -> HodgePoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &HodgePoly {
    type Output = HodgePoly;
    fn mul(self, rhs: &HodgePoly) -> HodgePoly {
        let mut out = HodgePoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Mul for HodgePoly {
    type Output = HodgePoly;
    fn mul(self, rhs: HodgePoly) -> HodgePoly {
        &self * &rhs
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        e => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for HodgePoly {
    /// Highest monomial first, e.g. `x^2y^2 + 2xy + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(ex, ey), c)) in self.terms.iter().rev().enumerate() {
            let constant = ex == 0 && ey == 0;
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write_power(f, 'x', ex)?;
            write_power(f, 'y', ey)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_power_examples() {
        assert!(HodgePoly::t_power(0).is_one());
        assert_eq!(HodgePoly::t_power(2), HodgePoly::monomial(2, 2, 1));
        assert_eq!(HodgePoly::t_power(-1).terms().next().map(|(k, _)| *k), Some((-1, -1)));
    }

    #[test]
    fn cancellation_prunes_zeros() {
        let p = HodgePoly::t_power(3);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z, HodgePoly::zero());
    }

    #[test]
    fn geometric_quotient_times_one_minus_t() {
        let one_minus_t = HodgePoly::one() - HodgePoly::t_power(1);
        for k in -6..=6 {
            let lhs = &HodgePoly::t_geometric_quotient(k) * &one_minus_t;
            let rhs = HodgePoly::one() - HodgePoly::t_power(k);
            assert_eq!(lhs, rhs, "k = {k}");
        }
        assert_eq!(HodgePoly::t_geometric_quotient(3), HodgePoly::t_range(0, 2));
        assert_eq!(HodgePoly::t_geometric_quotient(-2), HodgePoly::from_t_coeffs([(-2, -1), (-1, -1)]));
    }

    #[test]
    fn evaluation() {
        let p = HodgePoly::from_t_coeffs([(0, 1), (1, 2), (2, 1)]);
        assert_eq!(p.eval_at_one(), BigInt::from(4));
        assert_eq!(p.eval_t(&BigInt::from(2)), Some(BigInt::from(9)));
        assert_eq!(HodgePoly::monomial(1, 0, 1).eval_t(&BigInt::from(2)), None);
    }

    #[test]
    fn display() {
        let p = HodgePoly::from_t_coeffs([(0, 1), (1, 2), (2, 1)]);
        assert_eq!(p.to_string(), "x^2y^2 + 2xy + 1");
        let q = HodgePoly::from_t_coeffs([(3, 1), (1, -1)]);
        assert_eq!(q.to_string(), "x^3y^3 - xy");
        assert_eq!(HodgePoly::from(-2).to_string(), "-2");
        assert_eq!(HodgePoly::t_power(-1).to_string(), "x^-1y^-1");
    }
}
