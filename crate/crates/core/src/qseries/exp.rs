use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Common denominator of every q-exponent.
pub const DEN: i64 = 24;

/// An exponent of `q`, stored as its numerator over [`DEN`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QExp(pub i64);

impl QExp {
    pub const ZERO: QExp = QExp(0);

    pub const fn from_num(num: i64) -> Self {
        QExp(num)
    }

    pub const fn integer(n: i64) -> Self {
        QExp(n * DEN)
    }

    /// `p / q`, if it lies on the grid.
    pub fn ratio(p: i64, q: i64) -> Option<Self> {
        if q == 0 || (p * DEN) % q != 0 {
            return None;
        }
        Some(QExp(p * DEN / q))
    }

    pub const fn num(self) -> i64 {
        self.0
    }

    /// The exponent as an integer, when it is one.
    pub fn as_integer(self) -> Option<i64> {
        (self.0 % DEN == 0).then_some(self.0 / DEN)
    }

    /// Largest integer `<=` this exponent.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(DEN)
    }

    /// Lowest-terms `(numerator, denominator)`.
    pub fn reduced(self) -> (i64, i64) {
        let g = gcd(self.0.unsigned_abs(), DEN as u64) as i64;
        (self.0 / g, DEN / g)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp(self.0 + rhs.0)
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp(self.0 - rhs.0)
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.reduced();
        if q == 1 {
            write!(f, "{p}")
        } else {
            write!(f, "{p}/{q}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_equality_is_numerator_equality() {
        assert_eq!(QExp::ratio(1, 12), Some(QExp(2)));
        assert_eq!(QExp::ratio(2, 24), QExp::ratio(1, 12));
        assert_eq!(QExp::ratio(1, 5), None);
        assert!(QExp(3) < QExp(4));
    }

    #[test]
    fn display_reduces() {
        assert_eq!(QExp(30).to_string(), "5/4");
        assert_eq!(QExp(48).to_string(), "2");
        assert_eq!(QExp(2).to_string(), "1/12");
        assert_eq!(QExp(-6).to_string(), "-1/4");
        assert_eq!(QExp(0).to_string(), "0");
    }

    #[test]
    fn floor_and_integer() {
        assert_eq!(QExp(30).floor(), 1);
        assert_eq!(QExp(-1).floor(), -1);
        assert_eq!(QExp(48).as_integer(), Some(2));
        assert_eq!(QExp(6).as_integer(), None);
    }
}
