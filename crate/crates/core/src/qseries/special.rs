use super::{HodgePoly, QExp, QSeries};

/// The two summation forms of the theta factor.
///
/// `Moduli` sums `(xy)^{(m^2 - m)/2} q^{m^2/4}` over `m = 2n + a`; `Blowup` sums
/// `(xy)^{(s^2 + s)/2} q^{s^2/4}` over `s = 2t - a`, the form in which the
/// exceptional-divisor contributions first appear. The map `s -> -s` identifies
/// them, so both produce the same series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaVariant {
    Moduli,
    Blowup,
}

/// `sum_{m = a mod 2} (xy)^{e(m)} q^{m^2/4}` over all `m^2/4 <= cap`.
pub fn qs_theta(a: u8, cap: QExp, variant: ThetaVariant) -> QSeries {
    assert!(a <= 1, "theta characteristic must be 0 or 1");
    let a = i64::from(a);
    let mut out = QSeries::zero(cap);
    if cap.num() < 0 {
        return out;
    }
    // m^2/4 <= cap  <=>  6 m^2 <= cap.num()
    let bound = (cap.num() / 6).isqrt() + 1;
    for k in -bound..=bound {
        let (m, t_exp) = match variant {
            ThetaVariant::Moduli => {
                let m = 2 * k + a;
                (m, (m * m - m) / 2)
            }
            ThetaVariant::Blowup => {
                let s = 2 * k - a;
                (s, (s * s + s) / 2)
            }
        };
        let e = QExp::from_num(6 * m * m);
        if e <= cap {
            out.add_term(e, HodgePoly::t_power(t_exp));
        }
    }
    out
}

/// `[q^{1/24} prod_{n>=1} (1 - (xy)^{2n} q^n)]^2`, truncated to `cap`.
pub fn qs_eta_sq(cap: QExp) -> QSeries {
    let offset = QExp::ratio(1, 12).expect("1/12 is on the grid");
    let inner_cap = cap - offset;
    if inner_cap.num() < 0 {
        return QSeries::zero(cap);
    }
    let mut prod = QSeries::one(inner_cap);
    for n in 1..=inner_cap.floor() {
        let factor =
            QSeries::one(inner_cap).sub(&QSeries::monomial(QExp::integer(n), HodgePoly::t_power(2 * n), inner_cap));
        prod = prod.mul(&factor).mul(&factor);
    }
    prod.shift(offset, 0)
}
