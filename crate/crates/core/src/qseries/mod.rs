//! Truncated bigraded series in `q` on the `1/24` grid with Laurent polynomial
//! coefficients in `x, y`.

mod encode;
mod exp;
mod hodge;
mod series;
mod special;

pub use encode::{MonomialJson, SeriesJson, TermJson};
pub use exp::{QExp, DEN};
pub use hodge::HodgePoly;
pub use series::QSeries;
pub use special::{qs_eta_sq, qs_theta, ThetaVariant};

/// `x^k y^k`.
pub fn hp_make_t_power(k: i64) -> HodgePoly {
    HodgePoly::t_power(k)
}

pub fn qs_add(a: &QSeries, b: &QSeries) -> QSeries {
    a.add(b)
}

pub fn qs_mul(a: &QSeries, b: &QSeries) -> QSeries {
    a.mul(b)
}

pub fn qs_geom(u: &QSeries) -> crate::Result<QSeries> {
    u.geom()
}

pub fn qs_subst_q_to_tq(s: &QSeries) -> crate::Result<QSeries> {
    s.subst_q_to_tq()
}

pub fn qs_specialize_xy1(s: &QSeries) -> QSeries {
    s.specialize_xy1()
}
