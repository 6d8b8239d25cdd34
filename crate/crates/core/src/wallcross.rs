//! Hodge polynomials of Gieseker moduli spaces of rank-2 sheaves on `F1` and
//! its blowup, computed by crossing every wall between the polarization and
//! the empty chamber next to the fiber class.
//!
//! Each wall `zeta` contributes
//! `(xy)^{ell - (zeta^2 + zeta.K)/2 - chi(O)} * (1 - (xy)^{zeta.K})/(1 - xy) * [q^ell] H(q)^2`
//! where `H` is the Hilbert-scheme series. The quotient by `1 - xy` is always
//! taken as an exact polynomial quotient per wall.

use crate::hilb::hilb_series;
use crate::lattice::{self, DivisorClass, SurfaceLattice, WallClass};
use crate::par::{self, Strategy};
use crate::qseries::{qs_theta, HodgePoly, QExp, QSeries, ThetaVariant};
use crate::{Error, Result};

/// How a generating function is assembled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenfunMode {
    /// Sum of `e(M(c1, n)) q^{n - c1^2/4}` with every coefficient computed from its own wall set.
    PerN,
    /// Product of the squared Hilbert series with the wall sum (and theta factor on the blowup).
    Closed,
}

/// A surface, first Chern class and polarization with odd `H.c1` and `f.c1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliProblem {
    pub surface: SurfaceLattice,
    pub c1: DivisorClass,
    pub h: DivisorClass,
    pub f: DivisorClass,
}

impl ModuliProblem {
    pub fn new(surface: SurfaceLattice, c1: DivisorClass, h: DivisorClass, f: DivisorClass) -> Result<Self> {
        for (what, class) in [("H.c1", &h), ("f.c1", &f)] {
            let v = surface.intersect(class, &c1)?;
            if v.rem_euclid(2) != 1 {
                return Err(Error::EvenIntersection { what, value: v });
            }
        }
        Ok(ModuliProblem { surface, c1, h, f })
    }

    /// `F1` with `c1 = sigma`, `H = sigma + 2f`.
    pub fn f1_standard() -> Self {
        ModuliProblem::new(
            SurfaceLattice::f1(),
            DivisorClass::new([1, 0]),
            DivisorClass::new([1, 2]),
            DivisorClass::new([0, 1]),
        )
        .expect("H.c1 = f.c1 = 1")
    }

    pub fn c1_sq(&self) -> i64 {
        self.surface.square(&self.c1).expect("c1 has lattice rank")
    }

    /// `phi^*c1 - aE` on the blowup.
    pub fn c1_lift(&self, a: u8) -> DivisorClass {
        self.c1.extended(-i64::from(a))
    }
}

/// `(xy)^{ell - (zeta^2 + zeta.K)/2 - chi} (1 - (xy)^{zeta.K})/(1 - xy) sum_{s+t=ell} e(Hilb^s) e(Hilb^t)`.
fn wall_term(wall: &WallClass, chi_o: i64, hilb_sq: &QSeries) -> HodgePoly {
    let parity = wall.zeta_sq + wall.zeta_dot_k;
    debug_assert_eq!(parity.rem_euclid(2), 0, "zeta^2 = zeta.K (mod 2)");
    let t_exp = wall.ell - parity / 2 - chi_o;
    let hilb = hilb_sq.coeff(QExp::integer(wall.ell));
    (&HodgePoly::t_geometric_quotient(wall.zeta_dot_k) * &hilb).shift(t_exp, t_exp)
}

fn hilb_squared(surface: &SurfaceLattice, cap: QExp) -> QSeries {
    let h = hilb_series(surface, cap);
    h.mul(&h)
}

fn sum_wall_terms<'a>(walls: impl IntoIterator<Item = &'a WallClass>, chi_o: i64, hilb_sq: &QSeries) -> HodgePoly {
    let mut acc = HodgePoly::zero();
    for w in walls {
        acc += &wall_term(w, chi_o, hilb_sq);
    }
    acc
}

/// `e(M^G_H(c1, n); x, y)` by summing over the walls of type `(c1, n)`.
pub fn gieseker_hodge(problem: &ModuliProblem, n: i64) -> Result<HodgePoly> {
    let walls = lattice::walls_base(&problem.surface, &problem.c1, &problem.h, &problem.f, n)?;
    let Some(ell_max) = walls.iter().map(|w| w.ell).max() else {
        return Ok(HodgePoly::zero());
    };
    let hilb_sq = hilb_squared(&problem.surface, QExp::integer(ell_max));
    Ok(sum_wall_terms(&walls, problem.surface.chi_o, &hilb_sq))
}

/// `e(M^G_{H_inf}(phi^*c1 - aE, n); x, y)` on the blowup, summing over its walls directly.
pub fn gieseker_hodge_blowup(problem: &ModuliProblem, a: u8, n: i64) -> Result<HodgePoly> {
    let walls = lattice::walls_blowup_decompose(&problem.surface, &problem.c1, a, n, &problem.h, &problem.f)?;
    let Some(ell_max) = walls.iter().map(|w| w.lifted.ell).max() else {
        return Ok(HodgePoly::zero());
    };
    let blown = problem.surface.blowup();
    let hilb_sq = hilb_squared(&blown, QExp::integer(ell_max));
    Ok(sum_wall_terms(walls.iter().map(|w| &w.lifted), blown.chi_o, &hilb_sq))
}

/// Range of `n` whose exponent `n - c1^2/4` lies in `[0, cap]`.
fn n_range(c1_sq: i64, cap: QExp) -> std::ops::RangeInclusive<i64> {
    // exponent numerator 24n - 6 c1^2
    let lo = (6 * c1_sq).div_euclid(24) + i64::from((6 * c1_sq).rem_euclid(24) != 0);
    let hi = (cap.num() + 6 * c1_sq).div_euclid(24);
    lo..=hi
}

/// `sum_{zeta in Lambda_H, -zeta^2/4 <= cap} (xy)^{-(zeta^2 + zeta.K)/2 - chi} (1 - (xy)^{zeta.K})/(1 - xy) q^{-zeta^2/4}`.
pub fn wall_series(problem: &ModuliProblem, cap: QExp) -> Result<QSeries> {
    let surface = &problem.surface;
    let mut out = QSeries::zero(cap);
    if cap.num() < 0 {
        return Ok(out);
    }
    // -zeta^2 / 4 <= cap  <=>  -zeta^2 <= cap.num() / 6
    let bound = cap.num().div_euclid(6);
    for zeta in lattice::walls_up_to(surface, &problem.c1, &problem.h, &problem.f, bound)? {
        let sq = surface.square(&zeta)?;
        let dk = surface.dot_canonical(&zeta)?;
        let t_exp = -(sq + dk) / 2 - surface.chi_o;
        let coeff = HodgePoly::t_geometric_quotient(dk).shift(t_exp, t_exp);
        out.add_term(QExp::from_num(-6 * sq), coeff);
    }
    Ok(out)
}

/// `sum_n e(M^G_H(c1, n)) q^{n - c1^2/4}` to `cap`.
pub fn base_genfun(problem: &ModuliProblem, cap: QExp, mode: GenfunMode) -> Result<QSeries> {
    base_genfun_with(problem, cap, mode, Strategy::default())
}

pub fn base_genfun_with(problem: &ModuliProblem, cap: QExp, mode: GenfunMode, strategy: Strategy) -> Result<QSeries> {
    let surface = &problem.surface;
    match mode {
        GenfunMode::PerN => {
            let c1_sq = problem.c1_sq();
            let hilb_sq = hilb_squared(surface, cap);
            let ns: Vec<i64> = n_range(c1_sq, cap).collect();
            let coeffs = par::map_collect(strategy, &ns, |&n| {
                let walls = lattice::walls_base(surface, &problem.c1, &problem.h, &problem.f, n)?;
                Ok::<_, Error>((n, sum_wall_terms(&walls, surface.chi_o, &hilb_sq)))
            });
            let mut out = QSeries::zero(cap);
            for r in coeffs {
                let (n, c): (i64, HodgePoly) = r?;
                out.add_term(QExp::from_num(24 * n - 6 * c1_sq), c);
            }
            Ok(out)
        }
        GenfunMode::Closed => {
            let hilb_tq = hilb_series(surface, cap).subst_q_to_tq()?;
            Ok(hilb_tq.mul(&hilb_tq).mul(&wall_series(problem, cap)?))
        }
    }
}

/// `sum_n e(M^G_{H_inf}(phi^*c1 - aE, n)) q^{n - (c1^2 - a^2)/4}` on the blowup, to `cap`.
pub fn blowup_genfun(problem: &ModuliProblem, a: u8, cap: QExp, mode: GenfunMode) -> Result<QSeries> {
    blowup_genfun_with(problem, a, cap, mode, Strategy::default())
}

pub fn blowup_genfun_with(
    problem: &ModuliProblem,
    a: u8,
    cap: QExp,
    mode: GenfunMode,
    strategy: Strategy,
) -> Result<QSeries> {
    if a > 1 {
        return Err(Error::OutOfRange(format!("a = {a} (expected 0 or 1)")));
    }
    let blown = problem.surface.blowup();
    match mode {
        GenfunMode::PerN => {
            let c1_sq = blown.square(&problem.c1_lift(a))?;
            let hilb_sq = hilb_squared(&blown, cap);
            let ns: Vec<i64> = n_range(c1_sq, cap).collect();
            let coeffs = par::map_collect(strategy, &ns, |&n| {
                let walls =
                    lattice::walls_blowup_decompose(&problem.surface, &problem.c1, a, n, &problem.h, &problem.f)?;
                Ok::<_, Error>((n, sum_wall_terms(walls.iter().map(|w| &w.lifted), blown.chi_o, &hilb_sq)))
            });
            let mut out = QSeries::zero(cap);
            for r in coeffs {
                let (n, c): (i64, HodgePoly) = r?;
                out.add_term(QExp::from_num(24 * n - 6 * c1_sq), c);
            }
            Ok(out)
        }
        GenfunMode::Closed => {
            let hilb_tq = hilb_series(&blown, cap).subst_q_to_tq()?;
            let theta = qs_theta(a, cap, ThetaVariant::Blowup);
            Ok(hilb_tq.mul(&hilb_tq).mul(&theta).mul(&wall_series(problem, cap)?))
        }
    }
}
