use blowup_core::lattice::{walls_base, DivisorClass, SurfaceLattice};
use blowup_core::oracle::{dense_mul_reference, walls_by_exhaustion};
use blowup_core::qseries::SeriesJson;
use blowup_core::universal::b_poly;
use blowup_core::wallcross::{base_genfun, blowup_genfun, GenfunMode, ModuliProblem};
use blowup_core::{Error, HodgePoly, QExp, QSeries, Strategy as Exec};
use proptest::prelude::*;

const CAP: i64 = 6 * 24;

fn poly() -> impl Strategy<Value = HodgePoly> {
    prop::collection::vec((-2i64..=2, -2i64..=2, -4i64..=4), 1..4).prop_map(|terms| {
        let mut p = HodgePoly::zero();
        for (x, y, c) in terms {
            p.add_term(x, y, c.into());
        }
        p
    })
}

fn series_from(min_exp: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((min_exp..=CAP, poly()), 0..7).prop_map(|terms| {
        let cap = QExp(CAP);
        terms.into_iter().fold(QSeries::zero(cap), |acc, (e, c)| acc.add(&QSeries::monomial(QExp(e), c, cap)))
    })
}

fn series() -> impl Strategy<Value = QSeries> {
    series_from(0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, .. ProptestConfig::default() })]

    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.mul(&QSeries::one(QExp(CAP))), a);
    }

    #[test]
    fn products_match_oracle_and_strategies(a in series(), b in series()) {
        let p = a.mul(&b);
        prop_assert_eq!(&p, &dense_mul_reference(&a, &b));
        prop_assert_eq!(&p, &a.mul_with(&b, Exec::Sequential));
        prop_assert_eq!(&p, &a.mul_with(&b, Exec::Parallel));
        prop_assert_eq!(&p, &a.mul_sequential(&b));
    }

    // valuation at least 1/3 keeps the expansion to at most 18 powers
    #[test]
    fn geom_is_inverse(u in series_from(8)) {
        let one = QSeries::one(QExp(CAP));
        let g = u.geom().unwrap();
        prop_assert_eq!(one.sub(&u).mul(&g), one);
    }

    #[test]
    fn truncation_commutes_with_products(a in series(), b in series(), low in 0..=CAP) {
        let low = QExp(low);
        prop_assert_eq!(a.mul(&b).truncate(low), a.truncate(low).mul(&b.truncate(low)));
    }

    #[test]
    fn json_round_trip(a in series()) {
        let json = a.to_json();
        prop_assert_eq!(QSeries::from_json(&json).unwrap(), a.clone());
        let parsed: SeriesJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(parsed.den, 24);
    }

    #[test]
    fn intersection_symmetric_and_bilinear(
        u in prop::collection::vec(-9i64..=9, 3),
        v in prop::collection::vec(-9i64..=9, 3),
        w in prop::collection::vec(-9i64..=9, 3),
        k in -5i64..=5,
    ) {
        let l = SurfaceLattice::f1().blowup();
        let (u, v, w) = (DivisorClass::new(u), DivisorClass::new(v), DivisorClass::new(w));
        prop_assert_eq!(l.intersect(&u, &v).unwrap(), l.intersect(&v, &u).unwrap());
        let combo = DivisorClass::new(u.coords().iter().zip(w.coords()).map(|(a, b)| k * a + b).collect::<Vec<_>>());
        prop_assert_eq!(
            l.intersect(&combo, &v).unwrap(),
            k * l.intersect(&u, &v).unwrap() + l.intersect(&w, &v).unwrap()
        );
    }

    #[test]
    fn walls_match_exhaustion(h1 in 1i64..=3, dh in 1i64..=3, c in -3i64..=3, d in -3i64..=3, n in 0i64..=4) {
        let l = SurfaceLattice::f1();
        let (h, f, c1) = (DivisorClass::new([h1, h1 + dh]), DivisorClass::new([0, 1]), DivisorClass::new([c, d]));
        let walls = match walls_base(&l, &c1, &h, &f, n) {
            Ok(w) => w,
            Err(Error::EvenIntersection { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let bound = 4 * n - l.square(&c1).unwrap();
        let radius = bound.max(1) + 1;
        let slow = walls_by_exhaustion(&l, &c1, &h, &f, n, radius).unwrap();
        prop_assert_eq!(&walls, &slow);
        prop_assert_eq!(&slow, &walls_by_exhaustion(&l, &c1, &h, &f, n, radius + 2).unwrap());
        for w in &walls {
            prop_assert!(w.zeta.congruent_mod2(&c1));
            prop_assert!(w.ell >= 0);
        }
    }
}

#[test]
fn walls_grow_with_n() {
    let p = ModuliProblem::f1_standard();
    let mut previous: Vec<DivisorClass> = Vec::new();
    for n in 0..12 {
        let now: Vec<DivisorClass> =
            walls_base(&p.surface, &p.c1, &p.h, &p.f, n).unwrap().into_iter().map(|w| w.zeta).collect();
        assert!(previous.iter().all(|z| now.contains(z)), "n = {n}");
        previous = now;
    }
}

#[test]
fn generating_functions_are_diagonal() {
    let p = ModuliProblem::f1_standard();
    let cap = QExp::integer(6);
    assert!(base_genfun(&p, cap, GenfunMode::Closed).unwrap().is_diagonal());
    for a in 0..=1 {
        assert!(blowup_genfun(&p, a, cap, GenfunMode::Closed).unwrap().is_diagonal());
        for n in 0..10 {
            assert!(b_poly(a, n).unwrap().is_diagonal());
        }
    }
}

#[test]
fn sequential_and_parallel_genfuns_agree() {
    use blowup_core::wallcross::{base_genfun_with, blowup_genfun_with};
    let p = ModuliProblem::f1_standard();
    let cap = QExp::integer(5);
    for mode in [GenfunMode::PerN, GenfunMode::Closed] {
        assert_eq!(
            base_genfun_with(&p, cap, mode, Exec::Sequential).unwrap(),
            base_genfun_with(&p, cap, mode, Exec::Parallel).unwrap()
        );
        assert_eq!(
            blowup_genfun_with(&p, 1, cap, mode, Exec::Sequential).unwrap(),
            blowup_genfun_with(&p, 1, cap, mode, Exec::Parallel).unwrap()
        );
    }
}

fn non_negative(p: &HodgePoly) -> bool {
    p.terms().all(|(_, c)| c.sign() != num_bigint::Sign::Minus)
}

#[test]
fn hilbert_coefficients_are_non_negative() {
    use blowup_core::hilb::hilb_series;
    for lattice in [SurfaceLattice::f1(), SurfaceLattice::f1().blowup()] {
        let s = hilb_series(&lattice, QExp::integer(8));
        assert!(s.terms().all(|(_, c)| non_negative(c)), "{}", lattice.name);
    }
}

#[test]
fn base_euler_numbers_are_non_negative() {
    let p = ModuliProblem::f1_standard();
    let s = base_genfun(&p, QExp::integer(10), GenfunMode::Closed).unwrap().specialize_xy1();
    assert!(!s.is_zero());
    assert!(s.terms().all(|(_, c)| non_negative(c)));
}
