//! Brute-force oracles. Slow on purpose: each one re-derives a result from the
//! definition with no sparsity shortcuts or search bounds of its own.
//!
//! Finite-field point counting lives in [`crate::universal::count_u_points`].

use crate::lattice::{DivisorClass, SurfaceLattice, WallClass};
use crate::qseries::{HodgePoly, QExp, QSeries};
use crate::{Error, Result};

/// Product through a dense double loop over every grid exponent up to the cap.
pub fn dense_mul_reference(a: &QSeries, b: &QSeries) -> QSeries {
    let cap = a.cap().min(b.cap());
    let mut out = QSeries::zero(cap);
    if cap.num() < 0 {
        return out;
    }
    let top = cap.num() as usize;
    let dense = |s: &QSeries| -> Vec<HodgePoly> { (0..=top).map(|i| s.coeff(QExp(i as i64))).collect() };
    let (da, db) = (dense(a), dense(b));
    let mut acc = vec![HodgePoly::zero(); top + 1];
    for i in 0..=top {
        for j in 0..=top - i {
            acc[i + j].add_product(&da[i], &db[j]);
        }
    }
    for (k, c) in acc.into_iter().enumerate() {
        out.add_term(QExp(k as i64), c);
    }
    out
}

fn box_points(rank: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut pts = vec![Vec::new()];
    for _ in 0..rank {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

fn sort_like_enumeration(walls: &mut [WallClass]) {
    walls.sort_by(|a, b| b.zeta_sq.cmp(&a.zeta_sq).then_with(|| a.zeta.cmp(&b.zeta)));
}

/// Every class in `[-box, box]^rank` with `zeta.H < 0 < zeta.f`,
/// `zeta = c1 (mod 2)` and `zeta^2 >= c1^2 - 4n`.
pub fn walls_by_exhaustion(
    lattice: &SurfaceLattice,
    c1: &DivisorClass,
    h: &DivisorClass,
    f: &DivisorClass,
    n: i64,
    radius: i64,
) -> Result<Vec<WallClass>> {
    if radius < 0 {
        return Err(Error::OutOfRange(format!("box radius {radius}")));
    }
    let floor = lattice.square(c1)? - 4 * n;
    let mut out = Vec::new();
    for p in box_points(lattice.rank(), radius) {
        let zeta = DivisorClass::new(p);
        if lattice.intersect(&zeta, h)? < 0
            && lattice.intersect(&zeta, f)? > 0
            && zeta.congruent_mod2(c1)
            && lattice.square(&zeta)? >= floor
        {
            out.push(lattice.wall_class(zeta, c1, n)?);
        }
    }
    sort_like_enumeration(&mut out);
    Ok(out)
}

/// Walls on the blowup of `base` of type `(phi^*c1 - aE, n)` for the limiting
/// polarization: classes `phi^*zeta + sE` in `[-box, box]^3` whose base part
/// satisfies `zeta.H < 0 < zeta.f` and whose full class is `= phi^*c1 - aE (mod 2)`
/// with square at least `(phi^*c1 - aE)^2 - 4n`. Records are relative to the blowup.
pub fn blowup_walls_by_exhaustion(
    base: &SurfaceLattice,
    c1: &DivisorClass,
    a: u8,
    n: i64,
    h: &DivisorClass,
    f: &DivisorClass,
    radius: i64,
) -> Result<Vec<WallClass>> {
    if radius < 0 {
        return Err(Error::OutOfRange(format!("box radius {radius}")));
    }
    let blown = base.blowup();
    let c1_lift = c1.extended(-i64::from(a));
    let floor = blown.square(&c1_lift)? - 4 * n;
    let mut out = Vec::new();
    for p in box_points(blown.rank(), radius) {
        let zeta_base = DivisorClass::new(p[..base.rank()].to_vec());
        let zeta = DivisorClass::new(p);
        if base.intersect(&zeta_base, h)? < 0
            && base.intersect(&zeta_base, f)? > 0
            && zeta.congruent_mod2(&c1_lift)
            && blown.square(&zeta)? >= floor
        {
            out.push(blown.wall_class(zeta, &c1_lift, n)?);
        }
    }
    sort_like_enumeration(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{walls_base, walls_blowup_decompose};

    fn d(v: &[i64]) -> DivisorClass {
        DivisorClass::new(v.to_vec())
    }

    fn standard() -> (SurfaceLattice, DivisorClass, DivisorClass, DivisorClass) {
        (SurfaceLattice::f1(), d(&[1, 0]), d(&[1, 2]), d(&[0, 1]))
    }

    #[test]
    fn exhaustion_examples() {
        let (l, c1, h, f) = standard();
        let w1 = walls_by_exhaustion(&l, &c1, &h, &f, 1, 10).unwrap();
        assert_eq!(w1.len(), 1);
        assert_eq!(w1[0].zeta, d(&[1, -2]));
        assert!(walls_by_exhaustion(&l, &c1, &h, &f, 0, 10).unwrap().is_empty());
        assert_eq!(walls_by_exhaustion(&l, &c1, &h, &f, 3, 20).unwrap(), walls_base(&l, &c1, &h, &f, 3).unwrap());
    }

    #[test]
    fn blowup_exhaustion_matches_decomposition() {
        let (l, c1, h, f) = standard();
        for a in 0..=1u8 {
            for n in 0..=3 {
                let mut lifted: Vec<WallClass> =
                    walls_blowup_decompose(&l, &c1, a, n, &h, &f).unwrap().into_iter().map(|w| w.lifted).collect();
                sort_like_enumeration(&mut lifted);
                assert_eq!(blowup_walls_by_exhaustion(&l, &c1, a, n, &h, &f, 12).unwrap(), lifted, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn dense_mul_trivial_operands() {
        let cap = QExp::integer(3);
        let s = QSeries::one(cap).add(&QSeries::monomial(QExp(30), HodgePoly::monomial(1, 2, -3), cap));
        assert!(dense_mul_reference(&s, &QSeries::zero(cap)).is_zero());
        assert_eq!(dense_mul_reference(&s, &QSeries::one(cap)), s);
        assert_eq!(dense_mul_reference(&s, &s), s.mul(&s));
    }
}
