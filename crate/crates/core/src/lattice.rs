//! Picard lattices of `F1` and its one-point blowup, and the wall sets that
//! drive wall-crossing.
//!
//! Basis order is `(sigma, f)` on `F1`, where `sigma` is the `(-1)`-curve and
//! `f` a fiber, and `(sigma, f, E)` on the blowup, where the first two vectors
//! are pullbacks and `E` is the new exceptional curve.
//!
//! # Wall enumeration bound
//!
//! For `zeta = alpha*sigma + beta*f` and an ample `H = h1*sigma + h2*f`
//! (`h2 > h1 > 0`): `zeta.f = alpha > 0` and `zeta.H = alpha(h2 - h1) + beta*h1 < 0`
//! force `beta < -alpha(h2 - h1)/h1 < 0`, hence
//! `zeta^2 = -alpha^2 + 2 alpha beta < -alpha^2 (2 h2 - h1)/h1`.
//! With `zeta^2 >= -D` this bounds `alpha^2 <= D h1 / (2 h2 - h1)` (for
//! `H = sigma + 2f` that is `alpha <= sqrt(D/3)`), and per `alpha` the same
//! inequality bounds `beta >= (alpha^2 - D) / (2 alpha)`. The enumeration
//! scans exactly that box and filters with the defining predicates.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Integer coordinates of a divisor class in a lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        DivisorClass(coords.into())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise congruence modulo 2.
    pub fn congruent_mod2(&self, other: &DivisorClass) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| (a - b).rem_euclid(2) == 0)
    }

    /// Appends one coordinate, e.g. `phi^* D + s E` from `D`.
    pub fn extended(&self, last: i64) -> DivisorClass {
        let mut v = self.0.clone();
        v.push(last);
        DivisorClass(v)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Picard lattice with the numerical data that enters Hodge-polynomial formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    pub name: String,
    gram: Vec<Vec<i64>>,
    pub canonical: DivisorClass,
    pub chi_o: i64,
    pub irregularity: i64,
    /// Hodge numbers `h^{s,t}`, zero entries omitted.
    pub hodge: BTreeMap<(u8, u8), i64>,
}

impl SurfaceLattice {
    /// Builds a lattice, checking that the Gram matrix is square and symmetric.
    pub fn new(
        name: impl Into<String>,
        gram: Vec<Vec<i64>>,
        canonical: DivisorClass,
        chi_o: i64,
        irregularity: i64,
        hodge: BTreeMap<(u8, u8), i64>,
    ) -> Result<Self> {
        let rank = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: row.len() });
            }
            for (j, v) in row.iter().enumerate() {
                if gram[j][i] != *v {
                    return Err(Error::Unsupported(format!("gram matrix not symmetric at ({i}, {j})")));
                }
            }
        }
        if canonical.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, found: canonical.len() });
        }
        Ok(SurfaceLattice { name: name.into(), gram, canonical, chi_o, irregularity, hodge })
    }

    /// `F1` in the basis `(sigma, f)`.
    pub fn f1() -> Self {
        let hodge = BTreeMap::from([((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        SurfaceLattice::new("f1", vec![vec![-1, 1], vec![1, 0]], DivisorClass::new([-2, -3]), 1, 0, hodge)
            .expect("F1 data is consistent")
    }

    /// Blowup at one point: appends `E` with `E^2 = -1` orthogonal to the
    /// pullbacks, `K' = phi^*K + E`, and one more `(1,1)` class.
    pub fn blowup(&self) -> Self {
        let rank = self.rank();
        let mut gram: Vec<Vec<i64>> = self.gram.iter().map(|r| r.iter().copied().chain([0]).collect()).collect();
        let mut last = vec![0; rank + 1];
        last[rank] = -1;
        gram.push(last);
        let mut hodge = self.hodge.clone();
        *hodge.entry((1, 1)).or_insert(0) += 1;
        let name = if self.name == "f1" { "f1-blowup".to_string() } else { format!("{}-blowup", self.name) };
        SurfaceLattice::new(name, gram, self.canonical.extended(1), self.chi_o, self.irregularity, hodge)
            .expect("blowup of a consistent lattice is consistent")
    }

    /// Looks up a shipped surface: `"f1"` or `"f1-blowup"`.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "f1" => Ok(Self::f1()),
            "f1-blowup" => Ok(Self::f1().blowup()),
            other => Err(Error::Unsupported(format!("unknown surface {other:?}"))),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Topological Euler characteristic, `sum (-1)^{s+t} h^{s,t}`.
    pub fn euler_characteristic(&self) -> i64 {
        self.hodge.iter().map(|(&(s, t), &h)| if (s + t) % 2 == 0 { h } else { -h }).sum()
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: d.len() });
        }
        Ok(())
    }

    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let mut acc = 0;
        for (i, ai) in a.0.iter().enumerate() {
            for (j, bj) in b.0.iter().enumerate() {
                acc += ai * self.gram[i][j] * bj;
            }
        }
        Ok(acc)
    }

    pub fn square(&self, a: &DivisorClass) -> Result<i64> {
        self.intersect(a, a)
    }

    pub fn dot_canonical(&self, a: &DivisorClass) -> Result<i64> {
        self.intersect(a, &self.canonical)
    }

    /// Builds the [`WallClass`] record for `zeta` relative to `(c1, n)`.
    pub fn wall_class(&self, zeta: DivisorClass, c1: &DivisorClass, n: i64) -> Result<WallClass> {
        let zeta_sq = self.square(&zeta)?;
        let zeta_dot_k = self.dot_canonical(&zeta)?;
        let numer = 4 * n - self.square(c1)? + zeta_sq;
        if numer < 0 || numer % 4 != 0 {
            return Err(Error::OutOfRange(format!("class {zeta} gives non-integral or negative ell ({numer}/4)")));
        }
        Ok(WallClass { zeta, zeta_sq, zeta_dot_k, ell: numer / 4 })
    }
}

/// A wall class `zeta` with its cached intersection numbers for a fixed `(c1, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallClass {
    pub zeta: DivisorClass,
    pub zeta_sq: i64,
    pub zeta_dot_k: i64,
    /// `(4n - c1^2 + zeta^2) / 4`.
    pub ell: i64,
}

/// A wall on the blowup written as `phi^*zeta + (2t - a)E` with `zeta` a wall on the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupWall {
    /// The base wall, with `ell` relative to `(c1, n)` on the base surface.
    pub base: WallClass,
    pub t: i64,
    /// The lifted class on the blowup, with `ell` relative to `(phi^*c1 - aE, n)`.
    pub lifted: WallClass,
}

fn require_f1_polarization(lattice: &SurfaceLattice, h: &DivisorClass, f: &DivisorClass) -> Result<(i64, i64)> {
    if lattice.gram() != SurfaceLattice::f1().gram() {
        return Err(Error::Unsupported(format!("wall enumeration is implemented for f1, got {}", lattice.name)));
    }
    lattice.check(h)?;
    lattice.check(f)?;
    if f.coords() != [0, 1] {
        return Err(Error::Unsupported(format!("fiber class must be (0, 1), got {f}")));
    }
    let (h1, h2) = (h.0[0], h.0[1]);
    if !(h2 > h1 && h1 > 0) {
        return Err(Error::Unsupported(format!("polarization {h} is not ample on f1")));
    }
    Ok((h1, h2))
}

fn require_odd(lattice: &SurfaceLattice, c1: &DivisorClass, h: &DivisorClass, f: &DivisorClass) -> Result<()> {
    let hc = lattice.intersect(h, c1)?;
    if hc.rem_euclid(2) != 1 {
        return Err(Error::EvenIntersection { what: "H.c1", value: hc });
    }
    let fc = lattice.intersect(f, c1)?;
    if fc.rem_euclid(2) != 1 {
        return Err(Error::EvenIntersection { what: "f.c1", value: fc });
    }
    Ok(())
}

/// Classes `zeta` with `zeta.H < 0 < zeta.f`, `zeta = c1 (mod 2)` and `zeta^2 >= -bound`.
fn walls_with_bound(
    lattice: &SurfaceLattice,
    c1: &DivisorClass,
    h: &DivisorClass,
    f: &DivisorClass,
    bound: i64,
) -> Result<Vec<DivisorClass>> {
    let (h1, h2) = require_f1_polarization(lattice, h, f)?;
    let mut out = Vec::new();
    if bound <= 0 {
        return Ok(out);
    }
    let alpha_max = (bound * h1 / (2 * h2 - h1)).isqrt();
    for alpha in 1..=alpha_max {
        let beta_min = (alpha * alpha - bound).div_euclid(2 * alpha);
        for beta in beta_min..0 {
            let zeta = DivisorClass::new([alpha, beta]);
            if lattice.intersect(&zeta, h)? < 0
                && lattice.intersect(&zeta, f)? > 0
                && zeta.congruent_mod2(c1)
                && lattice.square(&zeta)? >= -bound
            {
                out.push(zeta);
            }
        }
    }
    Ok(out)
}

/// Every class of the wall set `Lambda_H` with `zeta^2 >= -bound`, independent of `n`.
pub fn walls_up_to(
    lattice: &SurfaceLattice,
    c1: &DivisorClass,
    h: &DivisorClass,
    f: &DivisorClass,
    bound: i64,
) -> Result<Vec<DivisorClass>> {
    require_odd(lattice, c1, h, f)?;
    walls_with_bound(lattice, c1, h, f, bound)
}

fn sort_walls(walls: &mut [WallClass]) {
    walls.sort_by(|a, b| b.zeta_sq.cmp(&a.zeta_sq).then_with(|| a.zeta.cmp(&b.zeta)));
}

/// The wall set of type `(c1, n)` between `H` and the empty chamber next to `f`:
/// all `zeta` with `zeta.H < 0 < zeta.f`, `zeta = c1 (mod 2)` and
/// `zeta^2 >= -(4n - c1^2)`, ordered by increasing `-zeta^2`.
pub fn walls_base(
    lattice: &SurfaceLattice,
    c1: &DivisorClass,
    h: &DivisorClass,
    f: &DivisorClass,
    n: i64,
) -> Result<Vec<WallClass>> {
    require_odd(lattice, c1, h, f)?;
    let bound = 4 * n - lattice.square(c1)?;
    let mut walls = walls_with_bound(lattice, c1, h, f, bound)?
        .into_iter()
        .map(|z| lattice.wall_class(z, c1, n))
        .collect::<Result<Vec<_>>>()?;
    sort_walls(&mut walls);
    Ok(walls)
}

/// Walls of type `(phi^*c1 - aE, n)` on the blowup for the limiting polarization
/// `H_inf`, each written as `phi^*zeta + (2t - a)E` with `zeta` a base wall.
pub fn walls_blowup_decompose(
    base: &SurfaceLattice,
    c1: &DivisorClass,
    a: u8,
    n: i64,
    h: &DivisorClass,
    f: &DivisorClass,
) -> Result<Vec<BlowupWall>> {
    if a > 1 {
        return Err(Error::OutOfRange(format!("a = {a} (expected 0 or 1)")));
    }
    require_odd(base, c1, h, f)?;
    let a = i64::from(a);
    let blown = base.blowup();
    let c1_lift = c1.extended(-a);
    let bound = 4 * n - blown.square(&c1_lift)?;
    let mut out = Vec::new();
    for zeta in walls_with_bound(base, c1, h, f, bound)? {
        let zeta_sq = base.square(&zeta)?;
        let room = zeta_sq + bound;
        let s_max = room.isqrt();
        for t in (-s_max - 1)..=(s_max + 1) {
            let s = 2 * t - a;
            if s * s > room {
                continue;
            }
            let lifted = blown.wall_class(zeta.extended(s), &c1_lift, n)?;
            let base_wall = base.wall_class(zeta.clone(), c1, n)?;
            out.push(BlowupWall { base: base_wall, t, lifted });
        }
    }
    out.sort_by(|x, y| {
        y.lifted.zeta_sq.cmp(&x.lifted.zeta_sq).then_with(|| x.base.zeta.cmp(&y.base.zeta)).then_with(|| x.t.cmp(&y.t))
    });
    Ok(out)
}
