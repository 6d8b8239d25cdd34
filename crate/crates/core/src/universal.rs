//! Universal blowup functions.
//!
//! * `U(m1, m2)`: coprime pairs of binary forms of degrees `m1 <= m2` modulo a
//!   common scalar, with its Hodge polynomial in closed form ([`u_poly`]), by
//!   the gcd-degree stratification ([`u_poly_via_strata`]) and by counting
//!   points over small prime fields ([`count_u_points`]).
//! * `B_{a,n}`: sums of products of `e(U)` over constrained index sequences ([`b_poly`]).
//! * The Gieseker universal function as theta over the squared refined eta
//!   ([`z2_closed`]) and the Uhlenbeck one as a bracket over `q^{1/12}(1 - xyq)`,
//!   built three ways: closed product form ([`z1_closed`]), from the `B_{a,n}`
//!   ([`z1_from_b`]) and the conjectured theta-times-product form ([`z1_conjectured`]).
//!
//! Quotients are never divided out: each is a [`SeriesQuotient`] compared by
//! cross-multiplication.
//!
//! The `B_{0,n}` index conditions are read as the full conjunction
//! `d_{2j} <= d_{2j-1} - 1` for every `j <= s` and `d_{2j+1} <= d_{2j}` for
//! `j <= s - 1`, summed over every length `2s` (`s >= 1`) that admits a sequence.

use num_bigint::BigInt;
use serde::Serialize;

use crate::par::{self, Strategy};
use crate::qseries::{qs_eta_sq, qs_theta, HodgePoly, MonomialJson, QExp, QSeries, ThetaVariant};
use crate::{Error, Result};

fn check_a(a: u8) -> Result<i64> {
    if a > 1 {
        return Err(Error::OutOfRange(format!("a = {a} (expected 0 or 1)")));
    }
    Ok(i64::from(a))
}

/// `e(U(m1, m2); x, y)`; arguments are sorted so that `m1 <= m2`.
pub fn u_poly(m1: i64, m2: i64) -> Result<HodgePoly> {
    if m1 < 0 || m2 < 0 {
        return Err(Error::OutOfRange(format!("U({m1}, {m2}) needs non-negative degrees")));
    }
    let (m1, m2) = if m1 <= m2 { (m1, m2) } else { (m2, m1) };
    Ok(u_poly_ordered(m1, m2))
}

fn u_poly_ordered(m1: i64, m2: i64) -> HodgePoly {
    debug_assert!(0 <= m1 && m1 <= m2);
    match (m1, m2) {
        (0, 0) => HodgePoly::t_range(0, 1),
        (0, m2) => HodgePoly::t_power(m2 + 1),
        (m1, m2) => HodgePoly::from_t_coeffs([(m1 + m2 + 1, 1), (m1 + m2 - 1, -1)]),
    }
}

/// `e(U(m1, m2))` recovered from the stratification of
/// `P^{m1+m2+1} - P^{m2}` by the degree of `gcd(f1, f2)`:
///
/// `e(U(m1,m2)) = sum_{i=m2+1}^{m1+m2+1} t^i - t^{m2-m1+1} sum_{i=0}^{m1} t^i
///               - sum_{1<=d<m1} (sum_{i=0}^{d} t^i) e(U(m1-d, m2-d))`,
///
/// with `U(0, 0) = P^1` and `U(0, m2) = P^{m2+1} - P^{m2}` as base cases.
pub fn u_poly_via_strata(m1: u32, m2: u32) -> HodgePoly {
    let (m1, m2) = if m1 <= m2 { (i64::from(m1), i64::from(m2)) } else { (i64::from(m2), i64::from(m1)) };
    strata(m1, m2)
}

fn projective_space(d: i64) -> HodgePoly {
    HodgePoly::t_range(0, d)
}

fn strata(m1: i64, m2: i64) -> HodgePoly {
    if m1 == 0 {
        return if m2 == 0 { projective_space(1) } else { &projective_space(m2 + 1) - &projective_space(m2) };
    }
    let mut e = HodgePoly::t_range(m2 + 1, m1 + m2 + 1);
    e -= &projective_space(m1).shift(m2 - m1 + 1, m2 - m1 + 1);
    for d in 1..m1 {
        e -= &(&projective_space(d) * &strata(m1 - d, m2 - d));
    }
    e
}

/// Number of `F_p`-points of `U(m1, m2)`: pairs of binary forms of degrees
/// `m1, m2` with no common root over the algebraic closure, up to a common
/// nonzero scalar. Exhaustive, `O(p^{m1+m2+2})`.
pub fn count_u_points(p: u64, m1: u32, m2: u32) -> Result<u64> {
    count_u_points_with(p, m1, m2, Strategy::default())
}

pub fn count_u_points_with(p: u64, m1: u32, m2: u32, strategy: Strategy) -> Result<u64> {
    if ![2, 3, 5].contains(&p) {
        return Err(Error::OutOfRange(format!("p = {p} (expected 2, 3 or 5)")));
    }
    if m1 + m2 > 6 {
        return Err(Error::OutOfRange(format!("m1 + m2 = {} exceeds 6", m1 + m2)));
    }
    let forms1 = all_forms(p, m1 as usize);
    let forms2 = all_forms(p, m2 as usize);
    let coprime_pairs = par::map_reduce(
        strategy,
        &forms1,
        || 0u64,
        |f1| forms2.iter().filter(|f2| binary_forms_coprime(p, f1, f2)).count() as u64,
        |a, b| a + b,
    );
    debug_assert_eq!(coprime_pairs % (p - 1), 0);
    Ok(coprime_pairs / (p - 1))
}

/// Every coefficient vector `c_0..c_m` over `F_p`, where the form is `sum c_i x^i y^{m-i}`.
fn all_forms(p: u64, m: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::with_capacity(m + 1)];
    for _ in 0..=m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// No common zero on `P^1` over the algebraic closure (the pair `(0, 0)` is never coprime).
fn binary_forms_coprime(p: u64, f1: &[u64], f2: &[u64]) -> bool {
    // both vanish at [1:0] iff both top coefficients are zero
    if f1[f1.len() - 1] == 0 && f2[f2.len() - 1] == 0 {
        return false;
    }
    poly_gcd_degree(p, trim(f1.to_vec()), trim(f2.to_vec())) == Some(0)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^{p-2}
    let mut result = 1;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Degree of `gcd(a, b)` in `F_p[x]`; `None` when both are zero.
fn poly_gcd_degree(p: u64, mut a: Vec<u64>, mut b: Vec<u64>) -> Option<usize> {
    while !b.is_empty() {
        // a <- a mod b
        let lead_inv = inv_mod(b[b.len() - 1], p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = a[a.len() - 1] * lead_inv % p;
            for (i, bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + p * p - factor * bc % p) % p;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

/// An index sequence `d_1..d_L` for `B_{a,n}`, `L = 2s` (`a = 0`) or `2s + 1` (`a = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSequence {
    pub entries: Vec<i64>,
    pub a: u8,
}

/// Whether the step `d_k -> d_{k+1}` (1-based `k`) must strictly decrease.
fn strict_step(a: i64, k: usize) -> bool {
    (k % 2 == 1) == (a == 0)
}

impl IndexSequence {
    /// Checks the length parity and every step condition.
    pub fn is_valid(&self) -> bool {
        let len = self.entries.len();
        let a = i64::from(self.a);
        if self.a > 1 || (len as i64 - a) % 2 != 0 || (self.a == 0 && len == 0) {
            return false;
        }
        if self.entries.iter().any(|&d| d < 0) {
            return false;
        }
        self.entries.windows(2).enumerate().all(|(i, w)| w[1] <= w[0] - i64::from(strict_step(a, i + 1)))
    }

    /// `prod_k e(U(d_k - d_{k+1} - [strict], d_k + d_{k+1})) * e(U(d_L, d_L))`.
    pub fn weight(&self) -> HodgePoly {
        let a = i64::from(self.a);
        let mut w = HodgePoly::one();
        for (i, pair) in self.entries.windows(2).enumerate() {
            let (m1, m2) = (pair[0] - pair[1] - i64::from(strict_step(a, i + 1)), pair[0] + pair[1]);
            debug_assert!(0 <= m1 && m1 <= m2, "U arguments are already ordered");
            w = &w * &u_poly_ordered(m1, m2);
        }
        if let Some(&last) = self.entries.last() {
            w = &w * &u_poly_ordered(last, last);
        }
        w
    }
}

/// Minimal value of each entry so that the rest of a length-`len` sequence is feasible.
fn minimal_entries(a: i64, len: usize) -> Vec<i64> {
    let mut need = vec![0; len];
    for k in (0..len.saturating_sub(1)).rev() {
        need[k] = need[k + 1] + i64::from(strict_step(a, k + 1));
    }
    need
}

/// Smallest possible `sum d_i` for the given `s`: `s^2` for `a = 0`, `s^2 + s` for `a = 1`.
pub fn minimal_sequence_sum(a: u8, s: usize) -> i64 {
    let a = i64::from(a);
    minimal_entries(a, 2 * s + a as usize).iter().sum()
}

/// Depth-first search over sequences of a fixed length and sum.
struct SequenceSearch {
    a: i64,
    n: i64,
    /// Smallest feasible value at each position.
    need: Vec<i64>,
    /// `tail_min[k] = sum(need[k..])`.
    tail_min: Vec<i64>,
}

impl SequenceSearch {
    fn new(a: i64, len: usize, n: i64) -> Self {
        let need = minimal_entries(a, len);
        let mut tail_min = vec![0; len + 1];
        for k in (0..len).rev() {
            tail_min[k] = tail_min[k + 1] + need[k];
        }
        SequenceSearch { a, n, need, tail_min }
    }

    fn go(&self, seq: &mut Vec<i64>, sum: i64, visit: &mut dyn FnMut(&[i64])) {
        let k = seq.len();
        if k == self.need.len() {
            if sum == self.n {
                visit(seq);
            }
            return;
        }
        let upper = match seq.last() {
            None => self.n,
            Some(&prev) => prev - i64::from(strict_step(self.a, k)),
        };
        let upper = upper.min(self.n - sum - self.tail_min[k + 1]);
        for d in self.need[k]..=upper {
            seq.push(d);
            self.go(seq, sum + d, visit);
            seq.pop();
        }
    }
}

/// Calls `visit` on every valid sequence of length `len` summing to `n`.
fn for_each_sequence(a: i64, len: usize, n: i64, visit: &mut dyn FnMut(&[i64])) {
    SequenceSearch::new(a, len, n).go(&mut Vec::with_capacity(len), 0, visit);
}

/// Every valid index sequence for `B_{a,n}`, ordered by length then lexicographically.
pub fn index_sequences(a: u8, n: i64) -> Result<Vec<IndexSequence>> {
    let ai = check_a(a)?;
    let mut out = Vec::new();
    for s in sequence_lengths(a, n) {
        let len = 2 * s + ai as usize;
        for_each_sequence(ai, len, n, &mut |d| out.push(IndexSequence { entries: d.to_vec(), a }));
    }
    Ok(out)
}

/// The values of `s` that can contribute to `B_{a,n}`.
fn sequence_lengths(a: u8, n: i64) -> Vec<usize> {
    if n < 0 {
        return Vec::new();
    }
    let first = if a == 0 { 1 } else { 0 };
    let scan_to = (n as f64).sqrt().ceil() as usize + 1;
    let lengths: Vec<usize> = (first..=scan_to).filter(|&s| minimal_sequence_sum(a, s) <= n).collect();
    // sums grow with s, so nothing beyond the scan range can reach n
    assert!(minimal_sequence_sum(a, scan_to + 1) > n);
    lengths
}

/// `B_{a,n}(x, y)`.
pub fn b_poly(a: u8, n: i64) -> Result<HodgePoly> {
    b_poly_with(a, n, Strategy::default())
}

pub fn b_poly_with(a: u8, n: i64, strategy: Strategy) -> Result<HodgePoly> {
    let ai = check_a(a)?;
    if a == 0 && n == 0 {
        return Ok(HodgePoly::one());
    }
    let lengths = sequence_lengths(a, n);
    let parts = par::map_collect(strategy, &lengths, |&s| {
        let mut acc = HodgePoly::zero();
        for_each_sequence(ai, 2 * s + ai as usize, n, &mut |d| {
            acc += &IndexSequence { entries: d.to_vec(), a }.weight();
        });
        acc
    });
    Ok(parts.iter().fold(HodgePoly::zero(), |acc, p| &acc + p))
}

/// A formal quotient of two truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesQuotient {
    pub numerator: QSeries,
    pub denominator: QSeries,
}

impl SeriesQuotient {
    /// `self.num * other.den` and `other.num * self.den`.
    pub fn cross_products(&self, other: &SeriesQuotient) -> (QSeries, QSeries) {
        (self.numerator.mul(&other.denominator), other.numerator.mul(&self.denominator))
    }

    /// First exponent where the cross products differ, up to the common cap.
    pub fn cross_difference(&self, other: &SeriesQuotient) -> Option<QExp> {
        let (l, r) = self.cross_products(other);
        l.first_difference(&r)
    }

    pub fn specialize_xy1(&self) -> SeriesQuotient {
        SeriesQuotient { numerator: self.numerator.specialize_xy1(), denominator: self.denominator.specialize_xy1() }
    }
}

fn twelfth() -> QExp {
    QExp::ratio(1, 12).expect("on grid")
}

/// `q^{1/12} (1 - xy q)`.
pub fn z1_denominator(cap: QExp) -> QSeries {
    QSeries::monomial(twelfth(), HodgePoly::one(), cap).sub(&QSeries::monomial(
        twelfth() + QExp::integer(1),
        HodgePoly::t_power(1),
        cap,
    ))
}

/// Gieseker universal function as theta over the squared refined eta, both truncated to `cap + 1/12`.
pub fn z2_closed(a: u8, cap: QExp) -> Result<SeriesQuotient> {
    check_a(a)?;
    let c = cap + twelfth();
    Ok(SeriesQuotient { numerator: qs_theta(a, c, ThetaVariant::Moduli), denominator: qs_eta_sq(c) })
}

/// `(1 - (xy)^{2j-2} q^j) / (1 - (xy)^{2j} q^j)` expanded to `cap`.
fn ratio_factor(j: i64, cap: QExp) -> QSeries {
    let qj = QExp::integer(j);
    let num = QSeries::one(cap).sub(&QSeries::monomial(qj, HodgePoly::t_power(2 * j - 2), cap));
    let geo = QSeries::monomial(qj, HodgePoly::t_power(2 * j), cap).geom().expect("positive valuation");
    num.mul(&geo)
}

/// The bracket of the closed form
/// `sum_{s>=0} t^{(m^2+m)/2} q^{m^2/4} P_m + sum_{s>=1-a} t^{(m^2+m-2)/2} q^{m^2/4} P_{m-1}`
/// with `m = 2s + a` and `P_k = prod_{j=1}^{k} (1 - t^{2j-2} q^j)/(1 - t^{2j} q^j)`.
pub fn z1_closed_bracket(a: u8, cap: QExp) -> Result<QSeries> {
    let a = check_a(a)?;
    let mut out = QSeries::zero(cap);
    if cap.num() < 0 {
        return Ok(out);
    }
    // partial products P_0, P_1, ... at full cap
    let mut partial = vec![QSeries::one(cap)];
    let mut s = 0;
    loop {
        let m = 2 * s + a;
        let offset = QExp::from_num(6 * m * m);
        if offset > cap {
            break;
        }
        while partial.len() <= m as usize {
            let k = partial.len() as i64;
            let next = partial[k as usize - 1].mul(&ratio_factor(k, cap));
            partial.push(next);
        }
        let room = cap - offset;
        let t1 = (m * m + m) / 2;
        out = out.add(&partial[m as usize].truncate(room).shift(offset, t1));
        if m >= 1 {
            let t2 = (m * m + m - 2) / 2;
            out = out.add(&partial[m as usize - 1].truncate(room).shift(offset, t2));
        }
        s += 1;
    }
    Ok(out)
}

/// `q^{a/4} sum_n B_{a,n} q^n` truncated to `cap`.
pub fn z1_from_b_bracket(a: u8, cap: QExp) -> Result<QSeries> {
    z1_from_b_bracket_with(a, cap, Strategy::default())
}

pub fn z1_from_b_bracket_with(a: u8, cap: QExp, strategy: Strategy) -> Result<QSeries> {
    let ai = check_a(a)?;
    let shift = QExp::from_num(6 * ai);
    let mut out = QSeries::zero(cap);
    if cap < shift {
        return Ok(out);
    }
    let ns: Vec<i64> = (0..=(cap - shift).floor()).collect();
    let coeffs = ns.iter().map(|&n| b_poly_with(a, n, strategy)).collect::<Result<Vec<_>>>()?;
    for (n, c) in ns.iter().zip(coeffs) {
        out.add_term(QExp::integer(*n) + shift, c);
    }
    Ok(out)
}

/// `theta_a * prod_{d>=1} (1 - t^{2d-1} q^d)/(1 - t^{2d} q^d)` truncated to `cap`.
pub fn z1_conjectured_bracket(a: u8, cap: QExp) -> Result<QSeries> {
    check_a(a)?;
    let mut out = qs_theta(a, cap, ThetaVariant::Moduli);
    for d in 1..=cap.floor() {
        let qd = QExp::integer(d);
        let num = QSeries::one(cap).sub(&QSeries::monomial(qd, HodgePoly::t_power(2 * d - 1), cap));
        let geo = QSeries::monomial(qd, HodgePoly::t_power(2 * d), cap).geom()?;
        out = out.mul(&num).mul(&geo);
    }
    Ok(out)
}

fn with_z1_denominator(bracket: QSeries) -> SeriesQuotient {
    let cap = bracket.cap();
    SeriesQuotient { numerator: bracket, denominator: z1_denominator(cap) }
}

/// Uhlenbeck universal function in closed product form, truncated to `cap + 1/12`.
pub fn z1_closed(a: u8, cap: QExp) -> Result<SeriesQuotient> {
    Ok(with_z1_denominator(z1_closed_bracket(a, cap + twelfth())?))
}

/// Uhlenbeck universal function from the `B_{a,n}` sums, truncated to `cap + 1/12`.
pub fn z1_from_b(a: u8, cap: QExp) -> Result<SeriesQuotient> {
    Ok(with_z1_denominator(z1_from_b_bracket(a, cap + twelfth())?))
}

/// Conjectured theta-times-product form, truncated to `cap + 1/12`.
pub fn z1_conjectured(a: u8, cap: QExp) -> Result<SeriesQuotient> {
    Ok(with_z1_denominator(z1_conjectured_bracket(a, cap + twelfth())?))
}

/// Outcome of comparing the closed and conjectured forms coefficientwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub order: i64,
    pub a: u8,
    pub agree: bool,
    pub first_diff: Option<ProbeDiff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeDiff {
    /// Exponent numerator over 24.
    pub q: i64,
    pub lhs: Vec<MonomialJson>,
    pub rhs: Vec<MonomialJson>,
}

fn monomials(p: &HodgePoly) -> Vec<MonomialJson> {
    p.terms().map(|(&(x, y), c)| MonomialJson { x, y, c: c.to_string() }).collect()
}

/// Compares the closed-form bracket with the conjectured one through `q^order`.
/// Disagreement is reported, not treated as an error.
pub fn conjecture_probe(a: u8, order: i64) -> Result<ProbeReport> {
    let cap = QExp::integer(order);
    let lhs = z1_closed_bracket(a, cap)?;
    let rhs = z1_conjectured_bracket(a, cap)?;
    let first_diff = lhs.first_difference(&rhs).map(|e| ProbeDiff {
        q: e.num(),
        lhs: monomials(&lhs.coeff(e)),
        rhs: monomials(&rhs.coeff(e)),
    });
    Ok(ProbeReport { order, a, agree: first_diff.is_none(), first_diff })
}

/// `e(U(m1, m2))` evaluated at `t = p`, the count it predicts over `F_p`.
pub fn u_poly_at(p: u64, m1: u32, m2: u32) -> BigInt {
    u_poly(i64::from(m1), i64::from(m2)).expect("non-negative").eval_t(&BigInt::from(p)).expect("polynomial in t")
}
