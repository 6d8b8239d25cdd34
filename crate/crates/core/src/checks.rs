//! Named exact identity checks, shared by the command line and the test suites.
//!
//! Every check compares two independently built series (or integer tables)
//! and reports the first exponent where they differ.

use num_bigint::BigInt;
use serde::Serialize;

use crate::hilb::hilb_ratio_sides;
use crate::qseries::{qs_eta_sq, qs_theta, HodgePoly, MonomialJson, QExp, QSeries, ThetaVariant};
use crate::universal::{
    count_u_points, u_poly, u_poly_at, u_poly_via_strata, z1_closed, z1_closed_bracket, z1_from_b, z2_closed,
};
use crate::wallcross::{base_genfun, blowup_genfun, GenfunMode, ModuliProblem};
use crate::{Error, Result};

pub const CHECK_NAMES: &[&str] =
    &["lemma-2.8", "lemma-2.10", "eq-2.17", "thm-2.15", "thm-3.9", "lemma-3.1-strata", "lemma-3.1-ffield", "spec-xy1"];

/// Result of one identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub a: Option<u8>,
    /// Cap numerator over 24.
    pub cap: i64,
    pub passed: bool,
    /// Exponent numerator of the first mismatch.
    pub first_diff: Option<i64>,
    pub lhs: Option<Vec<MonomialJson>>,
    pub rhs: Option<Vec<MonomialJson>>,
    pub detail: Vec<String>,
}

impl CheckOutcome {
    fn new(name: &str, a: Option<u8>, cap: QExp) -> Self {
        CheckOutcome {
            name: name.to_string(),
            a,
            cap: cap.num(),
            passed: true,
            first_diff: None,
            lhs: None,
            rhs: None,
            detail: Vec::new(),
        }
    }

    fn compare(mut self, lhs: &QSeries, rhs: &QSeries) -> Self {
        if let Some(e) = lhs.first_difference(rhs) {
            self.passed = false;
            self.first_diff = Some(e.num());
            self.lhs = Some(monomials(&lhs.coeff(e)));
            self.rhs = Some(monomials(&rhs.coeff(e)));
        }
        self
    }

    fn note(mut self, line: impl Into<String>) -> Self {
        self.detail.push(line.into());
        self
    }

    fn fail(mut self, line: impl Into<String>) -> Self {
        self.passed = false;
        self.detail.push(line.into());
        self
    }

    /// One human-readable line.
    pub fn summary(&self) -> String {
        let a = self.a.map(|a| format!(" a={a}")).unwrap_or_default();
        let (n, d) = QExp(self.cap).reduced();
        let cap = if d == 1 { n.to_string() } else { format!("{n}/{d}") };
        match self.first_diff {
            _ if self.passed => format!("PASS {}{a} cap={cap}", self.name),
            Some(e) => {
                let (n, d) = QExp(e).reduced();
                let at = if d == 1 { n.to_string() } else { format!("{n}/{d}") };
                format!("FAIL {}{a} cap={cap} first difference at q^{at}", self.name)
            }
            None => format!("FAIL {}{a} cap={cap}: {}", self.name, self.detail.join("; ")),
        }
    }
}

fn monomials(p: &HodgePoly) -> Vec<MonomialJson> {
    p.terms().map(|(&(x, y), c)| MonomialJson { x, y, c: c.to_string() }).collect()
}

fn a_values(a: Option<u8>) -> Result<Vec<u8>> {
    match a {
        None => Ok(vec![0, 1]),
        Some(a @ 0..=1) => Ok(vec![a]),
        Some(a) => Err(Error::OutOfRange(format!("a = {a} (expected 0 or 1)"))),
    }
}

/// Runs the named check at `cap`. Checks that depend on `a` run once per
/// value when `a` is `None`. The `lemma-3.1-*` checks use fixed tables and ignore `cap`.
pub fn run_check(name: &str, a: Option<u8>, cap: QExp) -> Result<Vec<CheckOutcome>> {
    match name {
        "lemma-2.8" => Ok(vec![base_modes(cap)?]),
        "lemma-2.10" => a_values(a)?.into_iter().map(|a| blowup_modes(a, cap)).collect(),
        "eq-2.17" => Ok(vec![hilb_ratio(cap)]),
        "thm-2.15" => a_values(a)?.into_iter().map(|a| blowup_formula(a, cap)).collect(),
        "thm-3.9" => a_values(a)?.into_iter().map(|a| z1_from_b_vs_closed(a, cap)).collect(),
        "lemma-3.1-strata" => Ok(vec![u_strata(8)]),
        "lemma-3.1-ffield" => Ok(vec![u_ffield(&[2, 3], 5)?]),
        "spec-xy1" => a_values(a)?.into_iter().map(|a| specializations(a, cap)).collect(),
        other => Err(Error::OutOfRange(format!("unknown check {other:?}; expected one of {}", CHECK_NAMES.join(", ")))),
    }
}

/// Per-n and closed base generating functions agree, with leading term `(1 + t + t^2) q^{5/4}`.
pub fn base_modes(cap: QExp) -> Result<CheckOutcome> {
    let p = ModuliProblem::f1_standard();
    let per_n = base_genfun(&p, cap, GenfunMode::PerN)?;
    let closed = base_genfun(&p, cap, GenfunMode::Closed)?;
    let out = CheckOutcome::new("lemma-2.8", None, cap).compare(&per_n, &closed);
    let lead = QExp::ratio(5, 4).expect("on grid");
    if cap >= lead {
        let expected = HodgePoly::t_range(0, 2);
        if closed.valuation() != Some(lead) || closed.coeff(lead) != expected {
            return Ok(out.fail(format!("leading term is not {expected} q^5/4")));
        }
    }
    Ok(out)
}

pub fn blowup_modes(a: u8, cap: QExp) -> Result<CheckOutcome> {
    let p = ModuliProblem::f1_standard();
    let per_n = blowup_genfun(&p, a, cap, GenfunMode::PerN)?;
    let closed = blowup_genfun(&p, a, cap, GenfunMode::Closed)?;
    Ok(CheckOutcome::new("lemma-2.10", Some(a), cap).compare(&per_n, &closed))
}

pub fn hilb_ratio(cap: QExp) -> CheckOutcome {
    let (lhs, rhs) = hilb_ratio_sides(cap);
    CheckOutcome::new("eq-2.17", None, cap).compare(&lhs, &rhs)
}

/// `blowup_genfun * eta_sq = q^{1/12} * base_genfun * theta_a`, all closed mode.
///
/// The refined eta carries its own `q^{1/12}`, which the blowup/base ratio
/// does not; the shift on the right balances it.
pub fn blowup_formula(a: u8, cap: QExp) -> Result<CheckOutcome> {
    let p = ModuliProblem::f1_standard();
    let twelfth = QExp::ratio(1, 12).expect("on grid");
    let lhs = blowup_genfun(&p, a, cap, GenfunMode::Closed)?.mul(&qs_eta_sq(cap));
    let rhs = base_genfun(&p, cap, GenfunMode::Closed)?
        .mul(&qs_theta(a, cap, ThetaVariant::Moduli))
        .shift(twelfth, 0)
        .truncate(cap);
    Ok(CheckOutcome::new("thm-2.15", Some(a), cap).compare(&lhs, &rhs))
}

/// The index-sequence construction equals the closed product form, cross-multiplied.
pub fn z1_from_b_vs_closed(a: u8, cap: QExp) -> Result<CheckOutcome> {
    let (lhs, rhs) = z1_from_b(a, cap)?.cross_products(&z1_closed(a, cap)?);
    Ok(CheckOutcome::new("thm-3.9", Some(a), cap).compare(&lhs, &rhs))
}

/// Closed form of `e(U)` against the stratification recursion for `0 <= m1 <= m2 <= max`.
pub fn u_strata(max: u32) -> CheckOutcome {
    let mut out = CheckOutcome::new("lemma-3.1-strata", None, QExp::ZERO);
    let mut cases = 0;
    for m2 in 0..=max {
        for m1 in 0..=m2 {
            cases += 1;
            let closed = u_poly(i64::from(m1), i64::from(m2)).expect("non-negative");
            let strata = u_poly_via_strata(m1, m2);
            if closed != strata {
                out = out.fail(format!("U({m1},{m2}): {closed} vs {strata}"));
            }
        }
    }
    out.note(format!("{cases} cases"))
}

/// Point counts over `F_p` against `e(U)` at `t = p`, for `m1 <= m2` and `m1 + m2 <= max_sum`.
pub fn u_ffield(primes: &[u64], max_sum: u32) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("lemma-3.1-ffield", None, QExp::ZERO);
    for &p in primes {
        for m2 in 0..=max_sum {
            for m1 in 0..=m2.min(max_sum - m2) {
                let count = BigInt::from(count_u_points(p, m1, m2)?);
                let expected = u_poly_at(p, m1, m2);
                let line = format!("p={p} ({m1},{m2}): count {count}, e(U) at t=p {expected}");
                out = if count == expected { out.note(line) } else { out.fail(line) };
            }
        }
    }
    Ok(out)
}

/// `sum_{n in Z} q^{(n + a/2)^2}` with integer coefficients, built by direct enumeration.
pub fn plain_theta(a: u8, cap: QExp) -> QSeries {
    let a = i64::from(a);
    let mut terms = std::collections::BTreeMap::<i64, i64>::new();
    let mut m = a;
    // exponent (m/2)^2 for m = 2n + a has numerator 6 m^2
    while 6 * m * m <= cap.num() {
        *terms.entry(6 * m * m).or_default() += if m == 0 { 1 } else { 2 };
        m += 2;
    }
    QSeries::try_from_terms(cap, terms.into_iter().map(|(e, c)| (QExp(e), HodgePoly::from(c)))).expect("non-negative")
}

/// `[q^{1/24} prod (1 - q^n)]^2` via the pentagonal number theorem.
pub fn plain_eta_sq(cap: QExp) -> QSeries {
    let mut eta = std::collections::BTreeMap::<i64, i64>::new();
    // q^{1/24} sum_k (-1)^k q^{k(3k-1)/2}: numerators 1 + 12 k(3k - 1)
    for k in -64i64..=64 {
        let e = 1 + 12 * k * (3 * k - 1);
        if e <= cap.num() {
            *eta.entry(e).or_default() += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    let eta = QSeries::try_from_terms(cap, eta.into_iter().map(|(e, c)| (QExp(e), HodgePoly::from(c))))
        .expect("non-negative");
    eta.mul(&eta)
}

/// The `x = y = 1` specializations of both universal functions.
pub fn specializations(a: u8, cap: QExp) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("spec-xy1", Some(a), cap);
    let z2 = z2_closed(a, cap)?.specialize_xy1();
    for (what, got, want) in [
        ("z2 numerator", z2.numerator, plain_theta(a, cap)),
        ("z2 denominator", z2.denominator, plain_eta_sq(cap)),
        (
            "z1 bracket",
            z1_closed_bracket(a, cap)?.specialize_xy1(),
            qs_theta(a, cap, ThetaVariant::Moduli).specialize_xy1(),
        ),
    ] {
        let probe = CheckOutcome::new("spec-xy1", Some(a), cap).compare(&got, &want);
        if !probe.passed {
            let mut failed = probe.note(format!("{what} differs"));
            failed.detail.splice(0..0, out.detail);
            return Ok(failed);
        }
        out = out.note(format!("{what} ok"));
    }
    Ok(out)
}
