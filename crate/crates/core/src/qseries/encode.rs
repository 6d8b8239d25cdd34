//! JSON and text renderings of [`QSeries`].
//!
//! JSON: `{"den":24,"cap":N,"terms":[{"q":N,"coeff":[{"x":i,"y":j,"c":"<decimal>"}]}]}`
//! with terms ascending in `q` and monomials ascending in `(x, y)`. Coefficients
//! are decimal strings so arbitrary precision survives the round trip.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{HodgePoly, QExp, QSeries, DEN};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub den: i64,
    pub cap: i64,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub q: i64,
    pub coeff: Vec<MonomialJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    pub x: i64,
    pub y: i64,
    pub c: String,
}

impl From<&QSeries> for SeriesJson {
    fn from(s: &QSeries) -> Self {
        SeriesJson {
            den: DEN,
            cap: s.cap().num(),
            terms: s
                .terms()
                .map(|(e, p)| TermJson {
                    q: e.num(),
                    coeff: p.terms().map(|(&(x, y), c)| MonomialJson { x, y, c: c.to_string() }).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SeriesJson> for QSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.den != DEN {
            return Err(Error::Encoding(format!("denominator {} (expected {DEN})", j.den)));
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            let mut p = HodgePoly::zero();
            for m in t.coeff {
                let c: BigInt = m.c.parse().map_err(|_| Error::Encoding(format!("bad coefficient {:?}", m.c)))?;
                p.add_term(m.x, m.y, c);
            }
            terms.push((QExp::from_num(t.q), p));
        }
        QSeries::try_from_terms(QExp::from_num(j.cap), terms)
    }
}

impl QSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("series JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<QSeries> {
        let j: SeriesJson = serde_json::from_str(text)?;
        j.try_into()
    }

    /// One line per exponent: the reduced exponent right-aligned, then the coefficient.
    pub fn to_text(&self) -> String {
        let rows: Vec<(String, String)> = self.terms().map(|(e, c)| (e.to_string(), c.to_string())).collect();
        let width = rows.iter().map(|(e, _)| e.len()).max().unwrap_or(1).max(3);
        let mut out = String::new();
        let _ = writeln!(out, "{:>width$}  coefficient   (cap {})", "q^", self.cap());
        for (e, c) in rows {
            let _ = writeln!(out, "{e:>width$}  {c}");
        }
        out
    }
}
