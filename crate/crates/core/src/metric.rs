//! Duplicated co-citation ratio (XM), its normalized form and the
//! interdisciplinarity index IDRI = 1 - normalized XM, for single papers and
//! for groups pooled by the generalized mediant.
//!
//! All values are exact rationals; decimal rendering happens only at the
//! output boundary.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PaperId;
use crate::motif::FocalStats;

pub type Rational = Ratio<i128>;

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(i128::from(num), i128::from(den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricStatus {
    Ok,
    /// Fewer than two citers: the normalization is 0/0.
    InsufficientCitations,
    /// At least two citers, but none of them cites anything besides the focal paper.
    EmptyDenominator,
}

impl MetricStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            MetricStatus::Ok => "ok",
            MetricStatus::InsufficientCitations => "insufficient_citations",
            MetricStatus::EmptyDenominator => "empty_denominator",
        }
    }
}

impl fmt::Display for MetricStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-paper metrics. `xm_norm` and `idri` are present only when status is ok.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricResult {
    pub focal: PaperId,
    /// q / D; absent when D = 0.
    pub xm: Option<Rational>,
    /// (s - 1) / s; absent when s = 0.
    pub xm_max: Option<Rational>,
    pub xm_norm: Option<Rational>,
    pub idri: Option<Rational>,
    pub status: MetricStatus,
}

pub fn compute_metric(stats: &FocalStats) -> MetricResult {
    let xm = (stats.d > 0).then(|| ratio(stats.q, stats.d));
    let xm_max = (stats.s > 0).then(|| ratio(stats.s - 1, stats.s));
    let status = if stats.s < 2 {
        MetricStatus::InsufficientCitations
    } else if stats.d == 0 {
        MetricStatus::EmptyDenominator
    } else {
        MetricStatus::Ok
    };

    let (xm_norm, idri) = match (status, xm) {
        (MetricStatus::Ok, Some(xm)) => {
            let norm = xm * ratio(stats.s, stats.s - 1);
            debug_assert!(norm <= Rational::one());
            (Some(norm), Some(Rational::one() - norm))
        }
        _ => (None, None),
    };
    MetricResult {
        focal: stats.focal.clone(),
        xm,
        xm_max,
        xm_norm,
        idri,
        status,
    }
}

/// Generalized mediant (a1 + a2 + ...) / (b1 + b2 + ...).
pub fn generalized_mediant(fractions: &[(u64, u64)]) -> Result<Rational> {
    let mut num = 0i128;
    let mut den = 0i128;
    for &(a, b) in fractions {
        if b == 0 {
            return Err(Error::ZeroDenominator);
        }
        num += i128::from(a);
        den += i128::from(b);
    }
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(num, den))
}

/// Mediant of a/b and c/d.
pub fn mediant(a: u64, b: u64, c: u64, d: u64) -> Result<Rational> {
    generalized_mediant(&[(a, b), (c, d)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IncludeRule {
    /// Every cited paper contributes.
    #[default]
    AtLeastOneCiter,
    /// Only papers with a defined per-paper metric population (s >= 2).
    AtLeastTwoCiters,
}

impl IncludeRule {
    fn min_citers(self) -> u64 {
        match self {
            IncludeRule::AtLeastOneCiter => 1,
            IncludeRule::AtLeastTwoCiters => 2,
        }
    }
}

impl FromStr for IncludeRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "s_ge_1" => Ok(IncludeRule::AtLeastOneCiter),
            "s_ge_2" => Ok(IncludeRule::AtLeastTwoCiters),
            other => Err(format!(
                "unknown include rule {other:?} (expected s_ge_1 or s_ge_2)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregateStatus {
    Ok,
    InsufficientGroup,
}

impl AggregateStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AggregateStatus::Ok => "ok",
            AggregateStatus::InsufficientGroup => "insufficient_group",
        }
    }
}

impl fmt::Display for AggregateStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Joint metrics over a set of papers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregateResult {
    pub group: String,
    /// Included members, sorted.
    pub members: Vec<PaperId>,
    pub n: u64,
    pub sum_q: u64,
    pub sum_d: u64,
    pub sum_s: u64,
    pub sum_k: u64,
    pub xm_joint: Option<Rational>,
    pub xm_norm_joint: Option<Rational>,
    pub idri_joint: Option<Rational>,
    pub status: AggregateStatus,
}

/// Pools q, D and s over the members admitted by `rule`.
///
/// The joint ratio is the mediant sum(q) / sum(D); its maximum is the
/// mediant of the per-paper maxima, (sum(s) - n) / sum(s), which gives the
/// normalizer. Papers without citers are never admitted.
pub fn aggregate(
    group: &str,
    members: &[FocalStats],
    rule: IncludeRule,
) -> Result<AggregateResult> {
    let included: Vec<&FocalStats> = members
        .iter()
        .filter(|m| m.s >= rule.min_citers())
        .collect();
    if included.is_empty() {
        return Err(Error::NoAggregableMembers);
    }
    let n = included.len() as u64;
    let sum_q = included.iter().map(|m| m.q).sum::<u64>();
    let sum_d = included.iter().map(|m| m.d).sum::<u64>();
    let sum_s = included.iter().map(|m| m.s).sum::<u64>();
    let sum_k = included.iter().map(|m| m.k).sum::<u64>();

    let xm_joint = if sum_d > 0 {
        // members with D = 0 have q = 0 and add nothing to either side
        let parts: Vec<(u64, u64)> = included
            .iter()
            .filter(|m| m.d > 0)
            .map(|m| (m.q, m.d))
            .collect();
        Some(generalized_mediant(&parts)?)
    } else {
        None
    };

    let (status, xm_norm_joint, idri_joint) = match xm_joint {
        Some(xm) if sum_s > n => {
            let norm = ratio(sum_s, sum_s - n) * xm;
            (
                AggregateStatus::Ok,
                Some(norm),
                Some(Rational::one() - norm),
            )
        }
        _ => (AggregateStatus::InsufficientGroup, None, None),
    };

    let mut ids: Vec<PaperId> = included.iter().map(|m| m.focal.clone()).collect();
    ids.sort();
    Ok(AggregateResult {
        group: group.to_owned(),
        members: ids,
        n,
        sum_q,
        sum_d,
        sum_s,
        sum_k,
        xm_joint,
        xm_norm_joint,
        idri_joint,
        status,
    })
}

/// (s_a - s_b) * (q_a/D_a - q_b/D_b). Positive values are the only way the
/// normalized joint metric of a pair can fall outside the members' range.
pub fn condition_11(a: &FocalStats, b: &FocalStats) -> Result<Rational> {
    for st in [a, b] {
        if st.s < 2 || st.d == 0 {
            return Err(Error::Degenerate(format!(
                "paper {} needs s >= 2 and D >= 1 (s = {}, D = {})",
                st.focal, st.s, st.d
            )));
        }
    }
    let ds = Rational::from_integer(i128::from(a.s) - i128::from(b.s));
    Ok(ds * (ratio(a.q, a.d) - ratio(b.q, b.d)))
}

/// Decimal rendering with round-half-even to `places` fractional digits.
pub fn render_decimal(value: &Rational, places: usize) -> String {
    let negative = value.is_negative();
    let num = value.numer().unsigned_abs();
    let den = value.denom().unsigned_abs();
    let (mut int, mut rem) = num.div_rem(&den);

    let mut digits = Vec::with_capacity(places);
    for _ in 0..places {
        let (d, r) = (rem * 10).div_rem(&den);
        digits.push(d as u8);
        rem = r;
    }

    let last_odd = digits.last().map_or(int % 2 == 1, |d| d % 2 == 1);
    let twice = rem * 2;
    if twice > den || (twice == den && last_odd) {
        let mut carry = true;
        for d in digits.iter_mut().rev() {
            if *d == 9 {
                *d = 0;
            } else {
                *d += 1;
                carry = false;
                break;
            }
        }
        if carry {
            int += 1;
        }
    }

    let is_zero = int.is_zero() && digits.iter().all(|&d| d == 0);
    let mut out = String::new();
    if negative && !is_zero {
        out.push('-');
    }
    out.push_str(&int.to_string());
    if places > 0 {
        out.push('.');
        out.extend(digits.iter().map(|d| char::from(b'0' + d)));
    }
    out
}

/// `value * 100` rounded half-even to one decimal place, with a `%` suffix.
pub fn render_percent(value: &Rational) -> String {
    let mut s = render_decimal(&(value * Rational::from_integer(100)), 1);
    s.push('%');
    s
}
