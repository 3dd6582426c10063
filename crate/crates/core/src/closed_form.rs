//! Analytic non-existence thresholds and the verdict type every criterion
//! reports through.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rational_json, Rational};
use crate::lp::{two_support_certificate, CertificateJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Singleton,
    Scott,
    Defect1,
    Defect2,
    CorollaryL,
    TwoSupport,
    ShadowProp1,
    LinearProgram,
}

impl Method {
    pub fn provenance(self) -> &'static str {
        match self {
            Method::Singleton => "singleton bound k <= floor(n/2)",
            Method::Scott => "Scott threshold for AME states",
            Method::Defect1 => "defect-1 threshold (table defect12)",
            Method::Defect2 => "defect-2 threshold (table defect12, improve5 for n <= 187)",
            Method::CorollaryL => "factorial-ratio defect-l criterion (table defect34)",
            Method::TwoSupport => "two-support dual certificate (improve5 for n >= 224)",
            Method::ShadowProp1 => "shadow refinement criterion (tables shadow3/4/5, improve4)",
            Method::LinearProgram => "exact simplex on U(n,k,q) with Farkas certificate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// The method's exact condition holds: no k-uniform state exists.
    Nonexistent,
    /// The method's condition fails; nothing is claimed.
    Inconclusive,
    /// The method's hypotheses do not cover this query.
    NotApplicable,
    /// A resource limit stopped the method before a verdict.
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub label: String,
    #[serde(with = "rational_json")]
    pub value: Rational,
}

impl TraceEntry {
    pub fn new(label: impl Into<String>, value: Rational) -> Self {
        TraceEntry {
            label: label.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub n: u32,
    pub k: u32,
    pub q: u32,
    pub method: Method,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Every rational the decision compared, in order.
    pub trace: Vec<TraceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

impl BoundVerdict {
    pub fn new(n: u32, k: u32, q: u32, method: Method, outcome: Outcome) -> Self {
        BoundVerdict {
            n,
            k,
            q,
            method,
            outcome,
            reason: None,
            trace: Vec::new(),
            certificate: None,
        }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    pub fn with_trace(mut self, label: impl Into<String>, value: Rational) -> Self {
        self.trace.push(TraceEntry::new(label, value));
        self
    }

    pub fn exists_possible(&self) -> bool {
        self.outcome != Outcome::Nonexistent
    }

    pub fn is_nonexistent(&self) -> bool {
        self.outcome == Outcome::Nonexistent
    }

    pub fn trace_value(&self, label: &str) -> Option<&Rational> {
        self.trace
            .iter()
            .find(|t| t.label == label)
            .map(|t| &t.value)
    }

    fn decided(n: u32, k: u32, q: u32, method: Method, fires: bool) -> Self {
        let outcome = if fires {
            Outcome::Nonexistent
        } else {
            Outcome::Inconclusive
        };
        BoundVerdict::new(n, k, q, method, outcome)
    }
}

fn q_check(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::OutOfRange {
            what: "q",
            value: q as i64,
            range: "[2, inf)".into(),
        });
    }
    Ok(())
}

fn ri(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn singleton_check(n: u32, k: u32) -> BoundVerdict {
    BoundVerdict::decided(n, k, 0, Method::Singleton, k > n / 2)
        .with_trace("k", ri(k as u64))
        .with_trace("floor(n/2)", ri((n / 2) as u64))
}

/// Verdict for `n` against an `n > threshold` rule at `k = floor(n/2) - l`.
fn threshold_verdict(n: u32, q: u32, l: u32, method: Method, threshold: u64) -> BoundVerdict {
    let k = (n / 2).saturating_sub(l);
    BoundVerdict::decided(n, k, q, method, n as u64 > threshold)
        .with_trace("n", ri(n as u64))
        .with_trace("threshold", ri(threshold))
}

pub fn scott_threshold(n: u32, q: u32) -> u64 {
    let q = q as u64;
    if n.is_multiple_of(2) {
        2 * (q * q - 1)
    } else {
        2 * q * (q + 1) - 1
    }
}

/// AME states (`k = floor(n/2)`) are ruled out above the parity threshold.
pub fn scott_check(n: u32, q: u32) -> Result<BoundVerdict> {
    q_check(q)?;
    Ok(threshold_verdict(
        n,
        q,
        0,
        Method::Scott,
        scott_threshold(n, q),
    ))
}

/// `(n threshold, k threshold)` for defect 1 or 2; the `n` rule and the
/// `k > ...` rule describe the same set once `n = 2k + 2l` (+1 if odd).
pub fn defect_thresholds(n: u32, q: u32, defect: u32) -> (u64, u64) {
    let q = q as u64;
    let even = n.is_multiple_of(2);
    match (defect, even) {
        (1, true) => (4 * q * q, 2 * q * q - 1),
        (1, false) => (4 * q * q + 4 * q + 1, 2 * q * q + 2 * q - 1),
        (2, true) => (6 * q * q + 2, 3 * q * q - 1),
        (2, false) => (6 * q * q + 6 * q + 3, 3 * q * q + 3 * q - 1),
        _ => unreachable!("defect thresholds exist only for l = 1, 2"),
    }
}

fn defect_check(n: u32, q: u32, defect: u32) -> Result<BoundVerdict> {
    q_check(q)?;
    let method = if defect == 1 {
        Method::Defect1
    } else {
        Method::Defect2
    };
    if n / 2 < defect {
        return Ok(
            BoundVerdict::new(n, 0, q, method, Outcome::NotApplicable).with_reason(format!(
                "floor(n/2) < {defect}: no k = floor(n/2) - {defect} >= 0"
            )),
        );
    }
    let (n_thr, k_thr) = defect_thresholds(n, q, defect);
    let v = threshold_verdict(n, q, defect, method, n_thr);
    Ok(v.with_trace("k threshold", ri(k_thr)))
}

pub fn defect1_check(n: u32, q: u32) -> Result<BoundVerdict> {
    defect_check(n, q, 1)
}

pub fn defect2_check(n: u32, q: u32) -> Result<BoundVerdict> {
    defect_check(n, q, 2)
}

fn rising(from: u64, to: u64) -> BigInt {
    (from..=to).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// Factorial-ratio criterion for `k = floor(n/2) - l`: with `n = 2m`,
/// `(m+l)!/(m+1)! > (q^(2l)-1)/(q^2-1) * (2l-1)!/l!` (needs `l >= 2`); with
/// `n = 2m+1`, `(m+l+1)!/(m+1)! > (q^(2l+1)-1)/(q-1) * (2l)!/l!` (needs `l >= 1`).
pub fn corollary_l_check(n: u32, q: u32, l: u32) -> Result<BoundVerdict> {
    q_check(q)?;
    let m = (n / 2) as u64;
    let k = (n / 2).checked_sub(l);
    let even = n.is_multiple_of(2);
    let min_l = if even { 2 } else { 1 };
    let Some(k) = k.filter(|_| l >= min_l) else {
        return Ok(
            BoundVerdict::new(n, 0, q, Method::CorollaryL, Outcome::NotApplicable).with_reason(
                format!(
                    "needs l >= {min_l} for {} n and floor(n/2) >= l",
                    if even { "even" } else { "odd" }
                ),
            ),
        );
    };
    let l64 = l as u64;
    let qb = BigInt::from(q);
    let (lhs, rhs) = if even {
        let geometric = (num_traits::pow(qb.clone(), 2 * l as usize) - 1) / (&qb * &qb - 1);
        (
            rising(m + 2, m + l64),
            geometric * rising(l64 + 1, 2 * l64 - 1),
        )
    } else {
        let geometric = (num_traits::pow(qb.clone(), 2 * l as usize + 1) - 1) / (&qb - 1);
        (
            rising(m + 2, m + l64 + 1),
            geometric * rising(l64 + 1, 2 * l64),
        )
    };
    let fires = lhs > rhs;
    Ok(BoundVerdict::decided(n, k, q, Method::CorollaryL, fires)
        .with_trace("l", ri(l64))
        .with_trace("factorial ratio (lhs)", Rational::from_integer(lhs))
        .with_trace("weighted bound (rhs)", Rational::from_integer(rhs)))
}

/// Strict two-support inequality; the verdict embeds the dual certificate.
pub fn two_support_check(n: u32, k: u32, q: u32) -> Result<BoundVerdict> {
    q_check(q)?;
    match two_support_certificate(n, k, q) {
        Ok(out) => {
            let mut v =
                BoundVerdict::decided(n, k, q, Method::TwoSupport, out.certificate.is_some())
                    .with_trace("u", ri(out.u as u64))
                    .with_trace("v", ri(out.v as u64))
                    .with_trace("max p_u (lhs)", out.lhs)
                    .with_trace("min p_u exclusive (rhs)", out.rhs);
            v.certificate = out.certificate.as_ref().map(CertificateJson::from_dual);
            Ok(v)
        }
        Err(Error::NotApplicable(reason)) => {
            Ok(
                BoundVerdict::new(n, k, q, Method::TwoSupport, Outcome::NotApplicable)
                    .with_reason(reason),
            )
        }
        Err(Error::SingletonViolation { .. }) => {
            Ok(
                BoundVerdict::new(n, k, q, Method::TwoSupport, Outcome::NotApplicable)
                    .with_reason("k exceeds floor(n/2)"),
            )
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: u32) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Strongest closed-form rule for defect `l` at size `n` (disjunction of the
/// defect threshold and the factorial-ratio criterion for `l` in {1, 2}).
pub fn defect_criterion(n: u32, q: u32, l: u32) -> Result<Option<Method>> {
    if n / 2 < l {
        return Ok(None);
    }
    let mut candidates = Vec::new();
    match l {
        0 => candidates.push(scott_check(n, q)?),
        1 => candidates.push(defect1_check(n, q)?),
        2 => candidates.push(defect2_check(n, q)?),
        _ => {}
    }
    if l >= 1 {
        candidates.push(corollary_l_check(n, q, l)?);
    }
    Ok(candidates
        .into_iter()
        .find(|v| v.is_nonexistent())
        .map(|v| v.method))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinNScan {
    pub q: u32,
    pub l: u32,
    pub parity: Parity,
    /// Smallest `n` of this parity flagged nonexistent.
    pub n: u32,
    pub method: Method,
    /// Every `n` of this parity in `[n, verified_through]` was re-checked.
    pub verified_through: u32,
}

const MONOTONE_WINDOW: u32 = 400;

/// Smallest `n` of the given parity at which the closed-form rules exclude
/// AME states of defect `l`, plus a re-check that the rule keeps firing
/// for the next `MONOTONE_WINDOW` sizes.
pub fn min_n_scan(q: u32, l: u32, parity: Parity) -> Result<MinNScan> {
    q_check(q)?;
    let start = {
        let base = 2 * l.max(1);
        match parity {
            Parity::Even => base,
            Parity::Odd => base + 1,
        }
    };
    let limit = 200 * (l + 1) * q * q + 1000;
    let mut n = start;
    while n <= limit {
        if let Some(method) = defect_criterion(n, q, l)? {
            let end = n + MONOTONE_WINDOW;
            let sizes: Vec<u32> = (n..=end).step_by(2).collect();
            let all = sizes
                .par_iter()
                .map(|&m| defect_criterion(m, q, l).map(|r| r.is_some()))
                .collect::<Result<Vec<_>>>()?;
            if let Some(pos) = all.iter().position(|ok| !ok) {
                return Err(Error::Domain(format!(
                    "criterion for q={q}, l={l} fires at n={n} but not at n={}",
                    sizes[pos]
                )));
            }
            return Ok(MinNScan {
                q,
                l,
                parity,
                n,
                method,
                verified_through: end,
            });
        }
        n += 2;
    }
    Err(Error::Domain(format!(
        "no threshold found up to n = {limit}"
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureGap {
    pub q: u32,
    pub l: u32,
    pub even_n: u32,
    pub odd_n: u32,
    /// `(2l + 2) q^2`.
    pub reference: u64,
    #[serde(with = "rational_json")]
    pub even_ratio: Rational,
    #[serde(with = "rational_json")]
    pub odd_ratio: Rational,
}

/// Compares the scanned thresholds against `(2l + 2) q^2`. Exploratory only.
pub fn conjecture2_gap(q: u32, l: u32) -> Result<ConjectureGap> {
    let even = min_n_scan(q, l, Parity::Even)?;
    let odd = min_n_scan(q, l, Parity::Odd)?;
    let reference = (2 * l as u64 + 2) * (q as u64) * (q as u64);
    let r = ri(reference);
    Ok(ConjectureGap {
        q,
        l,
        even_n: even.n,
        odd_n: odd.n,
        reference,
        even_ratio: ri(even.n as u64) / &r,
        odd_ratio: ri(odd.n as u64) / &r,
    })
}

/// Largest `k` none of the closed-form rules (singleton, Scott, defect 1/2,
/// factorial-ratio, two-support) excludes, scanning down from `floor(n/2)`.
pub fn closed_form_k_bound(n: u32, q: u32) -> Result<(u32, Vec<BoundVerdict>)> {
    let mut fired = Vec::new();
    for k in (0..=n / 2).rev() {
        let l = n / 2 - k;
        let mut verdicts = Vec::new();
        match l {
            0 => verdicts.push(scott_check(n, q)?),
            1 => verdicts.push(defect1_check(n, q)?),
            2 => verdicts.push(defect2_check(n, q)?),
            _ => {}
        }
        if l >= 1 {
            verdicts.push(corollary_l_check(n, q, l)?);
        }
        verdicts.push(two_support_check(n, k, q)?);
        match verdicts.into_iter().find(|v| v.is_nonexistent()) {
            Some(v) => fired.push(v),
            None => return Ok((k, fired)),
        }
    }
    Err(Error::Domain(format!(
        "every k in [0, {}] excluded for n = {n}",
        n / 2
    )))
}

/// Re-combines a two-support verdict's recorded rationals.
pub fn two_support_trace_holds(v: &BoundVerdict) -> bool {
    match (
        v.trace_value("max p_u (lhs)"),
        v.trace_value("min p_u exclusive (rhs)"),
    ) {
        (Some(l), Some(r)) => l > r && !l.is_negative(),
        _ => false,
    }
}
