use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::alpha::{alpha_i0, alpha_offdiag};
use super::bound::{shadow_bound_value, BoundStatus};
use crate::closed_form::{BoundVerdict, Method, Outcome};
use crate::error::{Error, Result};

/// Shadow refinement for odd `k <= floor(n/2) - 2`: with
/// `b = (k+1)(2q-1) - (q-1)n >= 0`, a k-uniform state forces
/// `b * alpha_(k+1,0) >= alpha_(k+2,0)`, so the strict reverse rules it out.
pub fn prop1_check(n: u32, k: u32, q: u32) -> BoundVerdict {
    let inconclusive = |reason: &str| {
        BoundVerdict::new(n, k, q, Method::ShadowProp1, Outcome::Inconclusive).with_reason(reason)
    };
    if q < 2 {
        return BoundVerdict::new(n, k, q, Method::ShadowProp1, Outcome::NotApplicable)
            .with_reason("q < 2");
    }
    if k.is_multiple_of(2) {
        return inconclusive("parity: k must be odd");
    }
    if k + 2 > n / 2 {
        return inconclusive("range: k must be at most floor(n/2) - 2");
    }
    let beta = alpha_offdiag(n, q, k).expect("range checked");
    if beta.is_negative() {
        return inconclusive("negative off-diagonal: (k+1)(2q-1) - (q-1)n < 0")
            .with_trace("beta", beta);
    }
    let a1 = alpha_i0(n, q, k + 1).expect("range checked");
    let a2 = alpha_i0(n, q, k + 2).expect("range checked");
    let lhs = &beta * &a1;
    let fires = lhs < a2;
    let outcome = if fires {
        Outcome::Nonexistent
    } else {
        Outcome::Inconclusive
    };
    let mut v = BoundVerdict::new(n, k, q, Method::ShadowProp1, outcome)
        .with_trace("beta", beta)
        .with_trace("alpha(k+1,0)", a1)
        .with_trace("alpha(k+2,0)", a2)
        .with_trace("beta * alpha(k+1,0)", lhs);
    if !fires {
        v = v.with_reason("beta * alpha(k+1,0) >= alpha(k+2,0)");
    }
    v
}

/// Recombines the recorded trace of a shadow verdict.
pub fn prop1_trace_holds(v: &BoundVerdict) -> bool {
    let get = |l: &str| v.trace_value(l).cloned();
    match (get("beta"), get("alpha(k+1,0)"), get("alpha(k+2,0)")) {
        (Some(b), Some(a1), Some(a2)) => !b.is_negative() && b * a1 < a2 && v.k % 2 == 1,
        _ => false,
    }
}

/// The residue modulus the shadow bound for `q` is periodic in.
pub fn modulus(q: u32) -> Result<u32> {
    match q {
        3 => Ok(14),
        4 => Ok(17),
        5 => Ok(4),
        _ => Err(Error::OutOfRange {
            what: "q",
            value: q as i64,
            range: "[3, 5]".into(),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub m: u32,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline: Option<BoundStatus>,
    pub fired: bool,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub q: u32,
    pub r: u32,
    pub l: u32,
    pub m_max: u32,
    /// Smallest `m0` with the criterion firing on all of `[m0, m_max]`.
    pub minimal_m: Option<u32>,
    pub rows: Vec<ScanRow>,
}

fn scan_row(q: u32, modulus: u32, r: u32, l: u32, m: u32) -> ScanRow {
    let n = modulus * m + r;
    let row = |k, baseline, fired, note: String| ScanRow {
        m,
        n,
        k,
        baseline,
        fired,
        note,
    };
    let s = match shadow_bound_value(q, n) {
        Ok(s) => s,
        Err(_) => return row(None, None, false, "outside shadow-bound domain".into()),
    };
    if s.status == BoundStatus::Exception {
        return row(None, Some(s.status), false, "shadow-bound exception".into());
    }
    let Some(k) = s.value.checked_sub(l).filter(|&k| k > 0) else {
        return row(
            None,
            Some(s.status),
            false,
            "k would be non-positive".into(),
        );
    };
    let v = prop1_check(n, k, q);
    let fired = v.is_nonexistent();
    let note = match v.outcome {
        Outcome::Nonexistent => "nonexistent".to_string(),
        _ => v.reason.unwrap_or_else(|| "inconclusive".into()),
    };
    row(Some(k), Some(s.status), fired, note)
}

/// Runs the shadow refinement at `k = S_q(n) - l` for `n = modulus*m + r`,
/// `1 <= m <= m_max`.
pub fn scan_refinement(q: u32, r: u32, l: u32, m_max: u32) -> Result<ScanOutcome> {
    let md = modulus(q)?;
    if r >= md {
        return Err(Error::OutOfRange {
            what: "r",
            value: r as i64,
            range: format!("[0, {}]", md - 1),
        });
    }
    if l % 2 == 1 {
        return Err(Error::Domain(format!("l = {l} is odd, which makes k even")));
    }
    let rows: Vec<ScanRow> = (1..=m_max)
        .into_par_iter()
        .map(|m| scan_row(q, md, r, l, m))
        .collect();
    let tail = rows.iter().rev().take_while(|row| row.fired).count();
    let minimal_m = (tail > 0).then(|| m_max + 1 - tail as u32);
    Ok(ScanOutcome {
        q,
        r,
        l,
        m_max,
        minimal_m,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementDepth {
    pub q: u32,
    pub n: u32,
    pub shadow_bound: u32,
    /// Largest even `l` for which `(S_q(n) - l)`-uniform states are excluded.
    pub l: Option<u32>,
    /// Resulting bound on the minimum distance `d = k + 1`.
    pub d_bound: u32,
}

/// Deepest even `l` at which the refinement excludes `S_q(n) - l`.
pub fn refinement_depth(q: u32, n: u32) -> Result<RefinementDepth> {
    let s = shadow_bound_value(q, n)?;
    let mut best = None;
    let mut l = 0;
    while l < s.value {
        if prop1_check(n, s.value - l, q).is_nonexistent() {
            best = Some(l);
        }
        l += 2;
    }
    let d_bound = match best {
        Some(l) => s.value - l,
        None => s.value + 1,
    };
    Ok(RefinementDepth {
        q,
        n,
        shadow_bound: s.value,
        l: best,
        d_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn documented_checks() {
        let v = prop1_check(42, 19, 3);
        assert!(v.is_nonexistent());
        assert!(prop1_trace_holds(&v));
        assert_eq!(v.trace_value("beta"), Some(&int(16)));
        assert_eq!(prop1_check(28, 13, 3).outcome, Outcome::Inconclusive);
        let even = prop1_check(42, 18, 3);
        assert_eq!(even.outcome, Outcome::Inconclusive);
        assert!(even.reason.unwrap().starts_with("parity"));
        assert!(prop1_check(42, 21, 3).reason.unwrap().starts_with("range"));
    }

    #[test]
    fn scan_examples() {
        assert_eq!(scan_refinement(3, 4, 0, 60).unwrap().minimal_m, Some(10));
        assert_eq!(scan_refinement(4, 0, 2, 60).unwrap().minimal_m, Some(9));
        assert_eq!(scan_refinement(3, 0, 0, 30).unwrap().minimal_m, Some(3));
    }

    #[test]
    fn scan_rejects_bad_parameters() {
        assert!(scan_refinement(3, 0, 1, 10).is_err());
        assert!(scan_refinement(3, 14, 0, 10).is_err());
        assert!(scan_refinement(2, 0, 0, 10).is_err());
    }

    #[test]
    fn scan_is_deterministic() {
        let a = scan_refinement(4, 5, 2, 25).unwrap();
        let b = scan_refinement(4, 5, 2, 25).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 25);
        assert!(a.rows.windows(2).all(|w| w[0].m < w[1].m));
    }

    #[test]
    fn improve4_depths() {
        let expected = [
            (82, 39),
            (83, 39),
            (86, 41),
            (87, 41),
            (88, 41),
            (91, 43),
            (92, 43),
            (96, 45),
            (97, 45),
            (100, 47),
        ];
        for (n, d) in expected {
            assert_eq!(refinement_depth(4, n).unwrap().d_bound, d, "n={n}");
        }
    }
}
