use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    /// Established for every `n` in the domain (`q` in {2, 3}).
    Proven,
    /// Open for `q` in {4, 5}; checked only on finite ranges.
    Conjectured,
    /// An `n` the piecewise rule explicitly leaves out.
    Exception,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowBoundValue {
    pub q: u32,
    pub n: u32,
    /// Upper bound on `k`; for exceptions, the value the formula would give.
    pub value: u32,
    pub status: BoundStatus,
}

fn min_n(q: u32) -> u32 {
    match q {
        2 => 1,
        3 => 10,
        4 => 22,
        _ => 180,
    }
}

/// Piecewise-linear shadow bound `S_q(n)`.
pub fn shadow_bound_value(q: u32, n: u32) -> Result<ShadowBoundValue> {
    if !(2..=5).contains(&q) {
        return Err(Error::OutOfRange {
            what: "q",
            value: q as i64,
            range: "[2, 5]".into(),
        });
    }
    if n < min_n(q) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            range: format!("[{}, inf) for q = {q}", min_n(q)),
        });
    }
    let (value, exception) = match q {
        2 => {
            let m = n / 6;
            (if n % 6 == 5 { 2 * m + 2 } else { 2 * m + 1 }, false)
        }
        3 => {
            let m = (n + 4) / 14;
            let off = n + 4 - 14 * m;
            let v = match off {
                0..=3 => 6 * m - 1,
                4..=8 => 6 * m + 1,
                _ => 6 * m + 3,
            };
            (v, matches!(n, 23 | 37 | 51))
        }
        4 => {
            let m = (n + 12) / 17;
            let block = ((n + 12 - 17 * m) / 4).min(3);
            (8 * m - 5 + 2 * block, n == 38)
        }
        _ => (2 * (n / 4) - 1, false),
    };
    let status = if exception {
        BoundStatus::Exception
    } else if q <= 3 {
        BoundStatus::Proven
    } else {
        BoundStatus::Conjectured
    };
    Ok(ShadowBoundValue {
        q,
        n,
        value,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(q: u32, n: u32) -> u32 {
        shadow_bound_value(q, n).unwrap().value
    }

    #[test]
    fn documented_values() {
        assert_eq!(v(3, 42), 19);
        assert_eq!(v(2, 11), 4);
        assert_eq!(v(4, 82), 39);
        assert_eq!(
            shadow_bound_value(4, 82).unwrap().status,
            BoundStatus::Conjectured
        );
        assert_eq!(
            shadow_bound_value(3, 42).unwrap().status,
            BoundStatus::Proven
        );
    }

    #[test]
    fn branch_edges() {
        // q=3, m=2: [24,27] -> 11, [28,32] -> 13, [33,37] -> 15
        assert_eq!(
            [24, 27, 28, 32, 33, 37].map(|n| v(3, n)),
            [11, 11, 13, 13, 15, 15]
        );
        assert_eq!(v(3, 38), 17);
        // q=4, m=3: [39,42] -> 19, [43,46] -> 21, [47,50] -> 23, [51,55] -> 25
        assert_eq!(
            [39, 42, 43, 46, 47, 50, 51, 55, 56].map(|n| v(4, n)),
            [19, 19, 21, 21, 23, 23, 25, 25, 27]
        );
        assert_eq!([180, 183, 184].map(|n| v(5, n)), [89, 89, 91]);
        assert_eq!([0u32, 4, 5, 6].map(|n| v(2, n.max(1))), [1, 1, 2, 3]);
    }

    #[test]
    fn exceptions_and_domain() {
        for n in [23, 37, 51] {
            assert_eq!(
                shadow_bound_value(3, n).unwrap().status,
                BoundStatus::Exception
            );
        }
        assert_eq!(
            shadow_bound_value(4, 38).unwrap().status,
            BoundStatus::Exception
        );
        assert!(shadow_bound_value(3, 9).is_err());
        assert!(shadow_bound_value(4, 21).is_err());
        assert!(shadow_bound_value(5, 179).is_err());
        assert!(shadow_bound_value(6, 100).is_err());
    }

    #[test]
    fn never_exceeds_half_and_is_monotone() {
        for q in 2..=5u32 {
            let mut prev = 0;
            for n in min_n(q)..1200 {
                let s = v(q, n);
                assert!(s >= prev, "q={q} n={n}");
                prev = s;
                if n >= 12 {
                    assert!(s <= n / 2, "q={q} n={n} s={s}");
                }
            }
        }
    }
}
