use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::program::CertificateStatus;
use crate::error::{Error, Result};
use crate::exact::{binomial, qpow, Rational};

/// A dual vector `p_(k+1..n)` for `U(n, k, q)`. Entries on `[k+1, n-k-1]` must
/// be nonnegative; entries on `[n-k, n]` are free. Missing indices are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub n: u32,
    pub k: u32,
    pub q: u32,
    pub p: BTreeMap<u32, Rational>,
}

impl DualCertificate {
    fn get(&self, i: u32) -> Rational {
        self.p.get(&i).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Checks the sign pattern, every column inequality
/// `sum_{i>=j} p_i C(n-j, i-j) <= 0`, and the strict objective
/// `sum_{i > n/2} p_i (q^(2i-n) - 1) C(n, i) > 0`.
pub fn verify_dual_certificate(cert: &DualCertificate) -> Result<CertificateStatus> {
    let DualCertificate { n, k, q, .. } = *cert;
    if q < 2 || k > n / 2 {
        return Err(Error::Malformed(format!(
            "dual certificate parameters out of range: n={n}, k={k}, q={q}"
        )));
    }
    if let Some((&i, _)) = cert.p.iter().find(|(&i, _)| i <= k || i > n) {
        return Err(Error::Malformed(format!(
            "dual index {i} outside [{}, {n}]",
            k + 1
        )));
    }
    for i in k + 1..n - k {
        if cert.get(i).is_negative() {
            return Ok(CertificateStatus::SignViolation { index: i });
        }
    }
    for j in k + 1..=n {
        let col: Rational = cert
            .p
            .range(j..)
            .map(|(&i, p)| p * binomial((n - j) as u64, (i - j) as i64))
            .sum();
        if col.is_positive() {
            return Ok(CertificateStatus::ConditionFailed {
                reason: format!("column {j}: sum p_i C(n-j, i-j) = {col} > 0"),
            });
        }
    }
    let objective: Rational = cert
        .p
        .range(n / 2 + 1..)
        .map(|(&i, p)| {
            p * (qpow(q, 2 * i as i64 - n as i64) - Rational::one()) * binomial(n as u64, i as i64)
        })
        .sum();
    if objective.is_positive() {
        Ok(CertificateStatus::Valid)
    } else {
        Ok(CertificateStatus::ConditionFailed {
            reason: format!("objective p.b = {objective} is not positive"),
        })
    }
}

/// The two compared sides of the two-support criterion and, when the strict
/// inequality holds, the certificate built from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoSupportOutcome {
    pub u: u32,
    pub v: u32,
    /// `C(n-k-1, n-v) / C(n-k-1, n-u)`, the largest admissible `p_u`.
    pub lhs: Rational,
    /// `(q^(2v-n) - 1) C(n, v) / ((q^(2u-n) - 1) C(n, u))`, the smallest `p_u`
    /// giving a positive objective (exclusive).
    pub rhs: Rational,
    pub certificate: Option<DualCertificate>,
}

/// Dual vector supported on `u = floor(n/2)+1` and `v = n-k` with `p_v = -1`
/// and `p_u` at its upper limit.
pub fn two_support_certificate(n: u32, k: u32, q: u32) -> Result<TwoSupportOutcome> {
    if q < 2 {
        return Err(Error::OutOfRange {
            what: "q",
            value: q as i64,
            range: "[2, inf)".into(),
        });
    }
    if k > n / 2 {
        return Err(Error::SingletonViolation { n, k, half: n / 2 });
    }
    let u = n / 2 + 1;
    let v = n - k;
    if u >= v {
        return Err(Error::NotApplicable(format!(
            "two-support dual needs u < v, got u = {u}, v = {v}"
        )));
    }
    let top = (n - k - 1) as u64;
    let lhs = binomial(top, (n - v) as i64) / binomial(top, (n - u) as i64);
    let weight = |i: u32| {
        (qpow(q, 2 * i as i64 - n as i64) - Rational::one()) * binomial(n as u64, i as i64)
    };
    let rhs = weight(v) / weight(u);
    let certificate = (lhs > rhs).then(|| DualCertificate {
        n,
        k,
        q,
        p: BTreeMap::from([(u, lhs.clone()), (v, -Rational::one())]),
    });
    Ok(TwoSupportOutcome {
        u,
        v,
        lhs,
        rhs,
        certificate,
    })
}
