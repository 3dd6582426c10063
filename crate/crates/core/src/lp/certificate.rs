use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::dual::{verify_dual_certificate, DualCertificate};
use super::program::{build_primal, verify_farkas, CertificateStatus, FarkasCertificate};
use crate::error::{Error, Result};
use crate::exact::rational_json::{from_strs, to_pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateType {
    Farkas,
    DualTwoSupport,
}

/// Wire form shared by both certificate kinds. `entries` are
/// `[index, "num", "den"]` with `index` the row label `i` in `[k+1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(rename = "type")]
    pub kind: CertificateType,
    pub n: u32,
    pub k: u32,
    pub q: u32,
    pub entries: Vec<(u32, String, String)>,
}

impl CertificateJson {
    /// Farkas multipliers for `U(n, k, q)` (row `r` is label `k+1+r`).
    pub fn from_farkas(n: u32, k: u32, q: u32, cert: &FarkasCertificate) -> Self {
        let entries = cert
            .multipliers
            .iter()
            .enumerate()
            .filter(|(_, y)| !y.is_zero())
            .map(|(r, y)| {
                let (num, den) = to_pair(y);
                (k + 1 + r as u32, num, den)
            })
            .collect();
        CertificateJson {
            kind: CertificateType::Farkas,
            n,
            k,
            q,
            entries,
        }
    }

    pub fn from_dual(cert: &DualCertificate) -> Self {
        let entries = cert
            .p
            .iter()
            .map(|(&i, v)| {
                let (num, den) = to_pair(v);
                (i, num, den)
            })
            .collect();
        CertificateJson {
            kind: CertificateType::DualTwoSupport,
            n: cert.n,
            k: cert.k,
            q: cert.q,
            entries,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization cannot fail")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    fn entry_map(&self) -> Result<BTreeMap<u32, crate::exact::Rational>> {
        let mut map = BTreeMap::new();
        for (i, num, den) in &self.entries {
            if *i <= self.k || *i > self.n {
                return Err(Error::Malformed(format!(
                    "entry index {i} outside [{}, {}]",
                    self.k + 1,
                    self.n
                )));
            }
            if map.insert(*i, from_strs(num, den)?).is_some() {
                return Err(Error::Malformed(format!("duplicate entry index {i}")));
            }
        }
        Ok(map)
    }

    /// Re-checks the certificate from scratch. Only the program is rebuilt;
    /// no solver runs.
    pub fn verify(&self) -> Result<CertificateStatus> {
        if self.q < 2 || self.k > self.n / 2 {
            return Err(Error::Malformed(format!(
                "parameters out of range: n={}, k={}, q={}",
                self.n, self.k, self.q
            )));
        }
        let map = self.entry_map()?;
        match self.kind {
            CertificateType::Farkas => {
                let lp = build_primal(self.n, self.k, self.q)?;
                let multipliers = (self.k + 1..=self.n)
                    .map(|i| {
                        map.get(&i)
                            .cloned()
                            .unwrap_or_else(crate::exact::Rational::zero)
                    })
                    .collect();
                verify_farkas(&lp, &FarkasCertificate { multipliers })
            }
            CertificateType::DualTwoSupport => verify_dual_certificate(&DualCertificate {
                n: self.n,
                k: self.k,
                q: self.q,
                p: map,
            }),
        }
    }
}

pub fn verify_certificate_json(text: &str) -> Result<CertificateStatus> {
    CertificateJson::parse(text)?.verify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve_primal, two_support_certificate, FeasibilityResult, SolveOptions};

    #[test]
    fn dual_certificate_round_trip() {
        let cert = two_support_certificate(224, 109, 5)
            .unwrap()
            .certificate
            .unwrap();
        let json = CertificateJson::from_dual(&cert).to_json();
        assert!(json
            .starts_with(r#"{"type":"dual_two_support","n":224,"k":109,"q":5,"entries":[[113,"#));
        assert_eq!(
            verify_certificate_json(&json).unwrap(),
            CertificateStatus::Valid
        );
    }

    #[test]
    fn farkas_round_trip_and_tamper() {
        let FeasibilityResult::Infeasible { certificate } =
            solve_primal(8, 4, 2, &SolveOptions::default()).unwrap()
        else {
            panic!()
        };
        let wire = CertificateJson::from_farkas(8, 4, 2, &certificate);
        assert_eq!(wire.verify().unwrap(), CertificateStatus::Valid);

        let mut tampered = wire.clone();
        let first = &mut tampered.entries[0];
        first.1 = (first.1.parse::<i64>().unwrap() + 1000).to_string();
        assert!(!tampered.verify().unwrap().is_valid());
    }

    #[test]
    fn malformed_inputs() {
        assert!(verify_certificate_json("{not json").is_err());
        let bad_index = r#"{"type":"farkas","n":8,"k":4,"q":2,"entries":[[2,"1","1"]]}"#;
        assert!(verify_certificate_json(bad_index).is_err());
        let zero_den = r#"{"type":"farkas","n":8,"k":4,"q":2,"entries":[[5,"1","0"]]}"#;
        assert!(verify_certificate_json(zero_den).is_err());
    }
}
