use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, qpow, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Rows `coeffs . x (>= | =) rhs` over `num_vars` variables, each optionally
/// constrained to be nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub rows: Vec<Row>,
    pub nonneg: Vec<bool>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
            nonneg: vec![true; num_vars],
        }
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.num_vars {
            return Err(Error::SizeMismatch {
                expected: self.num_vars,
                found: coeffs.len(),
            });
        }
        self.rows.push(Row {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }
}

/// Row multipliers proving infeasibility: nonnegative on `>=` rows, free on
/// equalities, combining to a row whose coefficients are `<= 0` on nonnegative
/// variables (`= 0` on free ones) and whose right-hand side is `> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertificateStatus {
    Valid,
    /// A multiplier that must be nonnegative is negative.
    SignViolation {
        index: u32,
    },
    /// Signs are fine but a combined inequality does not hold.
    ConditionFailed {
        reason: String,
    },
}

impl CertificateStatus {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateStatus::Valid)
    }
}

/// The program `U(n, k, q)`: variables `x_(k+1..n)` standing for `A_(k+1..n)`,
/// one row per `i` in `[k+1, n]` with entries `C(n-j, i-j)`.
pub fn build_primal(n: u32, k: u32, q: u32) -> Result<LinearProgram> {
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
    let vars = (n - k) as usize;
    let mut lp = LinearProgram::new(vars);
    let half = n / 2;
    for i in k + 1..=n {
        let coeffs = (k + 1..=n)
            .map(|j| binomial((n - j) as u64, i as i64 - j as i64))
            .collect();
        let rhs = if i <= half {
            Rational::zero()
        } else {
            (qpow(q, 2 * i as i64 - n as i64) - Rational::from_integer(1.into()))
                * binomial(n as u64, i as i64)
        };
        let relation = if i >= n - k {
            Relation::Eq
        } else {
            Relation::Ge
        };
        lp.push(coeffs, relation, rhs)?;
    }
    Ok(lp)
}

pub fn verify_point(lp: &LinearProgram, point: &[Rational]) -> Result<bool> {
    if point.len() != lp.num_vars {
        return Err(Error::SizeMismatch {
            expected: lp.num_vars,
            found: point.len(),
        });
    }
    if point
        .iter()
        .zip(&lp.nonneg)
        .any(|(x, &nn)| nn && x.is_negative())
    {
        return Ok(false);
    }
    Ok(lp.rows.iter().all(|row| {
        let lhs: Rational = row.coeffs.iter().zip(point).map(|(a, x)| a * x).sum();
        match row.relation {
            Relation::Ge => lhs >= row.rhs,
            Relation::Eq => lhs == row.rhs,
        }
    }))
}

pub fn verify_farkas(lp: &LinearProgram, cert: &FarkasCertificate) -> Result<CertificateStatus> {
    if cert.multipliers.len() != lp.rows.len() {
        return Err(Error::SizeMismatch {
            expected: lp.rows.len(),
            found: cert.multipliers.len(),
        });
    }
    for (idx, (row, y)) in lp.rows.iter().zip(&cert.multipliers).enumerate() {
        if row.relation == Relation::Ge && y.is_negative() {
            return Ok(CertificateStatus::SignViolation { index: idx as u32 });
        }
    }
    for j in 0..lp.num_vars {
        let combined: Rational = lp
            .rows
            .iter()
            .zip(&cert.multipliers)
            .filter(|(_, y)| !y.is_zero())
            .map(|(row, y)| &row.coeffs[j] * y)
            .sum();
        let ok = if lp.nonneg[j] {
            !combined.is_positive()
        } else {
            combined.is_zero()
        };
        if !ok {
            return Ok(CertificateStatus::ConditionFailed {
                reason: format!("combined coefficient of variable {j} is {combined}"),
            });
        }
    }
    let rhs: Rational = lp
        .rows
        .iter()
        .zip(&cert.multipliers)
        .map(|(row, y)| &row.rhs * y)
        .sum();
    if rhs.is_positive() {
        Ok(CertificateStatus::Valid)
    } else {
        Ok(CertificateStatus::ConditionFailed {
            reason: format!("combined right-hand side {rhs} is not positive"),
        })
    }
}
