//! Enumerator vectors and the linear substitutions that connect them.
//!
//! A vector of kind `Weight` holds `A_0..A_n`, `DualWeight` holds `B_i`,
//! `Unitary` holds `A'_i` and `Shadow` holds `S_i`. All transforms are
//! substitutions into the homogeneous polynomial `sum_i v_i x^(n-i) y^i`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, qpow, rational_json, HomogeneousPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumeratorKind {
    Weight,
    DualWeight,
    Unitary,
    Shadow,
}

impl fmt::Display for EnumeratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EnumeratorKind::Weight => "weight",
            EnumeratorKind::DualWeight => "dual_weight",
            EnumeratorKind::Unitary => "unitary",
            EnumeratorKind::Shadow => "shadow",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumeratorVector {
    pub n: usize,
    pub q: u32,
    pub kind: EnumeratorKind,
    #[serde(with = "rational_json::vec")]
    pub values: Vec<Rational>,
}

impl EnumeratorVector {
    pub fn new(q: u32, kind: EnumeratorKind, values: Vec<Rational>) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange {
                what: "q",
                value: q as i64,
                range: "[2, inf)".into(),
            });
        }
        if values.is_empty() {
            return Err(Error::SizeMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(EnumeratorVector {
            n: values.len() - 1,
            q,
            kind,
            values,
        })
    }

    pub fn from_ints(q: u32, kind: EnumeratorKind, values: &[i64]) -> Result<Self> {
        Self::new(
            q,
            kind,
            values.iter().map(|&v| crate::exact::int(v)).collect(),
        )
    }

    /// Parses the JSON wire form and checks that `n` matches the value count.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: EnumeratorVector =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        if v.values.len() != v.n + 1 {
            return Err(Error::SizeMismatch {
                expected: v.n + 1,
                found: v.values.len(),
            });
        }
        Self::new(v.q, v.kind, v.values)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("enumerator serialization cannot fail")
    }

    fn expect_kind(&self, kinds: &[EnumeratorKind], expected: &'static str) -> Result<()> {
        if kinds.contains(&self.kind) {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected,
                found: self.kind,
            })
        }
    }

    fn substituted(&self, kind: EnumeratorKind, m: [Rational; 4]) -> Self {
        let poly = HomogeneousPoly::new(self.values.clone());
        let [a, b, c, d] = m;
        EnumeratorVector {
            n: self.n,
            q: self.q,
            kind,
            values: poly.substitute_linear(&a, &b, &c, &d).into_coeffs(),
        }
    }

    fn qr(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.q))
    }
}

/// `B(x,y) = A((x + (q^2-1) y)/q, (x - y)/q)`.
pub fn macwilliams_dual(a: &EnumeratorVector) -> Result<EnumeratorVector> {
    a.expect_kind(&[EnumeratorKind::Weight], "weight")?;
    Ok(macwilliams_raw(a, EnumeratorKind::DualWeight))
}

fn macwilliams_raw(a: &EnumeratorVector, kind: EnumeratorKind) -> EnumeratorVector {
    let q = a.qr();
    let inv = q.recip();
    let b = (&q * &q - Rational::one()) / &q;
    a.substituted(kind, [inv.clone(), b, inv.clone(), -inv])
}

/// Applies the MacWilliams substitution regardless of tag, keeping the tag.
/// Used to check involution on arbitrary vectors.
pub fn macwilliams_untyped(v: &EnumeratorVector) -> EnumeratorVector {
    macwilliams_raw(v, v.kind)
}

/// `A'(x,y) = A(x + y/q, y/q)`.
pub fn weight_to_unitary(a: &EnumeratorVector) -> Result<EnumeratorVector> {
    a.expect_kind(&[EnumeratorKind::Weight], "weight")?;
    let inv = a.qr().recip();
    Ok(a.substituted(
        EnumeratorKind::Unitary,
        [Rational::one(), inv.clone(), Rational::zero(), inv],
    ))
}

/// `A(x,y) = A'(x - y, q y)`.
pub fn unitary_to_weight(u: &EnumeratorVector) -> Result<EnumeratorVector> {
    u.expect_kind(&[EnumeratorKind::Unitary], "unitary")?;
    Ok(u.substituted(
        EnumeratorKind::Weight,
        [Rational::one(), -Rational::one(), Rational::zero(), u.qr()],
    ))
}

/// `sum_{j<=i} A_j C(n-j, i-j)`, which equals `q^i A'_i`.
pub fn binomial_relation(a: &EnumeratorVector, i: usize) -> Result<Rational> {
    a.expect_kind(&[EnumeratorKind::Weight], "weight")?;
    if i > a.n {
        return Err(Error::OutOfRange {
            what: "i",
            value: i as i64,
            range: format!("[0, {}]", a.n),
        });
    }
    let n = a.n as u64;
    Ok((0..=i)
        .filter(|&j| !a.values[j].is_zero())
        .map(|j| &a.values[j] * binomial(n - j as u64, (i - j) as i64))
        .sum())
}

/// Shadow enumerator from either the unitary route `A'(x+y, y-x)` or the
/// weight route `A(((q-1)x + (q+1)y)/q, (y-x)/q)`.
pub fn shadow_transform(e: &EnumeratorVector) -> Result<EnumeratorVector> {
    e.expect_kind(
        &[EnumeratorKind::Unitary, EnumeratorKind::Weight],
        "unitary or weight",
    )?;
    let one = Rational::one();
    Ok(match e.kind {
        EnumeratorKind::Unitary => e.substituted(
            EnumeratorKind::Shadow,
            [one.clone(), one.clone(), -one.clone(), one],
        ),
        _ => {
            let q = e.qr();
            let a = (&q - &one) / &q;
            let b = (&q + &one) / &q;
            let inv = q.recip();
            e.substituted(EnumeratorKind::Shadow, [a, b, -inv.clone(), inv])
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityContext {
    pub n: u32,
    pub q: u32,
    pub k: u32,
}

impl UniformityContext {
    pub fn new(n: u32, q: u32, k: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange {
                what: "q",
                value: q as i64,
                range: "[2, inf)".into(),
            });
        }
        if k > n {
            return Err(Error::OutOfRange {
                what: "k",
                value: k as i64,
                range: format!("[0, {n}]"),
            });
        }
        Ok(UniformityContext { n, q, k })
    }
}

/// Constraints a k-uniform state places on its unitary enumerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformTargets {
    /// `(i, A'_i)` fixed for `i <= k`.
    pub prescribed: Vec<(usize, Rational)>,
    /// `(i, lower bound on A'_i)` for `k < i <= floor(n/2)`.
    pub lower_bounds: Vec<(usize, Rational)>,
    /// `(i, n-i)` pairs with `A'_i = A'_(n-i)`, `i < n - i`.
    pub symmetric_pairs: Vec<(usize, usize)>,
}

pub fn kuniform_targets(ctx: &UniformityContext) -> Result<UniformTargets> {
    let n = ctx.n as usize;
    let k = ctx.k as usize;
    if k > n / 2 {
        return Err(Error::SingletonViolation {
            n: ctx.n,
            k: ctx.k,
            half: ctx.n / 2,
        });
    }
    let value = |i: usize| binomial(n as u64, i as i64) * qpow(ctx.q, -(i as i64));
    Ok(UniformTargets {
        prescribed: (0..=k).map(|i| (i, value(i))).collect(),
        lower_bounds: (k + 1..=n / 2).map(|i| (i, value(i))).collect(),
        symmetric_pairs: (0..=n).filter(|&i| i < n - i).map(|i| (i, n - i)).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsistencyViolation {
    /// `A_0 != 1`.
    LeadingNotOne,
    /// `A_i < 0`.
    NegativeWeight(usize),
    /// `A_i != B_i`.
    NotSelfDual(usize),
    /// `A'_i != A'_(n-i)`.
    UnitaryAsymmetric(usize),
    /// `S_j < 0`.
    NegativeShadow(usize),
    /// `S_(n-j) != 0` for odd `j`.
    OddShadowNonzero(usize),
}

/// Checks every identity a pure-state weight enumerator must satisfy and
/// returns the violations (empty when all pass).
pub fn check_pure_state_consistency(a: &EnumeratorVector) -> Result<Vec<ConsistencyViolation>> {
    use ConsistencyViolation::*;
    a.expect_kind(&[EnumeratorKind::Weight], "weight")?;
    let n = a.n;
    let mut out = Vec::new();
    if !a.values[0].is_one() {
        out.push(LeadingNotOne);
    }
    out.extend(
        a.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative())
            .map(|(i, _)| NegativeWeight(i)),
    );
    let b = macwilliams_dual(a)?;
    out.extend(
        (0..=n)
            .filter(|&i| a.values[i] != b.values[i])
            .map(NotSelfDual),
    );
    let u = weight_to_unitary(a)?;
    out.extend(
        (0..=n)
            .filter(|&i| i < n - i && u.values[i] != u.values[n - i])
            .map(UnitaryAsymmetric),
    );
    let s = shadow_transform(a)?;
    out.extend(
        s.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative())
            .map(|(j, _)| NegativeShadow(j)),
    );
    out.extend(
        (1..=n)
            .step_by(2)
            .filter(|&j| !s.values[n - j].is_zero())
            .map(|j| OddShadowNonzero(n - j)),
    );
    Ok(out)
}
