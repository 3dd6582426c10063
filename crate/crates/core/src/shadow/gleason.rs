use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerators::{EnumeratorKind, EnumeratorVector};
use crate::error::{Error, Result};
use crate::exact::{binomial, int, qpow, rational_json, HomogeneousPoly, Rational};

/// Coordinates of a weight enumerator in the basis
/// `P_i = (x + (q-1)y)^(n-2i) (y(x-y))^i`, `0 <= i <= floor(n/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GleasonCoefficients {
    pub n: usize,
    pub q: u32,
    #[serde(with = "rational_json::vec")]
    pub c: Vec<Rational>,
}

impl GleasonCoefficients {
    pub fn new(n: usize, q: u32, c: Vec<Rational>) -> Result<Self> {
        if c.len() != n / 2 + 1 {
            return Err(Error::SizeMismatch {
                expected: n / 2 + 1,
                found: c.len(),
            });
        }
        Ok(GleasonCoefficients { n, q, c })
    }

    /// `sum c_i P_i` as a weight enumerator.
    pub fn to_weight(&self) -> Result<EnumeratorVector> {
        let basis = gleason_basis(self.n, self.q);
        let mut acc = HomogeneousPoly::zero(self.n);
        for (ci, p) in self.c.iter().zip(&basis) {
            acc.add_scaled(p, ci);
        }
        EnumeratorVector::new(self.q, EnumeratorKind::Weight, acc.into_coeffs())
    }

    /// `(-1)^i c_i >= 0` for every `i`.
    pub fn alternating_signs(&self) -> bool {
        self.c.iter().enumerate().all(|(i, ci)| {
            if i % 2 == 0 {
                *ci >= Rational::zero()
            } else {
                *ci <= Rational::zero()
            }
        })
    }
}

pub fn gleason_basis(n: usize, q: u32) -> Vec<HomogeneousPoly> {
    let shift = HomogeneousPoly::new(vec![Rational::zero(), Rational::one(), -Rational::one()]);
    let mut shift_pow = HomogeneousPoly::new(vec![Rational::one()]);
    let qm1 = int(q as i64 - 1);
    let mut basis = Vec::with_capacity(n / 2 + 1);
    for i in 0..=n / 2 {
        let lead = HomogeneousPoly::linear_power(&Rational::one(), &qm1, n - 2 * i);
        basis.push(lead.mul(&shift_pow));
        shift_pow = shift_pow.mul(&shift);
    }
    basis
}

/// Solves for `c` from `A_0..A_floor(n/2)` (the basis is unit lower
/// triangular there) and checks the remaining coefficients.
pub fn gleason_from_weight(a: &EnumeratorVector) -> Result<GleasonCoefficients> {
    if a.kind != EnumeratorKind::Weight {
        return Err(Error::WrongKind {
            expected: "weight",
            found: a.kind,
        });
    }
    let n = a.n;
    let basis = gleason_basis(n, a.q);
    let mut residual = a.values.clone();
    let mut c = Vec::with_capacity(n / 2 + 1);
    for (i, p) in basis.iter().enumerate() {
        let ci = residual[i].clone();
        if !ci.is_zero() {
            for (r, pc) in residual.iter_mut().zip(p.coeffs()).skip(i) {
                *r -= &ci * pc;
            }
        }
        c.push(ci);
    }
    if let Some(index) = residual.iter().position(|r| !r.is_zero()) {
        return Err(Error::NotInGleasonSpan { index });
    }
    GleasonCoefficients::new(n, a.q, c)
}

/// `S = sum (-1)^i c_i 2^(n-2i) q^-i y^(n-2i) (x^2 - y^2)^i`.
pub fn shadow_from_gleason(g: &GleasonCoefficients) -> Result<EnumeratorVector> {
    let n = g.n;
    let mut s = vec![Rational::zero(); n + 1];
    for (i, ci) in g.c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        let scale = sign * ci * qpow(2, (n - 2 * i) as i64) * qpow(g.q, -(i as i64));
        // y^(n-2i) (x^2-y^2)^i has C(i,t)(-1)^t at y-degree n-2i+2t
        for t in 0..=i {
            let term = binomial(i as u64, t as i64) * &scale;
            if t % 2 == 0 {
                s[n - 2 * i + 2 * t] += term;
            } else {
                s[n - 2 * i + 2 * t] -= term;
            }
        }
    }
    EnumeratorVector::new(g.q, EnumeratorKind::Shadow, s)
}
