use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial_int, int, PowerSeries, Rational};

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::OutOfRange {
            what: "q",
            value: q as i64,
            range: "[2, inf)".into(),
        });
    }
    Ok(())
}

fn check_i(n: u32, i: u32, lo: u32) -> Result<()> {
    if i < lo || i > n / 2 {
        return Err(Error::OutOfRange {
            what: "i",
            value: i as i64,
            range: format!("[{lo}, {}]", n / 2),
        });
    }
    Ok(())
}

/// `alpha_(i,0) = -(n(q-1)/i) sum_(j<i) (1-q)^j C(n-2i+j, n-2i) C(2i-2-j, i-1)`.
///
/// Consecutive terms differ by a small rational factor, so the sum is built
/// with one bignum multiply and one exact division per term.
pub fn alpha_i0(n: u32, q: u32, i: u32) -> Result<Rational> {
    check_q(q)?;
    check_i(n, i, 1)?;
    let a = (n - 2 * i) as i64;
    let i = i as i64;
    let one_minus_q = 1 - q as i64;
    let mut term = binomial_int((2 * i - 2) as u64, i - 1);
    let mut sum = term.clone();
    for j in 0..i - 1 {
        // t_(j+1) / t_j = (1-q) (a+j+1)/(j+1) * (i-1-j)/(2i-2-j)
        term *= BigInt::from(one_minus_q * (a + j + 1) * (i - 1 - j));
        term /= BigInt::from((j + 1) * (2 * i - 2 - j));
        sum += &term;
    }
    let scale = Rational::new(BigInt::from(-(n as i64) * (q as i64 - 1)), BigInt::from(i));
    Ok(scale * Rational::from_integer(sum))
}

/// Same quantity as [`alpha_i0`], read off as the coefficient of `y^(i-1)` in
/// `(1+(q-1)y)^-(n+1-2i) (1-y)^-i`.
pub fn alpha_i0_oracle(n: u32, q: u32, i: u32) -> Result<Rational> {
    check_q(q)?;
    check_i(n, i, 1)?;
    let order = (i - 1) as usize;
    let qm1 = int(q as i64 - 1);
    let base = PowerSeries::linear(Rational::one(), qm1.clone(), order);
    let left = base.powi(-((n + 1 - 2 * i) as i64))?;
    let right = PowerSeries::linear(Rational::one(), -Rational::one(), order).powi(-(i as i64))?;
    let coeff = left.mul(&right).coeff(order).clone();
    Ok(coeff * int(-(n as i64)) * qm1 / int(i as i64))
}

/// `alpha_(k+2,k+1) = (k+1)(2q-1) - (q-1)n`.
pub fn alpha_offdiag(n: u32, q: u32, k: u32) -> Result<Rational> {
    check_q(q)?;
    check_i(n, k + 2, 2)?;
    let (n, q, k) = (n as i64, q as i64, k as i64);
    Ok(int((k + 1) * (2 * q - 1) - (q - 1) * n))
}

/// Any `alpha_(i,j)`: the coefficient of `A_j` in the Gleason coefficient
/// `c_i`, obtained by reverting `g(y) = y(1-y)/(1+(q-1)y)^2` against
/// `f(y) = y^j (1+(q-1)y)^-n`.
pub fn alpha_series(n: u32, q: u32, i: u32, j: u32) -> Result<Rational> {
    alpha_series_with_order(n, q, i, j, i.saturating_sub(1) as usize)
}

/// [`alpha_series`] with the intermediate series kept to `y^order`; any
/// `order >= i - 1` yields the same coefficient.
pub fn alpha_series_with_order(n: u32, q: u32, i: u32, j: u32, order: usize) -> Result<Rational> {
    check_q(q)?;
    check_i(n, i, 0)?;
    if j > n / 2 {
        return Err(Error::OutOfRange {
            what: "j",
            value: j as i64,
            range: format!("[0, {}]", n / 2),
        });
    }
    if i == 0 {
        return Ok(if j == 0 {
            Rational::one()
        } else {
            Rational::zero()
        });
    }
    if order + 1 < i as usize {
        return Err(Error::Domain(format!(
            "order {order} cannot reach y^{}",
            i - 1
        )));
    }
    let qm1 = int(q as i64 - 1);
    let base = PowerSeries::linear(Rational::one(), qm1, order + 1);
    let f = PowerSeries::monomial(j as usize, order + 1).mul(&base.powi(-(n as i64))?);
    let df = f.derive();
    let one_minus_y = PowerSeries::linear(Rational::one(), -Rational::one(), order);
    let h = base.truncate(order).pow(2).mul(&one_minus_y.inverse()?);
    let product = df.mul(&h.pow(i));
    Ok(product.coeff((i - 1) as usize).clone() / int(i as i64))
}

/// The off-diagonal entry through the series route, for checking
/// [`alpha_offdiag`].
pub fn lagrange_burmann_oracle(n: u32, q: u32, k: u32) -> Result<Rational> {
    check_i(n, k + 2, 2)?;
    alpha_series(n, q, k + 2, k + 1)
}

/// The entries of the change-of-basis triangle a shadow check consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTriangle {
    pub n: u32,
    pub q: u32,
    entries: BTreeMap<(u32, u32), Rational>,
}

impl AlphaTriangle {
    pub fn new(n: u32, q: u32) -> Result<Self> {
        check_q(q)?;
        Ok(AlphaTriangle {
            n,
            q,
            entries: BTreeMap::new(),
        })
    }

    /// Populates `alpha_(k+1,0)`, `alpha_(k+2,0)`, `alpha_(k+2,k+1)` and the
    /// two diagonal ones.
    pub fn for_refinement(n: u32, q: u32, k: u32) -> Result<Self> {
        let mut t = Self::new(n, q)?;
        for i in [k + 1, k + 2] {
            t.entries.insert((i, 0), alpha_i0(n, q, i)?);
            t.entries.insert((i, i), Rational::one());
        }
        t.entries.insert((k + 2, k + 1), alpha_offdiag(n, q, k)?);
        Ok(t)
    }

    pub fn get(&self, i: u32, j: u32) -> Option<&Rational> {
        self.entries.get(&(i, j))
    }

    /// Stored value when present, otherwise the series oracle.
    pub fn entry(&self, i: u32, j: u32) -> Result<Rational> {
        match self.get(i, j) {
            Some(v) => Ok(v.clone()),
            None => alpha_series(self.n, self.q, i, j),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.entries.iter()
    }
}
