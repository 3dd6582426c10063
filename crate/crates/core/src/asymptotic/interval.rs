use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, ratio, rational_json, Rational};

/// Closed interval `[lo, hi]` with exact rational ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational_json")]
    pub lo: Rational,
    #[serde(with = "rational_json")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval::new(&self.hi * c, &self.lo * c)
        } else {
            Interval::new(&self.lo * c, &self.hi * c)
        }
    }

    /// Widens both ends to multiples of `2^-bits`, which keeps denominators
    /// from growing across operations.
    pub fn round_outward(&self, bits: u32) -> Interval {
        let scale = Rational::from_integer(BigInt::one() << bits as usize);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval::new(lo, hi)
    }
}

/// `2 atanh(z)` for rational `0 <= z <= 1/3`, partial sums plus the
/// geometric tail bound `z^(2J+1) / (1 - z^2)`.
fn two_atanh(z: &Rational, bits: u32) -> Interval {
    if z.is_zero() {
        return Interval::point(Rational::zero());
    }
    let eps = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
    let z2 = z * z;
    let tail_factor = (Rational::one() - &z2).recip();
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let mut j: i64 = 0;
    loop {
        sum += &power / int(2 * j + 1);
        power *= &z2;
        j += 1;
        let tail = &power * &tail_factor;
        if tail < eps {
            let lo = &sum * int(2);
            let hi = (&sum + tail) * int(2);
            return Interval::new(lo, hi).round_outward(bits + 2);
        }
    }
}

/// Natural log of a positive rational, as `e ln 2 + 2 atanh((y-1)/(y+1))`
/// with `s = 2^e y`, `y` in `[1, 2)`.
pub fn ln_interval(s: &Rational, bits: u32) -> Result<Interval> {
    if !s.is_positive() {
        return Err(Error::Domain(format!("log of non-positive {s}")));
    }
    let work = bits + 8;
    let ln2 = two_atanh(&ratio(1, 3), work);
    let mut e: i64 = (s.numer().bits() as i64) - (s.denom().bits() as i64);
    let two = int(2);
    let mut y = s / crate::exact::pow_rational(&two, e);
    while y >= two {
        y /= &two;
        e += 1;
    }
    while y < Rational::one() {
        y *= &two;
        e -= 1;
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());
    let frac = two_atanh(&z, work);
    Ok(frac.add(&ln2.scale(&int(e))).round_outward(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f64_of(r: &Rational) -> f64 {
        r.numer().to_string().parse::<f64>().unwrap()
            / r.denom().to_string().parse::<f64>().unwrap()
    }

    #[test]
    fn ln2_encloses_known_digits() {
        let iv = ln_interval(&int(2), 200).unwrap();
        // ln 2 = 0.693147180559945309417232121458176568...
        let lo = Rational::new(
            "693147180559945309417232121458176568".parse().unwrap(),
            num_traits::pow(BigInt::from(10), 36),
        );
        let hi = &lo + Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), 36));
        assert!(iv.lo < hi && iv.hi > lo);
        assert!(iv.width() < Rational::new(BigInt::one(), BigInt::one() << 190usize));
    }

    #[test]
    fn ln_one_and_errors() {
        assert!(ln_interval(&int(1), 64)
            .unwrap()
            .contains(&Rational::zero()));
        assert!(ln_interval(&int(0), 64).is_err());
        assert!(ln_interval(&int(-3), 64).is_err());
    }

    proptest! {
        #[test]
        fn matches_float_log(num in 1i64..1_000_000, den in 1i64..1_000_000) {
            let r = ratio(num, den);
            let iv = ln_interval(&r, 96).unwrap();
            let expected = (num as f64 / den as f64).ln();
            let mid = (f64_of(&iv.lo) + f64_of(&iv.hi)) / 2.0;
            prop_assert!((mid - expected).abs() < 1e-9);
            prop_assert!(iv.width() <= Rational::new(BigInt::one(), BigInt::one() << 94usize));
        }

        #[test]
        fn log_of_product_is_sum(a in 1i64..10_000, b in 1i64..10_000) {
            let la = ln_interval(&int(a), 80).unwrap();
            let lb = ln_interval(&int(b), 80).unwrap();
            let lab = ln_interval(&int(a * b), 80).unwrap();
            let sum = la.add(&lb);
            prop_assert!(sum.lo <= lab.hi && lab.lo <= sum.hi);
        }
    }
}
