//! Rate bound `k <= theta n` for large `n`, from the sign of
//! `f(theta, q) = 1/2 log(1-2theta) + (1-theta) log((1-theta)/(1-2theta))
//!  + theta log 2 - (1-2theta) log q`.

mod interval;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, ratio, rational_json, Rational};

pub use interval::{ln_interval, Interval};

pub const DEFAULT_PRECISION_BITS: u32 = 128;
pub const MAX_PRECISION_BITS: u32 = 4096;

fn half() -> Rational {
    ratio(1, 2)
}

/// `f(theta, q)` enclosed in an interval of width about `2^-bits`.
pub fn theta_function(theta: &Rational, q: u32, bits: u32) -> Result<Interval> {
    if q < 2 {
        return Err(Error::OutOfRange {
            what: "q",
            value: q as i64,
            range: "[2, inf)".into(),
        });
    }
    if *theta <= Rational::zero() || *theta >= half() {
        return Err(Error::Domain(format!(
            "theta = {theta} must lie in (0, 1/2)"
        )));
    }
    let one = Rational::one();
    let one_minus = &one - theta;
    let one_minus_2 = &one - theta * int(2);
    // regrouped: (theta - 1/2) ln(1-2theta) + (1-theta) ln(1-theta)
    //            + theta ln 2 - (1-2theta) ln q
    let guard = bits + 8;
    let terms = [
        (theta - half(), one_minus_2.clone()),
        (one_minus.clone(), one_minus),
        (theta.clone(), int(2)),
        (-one_minus_2, int(q as i64)),
    ];
    let mut acc = Interval::point(Rational::zero());
    for (coeff, arg) in terms {
        acc = acc.add(&ln_interval(&arg, guard)?.scale(&coeff));
    }
    Ok(acc.round_outward(bits))
}

/// Certified sign of `f(theta, q)`, doubling precision from `bits` until
/// the enclosure excludes zero.
pub fn certified_sign(
    theta: &Rational,
    q: u32,
    bits: u32,
    max_bits: u32,
) -> Result<(bool, Interval, u32)> {
    let mut bits = bits.max(1);
    loop {
        let iv = theta_function(theta, q, bits)?;
        if iv.lo > Rational::zero() {
            return Ok((true, iv, bits));
        }
        if iv.hi < Rational::zero() {
            return Ok((false, iv, bits));
        }
        if bits >= max_bits {
            return Err(Error::Precision { bits });
        }
        bits = (bits * 2).min(max_bits);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateKind {
    /// A grid point with a certified positive value exists.
    Certified,
    /// No grid point below 1/2 works; only `k <= n/2` remains.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RateBound {
    pub q: u32,
    pub decimals: u32,
    pub kind: RateKind,
    #[serde(with = "rational_json")]
    pub theta: Rational,
    /// Enclosure of `f` at `theta`; its lower end is the certified margin.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at_theta: Option<Interval>,
    /// Enclosure of `f` one grid step below `theta` (negative).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub below_theta: Option<Interval>,
    pub precision_bits: u32,
    /// For `q` in {2, 3} the shadow bound is already stronger.
    pub weaker_than_shadow: bool,
}

impl RateBound {
    pub fn margin(&self) -> Option<&Rational> {
        self.at_theta.as_ref().map(|iv| &iv.lo)
    }

    pub fn error(&self) -> Option<Rational> {
        self.at_theta.as_ref().map(Interval::width)
    }

    /// `theta` as a decimal string with `decimals` digits.
    pub fn theta_decimal(&self) -> String {
        format_decimal(&self.theta, self.decimals)
    }
}

/// Exact decimal rendering of a rational that lies on the `10^-decimals` grid.
pub fn format_decimal(v: &Rational, decimals: u32) -> String {
    let scale = num_traits::pow(BigInt::from(10), decimals as usize);
    let scaled = (v * Rational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let int_part = &scaled / &scale;
    let frac = (&scaled % &scale).to_string();
    if decimals == 0 {
        return int_part.to_string();
    }
    format!("{int_part}.{frac:0>width$}", width = decimals as usize)
}

/// Smallest `theta` on the `10^-decimals` grid with `f(theta, q) > 0`.
///
/// `f` is concave with `f(0+) = -log q < 0` and `f -> 0` at `1/2`, so the
/// positive set is an interval ending at `1/2` and bisection on the grid
/// finds its left end.
pub fn theta_bound(q: u32, decimals: u32) -> Result<RateBound> {
    theta_bound_with(q, decimals, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS)
}

pub fn theta_bound_with(q: u32, decimals: u32, bits: u32, max_bits: u32) -> Result<RateBound> {
    if !(1..=12).contains(&decimals) {
        return Err(Error::OutOfRange {
            what: "decimals",
            value: decimals as i64,
            range: "[1, 12]".into(),
        });
    }
    let denom = num_traits::pow(BigInt::from(10), decimals as usize);
    let grid = |t: &BigInt| Rational::new(t.clone(), denom.clone());
    let mut lo = BigInt::zero();
    let mut hi = &denom / 2 - 1;
    let mut used = bits;
    let (top_positive, top_iv, b) = certified_sign(&grid(&hi), q, bits, max_bits)?;
    used = used.max(b);
    if !top_positive {
        return Ok(RateBound {
            q,
            decimals,
            kind: RateKind::Trivial,
            theta: half(),
            at_theta: None,
            below_theta: Some(top_iv),
            precision_bits: used,
            weaker_than_shadow: q <= 3,
        });
    }
    let mut hi_iv = top_iv;
    let mut lo_iv = None;
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        let (positive, iv, b) = certified_sign(&grid(&mid), q, bits, max_bits)?;
        used = used.max(b);
        if positive {
            hi = mid;
            hi_iv = iv;
        } else {
            lo = mid;
            lo_iv = Some(iv);
        }
    }
    if lo_iv.is_none() && !lo.is_zero() {
        lo_iv = Some(certified_sign(&grid(&lo), q, bits, max_bits)?.1);
    }
    Ok(RateBound {
        q,
        decimals,
        kind: RateKind::Certified,
        theta: grid(&hi),
        at_theta: Some(hi_iv),
        below_theta: lo_iv,
        precision_bits: used,
        weaker_than_shadow: q <= 3,
    })
}
