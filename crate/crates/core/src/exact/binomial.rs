use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Rows of Pascal's triangle up to this `n` are memoized.
pub const DEFAULT_BINOMIAL_CAP: usize = 4096;

/// Lazily memoized binomial rows. A row is built the first time any entry of it
/// is requested; rows above the cap are computed on demand and not stored.
pub struct BinomialTable {
    cap: usize,
    rows: RwLock<Vec<Option<Arc<[BigInt]>>>>,
}

impl BinomialTable {
    pub fn new(cap: usize) -> Self {
        BinomialTable {
            cap,
            rows: RwLock::new(Vec::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn get(&self, n: u64, k: i64) -> BigInt {
        if k < 0 || k as u64 > n {
            return BigInt::zero();
        }
        let k = k as usize;
        let n_us = n as usize;
        if n_us > self.cap {
            return binomial_direct(n, k as u64);
        }
        if let Some(row) = self.rows.read().unwrap().get(n_us).and_then(|r| r.clone()) {
            return row[k].clone();
        }
        let row = build_row(n);
        let mut rows = self.rows.write().unwrap();
        if rows.len() <= n_us {
            rows.resize(n_us + 1, None);
        }
        let value = row[k].clone();
        rows[n_us].get_or_insert(row);
        value
    }
}

fn build_row(n: u64) -> Arc<[BigInt]> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut cur = BigInt::one();
    row.push(cur.clone());
    for k in 0..n {
        cur = cur * BigInt::from(n - k) / BigInt::from(k + 1);
        row.push(cur.clone());
    }
    row.into()
}

fn binomial_direct(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut cur = BigInt::one();
    for i in 0..k {
        cur = cur * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    cur
}

fn global() -> &'static BinomialTable {
    static TABLE: OnceLock<BinomialTable> = OnceLock::new();
    TABLE.get_or_init(|| BinomialTable::new(DEFAULT_BINOMIAL_CAP))
}

/// `C(n, k)` as an integer; zero when `k < 0` or `k > n`.
pub fn binomial_int(n: u64, k: i64) -> BigInt {
    global().get(n, k)
}

/// `C(n, k)` as a rational.
pub fn binomial(n: u64, k: i64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}
