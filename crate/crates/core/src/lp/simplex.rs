//! Exact phase-1 simplex with Bland's rule.
//!
//! Equality rows are eliminated up front by Gaussian substitution (for
//! `U(n,k,q)` this is plain back-substitution through the unit-triangular
//! block). Every eliminated nonnegative variable leaves behind a `>=` row for
//! its bound. The remaining all-`>=` system goes through phase 1; the optimal
//! duals are mapped back through the recorded row combinations so the
//! certificate refers to the original rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::program::{verify_farkas, verify_point, FarkasCertificate, LinearProgram, Relation};
use crate::error::{Error, Result};
use crate::exact::Rational;

pub const DEFAULT_PIVOT_LIMIT: usize = 200_000;
/// Largest `n` accepted by [`solve_primal`] unless overridden.
pub const DEFAULT_LP_MAX_N: u32 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub pivot_limit: usize,
    pub max_n: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            pivot_limit: DEFAULT_PIVOT_LIMIT,
            max_n: DEFAULT_LP_MAX_N,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    Feasible { point: Vec<Rational> },
    Infeasible { certificate: FarkasCertificate },
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible { .. })
    }
}

/// Builds and solves `U(n, k, q)`, refusing `n` above `opts.max_n`.
pub fn solve_primal(n: u32, k: u32, q: u32, opts: &SolveOptions) -> Result<FeasibilityResult> {
    if n > opts.max_n {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            range: format!("[1, {}] (raise the LP size cap to go further)", opts.max_n),
        });
    }
    let lp = super::build_primal(n, k, q)?;
    solve_feasibility(&lp, opts)
}

struct WorkRow {
    coeffs: Vec<Rational>,
    rhs: Rational,
    relation: Relation,
    /// Multipliers over the original rows producing this row (bound rows also
    /// carry an implicit `+x_p`).
    combo: Vec<Rational>,
}

struct Elimination {
    var: usize,
    coeffs: Vec<Rational>,
    rhs: Rational,
}

pub fn solve_feasibility(lp: &LinearProgram, opts: &SolveOptions) -> Result<FeasibilityResult> {
    for row in &lp.rows {
        if row.coeffs.len() != lp.num_vars {
            return Err(Error::SizeMismatch {
                expected: lp.num_vars,
                found: row.coeffs.len(),
            });
        }
    }
    let m0 = lp.rows.len();
    let unit = |i: usize| {
        let mut v = vec![Rational::zero(); m0];
        v[i] = Rational::one();
        v
    };
    let mut rows: Vec<WorkRow> = lp
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| WorkRow {
            coeffs: r.coeffs.clone(),
            rhs: r.rhs.clone(),
            relation: r.relation,
            combo: unit(i),
        })
        .collect();
    let mut eliminated = vec![false; lp.num_vars];
    let mut history: Vec<Elimination> = Vec::new();

    while let Some(pos) = rows.iter().position(|r| r.relation == Relation::Eq) {
        let pivot = rows.remove(pos);
        let Some(p) = pivot.coeffs.iter().rposition(|c| !c.is_zero()) else {
            if pivot.rhs.is_zero() {
                continue;
            }
            let sign = if pivot.rhs.is_positive() {
                Rational::one()
            } else {
                -Rational::one()
            };
            let multipliers = pivot.combo.iter().map(|c| c * &sign).collect();
            return certified_infeasible(lp, FarkasCertificate { multipliers });
        };
        let apk = pivot.coeffs[p].clone();
        for row in rows.iter_mut() {
            if row.coeffs[p].is_zero() {
                continue;
            }
            let f = &row.coeffs[p] / &apk;
            axpy(&mut row.coeffs, &pivot.coeffs, &f);
            axpy(&mut row.combo, &pivot.combo, &f);
            row.rhs -= &pivot.rhs * &f;
        }
        if lp.nonneg[p] {
            // x_p = (rhs - sum_{j != p} a_j x_j) / a_p >= 0
            let neg_inv = -apk.recip();
            let mut coeffs: Vec<Rational> = pivot.coeffs.iter().map(|c| c * &neg_inv).collect();
            coeffs[p] = Rational::zero();
            rows.push(WorkRow {
                coeffs,
                rhs: &pivot.rhs * &neg_inv,
                relation: Relation::Ge,
                combo: pivot.combo.iter().map(|c| c * &neg_inv).collect(),
            });
        }
        eliminated[p] = true;
        history.push(Elimination {
            var: p,
            coeffs: pivot.coeffs,
            rhs: pivot.rhs,
        });
    }

    // Columns of the reduced system; free variables are split into x+ and x-.
    let mut columns: Vec<(usize, bool)> = Vec::new();
    for j in (0..lp.num_vars).filter(|&j| !eliminated[j]) {
        columns.push((j, false));
        if !lp.nonneg[j] {
            columns.push((j, true));
        }
    }
    let reduced: Vec<(Vec<Rational>, Rational)> = rows
        .iter()
        .map(|r| {
            let coeffs = columns
                .iter()
                .map(|&(j, neg)| {
                    if neg {
                        -r.coeffs[j].clone()
                    } else {
                        r.coeffs[j].clone()
                    }
                })
                .collect();
            (coeffs, r.rhs.clone())
        })
        .collect();

    match phase_one(&reduced, columns.len(), opts.pivot_limit)? {
        PhaseOne::Feasible(values) => {
            let mut point = vec![Rational::zero(); lp.num_vars];
            for (&(j, neg), v) in columns.iter().zip(values) {
                if neg {
                    point[j] -= v;
                } else {
                    point[j] += v;
                }
            }
            for elim in history.iter().rev() {
                let mut acc = elim.rhs.clone();
                for (j, c) in elim.coeffs.iter().enumerate() {
                    if j != elim.var && !c.is_zero() {
                        acc -= c * &point[j];
                    }
                }
                point[elim.var] = acc / &elim.coeffs[elim.var];
            }
            if !verify_point(lp, &point)? {
                return Err(Error::Domain(
                    "simplex produced a point that fails re-verification".into(),
                ));
            }
            Ok(FeasibilityResult::Feasible { point })
        }
        PhaseOne::Infeasible(duals) => {
            let mut multipliers = vec![Rational::zero(); m0];
            for (row, u) in rows.iter().zip(&duals) {
                if !u.is_zero() {
                    axpy_add(&mut multipliers, &row.combo, u);
                }
            }
            certified_infeasible(lp, FarkasCertificate { multipliers })
        }
    }
}

fn certified_infeasible(
    lp: &LinearProgram,
    certificate: FarkasCertificate,
) -> Result<FeasibilityResult> {
    if !verify_farkas(lp, &certificate)?.is_valid() {
        return Err(Error::Domain(
            "Farkas certificate fails re-verification".into(),
        ));
    }
    Ok(FeasibilityResult::Infeasible { certificate })
}

/// `dst -= f * src`
fn axpy(dst: &mut [Rational], src: &[Rational], f: &Rational) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= s * f;
        }
    }
}

/// `dst += f * src`
fn axpy_add(dst: &mut [Rational], src: &[Rational], f: &Rational) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s * f;
        }
    }
}

enum PhaseOne {
    Feasible(Vec<Rational>),
    /// Nonnegative multipliers on the `>=` rows proving infeasibility.
    Infeasible(Vec<Rational>),
}

/// Scales a rational vector by the lcm of its denominators.
fn integer_row(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

/// Divides out the content, keeping signs.
fn primitive(row: &mut [BigInt]) -> BigInt {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
    g
}

/// `row <- row * piv - row[enter] * prow`, then made primitive. Returns the
/// positive factor the true row got divided by (`g / piv`, as a ratio).
fn eliminate(
    row: &mut [BigInt],
    prow: &[BigInt],
    enter: usize,
    piv: &BigInt,
) -> Option<(BigInt, BigInt)> {
    let f = row[enter].clone();
    if f.is_zero() {
        return None;
    }
    for (v, p) in row.iter_mut().zip(prow) {
        *v *= piv;
        if !p.is_zero() {
            *v -= &f * p;
        }
    }
    let g = primitive(row);
    Some((g, piv.clone()))
}

/// Phase 1 for `A x >= b, x >= 0`.
///
/// Rows are kept as primitive integer vectors: each tableau row is an
/// equation, so any positive multiple represents it, and the basic variable
/// of row `r` has value `rhs_r / row_r[basis_r]`.
fn phase_one(
    rows: &[(Vec<Rational>, Rational)],
    nvars: usize,
    pivot_limit: usize,
) -> Result<PhaseOne> {
    let m = rows.len();
    if m == 0 {
        return Ok(PhaseOne::Feasible(vec![Rational::zero(); nvars]));
    }
    // column layout: x (nvars) | slack (m) | artificial (one per row with b > 0)
    let flip: Vec<bool> = rows.iter().map(|(_, b)| !b.is_positive()).collect();
    let art_rows: Vec<usize> = (0..m).filter(|&r| !flip[r]).collect();
    let ncols = nvars + m + art_rows.len();
    let rhs_col = ncols;
    let art_start = nvars + m;
    let mut basis = vec![0usize; m];
    let mut tab: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    let mut art_of_row = vec![None; m];
    for (t, &r) in art_rows.iter().enumerate() {
        art_of_row[r] = Some(art_start + t);
    }
    for (r, (coeffs, b)) in rows.iter().enumerate() {
        let s = if flip[r] {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut dense = vec![Rational::zero(); ncols + 1];
        for (j, a) in coeffs.iter().enumerate() {
            dense[j] = a * &s;
        }
        dense[nvars + r] = -s.clone();
        dense[rhs_col] = b * &s;
        basis[r] = match art_of_row[r] {
            Some(col) => {
                dense[col] = Rational::one();
                col
            }
            None => nvars + r,
        };
        let mut row = integer_row(&dense);
        primitive(&mut row);
        tab.push(row);
    }
    let init_col = basis.clone();
    let cost = |j: usize| {
        if j >= art_start {
            Rational::one()
        } else {
            Rational::zero()
        }
    };

    // reduced costs d_j = c_j - c_B B^-1 A_j, stored as red / red_den
    let mut reduced: Vec<Rational> = (0..ncols).map(cost).collect();
    for &r in &art_rows {
        let d = Rational::from_integer(tab[r][basis[r]].clone());
        for (j, v) in reduced.iter_mut().enumerate() {
            if !tab[r][j].is_zero() {
                *v -= Rational::from_integer(tab[r][j].clone()) / &d;
            }
        }
    }
    let mut red_den = Rational::one();
    let mut red = integer_row(&reduced);
    {
        let l = reduced
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        red_den *= Rational::from_integer(l);
        let g = primitive(&mut red);
        if !g.is_zero() {
            red_den /= Rational::from_integer(g);
        }
    }

    let mut pivots = 0usize;
    while let Some(enter) = red.iter().position(|d| d.is_negative()) {
        // Bland: among minimal ratios rhs/a, the row whose basic column is smallest
        let mut leave: Option<usize> = None;
        for r in 0..m {
            let a = &tab[r][enter];
            if !a.is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(lr) => {
                    let lhs = &tab[r][rhs_col] * &tab[lr][enter];
                    let rhs = &tab[lr][rhs_col] * a;
                    lhs < rhs || (lhs == rhs && basis[r] < basis[lr])
                }
            };
            if better {
                leave = Some(r);
            }
        }
        let Some(lr) = leave else {
            return Err(Error::Domain("phase-1 objective reported unbounded".into()));
        };
        pivots += 1;
        if pivots > pivot_limit {
            return Err(Error::Budget { limit: pivot_limit });
        }
        let prow = tab[lr].clone();
        let piv = prow[enter].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != lr {
                eliminate(row, &prow, enter, &piv);
            }
        }
        if let Some((g, p)) = eliminate(&mut red, &prow[..ncols], enter, &piv) {
            red_den *= Rational::from_integer(p);
            if !g.is_zero() {
                red_den /= Rational::from_integer(g);
            }
        }
        basis[lr] = enter;
    }

    let value = |r: usize| Rational::new(tab[r][rhs_col].clone(), tab[r][basis[r]].clone());
    let objective: Rational = (0..m).filter(|&r| basis[r] >= art_start).map(value).sum();
    if objective.is_zero() {
        let mut x = vec![Rational::zero(); nvars];
        for r in 0..m {
            if basis[r] < nvars {
                x[basis[r]] = value(r);
            }
        }
        return Ok(PhaseOne::Feasible(x));
    }
    // y_r = c_init - d_init, then undo the row sign flip.
    let duals = (0..m)
        .map(|r| {
            let col = init_col[r];
            let d = Rational::from_integer(red[col].clone()) / &red_den;
            let y = cost(col) - d;
            if flip[r] {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(PhaseOne::Infeasible(duals))
}
