use num_traits::{One, Zero};

use super::{binomial, Rational};

/// Homogeneous polynomial of degree `n` in `x, y`; index `i` holds the
/// coefficient of `x^(n-i) y^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    coeffs: Vec<Rational>,
}

impl HomogeneousPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a homogeneous polynomial needs degree >= 0"
        );
        HomogeneousPoly { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        HomogeneousPoly {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// `(a x + b y)^degree`, expanded.
    pub fn linear_power(a: &Rational, b: &Rational, degree: usize) -> Self {
        // binomial theorem: coefficient of x^(d-i) y^i is C(d, i) a^(d-i) b^i
        let mut a_pows = vec![Rational::one()];
        let mut b_pows = vec![Rational::one()];
        for _ in 0..degree {
            a_pows.push(a_pows.last().unwrap() * a);
            b_pows.push(b_pows.last().unwrap() * b);
        }
        let coeffs = (0..=degree)
            .map(|i| binomial(degree as u64, i as i64) * &a_pows[degree - i] * &b_pows[i])
            .collect();
        HomogeneousPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        HomogeneousPoly { coeffs: out }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!(self.degree(), other.degree());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * c;
        }
    }

    /// Coefficients of `P(a x + b y, c x + d y)`.
    pub fn substitute_linear(
        &self,
        a: &Rational,
        b: &Rational,
        c: &Rational,
        d: &Rational,
    ) -> Self {
        let n = self.degree();
        // first[e] = (ax+by)^e, second[e] = (cx+dy)^e
        let mut first = vec![HomogeneousPoly::new(vec![Rational::one()])];
        let mut second = first.clone();
        let l1 = HomogeneousPoly::new(vec![a.clone(), b.clone()]);
        let l2 = HomogeneousPoly::new(vec![c.clone(), d.clone()]);
        for e in 0..n {
            first.push(first[e].mul(&l1));
            second.push(second[e].mul(&l2));
        }
        let mut out = HomogeneousPoly::zero(n);
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            out.add_scaled(&first[n - i].mul(&second[i]), coeff);
        }
        out
    }
}
