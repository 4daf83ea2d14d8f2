//! Dense univariate polynomials over the rationals, rational functions,
//! and exact collapse of finite continued fractions.
//!
//! Degrees in this crate stay small (at most ~20 after continued-fraction
//! collapse), so a dense coefficient vector is the right representation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, rat_int, Rational};

/// Polynomial in `n` with exact rational coefficients, stored ascending.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(rat_int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `n` itself.
    pub fn n() -> Self {
        Polynomial::from_coeffs(vec![rat_int(0), rat_int(1)])
    }

    /// `n + c`.
    pub fn n_plus(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c, rat_int(1)])
    }

    /// Builds from ascending coefficients, trimming leading zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Ascending coefficients `c0..=c_deg`; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `n^k` (zero when above the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat_int(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, n: i64) -> Rational {
        self.eval(&rat_int(n))
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `p(n + c)` by Horner in polynomial arithmetic.
    pub fn compose_shift(&self, c: &Rational) -> Polynomial {
        let shift = Polynomial::n_plus(c.clone());
        let mut acc = Polynomial::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Polynomial::constant(coeff.clone());
        }
        acc
    }

    /// Integer power by repeated multiplication; exponents here are tiny.
    pub fn pow(&self, k: usize) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Builds `(n+center)^degree + sum b_i (n+center)^i` from coefficients on
    /// the shifted basis, expanded into plain powers of `n`.
    pub fn from_shifted_basis(degree: usize, center: &Rational, lower: &[(usize, Rational)]) -> Polynomial {
        let base = Polynomial::n_plus(center.clone());
        let mut acc = base.pow(degree);
        for (i, b) in lower {
            acc = &acc + &base.pow(*i).scale(b);
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Polynomial::from_coeffs(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![rat_int(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})n", format_rational(c))?,
                _ => write!(f, "({})n^{}", format_rational(c), k)?,
            }
        }
        Ok(())
    }
}

/// Quotient of two polynomials in `n`. The denominator is never identically
/// zero; reduction to lowest terms is not required, evaluation is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    /// `constant / phi`, the shape of every correction term.
    pub fn constant_over(c: &Rational, phi: &Polynomial) -> Self {
        RationalFunction {
            num: Polynomial::constant(c.clone()),
            den: phi.clone(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, n: i64) -> Result<Rational> {
        self.eval(&rat_int(n))
    }

    /// Argument shift `n -> n + c`.
    pub fn compose_shift(&self, c: &Rational) -> RationalFunction {
        RationalFunction {
            num: self.num.compose_shift(c),
            den: self.den.compose_shift(c),
        }
    }

    pub fn add(&self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }

    pub fn sub(&self, rhs: &RationalFunction) -> RationalFunction {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }

    /// Inverse; errors when the numerator is identically zero.
    pub fn recip(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Collapses a finite continued fraction
/// `num_1 / (den_1 + num_2 / (den_2 + ... + num_k / den_k))`
/// bottom-up into an exact rational function.
///
/// Errors if any intermediate denominator collapses to the zero polynomial.
pub fn cf_collapse(terms: &[(Polynomial, Polynomial)]) -> Result<RationalFunction> {
    if terms.is_empty() {
        return Err(Error::DegenerateContinuedFraction);
    }
    // tail holds den_j + num_{j+1}/(den_{j+1} + ...), built innermost-first;
    // the partial numerator num_{j+1} belongs to the level below den_j.
    let mut tail = RationalFunction::from_polynomial(terms.last().unwrap().1.clone());
    for j in (0..terms.len() - 1).rev() {
        if tail.num.is_zero() {
            return Err(Error::DegenerateContinuedFraction);
        }
        let num_next = RationalFunction::from_polynomial(terms[j + 1].0.clone());
        tail = RationalFunction::from_polynomial(terms[j].1.clone())
            .add(&num_next.mul(&tail.recip()?));
    }
    if tail.num.is_zero() {
        return Err(Error::DegenerateContinuedFraction);
    }
    let head = RationalFunction::from_polynomial(terms[0].0.clone());
    Ok(head.mul(&tail.recip()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn poly(coeffs: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&(p, q)| rat(p, q)).collect())
    }

    #[test]
    fn monic_detection_and_degree() {
        let p = poly(&[(1, 6), (1, 1)]);
        assert!(p.is_monic());
        assert_eq!(p.degree(), Some(1));
        assert!(!poly(&[(1, 1), (2, 1)]).is_monic());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn mul_and_eval_agree() {
        let p = poly(&[(1, 1), (2, 1)]); // 1 + 2n
        let q = poly(&[(3, 1), (0, 1), (1, 1)]); // 3 + n^2
        let prod = &p * &q;
        let x = rat(5, 3);
        assert_eq!(prod.eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn compose_shift_evaluates_shifted() {
        let p = poly(&[(2, 1), (-1, 1), (1, 1)]); // n^2 - n + 2
        let shifted = p.compose_shift(&rat_int(1));
        for n in -3..4 {
            assert_eq!(shifted.eval_int(n), p.eval_int(n + 1));
        }
    }

    #[test]
    fn shifted_basis_expansion() {
        // (n + 1/2)^2 - 1/4 = n^2 + n
        let p = Polynomial::from_shifted_basis(2, &rat(1, 2), &[(0, rat(-1, 4))]);
        assert_eq!(p, poly(&[(0, 1), (1, 1), (1, 1)]));
    }

    #[test]
    fn cf_collapse_single_level() {
        // 4 / (1 + 4n)
        let rf = cf_collapse(&[(Polynomial::constant(rat_int(4)), poly(&[(1, 1), (4, 1)]))]).unwrap();
        assert_eq!(rf.eval_int(1).unwrap(), rat(4, 5));
        assert_eq!(rf.eval_int(3).unwrap(), rat(4, 13));
    }

    #[test]
    fn cf_collapse_two_levels_matches_direct_evaluation() {
        // 4 / (1 + 4n + 1 / (2 + 8n))
        let terms = [
            (Polynomial::constant(rat_int(4)), poly(&[(1, 1), (4, 1)])),
            (Polynomial::constant(rat_int(1)), poly(&[(2, 1), (8, 1)])),
        ];
        let rf = cf_collapse(&terms).unwrap();
        for n in 0..=20 {
            let inner = rat_int(2) + rat_int(8) * rat_int(n);
            let direct = rat_int(4) / (rat_int(1) + rat_int(4) * rat_int(n) + rat_int(1) / inner);
            assert_eq!(rf.eval_int(n).unwrap(), direct);
        }
        // Collapsed closed form: (8 + 32n) / (3 + 16n + 32n^2).
        let expect_num = poly(&[(8, 1), (32, 1)]);
        let expect_den = poly(&[(3, 1), (16, 1), (32, 1)]);
        for n in 0..=5 {
            assert_eq!(
                rf.eval_int(n).unwrap(),
                expect_num.eval_int(n) / expect_den.eval_int(n)
            );
        }
    }

    #[test]
    fn cf_collapse_degenerate_denominator() {
        // n + n^2 / (-n) collapses the outer denominator to zero.
        let terms = [
            (Polynomial::one(), Polynomial::n()),
            (poly(&[(0, 1), (0, 1), (1, 1)]), poly(&[(0, 1), (-1, 1)])),
        ];
        assert_eq!(cf_collapse(&terms), Err(Error::DegenerateContinuedFraction));
    }
}
