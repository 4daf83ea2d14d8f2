//! Truncated formal power series in x = 1/n with exact rational
//! coefficients.
//!
//! Every series carries its own truncation order and arithmetic never
//! claims coefficients beyond what both operands support: binary operations
//! return min-order results, division by a series of valuation v loses v
//! orders. Silently trusting garbage coefficients is the classic failure
//! mode of these expansions, so the bookkeeping is strict.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, RationalFunction};
use crate::rational::{format_rational, rat_int, Rational};

/// Coefficients of x^0..x^N with the order N explicit; the represented
/// function is sum(coeffs[k] x^k) + O(x^(N+1)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>, order: usize) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, rat_int(0));
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![rat_int(0); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = rat_int(1);
        s
    }

    /// The monomial c * x^k.
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(|| rat_int(0))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, `None` when zero throughout.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        assert!(order <= self.order(), "truncate cannot extend a series");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, k: &Rational) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Exact division, cancelling a shared leading zero-run first.
    ///
    /// If the divisor has valuation v > 0 the dividend must vanish at least
    /// to order v as well; the quotient then loses v orders of accuracy.
    pub fn div(&self, rhs: &TruncatedSeries) -> Result<TruncatedSeries> {
        let order = self.order().min(rhs.order());
        let v = match rhs.valuation() {
            Some(v) if v <= order => v,
            _ => return Err(Error::ZeroDivisorSeries),
        };
        if v > 0 {
            match self.valuation() {
                Some(fv) if fv < v => {
                    return Err(Error::DivisorValuationTooHigh {
                        dividend: fv,
                        divisor: v,
                    })
                }
                _ => {}
            }
        }
        let out_order = order - v;
        let f: Vec<Rational> = (0..=out_order).map(|k| self.coeff(k + v)).collect();
        let g: Vec<Rational> = (0..=out_order).map(|k| rhs.coeff(k + v)).collect();
        let g0 = g[0].clone();
        let mut q = vec![rat_int(0); out_order + 1];
        for i in 0..=out_order {
            let mut acc = f[i].clone();
            for j in 0..i {
                acc -= &q[j] * &g[i - j];
            }
            q[i] = acc / &g0;
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// Composition with the substitution n -> n+1, i.e. with
    /// s(x) = x/(1+x) = x - x^2 + x^3 - ...; loses no order.
    pub fn compose_shift(&self) -> TruncatedSeries {
        self.compose_scaled_shift(&rat_int(1))
    }

    /// Composition with s(x) = x/(1+c x); c = 2 realizes a shift by two.
    pub fn compose_scaled_shift(&self, c: &Rational) -> TruncatedSeries {
        let order = self.order();
        let mut out = vec![rat_int(0); order + 1];
        out[0] = self.coeff(0);
        for k in 1..=order {
            let fk = self.coeff(k);
            if fk.is_zero() {
                continue;
            }
            // [x^(k+j)] (x/(1+cx))^k = (-c)^j * C(k-1+j, j)
            let mut weight = rat_int(1);
            for j in 0..=(order - k) {
                if j > 0 {
                    weight = weight * (-c) * rat_int((k - 1 + j) as i64) / rat_int(j as i64);
                }
                out[k + j] += &fk * &weight;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    /// Expansion of a rational function of n as a series in x = 1/n,
    /// by reversing both polynomials and dividing.
    ///
    /// Requires deg(num) <= deg(den), i.e. the function is bounded at
    /// infinity.
    pub fn from_rational_function(rf: &RationalFunction, order: usize) -> Result<TruncatedSeries> {
        if rf.den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if rf.num.is_zero() {
            return Ok(TruncatedSeries::zero(order));
        }
        let dn = rf.num.degree().unwrap();
        let dd = rf.den.degree().unwrap();
        if dn > dd {
            return Err(Error::NotProperAtInfinity);
        }
        let reversed = |p: &Polynomial| -> TruncatedSeries {
            let mut coeffs = vec![rat_int(0); order + 1];
            for (j, c) in p.coeffs().iter().enumerate() {
                let k = dd - j; // power of x after multiplying by x^dd
                if k <= order {
                    coeffs[k] = c.clone();
                }
            }
            TruncatedSeries { coeffs }
        };
        reversed(&rf.num).div(&reversed(&rf.den))
    }

    /// Series of ln(p(n)/n^m) for a monic polynomial p of degree m,
    /// via ln(1+u) = u - u^2/2 + u^3/3 - ... with u = p(1/x) x^m - 1.
    pub fn log_poly(p: &Polynomial, m: usize, order: usize) -> Result<TruncatedSeries> {
        if !p.is_monic() || p.degree() != Some(m) {
            return Err(Error::NotMonic);
        }
        let mut u = TruncatedSeries::zero(order);
        for (j, c) in p.coeffs().iter().enumerate() {
            let k = m - j;
            if k > 0 && k <= order {
                u.coeffs[k] = c.clone();
            }
        }
        // u has valuation >= 1, so u^k contributes nothing past k > order.
        let mut acc = TruncatedSeries::zero(order);
        let mut upow = u.clone();
        for k in 1..=order {
            if upow.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &upow.scale(&(rat_int(sign) / rat_int(k as i64)));
            upow = &upow * &u;
        }
        Ok(acc)
    }

    /// Series exponential; the constant term must vanish.
    pub fn exp(&self) -> Result<TruncatedSeries> {
        if !self.coeff(0).is_zero() {
            return Err(Error::NonPositiveLog);
        }
        let order = self.order();
        let mut g = vec![rat_int(0); order + 1];
        g[0] = rat_int(1);
        for i in 1..=order {
            let mut acc = rat_int(0);
            for k in 1..=i {
                let fk = self.coeff(k);
                if !fk.is_zero() {
                    acc += rat_int(k as i64) * fk * &g[i - k];
                }
            }
            g[i] = acc / rat_int(i as i64);
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// JSON form: coefficient strings plus the order field.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|k| self.coeff(k) - rhs.coeff(k)).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![rat_int(0); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = if first { "" } else { " + " };
            first = false;
            match k {
                0 => write!(f, "{sep}{}", format_rational(c))?,
                1 => write!(f, "{sep}({})x", format_rational(c))?,
                _ => write!(f, "{sep}({})x^{k}", format_rational(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Exact binomial coefficient, used by tests and the shift identities.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Sanity guard used by evaluation code: true when the rational is an
/// integer in i64 range.
pub fn as_i64(r: &Rational) -> Option<i64> {
    if r.denom().is_one() && r.numer().abs() <= BigInt::from(i64::MAX) {
        use num_traits::ToPrimitive;
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn series(coeffs: &[(i64, i64)]) -> TruncatedSeries {
        TruncatedSeries::new(
            coeffs.iter().map(|&(p, q)| rat(p, q)).collect(),
            coeffs.len() - 1,
        )
    }

    #[test]
    fn telescoping_product() {
        // (1 - x)(1 + x + x^2) = 1 - x^3, so 1 through order 2.
        let a = series(&[(1, 1), (-1, 1), (0, 1)]);
        let b = series(&[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(&a * &b, series(&[(1, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn geometric_division() {
        let one = TruncatedSeries::one(3);
        let denom = series(&[(1, 1), (1, 1), (0, 1), (0, 1)]);
        let q = one.div(&denom).unwrap();
        assert_eq!(q, series(&[(1, 1), (-1, 1), (1, 1), (-1, 1)]));
    }

    #[test]
    fn addition_cancels() {
        let a = series(&[(0, 1), (1, 2), (1, 6)]);
        let b = series(&[(0, 1), (1, 2), (-1, 6)]);
        assert_eq!(&a + &b, series(&[(0, 1), (1, 1), (0, 1)]));
    }

    #[test]
    fn division_cancels_shared_valuation() {
        // (x^2 + x^3) / (x^2) = 1 + x, with two orders lost.
        let f = series(&[(0, 1), (0, 1), (1, 1), (1, 1)]);
        let g = TruncatedSeries::monomial(rat_int(1), 2, 3);
        let q = f.div(&g).unwrap();
        assert_eq!(q.order(), 1);
        assert_eq!(q, series(&[(1, 1), (1, 1)]));
    }

    #[test]
    fn division_errors() {
        let f = series(&[(1, 1), (1, 1)]);
        let zero = TruncatedSeries::zero(1);
        assert_eq!(f.div(&zero), Err(Error::ZeroDivisorSeries));
        let g = TruncatedSeries::monomial(rat_int(1), 1, 1);
        assert!(matches!(
            f.div(&g),
            Err(Error::DivisorValuationTooHigh { .. })
        ));
    }

    #[test]
    fn shift_of_x_is_geometric() {
        // 1/(n+1) in terms of x = 1/n: x - x^2 + x^3 - x^4.
        let x = TruncatedSeries::monomial(rat_int(1), 1, 4);
        let shifted = x.compose_shift();
        assert_eq!(
            shifted,
            series(&[(0, 1), (1, 1), (-1, 1), (1, 1), (-1, 1)])
        );
    }

    #[test]
    fn shift_of_x_squared() {
        let x2 = TruncatedSeries::monomial(rat_int(1), 2, 4);
        assert_eq!(
            x2.compose_shift(),
            series(&[(0, 1), (0, 1), (1, 1), (-2, 1), (3, 1)])
        );
    }

    #[test]
    fn rational_function_expansions() {
        // 1/(n + 1/6) = x - x^2/6 + x^3/36.
        let rf = RationalFunction::new(
            Polynomial::one(),
            Polynomial::n_plus(rat(1, 6)),
        )
        .unwrap();
        let s = TruncatedSeries::from_rational_function(&rf, 3).unwrap();
        assert_eq!(s, series(&[(0, 1), (1, 1), (-1, 6), (1, 36)]));

        // (6n-1)/(12n^2) = x/2 - x^2/12 exactly.
        let rf = RationalFunction::new(
            Polynomial::from_coeffs(vec![rat_int(-1), rat_int(6)]),
            Polynomial::from_coeffs(vec![rat_int(0), rat_int(0), rat_int(12)]),
        )
        .unwrap();
        let s = TruncatedSeries::from_rational_function(&rf, 3).unwrap();
        assert_eq!(s, series(&[(0, 1), (1, 2), (-1, 12), (0, 1)]));

        // 4/(1+4n) = x - x^2/4 through order 2.
        let rf = RationalFunction::new(
            Polynomial::constant(rat_int(4)),
            Polynomial::from_coeffs(vec![rat_int(1), rat_int(4)]),
        )
        .unwrap();
        let s = TruncatedSeries::from_rational_function(&rf, 2).unwrap();
        assert_eq!(s, series(&[(0, 1), (1, 1), (-1, 4)]));
    }

    #[test]
    fn improper_rational_function_rejected() {
        let rf = RationalFunction::new(
            Polynomial::from_coeffs(vec![rat_int(0), rat_int(0), rat_int(1)]),
            Polynomial::n(),
        )
        .unwrap();
        assert_eq!(
            TruncatedSeries::from_rational_function(&rf, 3),
            Err(Error::NotProperAtInfinity)
        );
    }

    #[test]
    fn mercator_series() {
        let s = TruncatedSeries::log_poly(&Polynomial::n_plus(rat_int(1)), 1, 4).unwrap();
        assert_eq!(
            s,
            series(&[(0, 1), (1, 1), (-1, 2), (1, 3), (-1, 4)])
        );
    }

    #[test]
    fn log_difference_of_shifted_arguments() {
        // ln(n+7/4) - ln(n+3/4) through x^5.
        let hi = TruncatedSeries::log_poly(&Polynomial::n_plus(rat(7, 4)), 1, 5).unwrap();
        let lo = TruncatedSeries::log_poly(&Polynomial::n_plus(rat(3, 4)), 1, 5).unwrap();
        let diff = &hi - &lo;
        assert_eq!(
            diff,
            series(&[
                (0, 1),
                (1, 1),
                (-5, 4),
                (79, 48),
                (-145, 64),
                (4141, 1280)
            ])
        );
    }

    #[test]
    fn half_log_of_quadratic() {
        // (1/2) ln((n^2+n+1/3)/n^2) = x/2 - x^2/12 + 0 x^3 + x^4/72 + ...
        let p = Polynomial::from_coeffs(vec![rat(1, 3), rat_int(1), rat_int(1)]);
        let s = TruncatedSeries::log_poly(&p, 2, 4).unwrap().scale(&rat(1, 2));
        assert_eq!(s, series(&[(0, 1), (1, 2), (-1, 12), (0, 1), (1, 72)]));
    }

    #[test]
    fn log_poly_requires_monic_of_stated_degree() {
        let p = Polynomial::from_coeffs(vec![rat_int(1), rat_int(2)]);
        assert_eq!(TruncatedSeries::log_poly(&p, 1, 3), Err(Error::NotMonic));
        let q = Polynomial::n_plus(rat_int(1));
        assert_eq!(TruncatedSeries::log_poly(&q, 2, 3), Err(Error::NotMonic));
    }

    #[test]
    fn exp_undoes_log() {
        let p = Polynomial::from_coeffs(vec![rat(1, 3), rat_int(1), rat_int(1)]);
        let l = TruncatedSeries::log_poly(&p, 2, 8).unwrap();
        let e = l.exp().unwrap();
        // exp(ln(p(1/x) x^2)) must reproduce 1 + x + x^2/3.
        assert_eq!(e, series(&[(1, 1), (1, 1), (1, 3), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn double_shift_equals_scaled_shift() {
        let f = series(&[(1, 1), (1, 2), (-2, 3), (1, 5), (3, 7), (-1, 11)]);
        let twice = f.compose_shift().compose_shift();
        let direct = f.compose_scaled_shift(&rat_int(2));
        assert_eq!(twice, direct);
    }

    #[test]
    fn min_order_bookkeeping() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }
}
