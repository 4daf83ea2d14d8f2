//! The universal exact scalar: an arbitrary-precision rational.
//!
//! `num_rational::BigRational` already maintains the invariants this crate
//! relies on (always reduced to lowest terms, denominator positive), so the
//! type is used directly; this module adds the constructors and the
//! canonical `p/q` string round-trip used by the serialization contract.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Rational from an integer pair. Panics on a zero denominator, which is a
/// programming error in this crate (all denominators are literals).
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the canonical form `p/q` or `p`, sign on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadRationalLiteral(s.to_string());
    match s.split_once('/') {
        Some((p, q)) => {
            let numer: BigInt = p.trim().parse().map_err(|_| bad())?;
            let denom: BigInt = q.trim().parse().map_err(|_| bad())?;
            if denom.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(numer, denom))
        }
        None => {
            let numer: BigInt = s.trim().parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(numer))
        }
    }
}

/// Canonical string form: `p/q`, or just `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact integer power with negative exponents allowed for nonzero bases.
pub fn pow_rational(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow::pow(base.clone(), (-exp) as usize)
            .recip()
    }
}

/// Crude f64 image (for diagnostics and slope fits only, never for proofs).
/// Handles magnitudes far outside the f64 range by going through bit lengths.
pub fn to_f64_approx(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    // Fall back to sign * 2^(bits(numer) - bits(denom)) scaled by the top
    // 53 bits of each side.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    let scale = |x: &BigInt| -> f64 {
        let b = x.bits() as i64;
        let keep = 53.min(b);
        let top: BigInt = x.abs() >> (b - keep) as u64;
        top.to_f64().unwrap_or(1.0) * 2f64.powi((b - keep).min(1 << 30) as i32 - b as i32)
    };
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * scale(n) / scale(d) * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_canonical_strings() {
        for s in ["3/4", "-3/4", "7", "-7", "2755/611226", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
    }

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(format_rational(&parse_rational("6/8").unwrap()), "3/4");
        assert_eq!(format_rational(&parse_rational("3/-4").unwrap()), "-3/4");
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!(parse_rational("3/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn integer_powers() {
        assert_eq!(pow_rational(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(pow_rational(&rat(2, 3), -2), rat(9, 4));
        assert_eq!(pow_rational(&rat(5, 1), 0), rat_int(1));
    }
}
