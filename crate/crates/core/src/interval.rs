//! Rigorous arbitrary-precision interval evaluation.
//!
//! Values are dyadic floats (BigInt mantissa times a power of two) and every
//! irrational quantity is carried as an enclosure [lo, hi] whose endpoints
//! round outward. Series truncation errors are bounded by explicit formulas
//! (alternating or geometric tails), never by guard digits.
//!
//! ln is computed by argument reduction to [1,2) and the atanh series; pi by
//! a Machin-type arctangent identity. Both run in exact rational arithmetic
//! and only the final endpoints are rounded, so soundness reduces to the
//! stated tail bounds.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{pow_rational, rat_int, Rational};

/// Directed rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Down,
    Up,
}

/// Dyadic float: `mantissa * 2^exp`, canonicalized so the mantissa is odd
/// (or zero); structural equality is then semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Float {
    m: BigInt,
    e: i64,
}

impl Float {
    pub fn new(m: BigInt, e: i64) -> Self {
        let mut f = Float { m, e };
        f.normalize();
        f
    }

    pub fn zero() -> Self {
        Float {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Float::new(BigInt::from(v), 0)
    }

    fn normalize(&mut self) {
        if self.m.is_zero() {
            self.e = 0;
            return;
        }
        if let Some(tz) = self.m.trailing_zeros() {
            if tz > 0 {
                self.m >>= tz as usize;
                self.e += tz as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    /// Exact sum; alignment cost is bounded by the exponent gap, which stays
    /// small for the magnitudes this crate works with.
    pub fn add(&self, rhs: &Float) -> Float {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.e.min(rhs.e);
        let a = &self.m << (self.e - e) as usize;
        let b = &rhs.m << (rhs.e - e) as usize;
        Float::new(a + b, e)
    }

    pub fn neg(&self) -> Float {
        Float {
            m: -self.m.clone(),
            e: self.e,
        }
    }

    pub fn sub(&self, rhs: &Float) -> Float {
        self.add(&rhs.neg())
    }

    /// Exact product.
    pub fn mul(&self, rhs: &Float) -> Float {
        Float::new(&self.m * &rhs.m, self.e + rhs.e)
    }

    /// Rounds the mantissa to at most `bits` significant bits in the given
    /// direction.
    pub fn round(&self, bits: u32, dir: Dir) -> Float {
        let len = self.m.bits();
        if len <= bits as u64 {
            return self.clone();
        }
        let s = (len - bits as u64) as usize;
        let sign = self.m.sign();
        let mag = self.m.magnitude();
        let q: BigUint = mag >> s;
        let inexact = &(&q << s) != mag;
        let bump = match (dir, sign) {
            (Dir::Down, Sign::Minus) => inexact,
            (Dir::Up, Sign::Plus) => inexact,
            _ => false,
        };
        let q = if bump { q + BigUint::one() } else { q };
        Float::new(BigInt::from_biguint(sign, q), self.e + s as i64)
    }

    /// Exact rational image.
    pub fn to_rational(&self) -> Rational {
        if self.e >= 0 {
            Rational::from_integer(&self.m << self.e as usize)
        } else {
            Rational::new(self.m.clone(), BigInt::one() << (-self.e) as usize)
        }
    }

    /// f64 image for diagnostics and slope fits; saturates far outside the
    /// f64 exponent range.
    pub fn to_f64_approx(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.m.bits();
        let keep = bits.min(53);
        let top: BigUint = self.m.magnitude() >> (bits - keep) as usize;
        let sign = if self.m.is_negative() { -1.0 } else { 1.0 };
        let exp = self.e + (bits - keep) as i64;
        sign * top.to_f64().unwrap_or(f64::MAX) * 2f64.powi(exp.clamp(-1070, 1023) as i32)
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |s: Sign| match s {
            Sign::Minus => 0u8,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        let (sa, sb) = (self.m.sign(), other.m.sign());
        if rank(sa) != rank(sb) {
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // Same nonzero sign: coarse magnitude compare, then aligned compare.
        let la = self.m.bits() as i64 + self.e;
        let lb = other.m.bits() as i64 + other.e;
        let mag_order = if la != lb {
            la.cmp(&lb)
        } else {
            let e = self.e.min(other.e);
            let a: BigUint = self.m.magnitude() << (self.e - e) as usize;
            let b: BigUint = other.m.magnitude() << (other.e - e) as usize;
            a.cmp(&b)
        };
        if sa == Sign::Minus {
            mag_order.reverse()
        } else {
            mag_order
        }
    }
}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rounds an exact rational to a dyadic float with `bits` significant bits.
pub fn float_from_rational(r: &Rational, bits: u32, dir: Dir) -> Float {
    if r.is_zero() {
        return Float::zero();
    }
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let scale = bits as i64 + 1 - (p.bits() as i64 - q.bits() as i64);
    let (m0, rem) = if scale >= 0 {
        (p << scale as usize).div_rem(q)
    } else {
        p.div_rem(&(q << (-scale) as usize))
    };
    let inexact = !rem.is_zero();
    let negative = r.is_negative();
    let bump = match (dir, negative) {
        (Dir::Down, true) => inexact,
        (Dir::Up, false) => inexact,
        _ => false,
    };
    let m0 = if bump { m0 + BigUint::one() } else { m0 };
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    Float::new(BigInt::from_biguint(sign, m0), -scale).round(bits, dir)
}

/// Certified interval [lo, hi] containing a real value; all arithmetic
/// rounds lo down and hi up at the stored working precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
    bits: u32,
}

impl Enclosure {
    pub fn from_rational(r: &Rational, bits: u32) -> Enclosure {
        Enclosure {
            lo: float_from_rational(r, bits, Dir::Down),
            hi: float_from_rational(r, bits, Dir::Up),
            bits,
        }
    }

    pub fn from_rational_bracket(lo: &Rational, hi: &Rational, bits: u32) -> Enclosure {
        debug_assert!(lo <= hi);
        Enclosure {
            lo: float_from_rational(lo, bits, Dir::Down),
            hi: float_from_rational(hi, bits, Dir::Up),
            bits,
        }
    }

    pub fn exact_int(v: i64, bits: u32) -> Enclosure {
        let f = Float::from_i64(v);
        Enclosure {
            lo: f.clone(),
            hi: f,
            bits,
        }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn lo_rational(&self) -> Rational {
        self.lo.to_rational()
    }

    pub fn hi_rational(&self) -> Rational {
        self.hi.to_rational()
    }

    pub fn width(&self) -> Float {
        self.hi.sub(&self.lo)
    }

    pub fn add(&self, rhs: &Enclosure) -> Enclosure {
        let bits = self.bits.min(rhs.bits);
        Enclosure {
            lo: self.lo.add(&rhs.lo).round(bits, Dir::Down),
            hi: self.hi.add(&rhs.hi).round(bits, Dir::Up),
            bits,
        }
    }

    pub fn sub(&self, rhs: &Enclosure) -> Enclosure {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            bits: self.bits,
        }
    }

    pub fn mul(&self, rhs: &Enclosure) -> Enclosure {
        let bits = self.bits.min(rhs.bits);
        let products = [
            self.lo.mul(&rhs.lo),
            self.lo.mul(&rhs.hi),
            self.hi.mul(&rhs.lo),
            self.hi.mul(&rhs.hi),
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Enclosure {
            lo: lo.round(bits, Dir::Down),
            hi: hi.round(bits, Dir::Up),
            bits,
        }
    }

    /// Interval division; the divisor must exclude zero.
    pub fn div(&self, rhs: &Enclosure) -> Result<Enclosure> {
        if rhs.contains_zero() {
            return Err(Error::IntervalDivisionByZero);
        }
        let bits = self.bits.min(rhs.bits);
        let (alo, ahi) = (self.lo.to_rational(), self.hi.to_rational());
        let (blo, bhi) = (rhs.lo.to_rational(), rhs.hi.to_rational());
        let quotients = [&alo / &blo, &alo / &bhi, &ahi / &blo, &ahi / &bhi];
        let lo = quotients.iter().min().unwrap();
        let hi = quotients.iter().max().unwrap();
        Ok(Enclosure {
            lo: float_from_rational(lo, bits, Dir::Down),
            hi: float_from_rational(hi, bits, Dir::Up),
            bits,
        })
    }

    /// Exact scaling by a rational, rounded outward.
    pub fn scale_rational(&self, k: &Rational) -> Enclosure {
        let (a, b) = (self.lo.to_rational() * k, self.hi.to_rational() * k);
        let (lo, hi) = if k.is_negative() { (b, a) } else { (a, b) };
        Enclosure::from_rational_bracket(&lo, &hi, self.bits)
    }

    pub fn add_rational(&self, k: &Rational) -> Enclosure {
        let lo = self.lo.to_rational() + k;
        let hi = self.hi.to_rational() + k;
        Enclosure::from_rational_bracket(&lo, &hi, self.bits)
    }

    pub fn contains_zero(&self) -> bool {
        let zero = Float::zero();
        self.lo <= zero && zero <= self.hi
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lo.to_rational() <= r && r <= &self.hi.to_rational()
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Certifies that the represented real is strictly below the other's.
    pub fn strictly_below(&self, other: &Enclosure) -> bool {
        self.hi < other.lo
    }

    /// Certifies `self <= other`.
    pub fn below_or_equal(&self, other: &Enclosure) -> bool {
        self.hi <= other.lo
    }

    pub fn is_strictly_positive(&self) -> bool {
        Float::zero() < self.lo
    }

    pub fn is_strictly_negative(&self) -> bool {
        self.hi < Float::zero()
    }

    /// Midpoint as f64, for diagnostics only.
    pub fn mid_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64_approx() + self.hi.to_f64_approx())
    }
}

fn quantize(bits: u32) -> u32 {
    bits.div_ceil(64).max(1) * 64
}

fn two_pow_neg(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Bracket of atanh(t) for exact rational 0 <= t < 1/2, with the geometric
/// tail bound t^(2K+1) / ((2K+1)(1-t^2)).
fn atanh_bracket(t: &Rational, target_bits: u32) -> (Rational, Rational) {
    if t.is_zero() {
        return (rat_int(0), rat_int(0));
    }
    let u = t * t;
    // Lower estimate of log2(1/u) from bit lengths.
    let lb = (u.denom().bits() as i64 - u.numer().bits() as i64 - 1).max(1) as u32;
    let mut k = ((target_bits + 8) / lb + 2) as usize;
    let tol = two_pow_neg(target_bits + 4);
    let tail_bound = |k: usize| -> Rational {
        t * pow_rational(&u, k as i64) / (rat_int((2 * k + 1) as i64) * (rat_int(1) - &u))
    };
    let mut bound = tail_bound(k);
    while bound > tol {
        k += k / 2 + 8;
        bound = tail_bound(k);
    }
    // Horner sum of sum_{j<k} u^j / (2j+1), then scale by t.
    let mut p = rat_int(0);
    for j in (0..k).rev() {
        p = p * &u + Rational::new(BigInt::one(), BigInt::from(2 * j as u64 + 1));
    }
    let lo = t * p;
    let hi = &lo + &bound;
    (lo, hi)
}

/// Exact rational bracket of ln(2) = 2 atanh(1/3), cached per precision.
pub fn ln2_bracket(target_bits: u32) -> (Rational, Rational) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (Rational, Rational)>>> = OnceLock::new();
    let bits = quantize(target_bits);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let (lo, hi) = atanh_bracket(&Rational::new(BigInt::one(), BigInt::from(3)), bits + 2);
    let out = (&lo * rat_int(2), &hi * rat_int(2));
    cache.lock().unwrap().insert(bits, out.clone());
    out
}

/// Exact rational bracket of ln(r) for r > 0: reduce to [1,2) by a power of
/// two, atanh series on the mantissa, then add e * ln 2.
pub fn ln_rational_bracket(r: &Rational, target_bits: u32) -> Result<(Rational, Rational)> {
    if !r.is_positive() {
        return Err(Error::NonPositiveLog);
    }
    let ge_pow2 = |x: &Rational, k: i64| -> bool {
        if k >= 0 {
            *x.numer() >= (x.denom() << k as usize)
        } else {
            (x.numer() << (-k) as usize) >= *x.denom()
        }
    };
    let mut e = r.numer().bits() as i64 - r.denom().bits() as i64;
    if !ge_pow2(r, e) {
        e -= 1;
    } else if ge_pow2(r, e + 1) {
        e += 1;
    }
    debug_assert!(ge_pow2(r, e) && !ge_pow2(r, e + 1));
    let m = if e >= 0 {
        Rational::new(r.numer().clone(), r.denom() << e as usize)
    } else {
        Rational::new(r.numer() << (-e) as usize, r.denom().clone())
    };
    // t = (m-1)/(m+1) lies in [0, 1/3).
    let t = (&m - rat_int(1)) / (&m + rat_int(1));
    let (alo, ahi) = atanh_bracket(&t, target_bits + 2);
    let (mut lo, mut hi) = (&alo * rat_int(2), &ahi * rat_int(2));
    if e != 0 {
        let (l2lo, l2hi) = ln2_bracket(target_bits + 8);
        let er = rat_int(e);
        if e > 0 {
            lo += &er * &l2lo;
            hi += &er * &l2hi;
        } else {
            lo += &er * &l2hi;
            hi += &er * &l2lo;
        }
    }
    Ok((lo, hi))
}

/// Tightest representable bracket of an exact rational.
pub fn enclose_rational(r: &Rational, precision_bits: u32) -> Enclosure {
    Enclosure::from_rational(r, precision_bits)
}

/// Certified bracket of ln of a positive rational.
pub fn enclose_ln_rational(r: &Rational, precision_bits: u32) -> Result<Enclosure> {
    let (lo, hi) = ln_rational_bracket(r, precision_bits + 2)?;
    Ok(Enclosure::from_rational_bracket(&lo, &hi, precision_bits))
}

/// Certified bracket of ln over an interval; ln is increasing, so the
/// rational routine applies to the endpoint values.
pub fn enclose_ln(x: &Enclosure, precision_bits: u32) -> Result<Enclosure> {
    let lo_r = x.lo_rational();
    if !lo_r.is_positive() {
        return Err(Error::NonPositiveLog);
    }
    let (lo, _) = ln_rational_bracket(&lo_r, precision_bits + 2)?;
    let (_, hi) = ln_rational_bracket(&x.hi_rational(), precision_bits + 2)?;
    Ok(Enclosure::from_rational_bracket(&lo, &hi, precision_bits))
}

/// Bracket of atan(1/x) for integer x >= 2 via the alternating series; the
/// true value lies between consecutive partial sums.
fn atan_inv_bracket(x: u64, target_bits: u32) -> (Rational, Rational) {
    let x2 = Rational::from_integer(BigInt::from(x) * BigInt::from(x));
    let term = |j: usize| -> Rational {
        Rational::new(
            BigInt::one(),
            BigInt::from(2 * j as u64 + 1)
                * num_traits::pow::pow(BigInt::from(x), 2 * j + 1),
        )
    };
    let tol = two_pow_neg(target_bits + 4);
    let mut k = 1usize;
    {
        let mut t = term(0);
        while t > tol {
            t = t / &x2;
            k += 1;
        }
    }
    let mut partial = rat_int(0);
    for j in 0..k {
        let t = term(j);
        if j % 2 == 0 {
            partial += t;
        } else {
            partial -= t;
        }
    }
    let next = term(k);
    if k % 2 == 0 {
        (partial.clone(), partial + next)
    } else {
        (&partial - &next, partial)
    }
}

/// Exact rational bracket of pi = 16 atan(1/5) - 4 atan(1/239), cached per
/// precision.
pub fn pi_rational_bracket(target_bits: u32) -> (Rational, Rational) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (Rational, Rational)>>> = OnceLock::new();
    let bits = quantize(target_bits);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&bits) {
        return hit.clone();
    }
    let (a5lo, a5hi) = atan_inv_bracket(5, bits + 6);
    let (a239lo, a239hi) = atan_inv_bracket(239, bits + 6);
    let lo = &a5lo * rat_int(16) - &a239hi * rat_int(4);
    let hi = &a5hi * rat_int(16) - &a239lo * rat_int(4);
    cache.lock().unwrap().insert(bits, (lo.clone(), hi.clone()));
    (lo, hi)
}

/// Certified pi bracket; width is at most 2^-(precision_bits - 2).
pub fn enclose_pi(precision_bits: u32) -> Enclosure {
    let (lo, hi) = pi_rational_bracket(precision_bits + 4);
    Enclosure::from_rational_bracket(&lo, &hi, precision_bits)
}

/// Certified bracket of the constant (gamma + 4 ln 2) / pi appearing in the
/// asymptotic law of the Landau sums.
pub fn enclose_c0(precision_bits: u32) -> Result<Enclosure> {
    let (glo, ghi) = crate::gamma::gamma_rational_bracket(precision_bits + 6)?;
    let (l2lo, l2hi) = ln2_bracket(precision_bits + 6);
    let (plo, phi) = pi_rational_bracket(precision_bits + 6);
    let num_lo = glo + &l2lo * rat_int(4);
    let num_hi = ghi + &l2hi * rat_int(4);
    // Both factors positive.
    let lo = num_lo / &phi;
    let hi = num_hi / &plo;
    Ok(Enclosure::from_rational_bracket(&lo, &hi, precision_bits))
}

/// Nearest integer at half-away-from-zero, exact.
fn round_nearest_int(r: &Rational) -> BigInt {
    let two_p = r.numer() * 2;
    let q = r.denom();
    if r.is_negative() {
        -((-two_p + q) / (q * 2))
    } else {
        (two_p + q) / (q * 2)
    }
}

/// `digits` significant decimal digits of the enclosed value, rounded to
/// nearest (half away from zero), provided both endpoints certify the same
/// string. On failure returns the largest digit count that would certify.
pub fn decimal_digits(enc: &Enclosure, digits: usize) -> std::result::Result<String, usize> {
    let lo = enc.lo_rational();
    let hi = enc.hi_rational();
    if let Some(s) = try_render(&lo, &hi, digits) {
        return Ok(s);
    }
    for d in (1..digits).rev() {
        if try_render(&lo, &hi, d).is_some() {
            return Err(d);
        }
    }
    Err(0)
}

/// Best-effort rendering: as many certified digits as possible, marked with
/// a trailing `~` when fewer than requested survive.
pub fn decimal_approx(enc: &Enclosure, digits: usize) -> String {
    match decimal_digits(enc, digits) {
        Ok(s) => s,
        Err(0) => "0~".to_string(),
        Err(d) => {
            let lo = enc.lo_rational();
            let hi = enc.hi_rational();
            format!("{}~", try_render(&lo, &hi, d).expect("renderable at certified count"))
        }
    }
}

/// Renders when both endpoints round to the same `digits`-digit decimal.
fn try_render(lo: &Rational, hi: &Rational, digits: usize) -> Option<String> {
    if lo.is_zero() && hi.is_zero() {
        return Some("0".to_string());
    }
    if lo.is_negative() != hi.is_negative() || lo.is_zero() || hi.is_zero() {
        return None; // sign not certified
    }
    let negative = lo.is_negative();
    let (alo, ahi) = if negative {
        (-hi.clone(), -lo.clone())
    } else {
        (lo.clone(), hi.clone())
    };
    // Decimal exponent: smallest ex with alo < 10^ex.
    let ten = rat_int(10);
    let mut ex = (alo.numer().bits() as i64 - alo.denom().bits() as i64) * 30103 / 100000;
    while pow_rational(&ten, ex) <= alo {
        ex += 1;
    }
    while pow_rational(&ten, ex - 1) > alo {
        ex -= 1;
    }
    let cap = BigInt::from(10).pow(digits as u32);
    let rounded = |v: &Rational, ex: i64| -> (BigInt, i64) {
        let scale = pow_rational(&ten, digits as i64 - ex);
        let n = round_nearest_int(&(v * scale));
        if n == cap {
            (&cap / 10, ex + 1)
        } else {
            (n, ex)
        }
    };
    let (n_lo, ex_lo) = rounded(&alo, ex);
    // hi may live one decade up; rounding normalizes both to `digits` digits.
    let mut ex_hi_start = ex;
    while pow_rational(&ten, ex_hi_start) <= ahi {
        ex_hi_start += 1;
    }
    let (n_hi, ex_hi) = rounded(&ahi, ex_hi_start);
    if n_lo != n_hi || ex_lo != ex_hi {
        return None;
    }
    let body = n_lo.to_string();
    if body.len() != digits {
        return None; // rounded below the leading decade (e.g. 0.99 -> 1.0)
    }
    let ex = ex_lo;
    let sign = if negative { "-" } else { "" };
    let s = if ex <= 0 {
        format!("{sign}0.{}{}", "0".repeat((-ex) as usize), body)
    } else if (ex as usize) < digits {
        format!("{sign}{}.{}", &body[..ex as usize], &body[ex as usize..])
    } else {
        format!("{sign}{}{}", body, "0".repeat(ex as usize - digits))
    };
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, rat};

    #[test]
    fn dyadic_rationals_enclose_exactly() {
        let e = enclose_rational(&rat(5, 4), 64);
        assert_eq!(e.lo(), e.hi());
        assert!(e.contains_rational(&rat(5, 4)));
    }

    #[test]
    fn third_at_low_precision() {
        let e = enclose_rational(&rat(1, 3), 8);
        assert!(e.contains_rational(&rat(1, 3)));
        assert!(e.width().to_rational() <= rat(1, 256));
    }

    #[test]
    fn narrow_bracket_at_128_bits() {
        let r = parse_rational("13775/3056130").unwrap();
        let e = enclose_rational(&r, 128);
        assert!(e.contains_rational(&r));
        assert!(e.width().to_rational() <= two_pow_neg(126));
    }

    #[test]
    fn ln_one_is_exact_zero() {
        let e = enclose_ln_rational(&rat_int(1), 128).unwrap();
        assert!(e.lo().is_zero() && e.hi().is_zero());
    }

    #[test]
    fn ln_two_contains_reference_digits() {
        let e = enclose_ln_rational(&rat_int(2), 128).unwrap();
        let reference = parse_rational("693147180559945309417/1000000000000000000000").unwrap();
        // 21 digits bracket the true value to 1e-21.
        assert!(e.lo_rational() <= &reference + rat(1, 1_000_000_000_000_000_000));
        assert!(e.hi_rational() >= reference);
        assert!(e.width().to_rational() <= two_pow_neg(120));
    }

    #[test]
    fn ln_two_independent_route_intersects() {
        // Mercator at 1/2: ln 2 = sum_{k>=1} 1/(k 2^k), tail < 1/((K+1) 2^K).
        let mut s = rat_int(0);
        let kmax = 80usize;
        for k in 1..=kmax {
            s += Rational::new(BigInt::one(), BigInt::from(k as u64) << k);
        }
        let tail = Rational::new(BigInt::one(), BigInt::from(kmax as u64 + 1) << kmax);
        let (lo, hi) = (s.clone(), s + tail);
        let e = enclose_ln_rational(&rat_int(2), 64).unwrap();
        assert!(e.hi_rational() >= lo && e.lo_rational() <= hi);
    }

    #[test]
    fn ln_of_near_e_is_near_one() {
        let near_e = parse_rational("2718281828/1000000000").unwrap();
        let e = enclose_ln_rational(&near_e, 96).unwrap();
        let one = rat_int(1);
        assert!((e.lo_rational() - &one).abs() < rat(1, 1_000_000_000));
        assert!((e.hi_rational() - one).abs() < rat(1, 1_000_000_000));
    }

    #[test]
    fn ln_monotone_on_intervals() {
        let x = Enclosure::from_rational_bracket(&rat_int(2), &rat_int(4), 64);
        let l = enclose_ln(&x, 64).unwrap();
        let ln2 = enclose_ln_rational(&rat_int(2), 64).unwrap();
        let ln4 = enclose_ln_rational(&rat_int(4), 64).unwrap();
        assert!(l.lo() <= ln2.lo() && ln4.hi() <= l.hi());
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert!(enclose_ln_rational(&rat_int(0), 32).is_err());
        assert!(enclose_ln_rational(&rat(-1, 2), 32).is_err());
    }

    #[test]
    fn pi_contains_reference_digits() {
        let e = enclose_pi(64);
        let lo20 = parse_rational("314159265358979323846/100000000000000000000").unwrap();
        let hi20 = parse_rational("314159265358979323847/100000000000000000000").unwrap();
        assert!(e.lo_rational() <= hi20 && e.hi_rational() >= lo20);
    }

    #[test]
    fn pi_width_contract() {
        for bits in [64u32, 128, 256, 1024] {
            let e = enclose_pi(bits);
            assert!(e.width().to_rational() <= two_pow_neg(bits - 2), "bits={bits}");
        }
    }

    #[test]
    fn pi_independent_identity_intersects() {
        // pi = 8 atan(1/3) + 4 atan(1/7).
        for bits in [64u32, 256] {
            let (a3lo, a3hi) = atan_inv_bracket(3, bits + 6);
            let (a7lo, a7hi) = atan_inv_bracket(7, bits + 6);
            let lo = &a3lo * rat_int(8) + &a7lo * rat_int(4);
            let hi = &a3hi * rat_int(8) + &a7hi * rat_int(4);
            let machin = enclose_pi(bits);
            assert!(machin.hi_rational() >= lo && machin.lo_rational() <= hi);
        }
    }

    #[test]
    fn directed_rounding_soundness_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let a = rat(rng.gen_range(-999..1000), rng.gen_range(1..100));
            let b = rat(rng.gen_range(-999..1000), rng.gen_range(1..100));
            let ea = enclose_rational(&a, 16);
            let eb = enclose_rational(&b, 16);
            assert!(ea.add(&eb).contains_rational(&(&a + &b)));
            assert!(ea.sub(&eb).contains_rational(&(&a - &b)));
            assert!(ea.mul(&eb).contains_rational(&(&a * &b)));
            if !eb.contains_zero() {
                assert!(ea.div(&eb).unwrap().contains_rational(&(&a / &b)));
            }
        }
    }

    #[test]
    fn refinement_never_widens() {
        let args = [rat(2, 1), rat(7, 3), rat(1000001, 7)];
        for r in &args {
            let mut prev = enclose_ln_rational(r, 64).unwrap().width().to_rational();
            for bits in [128u32, 256, 512] {
                let w = enclose_ln_rational(r, bits).unwrap().width().to_rational();
                assert!(w <= prev);
                prev = w;
            }
        }
        let mut prev = enclose_pi(64).width().to_rational();
        for bits in [128u32, 256, 512] {
            let w = enclose_pi(bits).width().to_rational();
            assert!(w <= prev);
            prev = w;
        }
    }

    #[test]
    fn decimal_rounding_policy() {
        // 0.577... rounds to "0.6" at one significant digit.
        let e = Enclosure::from_rational_bracket(&rat(5772, 10000), &rat(5773, 10000), 64);
        assert_eq!(decimal_digits(&e, 1).unwrap(), "0.6");
        assert_eq!(decimal_digits(&e, 3).unwrap(), "0.577");
        // Not enough width to pin 10 digits.
        assert!(decimal_digits(&e, 10).is_err());
        assert!(decimal_approx(&e, 10).ends_with('~'));
    }

    #[test]
    fn decimal_carry_across_decade() {
        let e = Enclosure::from_rational_bracket(&rat(9996, 10000), &rat(9998, 10000), 64);
        assert_eq!(decimal_digits(&e, 2).unwrap(), "1.0");
    }

    #[test]
    fn decimal_of_negative_values() {
        let e = Enclosure::from_rational_bracket(&rat(-5773, 10000), &rat(-5772, 10000), 64);
        assert_eq!(decimal_digits(&e, 3).unwrap(), "-0.577");
    }
}
