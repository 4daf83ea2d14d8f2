//! The correction engine: builds the power series of v(n) - v(n+1) minus
//! the applied corrections, extracts limit constants from the leading
//! coefficient, and solves for the next monic correction polynomial one
//! coefficient at a time.
//!
//! The solver never manipulates symbolic unknowns. Each series coefficient
//! is affine in the next unknown, so probing the build at three values (0,
//! 1, 2) both validates affinity exactly and solves the linear equation.
//! This sidesteps the blowup of expanding rational functions with many
//! symbolic parameters.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::Enclosure;
use crate::poly::{Polynomial, RationalFunction};
use crate::rational::{format_rational, rat, rat_int, Rational};
use crate::series::TruncatedSeries;

/// Which constant family a scheme approximates. Landau schemes keep every
/// stored coefficient multiplied by pi so the whole derivation stays
/// rational; the 1/pi factor is reattached only at evaluation time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Gamma,
    Landau,
}

/// One summand of the initial correction: `scale * ln(poly(n) / n^power)`
/// with `poly` monic of degree `power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTerm {
    pub poly: Polynomial,
    pub power: usize,
    pub scale: Rational,
}

/// Initial correction applied before any polynomial correction terms.
///
/// For the gamma family the approximated sequence is
/// `H_n - ln n - sum(log terms) - rational`, so `logs` absorbs alternative
/// logarithm arguments (ln(n+1/2), half-log of a quadratic, log of a
/// rational function) and `rational` holds forms like (6n-1)/(12n^2).
///
/// The Landau family has one fixed initial correction,
/// `(1/pi) ln(n+3/4) + c0`; both fields stay empty there.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InitialCorrection {
    pub logs: Vec<LogTerm>,
    pub rational: Option<RationalFunction>,
}

/// A correction summand `constant / phi(n)` with monic phi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionTerm {
    pub constant: Rational,
    pub phi: Polynomial,
}

impl CorrectionTerm {
    pub fn new(constant: Rational, phi: Polynomial) -> Result<Self> {
        if !phi.is_monic() || phi.degree().map_or(true, |d| d < 1) {
            return Err(Error::NotMonic);
        }
        if constant.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(CorrectionTerm { constant, phi })
    }

    pub fn as_rational_function(&self) -> RationalFunction {
        RationalFunction::constant_over(&self.constant, &self.phi)
    }
}

/// An initial correction plus an ordered list of correction terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionScheme {
    pub family: Family,
    pub initial: InitialCorrection,
    pub terms: Vec<CorrectionTerm>,
}

impl CorrectionScheme {
    pub fn gamma(initial: InitialCorrection) -> Self {
        CorrectionScheme {
            family: Family::Gamma,
            initial,
            terms: Vec::new(),
        }
    }

    pub fn landau() -> Self {
        CorrectionScheme {
            family: Family::Landau,
            initial: InitialCorrection::default(),
            terms: Vec::new(),
        }
    }

    pub fn with_term(&self, term: CorrectionTerm) -> Self {
        let mut s = self.clone();
        s.terms.push(term);
        s
    }

    /// Exact rational part of the scheme value at n: the subtracted
    /// rational-function initial correction plus all correction terms.
    pub fn rational_part_at(&self, n: i64) -> Result<Rational> {
        let mut acc = rat_int(0);
        if let Some(rf) = &self.initial.rational {
            acc += rf.eval_int(n)?;
        }
        for t in &self.terms {
            acc += t.as_rational_function().eval_int(n)?;
        }
        Ok(acc)
    }

    /// Catalog serialization: family, initial-correction descriptor and the
    /// list of {C, phi} pairs as canonical rational strings.
    pub fn to_json(&self) -> serde_json::Value {
        let poly_json = |p: &Polynomial| -> serde_json::Value {
            serde_json::Value::Array(
                p.coeffs()
                    .iter()
                    .map(|c| serde_json::Value::String(format_rational(c)))
                    .collect(),
            )
        };
        let initial = match self.family {
            Family::Landau => serde_json::json!("landau-log"),
            Family::Gamma => serde_json::json!({
                "logs": self.initial.logs.iter().map(|l| serde_json::json!({
                    "poly": poly_json(&l.poly),
                    "power": l.power,
                    "scale": format_rational(&l.scale),
                })).collect::<Vec<_>>(),
                "rational": self.initial.rational.as_ref().map(|rf| serde_json::json!({
                    "num": poly_json(&rf.num),
                    "den": poly_json(&rf.den),
                })),
            }),
        };
        serde_json::json!({
            "family": match self.family { Family::Gamma => "gamma", Family::Landau => "landau" },
            "scale": match self.family { Family::Gamma => "1", Family::Landau => "1/pi" },
            "initial": initial,
            "terms": self.terms.iter().map(|t| serde_json::json!({
                "c": format_rational(&t.constant),
                "phi": poly_json(&t.phi),
            })).collect::<Vec<_>>(),
        })
    }
}

/// A difference series together with its valuation; `valuation` is `None`
/// when the series is exhausted (zero through its truncation order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSeries {
    pub series: TruncatedSeries,
    pub valuation: Option<usize>,
}

impl DifferenceSeries {
    fn new(series: TruncatedSeries) -> Self {
        let valuation = series.valuation();
        DifferenceSeries { series, valuation }
    }

    pub fn leading(&self) -> Option<(usize, Rational)> {
        self.valuation.map(|v| (v, self.series.coeff(v)))
    }
}

/// Difference of a correction-term series under n -> n+1:
/// series(C/phi(n)) - series(C/phi(n+1)).
fn term_difference(term: &CorrectionTerm, order: usize) -> Result<TruncatedSeries> {
    let t = TruncatedSeries::from_rational_function(&term.as_rational_function(), order)?;
    Ok(&t - &t.compose_shift())
}

/// Series of ln(p(n)) - ln(p(n+1)) for monic p of degree m, using
/// ln(p(n)/n^m) expansions on both sides; the n^m normalizers cancel in the
/// difference together with the m*ln((n+1)/n) correction absorbed by the
/// shifted expansion.
fn log_term_difference(term: &LogTerm, order: usize) -> Result<TruncatedSeries> {
    let l = TruncatedSeries::log_poly(&term.poly, term.power, order)?;
    Ok((&l - &l.compose_shift()).scale(&term.scale))
}

/// The analytic part of the gamma-family difference:
/// -1/(n+1) + ln(1+1/n), the telescoping of H_n - ln n.
fn gamma_base_difference(order: usize) -> Result<TruncatedSeries> {
    let recip = RationalFunction::new(
        Polynomial::constant(rat_int(-1)),
        Polynomial::n_plus(rat_int(1)),
    )?;
    let a = TruncatedSeries::from_rational_function(&recip, order)?;
    let b = TruncatedSeries::log_poly(&Polynomial::n_plus(rat_int(1)), 1, order)?;
    Ok(&a + &b)
}

/// Largest difference-series order the k-th Brouncker convergent supports:
/// swapping q for q_k is valid while the requested order stays below the
/// valuation of q_{k+1} - q_k, which is 2k+1.
fn convergent_order_limit(k: usize) -> usize {
    2 * k - 1
}

/// The pi-scaled analytic part of the Landau-family difference:
/// -q_K(n+1) + ln(n+7/4) - ln(n+3/4), with the convergent index K chosen so
/// the swap error lies beyond the requested order.
fn landau_base_difference(order: usize) -> Result<TruncatedSeries> {
    let k = if order <= 15 {
        8
    } else {
        (order + 2).div_ceil(2)
    };
    if k > 40 {
        return Err(Error::OrderExceedsConvergentAccuracy {
            order,
            limit: convergent_order_limit(40),
        });
    }
    if k > 8 {
        // Verify the observed decay q_{k+1} - q_k = O(n^-(2k+1)) before
        // trusting the swap at this order.
        let qk = crate::landau::q_convergent(k)?;
        let qk1 = crate::landau::q_convergent(k + 1)?;
        let gap = TruncatedSeries::from_rational_function(&qk1.sub(&qk), order + 1)?;
        if gap.valuation().map_or(false, |v| v < order + 1) {
            return Err(Error::OrderExceedsConvergentAccuracy {
                order,
                limit: convergent_order_limit(k),
            });
        }
    }
    let qk_shifted = crate::landau::q_convergent(k)?.compose_shift(&rat_int(1));
    let q_series = TruncatedSeries::from_rational_function(&qk_shifted, order)?;
    let hi = TruncatedSeries::log_poly(&Polynomial::n_plus(rat(7, 4)), 1, order)?;
    let lo = TruncatedSeries::log_poly(&Polynomial::n_plus(rat(3, 4)), 1, order)?;
    Ok(&(&hi - &lo) - &q_series)
}

/// Exact series of [v(n) - v(n+1)] minus all applied correction
/// differences, in x = 1/n through the requested order. Landau results are
/// pi-scaled.
pub fn build_difference_series(scheme: &CorrectionScheme, order: usize) -> Result<DifferenceSeries> {
    let mut acc = scheme_prefix_difference(scheme, order)?;
    for term in &scheme.terms {
        acc = &acc - &term_difference(term, order)?;
    }
    Ok(DifferenceSeries::new(acc))
}

/// Difference series of the scheme's analytic and initial parts only
/// (no correction terms); the solver reuses this across probes.
fn scheme_prefix_difference(scheme: &CorrectionScheme, order: usize) -> Result<TruncatedSeries> {
    match scheme.family {
        Family::Gamma => {
            let mut acc = gamma_base_difference(order)?;
            for log in &scheme.initial.logs {
                acc = &acc - &log_term_difference(log, order)?;
            }
            if let Some(rf) = &scheme.initial.rational {
                let s = TruncatedSeries::from_rational_function(rf, order)?;
                acc = &acc - &(&s - &s.compose_shift());
            }
            Ok(acc)
        }
        Family::Landau => {
            debug_assert!(scheme.initial.logs.is_empty() && scheme.initial.rational.is_none());
            landau_base_difference(order)
        }
    }
}

/// Converts the leading difference behavior c * x^s into the limit
/// constants of the sequence itself: returns (C, l) with
/// lim n^l (v(n) - limit) = C, where C = c/(s-1) and l = s-1.
pub fn limit_from_difference(d: &DifferenceSeries) -> Result<(Rational, usize)> {
    let (s, c) = d.leading().ok_or(Error::SeriesExhausted)?;
    if s < 2 {
        return Err(Error::ValuationTooLow { found: s });
    }
    Ok((c / rat_int(s as i64 - 1), s - 1))
}

/// Shape of the polynomial the solver searches for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiShape {
    /// Plain powers of n.
    General,
    /// Powers of (n + center); with `even_only` the odd powers are skipped
    /// (their solved values are zero by the symmetry of the target).
    CenterShifted { center: Rational, even_only: bool },
}

/// Finds the monic polynomial phi of the given degree such that appending
/// `constant/phi` to the scheme cancels the next block of difference
/// coefficients.
///
/// Coefficients are determined highest power first. The unknown at power i
/// governs the difference coefficient at x^(2*degree+1-i); that coefficient
/// is affine in the unknown, so two probes determine it and a third
/// validates affinity exactly.
pub fn solve_polynomial_correction(
    scheme: &CorrectionScheme,
    constant: &Rational,
    degree: usize,
    shape: &PhiShape,
) -> Result<Polynomial> {
    let order = 2 * degree + 4;
    let prefix = build_difference_series(scheme, order)?;
    let s_old = prefix.valuation.ok_or(Error::SeriesExhausted)?;
    debug_assert_eq!(
        s_old,
        degree + 1,
        "degree must come from limit extraction on the same scheme"
    );
    let (center, unknowns): (Rational, Vec<usize>) = match shape {
        PhiShape::General => (rat_int(0), (0..degree).rev().collect()),
        PhiShape::CenterShifted { center, even_only } => {
            if *even_only && degree % 2 != 0 {
                return Err(Error::OddDegreeEvenOnly { degree });
            }
            let step = if *even_only { 2 } else { 1 };
            (
                center.clone(),
                (0..degree).rev().filter(|i| (degree - i) % step == 0).collect(),
            )
        }
    };
    let mut solved: Vec<(usize, Rational)> = Vec::new();
    for &i in &unknowns {
        let target = 2 * degree + 1 - i;
        let probe = |a: Rational| -> Result<Rational> {
            let mut lower = solved.clone();
            lower.push((i, a));
            let phi = Polynomial::from_shifted_basis(degree, &center, &lower);
            let term = CorrectionTerm {
                constant: constant.clone(),
                phi,
            };
            let diff = &prefix.series - &term_difference(&term, order)?;
            Ok(diff.coeff(target))
        };
        let y0 = probe(rat_int(0))?;
        let y1 = probe(rat_int(1))?;
        let y2 = probe(rat_int(2))?;
        if &y2 - &y1 != &y1 - &y0 {
            return Err(Error::NonlinearProbe { unknown_power: i });
        }
        let slope = &y1 - &y0;
        if slope.is_zero() {
            return Err(Error::ZeroProbeSlope { unknown_power: i });
        }
        solved.push((i, -y0 / slope));
    }
    let phi = Polynomial::from_shifted_basis(degree, &center, &solved);
    // The appended term must cancel everything up to and including the last
    // target; for even-only shapes the skipped odd positions have to vanish
    // on their own, so this check also guards that assumption.
    let term = CorrectionTerm {
        constant: constant.clone(),
        phi: phi.clone(),
    };
    let achieved = DifferenceSeries::new(&prefix.series - &term_difference(&term, order)?);
    match achieved.valuation {
        Some(v) if v < 2 * degree + 2 => Err(Error::ZeroProbeSlope { unknown_power: 0 }),
        _ => Ok(phi),
    }
}

/// Continued-fraction term list for the nested approximant
/// a_1/(n + a_2 n/(n + a_3 n/(... /(n + a_k)))).
pub fn cf_approximant_terms(a: &[Rational]) -> Vec<(Polynomial, Polynomial)> {
    let k = a.len();
    assert!(k >= 1);
    if k == 1 {
        return vec![(Polynomial::constant(a[0].clone()), Polynomial::n())];
    }
    let mut terms = Vec::with_capacity(k - 1);
    for j in 0..k - 1 {
        let num = if j == 0 {
            Polynomial::constant(a[0].clone())
        } else {
            Polynomial::from_coeffs(vec![rat_int(0), a[j].clone()])
        };
        let den = if j == k - 2 {
            Polynomial::n_plus(a[k - 1].clone())
        } else {
            Polynomial::n()
        };
        terms.push((num, den));
    }
    terms
}

/// Collapsed rational function of the nested approximant.
pub fn cf_approximant(a: &[Rational]) -> Result<RationalFunction> {
    crate::poly::cf_collapse(&cf_approximant_terms(a))
}

/// Sequentially determines the continued-fraction constants a_1..a_kmax and
/// the limit constants of each partial approximant.
///
/// a_k is fixed by requiring the difference series of
/// H_n - ln n - (k-th approximant) to gain one more vanishing coefficient;
/// the target coefficient is affine in a_k (validated by a third probe).
pub fn solve_cf_correction(k_max: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let order = k_max + 4;
    let base = gamma_base_difference(order)?;
    let mut a: Vec<Rational> = Vec::with_capacity(k_max);
    let mut limits: Vec<Rational> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let target = k + 1;
        let probe = |cand: Rational| -> Result<Rational> {
            let mut trial = a.clone();
            trial.push(cand);
            let rf = cf_approximant(&trial)?;
            let s = TruncatedSeries::from_rational_function(&rf, order)?;
            let diff = &base - &(&s - &s.compose_shift());
            Ok(diff.coeff(target))
        };
        let y0 = probe(rat_int(0))?;
        let y1 = probe(rat_int(1))?;
        let y2 = probe(rat_int(2))?;
        if &y2 - &y1 != &y1 - &y0 {
            return Err(Error::NonlinearProbe { unknown_power: k });
        }
        let slope = &y1 - &y0;
        if slope.is_zero() {
            return Err(Error::ZeroProbeSlope { unknown_power: k });
        }
        a.push(-y0 / slope);
        // Limit constant of the k-th approximant via the leading difference
        // coefficient.
        let rf = cf_approximant(&a)?;
        let s = TruncatedSeries::from_rational_function(&rf, order)?;
        let diff = DifferenceSeries::new(&base - &(&s - &s.compose_shift()));
        let (c, _l) = limit_from_difference(&diff)?;
        limits.push(c);
    }
    Ok((a, limits))
}

/// Numerical rate check: returns n^s (x_n - x_{n+1}) at the largest
/// consecutive pair, as a certified enclosure.
pub fn empirical_rate(values: &[(u64, Enclosure)], s: u32) -> Result<Enclosure> {
    if values.len() < 2 {
        return Err(Error::InsufficientPrecision);
    }
    let (n0, x0) = &values[values.len() - 2];
    let (n1, x1) = &values[values.len() - 1];
    if *n1 != n0 + 1 {
        return Err(Error::InsufficientPrecision);
    }
    let d = x0.sub(x1);
    let width = d.width().to_rational();
    if !width.is_zero() {
        let mag = d
            .lo_rational()
            .abs()
            .max(d.hi_rational().abs());
        // Fewer than ~10 significant digits left after cancellation.
        if &width * rat_int(1i64 << 34) > mag {
            return Err(Error::InsufficientPrecision);
        }
    }
    let factor = crate::rational::pow_rational(&rat_int(*n0 as i64), s as i64);
    Ok(d.scale_rational(&factor))
}
