//! Error type shared by every module of the crate.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by a series that is zero through its truncation order.
    ZeroDivisorSeries,
    /// Series division where the divisor valuation exceeds the dividend's,
    /// which would produce negative powers.
    DivisorValuationTooHigh { dividend: usize, divisor: usize },
    /// Rational function with numerator degree above denominator degree has
    /// no power-series expansion at infinity.
    NotProperAtInfinity,
    /// A polynomial that must be monic is not.
    NotMonic,
    /// Continued-fraction collapse produced an identically zero denominator.
    DegenerateContinuedFraction,
    /// Rational-function evaluation hit a zero denominator.
    ZeroDenominator,
    /// Limit extraction needs the difference to vanish at least to second
    /// order; a valuation below 2 carries no usable rate.
    ValuationTooLow { found: usize },
    /// The difference series is zero through its truncation order.
    SeriesExhausted,
    /// A probed series coefficient failed the three-point affinity check.
    NonlinearProbe { unknown_power: usize },
    /// The probed coefficient does not depend on the unknown at all.
    ZeroProbeSlope { unknown_power: usize },
    /// Requested order exceeds the fidelity window of the chosen
    /// continued-fraction convergent.
    OrderExceedsConvergentAccuracy { order: usize, limit: usize },
    /// Subtraction cancelled every significant digit.
    InsufficientPrecision,
    /// Requested decimal digits are beyond what the enclosure route can
    /// certify; the payload is the achievable count.
    DigitsUnachievable { requested: usize, achievable: usize },
    /// ln of a non-positive value.
    NonPositiveLog,
    /// Unknown catalog scheme name.
    UnknownScheme(String),
    /// Zero passed where a positive integer is required.
    ZeroArgument,
    /// Division by an enclosure that straddles zero.
    IntervalDivisionByZero,
    /// Even-only center-shifted solving is defined for even degrees.
    OddDegreeEvenOnly { degree: usize },
    /// The solved correction did not cancel the expected coefficient block.
    CorrectionIneffective { expected: usize, found: usize },
    /// Malformed rational literal.
    BadRationalLiteral(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroDivisorSeries => write!(f, "zero divisor series"),
            Error::DivisorValuationTooHigh { dividend, divisor } => write!(
                f,
                "divisor valuation {divisor} exceeds dividend valuation {dividend}"
            ),
            Error::NotProperAtInfinity => write!(f, "not proper at infinity"),
            Error::NotMonic => write!(f, "polynomial is not monic"),
            Error::DegenerateContinuedFraction => write!(f, "degenerate continued fraction"),
            Error::ZeroDenominator => write!(f, "zero denominator"),
            Error::ValuationTooLow { found } => write!(
                f,
                "rate extraction requires the difference to vanish to second order, found valuation {found}"
            ),
            Error::SeriesExhausted => write!(f, "difference series is zero through its order"),
            Error::NonlinearProbe { unknown_power } => {
                write!(f, "nonlinearity detected while solving coefficient of power {unknown_power}")
            }
            Error::ZeroProbeSlope { unknown_power } => write!(
                f,
                "coefficient of power {unknown_power} not determinable at this order"
            ),
            Error::OrderExceedsConvergentAccuracy { order, limit } => write!(
                f,
                "order {order} exceeds continued-fraction accuracy window {limit}; increase the convergent index"
            ),
            Error::InsufficientPrecision => write!(f, "insufficient precision"),
            Error::DigitsUnachievable { requested, achievable } => write!(
                f,
                "cannot certify {requested} digits; achievable count is {achievable}"
            ),
            Error::NonPositiveLog => write!(f, "logarithm of a non-positive value"),
            Error::UnknownScheme(name) => write!(f, "unknown scheme '{name}'"),
            Error::ZeroArgument => write!(f, "argument must be a positive integer"),
            Error::IntervalDivisionByZero => write!(f, "division by an interval containing zero"),
            Error::OddDegreeEvenOnly { degree } => {
                write!(f, "even-only solving requires an even degree, got {degree}")
            }
            Error::CorrectionIneffective { expected, found } => write!(
                f,
                "correction term left valuation {found}, expected at least {expected}"
            ),
            Error::BadRationalLiteral(s) => write!(f, "malformed rational literal '{s}'"),
        }
    }
}

impl std::error::Error for Error {}
