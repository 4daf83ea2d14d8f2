//! Exact-arithmetic engine for multiple-correction convergence acceleration.
//!
//! The crate derives correction polynomials and limit constants for
//! approximations of the Euler-Mascheroni constant and the Landau constants,
//! entirely in arbitrary-precision rational arithmetic, and certifies the
//! resulting two-sided inequalities with directed-rounding interval
//! evaluation.
//!
//! Layering, bottom up:
//!
//! * [`rational`], [`poly`], [`series`] - exact scalars, dense polynomials,
//!   rational functions, continued-fraction collapse and truncated power
//!   series in x = 1/n.
//! * [`interval`] - dyadic arbitrary-precision floats, rigorous enclosures,
//!   certified ln / pi / c0.
//! * [`engine`] - difference-series construction, limit extraction and the
//!   undetermined-coefficient solver.
//! * [`gamma`], [`landau`] - the two constant families: scheme catalogs,
//!   derivation pipelines, enclosure evaluation and inequality verification.
//! * [`report`], [`reference`] - report records and the embedded table of
//!   expected exact constants.

pub mod engine;
pub mod error;
pub mod gamma;
pub mod interval;
pub mod landau;
pub mod poly;
pub mod rational;
pub mod reference;
pub mod report;
pub mod series;

pub use error::{Error, Result};
pub use rational::Rational;
