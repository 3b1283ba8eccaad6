//! Exact-arithmetic toolkit for linear differential operators with polynomial
//! coefficients, written in either the `D = d/dt` basis or the Euler basis
//! `Δ = tD` (spelled `T` in text).
//!
//! - [`poly`]: rationals and dense univariate polynomials over them.
//! - [`diffop`]: operators in both bases, Stirling conversions, series application.
//! - [`siegel`]: iterated linear forms, their determinants and degree predictions.
//! - [`newton`]: Newton polygons at `t = ∞` and the single-slope irreducibility test.
//! - [`hyper`]: factorial-type and hypergeometric families with their operators.
//! - [`opparse`]: the text syntax for operators and linear forms.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diffop;
mod error;
pub mod hyper;
pub mod matrix;
pub mod newton;
pub mod opparse;
pub mod poly;
pub mod series;
pub mod siegel;
pub mod stirling;

pub use diffop::{Basis, BasisKind, DOperator, Deriv, Operator, Theta, ThetaOperator};
pub use error::Error;
pub use newton::{IrreducibilityVerdict, NewtonPolygon, PolygonPoint, Slope};
pub use poly::{Degree, Poly, Rational, NEG_INF};
pub use series::TruncatedSeries;
pub use siegel::{DegreeProfile, FormMatrix, LinearForm};
pub use stirling::StirlingTable;

pub type Result<T, E = Error> = core::result::Result<T, E>;
