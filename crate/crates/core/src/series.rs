//! Formal power series known through a fixed truncation order.

use alloc::vec::Vec;
use core::ops::{Add, Sub};

use num_traits::Zero;

use crate::poly::{int, Poly, Rational};

/// Coefficients `c_0..=c_N` of a power series in `t`, reliable through
/// `N = trunc_order`. An empty series carries no information (`N = -1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        TruncatedSeries { coeffs }
    }

    /// The zero series known through `order`.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: alloc::vec![Rational::zero(); order + 1],
        }
    }

    /// A polynomial viewed as a series known through `order`.
    pub fn from_poly(p: &Poly, order: usize) -> Self {
        TruncatedSeries {
            coeffs: (0..=order).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn trunc_order(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn truncate(&self, order: i64) -> TruncatedSeries {
        let len = (order + 1).clamp(0, self.coeffs.len() as i64) as usize;
        TruncatedSeries {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `Δ f`: coefficient `n` is multiplied by `n`; order is unchanged.
    pub fn delta(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        }
    }

    /// `d f / dt`; the reliable order drops by one.
    pub fn derivative(&self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        }
    }

    /// Product with a polynomial; multiplication by `t` only shifts upward so
    /// the reliable order is preserved.
    pub fn mul_poly(&self, p: &Poly) -> TruncatedSeries {
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len()];
        for (u, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (v, c) in self.coeffs.iter().enumerate() {
                if u + v >= out.len() {
                    break;
                }
                out[u + v] += a * c;
            }
        }
        TruncatedSeries { coeffs: out }
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

fn zip_common(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    f: impl Fn(&Rational, &Rational) -> Rational,
) -> TruncatedSeries {
    TruncatedSeries {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(x, y)).collect(),
    }
}

/// Sum through the common reliable order.
impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_common(self, rhs, |x, y| x + y)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        zip_common(self, rhs, |x, y| x - y)
    }
}
