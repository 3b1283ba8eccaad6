//! Exact rationals and dense univariate polynomials in `t` over them.
//!
//! [`Poly`] is an immutable value: every operation returns a fresh,
//! normalized polynomial whose last stored coefficient is nonzero. The zero
//! polynomial stores no coefficients and has degree [`NEG_INF`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Unbounded rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Degree of a polynomial, with `deg 0 = -∞` represented explicitly.
///
/// `NegInf` orders below every finite degree and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

pub const NEG_INF: Degree = Degree::NegInf;

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    pub fn is_neg_inf(self) -> bool {
        self == Degree::NegInf
    }

    /// Degree as a signed valuation-style integer, `None` for `-∞`.
    pub fn as_i64(self) -> Option<i64> {
        self.finite().map(|d| d as i64)
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl Add<usize> for Degree {
    type Output = Degree;
    fn add(self, rhs: usize) -> Degree {
        self + Degree::Finite(rhs)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense polynomial in `t`; index `i` of the coefficient vector multiplies `t^i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(int(c))
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn deg(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInf,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `t^k`; `None` unless `t^k` divides `self`.
    pub fn unshift(&self, k: usize) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if self.valuation()? < k {
            return None;
        }
        Some(Poly {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// The Euler derivative `Δ = t d/dt`, mapping `t^k` to `k t^k`.
    pub fn delta(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Substitution `self(q(t))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * q) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let lead = divisor.lead().ok_or(Error::DivisionByZero)?;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let q = top / lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dlen - 1);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division; fails if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::DivisionNotExact)
        }
    }

    /// Whether the leading coefficient is negative (used for sign-aware printing).
    pub fn lead_is_negative(&self) -> bool {
        self.lead().is_some_and(Signed::is_negative)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Integer numerators over a common denominator: `p = Σ nums[i] tⁱ / den`.
fn integer_parts(p: &Poly) -> (Vec<BigInt>, BigInt) {
    let den = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (nums, den)
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    // Multiplies the integer numerators and normalizes each coefficient
    // once, instead of reducing a fraction after every partial product.
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (a, da) = integer_parts(self);
        let (b, db) = integer_parts(rhs);
        let mut acc = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        Poly::from_coeffs(acc.into_iter().map(|n| Rational::new(n, den.clone())).collect())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical text: decreasing degree, `c*t^k` terms, `" + "` / `" - "` separators.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

// Free-function forms of the ring operations.

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    a + b
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    a * b
}

pub fn poly_deg(a: &Poly) -> Degree {
    a.deg()
}

/// `Δa = t·a'`.
pub fn delta_apply(a: &Poly) -> Poly {
    a.delta()
}

/// `Da = a'`.
pub fn d_apply(a: &Poly) -> Poly {
    a.derivative()
}

pub fn poly_exact_div(a: &Poly, b: &Poly) -> Result<Poly> {
    a.exact_div(b)
}
