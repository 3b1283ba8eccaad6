//! Linear differential operators with polynomial coefficients.
//!
//! An [`Operator<B>`] of order `m` stores `a_0..=a_m` with `a_i` multiplying
//! the `i`-th power of the basis derivation: `Δ = tD` for [`Theta`], `D` for
//! [`Deriv`]. The same operator read as an equation is
//! `a_m ∂^m F = P_1 ∂^{m-1} F + … + P_m F` with `P_j = -a_{m-j}`; the
//! accessors [`Operator::leading`] and [`Operator::rhs`] expose that view.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::marker::PhantomData;

use num_traits::Zero;

use crate::poly::{Degree, Poly, Rational};
use crate::series::TruncatedSeries;
use crate::stirling::StirlingTable;
use crate::{Error, Result};

/// Runtime tag for the two bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    D,
    Theta,
}

impl BasisKind {
    /// Symbol used by the text syntax.
    pub fn symbol(self) -> char {
        match self {
            BasisKind::D => 'D',
            BasisKind::Theta => 'T',
        }
    }
}

mod sealed {
    pub trait Sealed {}
    impl Sealed for super::Theta {}
    impl Sealed for super::Deriv {}
}

/// Compile-time basis marker.
pub trait Basis: sealed::Sealed + Copy + Default + fmt::Debug + 'static {
    const KIND: BasisKind;

    /// The basis derivation acting on a polynomial.
    fn act(p: &Poly) -> Poly;

    /// The basis derivation acting on a truncated series.
    fn act_series(f: &TruncatedSeries) -> TruncatedSeries;
}

/// The Euler derivation `Δ = t d/dt`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Theta;

/// The derivation `D = d/dt`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Deriv;

impl Basis for Theta {
    const KIND: BasisKind = BasisKind::Theta;
    fn act(p: &Poly) -> Poly {
        p.delta()
    }
    fn act_series(f: &TruncatedSeries) -> TruncatedSeries {
        f.delta()
    }
}

impl Basis for Deriv {
    const KIND: BasisKind = BasisKind::D;
    fn act(p: &Poly) -> Poly {
        p.derivative()
    }
    fn act_series(f: &TruncatedSeries) -> TruncatedSeries {
        f.derivative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operator<B: Basis> {
    coeffs: Vec<Poly>,
    basis: PhantomData<B>,
}

pub type ThetaOperator = Operator<Theta>;
pub type DOperator = Operator<Deriv>;

impl<B: Basis> Operator<B> {
    /// Builds `Σ coeffs[i] ∂^i`. Trailing zero coefficients are dropped; the
    /// remaining order must be at least one.
    pub fn new(mut coeffs: Vec<Poly>) -> Result<Self> {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 2 {
            return Err(Error::ZeroOrder);
        }
        Ok(Operator {
            coeffs,
            basis: PhantomData,
        })
    }

    /// Builds the operator of `leading ∂^m F = rhs[0] ∂^{m-1} F + … + rhs[m-1] F`.
    pub fn from_equation(leading: Poly, rhs: Vec<Poly>) -> Result<Self> {
        if leading.is_zero() {
            return Err(Error::ZeroOrder);
        }
        let m = rhs.len();
        let mut coeffs = vec![Poly::zero(); m + 1];
        coeffs[m] = leading;
        for (j, p) in rhs.into_iter().enumerate() {
            coeffs[m - 1 - j] = -p;
        }
        Operator::new(coeffs)
    }

    pub fn basis(&self) -> BasisKind {
        B::KIND
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_0..=a_m`.
    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    /// `N` (theta basis) or `T` (D basis).
    pub fn leading(&self) -> &Poly {
        &self.coeffs[self.order()]
    }

    /// `P_j` (theta basis) or `Q_j` (D basis) for `1 <= j <= m`.
    pub fn rhs(&self, j: usize) -> Poly {
        assert!((1..=self.order()).contains(&j), "rhs index {j} out of range");
        -&self.coeffs[self.order() - j]
    }

    /// `S = deg N` (or `S' = deg T`).
    pub fn leading_degree(&self) -> Degree {
        self.leading().deg()
    }

    /// `r_1..=r_m`, the degrees of the right-hand-side coefficients.
    pub fn rhs_degrees(&self) -> Vec<Degree> {
        (1..=self.order()).map(|j| self.coeffs[self.order() - j].deg()).collect()
    }

    /// Left multiplication by a polynomial: every coefficient times `q`.
    pub fn scale_left(&self, q: &Poly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(Operator {
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
            basis: PhantomData,
        })
    }

    /// Applies the operator to a truncated series.
    ///
    /// Polynomial coefficients only raise `t`-orders, so a `Δ`-operator keeps
    /// the input's reliable order; each `D` lowers it by one.
    pub fn apply_series(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        let out_order = match B::KIND {
            BasisKind::Theta => f.trunc_order(),
            BasisKind::D => f.trunc_order() - self.order() as i64,
        };
        if out_order < 0 {
            return Err(Error::TruncationTooShort(out_order));
        }
        let mut acc = TruncatedSeries::zero(out_order as usize);
        let mut power = f.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = B::act_series(&power);
            }
            if !a.is_zero() {
                acc = &acc + &power.mul_poly(a).truncate(out_order);
            }
        }
        Ok(acc)
    }

    /// Applies the operator to a polynomial.
    pub fn apply_poly(&self, p: &Poly) -> Poly {
        let mut acc = Poly::zero();
        let mut power = p.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = B::act(&power);
            }
            acc = &acc + &(a * &power);
        }
        acc
    }
}

impl ThetaOperator {
    /// Rewrites the operator in the D basis via `Δ^n = Σ_k S2(n,k) t^k D^k`.
    pub fn to_d(&self) -> DOperator {
        let m = self.order();
        let table = StirlingTable::new(m);
        let mut out = vec![Poly::zero(); m + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate().take(n + 1) {
                let s = table.s2(n, k);
                if !s.is_zero() {
                    *slot = &*slot + &a.scale(&Rational::from_integer(s)).shift(k);
                }
            }
        }
        Operator {
            coeffs: out,
            basis: PhantomData,
        }
    }
}

impl DOperator {
    /// Smallest `e` such that `t^e · self` has `t^i` dividing the coefficient of `D^i`.
    pub fn clearing_power(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, q)| q.valuation().map(|v| i.saturating_sub(v)))
            .max()
            .unwrap_or(0)
    }

    /// Rewrites `t^e · self` in the theta basis via `t^i D^i = Σ_k s1(i,k) Δ^k`,
    /// with `e` the minimal clearing power. Returns the operator and `e`.
    pub fn to_theta_with_power(&self) -> (ThetaOperator, usize) {
        let m = self.order();
        let e = self.clearing_power();
        let table = StirlingTable::new(m);
        let mut out = vec![Poly::zero(); m + 1];
        for (i, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            // t^e q D^i = (t^{e-i} q) (t^i D^i)
            let reduced = q
                .shift(e)
                .unshift(i)
                .expect("clearing power makes t^i divide every coefficient");
            for (k, slot) in out.iter_mut().enumerate().take(i + 1) {
                let s = table.s1(i, k);
                if !s.is_zero() {
                    *slot = &*slot + &reduced.scale(&Rational::from_integer(s));
                }
            }
        }
        let op = Operator {
            coeffs: out,
            basis: PhantomData,
        };
        (op, e)
    }

    pub fn to_theta(&self) -> ThetaOperator {
        self.to_theta_with_power().0
    }
}

/// Matrix `M` with `Δ^n = Σ_k M[n][k] D^k`, i.e. `M[n][k] = S2(n,k) t^k`, for
/// `0 <= n, k < m`. Lower triangular with diagonal `1, t, …, t^{m-1}`.
pub fn d_to_theta(op: &DOperator) -> ThetaOperator {
    op.to_theta()
}

pub fn theta_to_d(op: &ThetaOperator) -> DOperator {
    op.to_d()
}

pub fn apply_theta(op: &ThetaOperator, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    op.apply_series(f)
}

pub fn apply_d(op: &DOperator, f: &TruncatedSeries) -> Result<TruncatedSeries> {
    op.apply_series(f)
}

pub fn connection_matrix(m: usize) -> Vec<Vec<Poly>> {
    let table = StirlingTable::new(m.saturating_sub(1));
    (0..m)
        .map(|n| {
            (0..m)
                .map(|k| Poly::monomial(Rational::from_integer(table.s2(n, k)), k))
                .collect()
        })
        .collect()
}
