//! Example families: factorial-type series `Σ tⁿ / ∏_{k<n} P(k)` and entire
//! hypergeometric series `Σ (a)_n tⁿ / (n! (b)_n)`, with their annihilating
//! theta-basis operators.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::diffop::ThetaOperator;
use crate::poly::{int, Poly, Rational};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Denominator polynomial `P` of `Σ tⁿ / ∏_{k<n} P(k)`, with `deg P >= 2`,
/// `P(-1) = 0` and no root among the non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorialBase {
    p: Poly,
}

impl FactorialBase {
    pub fn new(p: Poly) -> Result<Self> {
        let m = p.deg().finite().unwrap_or(0);
        if m < 2 {
            return Err(Error::InvalidFactorialBase(format!(
                "deg P must be at least 2, got {}",
                p.deg()
            )));
        }
        if !p.eval(&int(-1)).is_zero() {
            return Err(Error::InvalidFactorialBase("P(-1) must vanish".into()));
        }
        if let Some(k) = nonnegative_integer_root(&p) {
            return Err(Error::InvalidFactorialBase(format!("P({k}) = 0")));
        }
        Ok(FactorialBase { p })
    }

    pub fn poly(&self) -> &Poly {
        &self.p
    }

    pub fn degree(&self) -> usize {
        self.p.deg().finite().expect("validated")
    }
}

/// Smallest `k >= 0` with `P(k) = 0`. Integer roots of the integer-scaled
/// polynomial divide its lowest nonzero coefficient and are bounded by the
/// Cauchy bound.
fn nonnegative_integer_root(p: &Poly) -> Option<u64> {
    let v = p.valuation()?;
    if v > 0 {
        return Some(0);
    }
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.last().expect("nonzero").abs();
    let max_ratio = ints[..ints.len() - 1]
        .iter()
        .map(|c| c.abs().div_ceil(&lead))
        .max()
        .unwrap_or_default();
    let bound = (max_ratio + 1u32).min(ints[0].abs());
    let bound = bound.to_u64().unwrap_or(u64::MAX);
    (1..=bound)
        .filter(|k| (&ints[0] % BigInt::from(*k)).is_zero())
        .find(|k| p.eval(&Rational::from_integer(BigInt::from(*k))).is_zero())
}

/// `ΔP₁(Δ) − t` with `P(x) = (x+1) P₁(x+1)`.
pub fn kummer_type_operator(fb: &FactorialBase) -> Result<ThetaOperator> {
    let shifted = fb.p.compose(&Poly::from_i64s(&[-1, 1]));
    let p1 = shifted.exact_div(&Poly::t())?;
    let mut coeffs = Vec::with_capacity(p1.coeffs().len() + 1);
    coeffs.push(-Poly::t());
    coeffs.extend(p1.coeffs().iter().map(|c| Poly::constant(c.clone())));
    ThetaOperator::new(coeffs)
}

/// `Σ_{n<n_terms} tⁿ / ∏_{k<n} P(k)`.
pub fn factorial_series(fb: &FactorialBase, n_terms: usize) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(n_terms);
    let mut c = Rational::one();
    for n in 0..n_terms {
        if n > 0 {
            let pk = fb.p.eval(&int(n as i64 - 1));
            if pk.is_zero() {
                return Err(Error::ZeroDenominator(n));
            }
            c /= pk;
        }
        coeffs.push(c.clone());
    }
    Ok(TruncatedSeries::new(coeffs))
}

/// Parameters of `Σ (a_1)_n…(a_p)_n / (n! (b_1)_n…(b_{q-1})_n) tⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfqParams {
    a: Vec<Rational>,
    b: Vec<Rational>,
}

impl PfqParams {
    /// Requires `p < q` (with `q = b.len() + 1`) and no `b_j` in `{0, -1, -2, …}`.
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if a.len() > b.len() {
            return Err(Error::InvalidParameters(format!(
                "need p < q, got p = {} and q = {}",
                a.len(),
                b.len() + 1
            )));
        }
        if let Some(bad) = b.iter().find(|x| x.is_integer() && !x.is_positive()) {
            return Err(Error::InvalidParameters(format!(
                "lower parameter {bad} is zero or a negative integer"
            )));
        }
        Ok(PfqParams { a, b })
    }

    pub fn upper(&self) -> &[Rational] {
        &self.a
    }

    pub fn lower(&self) -> &[Rational] {
        &self.b
    }

    /// `q`, the operator order.
    pub fn q(&self) -> usize {
        self.b.len() + 1
    }

    /// Whether `a_i - b_j` avoids the integers for all pairs (including `b_q = 1`).
    pub fn parameters_nonresonant(&self) -> bool {
        let one = Rational::one();
        self.a.iter().all(|a| {
            self.b
                .iter()
                .chain(core::iter::once(&one))
                .all(|b| !(a - b).is_integer())
        })
    }
}

fn linear_product(roots: impl Iterator<Item = Rational>) -> Poly {
    roots.fold(Poly::one(), |acc, r| &acc * &Poly::from_coeffs(alloc::vec![r, Rational::one()]))
}

/// `Δ ∏_j (Δ + b_j − 1) − t ∏_i (Δ + a_i)`.
pub fn pfq_operator(params: &PfqParams) -> ThetaOperator {
    let lhs = &linear_product(params.b.iter().map(|b| b - Rational::one())) * &Poly::t();
    let rhs = linear_product(params.a.iter().cloned());
    let coeffs = (0..=params.q())
        .map(|i| {
            let c = Poly::constant(lhs.coeff(i));
            &c - &Poly::monomial(rhs.coeff(i), 1)
        })
        .collect();
    ThetaOperator::new(coeffs).expect("leading coefficient is 1")
}

/// First `n_terms` coefficients `∏(a_i)_n / (n! ∏(b_j)_n)`.
pub fn pfq_series(params: &PfqParams, n_terms: usize) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(n_terms);
    let mut c = Rational::one();
    for n in 0..n_terms {
        if n > 0 {
            let k = int(n as i64 - 1);
            let mut den = int(n as i64);
            for b in &params.b {
                den *= b + &k;
            }
            if den.is_zero() {
                return Err(Error::ZeroDenominator(n));
            }
            for a in &params.a {
                c *= a + &k;
            }
            c /= den;
        }
        coeffs.push(c.clone());
    }
    Ok(TruncatedSeries::new(coeffs))
}

/// First order through which `op f` is nonzero, or `None` if `op` kills `f`
/// through the series' reliable order.
pub fn first_failing_order(op: &ThetaOperator, f: &TruncatedSeries) -> Option<usize> {
    op.apply_series(f)
        .expect("theta operators keep the reliable order")
        .first_nonzero()
}

pub fn annihilation_check(op: &ThetaOperator, f: &TruncatedSeries) -> bool {
    first_failing_order(op, f).is_none()
}
