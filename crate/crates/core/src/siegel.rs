//! Iterated linear forms and their determinants.
//!
//! For an operator `N ∂^m F = P_1 ∂^{m-1} F + … + P_m F` and a linear form
//! `L = A_1 ∂^{m-1} F + … + A_m F`, applying `N∂` and reducing `∂^m F` through
//! the equation gives
//!
//! ```text
//! A'_j = P_j A_1 + N ∂(A_j) + N A_{j+1}   (j < m)
//! A'_m = P_m A_1 + N ∂(A_m)
//! ```
//!
//! where `∂` acts on the coefficient polynomials (`Δ` or `D`). The
//! determinant of `L_k, …, L_{k+m-1}` is nonzero for every nonzero `L_0`
//! whenever the operator satisfies the degree conditions in [`check_t1`] or
//! [`check_t2`]; in the theta case its degree is given by [`predict_degree`].

use alloc::vec::Vec;
use core::fmt;

use crate::diffop::{Basis, BasisKind, DOperator, Operator, ThetaOperator};
use crate::matrix::{det, DetMethod};
use crate::poly::{Degree, Poly, Rational};
use crate::{Error, Result};

/// Coefficients `(A_1, …, A_m)` of `A_1 ∂^{m-1} F + … + A_m ∂^0 F`, in
/// descending derivative order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    comps: Vec<Poly>,
}

impl LinearForm {
    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::EmptyForm);
        }
        Ok(LinearForm { comps })
    }

    /// `(1, 0, …, 0)`, the form `∂^{m-1} F`.
    pub fn unit(m: usize) -> Self {
        assert!(m > 0);
        let mut comps = alloc::vec![Poly::zero(); m];
        comps[0] = Poly::one();
        LinearForm { comps }
    }

    pub fn m(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn degrees(&self) -> Vec<Degree> {
        self.comps.iter().map(Poly::deg).collect()
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Rational, other: &LinearForm, b: &Rational) -> LinearForm {
        assert_eq!(self.m(), other.m());
        LinearForm {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(x, y)| &x.scale(a) + &y.scale(b))
                .collect(),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Rows `L_k, …, L_{k+m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    pub k: usize,
    pub rows: Vec<LinearForm>,
}

impl FormMatrix {
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn entries(&self) -> Vec<Vec<Poly>> {
        self.rows.iter().map(|r| r.comps.clone()).collect()
    }

    pub fn degree_grid(&self) -> Vec<Vec<Degree>> {
        self.rows.iter().map(LinearForm::degrees).collect()
    }

    pub fn det(&self, method: DetMethod) -> Poly {
        det(&self.entries(), method)
    }
}

pub fn det_poly(matrix: &FormMatrix, method: DetMethod) -> Poly {
    matrix.det(method)
}

/// One step `L ↦ N∂L`, reduced through the operator's equation.
pub fn iterate<B: Basis>(op: &Operator<B>, form: &LinearForm) -> Result<LinearForm> {
    let m = op.order();
    if form.m() != m {
        return Err(Error::OrderMismatch { order: m, form: form.m() });
    }
    let lead = op.leading();
    let first = &form.comps[0];
    let comps = (0..m)
        .map(|j| {
            let mut a = &op.rhs(j + 1) * first;
            a = &a + &(lead * &B::act(&form.comps[j]));
            if j + 1 < m {
                a = &a + &(lead * &form.comps[j + 1]);
            }
            a
        })
        .collect();
    Ok(LinearForm { comps })
}

pub fn iterate_theta(op: &ThetaOperator, form: &LinearForm) -> Result<LinearForm> {
    iterate(op, form)
}

pub fn iterate_d(op: &DOperator, form: &LinearForm) -> Result<LinearForm> {
    iterate(op, form)
}

/// `L_0, …, L_{count-1}`.
pub fn forms<B: Basis>(op: &Operator<B>, l0: &LinearForm, count: usize) -> Result<Vec<LinearForm>> {
    if l0.m() != op.order() {
        return Err(Error::OrderMismatch { order: op.order(), form: l0.m() });
    }
    let mut out = Vec::with_capacity(count);
    let mut cur = l0.clone();
    for i in 0..count {
        if i > 0 {
            cur = iterate(op, &cur)?;
        }
        out.push(cur.clone());
    }
    Ok(out)
}

pub fn build_matrix<B: Basis>(op: &Operator<B>, l0: &LinearForm, k: usize) -> Result<FormMatrix> {
    if l0.is_zero() {
        return Err(Error::ZeroInitialForm);
    }
    let m = op.order();
    let mut all = forms(op, l0, k + m)?;
    let rows = all.split_off(k);
    Ok(FormMatrix { k, rows })
}

/// Component degrees of a form together with the first index `l` (1-based)
/// attaining their maximum: `d_j < d_l` for `j < l`, `d_j <= d_l` for `j > l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<Degree>,
    pub lead: usize,
}

impl DegreeProfile {
    /// `d_l`.
    pub fn lead_degree(&self) -> usize {
        self.degrees[self.lead - 1]
            .finite()
            .expect("profile of a nonzero form has a finite maximum")
    }
}

pub fn degree_profile(form: &LinearForm) -> Result<DegreeProfile> {
    if form.is_zero() {
        return Err(Error::ZeroInitialForm);
    }
    let degrees = form.degrees();
    let max = degrees.iter().copied().max().unwrap_or(Degree::NegInf);
    let lead = degrees.iter().position(|&d| d == max).unwrap_or(0) + 1;
    Ok(DegreeProfile { degrees, lead })
}

/// `S >= 0`, `r_m = S + 1`, `r_j < r_m` for `j < m`.
pub fn check_t1(op: &ThetaOperator) -> bool {
    raised_rhs_condition(op.leading_degree(), &op.rhs_degrees())
}

fn raised_rhs_condition(s: Degree, r: &[Degree]) -> bool {
    let Some(s) = s.finite() else { return false };
    let (last, rest) = r.split_last().expect("order >= 1");
    *last == Degree::Finite(s + 1) && rest.iter().all(|d| d < last)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct T2Conditions {
    /// `S' >= 0`, `r'_m = S' + 1`, `r'_j < r'_m` for `j < m`.
    pub cond280: bool,
    /// `r'_m >= 0`, `S' = r'_m + 1`, `r'_j <= r'_m` for all `j`.
    pub cond290: bool,
}

impl T2Conditions {
    pub fn any(self) -> bool {
        self.cond280 || self.cond290
    }
}

pub fn check_t2(op: &DOperator) -> T2Conditions {
    let s = op.leading_degree();
    let r = op.rhs_degrees();
    let cond290 = match (r.last().and_then(|d| d.finite()), s.finite()) {
        (Some(rm), Some(s)) => s == rm + 1 && r.iter().all(|d| *d <= Degree::Finite(rm)),
        _ => false,
    };
    T2Conditions {
        cond280: raised_rhs_condition(s, &r),
        cond290,
    }
}

/// `m·d_l + (m²-m)·S/2 + m - l`, the degree of the determinant whose top row is `form`.
pub fn predict_degree(op: &ThetaOperator, form: &LinearForm) -> Result<usize> {
    if !check_t1(op) {
        return Err(Error::ConditionViolated("S >= 0, r_m = S + 1, r_j < r_m"));
    }
    if form.m() != op.order() {
        return Err(Error::OrderMismatch { order: op.order(), form: form.m() });
    }
    let profile = degree_profile(form)?;
    let m = op.order();
    let s = op.leading_degree().finite().expect("checked by check_t1");
    Ok(m * profile.lead_degree() + (m * m - m) * s / 2 + m - profile.lead)
}

/// Determinant data for the window starting at row `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetWindow {
    pub k: usize,
    pub degree_grid: Vec<Vec<Degree>>,
    pub det: Poly,
    pub det_degree: Degree,
    /// Only for theta-basis operators satisfying [`check_t1`].
    pub predicted_degree: Option<usize>,
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonvanishingReport {
    pub basis: BasisKind,
    pub order: usize,
    /// Whether the theorem hypotheses hold for this operator (and `m >= 2`),
    /// so every determinant must be nonzero.
    pub guaranteed: bool,
    pub windows: Vec<DetWindow>,
}

impl NonvanishingReport {
    pub fn all_nonzero(&self) -> bool {
        self.windows.iter().all(|w| w.nonzero)
    }

    /// `false` iff a guaranteed determinant vanished or missed its predicted degree.
    pub fn consistent(&self) -> bool {
        !self.guaranteed
            || self.windows.iter().all(|w| {
                w.nonzero
                    && w.predicted_degree
                        .is_none_or(|p| w.det_degree == Degree::Finite(p))
            })
    }
}

fn report<B: Basis>(
    op: &Operator<B>,
    l0: &LinearForm,
    k_max: usize,
    guaranteed: bool,
    predict: impl Fn(&LinearForm) -> Option<usize>,
) -> Result<NonvanishingReport> {
    if l0.is_zero() {
        return Err(Error::ZeroInitialForm);
    }
    let m = op.order();
    let all = forms(op, l0, k_max + m)?;
    let windows = (0..=k_max)
        .map(|k| {
            let matrix = FormMatrix {
                k,
                rows: all[k..k + m].to_vec(),
            };
            let det = matrix.det(DetMethod::Auto);
            DetWindow {
                k,
                degree_grid: matrix.degree_grid(),
                det_degree: det.deg(),
                nonzero: !det.is_zero(),
                predicted_degree: predict(&all[k]),
                det,
            }
        })
        .collect();
    Ok(NonvanishingReport {
        basis: B::KIND,
        order: m,
        guaranteed: guaranteed && m >= 2,
        windows,
    })
}

pub fn nonvanishing_report_theta(
    op: &ThetaOperator,
    l0: &LinearForm,
    k_max: usize,
) -> Result<NonvanishingReport> {
    let t1 = check_t1(op);
    report(op, l0, k_max, t1, |row| {
        if t1 {
            predict_degree(op, row).ok()
        } else {
            None
        }
    })
}

pub fn nonvanishing_report_d(
    op: &DOperator,
    l0: &LinearForm,
    k_max: usize,
) -> Result<NonvanishingReport> {
    report(op, l0, k_max, check_t2(op).any(), |_| None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn form(c: &[&[i64]]) -> LinearForm {
        LinearForm::new(c.iter().map(|x| p(x)).collect()).unwrap()
    }

    fn theta(c: &[&[i64]]) -> ThetaOperator {
        ThetaOperator::new(c.iter().map(|x| p(x)).collect()).unwrap()
    }

    fn dop(c: &[&[i64]]) -> DOperator {
        DOperator::new(c.iter().map(|x| p(x)).collect()).unwrap()
    }

    fn bessel_like() -> ThetaOperator {
        theta(&[&[0, -1], &[], &[1]])
    }

    #[test]
    fn iterate_theta_examples() {
        let op = bessel_like();
        assert_eq!(iterate_theta(&op, &form(&[&[1], &[]])).unwrap(), form(&[&[], &[0, 1]]));
        assert_eq!(iterate_theta(&op, &form(&[&[], &[0, 1]])).unwrap(), form(&[&[0, 1], &[0, 1]]));
        assert!(iterate_theta(&op, &form(&[&[], &[]])).unwrap().is_zero());
        assert_eq!(
            iterate_theta(&op, &form(&[&[1]])),
            Err(Error::OrderMismatch { order: 2, form: 1 })
        );
    }

    #[test]
    fn iterate_d_examples() {
        let airy = dop(&[&[0, -1], &[], &[1]]);
        assert_eq!(iterate_d(&airy, &form(&[&[1], &[]])).unwrap(), form(&[&[], &[0, 1]]));
        let op = dop(&[&[-1], &[], &[0, 1]]);
        assert_eq!(iterate_d(&op, &form(&[&[1], &[]])).unwrap(), form(&[&[], &[1]]));
        assert!(iterate_d(&op, &form(&[&[], &[]])).unwrap().is_zero());
    }

    #[test]
    fn build_matrix_examples() {
        let op = bessel_like();
        let l0 = form(&[&[1], &[]]);
        assert_eq!(build_matrix(&op, &l0, 0).unwrap().rows, vec![form(&[&[1], &[]]), form(&[&[], &[0, 1]])]);
        assert_eq!(
            build_matrix(&op, &l0, 1).unwrap().rows,
            vec![form(&[&[], &[0, 1]]), form(&[&[0, 1], &[0, 1]])]
        );
        let sq = theta(&[&[], &[], &[1]]);
        assert_eq!(build_matrix(&sq, &l0, 0).unwrap().rows, vec![form(&[&[1], &[]]), form(&[&[], &[]])]);
        assert_eq!(build_matrix(&op, &form(&[&[], &[]]), 0), Err(Error::ZeroInitialForm));
    }

    #[test]
    fn profile_examples() {
        let pr = degree_profile(&form(&[&[1], &[]])).unwrap();
        assert_eq!((pr.degrees, pr.lead), (vec![Degree::Finite(0), Degree::NegInf], 1));
        let pr = degree_profile(&form(&[&[], &[0, 1]])).unwrap();
        assert_eq!((pr.degrees, pr.lead), (vec![Degree::NegInf, Degree::Finite(1)], 2));
        let pr = degree_profile(&form(&[&[0, 1], &[1, 0, 1], &[0, 0, 1]])).unwrap();
        assert_eq!(pr.lead, 2);
        assert_eq!(degree_profile(&form(&[&[], &[]])), Err(Error::ZeroInitialForm));
    }

    #[test]
    fn predict_examples() {
        let op = bessel_like();
        assert_eq!(predict_degree(&op, &form(&[&[1], &[]])).unwrap(), 1);
        assert_eq!(predict_degree(&op, &form(&[&[], &[0, 1]])).unwrap(), 2);
        // N = t, P_3 = t²: m = 3, S = 1
        let op3 = theta(&[&[0, 0, -1], &[], &[], &[0, 1]]);
        let l0 = form(&[&[1], &[], &[]]);
        assert_eq!(predict_degree(&op3, &l0).unwrap(), 5);
        let d = build_matrix(&op3, &l0, 0).unwrap().det(DetMethod::Cofactor);
        assert_eq!(d.deg(), Degree::Finite(5));
        assert!(matches!(
            predict_degree(&theta(&[&[], &[], &[1]]), &l0),
            Err(Error::ConditionViolated(_))
        ));
    }

    #[test]
    fn condition_checks() {
        assert!(check_t1(&bessel_like()));
        assert!(!check_t1(&theta(&[&[], &[], &[1]])));
        // Δ³ − tΔ − t: r_2 = 1 = r_3
        assert!(!check_t1(&theta(&[&[0, -1], &[0, -1], &[], &[1]])));
        let c = check_t2(&dop(&[&[0, -1], &[], &[1]]));
        assert_eq!((c.cond280, c.cond290), (true, false));
        let c = check_t2(&dop(&[&[-1], &[], &[0, 1]]));
        assert_eq!((c.cond280, c.cond290), (false, true));
        let c = check_t2(&dop(&[&[], &[], &[1]]));
        assert_eq!((c.cond280, c.cond290), (false, false));
    }

    #[test]
    fn report_examples() {
        let r = nonvanishing_report_theta(&bessel_like(), &form(&[&[1], &[]]), 1).unwrap();
        assert!(r.guaranteed && r.consistent() && r.all_nonzero());
        assert_eq!(r.windows[0].det, Poly::t());
        assert_eq!(r.windows[0].predicted_degree, Some(1));
        assert_eq!(r.windows[1].det, p(&[0, 0, -1]));
        assert_eq!(r.windows[1].predicted_degree, Some(2));

        let r = nonvanishing_report_theta(&theta(&[&[], &[], &[1]]), &form(&[&[1], &[]]), 0).unwrap();
        assert!(!r.guaranteed && !r.all_nonzero() && r.consistent());
        assert!(r.windows[0].det.is_zero());

        let r = nonvanishing_report_d(&dop(&[&[0, -1], &[], &[1]]), &form(&[&[1], &[]]), 0).unwrap();
        assert_eq!(r.windows[0].det, Poly::t());
        assert!(r.guaranteed && r.consistent());
    }
}
