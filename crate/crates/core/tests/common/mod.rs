#![allow(dead_code)]

use proptest::prelude::*;
use theta_forge_core::poly::rat;
use theta_forge_core::{DOperator, LinearForm, Poly, Rational, ThetaOperator};

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Any polynomial (possibly zero) of degree at most `max_deg`.
pub fn poly_up_to(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(Poly::from_coeffs)
}

/// A polynomial of degree exactly `deg`.
pub fn poly_exact(deg: usize) -> impl Strategy<Value = Poly> {
    (prop::collection::vec(small_rational(), deg), nonzero_rational()).prop_map(|(mut c, lead)| {
        c.push(lead);
        Poly::from_coeffs(c)
    })
}

pub fn nonzero_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    (0..=max_deg).prop_flat_map(poly_exact)
}

pub fn theta_op(max_order: usize, max_deg: usize) -> impl Strategy<Value = ThetaOperator> {
    (1..=max_order).prop_flat_map(move |m| {
        (prop::collection::vec(poly_up_to(max_deg), m), nonzero_poly(max_deg)).prop_map(|(mut c, lead)| {
            c.push(lead);
            ThetaOperator::new(c).unwrap()
        })
    })
}

pub fn d_op(max_order: usize, max_deg: usize) -> impl Strategy<Value = DOperator> {
    (1..=max_order).prop_flat_map(move |m| {
        (prop::collection::vec(poly_up_to(max_deg), m), nonzero_poly(max_deg)).prop_map(|(mut c, lead)| {
            c.push(lead);
            DOperator::new(c).unwrap()
        })
    })
}

/// Theta operators with `deg N = S`, `deg P_m = S + 1`, `deg P_j <= S`.
pub fn t1_op() -> impl Strategy<Value = ThetaOperator> {
    (2usize..=4, 0usize..=3).prop_flat_map(|(m, s)| {
        (
            poly_exact(s),
            prop::collection::vec(poly_up_to(s), m - 1),
            poly_exact(s + 1),
        )
            .prop_map(|(n, mut rhs, pm)| {
                rhs.push(pm);
                ThetaOperator::from_equation(n, rhs).unwrap()
            })
    })
}

/// D operators with `deg T = S'`, `deg Q_m = S' + 1`, `deg Q_j <= S'`.
pub fn cond280_op() -> impl Strategy<Value = DOperator> {
    (2usize..=4, 0usize..=3).prop_flat_map(|(m, s)| {
        (
            poly_exact(s),
            prop::collection::vec(poly_up_to(s), m - 1),
            poly_exact(s + 1),
        )
            .prop_map(|(n, mut rhs, qm)| {
                rhs.push(qm);
                DOperator::from_equation(n, rhs).unwrap()
            })
    })
}

/// D operators with `deg Q_m = r`, `deg T = r + 1`, `deg Q_j <= r`.
pub fn cond290_op() -> impl Strategy<Value = DOperator> {
    (2usize..=4, 0usize..=3).prop_flat_map(|(m, r)| {
        (
            poly_exact(r + 1),
            prop::collection::vec(poly_up_to(r), m - 1),
            poly_exact(r),
        )
            .prop_map(|(n, mut rhs, qm)| {
                rhs.push(qm);
                DOperator::from_equation(n, rhs).unwrap()
            })
    })
}

pub fn form(m: usize, max_deg: usize) -> impl Strategy<Value = LinearForm> {
    prop::collection::vec(poly_up_to(max_deg), m).prop_map(|c| LinearForm::new(c).unwrap())
}

pub fn nonzero_form(m: usize, max_deg: usize) -> impl Strategy<Value = LinearForm> {
    form(m, max_deg).prop_filter("nonzero form", |f| !f.is_zero())
}
