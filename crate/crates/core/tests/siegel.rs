mod common;

use common::*;
use proptest::prelude::*;
use theta_forge_core::diffop::Theta;
use theta_forge_core::hyper::{factorial_series, kummer_type_operator, FactorialBase};
use theta_forge_core::matrix::{det_cofactor, det_fraction_free};
use theta_forge_core::siegel::{
    build_matrix, check_t1, check_t2, degree_profile, forms, iterate, iterate_theta,
    predict_degree,
};
use theta_forge_core::{Basis, Degree, LinearForm, Poly, TruncatedSeries};

fn poly_matrix(max_m: usize, max_deg: usize) -> impl Strategy<Value = Vec<Vec<Poly>>> {
    (1..=max_m).prop_flat_map(move |m| {
        prop::collection::vec(prop::collection::vec(poly_up_to(max_deg), m), m)
    })
}

/// Σ_j A_j Δ^{m-j} f
fn pair(form: &LinearForm, f: &TruncatedSeries) -> TruncatedSeries {
    let m = form.m();
    let mut powers = vec![f.clone()];
    for _ in 1..m {
        powers.push(powers.last().unwrap().delta());
    }
    form.comps()
        .iter()
        .enumerate()
        .fold(TruncatedSeries::zero(f.trunc_order() as usize), |acc, (j, a)| {
            &acc + &powers[m - 1 - j].mul_poly(a)
        })
}

#[test]
fn iterated_forms_track_n_delta_on_solutions() {
    // f = Σ tⁿ/(n!)² solves Δ² − t
    let fb = FactorialBase::new(Poly::from_i64s(&[1, 2, 1])).unwrap();
    let op = kummer_type_operator(&fb).unwrap();
    let f = factorial_series(&fb, 25).unwrap();
    let l0 = LinearForm::new(vec![Poly::from_i64s(&[1, 1]), Poly::from_i64s(&[0, 0, 3])]).unwrap();
    let all = forms(&op, &l0, 6).unwrap();
    let mut scalar = pair(&l0, &f);
    for (n, form) in all.iter().enumerate() {
        assert_eq!(pair(form, &f), scalar, "n = {n}");
        scalar = Theta::act_series(&scalar).mul_poly(op.leading());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iteration_is_linear(
        op in theta_op(4, 3),
        a in small_rational(),
        b in small_rational(),
        seed in any::<u64>(),
    ) {
        let m = op.order();
        let mk = |s: u64| {
            let comps = (0..m)
                .map(|j| Poly::from_i64s(&[(s as i64 + j as i64) % 5 - 2, (s >> 3) as i64 % 3]))
                .collect();
            LinearForm::new(comps).unwrap()
        };
        let (l, l2) = (mk(seed), mk(seed.rotate_left(17)));
        let lhs = iterate_theta(&op, &l.combine(&a, &l2, &b)).unwrap();
        let rhs = iterate_theta(&op, &l).unwrap().combine(&a, &iterate_theta(&op, &l2).unwrap(), &b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_methods_agree(m in poly_matrix(4, 4)) {
        prop_assert_eq!(det_cofactor(&m), det_fraction_free(&m));
    }

    #[test]
    fn row_swap_flips_sign(m in poly_matrix(4, 3), i in 0usize..4, j in 0usize..4) {
        let n = m.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let mut swapped = m.clone();
        swapped.swap(i, j);
        prop_assert_eq!(det_cofactor(&swapped), -det_cofactor(&m));
    }

    #[test]
    fn t1_determinants_nonzero_with_predicted_degree(
        (op, l0) in t1_op().prop_flat_map(|op| { let m = op.order(); (Just(op), nonzero_form(m, 3)) })
    ) {
        prop_assert!(check_t1(&op));
        let rows = forms(&op, &l0, 3 + op.order() - 1).unwrap();
        for (k, top) in rows.iter().take(3).enumerate() {
            let mat = build_matrix(&op, &l0, k).unwrap();
            let d = mat.det(theta_forge_core::matrix::DetMethod::Auto);
            prop_assert!(!d.is_zero(), "k = {}", k);
            let predicted = predict_degree(&op, top).unwrap();
            prop_assert_eq!(d.deg(), Degree::Finite(predicted), "k = {}", k);
        }
    }

    #[test]
    fn t2_determinants_nonzero(
        (op, l0) in prop_oneof![cond280_op(), cond290_op()]
            .prop_flat_map(|op| { let m = op.order(); (Just(op), nonzero_form(m, 3)) })
    ) {
        prop_assert!(check_t2(&op).any());
        for k in 0..3 {
            let d = build_matrix(&op, &l0, k).unwrap().det(theta_forge_core::matrix::DetMethod::Auto);
            prop_assert!(!d.is_zero(), "k = {}", k);
        }
    }

    #[test]
    fn degree_step_bounds(
        (op, l) in t1_op().prop_flat_map(|op| { let m = op.order(); (Just(op), nonzero_form(m, 4)) })
    ) {
        let m = op.order();
        let s = op.leading_degree().finite().unwrap();
        let prof = degree_profile(&l).unwrap();
        let (dl, lead) = (prof.lead_degree(), prof.lead);
        let next = iterate(&op, &l).unwrap().degrees();
        if lead >= 2 {
            prop_assert_eq!(next[lead - 2], Degree::Finite(dl + s));
            for h in 1..=lead.saturating_sub(2) {
                prop_assert!(next[h - 1] < Degree::Finite(dl + s));
            }
            for h in lead..=m {
                prop_assert!(next[h - 1] <= Degree::Finite(dl + s));
            }
        } else {
            prop_assert_eq!(next[m - 1], Degree::Finite(dl + s + 1));
            for h in 1..m {
                prop_assert!(next[h - 1] <= Degree::Finite(dl + s));
            }
        }
    }
}
