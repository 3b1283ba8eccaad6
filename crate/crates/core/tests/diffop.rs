mod common;

use common::*;
use proptest::prelude::*;
use theta_forge_core::diffop::connection_matrix;
use theta_forge_core::poly::int;
use theta_forge_core::{DOperator, Poly, Rational, StirlingTable, ThetaOperator, TruncatedSeries};

/// j (j-1) … (j-n+1), the eigenvalue of t^n D^n on t^j.
fn falling(j: i64, n: usize) -> i64 {
    (0..n as i64).map(|i| j - i).product()
}

fn big(n: i64) -> Rational {
    int(n)
}

#[test]
fn monomial_oracle_against_operators() {
    let table = StirlingTable::new(8);
    for n in 0..=8usize {
        // t^n D^n, and the theta expansion Σ s1(n,k) Δ^k
        let mut tn_dn = vec![Poly::zero(); n + 1];
        tn_dn[n] = Poly::monomial(big(1), n);
        let mut theta_side = vec![Poly::zero(); n + 1];
        for (k, slot) in theta_side.iter_mut().enumerate() {
            *slot = Poly::constant(Rational::from_integer(table.s1(n, k)));
        }
        // Δ^n, and the D expansion Σ S2(n,k) t^k D^k
        let mut delta_n = vec![Poly::zero(); n + 1];
        delta_n[n] = Poly::one();
        let mut d_side = vec![Poly::zero(); n + 1];
        for (k, slot) in d_side.iter_mut().enumerate() {
            *slot = Poly::monomial(Rational::from_integer(table.s2(n, k)), k);
        }
        for j in 0..=12i64 {
            let tj = Poly::monomial(big(1), j as usize);
            let expect_first = tj.scale(&big(falling(j, n)));
            let expect_second = tj.scale(&big(j.pow(n as u32)));
            let apply_d = |c: &[Poly]| {
                if n == 0 {
                    &c[0] * &tj
                } else {
                    DOperator::new(c.to_vec()).unwrap().apply_poly(&tj)
                }
            };
            let apply_theta = |c: &[Poly]| {
                if n == 0 {
                    &c[0] * &tj
                } else {
                    ThetaOperator::new(c.to_vec()).unwrap().apply_poly(&tj)
                }
            };
            assert_eq!(apply_d(&tn_dn), expect_first, "t^{n}D^{n} t^{j}");
            assert_eq!(apply_theta(&theta_side), expect_first, "s1 expansion n={n} j={j}");
            assert_eq!(apply_theta(&delta_n), expect_second, "Δ^{n} t^{j}");
            assert_eq!(apply_d(&d_side), expect_second, "S2 expansion n={n} j={j}");
        }
    }
}

#[test]
fn connection_matrix_shape() {
    for m in 1..=6 {
        let c = connection_matrix(m);
        for (n, row) in c.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                if k > n {
                    assert!(e.is_zero());
                }
            }
            assert_eq!(row[n], Poly::monomial(big(1), n));
        }
    }
}

fn series(max_len: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(small_rational(), 1..=max_len).prop_map(TruncatedSeries::new)
}

proptest! {
    #[test]
    fn theta_roundtrip_is_exact(op in theta_op(6, 8)) {
        prop_assert_eq!(op.to_d().to_theta(), op);
    }

    #[test]
    fn d_roundtrip_up_to_power_of_t(op in d_op(6, 8)) {
        let (theta, e) = op.to_theta_with_power();
        let back = theta.to_d();
        prop_assert_eq!(back, op.scale_left(&Poly::monomial(big(1), e)).unwrap());
    }

    #[test]
    fn application_is_linear(op in theta_op(4, 4), f in series(10), g in series(10)) {
        let n = f.trunc_order().min(g.trunc_order());
        let (f, g) = (f.truncate(n), g.truncate(n));
        let lhs = op.apply_series(&(&f + &g)).unwrap();
        let rhs = &op.apply_series(&f).unwrap() + &op.apply_series(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_application_is_linear(op in d_op(3, 4), f in series(10), g in series(10)) {
        let n = f.trunc_order().min(g.trunc_order());
        let (f, g) = (f.truncate(n), g.truncate(n));
        match (op.apply_series(&(&f + &g)), op.apply_series(&f), op.apply_series(&g)) {
            (Ok(s), Ok(a), Ok(b)) => prop_assert_eq!(s, &a + &b),
            (s, _, _) => prop_assert!(s.is_err()),
        }
    }

    #[test]
    fn both_bases_act_identically(op in theta_op(4, 4), f in series(12)) {
        let via_theta = op.apply_series(&f).unwrap();
        if let Ok(via_d) = op.to_d().apply_series(&f) {
            prop_assert_eq!(via_d.clone(), via_theta.truncate(via_d.trunc_order()));
        }
    }
}
