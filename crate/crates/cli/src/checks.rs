//! Property checks over seeded random instances, shared by `selftest` and
//! the acceptance suite. Each check returns a one-line summary on success
//! and the first counterexample on failure.

use num_traits::One;
use rayon::prelude::*;
use theta_forge_core::hyper::{
    annihilation_check, factorial_series, first_failing_order, kummer_type_operator, pfq_operator,
    pfq_series, PfqParams,
};
use theta_forge_core::matrix::{det_cofactor, det_fraction_free};
use theta_forge_core::newton::{katz, polygon_d, polygon_theta, IrreducibilityVerdict};
use theta_forge_core::opparse::{parse_linear_form, parse_operator, OperatorExpr};
use theta_forge_core::poly::{int, rat};
use theta_forge_core::siegel::{
    check_t1, check_t2, nonvanishing_report_d, nonvanishing_report_theta,
};
use theta_forge_core::{
    BasisKind, DOperator, Degree, LinearForm, Poly, Rational, StirlingTable, ThetaOperator,
};

use crate::gen::Gen;

pub type CheckResult = Result<String, String>;

fn all_ok<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<(), String> + Sync) -> Result<(), String> {
    // par_iter keeps the index so the reported counterexample is the first one
    let failures: Vec<(usize, String)> = items
        .par_iter()
        .enumerate()
        .filter_map(|(i, x)| f(x).err().map(|e| (i, e)))
        .collect();
    match failures.into_iter().next() {
        Some((i, e)) => Err(format!("instance {i}: {e}")),
        None => Ok(()),
    }
}

fn falling(j: usize, n: usize) -> Rational {
    (0..n).fold(Rational::one(), |acc, i| acc * int(j as i64 - i as i64))
}

/// `t^n D^n` and `Δ^n` on `t^j` against the falling-factorial and power
/// oracles, and the Stirling expansions produced by the converters.
pub fn monomial_oracle(n_max: usize, j_max: usize) -> CheckResult {
    let table = StirlingTable::new(n_max);
    let mut cases = 0;
    for n in 1..=n_max {
        let mut tn_dn = vec![Poly::zero(); n + 1];
        tn_dn[n] = Poly::monomial(Rational::one(), n);
        let tn_dn = DOperator::new(tn_dn).map_err(|e| e.to_string())?;
        let mut delta_n = vec![Poly::zero(); n + 1];
        delta_n[n] = Poly::one();
        let delta_n = ThetaOperator::new(delta_n).map_err(|e| e.to_string())?;

        let as_theta = tn_dn.to_theta();
        let as_d = delta_n.to_d();
        for k in 0..=n {
            let s1 = Poly::constant(Rational::from_integer(table.s1(n, k)));
            if as_theta.coeff(k) != &s1 {
                return Err(format!("t^{n}D^{n}: T^{k} coefficient {} != s1 = {s1}", as_theta.coeff(k)));
            }
            let s2 = Poly::monomial(Rational::from_integer(table.s2(n, k)), k);
            if as_d.coeff(k) != &s2 {
                return Err(format!("T^{n}: D^{k} coefficient {} != S2 t^k = {s2}", as_d.coeff(k)));
            }
        }
        for j in 0..=j_max {
            let tj = Poly::monomial(Rational::one(), j);
            let ff = Poly::monomial(falling(j, n), j);
            let pw = Poly::monomial(int(j as i64).pow(n as i32), j);
            let lhs_d = tn_dn.apply_poly(&tj);
            let rhs_d = as_theta.apply_poly(&tj);
            let lhs_t = delta_n.apply_poly(&tj);
            let rhs_t = as_d.apply_poly(&tj);
            if lhs_d != ff || rhs_d != ff {
                return Err(format!("t^{n}D^{n}(t^{j}): {lhs_d} / {rhs_d}, expected {ff}"));
            }
            if lhs_t != pw || rhs_t != pw {
                return Err(format!("T^{n}(t^{j}): {lhs_t} / {rhs_t}, expected {pw}"));
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, j) pairs"))
}

/// theta → D → theta is the identity; D → theta → D returns `t^e · op`.
pub fn conversion_roundtrip(g: &mut Gen, count: usize, max_order: usize, max_deg: usize) -> CheckResult {
    let thetas: Vec<_> = (0..count).map(|_| g.theta_op(max_order, max_deg)).collect();
    let ds: Vec<_> = (0..count).map(|_| g.d_op(max_order, max_deg)).collect();
    all_ok(&thetas, |op| {
        let (back, e) = op.to_d().to_theta_with_power();
        if e != 0 || &back != op {
            return Err(format!("theta roundtrip changed {}", OperatorExpr::from(op)));
        }
        Ok(())
    })?;
    all_ok(&ds, |op| {
        let (theta, e) = op.to_theta_with_power();
        let expected = op.scale_left(&Poly::monomial(Rational::one(), e)).map_err(|x| x.to_string())?;
        if theta.to_d() != expected {
            return Err(format!("D roundtrip of {} is not t^{e} times it", OperatorExpr::from(op)));
        }
        Ok(())
    })?;
    Ok(format!("{count} theta + {count} D operators"))
}

/// Outcome of a non-vanishing suite: the determinant part and the slope part.
pub struct SuiteOutcome {
    pub nonvanishing: CheckResult,
    pub slopes: CheckResult,
}

fn slope_check(
    np: &theta_forge_core::NewtonPolygon,
    m: usize,
    expected: Rational,
) -> Result<(), String> {
    if np.unique_slope() != Some(&expected) {
        return Err(format!("slopes {:?}, expected single slope {expected}", np.slopes));
    }
    match katz(np, m) {
        IrreducibilityVerdict::Irreducible { .. } => Ok(()),
        IrreducibilityVerdict::Unknown => Err("verdict Unknown".into()),
    }
}

/// Random theta operators under the raised-rhs degree pattern: the windows
/// `k = 0..=k_max` are nonzero with exactly the predicted degree, and the
/// polygon has the single slope `1/m`.
pub fn t1_suite(g: &mut Gen, count: usize, k_max: usize) -> SuiteOutcome {
    let cases: Vec<(ThetaOperator, LinearForm)> = (0..count)
        .map(|_| {
            let op = g.t1_op();
            let l0 = g.nonzero_form(op.order(), 3);
            (op, l0)
        })
        .collect();
    let nonvanishing = all_ok(&cases, |(op, l0)| {
        if !check_t1(op) {
            return Err(format!("generator produced {} outside the pattern", OperatorExpr::from(op)));
        }
        let r = nonvanishing_report_theta(op, l0, k_max).map_err(|e| e.to_string())?;
        for w in &r.windows {
            let predicted = w.predicted_degree.map(Degree::Finite);
            if !w.nonzero || predicted != Some(w.det_degree) {
                return Err(format!(
                    "{} with L0 = {l0}: k = {} det = {} (degree {}, predicted {:?})",
                    OperatorExpr::from(op),
                    w.k,
                    w.det,
                    w.det_degree,
                    w.predicted_degree
                ));
            }
        }
        Ok(())
    })
    .map(|()| format!("{count} operators, {} determinants", count * (k_max + 1)));
    let slopes = all_ok(&cases, |(op, _)| {
        let m = op.order();
        slope_check(&polygon_theta(op), m, rat(1, m as i64))
            .map_err(|e| format!("{}: {e}", OperatorExpr::from(op)))
    })
    .map(|()| format!("{count} operators with slope 1/m"));
    SuiteOutcome { nonvanishing, slopes }
}

/// Both D-basis degree patterns: windows nonzero, slopes `(m+1)/m` and
/// `(m-1)/m` respectively.
pub fn t2_suite(g: &mut Gen, count: usize, k_max: usize) -> SuiteOutcome {
    let mut cases: Vec<(DOperator, LinearForm, bool)> = Vec::with_capacity(2 * count);
    for raised in [true, false] {
        for _ in 0..count {
            let op = if raised { g.cond280_op() } else { g.cond290_op() };
            let l0 = g.nonzero_form(op.order(), 3);
            cases.push((op, l0, raised));
        }
    }
    let nonvanishing = all_ok(&cases, |(op, l0, raised)| {
        let c = check_t2(op);
        if (*raised && !c.cond280) || (!raised && !c.cond290) {
            return Err(format!("generator produced {} outside the pattern", OperatorExpr::from(op)));
        }
        let r = nonvanishing_report_d(op, l0, k_max).map_err(|e| e.to_string())?;
        match r.windows.iter().find(|w| !w.nonzero) {
            Some(w) => Err(format!("{} with L0 = {l0}: det at k = {} vanishes", OperatorExpr::from(op), w.k)),
            None => Ok(()),
        }
    })
    .map(|()| format!("{count} + {count} operators, {} determinants", 2 * count * (k_max + 1)));
    let slopes = all_ok(&cases, |(op, _, raised)| {
        let m = op.order() as i64;
        let expected = if *raised { rat(m + 1, m) } else { rat(m - 1, m) };
        slope_check(&polygon_d(op), op.order(), expected)
            .map_err(|e| format!("{}: {e}", OperatorExpr::from(op)))
    })
    .map(|()| format!("{count} + {count} operators with slopes (m+1)/m, (m-1)/m"));
    SuiteOutcome { nonvanishing, slopes }
}

/// The three worked operators and their single slopes.
pub fn worked_slopes() -> CheckResult {
    let cases: [(&str, Rational); 3] = [("T^2 - t", rat(1, 2)), ("D^2 - t", rat(3, 2)), ("t*D^2 - 1", rat(1, 2))];
    for (text, expected) in cases {
        let expr = parse_operator(text).map_err(|e| e.to_string())?;
        let (np, m) = match expr.basis {
            BasisKind::Theta => {
                let op: ThetaOperator = expr.to_operator().map_err(|e| e.to_string())?;
                (polygon_theta(&op), op.order())
            }
            BasisKind::D => {
                let op: DOperator = expr.to_operator().map_err(|e| e.to_string())?;
                (polygon_d(&op), op.order())
            }
        };
        slope_check(&np, m, expected).map_err(|e| format!("{text}: {e}"))?;
    }
    Ok("T^2 - t: 1/2, D^2 - t: 3/2, t*D^2 - 1: 1/2, all Irreducible".into())
}

pub fn annihilation(g: &mut Gen, count: usize, n_terms: usize) -> CheckResult {
    let bases: Vec<_> = (0..count).map(|_| g.factorial_base(5)).collect();
    let params: Vec<_> = (0..count).map(|_| g.pfq_params(4, 0)).collect();
    all_ok(&bases, |fb| {
        let op = kummer_type_operator(fb).map_err(|e| e.to_string())?;
        let f = factorial_series(fb, n_terms).map_err(|e| e.to_string())?;
        match first_failing_order(&op, &f) {
            None => Ok(()),
            Some(n) => Err(format!("P = {}: residual at order {n}", fb.poly())),
        }
    })?;
    all_ok(&params, |p| {
        let f = pfq_series(p, n_terms).map_err(|e| e.to_string())?;
        if annihilation_check(&pfq_operator(p), &f) {
            Ok(())
        } else {
            Err(format!("a = {:?}, b = {:?}", p.upper(), p.lower()))
        }
    })?;
    Ok(format!("{count} factorial + {count} hypergeometric series through {n_terms} terms"))
}

/// `p = 0` satisfies the theta degree pattern, `p >= 1` never does.
pub fn pfq_boundary(g: &mut Gen, count: usize) -> CheckResult {
    let zero: Vec<PfqParams> = (0..count).map(|_| g.pfq_params(4, 0)).filter(|p| p.upper().is_empty()).collect();
    let zero: Vec<PfqParams> = zero.into_iter().chain((1..=4).map(|q| {
        PfqParams::new(vec![], (1..q).map(|i| rat(i as i64, 2)).collect()).expect("valid")
    })).collect();
    let positive: Vec<PfqParams> = (0..count).map(|_| g.pfq_params(4, 1)).collect();
    all_ok(&zero, |p| {
        if check_t1(&pfq_operator(p)) { Ok(()) } else { Err(format!("p = 0, b = {:?} fails", p.lower())) }
    })?;
    all_ok(&positive, |p| {
        if check_t1(&pfq_operator(p)) { Err(format!("p >= 1, a = {:?} passes", p.upper())) } else { Ok(()) }
    })?;
    Ok(format!("{} with p = 0 pass, {} with p >= 1 fail", zero.len(), positive.len()))
}

pub fn det_oracle(g: &mut Gen, count: usize) -> CheckResult {
    let mats: Vec<_> = (0..count)
        .map(|_| {
            let m = g.range(1, 4);
            g.poly_matrix(m, 4)
        })
        .collect();
    all_ok(&mats, |rows| {
        let (a, b) = (det_cofactor(rows), det_fraction_free(rows));
        if a == b { Ok(()) } else { Err(format!("cofactor {a} vs fraction-free {b}")) }
    })?;
    Ok(format!("{count} matrices"))
}

/// `Δ²` with `L0 = (1, 0)`: the determinant vanishes, the pattern fails and
/// the polygon gives no verdict.
pub fn negative_control() -> CheckResult {
    let op: ThetaOperator = parse_operator("T^2").and_then(|e| e.to_operator()).map_err(|e| e.to_string())?;
    let l0 = parse_linear_form("[1, 0]").map_err(|e| e.to_string())?;
    let r = nonvanishing_report_theta(&op, &l0, 0).map_err(|e| e.to_string())?;
    if !r.windows[0].det.is_zero() {
        return Err(format!("det A_0 = {}", r.windows[0].det));
    }
    if check_t1(&op) {
        return Err("pattern check accepted T^2".into());
    }
    if katz(&polygon_theta(&op), 2) != IrreducibilityVerdict::Unknown {
        return Err("verdict is not Unknown".into());
    }
    Ok("det A_0 = 0, t1 = false, verdict Unknown".into())
}

/// print → parse is the identity on random operators in both bases.
pub fn parser_roundtrip(g: &mut Gen, count: usize) -> CheckResult {
    for i in 0..count {
        let basis = if g.coin() { BasisKind::D } else { BasisKind::Theta };
        let e = OperatorExpr::new(basis, g.operator_coeffs(5, 4));
        let text = e.to_string();
        match parse_operator(&text) {
            Ok(back) if back == e => {}
            Ok(back) => return Err(format!("instance {i}: {text} reparsed as {back}")),
            Err(err) => return Err(format!("instance {i}: {text}: {err}")),
        }
    }
    Ok(format!("{count} operators"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_checks_pass() {
        monomial_oracle(4, 6).unwrap();
        worked_slopes().unwrap();
        negative_control().unwrap();
    }

    #[test]
    fn small_random_checks_pass() {
        let mut g = Gen::new(1);
        conversion_roundtrip(&mut g, 5, 3, 3).unwrap();
        let s = t1_suite(&mut g, 4, 1);
        s.nonvanishing.unwrap();
        s.slopes.unwrap();
        let s = t2_suite(&mut g, 4, 1);
        s.nonvanishing.unwrap();
        s.slopes.unwrap();
        annihilation(&mut g, 4, 10).unwrap();
        pfq_boundary(&mut g, 4).unwrap();
        det_oracle(&mut g, 5).unwrap();
        parser_roundtrip(&mut g, 10).unwrap();
    }
}
