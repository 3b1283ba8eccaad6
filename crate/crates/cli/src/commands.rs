//! The subcommands as library functions returning a report and an exit status.

use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Deserialize;
use theta_forge_core::hyper::{
    factorial_series, first_failing_order, kummer_type_operator, pfq_operator, pfq_series,
    FactorialBase, PfqParams,
};
use theta_forge_core::newton::{katz, polygon};
use theta_forge_core::opparse::{parse_linear_form, parse_operator, parse_poly, OperatorExpr};
use theta_forge_core::siegel::{
    check_t1, check_t2, nonvanishing_report_d, nonvanishing_report_theta, NonvanishingReport,
};
use theta_forge_core::{
    Basis, BasisKind, DOperator, LinearForm, Operator, Rational, ThetaOperator, TruncatedSeries,
};

use crate::report::{
    basis_name, degree, fraction_text, Conditions, Converted, Degrees, HyperSection,
    NewtonSection, PolyJson, Report, SiegelSection, SCHEMA_VERSION,
};
use crate::svg;

/// Process exit status. Ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    /// A determinant vanished or a series was not annihilated.
    Negative = 1,
    Input = 2,
    /// A guaranteed result failed: a bug, never a mathematical outcome.
    Internal = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Math(#[from] theta_forge_core::Error),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    /// Human-readable summary for stdout.
    pub text: String,
    pub report: Report,
    pub svg: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    D,
    Theta,
}

#[derive(Clone, Debug, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvertArgs {
    /// Target basis.
    #[arg(long, value_enum)]
    pub form: Form,
    #[arg(long)]
    pub op: String,
}

#[derive(Clone, Debug, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiegelArgs {
    #[arg(long)]
    pub op: String,
    /// Initial linear form `[A1, ..., Am]`; defaults to `[1, 0, ..., 0]`.
    #[arg(long)]
    pub form0: Option<String>,
    /// Last window index; defaults to `m + 1`.
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewtonArgs {
    #[arg(long)]
    pub op: String,
    #[arg(long)]
    #[serde(skip)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Debug, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperArgs {
    /// Denominator polynomial `P(x)` of `sum t^n / (P(0)...P(n-1))`.
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub poly: Option<String>,
    /// Comma-separated upper parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Comma-separated lower parameters.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, default_value_t = 20)]
    #[serde(default = "default_terms")]
    pub terms: usize,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub json: Option<PathBuf>,
}

fn default_terms() -> usize {
    20
}

/// A parsed operator in its native basis.
enum AnyOp {
    Theta(ThetaOperator),
    D(DOperator),
}

fn parse_any(text: &str) -> CliResult<AnyOp> {
    let expr = parse_operator(text)?;
    Ok(match expr.basis {
        BasisKind::Theta => AnyOp::Theta(expr.to_operator()?),
        BasisKind::D => AnyOp::D(expr.to_operator()?),
    })
}

fn base_report<B: Basis>(command: &'static str, echo: String, op: &Operator<B>, conditions: Conditions) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        command,
        input_echo: echo,
        basis: basis_name(B::KIND),
        order: op.order(),
        coeffs: op.coeffs().iter().map(PolyJson::from).collect(),
        degrees: Degrees {
            leading: degree(op.leading_degree()),
            r: op.rhs_degrees().into_iter().map(degree).collect(),
        },
        conditions,
        converted: None,
        hyper: None,
        siegel: None,
        newton: None,
        diagnostics: Vec::new(),
    }
}

fn theta_conditions(op: &ThetaOperator) -> Conditions {
    Conditions::new(check_t1(op), check_t2(&op.to_d()))
}

fn d_conditions(op: &DOperator) -> Conditions {
    Conditions::new(check_t1(&op.to_theta()), check_t2(op))
}

fn print<B: Basis>(op: &Operator<B>) -> String {
    OperatorExpr::from(op).to_string()
}

pub fn convert(args: &ConvertArgs) -> CliResult<Outcome> {
    let (mut report, text, basis, e) = match (parse_any(&args.op)?, args.form) {
        (AnyOp::Theta(op), Form::Theta) => {
            let r = base_report("convert", args.op.clone(), &op, theta_conditions(&op));
            (r, print(&op), BasisKind::Theta, 0)
        }
        (AnyOp::Theta(op), Form::D) => {
            let r = base_report("convert", args.op.clone(), &op, theta_conditions(&op));
            (r, print(&op.to_d()), BasisKind::D, 0)
        }
        (AnyOp::D(op), Form::D) => {
            let r = base_report("convert", args.op.clone(), &op, d_conditions(&op));
            (r, print(&op), BasisKind::D, 0)
        }
        (AnyOp::D(op), Form::Theta) => {
            let r = base_report("convert", args.op.clone(), &op, d_conditions(&op));
            let (theta, e) = op.to_theta_with_power();
            (r, print(&theta), BasisKind::Theta, e)
        }
    };
    if e > 0 {
        report.diagnostics.push(format!("multiplied on the left by t^{e} to clear denominators"));
    }
    report.converted = Some(Converted { basis: basis_name(basis), text: text.clone(), t_power: e });
    Ok(Outcome { status: Status::Ok, text: format!("{text}\n"), report, svg: None })
}

fn default_form(m: usize) -> LinearForm {
    LinearForm::unit(m)
}

fn siegel_status(r: &NonvanishingReport) -> Status {
    if !r.consistent() {
        Status::Internal
    } else if !r.all_nonzero() {
        Status::Negative
    } else {
        Status::Ok
    }
}

fn siegel_text(r: &NonvanishingReport, out: &mut String) {
    for w in &r.windows {
        let _ = write!(out, "k = {}: det = {} (degree {}", w.k, w.det, w.det_degree);
        if let Some(p) = w.predicted_degree {
            let _ = write!(out, ", predicted {p}");
        }
        let _ = writeln!(out, ") {}", if w.nonzero { "nonzero" } else { "ZERO" });
    }
}

fn conditions_text(c: &Conditions, out: &mut String) {
    let _ = writeln!(out, "conditions: t1 = {}, t2_280 = {}, t2_290 = {}", c.t1, c.t2_280, c.t2_290);
}

/// Runs the determinant windows and fills the siegel section. Returns the status.
fn attach_siegel(
    report: &mut Report,
    op: &AnyOp,
    form0: Option<&str>,
    kmax: Option<usize>,
    text: &mut String,
) -> CliResult<Status> {
    let m = report.order;
    let l0 = match form0 {
        Some(s) => parse_linear_form(s)?,
        None => default_form(m),
    };
    let k_max = kmax.unwrap_or(m + 1);
    let r = match op {
        AnyOp::Theta(op) => nonvanishing_report_theta(op, &l0, k_max)?,
        AnyOp::D(op) => nonvanishing_report_d(op, &l0, k_max)?,
    };
    siegel_text(&r, text);
    let status = siegel_status(&r);
    if status == Status::Internal {
        report
            .diagnostics
            .push("internal consistency violation: a guaranteed determinant vanished or missed its degree".into());
    }
    if !r.guaranteed {
        report.diagnostics.push("degree conditions do not hold: non-vanishing is not guaranteed".into());
    }
    report.siegel = Some(SiegelSection::new(k_max, l0.to_string(), &r));
    Ok(status)
}

fn attach_newton(report: &mut Report, op: &AnyOp, text: &mut String) -> NewtonSection {
    let (np, m) = match op {
        AnyOp::Theta(op) => (polygon(op), op.order()),
        AnyOp::D(op) => (polygon(op), op.order()),
    };
    let verdict = katz(&np, m);
    let section = NewtonSection::new(&np, &verdict);
    let slopes: Vec<String> = section.slopes.iter().map(|s| format!("{} (x{})", s.value, s.multiplicity)).collect();
    let _ = writeln!(text, "slopes: {}", if slopes.is_empty() { "none".into() } else { slopes.join(", ") });
    match &section.witness {
        Some(w) => {
            let _ = writeln!(text, "verdict: Irreducible (slope {}, denominator {})", w.slope, w.denominator);
        }
        None => {
            let _ = writeln!(text, "verdict: Unknown");
        }
    }
    report.newton = Some(section.clone());
    section
}

fn analyze(command: &'static str, echo: &str) -> CliResult<(AnyOp, Report, String)> {
    let op = parse_any(echo)?;
    let report = match &op {
        AnyOp::Theta(o) => base_report(command, echo.into(), o, theta_conditions(o)),
        AnyOp::D(o) => base_report(command, echo.into(), o, d_conditions(o)),
    };
    let mut text = String::new();
    let _ = writeln!(text, "operator: {} (basis {}, order {})", op_text(&op), report.basis, report.order);
    conditions_text(&report.conditions, &mut text);
    Ok((op, report, text))
}

fn op_text(op: &AnyOp) -> String {
    match op {
        AnyOp::Theta(o) => print(o),
        AnyOp::D(o) => print(o),
    }
}

pub fn siegel(args: &SiegelArgs) -> CliResult<Outcome> {
    let (op, mut report, mut text) = analyze("siegel", &args.op)?;
    let status = attach_siegel(&mut report, &op, args.form0.as_deref(), args.kmax, &mut text)?;
    Ok(Outcome { status, text, report, svg: None })
}

pub fn newton(args: &NewtonArgs) -> CliResult<Outcome> {
    let (op, mut report, mut text) = analyze("newton", &args.op)?;
    attach_newton(&mut report, &op, &mut text);
    let drawing = {
        let np = match &op {
            AnyOp::Theta(o) => polygon(o),
            AnyOp::D(o) => polygon(o),
        };
        svg::render(&op_text(&op), &np)
    };
    Ok(Outcome { status: Status::Ok, text, report, svg: Some(drawing) })
}

fn parse_list(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<Rational>()
                .map_err(|_| CliError::Input(format!("invalid rational parameter {x:?}")))
        })
        .collect()
}

enum Family {
    Factorial(FactorialBase),
    Pfq(PfqParams),
}

fn family(args: &HyperArgs) -> CliResult<(Family, String)> {
    match (&args.poly, &args.a, &args.b) {
        (Some(p), None, None) => {
            // the polynomial is written in x; the grammar's variable is t
            let fb = FactorialBase::new(parse_poly(&p.replace('x', "t"))?)?;
            Ok((Family::Factorial(fb), format!("--poly {p:?}")))
        }
        (None, a, Some(b)) => {
            let a_text = a.clone().unwrap_or_default();
            let params = PfqParams::new(parse_list(&a_text)?, parse_list(b)?)?;
            Ok((Family::Pfq(params), format!("--a {a_text:?} --b {b:?}")))
        }
        (Some(_), _, _) => Err(CliError::Input("--poly cannot be combined with --a/--b".into())),
        (None, _, None) => Err(CliError::Input("either --poly or --b is required".into())),
    }
}

pub fn hyper(args: &HyperArgs) -> CliResult<Outcome> {
    let (fam, echo) = family(args)?;
    let (op, series, mut section): (ThetaOperator, TruncatedSeries, HyperSection) = match &fam {
        Family::Factorial(fb) => (
            kummer_type_operator(fb)?,
            factorial_series(fb, args.terms)?,
            HyperSection {
                family: "factorial",
                poly: Some(PolyJson::from(fb.poly())),
                a: None,
                b: None,
                terms: args.terms,
                series: Vec::new(),
                annihilation: false,
                first_failing_order: None,
            },
        ),
        Family::Pfq(p) => (
            pfq_operator(p),
            pfq_series(p, args.terms)?,
            HyperSection {
                family: "pfq",
                poly: None,
                a: Some(p.upper().iter().map(fraction_text).collect()),
                b: Some(p.lower().iter().map(fraction_text).collect()),
                terms: args.terms,
                series: Vec::new(),
                annihilation: false,
                first_failing_order: None,
            },
        ),
    };
    let failing = first_failing_order(&op, &series);
    section.series = series.coeffs().iter().map(fraction_text).collect();
    section.annihilation = failing.is_none();
    section.first_failing_order = failing;

    let mut report = base_report("hyper", echo, &op, theta_conditions(&op));
    let mut text = String::new();
    let _ = writeln!(text, "operator: {} (basis T, order {})", print(&op), op.order());
    match failing {
        None => {
            let _ = writeln!(text, "annihilation: holds through {} terms", args.terms);
        }
        Some(n) => {
            let _ = writeln!(text, "annihilation: FAILS at order {n}");
        }
    }
    conditions_text(&report.conditions, &mut text);
    if let Family::Pfq(p) = &fam {
        if !p.upper().is_empty() {
            report.diagnostics.push("p >= 1: the theta degree pattern cannot hold".into());
        }
    }
    let any = AnyOp::Theta(op);
    let siegel_status = attach_siegel(&mut report, &any, None, args.kmax, &mut text)?;
    attach_newton(&mut report, &any, &mut text);
    report.hyper = Some(section);

    let status = if siegel_status == Status::Internal {
        Status::Internal
    } else if failing.is_some() {
        Status::Negative
    } else {
        Status::Ok
    };
    Ok(Outcome { status, text, report, svg: None })
}

/// Exit status for an error that stopped a command before it produced a report.
pub fn error_status(_: &CliError) -> Status {
    Status::Input
}

/// `--json` payload: pretty-printed, newline-terminated.
pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn siegel_args(op: &str, form0: &str, kmax: Option<usize>) -> SiegelArgs {
        SiegelArgs { op: op.into(), form0: Some(form0.into()), kmax, json: None }
    }

    #[test]
    fn convert_examples() {
        let c = |form, op: &str| convert(&ConvertArgs { form, op: op.into() }).unwrap().text;
        assert_eq!(c(Form::Theta, "t^2*D^2"), "T^2 - T\n");
        assert_eq!(c(Form::D, "T^2"), "(t^2)*D^2 + t*D\n");
        assert_eq!(c(Form::Theta, "T"), "T\n");
    }

    #[test]
    fn siegel_examples() {
        let o = siegel(&siegel_args("T^2 - t", "[1,0]", Some(1))).unwrap();
        assert_eq!(o.status, Status::Ok);
        let s = o.report.siegel.unwrap();
        assert_eq!((s.windows[0].det.as_str(), s.windows[1].det.as_str()), ("t", "-t^2"));

        let o = siegel(&siegel_args("T^2", "[1,0]", Some(0))).unwrap();
        assert_eq!(o.status, Status::Negative);
        assert!(!o.report.conditions.t1);

        assert!(matches!(
            siegel(&siegel_args("T^2 - t", "[0,0]", None)),
            Err(CliError::Math(theta_forge_core::Error::ZeroInitialForm))
        ));
    }

    #[test]
    fn hyper_families_coincide() {
        let fact = hyper(&HyperArgs { poly: Some("(x+1)^2".into()), a: None, b: None, terms: 20, kmax: None, json: None }).unwrap();
        let pfq = hyper(&HyperArgs { poly: None, a: Some(String::new()), b: Some("1".into()), terms: 20, kmax: None, json: None }).unwrap();
        for o in [&fact, &pfq] {
            assert_eq!(o.status, Status::Ok);
            assert!(o.report.conditions.t1);
            assert_eq!(o.report.newton.as_ref().unwrap().verdict, "Irreducible");
            assert!(o.text.starts_with("operator: T^2 - t "));
        }
        assert_eq!(fact.report.hyper.as_ref().unwrap().series, pfq.report.hyper.as_ref().unwrap().series);
    }
}
