//! JSON report model. Field order is the serialized key order.

use serde::Serialize;
use theta_forge_core::newton::{IrreducibilityVerdict, NewtonPolygon};
use theta_forge_core::siegel::{NonvanishingReport, T2Conditions};
use theta_forge_core::{BasisKind, Degree, Poly, Rational};

pub const SCHEMA_VERSION: &str = "theta-forge/report/1";

/// `[numerator, denominator]` as decimal strings.
pub type Fraction = [String; 2];

pub fn fraction(r: &Rational) -> Fraction {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn fraction_text(r: &Rational) -> String {
    r.to_string()
}

/// `None` stands for the degree of the zero polynomial.
pub fn degree(d: Degree) -> Option<i64> {
    d.as_i64()
}

pub fn basis_name(b: BasisKind) -> &'static str {
    match b {
        BasisKind::D => "D",
        BasisKind::Theta => "T",
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PolyJson {
    pub text: String,
    pub coeffs: Vec<Fraction>,
}

impl From<&Poly> for PolyJson {
    fn from(p: &Poly) -> Self {
        PolyJson {
            text: p.to_string(),
            coeffs: p.coeffs().iter().map(fraction).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub input_echo: String,
    pub basis: &'static str,
    pub order: usize,
    /// Coefficient of each derivation power, lowest first.
    pub coeffs: Vec<PolyJson>,
    pub degrees: Degrees,
    pub conditions: Conditions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converted: Option<Converted>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyper: Option<HyperSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub siegel: Option<SiegelSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub newton: Option<NewtonSection>,
    pub diagnostics: Vec<String>,
}

/// Degrees in the native basis: `S` of the leading coefficient and
/// `r_j = deg P_j` of the right-hand side.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Degrees {
    #[serde(rename = "S")]
    pub leading: Option<i64>,
    pub r: Vec<Option<i64>>,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct Conditions {
    pub t1: bool,
    pub t2_280: bool,
    pub t2_290: bool,
}

impl Conditions {
    pub fn new(t1: bool, t2: T2Conditions) -> Self {
        Conditions { t1, t2_280: t2.cond280, t2_290: t2.cond290 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Converted {
    pub basis: &'static str,
    pub text: String,
    /// Power `e` of the `t^e` left factor applied while clearing denominators.
    pub t_power: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SiegelSection {
    pub k_max: usize,
    pub form0: String,
    pub guaranteed: bool,
    pub windows: Vec<Window>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Window {
    pub k: usize,
    pub degree_grid: Vec<Vec<Option<i64>>>,
    pub det: String,
    pub det_coeffs: Vec<Fraction>,
    pub det_degree: Option<i64>,
    pub predicted_degree: Option<usize>,
    pub nonzero: bool,
}

impl SiegelSection {
    pub fn new(k_max: usize, form0: String, r: &NonvanishingReport) -> Self {
        SiegelSection {
            k_max,
            form0,
            guaranteed: r.guaranteed,
            windows: r
                .windows
                .iter()
                .map(|w| Window {
                    k: w.k,
                    degree_grid: w
                        .degree_grid
                        .iter()
                        .map(|row| row.iter().map(|d| degree(*d)).collect())
                        .collect(),
                    det: w.det.to_string(),
                    det_coeffs: w.det.coeffs().iter().map(fraction).collect(),
                    det_degree: degree(w.det_degree),
                    predicted_degree: w.predicted_degree,
                    nonzero: w.nonzero,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SlopeJson {
    pub value: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub slope: String,
    pub denominator: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NewtonSection {
    pub points: Vec<[i64; 2]>,
    pub hull: Vec<[i64; 2]>,
    pub slopes: Vec<SlopeJson>,
    pub verdict: &'static str,
    pub witness: Option<Witness>,
}

impl NewtonSection {
    pub fn new(np: &NewtonPolygon, verdict: &IrreducibilityVerdict) -> Self {
        let pts = |v: &[theta_forge_core::PolygonPoint]| v.iter().map(|p| [p.x as i64, p.y]).collect();
        let (name, witness) = match verdict {
            IrreducibilityVerdict::Irreducible { slope, denominator } => (
                "Irreducible",
                Some(Witness { slope: fraction_text(slope), denominator: *denominator }),
            ),
            IrreducibilityVerdict::Unknown => ("Unknown", None),
        };
        NewtonSection {
            points: pts(&np.points),
            hull: pts(&np.hull),
            slopes: np
                .slopes
                .iter()
                .map(|s| SlopeJson { value: fraction_text(&s.value), multiplicity: s.multiplicity })
                .collect(),
            verdict: name,
            witness,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HyperSection {
    pub family: &'static str,
    /// Denominator polynomial of the factorial family, written in `t`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly: Option<PolyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    pub terms: usize,
    pub series: Vec<String>,
    pub annihilation: bool,
    pub first_failing_order: Option<usize>,
}

/// One line of a batch output file.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BatchEntry {
    pub schema_version: &'static str,
    pub index: usize,
    pub cmd: Option<String>,
    pub exit_code: u8,
    pub report: Option<Report>,
    pub error: Option<String>,
}
