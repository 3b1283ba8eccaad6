//! Newton polygons at `t = ∞` and the single-slope irreducibility criterion.
//!
//! With `z = 1/t` the valuation of a polynomial coefficient is `v = -deg`.
//! A theta-basis operator `Σ a_i Δ^i` contributes the points `(i, v(a_i))`;
//! a D-basis operator `Σ q_i D^i` contributes `(i, v(q_i) + i)`, the
//! valuations of `q_i / t^i`. The polygon is the convex hull of
//! `{0 <= x <= i, y >= v_i}` over all points, so its lower boundary is the
//! lower convex hull of the points together with `(0, min v_i)`. Only the
//! suffix minima of the valuations matter, which makes the slopes agree
//! across the two bases.
//!
//! An operator of order `m` whose polygon has a single slope with reduced
//! denominator exactly `m` is irreducible.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::diffop::{Basis, BasisKind, DOperator, Operator, ThetaOperator};
use crate::poly::{Poly, Rational};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonPoint {
    pub x: usize,
    pub y: i64,
}

impl PolygonPoint {
    pub fn new(x: usize, y: i64) -> Self {
        PolygonPoint { x, y }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope {
    pub value: Rational,
    /// Horizontal length of the edge.
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// One point per nonzero coefficient, increasing `x`.
    pub points: Vec<PolygonPoint>,
    /// Vertices of the lower boundary, increasing `x`, starting at `x = 0`.
    pub hull: Vec<PolygonPoint>,
    /// Edge slopes along the hull, strictly increasing.
    pub slopes: Vec<Slope>,
}

fn cross(o: PolygonPoint, a: PolygonPoint, b: PolygonPoint) -> i128 {
    let (ox, oy) = (o.x as i128, o.y as i128);
    (a.x as i128 - ox) * (b.y as i128 - oy) - (a.y as i128 - oy) * (b.x as i128 - ox)
}

/// Lower convex hull by monotone chain; collinear interior points are dropped.
pub fn lower_hull(points: &[PolygonPoint]) -> Vec<PolygonPoint> {
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup_by_key(|p| p.x);
    let mut hull: Vec<PolygonPoint> = Vec::with_capacity(sorted.len());
    for p in sorted {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    hull
}

impl NewtonPolygon {
    pub fn from_points(mut points: Vec<PolygonPoint>) -> Self {
        points.sort();
        let mut candidates = points.clone();
        if let Some(min) = points.iter().map(|p| p.y).min() {
            candidates.push(PolygonPoint::new(0, min));
        }
        let hull = lower_hull(&candidates);
        let slopes = hull
            .windows(2)
            .map(|w| {
                let run = w[1].x - w[0].x;
                Slope {
                    value: Rational::new(BigInt::from(w[1].y - w[0].y), BigInt::from(run)),
                    multiplicity: run,
                }
            })
            .collect();
        NewtonPolygon { points, hull, slopes }
    }

    /// The slope, if the lower boundary has exactly one edge.
    pub fn unique_slope(&self) -> Option<&Rational> {
        match self.slopes.as_slice() {
            [only] => Some(&only.value),
            _ => None,
        }
    }
}

fn valuation(p: &Poly) -> Option<i64> {
    p.deg().as_i64().map(|d| -d)
}

pub fn polygon_theta(op: &ThetaOperator) -> NewtonPolygon {
    polygon(op)
}

/// Points `(i, i - deg q_i)` read directly from the D-basis degrees.
pub fn polygon_d(op: &DOperator) -> NewtonPolygon {
    polygon(op)
}

pub fn polygon<B: Basis>(op: &Operator<B>) -> NewtonPolygon {
    let shift = |i: usize| match B::KIND {
        BasisKind::Theta => 0,
        BasisKind::D => i as i64,
    };
    let points = op
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, q)| valuation(q).map(|v| PolygonPoint::new(i, v + shift(i))))
        .collect();
    NewtonPolygon::from_points(points)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Irreducible { slope: Rational, denominator: usize },
    /// The criterion is only sufficient; nothing is claimed either way.
    Unknown,
}

impl IrreducibilityVerdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, IrreducibilityVerdict::Irreducible { .. })
    }
}

pub fn katz(polygon: &NewtonPolygon, m: usize) -> IrreducibilityVerdict {
    let Some(slope) = polygon.unique_slope() else {
        return IrreducibilityVerdict::Unknown;
    };
    match slope.denom().to_usize() {
        Some(d) if d == m => IrreducibilityVerdict::Irreducible {
            slope: slope.clone(),
            denominator: d,
        },
        _ => IrreducibilityVerdict::Unknown,
    }
}

pub fn katz_verdict<B: Basis>(op: &Operator<B>) -> IrreducibilityVerdict {
    katz(&polygon(op), op.order())
}

/// Whether `op` and `q·op` have the same slopes.
pub fn scale_invariance_check(op: &ThetaOperator, q: &Poly) -> Result<bool> {
    let scaled = op.scale_left(q)?;
    Ok(polygon_theta(op).slopes == polygon_theta(&scaled).slopes)
}
