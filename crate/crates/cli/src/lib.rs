//! Command-line front end: conversions, determinant windows, Newton polygons,
//! example families, JSON reports and SVG drawings.

pub mod batch;
pub mod checks;
pub mod commands;
pub mod gen;
pub mod report;
pub mod svg;
