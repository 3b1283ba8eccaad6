//! Hand-written SVG drawing of a Newton polygon.
//!
//! Layout coordinates are printed with two decimals; every mathematical value
//! (lattice points, slopes) is printed exactly. Nothing depends on time or
//! environment, so equal inputs give byte-identical files.

use std::fmt::Write;

use theta_forge_core::{NewtonPolygon, PolygonPoint};

pub const WIDTH: f64 = 640.0;
pub const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 64.0;

struct Frame {
    x0: i64,
    y0: i64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn new(points: &[PolygonPoint]) -> Self {
        let xs = points.iter().map(|p| p.x as i64);
        let ys = points.iter().map(|p| p.y);
        let (x0, x1) = (0, xs.max().unwrap_or(1).max(1));
        let (y0, y1) = (ys.clone().min().unwrap_or(0) - 1, ys.max().unwrap_or(0) + 1);
        Frame {
            x0,
            y0,
            sx: (WIDTH - 2.0 * MARGIN) / (x1 - x0) as f64,
            sy: (HEIGHT - 2.0 * MARGIN) / (y1 - y0) as f64,
        }
    }

    fn px(&self, x: i64) -> f64 {
        MARGIN + (x - self.x0) as f64 * self.sx
    }

    fn py(&self, y: i64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) as f64 * self.sy
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(title: &str, np: &NewtonPolygon) -> String {
    let mut all: Vec<PolygonPoint> = np.points.clone();
    all.extend(np.hull.iter().copied());
    let f = Frame::new(&all);
    let x_max = all.iter().map(|p| p.x as i64).max().unwrap_or(1).max(1);
    let (y_lo, y_hi) = (f.y0, all.iter().map(|p| p.y).max().unwrap_or(0) + 1);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="640" height="480" viewBox="0 0 640 480" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="640" height="480" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="320.00" y="28.00" text-anchor="middle" font-size="14">{}</text>"#, escape(title));

    // lattice
    for x in 0..=x_max {
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#ddd"/>"##,
            f.px(x), f.py(y_lo), f.px(x), f.py(y_hi)
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#, f.px(x), f.py(y_lo) + 18.0);
    }
    for y in y_lo..=y_hi {
        let _ = writeln!(
            s,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#ddd"/>"##,
            f.px(0), f.py(y), f.px(x_max), f.py(y)
        );
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{y}</text>"#, f.px(0) - 8.0, f.py(y) + 4.0);
    }

    // lower boundary
    let path: Vec<String> = np.hull.iter().map(|p| format!("{:.2},{:.2}", f.px(p.x as i64), f.py(p.y))).collect();
    let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="2"/>"##, path.join(" "));
    for (w, slope) in np.hull.windows(2).zip(&np.slopes) {
        let mx = (f.px(w[0].x as i64) + f.px(w[1].x as i64)) / 2.0;
        let my = (f.py(w[0].y) + f.py(w[1].y)) / 2.0;
        let _ = writeln!(
            s,
            r##"<text x="{mx:.2}" y="{:.2}" text-anchor="middle" fill="#1f4e9c">slope {} x{}</text>"##,
            my + 18.0,
            slope.value,
            slope.multiplicity
        );
    }

    for p in &np.points {
        let (cx, cy) = (f.px(p.x as i64), f.py(p.y));
        let _ = writeln!(s, r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}">({},{})</text>"#, cx + 6.0, cy - 6.0, p.x, p.y);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_canvas_and_exact_labels() {
        let np = NewtonPolygon::from_points(vec![PolygonPoint::new(0, -1), PolygonPoint::new(2, 0)]);
        let svg = render("T^2 - t", &np);
        assert!(svg.contains(r#"viewBox="0 0 640 480""#));
        assert!(svg.contains("slope 1/2 x2"));
        assert!(svg.contains("(0,-1)"));
        assert_eq!(svg, render("T^2 - t", &np));
    }

    #[test]
    fn title_is_escaped() {
        let np = NewtonPolygon::from_points(vec![PolygonPoint::new(1, 0)]);
        assert!(render("a<b & c", &np).contains("a&lt;b &amp; c"));
    }
}
