//! Real slices of a line arrangement as SVG.
//!
//! A complex line `a z + b w + c = 0` meets the real plane in a line, a
//! single point, or nothing. Euclidean slices use `z = x + i y`, `w = x − i y`;
//! Minkowski slices use `z = x + y`, `w = x − y`. Double lines are drawn as
//! two contiguous strokes; lines without real points are drawn dashed along
//! the real part of their equation, with a note.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::classify::{LineArrangement, RealForm};

const SIZE: f64 = 400.0;
const EXTENT: f64 = 4.0;
const EPS: f64 = 1e-12;

/// What a complex line leaves in the real plane.
#[derive(Clone, Debug, PartialEq)]
pub enum RealSlice {
    /// `p x + q y + r = 0`.
    Line([f64; 3]),
    Point([f64; 2]),
    /// No real points; carries the real part of the equation.
    Empty([f64; 3]),
}

/// Real slice of `a z + b w + c = 0` under the chosen real form.
pub fn real_slice(form: [Complex64; 3], which: RealForm) -> RealSlice {
    let [a, b, c] = form;
    let i = Complex64::new(0.0, 1.0);
    let (alpha, beta) = match which {
        RealForm::Euclidean => (a + b, i * (a - b)),
        RealForm::Minkowski => (a + b, a - b),
    };
    let re = [alpha.re, beta.re, c.re];
    let im = [alpha.im, beta.im, c.im];
    let det = re[0] * im[1] - re[1] * im[0];
    let scale = [alpha.norm(), beta.norm(), c.norm()].into_iter().fold(1e-300, f64::max);
    if det.abs() > EPS * scale * scale {
        let x = (re[1] * im[2] - im[1] * re[2]) / det;
        let y = (im[0] * re[2] - re[0] * im[2]) / det;
        return RealSlice::Point([x, y]);
    }
    // the xy parts are proportional; pick the stronger row
    let norm2 = |r: &[f64; 3]| r[0].hypot(r[1]);
    let (main, other) = if norm2(&re) >= norm2(&im) { (re, im) } else { (im, re) };
    let k = if norm2(&main) > 0.0 { (other[0] * main[0] + other[1] * main[1]) / (main[0].powi(2) + main[1].powi(2)) } else { 0.0 };
    let resid = other[2] - k * main[2];
    if resid.abs() <= EPS * scale * 1e3 {
        RealSlice::Line(main)
    } else {
        RealSlice::Empty(main)
    }
}

fn to_px(x: f64, y: f64) -> (f64, f64) {
    ((x + EXTENT) / (2.0 * EXTENT) * SIZE, (EXTENT - y) / (2.0 * EXTENT) * SIZE)
}

/// Segment of `p x + q y + r = 0` inside the viewing square.
fn clip(l: [f64; 3]) -> Option<((f64, f64), (f64, f64))> {
    let [p, q, r] = l;
    let n = p.hypot(q);
    if n == 0.0 {
        return None;
    }
    let (x0, y0) = (-p * r / (n * n), -q * r / (n * n));
    let (dx, dy) = (-q / n, p / n);
    let (mut lo, mut hi) = (-1e9f64, 1e9f64);
    for (o, d) in [(x0, dx), (y0, dy)] {
        if d.abs() < 1e-15 {
            if o.abs() > EXTENT {
                return None;
            }
        } else {
            let (t1, t2) = ((-EXTENT - o) / d, (EXTENT - o) / d);
            lo = lo.max(t1.min(t2));
            hi = hi.min(t1.max(t2));
        }
    }
    (lo < hi).then(|| ((x0 + lo * dx, y0 + lo * dy), (x0 + hi * dx, y0 + hi * dy)))
}

fn line_el(out: &mut String, a: (f64, f64), b: (f64, f64), offset: (f64, f64), extra: &str) {
    let (pa, pb) = (to_px(a.0, a.1), to_px(b.0, b.1));
    let _ = writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"{extra}/>"#,
        pa.0 + offset.0,
        pa.1 + offset.1,
        pb.0 + offset.0,
        pb.1 + offset.1
    );
}

/// SVG drawing of the real slice of `arr`; `None` draws an empty frame for
/// points without lines (degenerate or constant `D`).
pub fn arrangement_svg(arr: Option<&LineArrangement>, which: RealForm, title: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"  <rect width="{SIZE}" height="{SIZE}" fill="white" stroke="gray"/>"#);
    let slice = match which {
        RealForm::Euclidean => "euclidean",
        RealForm::Minkowski => "minkowski",
    };
    let _ = writeln!(out, r#"  <text x="6" y="16" font-size="12">{} ({slice} slice)</text>"#, escape(title));
    let mut notes = Vec::new();
    let factors = arr.map(|a| a.factors.as_slice()).unwrap_or(&[]);
    if factors.is_empty() {
        notes.push("no lines".to_string());
    }
    for (f, m) in factors {
        let name = f.to_string();
        match real_slice(f.to_c64(), which) {
            RealSlice::Line(l) => {
                let Some((a, b)) = clip(l) else {
                    notes.push(format!("{name}: outside view"));
                    continue;
                };
                let _ = writeln!(out, r#"  <g class="line" data-form="{}" data-multiplicity="{m}">"#, escape(&name));
                if *m >= 2 {
                    // two contiguous strokes, offset across the line
                    let n = l[0].hypot(l[1]);
                    let (ox, oy) = (l[0] / n * 1.5, -l[1] / n * 1.5);
                    line_el(&mut out, a, b, (ox, oy), "");
                    line_el(&mut out, a, b, (-ox, -oy), "");
                } else {
                    line_el(&mut out, a, b, (0.0, 0.0), "");
                }
                let _ = writeln!(out, "  </g>");
            }
            RealSlice::Point([x, y]) => {
                let (px, py) = to_px(x, y);
                let _ = writeln!(
                    out,
                    r#"  <circle class="point" data-form="{}" data-multiplicity="{m}" cx="{px:.2}" cy="{py:.2}" r="3"/>"#,
                    escape(&name)
                );
                notes.push(format!("{name}: one real point"));
            }
            RealSlice::Empty(l) => {
                if let Some((a, b)) = clip(l) {
                    let _ = writeln!(out, r#"  <g class="line no-real-points" data-form="{}" data-multiplicity="{m}">"#, escape(&name));
                    line_el(&mut out, a, b, (0.0, 0.0), r#" stroke-dasharray="6 4""#);
                    let _ = writeln!(out, "  </g>");
                }
                notes.push(format!("{name}: no real points (dashed)"));
            }
        }
    }
    for (k, n) in notes.iter().enumerate() {
        let _ = writeln!(out, r#"  <text x="6" y="{}" font-size="11">{}</text>"#, SIZE - 8.0 - 14.0 * k as f64, escape(n));
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::factor_cubic;
    use crate::exact::{BiPoly, GaussRat};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn slices() {
        // z + w = 2 is the line x = 1 in both slices
        assert_eq!(real_slice([c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)], RealForm::Euclidean), RealSlice::Line([2.0, 0.0, -2.0]));
        // z = 1 is an isotropic line in the Euclidean slice
        assert_eq!(real_slice([c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)], RealForm::Euclidean), RealSlice::Point([1.0, 0.0]));
        assert!(matches!(real_slice([c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)], RealForm::Minkowski), RealSlice::Line(_)));
        // z + w = i has no real points in either slice
        assert!(matches!(real_slice([c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)], RealForm::Minkowski), RealSlice::Empty(_)));
    }

    #[test]
    fn double_line_has_two_strokes() {
        let d = BiPoly::linear(GaussRat::one(), GaussRat::zero(), GaussRat::zero()).pow(2);
        let arr = factor_cubic(&d).unwrap();
        let svg = arrangement_svg(Some(&arr), RealForm::Minkowski, "z^2");
        assert_eq!(svg.matches("<line ").count(), 2);
        assert!(svg.contains(r#"data-multiplicity="2""#));
        let empty = arrangement_svg(None, RealForm::Minkowski, "degenerate");
        assert_eq!(empty.matches("<line ").count(), 0);
        assert!(empty.contains("no lines"));
    }
}
