//! SVG contour plots of the plane curves.
//!
//! The null conic `x1^2 + x2^2 + x3^2 = 0` has no real points in a real
//! chart, so curves are drawn on the real slice obtained by evaluating at
//! `(x1, i*x2, x3)` with real inputs; there the conic becomes
//! `x1^2 - x2^2 + x3^2 = 0` and the sextic of a real input polynomial takes
//! real values. Zero contours are sampled by marching squares. Purely
//! informational output.

use num::traits::ToPrimitive;

use sl2geom::poly::UnivariatePoly;
use sl2geom::ternary::TernaryForm;
use sl2geom::trope::{trope_sextic, PairingMode};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveKind {
    Conic,
    Sextic,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chart {
    X1,
    X2,
    X3,
}

impl Chart {
    pub fn parse(s: &str) -> Option<Chart> {
        match s.trim().to_lowercase().as_str() {
            "x1" | "x1=1" => Some(Chart::X1),
            "x2" | "x2=1" => Some(Chart::X2),
            "x3" | "x3=1" => Some(Chart::X3),
            _ => None,
        }
    }
}

/// Evaluate a form at the real-slice point of the chart: the two plot
/// coordinates fill the free slots, the chart coordinate is 1, and `x2`
/// carries the imaginary twist.
fn eval_real_slice(f: &[(u32, u32, u32, f64, f64)], chart: Chart, u: f64, v: f64) -> f64 {
    // x = (x1, x2, x3) with x2 contributing i^j
    let (x1, x2, x3) = match chart {
        Chart::X1 => (1.0, u, v),
        Chart::X2 => (u, 1.0, v),
        Chart::X3 => (u, v, 1.0),
    };
    let mut re = 0.0;
    for &(i, j, k, cre, cim) in f {
        let mag = x1.powi(i as i32) * x2.powi(j as i32) * x3.powi(k as i32);
        // multiply by i^j: cycle (re, im) -> (-im, re)
        let (tre, tim) = match j % 4 {
            0 => (cre, cim),
            1 => (-cim, cre),
            2 => (-cre, -cim),
            _ => (cim, -cre),
        };
        let _ = tim;
        re += tre * mag;
    }
    re
}

fn form_to_f64(form: &TernaryForm) -> Vec<(u32, u32, u32, f64, f64)> {
    form.terms()
        .map(|(&(i, j, k), c)| {
            (
                i,
                j,
                k,
                c.re.to_f64().unwrap_or(0.0),
                c.im.to_f64().unwrap_or(0.0),
            )
        })
        .collect()
}

type Segment = ((f64, f64), (f64, f64));

/// Marching-squares zero contour on `[-radius, radius]^2`; returns segments.
fn contour(
    f: &[(u32, u32, u32, f64, f64)],
    chart: Chart,
    radius: f64,
    n: usize,
) -> Vec<Segment> {
    let step = 2.0 * radius / (n as f64);
    let coord = |i: usize| -radius + step * i as f64;
    let mut grid = vec![vec![0.0f64; n + 1]; n + 1];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = eval_real_slice(f, chart, coord(i), coord(j));
        }
    }
    let mut segments = Vec::new();
    let lerp = |a: f64, b: f64, fa: f64, fb: f64| a + (b - a) * (fa / (fa - fb));
    for i in 0..n {
        for j in 0..n {
            let (x0, x1c, y0, y1) = (coord(i), coord(i + 1), coord(j), coord(j + 1));
            let corners = [
                (grid[i][j], (x0, y0), (x1c, y0), grid[i + 1][j]),
                (grid[i + 1][j], (x1c, y0), (x1c, y1), grid[i + 1][j + 1]),
                (grid[i + 1][j + 1], (x1c, y1), (x0, y1), grid[i][j + 1]),
                (grid[i][j + 1], (x0, y1), (x0, y0), grid[i][j]),
            ];
            let mut crossings: Vec<(f64, f64)> = Vec::new();
            for &(fa, (ax, ay), (bx, by), fb) in &corners {
                if !fa.is_finite() || !fb.is_finite() {
                    continue;
                }
                if (fa < 0.0) != (fb < 0.0) {
                    crossings.push((lerp(ax, bx, fa, fb), lerp(ay, by, fa, fb)));
                }
            }
            if crossings.len() >= 2 {
                segments.push((crossings[0], crossings[1]));
                if crossings.len() == 4 {
                    segments.push((crossings[2], crossings[3]));
                }
            }
        }
    }
    segments
}

fn path_for(segments: &[Segment], radius: f64, size: f64) -> String {
    let map = |x: f64| (x + radius) / (2.0 * radius) * size;
    let mut d = String::new();
    for ((ax, ay), (bx, by)) in segments {
        d.push_str(&format!(
            "M{:.2} {:.2}L{:.2} {:.2}",
            map(*ax),
            size - map(*ay),
            map(*bx),
            size - map(*by)
        ));
    }
    d
}

/// Render the selected curves for the sextic `p` into an SVG document.
pub fn render_svg(
    p: &UnivariatePoly,
    curve: CurveKind,
    chart: Chart,
    radius: f64,
) -> Result<String, sl2geom::CoreError> {
    let size = 640.0;
    let n = 200;
    let mut layers: Vec<(String, &str, &str)> = Vec::new();
    if curve != CurveKind::Sextic {
        let conic = {
            let mut f = TernaryForm::zero(2);
            f.set((2, 0, 0), sl2geom::ExactScalar::one());
            f.set((0, 2, 0), sl2geom::ExactScalar::one());
            f.set((0, 0, 2), sl2geom::ExactScalar::one());
            f
        };
        let segs = contour(&form_to_f64(&conic), chart, radius, n);
        layers.push((path_for(&segs, radius, size), "#2266cc", "conic"));
    }
    if curve != CurveKind::Conic {
        let s = trope_sextic(p, PairingMode::Literal)?;
        let segs = contour(&form_to_f64(&s), chart, radius, n);
        layers.push((path_for(&segs, radius, size), "#aa2222", "sextic"));
    }
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    ));
    svg.push_str(&format!(
        "<rect width=\"{size}\" height=\"{size}\" fill=\"white\" stroke=\"#888\"/>\n"
    ));
    for (i, (d, color, label)) in layers.iter().enumerate() {
        svg.push_str(&format!(
            "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.4\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"12\" y=\"{}\" fill=\"{color}\" font-family=\"monospace\" font-size=\"14\">{label}</text>\n",
            20 + 18 * i
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
