//! Minimal deterministic SVG: fixed precision, fixed styling, no metadata.

use std::fmt::Write;

use alcove_core::fd::NodalSet;
use alcove_core::geometry::{AffineHyperplane, Metric, Polytope};
use alcove_core::rational::to_f64;
use alcove_core::tessellation::{Certificate, ReflectionClosure, Region};

const SIZE: f64 = 640.0;

/// Frame coordinates to Euclidean coordinates, `y = L^T x` with `G = L L^T`.
struct ToEuclid(Vec<Vec<f64>>);

impl ToEuclid {
    fn new(m: &Metric) -> Self {
        Self(m.cholesky_f64())
    }

    fn map(&self, x: &[f64]) -> [f64; 2] {
        let l = &self.0;
        [l[0][0] * x[0] + l[1][0] * x[1], l[1][1] * x[1]]
    }
}

struct Canvas {
    lo: [f64; 2],
    scale: f64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    /// A canvas showing the Euclidean box `[lo, hi]`, y axis pointing up.
    fn new(lo: [f64; 2], hi: [f64; 2]) -> Self {
        let w = (hi[0] - lo[0]).max(1e-12);
        let h = (hi[1] - lo[1]).max(1e-12);
        let scale = SIZE / w.max(h);
        Self {
            lo,
            scale,
            width: w * scale,
            height: h * scale,
            body: String::new(),
        }
    }

    fn pt(&self, p: [f64; 2]) -> String {
        let x = (p[0] - self.lo[0]) * self.scale;
        let y = self.height - (p[1] - self.lo[1]) * self.scale;
        format!("{x:.3},{y:.3}")
    }

    fn polygon(&mut self, pts: &[[f64; 2]], class: &str) {
        let s: Vec<String> = pts.iter().map(|p| self.pt(*p)).collect();
        let _ = writeln!(self.body, r#"<polygon class="{class}" points="{}"/>"#, s.join(" "));
    }

    fn polyline(&mut self, pts: &[[f64; 2]], class: &str) {
        let s: Vec<String> = pts.iter().map(|p| self.pt(*p)).collect();
        let _ = writeln!(self.body, r#"<polyline class="{class}" points="{}"/>"#, s.join(" "));
    }

    fn finish(self, style: &str) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.3} {:.3}\">\n<style>{style}</style>\n{}</svg>\n",
            self.width.ceil(),
            self.height.ceil(),
            self.width,
            self.height,
            self.body
        )
    }
}

fn cycle_euclid(p: &Polytope, t: &ToEuclid) -> Vec<[f64; 2]> {
    p.polygon_cycle().iter().map(|v| t.map(&v.to_f64())).collect()
}

/// The segment of the line `c . x = d` inside the frame box `[lo, hi]`.
fn clip_line(h: &AffineHyperplane, lo: &[f64], hi: &[f64]) -> Option<[[f64; 2]; 2]> {
    let c = h.normal().to_f64();
    let d = to_f64(h.offset());
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for (axis, other) in [(0usize, 1usize), (1, 0)] {
        if c[other].abs() < 1e-300 {
            continue;
        }
        for &fixed in &[lo[axis], hi[axis]] {
            let t = (d - c[axis] * fixed) / c[other];
            if t >= lo[other] - 1e-12 && t <= hi[other] + 1e-12 {
                let mut p = [0.0; 2];
                p[axis] = fixed;
                p[other] = t;
                pts.push(p);
            }
        }
    }
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    (pts.len() >= 2).then(|| [pts[0], pts[pts.len() - 1]])
}

fn region_box(region: &Region) -> (Vec<f64>, Vec<f64>) {
    (region.lo.to_f64(), region.hi.to_f64())
}

fn euclid_bounds(points: impl Iterator<Item = [f64; 2]>) -> ([f64; 2], [f64; 2]) {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    (lo, hi)
}

/// Copies of a 2-D closure as polygons; the seed is filled, and the plane of
/// a cut certificate, if given, is drawn in red across the region.
pub fn closure_svg(c: &ReflectionClosure, certificate: Option<&Certificate>) -> String {
    assert_eq!(c.seed.dim(), 2, "closure SVG needs a 2-D polytope");
    let t = ToEuclid::new(c.seed.metric());
    let (lo, hi) = region_box(&c.region);
    let corners = [[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]];
    let copies: Vec<Vec<[f64; 2]>> = c.copies.iter().map(|k| cycle_euclid(&k.polytope, &t)).collect();
    let (blo, bhi) = euclid_bounds(copies.iter().flatten().copied().chain(corners.iter().map(|p| t.map(p))));
    let mut canvas = Canvas::new(blo, bhi);
    let region: Vec<[f64; 2]> = corners.iter().map(|p| t.map(p)).collect();
    canvas.polygon(&region, "region");
    for (i, poly) in copies.iter().enumerate() {
        canvas.polygon(poly, if i == 0 { "seed" } else { "copy" });
    }
    if let Some(Certificate::PlaneCut { plane, .. }) = certificate {
        if let Some([a, b]) = clip_line(plane, &lo, &hi) {
            canvas.polyline(&[t.map(&a), t.map(&b)], "cut");
        }
    }
    canvas.finish(
        ".region{fill:none;stroke:#999;stroke-dasharray:4}.seed{fill:#9cf;stroke:#000;stroke-width:1}\
         .copy{fill:none;stroke:#000;stroke-width:0.5}.cut{fill:none;stroke:#d00;stroke-width:2}",
    )
}

/// Nodal polylines in the sampling box, plus an optional domain outline
/// given by Euclidean vertices in boundary order.
pub fn nodal_svg(s: &NodalSet, outline: Option<&[[f64; 2]]>) -> String {
    let mut canvas = Canvas::new(s.lo, s.hi);
    canvas.polygon(&[s.lo, [s.hi[0], s.lo[1]], s.hi, [s.lo[0], s.hi[1]]], "box");
    if let Some(o) = outline {
        canvas.polygon(o, "domain");
    }
    for line in &s.polylines {
        canvas.polyline(line, "nodal");
    }
    canvas.finish(
        ".box{fill:none;stroke:#999}.domain{fill:#eef;stroke:#000}.nodal{fill:none;stroke:#d00;stroke-width:1}",
    )
}

/// A single polygon with its vertices, for `alcove build` and shapes.
pub fn polygon_svg(p: &Polytope) -> String {
    let t = ToEuclid::new(p.metric());
    let pts = cycle_euclid(p, &t);
    let (lo, hi) = euclid_bounds(pts.iter().copied());
    let pad = 0.05 * (hi[0] - lo[0]).max(hi[1] - lo[1]);
    let mut canvas = Canvas::new([lo[0] - pad, lo[1] - pad], [hi[0] + pad, hi[1] + pad]);
    canvas.polygon(&pts, "seed");
    canvas.finish(".seed{fill:#9cf;stroke:#000;stroke-width:1}")
}

/// Euclidean vertices of a polygon in boundary order.
pub fn euclidean_outline(p: &Polytope) -> Vec<[f64; 2]> {
    cycle_euclid(p, &ToEuclid::new(p.metric()))
}

