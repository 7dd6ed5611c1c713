use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::spectra::TrigSum;

/// Polylines approximating the zero set of a function on a box.
#[derive(Clone, Debug, PartialEq)]
pub struct NodalSet {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub resolution: usize,
    pub polylines: Vec<Vec<[f64; 2]>>,
}

impl NodalSet {
    /// Width and height of one grid cell.
    pub fn cell(&self) -> [f64; 2] {
        let n = self.resolution as f64;
        [(self.hi[0] - self.lo[0]) / n, (self.hi[1] - self.lo[1]) / n]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64; 2]> {
        self.polylines.iter().flatten()
    }

    /// Distance from `p` to the nearest segment of any polyline.
    pub fn distance_to(&self, p: [f64; 2]) -> f64 {
        let mut best = f64::INFINITY;
        for line in &self.polylines {
            if line.len() == 1 {
                best = best.min(libm::hypot(p[0] - line[0][0], p[1] - line[0][1]));
            }
            for w in line.windows(2) {
                best = best.min(segment_distance(p, w[0], w[1]));
            }
        }
        best
    }
}

fn segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let len2 = d[0] * d[0] + d[1] * d[1];
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * d[0] + (p[1] - a[1]) * d[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    libm::hypot(p[0] - a[0] - t * d[0], p[1] - a[1] - t * d[1])
}

/// Edge of the sampling grid: horizontal from node `(i, j)` to `(i + 1, j)`,
/// or vertical from `(i, j)` to `(i, j + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    H(usize, usize),
    V(usize, usize),
}

/// Marching squares on a `resolution x resolution` cell grid over
/// `[lo, hi]`, applied to the real part of `u` (or the imaginary part when
/// that dominates). Saddle cells are split by the sign at the cell centre.
pub fn nodal_set_sample(u: &TrigSum, lo: [f64; 2], hi: [f64; 2], resolution: usize) -> NodalSet {
    assert_eq!(u.dim, 2, "nodal sets are sampled in the plane");
    let n = resolution.max(1);
    let dx = (hi[0] - lo[0]) / n as f64;
    let dy = (hi[1] - lo[1]) / n as f64;
    let at = |i: usize, j: usize| [lo[0] + dx * i as f64, lo[1] + dy * j as f64];
    let raw: Vec<Vec<num_complex::Complex64>> =
        (0..=n).map(|i| (0..=n).map(|j| u.evaluate(&at(i, j))).collect()).collect();
    let re = raw.iter().flatten().map(|v| v.re.abs()).fold(0.0, f64::max);
    let im = raw.iter().flatten().map(|v| v.im.abs()).fold(0.0, f64::max);
    let use_im = im > re;
    let part = |v: num_complex::Complex64| if use_im { v.im } else { v.re };
    let f: Vec<Vec<f64>> = raw.iter().map(|row| row.iter().map(|v| part(*v)).collect()).collect();

    let mut points: BTreeMap<Edge, [f64; 2]> = BTreeMap::new();
    let mut crossing = |e: Edge| {
        let ((i0, j0), (i1, j1)) = match e {
            Edge::H(i, j) => ((i, j), (i + 1, j)),
            Edge::V(i, j) => ((i, j), (i, j + 1)),
        };
        points.entry(e).or_insert_with(|| {
            let (a, b) = (f[i0][j0], f[i1][j1]);
            let t = if a == b { 0.5 } else { a / (a - b) };
            let (p, q) = (at(i0, j0), at(i1, j1));
            [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
        });
        e
    };
    let mut segments: Vec<(Edge, Edge)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let pos = |a: f64| a > 0.0;
            // corners counter-clockwise from (i, j)
            let c = [pos(f[i][j]), pos(f[i + 1][j]), pos(f[i + 1][j + 1]), pos(f[i][j + 1])];
            let (bottom, right, top, left) = (Edge::H(i, j), Edge::V(i + 1, j), Edge::H(i, j + 1), Edge::V(i, j));
            let code = c.iter().enumerate().fold(0u8, |m, (k, &b)| m | (u8::from(b) << k));
            let pairs: &[(Edge, Edge)] = match code {
                0 | 15 => &[],
                1 | 14 => &[(left, bottom)],
                2 | 13 => &[(bottom, right)],
                3 | 12 => &[(left, right)],
                4 | 11 => &[(right, top)],
                6 | 9 => &[(bottom, top)],
                7 | 8 => &[(left, top)],
                5 | 10 => {
                    let m = at(i, j);
                    let centre = pos(part(u.evaluate(&[m[0] + dx / 2.0, m[1] + dy / 2.0])));
                    // centre joins the corners of its own sign
                    if centre == c[0] {
                        &[(left, top), (bottom, right)]
                    } else {
                        &[(left, bottom), (right, top)]
                    }
                }
                _ => unreachable!(),
            };
            for &(a, b) in pairs {
                segments.push((crossing(a), crossing(b)));
            }
        }
    }
    NodalSet {
        lo,
        hi,
        resolution: n,
        polylines: chain(&segments, &points),
    }
}

/// Joins segments sharing an edge crossing into polylines.
fn chain(segments: &[(Edge, Edge)], points: &BTreeMap<Edge, [f64; 2]>) -> Vec<Vec<[f64; 2]>> {
    let mut incident: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(k);
        incident.entry(*b).or_default().push(k);
    }
    let mut used = alloc::vec![false; segments.len()];
    let mut lines = Vec::new();
    // open chains start at edges with a single segment; then closed loops
    let starts: Vec<usize> = incident
        .values()
        .filter(|v| v.len() == 1)
        .map(|v| v[0])
        .chain(0..segments.len())
        .collect();
    for s in starts {
        if used[s] {
            continue;
        }
        let (a, b) = segments[s];
        // orient so that `a` is a free end when there is one
        let (mut from, mut to) = if incident[&a].len() == 1 { (a, b) } else { (b, a) };
        let mut line = alloc::vec![points[&from], points[&to]];
        used[s] = true;
        let first = from;
        loop {
            let next = incident[&to].iter().copied().find(|&k| !used[k]);
            let Some(k) = next else { break };
            used[k] = true;
            let (p, q) = segments[k];
            from = to;
            to = if p == from { q } else { p };
            line.push(points[&to]);
            if to == first {
                break;
            }
        }
        lines.push(line);
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn fig8_nodal_set_contains_the_antidiagonal() {
        let u = TrigSum::sine(1.0, &[1.0, 0.0])
            .add(TrigSum::sine(1.0, &[0.0, 1.0]))
            .add(TrigSum::sine(1.0, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]));
        let s = nodal_set_sample(&u, [-8.0, -8.0], [8.0, 8.0], 200);
        let cell = s.cell()[0];
        for k in 0..=100 {
            let t = -8.0 + 16.0 * k as f64 / 100.0;
            assert!(s.distance_to([t, -t]) <= cell, "{t}");
        }
    }

    #[test]
    fn square_mode_two_one_has_the_midline() {
        // sin(2 pi x) sin(pi y) on the unit square
        let u = TrigSum::cosine(0.5, &[2.0 * PI, -PI]).add(TrigSum::cosine(-0.5, &[2.0 * PI, PI]));
        let s = nodal_set_sample(&u, [0.0, 0.0], [1.0, 1.0], 64);
        let cell = s.cell()[0];
        let interior: Vec<&[f64; 2]> = s
            .points()
            .filter(|p| p[0] > 2.0 * cell && p[0] < 1.0 - 2.0 * cell && p[1] > 2.0 * cell && p[1] < 1.0 - 2.0 * cell)
            .collect();
        assert!(!interior.is_empty());
        assert!(interior.iter().all(|p| (p[0] - 0.5).abs() < 1e-9));
    }

    #[test]
    fn circle_is_one_closed_loop() {
        // cos x + cos y = 3/2 is a closed curve around the origin
        let u = TrigSum::cosine(1.0, &[1.0, 0.0])
            .add(TrigSum::cosine(1.0, &[0.0, 1.0]))
            .add(TrigSum::cosine(-1.5, &[0.0, 0.0]));
        let s = nodal_set_sample(&u, [-2.0, -2.0], [2.0, 2.0], 41);
        assert_eq!(s.polylines.len(), 1);
        let line = &s.polylines[0];
        assert_eq!(line.first(), line.last());
    }
}
