use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::FdError;
use crate::geometry::Polytope;
use crate::rational::{floor, from_f64_exact, to_f64, Rational};

/// Fewest interior nodes accepted by [`Grid::new`].
pub const MIN_NODES: usize = 100;

/// Interior nodes of a coordinate-uniform grid over a 1-D or 2-D polytope
/// whose frame is orthogonal.
///
/// Nodes sit at `lo + h (i, j)` in the polytope's own coordinates, so edges
/// along grid lines or diagonals of the frame pass exactly through nodes.
/// Membership is decided in exact arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    dim: usize,
    h: Rational,
    lo: Vec<Rational>,
    /// Euclidean step along each frame axis.
    steps: Vec<f64>,
    /// Axis that varies fastest in the node order.
    inner: usize,
    /// Per line of the outer axis: first inner index, count, first node.
    lines: Vec<(i64, usize, usize)>,
    nodes: usize,
}

impl Grid {
    pub fn new(p: &Polytope, h: f64) -> Result<Self, FdError> {
        let dim = p.dim();
        if dim == 0 || dim > 2 {
            return Err(FdError::NotPlanar(dim));
        }
        if !(h > 0.0) {
            return Err(FdError::InvalidArgument("grid spacing must be positive"));
        }
        let g = p.metric().diagonal_entries().ok_or(FdError::NonOrthogonalFrame)?;
        let h = from_f64_exact(h).ok_or(FdError::InvalidArgument("grid spacing must be finite"))?;
        let (lo, hi) = p.bounds();
        let lo: Vec<Rational> = lo.into_coords();
        let hi: Vec<Rational> = hi.into_coords();
        let counts: Vec<i64> = (0..dim)
            .map(|k| ceil_div(&(&hi[k] - &lo[k]), &h))
            .collect::<Option<_>>()
            .ok_or(FdError::InvalidArgument("grid is too large"))?;
        let inner = if dim == 2 && counts[1] < counts[0] { 1 } else { 0 };
        let outer = 1 - inner;
        let steps = g.iter().map(|gk| to_f64(&h) * libm::sqrt(to_f64(gk))).collect();

        let mut lines = Vec::new();
        let mut nodes = 0;
        let outer_count = if dim == 2 { counts[outer] + 1 } else { 1 };
        for j in 0..outer_count {
            let fixed = if dim == 2 {
                Some(&lo[outer] + &h * Rational::from_integer(j.into()))
            } else {
                None
            };
            let (first, count) = line_range(p, inner, fixed.as_ref(), &lo[inner], &h);
            lines.push((first, count, nodes));
            nodes += count;
        }
        if nodes < MIN_NODES {
            return Err(FdError::TooCoarse {
                nodes,
                required: MIN_NODES,
            });
        }
        Ok(Self {
            dim,
            h,
            lo,
            steps,
            inner,
            lines,
            nodes,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes
    }

    pub fn is_empty(&self) -> bool {
        self.nodes == 0
    }

    pub fn spacing(&self) -> &Rational {
        &self.h
    }

    /// Euclidean step along each frame axis.
    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    /// Node index at grid position `(inner, outer)`, if interior.
    fn index(&self, i: i64, j: i64) -> Option<usize> {
        let &(first, count, start) = self.lines.get(usize::try_from(j).ok()?)?;
        let k = i - first;
        (k >= 0 && (k as usize) < count).then(|| start + k as usize)
    }

    /// Grid positions `(inner, outer)` of all nodes in order.
    fn positions(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.lines
            .iter()
            .enumerate()
            .flat_map(|(j, &(first, count, _))| (0..count as i64).map(move |k| (first + k, j as i64)))
    }

    /// Frame coordinates of every node.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let h = to_f64(&self.h);
        let lo: Vec<f64> = self.lo.iter().map(to_f64).collect();
        self.positions()
            .map(|(i, j)| {
                let mut x = alloc::vec![0.0; self.dim];
                x[self.inner] = lo[self.inner] + h * i as f64;
                if self.dim == 2 {
                    x[1 - self.inner] = lo[1 - self.inner] + h * j as f64;
                }
                x
            })
            .collect()
    }

    /// `-Delta_h` with the `2 d + 1` point stencil and Dirichlet data by
    /// omission, in banded storage.
    pub fn laplacian(&self) -> Banded {
        let w: Vec<f64> = self.steps.iter().map(|s| 1.0 / (s * s)).collect();
        let diag = 2.0 * w.iter().sum::<f64>();
        let mut first = Vec::with_capacity(self.nodes);
        let mut entries = Vec::with_capacity(self.nodes);
        for (idx, (i, j)) in self.positions().enumerate() {
            let mut row = Vec::with_capacity(3);
            if let Some(k) = self.index(i - 1, j) {
                row.push((k, -w[self.inner]));
            }
            if self.dim == 2 {
                if let Some(k) = self.index(i, j - 1) {
                    row.push((k, -w[1 - self.inner]));
                }
            }
            row.push((idx, diag));
            first.push(row.iter().map(|e| e.0).min().unwrap_or(idx));
            entries.push(row);
        }
        Banded::from_lower(first, &entries)
    }
}

fn ceil_div(a: &Rational, h: &Rational) -> Option<i64> {
    let q = a / h;
    let f = floor(&q);
    let c = if Rational::from_integer(f.clone()) == q { f } else { f + 1 };
    c.to_i64()
}

/// Indices `i` with `lo + i h` strictly inside `p` on the line where the
/// other coordinate is `fixed`.
fn line_range(p: &Polytope, axis: usize, fixed: Option<&Rational>, lo: &Rational, h: &Rational) -> (i64, usize) {
    // open interval (l, u) of the free coordinate, None meaning unbounded
    let mut l: Option<Rational> = None;
    let mut u: Option<Rational> = None;
    for f in p.facets() {
        // slack = s (n . x - c) > 0 with s = +1 for >=, -1 for <=
        let s = match f.sense {
            crate::geometry::Sense::Ge => Rational::from_integer(1.into()),
            crate::geometry::Sense::Le => Rational::from_integer((-1).into()),
        };
        let n = f.plane.normal();
        let a = &s * &n[axis];
        let mut b = -(&s * f.plane.offset());
        if let Some(y) = fixed {
            b += &s * &n[1 - axis] * y;
        }
        if a.is_zero() {
            if !b.is_positive() {
                return (0, 0);
            }
            continue;
        }
        let t = -&b / &a;
        if a.is_positive() {
            if l.as_ref().map_or(true, |x| t > *x) {
                l = Some(t);
            }
        } else if u.as_ref().map_or(true, |x| t < *x) {
            u = Some(t);
        }
    }
    let (Some(l), Some(u)) = (l, u) else { return (0, 0) };
    if l >= u {
        return (0, 0);
    }
    let first: BigInt = floor(&((&l - lo) / h)) + 1;
    let ul = (&u - lo) / h;
    let fu = floor(&ul);
    let last: BigInt = if Rational::from_integer(fu.clone()) == ul { fu - 1 } else { fu };
    if last < first {
        return (0, 0);
    }
    let count = (&last - &first + BigInt::from(1)).to_usize().expect("line length fits");
    (first.to_i64().expect("index fits"), count)
}

/// Symmetric matrix stored as its lower envelope: row `i` holds columns
/// `first[i]..=i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Banded {
    first: Vec<usize>,
    start: Vec<usize>,
    values: Vec<f64>,
}

impl Banded {
    fn from_lower(first: Vec<usize>, rows: &[Vec<(usize, f64)>]) -> Self {
        let mut start = Vec::with_capacity(first.len() + 1);
        let mut total = 0;
        for (i, f) in first.iter().enumerate() {
            start.push(total);
            total += i - f + 1;
        }
        start.push(total);
        let mut values = alloc::vec![0.0; total];
        for (i, row) in rows.iter().enumerate() {
            for &(j, v) in row {
                values[start[i] + j - first[i]] = v;
            }
        }
        Self { first, start, values }
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.values[self.start[i]..self.start[i + 1]]
    }

    /// `y = A x`
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        y.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.len() {
            let f = self.first[i];
            let row = self.row(i);
            let (diag, off) = row.split_last().expect("row holds the diagonal");
            let mut acc = diag * x[i];
            for (k, a) in off.iter().enumerate() {
                if *a != 0.0 {
                    acc += a * x[f + k];
                    y[f + k] += a * x[i];
                }
            }
            y[i] += acc;
        }
    }

    /// Envelope Cholesky factor `L` with `A = L L^T`; `None` unless positive
    /// definite.
    pub fn cholesky(&self) -> Option<Banded> {
        let mut l = self.clone();
        for i in 0..l.len() {
            let fi = l.first[i];
            for j in fi..=i {
                let fj = l.first[j];
                let k0 = fi.max(fj);
                let (si, sj) = (l.start[i], l.start[j]);
                let mut s = l.values[si + j - fi];
                for k in k0..j {
                    s -= l.values[si + k - fi] * l.values[sj + k - fj];
                }
                if j == i {
                    if !(s > 0.0) {
                        return None;
                    }
                    l.values[si + i - fi] = libm::sqrt(s);
                } else {
                    l.values[si + j - fi] = s / l.values[sj + j - fj];
                }
            }
        }
        Some(l)
    }

    /// Solves `L L^T x = b` in place, `self` being the factor.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        let n = self.len();
        for i in 0..n {
            let f = self.first[i];
            let row = self.row(i);
            let mut s = b[i];
            for (k, a) in row[..row.len() - 1].iter().enumerate() {
                s -= a * b[f + k];
            }
            b[i] = s / row[row.len() - 1];
        }
        for i in (0..n).rev() {
            let f = self.first[i];
            let row = self.row(i);
            b[i] /= row[row.len() - 1];
            let bi = b[i];
            for (k, a) in row[..row.len() - 1].iter().enumerate() {
                b[f + k] -= a * bi;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::shapes;

    #[test]
    fn square_grid_counts() {
        let g = Grid::new(&shapes::unit_square(), 1.0 / 16.0).unwrap();
        assert_eq!(g.len(), 15 * 15);
        let g = Grid::new(&shapes::interval(int(0), int(1)), 1.0 / 512.0).unwrap();
        assert_eq!(g.len(), 511);
        assert_eq!(g.steps(), &[1.0 / 512.0]);
    }

    #[test]
    fn triangle_grid_excludes_edge_nodes() {
        // (0,0), (1,0), (1,1): interior nodes have 0 < y < x < 1
        let g = Grid::new(&shapes::isosceles_right_triangle(), 1.0 / 32.0).unwrap();
        assert_eq!(g.len(), 30 * 31 / 2);
        for p in g.points() {
            assert!(p[1] > 0.0 && p[1] < p[0] && p[0] < 1.0);
        }
    }

    #[test]
    fn frame_steps_follow_the_metric() {
        let g = Grid::new(&shapes::equilateral_triangle(), 1.0 / 64.0).unwrap();
        let s = g.steps();
        assert!((s[0] - 1.0 / 64.0).abs() < 1e-15);
        assert!((s[1] - libm::sqrt(3.0) / 64.0).abs() < 1e-15);
    }

    #[test]
    fn too_coarse_and_unsupported() {
        assert!(matches!(
            Grid::new(&shapes::unit_square(), 0.25),
            Err(FdError::TooCoarse { nodes: 9, .. })
        ));
        let cube = crate::geometry::Polytope::from_vertices(
            3,
            (0..8)
                .map(|m| crate::rational::RationalVector::from_ints(&[m & 1, (m >> 1) & 1, (m >> 2) & 1]))
                .collect(),
        )
        .unwrap();
        assert!(matches!(Grid::new(&cube, 0.1), Err(FdError::NotPlanar(3))));
    }

    #[test]
    fn cholesky_solves() {
        let g = Grid::new(&shapes::isosceles_right_triangle(), 1.0 / 20.0).unwrap();
        let a = g.laplacian();
        let l = a.cholesky().unwrap();
        let x: Vec<f64> = (0..a.len()).map(|i| libm::sin(i as f64)).collect();
        let mut b = alloc::vec![0.0; a.len()];
        a.mul_vec(&x, &mut b);
        l.solve_in_place(&mut b);
        for (u, v) in x.iter().zip(&b) {
            assert!((u - v).abs() < 1e-10);
        }
    }
}
