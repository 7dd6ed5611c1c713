use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Degeneracy, GeometryError};
use crate::geometry::{AffineHyperplane, Halfspace, Metric, Sense};
use crate::rational::{combinations, int, rank_of, to_f64, Rational, RationalMatrix, RationalVector};

/// Where a point sits relative to a polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// A bounded open convex polytope with synchronized half-space and vertex
/// descriptions.
///
/// Facets are stored as normalized `<=` half-spaces, one per facet, sorted.
/// Vertices are the extreme points, sorted lexicographically; the sorted
/// vertex list is a canonical key for the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    metric: Metric,
    facets: Vec<Halfspace>,
    vertices: Vec<RationalVector>,
}

impl Polytope {
    pub fn from_vertices(dim: usize, points: Vec<RationalVector>) -> Result<Self, GeometryError> {
        Self::from_vertices_in(Metric::euclidean(dim), points)
    }

    pub fn from_halfspaces(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self, GeometryError> {
        Self::from_halfspaces_in(Metric::euclidean(dim), halfspaces)
    }

    /// Convex hull of `points` in a frame with the given inner product.
    /// Non-extreme input points are dropped.
    pub fn from_vertices_in(metric: Metric, mut points: Vec<RationalVector>) -> Result<Self, GeometryError> {
        let dim = metric.dim();
        if dim == 0 {
            return Err(degenerate(Degeneracy::AffineRank { rank: 0, dim }));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(degenerate(Degeneracy::Dimension {
                expected: dim,
                found: p.dim(),
            }));
        }
        points.sort();
        points.dedup();
        let rank = affine_rank(&points);
        if rank < dim {
            return Err(degenerate(Degeneracy::AffineRank { rank, dim }));
        }

        let mut facets = BTreeSet::new();
        for subset in combinations(points.len(), dim) {
            let rows: Vec<RationalVector> = subset
                .iter()
                .map(|&i| {
                    let mut r = points[i].clone().into_coords();
                    r.push(int(-1));
                    RationalVector::new(r)
                })
                .collect();
            let ns = RationalMatrix::from_rows(&rows).nullspace();
            if ns.len() != 1 {
                continue;
            }
            let mut coords = ns[0].clone().into_coords();
            let offset = coords.pop().unwrap();
            let normal = RationalVector::new(coords);
            if normal.is_zero() {
                continue;
            }
            let plane = AffineHyperplane::new(normal, offset)?;
            let (mut below, mut above) = (false, false);
            for p in &points {
                let v = plane.evaluate(p);
                below |= v.is_negative();
                above |= v.is_positive();
                if below && above {
                    break;
                }
            }
            match (below, above) {
                (_, false) => facets.insert(Halfspace::new(plane, Sense::Le).normalized()),
                (false, true) => facets.insert(Halfspace::new(plane, Sense::Ge).normalized()),
                _ => continue,
            };
        }
        let facets: Vec<Halfspace> = facets.into_iter().collect();

        let vertices: Vec<RationalVector> = points
            .into_iter()
            .filter(|p| {
                let normals: Vec<RationalVector> = facets
                    .iter()
                    .filter(|f| f.plane.contains(p))
                    .map(|f| f.plane.normal().clone())
                    .collect();
                rank_of(&normals) == dim
            })
            .collect();
        Ok(Self {
            dim,
            metric,
            facets,
            vertices,
        })
    }

    /// Intersection of closed half-spaces; redundant constraints are dropped.
    pub fn from_halfspaces_in(metric: Metric, halfspaces: Vec<Halfspace>) -> Result<Self, GeometryError> {
        let dim = metric.dim();
        if let Some(h) = halfspaces.iter().find(|h| h.plane.dim() != dim) {
            return Err(degenerate(Degeneracy::Dimension {
                expected: dim,
                found: h.plane.dim(),
            }));
        }
        let hs: Vec<Halfspace> = halfspaces.iter().map(Halfspace::normalized).collect();
        if let Some(direction) = recession_direction(dim, &hs) {
            return Err(degenerate(Degeneracy::Unbounded { direction }));
        }
        let mut vertices = BTreeSet::new();
        for subset in combinations(hs.len(), dim) {
            let a = RationalMatrix::from_rows(
                &subset
                    .iter()
                    .map(|&i| hs[i].plane.normal().clone())
                    .collect::<Vec<_>>(),
            );
            let b: RationalVector = subset.iter().map(|&i| hs[i].plane.offset().clone()).collect();
            if let Some(x) = a.solve(&b) {
                if hs.iter().all(|h| h.satisfied_by(&x)) {
                    vertices.insert(x);
                }
            }
        }
        let vertices: Vec<RationalVector> = vertices.into_iter().collect();
        if vertices.is_empty() || affine_rank(&vertices) < dim {
            return Err(degenerate(Degeneracy::EmptyInterior));
        }
        Self::from_vertices_in(metric, vertices)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn facet_planes(&self) -> impl Iterator<Item = &AffineHyperplane> {
        self.facets.iter().map(|f| &f.plane)
    }

    pub fn contains(&self, x: &RationalVector) -> Location {
        let mut boundary = false;
        for f in &self.facets {
            let s = f.slack(x);
            if s.is_negative() {
                return Location::Outside;
            }
            boundary |= s.is_zero();
        }
        if boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn facet_vertices(&self, facet: usize) -> Vec<&RationalVector> {
        let plane = &self.facets[facet].plane;
        self.vertices.iter().filter(|v| plane.contains(v)).collect()
    }

    pub fn barycenter(&self) -> RationalVector {
        let n = Rational::from_integer(self.vertices.len().into());
        let mut s = RationalVector::zeros(self.dim);
        for v in &self.vertices {
            s = s.add(v);
        }
        s.scale(&n.recip())
    }

    /// Exact axis-aligned bounding box `(lo, hi)`.
    pub fn bounds(&self) -> (RationalVector, RationalVector) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for i in 0..self.dim {
                if v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
        }
        (lo, hi)
    }

    pub fn bounds_f64(&self) -> (Vec<f64>, Vec<f64>) {
        let (lo, hi) = self.bounds();
        (lo.to_f64(), hi.to_f64())
    }

    /// Mirror image across `h` under this polytope's inner product.
    pub fn reflect(&self, h: &AffineHyperplane) -> Self {
        let mut vertices: Vec<RationalVector> =
            self.vertices.iter().map(|v| self.metric.reflect(v, h)).collect();
        vertices.sort();
        let c = h.normal();
        let cc = self.metric.dual_norm_sq(c);
        let gc = self.metric.raise(c);
        let mut facets: Vec<Halfspace> = self
            .facets
            .iter()
            .map(|f| {
                // a.sigma(x) <= b  <=>  (a - mu c).x <= b - mu d
                let a = f.plane.normal();
                let mu = int(2) * a.dot(&gc) / &cc;
                let normal = a.add_scaled(&-mu.clone(), c);
                let offset = f.plane.offset() - &mu * h.offset();
                Halfspace::new(
                    AffineHyperplane::new(normal, offset).expect("reflection preserves normals"),
                    Sense::Le,
                )
                .normalized()
            })
            .collect();
        facets.sort();
        Self {
            dim: self.dim,
            metric: self.metric.clone(),
            facets,
            vertices,
        }
    }

    pub fn translate(&self, t: &RationalVector) -> Self {
        let mut facets: Vec<Halfspace> = self
            .facets
            .iter()
            .map(|f| Halfspace::new(f.plane.translated(t), f.sense).normalized())
            .collect();
        facets.sort();
        Self {
            dim: self.dim,
            metric: self.metric.clone(),
            facets,
            vertices: self.vertices.iter().map(|v| v.add(t)).collect(),
        }
    }

    /// Two vertices strictly on opposite sides of `h`, if `h` meets the interior.
    pub fn cut_by(&self, h: &AffineHyperplane) -> Option<(RationalVector, RationalVector)> {
        let mut lo = None;
        let mut hi = None;
        for v in &self.vertices {
            let s = h.evaluate(v);
            if s.is_negative() && lo.is_none() {
                lo = Some(v.clone());
            } else if s.is_positive() && hi.is_none() {
                hi = Some(v.clone());
            }
            if lo.is_some() && hi.is_some() {
                return Some((lo.unwrap(), hi.unwrap()));
            }
        }
        None
    }

    /// A point interior to both polytopes, or `None` if the interiors are
    /// disjoint.
    pub fn interior_intersection(&self, other: &Self) -> Option<RationalVector> {
        // a facet plane of either polytope with the other entirely outside separates them
        if separated_by_facet(self, other) || separated_by_facet(other, self) {
            return None;
        }
        let mut hs = self.facets.clone();
        hs.extend(other.facets.iter().cloned());
        let both = Self::from_halfspaces_in(self.metric.clone(), hs).ok()?;
        let w = both.barycenter();
        debug_assert_eq!(self.contains(&w), Location::Interior);
        Some(w)
    }

    /// Squared distances between all vertex pairs.
    pub fn distance_matrix(&self) -> Vec<Vec<Rational>> {
        self.vertices
            .iter()
            .map(|a| self.vertices.iter().map(|b| self.metric.distance_sq(a, b)).collect())
            .collect()
    }

    /// Exact congruence test: some bijection of vertex sets preserves all
    /// pairwise squared distances.
    pub fn is_congruent(&self, other: &Self) -> bool {
        if self.dim != other.dim || self.vertices.len() != other.vertices.len() {
            return false;
        }
        let a = self.distance_matrix();
        let b = other.distance_matrix();
        let mut sa: Vec<Rational> = a.iter().flatten().cloned().collect();
        let mut sb: Vec<Rational> = b.iter().flatten().cloned().collect();
        sa.sort();
        sb.sort();
        if sa != sb {
            return false;
        }
        let mut assignment = Vec::with_capacity(a.len());
        let mut used = vec![false; a.len()];
        match_vertices(&a, &b, &mut assignment, &mut used)
    }

    /// For a 2-D polytope, vertices in boundary order.
    pub fn polygon_cycle(&self) -> Vec<RationalVector> {
        assert_eq!(self.dim, 2, "polygon_cycle needs a 2-D polytope");
        let n = self.vertices.len();
        let mut order = vec![0usize];
        let mut prev_facet = usize::MAX;
        while order.len() < n {
            let cur = &self.vertices[*order.last().unwrap()];
            let (fi, f) = self
                .facets
                .iter()
                .enumerate()
                .find(|(i, f)| *i != prev_facet && f.plane.contains(cur))
                .expect("every vertex lies on two edges");
            let next = (0..n)
                .find(|&j| !order.contains(&j) && f.plane.contains(&self.vertices[j]))
                .expect("edge has two endpoints");
            prev_facet = fi;
            order.push(next);
        }
        order.into_iter().map(|i| self.vertices[i].clone()).collect()
    }

    /// Vertices mapped to Euclidean floating coordinates `y = L^T x`, where
    /// `G = L L^T`.
    pub fn euclidean_vertices_f64(&self) -> Vec<Vec<f64>> {
        let l = self.metric.cholesky_f64();
        self.vertices
            .iter()
            .map(|v| {
                let x = v.to_f64();
                (0..self.dim)
                    .map(|i| (i..self.dim).map(|k| l[k][i] * x[k]).sum())
                    .collect()
            })
            .collect()
    }
}

fn separated_by_facet(a: &Polytope, b: &Polytope) -> bool {
    a.facets
        .iter()
        .any(|f| b.vertices.iter().all(|v| !f.slack(v).is_positive()))
}

fn match_vertices(
    a: &[Vec<Rational>],
    b: &[Vec<Rational>],
    assignment: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let i = assignment.len();
    if i == a.len() {
        return true;
    }
    for j in 0..b.len() {
        if used[j] {
            continue;
        }
        if assignment
            .iter()
            .enumerate()
            .all(|(k, &jk)| a[i][k] == b[j][jk])
        {
            used[j] = true;
            assignment.push(j);
            if match_vertices(a, b, assignment, used) {
                return true;
            }
            assignment.pop();
            used[j] = false;
        }
    }
    false
}

fn degenerate(d: Degeneracy) -> GeometryError {
    GeometryError::Degenerate(d)
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank(points: &[RationalVector]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Vec<RationalVector> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    rank_of(&diffs)
}

/// A nonzero `r` with `normal . r <= 0` for every (normalized `<=`) half-space.
fn recession_direction(dim: usize, hs: &[Halfspace]) -> Option<RationalVector> {
    let in_cone = |r: &RationalVector| hs.iter().all(|h| !h.plane.normal().dot(r).is_positive());
    let normals: Vec<RationalVector> = hs.iter().map(|h| h.plane.normal().clone()).collect();
    if rank_of(&normals) < dim {
        let a = if normals.is_empty() {
            RationalMatrix::zeros(1, dim)
        } else {
            RationalMatrix::from_rows(&normals)
        };
        return a.nullspace().into_iter().next();
    }
    // pointed cone: any nonzero cone has an extreme ray cut out by dim-1 constraints
    if dim == 1 {
        return [RationalVector::from_ints(&[1]), RationalVector::from_ints(&[-1])]
            .into_iter()
            .find(|r| in_cone(r));
    }
    for subset in combinations(normals.len(), dim - 1) {
        let rows: Vec<RationalVector> = subset.iter().map(|&i| normals[i].clone()).collect();
        let ns = RationalMatrix::from_rows(&rows).nullspace();
        if ns.len() != 1 {
            continue;
        }
        for r in [ns[0].clone(), ns[0].neg()] {
            if in_cone(&r) {
                return Some(r);
            }
        }
    }
    None
}

pub fn polytope_from_vertices(dim: usize, vertices: Vec<RationalVector>) -> Result<Polytope, GeometryError> {
    Polytope::from_vertices(dim, vertices)
}

pub fn polytope_from_halfspaces(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Polytope, GeometryError> {
    Polytope::from_halfspaces(dim, halfspaces)
}

pub fn contains(p: &Polytope, x: &RationalVector) -> Location {
    p.contains(x)
}

/// Float coordinates of a rational box, handy for plotting.
pub fn box_f64(lo: &RationalVector, hi: &RationalVector) -> (Vec<f64>, Vec<f64>) {
    (lo.iter().map(to_f64).collect(), hi.iter().map(to_f64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn triangle_from_vertices() {
        let t = Polytope::from_vertices(2, vec![v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(t.facets().len(), 3);
        assert_eq!(t.vertices().len(), 3);
        let q = RationalVector::new(vec![rat(1, 4), rat(1, 4)]);
        assert_eq!(t.contains(&q), Location::Interior);
        assert_eq!(t.contains(&v(&[1, 0])), Location::Boundary);
        assert_eq!(t.contains(&v(&[1, 1])), Location::Outside);
    }

    #[test]
    fn collinear_points_are_degenerate() {
        let err = Polytope::from_vertices(2, vec![v(&[0, 0]), v(&[1, 0]), v(&[2, 0])]).unwrap_err();
        assert_eq!(
            err,
            GeometryError::Degenerate(Degeneracy::AffineRank { rank: 1, dim: 2 })
        );
    }

    #[test]
    fn square_from_halfspaces() {
        let hs = vec![
            Halfspace::ge(v(&[1, 0]), int(0)).unwrap(),
            Halfspace::le(v(&[1, 0]), int(1)).unwrap(),
            Halfspace::ge(v(&[0, 1]), int(0)).unwrap(),
            Halfspace::le(v(&[0, 1]), int(1)).unwrap(),
            // redundant
            Halfspace::le(v(&[1, 1]), int(5)).unwrap(),
        ];
        let s = Polytope::from_halfspaces(2, hs).unwrap();
        assert_eq!(
            s.vertices(),
            &[v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]
        );
        assert_eq!(s.facets().len(), 4);
    }

    #[test]
    fn unbounded_and_empty() {
        let hs = vec![
            Halfspace::ge(v(&[1, 0]), int(0)).unwrap(),
            Halfspace::ge(v(&[0, 1]), int(0)).unwrap(),
        ];
        assert!(matches!(
            Polytope::from_halfspaces(2, hs),
            Err(GeometryError::Degenerate(Degeneracy::Unbounded { .. }))
        ));
        let hs = vec![
            Halfspace::ge(v(&[1]), int(2)).unwrap(),
            Halfspace::le(v(&[1]), int(1)).unwrap(),
        ];
        assert_eq!(
            Polytope::from_halfspaces(1, hs),
            Err(GeometryError::Degenerate(Degeneracy::EmptyInterior))
        );
    }

    #[test]
    fn interior_point_dropped() {
        let s = Polytope::from_vertices(
            2,
            vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2]), v(&[2, 2]), v(&[1, 1]), v(&[1, 0])],
        )
        .unwrap();
        assert_eq!(s.vertices().len(), 4);
    }

    #[test]
    fn reflection_matches_rebuilt_hull() {
        let t = Polytope::from_vertices(2, vec![v(&[0, 0]), v(&[2, 0]), v(&[1, 3])]).unwrap();
        let h = AffineHyperplane::new(v(&[1, 2]), int(1)).unwrap();
        let r = t.reflect(&h);
        let rebuilt = Polytope::from_vertices(2, r.vertices().to_vec()).unwrap();
        assert_eq!(r, rebuilt);
        assert!(r.is_congruent(&t));
    }

    #[test]
    fn overlap_witness() {
        let a = Polytope::from_vertices(2, vec![v(&[0, 0]), v(&[2, 0]), v(&[0, 2])]).unwrap();
        let b = a.translate(&v(&[1, 0]));
        let w = a.interior_intersection(&b).unwrap();
        assert_eq!(a.contains(&w), Location::Interior);
        assert_eq!(b.contains(&w), Location::Interior);
        let c = a.translate(&v(&[2, 0]));
        assert!(a.interior_intersection(&c).is_none());
        // touching only at a vertex, not separated by a facet of either
        let d = Polytope::from_vertices(2, vec![v(&[0, 0]), v(&[-1, -2]), v(&[-2, -1])]).unwrap();
        assert!(a.interior_intersection(&d).is_none());
    }

    #[test]
    fn polygon_order() {
        let s = Polytope::from_vertices(2, vec![v(&[0, 0]), v(&[1, 1]), v(&[1, 0]), v(&[0, 1])]).unwrap();
        let c = s.polygon_cycle();
        for i in 0..4 {
            let a = &c[i];
            let b = &c[(i + 1) % 4];
            assert_eq!(s.metric().distance_sq(a, b), int(1));
        }
    }

    #[test]
    fn congruence_in_skew_frame() {
        // equilateral triangle with side 2 in a frame with Gram diag(1, 3)
        let m = Metric::diagonal(&[int(1), int(3)]).unwrap();
        let a = Polytope::from_vertices_in(m.clone(), vec![v(&[0, 0]), v(&[2, 0]), v(&[1, 1])]).unwrap();
        let b = Polytope::from_vertices_in(m, vec![v(&[0, 0]), v(&[-2, 0]), v(&[-1, 1])]).unwrap();
        assert!(a.is_congruent(&b));
        let dm = a.distance_matrix();
        assert_eq!(dm[0][1], int(4));
        assert_eq!(dm[0][2], int(4));
        assert_eq!(dm[1][2], int(4));
    }
}
