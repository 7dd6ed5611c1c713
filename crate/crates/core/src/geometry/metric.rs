use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::GeometryError;
use crate::geometry::AffineHyperplane;
use crate::rational::{int, Rational, RationalMatrix, RationalVector};

/// An exact inner product on coordinate space, `<u, v> = u^T G v`.
///
/// Shapes such as the equilateral triangle have no rational Euclidean
/// coordinates, but they do have rational coordinates in a non-orthonormal
/// frame. Every geometric object carries the Gram matrix of its frame so
/// that all lengths, angles and reflections stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    gram: RationalMatrix,
    inverse: RationalMatrix,
}

impl Metric {
    pub fn euclidean(dim: usize) -> Self {
        Self {
            gram: RationalMatrix::identity(dim),
            inverse: RationalMatrix::identity(dim),
        }
    }

    pub fn new(gram: RationalMatrix) -> Result<Self, GeometryError> {
        if !gram.is_symmetric() || !is_positive_definite(&gram) {
            return Err(GeometryError::NotPositiveDefinite);
        }
        let inverse = gram.inverse().ok_or(GeometryError::NotPositiveDefinite)?;
        Ok(Self { gram, inverse })
    }

    pub fn diagonal(entries: &[Rational]) -> Result<Self, GeometryError> {
        Self::new(RationalMatrix::diagonal(entries))
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn is_euclidean(&self) -> bool {
        self.gram == RationalMatrix::identity(self.dim())
    }

    /// Diagonal of the Gram matrix if the frame is orthogonal.
    pub fn diagonal_entries(&self) -> Option<Vec<Rational>> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.gram[(i, j)].is_zero() {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.gram[(i, i)].clone()).collect())
    }

    pub fn inner(&self, u: &RationalVector, v: &RationalVector) -> Rational {
        u.dot(&self.lower(v))
    }

    pub fn norm_sq(&self, v: &RationalVector) -> Rational {
        self.inner(v, v)
    }

    pub fn distance_sq(&self, a: &RationalVector, b: &RationalVector) -> Rational {
        self.norm_sq(&a.sub(b))
    }

    /// Covector `G v`, so that `<v, x> = (G v) . x`.
    pub fn lower(&self, v: &RationalVector) -> RationalVector {
        self.gram.mul_vec(v)
    }

    /// Vector `G^-1 c` representing the covector `c`.
    pub fn raise(&self, c: &RationalVector) -> RationalVector {
        self.inverse.mul_vec(c)
    }

    /// `c G^-1 c`, the squared length of a covector.
    pub fn dual_norm_sq(&self, c: &RationalVector) -> Rational {
        c.dot(&self.raise(c))
    }

    /// Mirror image of `x` in `h`, exact.
    pub fn reflect(&self, x: &RationalVector, h: &AffineHyperplane) -> RationalVector {
        let n = self.raise(h.normal());
        let s = int(2) * h.evaluate(x) / self.dual_norm_sq(h.normal());
        x.add_scaled(&-s, &n)
    }

    /// Matrix of the linear reflection `x -> x - 2 <v,x>/<v,v> v`.
    pub fn reflection_matrix(&self, v: &RationalVector) -> RationalMatrix {
        let n = v.dim();
        let gv = self.lower(v);
        let s = int(2) / self.norm_sq(v);
        let mut m = RationalMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                let d = &s * &v[i] * &gv[j];
                m[(i, j)] -= d;
            }
        }
        m
    }

    /// Lower-triangular `L` with `G = L L^T`, in floating point.
    pub fn cholesky_f64(&self) -> Vec<Vec<f64>> {
        let g = self.gram.to_f64();
        let n = g.len();
        let mut l = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = g[i][j];
                for k in 0..j {
                    s -= l[i][k] * l[j][k];
                }
                if i == j {
                    l[i][i] = libm::sqrt(s);
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        l
    }
}

/// Sylvester's criterion via exact Gaussian elimination without pivoting.
fn is_positive_definite(m: &RationalMatrix) -> bool {
    let n = m.rows();
    let mut a = m.clone();
    for c in 0..n {
        let pivot = a[(c, c)].clone();
        if !pivot.is_positive() {
            return false;
        }
        for i in c + 1..n {
            let f = &a[(i, c)] / &pivot;
            if f.is_zero() {
                continue;
            }
            for j in c..n {
                let v = &a[(c, j)] * &f;
                a[(i, j)] -= v;
            }
        }
    }
    true
}

/// Exact orthogonal basis of the span of `vectors` under `metric`, by
/// Gram-Schmidt in the given order.
pub fn orthogonal_basis(vectors: &[RationalVector], metric: &Metric) -> Vec<RationalVector> {
    let mut basis: Vec<RationalVector> = Vec::new();
    let mut norms: Vec<Rational> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (b, nb) in basis.iter().zip(&norms) {
            let c = metric.inner(&w, b) / nb;
            if !c.is_zero() {
                w = w.add_scaled(&-c, b);
            }
        }
        if !w.is_zero() {
            // clear denominators for tidier frames
            let l = crate::rational::lcm_of_denominators(w.iter());
            let w = w.scale(&Rational::from_integer(l));
            norms.push(metric.norm_sq(&w));
            basis.push(w);
        }
    }
    basis
}

/// Change of coordinates onto an orthogonal rational frame of a subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFrame {
    basis: Vec<RationalVector>,
    norms: Vec<Rational>,
    ambient: Metric,
}

impl SupportFrame {
    pub fn new(basis: Vec<RationalVector>, ambient: Metric) -> Self {
        let norms = basis.iter().map(|b| ambient.norm_sq(b)).collect();
        Self {
            basis,
            norms,
            ambient,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn basis(&self) -> &[RationalVector] {
        &self.basis
    }

    pub fn ambient_metric(&self) -> &Metric {
        &self.ambient
    }

    /// The induced metric in frame coordinates (diagonal).
    pub fn metric(&self) -> Metric {
        Metric::diagonal(&self.norms).expect("frame norms are positive")
    }

    /// Frame coordinates of `x`; `None` if `x` is outside the subspace.
    pub fn to_frame(&self, x: &RationalVector) -> Option<RationalVector> {
        let c: RationalVector = self
            .basis
            .iter()
            .zip(&self.norms)
            .map(|(b, n)| self.ambient.inner(x, b) / n)
            .collect();
        (self.to_ambient(&c) == *x).then_some(c)
    }

    pub fn to_ambient(&self, c: &RationalVector) -> RationalVector {
        let mut x = RationalVector::zeros(self.ambient.dim());
        for (ci, b) in c.iter().zip(&self.basis) {
            x = x.add_scaled(ci, b);
        }
        x
    }

    /// Ambient-by-frame matrix whose columns are the basis vectors.
    pub fn embedding_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(&self.basis)
    }

    pub fn is_identity(&self) -> bool {
        self.basis.len() == self.ambient.dim()
            && self
                .basis
                .iter()
                .enumerate()
                .all(|(i, b)| *b == RationalVector::unit(b.dim(), i))
            && self.norms.iter().all(One::is_one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rejects_indefinite() {
        let g = RationalMatrix::from_ints(&[&[1, 2], &[2, 1]]);
        assert_eq!(Metric::new(g), Err(GeometryError::NotPositiveDefinite));
        let g = RationalMatrix::from_ints(&[&[2, 1], &[1, 2]]);
        assert!(Metric::new(g).is_ok());
    }

    #[test]
    fn reflection_in_skew_frame_is_isometric() {
        let m = Metric::diagonal(&[int(1), int(3)]).unwrap();
        let h = AffineHyperplane::new(RationalVector::from_ints(&[1, 1]), int(2)).unwrap();
        let a = RationalVector::from_ints(&[0, 0]);
        let b = RationalVector::new(alloc::vec![rat(1, 3), rat(-2, 5)]);
        let ra = m.reflect(&a, &h);
        let rb = m.reflect(&b, &h);
        assert_eq!(m.distance_sq(&a, &b), m.distance_sq(&ra, &rb));
        assert_eq!(m.reflect(&ra, &h), a);
    }

    #[test]
    fn frame_round_trip() {
        let e = Metric::euclidean(3);
        let span = [
            RationalVector::from_ints(&[1, -1, 0]),
            RationalVector::from_ints(&[0, 1, -1]),
        ];
        let basis = orthogonal_basis(&span, &e);
        assert_eq!(basis.len(), 2);
        assert!(e.inner(&basis[0], &basis[1]).is_zero());
        let f = SupportFrame::new(basis, e);
        let x = RationalVector::from_ints(&[2, -1, -1]);
        let c = f.to_frame(&x).unwrap();
        assert_eq!(f.to_ambient(&c), x);
        assert!(f.to_frame(&RationalVector::from_ints(&[1, 0, 0])).is_none());
        assert_eq!(f.metric().norm_sq(&c), int(6));
    }
}
