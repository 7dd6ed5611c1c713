use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::RootSystemError;
use crate::geometry::{orthogonal_basis, Metric, SupportFrame};
use crate::rational::{int, RationalMatrix, RationalVector};
use crate::roots::validate::{cartan_integer, validate_root_system, RootCandidate};

/// A validated, reduced, crystallographic root system.
///
/// Roots are kept sorted. The positive system is the lexicographic one
/// (first nonzero coordinate positive), which fixes the simple roots and the
/// dominant chamber deterministically. Derived systems (coroots, frame
/// coordinates) inherit the positive system of their source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    roots: Vec<RationalVector>,
    metric: Metric,
    support: Vec<RationalVector>,
    positive: Vec<RationalVector>,
    simple: Vec<RationalVector>,
}

impl RootSystem {
    pub fn new(candidate: RootCandidate) -> Result<Self, RootSystemError> {
        let report = validate_root_system(&candidate);
        if !report.all_passed() {
            return Err(RootSystemError::Invalid(Box::new(report)));
        }
        let positive = candidate.roots.iter().filter(|r| r.is_lex_positive()).cloned().collect();
        Ok(Self::from_parts(candidate.roots, candidate.metric, positive))
    }

    /// Assembles a system from already validated roots and a positive system.
    fn from_parts(mut roots: Vec<RationalVector>, metric: Metric, mut positive: Vec<RationalVector>) -> Self {
        roots.sort();
        roots.dedup();
        positive.sort();
        positive.dedup();
        let simple = simple_roots_of(&positive);
        let support = if simple.len() == metric.dim() {
            (0..metric.dim())
                .map(|i| RationalVector::unit(metric.dim(), i))
                .collect()
        } else {
            orthogonal_basis(&simple, &metric)
        };
        Self {
            roots,
            metric,
            support,
            positive,
            simple,
        }
    }

    /// Roots spanning Euclidean coordinate space.
    pub fn euclidean(roots: Vec<RationalVector>) -> Result<Self, RootSystemError> {
        Self::new(RootCandidate::euclidean(roots))
    }

    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn ambient_dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_dim()
    }

    /// Orthogonal basis of the span of the roots (unit vectors when full rank).
    pub fn support_basis(&self) -> &[RationalVector] {
        &self.support
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.positive
    }

    pub fn is_positive(&self, v: &RationalVector) -> bool {
        self.positive.binary_search(v).is_ok()
    }

    /// Simple roots of the positive system, in descending lexicographic order.
    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple
    }

    pub fn contains_root(&self, v: &RationalVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// `2 v / <v, v>`
    pub fn coroot(&self, v: &RationalVector) -> RationalVector {
        v.scale(&(int(2) / self.metric.norm_sq(v)))
    }

    /// The dual root system `{2v/<v,v>}`, with the positive system carried
    /// over.
    pub fn coroots(&self) -> RootSystem {
        let roots: Vec<RationalVector> = self.roots.iter().map(|v| self.coroot(v)).collect();
        let candidate = RootCandidate {
            roots: roots.clone(),
            metric: self.metric.clone(),
            support: (!self.is_full_rank()).then(|| self.support.clone()),
        };
        let report = validate_root_system(&candidate);
        assert!(report.all_passed(), "the dual of a root system is a root system: {report}");
        let positive = self.positive.iter().map(|v| self.coroot(v)).collect();
        Self::from_parts(roots, self.metric.clone(), positive)
    }

    pub fn cartan_integer(&self, u: &RationalVector, v: &RationalVector) -> crate::rational::Rational {
        cartan_integer(&self.metric, u, v)
    }

    /// Cartan matrix `A_ij = 2<a_i,a_j>/<a_j,a_j>` on the simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.simple
            .iter()
            .map(|a| {
                self.simple
                    .iter()
                    .map(|b| self.cartan_integer(a, b).to_integer().to_i64().unwrap())
                    .collect()
            })
            .collect()
    }

    /// Linear reflection matrix in the hyperplane orthogonal to `v`.
    pub fn reflection(&self, v: &RationalVector) -> RationalMatrix {
        self.metric.reflection_matrix(v)
    }

    /// Candidate for re-validation or serialization.
    pub fn to_candidate(&self) -> RootCandidate {
        RootCandidate {
            roots: self.roots.clone(),
            metric: self.metric.clone(),
            support: (!self.is_full_rank()).then(|| self.support.clone()),
        }
    }

    pub fn frame(&self) -> SupportFrame {
        SupportFrame::new(self.support.clone(), self.metric.clone())
    }

    /// The same system in coordinates of its support frame, where it is full
    /// rank, with the positive system carried over. Full-rank systems come
    /// back unchanged.
    pub fn in_frame(&self) -> (RootSystem, SupportFrame) {
        let frame = self.frame();
        if self.is_full_rank() {
            return (self.clone(), frame);
        }
        let map = |r: &RationalVector| frame.to_frame(r).expect("roots lie in their support");
        let roots = self.roots.iter().map(map).collect();
        let positive = self.positive.iter().map(map).collect();
        (Self::from_parts(roots, frame.metric(), positive), frame)
    }

    /// Partition of the roots into irreducible components.
    pub fn components(&self) -> Vec<Vec<RationalVector>> {
        let n = self.simple.len();
        let mut label: Vec<usize> = (0..n).collect();
        fn find(l: &mut [usize], i: usize) -> usize {
            let mut i = i;
            while l[i] != i {
                l[i] = l[l[i]];
                i = l[i];
            }
            i
        }
        for i in 0..n {
            for j in 0..i {
                if !self.metric.inner(&self.simple[i], &self.simple[j]).is_zero() {
                    let (a, b) = (find(&mut label, i), find(&mut label, j));
                    label[a] = b;
                }
            }
        }
        let mut groups: Vec<(usize, Vec<RationalVector>)> = Vec::new();
        for r in &self.roots {
            // a root belongs to the component of any simple root it is not orthogonal to
            let i = (0..n)
                .find(|&i| !self.metric.inner(r, &self.simple[i]).is_zero())
                .expect("roots are not orthogonal to every simple root");
            let c = find(&mut label, i);
            match groups.iter_mut().find(|(k, _)| *k == c) {
                Some((_, g)) => g.push(r.clone()),
                None => groups.push((c, vec![r.clone()])),
            }
        }
        groups.into_iter().map(|(_, g)| g).collect()
    }
}

/// Positive roots that are not a sum of two positive roots.
fn simple_roots_of(positive: &[RationalVector]) -> Vec<RationalVector> {
    let mut simple: Vec<RationalVector> = positive
        .iter()
        .filter(|&v| {
            !positive.iter().any(|u| {
                let d = v.sub(u);
                !d.is_zero() && positive.binary_search(&d).is_ok()
            })
        })
        .cloned()
        .collect();
    simple.sort();
    simple.reverse();
    simple
}

/// Inner products of simple roots are nonpositive in any base.
pub fn is_base(metric: &Metric, simple: &[RationalVector]) -> bool {
    simple.iter().enumerate().all(|(i, a)| {
        simple[..i]
            .iter()
            .all(|b| !metric.inner(a, b).is_positive())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{standard_root_system, Family};

    #[test]
    fn b2_simple_roots() {
        let b2 = standard_root_system(Family::B, 2).unwrap();
        assert_eq!(
            b2.simple_roots(),
            &[RationalVector::from_ints(&[1, -1]), RationalVector::from_ints(&[0, 1])]
        );
        assert!(is_base(b2.metric(), b2.simple_roots()));
        assert_eq!(b2.cartan_matrix(), vec![vec![2, -2], vec![-1, 2]]);
    }

    #[test]
    fn coroot_examples() {
        let b2 = standard_root_system(Family::B, 2).unwrap();
        assert_eq!(
            b2.coroot(&RationalVector::from_ints(&[1, 0])),
            RationalVector::from_ints(&[2, 0])
        );
        assert_eq!(
            b2.coroot(&RationalVector::from_ints(&[1, 1])),
            RationalVector::from_ints(&[1, 1])
        );
        let a2 = standard_root_system(Family::A, 2).unwrap();
        let r = RationalVector::from_ints(&[1, -1, 0]);
        assert_eq!(a2.coroot(&r), r);
    }

    #[test]
    fn components_of_products() {
        let a1a1 = standard_root_system(Family::A1xA1, 2).unwrap();
        assert_eq!(a1a1.components().len(), 2);
        let g2 = standard_root_system(Family::G2, 2).unwrap();
        assert_eq!(g2.components().len(), 1);
        let d2 = standard_root_system(Family::D, 2).unwrap();
        assert_eq!(d2.components().len(), 2);
    }

    #[test]
    fn frame_coordinates_of_a2() {
        let a2 = standard_root_system(Family::A, 2).unwrap();
        assert!(!a2.is_full_rank());
        let (f, frame) = a2.in_frame();
        assert!(f.is_full_rank());
        assert_eq!(f.roots().len(), 6);
        for r in f.roots() {
            assert_eq!(f.metric().norm_sq(r), int(2));
            assert!(a2.contains_root(&frame.to_ambient(r)));
        }
    }
}
