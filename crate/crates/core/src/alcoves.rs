//! Affine root hyperplane arrangements and their alcoves.
//!
//! Alcoves are full-dimensional, so they live in the coordinates of the
//! support frame of the root system (ambient coordinates when the system is
//! full rank). [`Alcove::frame`] converts back.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::RootSystemError;
use crate::geometry::{AffineHyperplane, Halfspace, Polytope, SupportFrame};
use crate::rational::{floor, int, Rational, RationalVector};
use crate::roots::{chamber_containing, dominant_point, Chamber, RootSystem};

/// The plane `{x : <root, x> = level}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    pub root: RationalVector,
    pub level: BigInt,
}

/// All hyperplanes `H_{v,k}`, `v` a root, `k` an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineArrangement {
    system: RootSystem,
    frame: SupportFrame,
}

impl AffineArrangement {
    pub fn new(r: &RootSystem) -> Self {
        let (system, frame) = r.in_frame();
        Self { system, frame }
    }

    /// The root system in frame coordinates.
    pub fn root_system(&self) -> &RootSystem {
        &self.system
    }

    pub fn frame(&self) -> &SupportFrame {
        &self.frame
    }

    pub fn plane(&self, wall: &Wall) -> AffineHyperplane {
        AffineHyperplane::new(
            self.system.metric().lower(&wall.root),
            Rational::from_integer(wall.level.clone()),
        )
        .expect("roots are nonzero")
    }

    /// Walls (with positive roots) meeting the open box `lo < x < hi`, in
    /// a deterministic order.
    pub fn walls_in(&self, lo: &RationalVector, hi: &RationalVector) -> Vec<Wall> {
        let mut out = Vec::new();
        for v in self.system.positive_roots() {
            let c = self.system.metric().lower(v);
            let (mut min, mut max) = (Rational::zero(), Rational::zero());
            for i in 0..c.dim() {
                let (a, b) = (&c[i] * &lo[i], &c[i] * &hi[i]);
                if a < b {
                    min += a;
                    max += b;
                } else {
                    min += b;
                    max += a;
                }
            }
            if min == max {
                continue;
            }
            // open range (min, max)
            let mut k = floor(&min) + BigInt::from(1);
            while Rational::from_integer(k.clone()) < max {
                out.push(Wall {
                    root: v.clone(),
                    level: k.clone(),
                });
                k += 1;
            }
        }
        out
    }

    pub fn planes_in(&self, lo: &RationalVector, hi: &RationalVector) -> Vec<AffineHyperplane> {
        self.walls_in(lo, hi).iter().map(|w| self.plane(w)).collect()
    }

    /// Walls through `x`, `x` in frame coordinates.
    pub fn walls_through(&self, x: &RationalVector) -> Vec<Wall> {
        self.system
            .positive_roots()
            .iter()
            .filter_map(|v| {
                let s = self.system.metric().inner(v, x);
                s.is_integer().then(|| Wall {
                    root: v.clone(),
                    level: s.to_integer(),
                })
            })
            .collect()
    }
}

/// A connected component of the complement of the arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alcove {
    /// The alcove in frame coordinates.
    pub polytope: Polytope,
    /// The Weyl chamber containing the alcove, in frame coordinates.
    pub chamber: Chamber,
    /// One wall per facet, in facet order, with positive roots.
    pub walls: Vec<Wall>,
    pub frame: SupportFrame,
}

impl Alcove {
    /// Vertices in ambient coordinates.
    pub fn ambient_vertices(&self) -> Vec<RationalVector> {
        self.polytope
            .vertices()
            .iter()
            .map(|v| self.frame.to_ambient(v))
            .collect()
    }
}

/// The alcove in the dominant chamber whose closure contains the origin.
pub fn fundamental_alcove(r: &RootSystem) -> Alcove {
    let arr = AffineArrangement::new(r);
    let sys = arr.root_system();
    let x = dominant_point(sys);
    let max = sys
        .positive_roots()
        .iter()
        .map(|v| sys.metric().inner(v, &x))
        .max()
        .expect("nonempty root system");
    // every positive root now takes values in (0, 1/2] on the seed
    let seed = x.scale(&(int(1) / (int(2) * max)));
    build(&arr, &seed).expect("seed avoids every wall")
}

/// The alcove containing the ambient point `x`.
pub fn alcove_at(r: &RootSystem, x: &RationalVector) -> Result<Alcove, RootSystemError> {
    let arr = AffineArrangement::new(r);
    let y = arr.frame.to_frame(x).ok_or(RootSystemError::OutsideSupport)?;
    build(&arr, &y)
}

fn build(arr: &AffineArrangement, x: &RationalVector) -> Result<Alcove, RootSystemError> {
    let on = arr.walls_through(x);
    if !on.is_empty() {
        return Err(RootSystemError::OnWall {
            walls: on
                .into_iter()
                .map(|w| (arr.frame.to_ambient(&w.root), w.level))
                .collect(),
        });
    }
    let sys = arr.root_system();
    let mut halfspaces = Vec::new();
    let mut candidates = Vec::new();
    for v in sys.positive_roots() {
        let k = floor(&sys.metric().inner(v, x));
        let c = sys.metric().lower(v);
        halfspaces.push(Halfspace::ge(c.clone(), Rational::from_integer(k.clone()))?);
        halfspaces.push(Halfspace::le(c, Rational::from_integer(&k + 1))?);
        candidates.push(Wall {
            root: v.clone(),
            level: k.clone(),
        });
        candidates.push(Wall {
            root: v.clone(),
            level: k + 1,
        });
    }
    let polytope = Polytope::from_halfspaces_in(sys.metric().clone(), halfspaces)?;
    let walls = polytope
        .facets()
        .iter()
        .map(|f| {
            let key = f.plane.canonical();
            candidates
                .iter()
                .find(|w| arr.plane(w).canonical() == key)
                .cloned()
                .expect("every facet comes from a wall")
        })
        .collect();
    let chamber = chamber_containing(sys, x).expect("x avoids the linear walls");
    Ok(Alcove {
        polytope,
        chamber,
        walls,
        frame: arr.frame.clone(),
    })
}

/// Whether the open polytope meets no wall of the arrangement.
pub fn avoids_all_walls(arr: &AffineArrangement, p: &Polytope) -> bool {
    let (lo, hi) = p.bounds();
    arr.planes_in(&lo, &hi).iter().all(|h| p.cut_by(h).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::roots::{standard_root_system, Family};
    use alloc::vec;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn interval() {
        let r = standard_root_system(Family::B, 1).unwrap();
        let a = fundamental_alcove(&r);
        assert_eq!(a.polytope.vertices(), &[v(&[0]), v(&[1])]);
        let b = alcove_at(&r, &RationalVector::new(vec![rat(7, 3)])).unwrap();
        assert_eq!(b.polytope.vertices(), &[v(&[2]), v(&[3])]);
        assert!(matches!(alcove_at(&r, &v(&[4])), Err(RootSystemError::OnWall { .. })));
    }

    #[test]
    fn b2_fundamental_alcove() {
        let b2 = standard_root_system(Family::B, 2).unwrap();
        let a = fundamental_alcove(&b2);
        let mut expected = vec![v(&[0, 0]), v(&[1, 0]), RationalVector::new(vec![rat(1, 2), rat(1, 2)])];
        expected.sort();
        assert_eq!(a.polytope.vertices(), expected.as_slice());
        assert_eq!(a.walls.len(), 3);
        let located = alcove_at(&b2, &RationalVector::new(vec![rat(1, 4), rat(1, 8)])).unwrap();
        assert_eq!(located.polytope, a.polytope);
    }

    #[test]
    fn b2_on_wall_names_the_wall() {
        let b2 = standard_root_system(Family::B, 2).unwrap();
        let x = RationalVector::new(vec![rat(1, 2), rat(1, 2)]);
        match alcove_at(&b2, &x) {
            Err(RootSystemError::OnWall { walls }) => {
                assert!(walls.contains(&(v(&[1, 1]), BigInt::from(1))));
            }
            other => panic!("expected on-wall error, got {other:?}"),
        }
    }

    fn squared_sides(p: &Polytope) -> Vec<Rational> {
        let vs = p.vertices();
        let mut d = vec![];
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                d.push(p.metric().distance_sq(&vs[i], &vs[j]));
            }
        }
        d.sort();
        d
    }

    #[test]
    fn triangle_shapes() {
        // G2: sides in ratio 1 : 3 : 4 (squared), the 30-60-90 triangle
        let g2 = standard_root_system(Family::G2, 2).unwrap();
        let d = squared_sides(&fundamental_alcove(&g2).polytope);
        assert_eq!(&d[1] / &d[0], int(3));
        assert_eq!(&d[2] / &d[0], int(4));
        // A2: equilateral
        let a2 = standard_root_system(Family::A, 2).unwrap();
        let d = squared_sides(&fundamental_alcove(&a2).polytope);
        assert!(d[0] == d[1] && d[1] == d[2]);
        assert_eq!(d[0], rat(2, 3));
        // B2: isosceles right
        let b2 = standard_root_system(Family::B, 2).unwrap();
        let d = squared_sides(&fundamental_alcove(&b2).polytope);
        assert_eq!(d, vec![rat(1, 2), rat(1, 2), int(1)]);
    }

    #[test]
    fn a2_alcove_in_ambient_coordinates() {
        let a2 = standard_root_system(Family::A, 2).unwrap();
        let a = fundamental_alcove(&a2);
        for p in a.ambient_vertices() {
            assert!(p.iter().fold(Rational::zero(), |s, c| s + c).is_zero());
        }
        let located = alcove_at(&a2, &a.frame.to_ambient(&a.polytope.barycenter())).unwrap();
        assert_eq!(located.polytope, a.polytope);
        assert_eq!(
            alcove_at(&a2, &v(&[1, 0, 0])).unwrap_err(),
            RootSystemError::OutsideSupport
        );
    }

    #[test]
    fn fundamental_alcoves_avoid_walls_and_neighbours_are_disjoint() {
        for (f, r) in [
            (Family::B, 1),
            (Family::A1xA1, 2),
            (Family::A, 2),
            (Family::B, 2),
            (Family::G2, 2),
            (Family::A, 3),
            (Family::B, 3),
        ] {
            let sys = standard_root_system(f, r).unwrap();
            let arr = AffineArrangement::new(&sys);
            let a = fundamental_alcove(&sys);
            assert!(avoids_all_walls(&arr, &a.polytope), "{f}{r}");
            if sys.components().len() == 1 {
                assert_eq!(a.walls.len(), r + 1, "{f}{r} simplex");
            }
            let neighbours: Vec<Polytope> = a
                .walls
                .iter()
                .map(|w| a.polytope.reflect(&arr.plane(w)))
                .collect();
            for (i, n) in neighbours.iter().enumerate() {
                assert!(avoids_all_walls(&arr, n));
                assert!(a.polytope.interior_intersection(n).is_none());
                for m in &neighbours[..i] {
                    assert!(m.interior_intersection(n).is_none());
                }
            }
        }
    }

    #[test]
    fn reducible_alcove_is_a_product() {
        let sys = standard_root_system(Family::A1xA1, 2).unwrap();
        let a = fundamental_alcove(&sys);
        assert_eq!(
            a.polytope.vertices(),
            &[v(&[0, 0]), v(&[0, 1]), v(&[1, 0]), v(&[1, 1])]
        );
        assert_eq!(a.walls.len(), 4);
    }
}
