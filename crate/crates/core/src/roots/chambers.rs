use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::RootSystemError;
use crate::rational::{int, RationalMatrix, RationalVector};
use crate::roots::{weyl_group, RootSystem, WeylGroup};

/// An open Weyl chamber `{x : <r, x> > 0 for every wall root r}`.
///
/// For a system that does not span the ambient space the chamber is a cone
/// in the support times the orthogonal complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    /// Roots orthogonal to the walls, pointing into the chamber. These are
    /// the images of the simple roots, so the set is minimal.
    pub walls: Vec<RationalVector>,
    /// A point of the chamber.
    pub interior_point: RationalVector,
}

impl Chamber {
    pub fn contains(&self, r: &RootSystem, x: &RationalVector) -> bool {
        self.walls.iter().all(|w| r.metric().inner(w, x).is_positive())
    }

    /// Signs of `<v, x>` over the positive roots at the interior point; a
    /// chamber is determined by this pattern.
    pub fn sign_pattern(&self, r: &RootSystem) -> Vec<bool> {
        r.positive_roots()
            .iter()
            .map(|v| r.metric().inner(v, &self.interior_point).is_positive())
            .collect()
    }
}

/// Point of the support with `<a_i, x> = 1` for every simple root `a_i`.
pub fn dominant_point(r: &RootSystem) -> RationalVector {
    let simple = r.simple_roots();
    let n = simple.len();
    let gram = RationalMatrix::from_rows(
        &simple
            .iter()
            .map(|a| simple.iter().map(|b| r.metric().inner(a, b)).collect())
            .collect::<Vec<RationalVector>>(),
    );
    let ones: RationalVector = (0..n).map(|_| int(1)).collect();
    let c = gram.solve(&ones).expect("simple roots are independent");
    let mut x = RationalVector::zeros(r.ambient_dim());
    for (ci, a) in c.iter().zip(simple) {
        x = x.add_scaled(ci, a);
    }
    debug_assert!(simple.iter().all(|a| r.metric().inner(a, &x).is_one()));
    x
}

/// The chamber bounded by the simple roots, on whose closure every simple
/// root is nonnegative.
pub fn dominant_chamber(r: &RootSystem) -> Chamber {
    Chamber {
        walls: r.simple_roots().to_vec(),
        interior_point: dominant_point(r),
    }
}

/// The chamber containing `x`, or `None` if `x` is on a root hyperplane.
pub fn chamber_containing(r: &RootSystem, x: &RationalVector) -> Option<Chamber> {
    let mut positive = Vec::new();
    for v in r.positive_roots() {
        let s = r.metric().inner(v, x);
        if s.is_zero() {
            return None;
        }
        positive.push(if s.is_positive() { v.clone() } else { v.neg() });
    }
    positive.sort();
    let walls = positive
        .iter()
        .filter(|v| {
            !positive
                .iter()
                .any(|u| u != *v && positive.binary_search(&v.sub(u)).is_ok())
        })
        .cloned()
        .collect();
    Some(Chamber {
        walls,
        interior_point: x.clone(),
    })
}

/// All chambers, one per group element, in group order.
pub fn weyl_chambers(r: &RootSystem) -> Result<Vec<Chamber>, RootSystemError> {
    Ok(chambers_of(r, &weyl_group(r)?))
}

pub fn chambers_of(r: &RootSystem, w: &WeylGroup) -> Vec<Chamber> {
    let rho = dominant_point(r);
    w.elements()
        .iter()
        .map(|e| Chamber {
            walls: r.simple_roots().iter().map(|a| e.apply(a)).collect(),
            interior_point: e.apply(&rho),
        })
        .collect()
}
