use num_traits::{Signed, Zero};

use crate::error::GeometryError;
use crate::rational::{Rational, RationalVector};

/// The hyperplane `{x : normal . x = offset}`.
///
/// `normal` is a covector: the plain coordinate dot product is used, so the
/// hyperplane itself does not depend on any inner product.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineHyperplane {
    normal: RationalVector,
    offset: Rational,
}

impl AffineHyperplane {
    pub fn new(normal: RationalVector, offset: Rational) -> Result<Self, GeometryError> {
        if normal.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        Ok(Self { normal, offset })
    }

    /// Axis-aligned plane `x_axis = value`.
    pub fn axis(dim: usize, axis: usize, value: Rational) -> Self {
        Self {
            normal: RationalVector::unit(dim, axis),
            offset: value,
        }
    }

    pub fn normal(&self) -> &RationalVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `normal . x - offset`: zero on the plane, signed elsewhere.
    pub fn evaluate(&self, x: &RationalVector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.evaluate(x).is_zero()
    }

    /// Unoriented canonical form: leading normal coordinate equal to one.
    /// Two hyperplanes are the same set iff their canonical forms agree.
    pub fn canonical(&self) -> Self {
        let i = self.normal.leading_index().expect("nonzero normal");
        let s = self.normal[i].recip();
        Self {
            normal: self.normal.scale(&s),
            offset: &self.offset * &s,
        }
    }

    /// Oriented canonical form: leading normal coordinate of absolute value one.
    pub fn oriented_canonical(&self) -> Self {
        let i = self.normal.leading_index().expect("nonzero normal");
        let s = self.normal[i].abs().recip();
        Self {
            normal: self.normal.scale(&s),
            offset: &self.offset * &s,
        }
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: self.normal.neg(),
            offset: -self.offset.clone(),
        }
    }

    pub fn translated(&self, t: &RationalVector) -> Self {
        Self {
            normal: self.normal.clone(),
            offset: &self.offset + self.normal.dot(t),
        }
    }

    pub fn is_parallel(&self, other: &Self) -> bool {
        self.normal.direction_key() == other.normal.direction_key()
    }
}

/// Which side of the plane belongs to the half-space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sense {
    /// `normal . x <= offset`
    Le,
    /// `normal . x >= offset`
    Ge,
}

/// A closed half-space; the polytope interior satisfies the strict inequality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub plane: AffineHyperplane,
    pub sense: Sense,
}

impl Halfspace {
    pub fn new(plane: AffineHyperplane, sense: Sense) -> Self {
        Self { plane, sense }
    }

    /// `normal . x <= offset`
    pub fn le(normal: RationalVector, offset: Rational) -> Result<Self, GeometryError> {
        Ok(Self::new(AffineHyperplane::new(normal, offset)?, Sense::Le))
    }

    /// `normal . x >= offset`
    pub fn ge(normal: RationalVector, offset: Rational) -> Result<Self, GeometryError> {
        Ok(Self::new(AffineHyperplane::new(normal, offset)?, Sense::Ge))
    }

    /// Equivalent `<=` half-space with oriented-canonical scaling.
    pub fn normalized(&self) -> Self {
        let p = match self.sense {
            Sense::Le => self.plane.clone(),
            Sense::Ge => self.plane.flipped(),
        };
        Self::new(p.oriented_canonical(), Sense::Le)
    }

    /// Signed slack: positive strictly inside, zero on the plane.
    pub fn slack(&self, x: &RationalVector) -> Rational {
        match self.sense {
            Sense::Le => -self.plane.evaluate(x),
            Sense::Ge => self.plane.evaluate(x),
        }
    }

    pub fn satisfied_by(&self, x: &RationalVector) -> bool {
        !self.slack(x).is_negative()
    }
}

/// Mirror image of `x` in `h` under the Euclidean inner product.
pub fn reflect(x: &RationalVector, h: &AffineHyperplane) -> RationalVector {
    crate::geometry::Metric::euclidean(x.dim()).reflect(x, h)
}
