use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rational::RationalVector;
use crate::roots::ValidationReport;
use crate::tessellation::StrictnessVerdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

/// Why a vertex or half-space description does not bound a full-dimensional polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneracy {
    /// The points span an affine subspace of dimension `rank < dim`.
    AffineRank { rank: usize, dim: usize },
    /// The half-spaces admit this recession direction.
    Unbounded { direction: RationalVector },
    /// The half-spaces have no full-dimensional intersection.
    EmptyInterior,
    /// Input coordinates do not match the declared dimension.
    Dimension { expected: usize, found: usize },
}

impl core::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Degeneracy::AffineRank { rank, dim } => {
                write!(f, "points span an affine subspace of dimension {rank} < {dim}")
            }
            Degeneracy::Unbounded { direction } => {
                write!(f, "half-spaces are unbounded along {direction}")
            }
            Degeneracy::EmptyInterior => f.write_str("half-spaces have empty interior"),
            Degeneracy::Dimension { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("invalid hyperplane: normal vector is zero")]
    ZeroNormal,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate polytope: {0}")]
    Degenerate(Degeneracy),
    #[error("lattice generators have rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize },
    #[error("inner product matrix is not symmetric positive definite")]
    NotPositiveDefinite,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootSystemError {
    #[error("candidate violates root system axioms: {0}")]
    Invalid(Box<ValidationReport>),
    #[error("unsupported family {family} with rank {rank}")]
    Unsupported { family: String, rank: usize },
    #[error("Weyl group closure exceeded {cap} elements")]
    ClosureCap { cap: usize },
    #[error("point lies on {} wall(s), first <{}, x> = {}", walls.len(), walls[0].0, walls[0].1)]
    OnWall { walls: Vec<(RationalVector, BigInt)> },
    #[error("point is not in the support of the root system")]
    OutsideSupport,
    #[error("{0} is not in the weight lattice")]
    NotAWeight(RationalVector),
    #[error("{weight} lies on the chamber wall of {root}")]
    OnChamberWall {
        weight: RationalVector,
        root: RationalVector,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TessellationError {
    #[error("polytope does not strictly tessellate: {0:?}")]
    NotStrict(Box<StrictnessVerdict>),
    #[error("no vertex carries a wall in every direction")]
    NoSpecialVertex,
    #[error("parallel planes with normal {0} are not evenly spaced")]
    UnevenSpacing(RationalVector),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FdError {
    #[error("grid has {nodes} interior nodes, need at least {required}")]
    TooCoarse { nodes: usize, required: usize },
    #[error("finite differences need a 1-D or 2-D domain, got dimension {0}")]
    NotPlanar(usize),
    #[error("finite differences need an orthogonal coordinate frame (diagonal Gram matrix)")]
    NonOrthogonalFrame,
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("eigensolver did not reach tolerance after {0} restarts")]
    NoConvergence(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalloError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected an even integer >= 6, got {0}")]
    NotEvenAtLeastSix(u64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix has determinant {0}, not +1 or -1")]
    NotUnimodular(String),
    #[error("{m} is not an order in GL({n}, Z)")]
    NotAnOrder { m: u64, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
