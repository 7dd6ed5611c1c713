//! Exact rational geometry: inner products, hyperplanes, polytopes and lattices.

mod hyperplane;
mod lattice;
mod metric;
mod polytope;

pub use hyperplane::{reflect, AffineHyperplane, Halfspace, Sense};
pub use lattice::{dual_lattice, LatticeBasis};
pub use metric::{orthogonal_basis, Metric, SupportFrame};
pub use polytope::{
    affine_rank, box_f64, contains, polytope_from_halfspaces, polytope_from_vertices, Location, Polytope,
};
