//! Exact Dirichlet spectra of alcoves and their trigonometric eigenfunctions.
//!
//! Eigenvalues are `4 pi^2 |q|^2` for weights `q` of the dual of the coroot
//! lattice lying strictly inside the dominant Weyl chamber; the eigenfunction
//! for `q` is the alternating sum of `e^{2 pi i <w q, x>}` over the Weyl group.

mod eigen;
mod enumerate;
mod trig;
mod verify;

pub use eigen::{eigenfunction, eigenfunction_on_alcove, eigenvalue_of};
pub use enumerate::{coroot_lattice, isosceles_right_closed_form, spectrum, weight_lattice, Cutoff, SpectrumEntry};
pub use trig::{Neumaier, TrigSum, TrigTerm};
pub use verify::{interior_samples, laplacian_fd, verify_eigenpair, VerificationReport, VerifyOptions};
