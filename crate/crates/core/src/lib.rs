//! Root systems, alcoves and strictly tessellating polytopes, with exact
//! Dirichlet spectra and an independent finite-difference cross-check.
//!
//! The crate is `no_std` and only needs `alloc`. All algebra is exact
//! (arbitrary-precision rationals and integers); floating point appears only
//! where functions are evaluated numerically ([`spectra::TrigSum`]) and in the
//! finite-difference oracle ([`fd`]).

#![no_std]

extern crate alloc;

pub mod alcoves;
pub mod crystallo;
pub mod error;
pub mod fd;
pub mod geometry;
pub mod rational;
pub mod roots;
pub mod shapes;
pub mod spectra;
pub mod tessellation;
