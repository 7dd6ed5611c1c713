//! Finite-difference oracle: Dirichlet eigenvalues on grids, pointwise PDE
//! residuals and marching-squares nodal lines.
//!
//! Nothing here shares code with the exact spectra, apart from evaluating a
//! [`TrigSum`].

mod grid;
mod nodal;
mod solver;

use alloc::vec::Vec;

pub use grid::{Banded, Grid, MIN_NODES};
pub use nodal::{nodal_set_sample, NodalSet};
pub use solver::{smallest_eigenvalues, SolverOptions};

use crate::error::FdError;
use crate::geometry::Polytope;
use crate::rational::RationalVector;
use crate::spectra::TrigSum;

/// Largest `count` accepted by [`fd_spectrum`].
pub const MAX_COUNT: usize = 20;

/// Approximate Dirichlet eigenvalues of a polygon or interval, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct FdSpectrum {
    pub eigenvalues: Vec<f64>,
    pub h: f64,
    pub nodes: usize,
    /// Vertices of the domain, identifying it.
    pub polygon: Vec<RationalVector>,
}

/// The `count` smallest eigenvalues of `-Delta_h` on the interior nodes of
/// `p` at coordinate spacing `h`.
///
/// `p` must be 1-D or 2-D with a diagonal Gram matrix. Euclidean steps are
/// `h sqrt(g_kk)`.
pub fn fd_spectrum(p: &Polytope, h: f64, count: usize) -> Result<FdSpectrum, FdError> {
    fd_spectrum_with(p, h, count, &SolverOptions::default())
}

pub fn fd_spectrum_with(p: &Polytope, h: f64, count: usize, opts: &SolverOptions) -> Result<FdSpectrum, FdError> {
    if count == 0 || count > MAX_COUNT {
        return Err(FdError::InvalidArgument("count must be between 1 and 20"));
    }
    let grid = Grid::new(p, h)?;
    let a = grid.laplacian();
    let eigenvalues = smallest_eigenvalues(&a, count, opts)?;
    Ok(FdSpectrum {
        eigenvalues,
        h,
        nodes: grid.len(),
        polygon: p.vertices().to_vec(),
    })
}

/// `|Delta_h u(x) + lambda u(x)|` with the `2 d + 1` point stencil, so zero
/// in the limit for `-Delta u = lambda u`.
pub fn pde_residual(u: &TrigSum, lambda: f64, x: &[f64], h: f64) -> f64 {
    let centre = u.evaluate(x);
    let mut lap = num_complex::Complex64::new(0.0, 0.0);
    let mut p = x.to_vec();
    for k in 0..x.len() {
        p[k] = x[k] + h;
        let plus = u.evaluate(&p);
        p[k] = x[k] - h;
        let minus = u.evaluate(&p);
        p[k] = x[k];
        lap += (plus + minus - centre * 2.0) / (h * h);
    }
    (lap + centre * lambda).norm()
}

/// Least-squares slope of `log e` against `log h`: the observed order of
/// convergence.
pub fn convergence_order(hs: &[f64], errors: &[f64]) -> f64 {
    assert_eq!(hs.len(), errors.len());
    let xs: Vec<f64> = hs.iter().map(|h| libm::log(*h)).collect();
    let ys: Vec<f64> = errors.iter().map(|e| libm::log(*e)).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::shapes;
    use core::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn unit_square_first_eigenvalue() {
        let s = fd_spectrum(&shapes::unit_square(), 1.0 / 128.0, 3).unwrap();
        let exact = 2.0 * PI * PI;
        assert!((s.eigenvalues[0] - exact).abs() / exact < 0.01);
        // (1,2) and (2,1)
        assert!((s.eigenvalues[1] - 5.0 * PI * PI).abs() / (5.0 * PI * PI) < 0.01);
        assert!((s.eigenvalues[1] - s.eigenvalues[2]).abs() < 1e-6);
    }

    #[test]
    fn interval_first_eigenvalue() {
        let s = fd_spectrum(&shapes::interval(int(0), int(1)), 1.0 / 512.0, 4).unwrap();
        for (k, e) in s.eigenvalues.iter().enumerate() {
            let exact = ((k + 1) as f64 * PI).powi(2);
            assert!((e - exact).abs() / exact < 0.005);
        }
        // the discrete spectrum is known in closed form
        let h = 1.0 / 512.0;
        let discrete = 4.0 / (h * h) * libm::sin(PI * h / 2.0).powi(2);
        assert!((s.eigenvalues[0] - discrete).abs() < 1e-8 * discrete);
    }

    #[test]
    fn second_order_on_the_isosceles_triangle() {
        // legs 1: lambda_1 = 5 pi^2
        let exact = 5.0 * PI * PI;
        let hs = [1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0];
        let errs: Vec<f64> = hs
            .iter()
            .map(|&h| (fd_spectrum(&shapes::isosceles_right_triangle(), h, 1).unwrap().eigenvalues[0] - exact).abs())
            .collect();
        let order = convergence_order(&hs, &errs);
        assert!((1.8..=2.2).contains(&order), "{order}");
    }

    #[test]
    fn sub_polygon_has_larger_first_eigenvalue() {
        let sq = fd_spectrum(&shapes::unit_square(), 1.0 / 64.0, 1).unwrap().eigenvalues[0];
        let tri = fd_spectrum(&shapes::isosceles_right_triangle(), 1.0 / 64.0, 1).unwrap().eigenvalues[0];
        let rect = fd_spectrum(&shapes::rectangle(int(1), rat(1, 2)), 1.0 / 64.0, 1).unwrap().eigenvalues[0];
        assert!(sq < tri && sq < rect);
    }

    #[test]
    fn deterministic_for_a_seed() {
        let p = shapes::equilateral_triangle();
        let a = fd_spectrum(&p, 1.0 / 32.0, 4).unwrap();
        let b = fd_spectrum(&p, 1.0 / 32.0, 4).unwrap();
        assert_eq!(a, b);
        let other = SolverOptions {
            seed: 99,
            ..SolverOptions::default()
        };
        let c = fd_spectrum_with(&p, 1.0 / 32.0, 4, &other).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&c.eigenvalues) {
            assert!((x - y).abs() < 1e-6 * x);
        }
    }

    #[test]
    fn argument_errors() {
        assert!(fd_spectrum(&shapes::unit_square(), 1.0 / 64.0, 0).is_err());
        assert!(fd_spectrum(&shapes::unit_square(), 1.0 / 64.0, 21).is_err());
        assert!(matches!(
            fd_spectrum(&shapes::unit_square(), 0.5, 1),
            Err(FdError::TooCoarse { .. })
        ));
    }

    fn fig8() -> TrigSum {
        TrigSum::sine(1.0, &[1.0, 0.0])
            .add(TrigSum::sine(1.0, &[0.0, 1.0]))
            .add(TrigSum::sine(1.0, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]))
    }

    #[test]
    fn residual_order_for_the_fig8_function() {
        let u = fig8();
        let hs = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0];
        let x = [0.7, 1.9];
        let r: Vec<f64> = hs.iter().map(|&h| pde_residual(&u, 1.0, &x, h)).collect();
        let order = convergence_order(&hs, &r);
        assert!((order - 2.0).abs() < 0.1, "{order}");
        assert_eq!(pde_residual(&TrigSum::zero(2), 3.0, &x, 0.01), 0.0);
    }

    #[test]
    fn residual_order_for_the_square_eigenfunction() {
        // sin(pi x) sin(pi y) = (cos(pi (x - y)) - cos(pi (x + y))) / 2
        let u = TrigSum::cosine(0.5, &[PI, -PI]).add(TrigSum::cosine(-0.5, &[PI, PI]));
        let x = [0.3, 0.4];
        let direct = libm::sin(PI * 0.3) * libm::sin(PI * 0.4);
        assert!((u.evaluate_re(&x) - direct).abs() < 1e-15);
        let hs = [1.0 / 64.0, 1.0 / 128.0, 1.0 / 256.0];
        let r: Vec<f64> = hs.iter().map(|&h| pde_residual(&u, 2.0 * PI * PI, &x, h)).collect();
        assert!((convergence_order(&hs, &r) - 2.0).abs() < 0.1);
    }
}
