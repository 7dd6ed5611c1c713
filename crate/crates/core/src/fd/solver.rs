use alloc::vec::Vec;

use nalgebra::{DMatrix, SymmetricEigen};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::FdError;
use crate::fd::grid::Banded;

/// Stopping rule and seed for [`smallest_eigenvalues`].
#[derive(Clone, Debug, PartialEq)]
pub struct SolverOptions {
    /// Required `|A x - theta x| / theta` for every wanted Ritz pair.
    pub tol: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iterations: 2000,
            seed: 7,
        }
    }
}

/// The `count` smallest eigenvalues of a symmetric positive definite matrix,
/// by block inverse iteration with Rayleigh-Ritz on an envelope Cholesky
/// factorization.
pub fn smallest_eigenvalues(a: &Banded, count: usize, opts: &SolverOptions) -> Result<Vec<f64>, FdError> {
    let n = a.len();
    if count == 0 || count > n {
        return Err(FdError::InvalidArgument("eigenvalue count must be between 1 and the node count"));
    }
    let l = a.cholesky().ok_or(FdError::InvalidArgument("matrix is not positive definite"))?;
    let p = (2 * count + 4).min(n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut x: Vec<Vec<f64>> = (0..p)
        .map(|_| {
            (0..n)
                .map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
                .collect()
        })
        .collect();
    let mut ax = alloc::vec![0.0; n];
    for _ in 0..opts.max_iterations {
        for v in &mut x {
            l.solve_in_place(v);
        }
        orthonormalize(&mut x);
        // Rayleigh-Ritz
        let products: Vec<Vec<f64>> = x
            .iter()
            .map(|v| {
                a.mul_vec(v, &mut ax);
                ax.clone()
            })
            .collect();
        let h = DMatrix::from_fn(p, p, |i, j| dot(&x[i], &products[j]));
        let h = (&h + h.transpose()) * 0.5;
        let eig = SymmetricEigen::new(h);
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let theta: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let combine = |basis: &[Vec<f64>], k: usize| -> Vec<f64> {
            let mut out = alloc::vec![0.0; n];
            for (i, b) in basis.iter().enumerate() {
                let c = eig.eigenvectors[(i, k)];
                for (o, v) in out.iter_mut().zip(b) {
                    *o += c * v;
                }
            }
            out
        };
        let ritz: Vec<Vec<f64>> = order.iter().map(|&k| combine(&x, k)).collect();
        let converged = (0..count).all(|k| {
            let ar = combine(&products, order[k]);
            let r: f64 = ar
                .iter()
                .zip(&ritz[k])
                .map(|(u, v)| (u - theta[k] * v) * (u - theta[k] * v))
                .sum();
            libm::sqrt(r) <= opts.tol * theta[k].abs()
        });
        x = ritz;
        if converged {
            return Ok(theta[..count].to_vec());
        }
    }
    Err(FdError::NoConvergence(opts.max_iterations))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Modified Gram-Schmidt, twice.
fn orthonormalize(x: &mut [Vec<f64>]) {
    for _ in 0..2 {
        for i in 0..x.len() {
            let (done, rest) = x.split_at_mut(i);
            let v = &mut rest[0];
            for q in done.iter() {
                let c = dot(q, v);
                for (a, b) in v.iter_mut().zip(q) {
                    *a -= c * b;
                }
            }
            let norm = libm::sqrt(dot(v, v));
            for a in v.iter_mut() {
                *a /= norm;
            }
        }
    }
}
