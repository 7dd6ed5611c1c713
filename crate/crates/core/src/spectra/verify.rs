use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::geometry::{Polytope, Sense};
use crate::spectra::eigen::lower_inverse;
use crate::spectra::trig::TrigSum;

/// Sampling parameters for [`verify_eigenpair`].
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub boundary_samples: usize,
    pub interior_samples: usize,
    /// Finite-difference step for the residual; the order is estimated from
    /// `h` and `h / 2`. `None` picks `diameter / 64`.
    pub h: Option<f64>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            boundary_samples: 1000,
            interior_samples: 10_000,
            h: None,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub eigenvalue: f64,
    /// `max |u|` over the interior samples, the scale for everything else.
    pub interior_max: f64,
    /// `max |u|` over random points on the facets.
    pub boundary_max: f64,
    pub h: f64,
    /// `max |Delta_h u + lambda u|` over interior samples, at `h` and `h / 2`.
    pub residual_max: f64,
    pub residual_max_half: f64,
    /// `log2(residual_max / residual_max_half)`
    pub residual_order: f64,
    /// Whether the dominant part of `u` (real or imaginary) keeps one sign on
    /// every interior sample.
    pub sign_constant: bool,
    pub positive_samples: usize,
    pub negative_samples: usize,
    /// `max |u(s_H x) + u(x)|` over samples and facet planes `H`.
    pub antisymmetry_max: f64,
    pub interior_count: usize,
    pub boundary_count: usize,
}

impl VerificationReport {
    /// Boundary, residual order and antisymmetry checks at the given
    /// absolute tolerance; sign constancy is only required if `first`.
    pub fn passes(&self, tol: f64, first: bool) -> bool {
        self.boundary_max < tol
            && self.antisymmetry_max < tol
            && (self.residual_order - 2.0).abs() < 0.2
            && (!first || self.sign_constant)
    }
}

/// A facet `m . y <= c` in Euclidean coordinates.
struct Facet {
    m: Vec<f64>,
    c: f64,
    vertices: Vec<Vec<f64>>,
}

impl Facet {
    fn slack(&self, y: &[f64]) -> f64 {
        self.c - dot(&self.m, y)
    }

    fn reflect(&self, y: &[f64]) -> Vec<f64> {
        let t = 2.0 * (dot(&self.m, y) - self.c) / dot(&self.m, &self.m);
        y.iter().zip(&self.m).map(|(a, b)| a - t * b).collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean facets of `p`: `n . x <= c` becomes `(L^{-1} n) . y <= c`.
fn euclidean_facets(p: &Polytope) -> Vec<Facet> {
    let l_inv = lower_inverse(&p.metric().cholesky_f64());
    let verts = p.euclidean_vertices_f64();
    p.facets()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let sign = match f.sense {
                Sense::Le => 1.0,
                Sense::Ge => -1.0,
            };
            let n = f.plane.normal().to_f64();
            let m = l_inv.iter().map(|row| sign * dot(row, &n)).collect();
            let c = sign * crate::rational::to_f64(f.plane.offset());
            let vertices = p
                .vertices()
                .iter()
                .zip(&verts)
                .filter(|(v, _)| f.plane.contains(v))
                .map(|(_, y)| y.clone())
                .collect::<Vec<_>>();
            debug_assert!(!vertices.is_empty(), "facet {i} has no vertices");
            Facet { m, c, vertices }
        })
        .collect()
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Seeded rejection sampling from the interior of `p`, in Euclidean
/// coordinates.
pub fn interior_samples(p: &Polytope, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let facets = euclidean_facets(p);
    sample_interior(p, &facets, count, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn sample_interior(p: &Polytope, facets: &[Facet], count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let verts = p.euclidean_vertices_f64();
    let d = p.dim();
    let lo: Vec<f64> = (0..d).map(|i| verts.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..d).map(|i| verts.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let y: Vec<f64> = (0..d).map(|i| lo[i] + (hi[i] - lo[i]) * uniform(rng)).collect();
        if facets.iter().all(|f| f.slack(&y) > 0.0) {
            out.push(y);
        }
    }
    out
}

fn sample_boundary(facets: &[Facet], count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| {
            let f = &facets[i % facets.len()];
            // exponential weights give a uniform point of the vertex simplex
            let w: Vec<f64> = f.vertices.iter().map(|_| -libm::log(1.0 - uniform(rng))).collect();
            let s: f64 = w.iter().sum();
            let d = f.vertices[0].len();
            (0..d)
                .map(|k| f.vertices.iter().zip(&w).map(|(v, wi)| v[k] * wi / s).sum())
                .collect()
        })
        .collect()
}

/// `Delta_h u (y)` with the `2 d + 1` point stencil.
pub fn laplacian_fd(u: &TrigSum, y: &[f64], h: f64) -> Complex64 {
    let centre = u.evaluate(y);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = y.to_vec();
    for k in 0..y.len() {
        p[k] = y[k] + h;
        acc += u.evaluate(&p);
        p[k] = y[k] - h;
        acc += u.evaluate(&p);
        p[k] = y[k];
        acc -= centre * 2.0;
    }
    acc / (h * h)
}

fn diameter(p: &Polytope) -> f64 {
    let v = p.euclidean_vertices_f64();
    let mut d: f64 = 0.0;
    for a in &v {
        for b in &v {
            let s: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
            d = d.max(libm::sqrt(s));
        }
    }
    d
}

/// Numerical checks that `u` is a Dirichlet eigenfunction of `p`: boundary
/// values, finite-difference residual and its order, sign constancy, and
/// antisymmetry across every facet plane. `u` is in the Euclidean
/// coordinates of `p`.
pub fn verify_eigenpair(u: &TrigSum, p: &Polytope, opts: &VerifyOptions) -> VerificationReport {
    assert_eq!(u.dim, p.dim(), "dimension mismatch");
    let facets = euclidean_facets(p);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let interior = sample_interior(p, &facets, opts.interior_samples, &mut rng);
    let boundary = sample_boundary(&facets, opts.boundary_samples, &mut rng);
    let lambda = u.eigenvalue();
    let h = opts.h.unwrap_or_else(|| diameter(p) / 64.0);

    let values: Vec<Complex64> = interior.iter().map(|y| u.evaluate(y)).collect();
    let interior_max = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let boundary_max = boundary.iter().map(|y| u.evaluate(y).norm()).fold(0.0, f64::max);

    let residual = |h: f64| {
        interior
            .iter()
            .zip(&values)
            .map(|(y, v)| (laplacian_fd(u, y, h) + v * lambda).norm())
            .fold(0.0, f64::max)
    };
    let residual_max = residual(h);
    let residual_max_half = residual(h / 2.0);
    let residual_order = libm::log2(residual_max / residual_max_half);

    let re: f64 = values.iter().map(|v| v.re.abs()).fold(0.0, f64::max);
    let im: f64 = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    let part = |v: &Complex64| if re >= im { v.re } else { v.im };
    let positive_samples = values.iter().filter(|v| part(v) > 0.0).count();
    let negative_samples = values.iter().filter(|v| part(v) < 0.0).count();
    let sign_constant = positive_samples == values.len() || negative_samples == values.len();

    let antisymmetry_max = interior
        .iter()
        .zip(&values)
        .flat_map(|(y, v)| facets.iter().map(move |f| (u.evaluate(&f.reflect(y)) + v).norm()))
        .fold(0.0, f64::max);

    VerificationReport {
        eigenvalue: lambda,
        interior_max,
        boundary_max,
        h,
        residual_max,
        residual_max_half,
        residual_order,
        sign_constant,
        positive_samples,
        negative_samples,
        antisymmetry_max,
        interior_count: interior.len(),
        boundary_count: boundary.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcoves::fundamental_alcove;
    use crate::roots::{standard_root_system, Family};
    use crate::spectra::{eigenfunction_on_alcove, spectrum, Cutoff};

    #[test]
    fn first_eigenfunctions_of_rank_two_systems() {
        let opts = VerifyOptions {
            interior_samples: 2000,
            boundary_samples: 300,
            ..VerifyOptions::default()
        };
        for f in Family::ALL {
            for rank in 1..=2 {
                let Ok(r) = standard_root_system(f, rank) else { continue };
                let alcove = fundamental_alcove(&r);
                for (i, e) in spectrum(&r, Cutoff::Count(3)).iter().enumerate() {
                    let u = eigenfunction_on_alcove(&r, &e.weights[0], &alcove).unwrap();
                    let rep = verify_eigenpair(&u, &alcove.polytope, &opts);
                    assert!(rep.passes(1e-9, i == 0), "{f}{rank} #{i}: {rep:?}");
                    assert!(rep.interior_max > 1e-3);
                }
            }
        }
    }

    #[test]
    fn wrong_eigenvalue_is_detected() {
        let r = standard_root_system(Family::B, 2).unwrap();
        let alcove = fundamental_alcove(&r);
        let q = &spectrum(&r, Cutoff::Count(1))[0].weights[0];
        let mut u = eigenfunction_on_alcove(&r, q, &alcove).unwrap();
        u.q_norm_sq = Some(crate::rational::int(3));
        let rep = verify_eigenpair(&u, &alcove.polytope, &VerifyOptions::default());
        assert!(rep.residual_order.abs() < 0.5);
        assert!(!rep.passes(1e-9, true));
    }
}
