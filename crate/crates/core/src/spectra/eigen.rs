use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Signed, Zero};

use crate::alcoves::Alcove;
use crate::error::RootSystemError;
use crate::rational::{to_f64, RationalVector};
use crate::roots::{weyl_group, RootSystem};
use crate::spectra::trig::{TrigSum, TrigTerm};
use crate::spectra::weight_lattice;

/// The alternating sum `sum_w det(w) e^{2 pi i <w q, x>}` over the finite
/// Weyl group, scaled by `(-i)^N` (`N` positive roots) so that the sum at
/// `q = rho` is the real, positive product `2^N prod sin(pi <a, x>)` on the
/// fundamental alcove.
///
/// The result lives in Euclidean coordinates `y = L^T x` of the ambient
/// space, where `G = L L^T` is the root system's Gram matrix.
pub fn eigenfunction(r: &RootSystem, q: &RationalVector) -> Result<TrigSum, RootSystemError> {
    check_weight(r, q)?;
    let w = weyl_group(r)?;
    let l = r.metric().cholesky_f64();
    let n = r.ambient_dim();
    let phase = minus_i_pow(r.positive_roots().len());
    let two_pi = 2.0 * core::f64::consts::PI;
    let terms = w
        .elements()
        .iter()
        .map(|e| {
            let wq = e.apply(q);
            let x = wq.to_f64();
            // 2 pi L^T (w q)
            let frequency = (0..n)
                .map(|i| two_pi * (i..n).map(|k| l[k][i] * x[k]).sum::<f64>())
                .collect();
            TrigTerm {
                coefficient: phase * f64::from(e.det),
                frequency,
                weight: Some(wq),
            }
        })
        .collect();
    Ok(TrigSum {
        dim: n,
        terms,
        q_norm_sq: Some(r.metric().norm_sq(q)),
    })
}

/// [`eigenfunction`] pulled back to the Euclidean coordinates of the alcove
/// polytope (which lives in the support frame).
pub fn eigenfunction_on_alcove(
    r: &RootSystem,
    q: &RationalVector,
    alcove: &Alcove,
) -> Result<TrigSum, RootSystemError> {
    let u = eigenfunction(r, q)?;
    let la = r.metric().cholesky_f64();
    let e = alcove.frame.embedding_matrix().to_f64();
    let lf_inv_t = transpose(&lower_inverse(&alcove.polytope.metric().cholesky_f64()));
    let n = r.ambient_dim();
    let k = alcove.polytope.dim();
    // M = L_a^T E L_f^{-T}
    let mut le = alloc::vec![alloc::vec![0.0; k]; n];
    for i in 0..n {
        for j in 0..k {
            le[i][j] = (i..n).map(|t| la[t][i] * e[t][j]).sum();
        }
    }
    let m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..k).map(|j| (0..k).map(|t| le[i][t] * lf_inv_t[t][j]).sum()).collect())
        .collect();
    Ok(u.pullback(&m, &alloc::vec![0.0; n]))
}

fn check_weight(r: &RootSystem, q: &RationalVector) -> Result<(), RootSystemError> {
    if q.dim() != r.ambient_dim() {
        return Err(RootSystemError::OutsideSupport);
    }
    let lattice = weight_lattice(r);
    if lattice.real_coordinates(q).is_none() {
        return Err(RootSystemError::OutsideSupport);
    }
    if !lattice.contains(q) {
        return Err(RootSystemError::NotAWeight(q.clone()));
    }
    for a in r.simple_roots() {
        let s = r.metric().inner(a, q);
        if s.is_zero() || s.is_negative() {
            return Err(RootSystemError::OnChamberWall {
                weight: q.clone(),
                root: a.clone(),
            });
        }
    }
    Ok(())
}

fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

pub(crate) fn lower_inverse(l: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = l.len();
    let mut inv = alloc::vec![alloc::vec![0.0; n]; n];
    for j in 0..n {
        inv[j][j] = 1.0 / l[j][j];
        for i in j + 1..n {
            let s: f64 = (j..i).map(|k| l[i][k] * inv[k][j]).sum();
            inv[i][j] = -s / l[i][i];
        }
    }
    inv
}

pub(crate) fn transpose(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// `4 pi^2 |q|^2` in floating point.
pub fn eigenvalue_of(r: &RootSystem, q: &RationalVector) -> f64 {
    4.0 * core::f64::consts::PI * core::f64::consts::PI * to_f64(&r.metric().norm_sq(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcoves::fundamental_alcove;
    use crate::rational::{int, rat};
    use crate::roots::{standard_root_system, Family};
    use crate::spectra::{spectrum, Cutoff};
    use alloc::vec;
    use core::f64::consts::PI;

    #[test]
    fn interval_eigenfunctions_are_sines() {
        let b1 = standard_root_system(Family::B, 1).unwrap();
        for k in 1..6 {
            let q = RationalVector::new(vec![rat(k, 2)]);
            let u = eigenfunction(&b1, &q).unwrap();
            assert_eq!(u.terms.len(), 2);
            for x in [0.0, 0.13, 0.5, 0.77, 1.0] {
                let expected = 2.0 * libm::sin(k as f64 * PI * x);
                let got = u.evaluate(&[x]);
                assert!((got.re - expected).abs() < 1e-13 && got.im.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn square_eigenfunction_is_a_product_of_sines() {
        let a1a1 = standard_root_system(Family::A1xA1, 2).unwrap();
        let (m, n) = (3i64, 2i64);
        let q = RationalVector::new(vec![rat(m, 2), rat(n, 2)]);
        let u = eigenfunction(&a1a1, &q).unwrap();
        assert_eq!(u.terms.len(), 4);
        assert!(u.has_equal_norms(1e-15));
        assert!((u.eigenvalue() - PI * PI * 13.0).abs() < 1e-12);
        for (x, y) in [(0.1, 0.2), (0.5, 0.5), (0.9, 0.35)] {
            let expected = 4.0 * libm::sin(m as f64 * PI * x) * libm::sin(n as f64 * PI * y);
            assert!((u.evaluate(&[x, y]) - Complex64::new(expected, 0.0)).norm() < 1e-13);
        }
        // sin a sin b = (cos(a - b) - cos(a + b)) / 2
        let (x, y) = (0.31, 0.64);
        let (a, b) = (m as f64 * PI * x, n as f64 * PI * y);
        let two_cos = 2.0 * (libm::cos(a - b) - libm::cos(a + b));
        assert!((u.evaluate_re(&[x, y]) - two_cos).abs() < 1e-13);
    }

    #[test]
    fn b2_eigenfunction_vanishes_on_triangle() {
        let b2 = standard_root_system(Family::B, 2).unwrap();
        let q = RationalVector::new(vec![rat(3, 2), rat(1, 2)]);
        let u = eigenfunction(&b2, &q).unwrap();
        assert_eq!(u.terms.len(), 8);
        for t in [0.0, 0.2, 0.45, 0.8, 1.0] {
            for p in [[t, 0.0], [t / 2.0, t / 2.0], [1.0 - t / 2.0, t / 2.0]] {
                assert!(u.evaluate(&p).norm() < 1e-12, "{p:?}");
            }
        }
        assert!(u.evaluate(&[0.5, 1.0 / 6.0]).norm() > 0.5);
    }

    #[test]
    fn weights_off_the_chamber_are_rejected() {
        let b2 = standard_root_system(Family::B, 2).unwrap();
        let on_wall = RationalVector::new(vec![int(1), int(1)]);
        assert!(matches!(
            eigenfunction(&b2, &on_wall),
            Err(RootSystemError::OnChamberWall { .. })
        ));
        let not_weight = RationalVector::new(vec![rat(1, 2), rat(3, 1)]);
        assert!(matches!(eigenfunction(&b2, &not_weight), Err(RootSystemError::NotAWeight(_))));
        let a2 = standard_root_system(Family::A, 2).unwrap();
        let outside = RationalVector::from_ints(&[1, 1, 1]);
        assert!(matches!(eigenfunction(&a2, &outside), Err(RootSystemError::OutsideSupport)));
    }

    #[test]
    fn weyl_antisymmetry_on_terms() {
        for (f, rank) in [(Family::A, 2), (Family::B, 2), (Family::G2, 2), (Family::C, 3)] {
            let r = standard_root_system(f, rank).unwrap();
            let s = spectrum(&r, Cutoff::Count(2));
            let w = weyl_group(&r).unwrap();
            for e in &s {
                for q in &e.weights {
                    let u = eigenfunction(&r, q).unwrap();
                    for g in w.generators() {
                        for t in &u.terms {
                            let image = g.mul_vec(t.weight.as_ref().unwrap());
                            let partner = u
                                .terms
                                .iter()
                                .find(|s| s.weight.as_ref() == Some(&image))
                                .unwrap();
                            assert_eq!(partner.coefficient, -t.coefficient);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rho_eigenfunction_is_positive_on_the_alcove() {
        for (f, rank) in [(Family::A, 2), (Family::B, 2), (Family::G2, 2)] {
            let r = standard_root_system(f, rank).unwrap();
            let alcove = fundamental_alcove(&r);
            let q = spectrum(&r, Cutoff::Count(1))[0].weights[0].clone();
            let u = eigenfunction_on_alcove(&r, &q, &alcove).unwrap();
            let c = alcove.polytope.barycenter();
            let l = alcove.polytope.metric().cholesky_f64();
            let x = c.to_f64();
            let y: Vec<f64> = (0..2).map(|i| (i..2).map(|k| l[k][i] * x[k]).sum()).collect();
            let v = u.evaluate(&y);
            assert!(v.re > 0.1 && v.im.abs() < 1e-12, "{f}{rank}: {v}");
            // same value straight from ambient coordinates
            let amb = alcove.frame.to_ambient(&c).to_f64();
            let la = r.metric().cholesky_f64();
            let n = amb.len();
            let ya: Vec<f64> = (0..n).map(|i| (i..n).map(|k| la[k][i] * amb[k]).sum()).collect();
            assert!((eigenfunction(&r, &q).unwrap().evaluate(&ya) - v).norm() < 1e-12);
        }
    }
}
