//! Randomized invariants across modules.

use alcove_core::alcoves::{alcove_at, fundamental_alcove};
use alcove_core::crystallo::{is_prime, matrix_of_order, matrix_order, psi, psi_value, MatrixOrder};
use alcove_core::fd::pde_residual;
use alcove_core::geometry::Location;
use alcove_core::rational::{format_rational, int, parse_rational, rat, Rational, RationalVector};
use alcove_core::roots::{standard_root_system, weyl_chambers, weyl_group, Family, RootSystem};
use alcove_core::shapes;
use alcove_core::spectra::{eigenfunction, spectrum, Cutoff};
use alcove_core::tessellation::root_system_from_tessellation;
use num_integer::Integer;
use proptest::prelude::*;

fn system() -> impl Strategy<Value = RootSystem> {
    prop_oneof![
        Just((Family::B, 1)),
        Just((Family::A1xA1, 2)),
        Just((Family::A, 2)),
        Just((Family::B, 2)),
        Just((Family::C, 2)),
        Just((Family::G2, 2)),
        Just((Family::A, 3)),
        Just((Family::B, 3)),
    ]
    .prop_map(|(f, r)| standard_root_system(f, r).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn rational_text_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn psi_is_additive_on_coprime_pairs(a in 1u64..400, b in 1u64..400) {
        prop_assume!(a.gcd(&b) == 1);
        // psi(2) = 0 keeps this exact even when one factor is 2 mod 4
        prop_assert_eq!(psi(a * b), psi(a) + psi(b));
    }

    #[test]
    fn psi_of_primes(p in 3u64..500) {
        prop_assume!(is_prime(p));
        prop_assert_eq!(psi(p), p - 1);
        prop_assert_eq!(psi(2 * p), p - 1);
        prop_assert_eq!(psi(p * p), p * (p - 1));
    }

    #[test]
    fn constructed_matrices_have_their_order(m in 1u64..80) {
        let n = psi_value(m).value.max(1) as usize;
        prop_assume!(n <= 24);
        let a = matrix_of_order(m, n).unwrap();
        prop_assert_eq!(a.size(), n);
        prop_assert_eq!(matrix_order(&a, 10_000).unwrap(), MatrixOrder::Finite(m));
    }

    #[test]
    fn weyl_elements_permute_roots_and_preserve_the_metric(r in system()) {
        let w = weyl_group(&r).unwrap();
        let mut roots = r.roots().to_vec();
        roots.sort();
        for e in w.elements() {
            let mut image: Vec<_> = r.roots().iter().map(|v| e.apply(v)).collect();
            image.sort();
            prop_assert_eq!(&image, &roots);
            for u in r.roots().iter().take(3) {
                for v in r.roots().iter().take(3) {
                    prop_assert_eq!(r.metric().inner(&e.apply(u), &e.apply(v)), r.metric().inner(u, v));
                }
            }
            // length equals the number of positive roots sent negative
            let flipped = r.positive_roots().iter().filter(|v| !r.is_positive(&e.apply(v))).count();
            prop_assert_eq!(flipped, e.length());
        }
        prop_assert_eq!(weyl_chambers(&r).unwrap().len(), w.order());
    }

    #[test]
    fn alcove_at_contains_its_point(r in system(), coords in proptest::collection::vec(small_rational(), 3)) {
        let frame = r.frame();
        let x: RationalVector = coords.into_iter().take(r.rank()).collect();
        let y = frame.to_ambient(&x);
        if let Ok(a) = alcove_at(&r, &y) {
            prop_assert_eq!(a.polytope.contains(&x), Location::Interior);
            prop_assert!(a.polytope.is_congruent(&fundamental_alcove(&r).polytope));
        }
    }

    #[test]
    fn interval_spectrum_scales_with_length(a in small_rational(), len in (1i64..9, 1i64..9)) {
        let l = rat(len.0, len.1);
        let p = shapes::interval(a.clone(), &a + &l);
        let rec = root_system_from_tessellation(&p).unwrap();
        let s = spectrum(&rec.root_system, Cutoff::Count(4));
        for (k, e) in s.iter().enumerate() {
            let k = int(k as i64 + 1);
            prop_assert_eq!(&e.q_norm_sq, &(&k * &k / (int(4) * &l * &l)));
            prop_assert_eq!(e.multiplicity, 1);
        }
    }

    #[test]
    fn eigenfunctions_are_antisymmetric_and_solve_the_equation(
        r in system(),
        index in 0usize..4,
        point in proptest::collection::vec(-1.0f64..1.0, 4),
    ) {
        let entries = spectrum(&r, Cutoff::Count(4));
        let q = &entries[index].weights[0];
        let u = eigenfunction(&r, q).unwrap();
        let n = r.ambient_dim();
        let x = &point[..n];
        // a simple reflection of the point in Euclidean coordinates
        let l = r.metric().cholesky_f64();
        let a = r.simple_roots()[0].to_f64();
        let alpha: Vec<f64> = (0..n).map(|i| (i..n).map(|k| l[k][i] * a[k]).sum()).collect();
        let aa: f64 = alpha.iter().map(|t| t * t).sum();
        let ax: f64 = alpha.iter().zip(x).map(|(s, t)| s * t).sum();
        let sx: Vec<f64> = x.iter().zip(&alpha).map(|(t, s)| t - 2.0 * ax / aa * s).collect();
        let scale = u.terms.len() as f64;
        prop_assert!((u.evaluate(x) + u.evaluate(&sx)).norm() < 1e-9 * scale);
        let lambda = entries[index].eigenvalue();
        let h = 1e-3;
        let rel = pde_residual(&u, lambda, x, h) / (lambda * lambda * scale);
        prop_assert!(rel < 1e-6, "{}", rel);
    }

    #[test]
    fn rectangle_multiplicities_count_representations(k in 1u64..60) {
        let r = standard_root_system(Family::A1xA1, 2).unwrap();
        let target = rat(k as i64, 4);
        let s = spectrum(&r, Cutoff::NormSq(target.clone()));
        let reps = (1..=k).flat_map(|m| (1..=k).map(move |n| (m, n))).filter(|(m, n)| m * m + n * n == k).count();
        let found = s.iter().find(|e| e.q_norm_sq == target).map_or(0, |e| e.multiplicity);
        prop_assert_eq!(found, reps);
    }
}
