use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::geometry::LatticeBasis;
use crate::rational::{from_f64_exact, int, to_f64, Rational, RationalMatrix, RationalVector};
use crate::roots::RootSystem;

/// `Gamma`, the Z-span of the coroots.
pub fn coroot_lattice(r: &RootSystem) -> LatticeBasis {
    let coroots: Vec<RationalVector> = r.roots().iter().map(|v| r.coroot(v)).collect();
    LatticeBasis::from_generators(&coroots).expect("coroots span the support")
}

/// `Gamma*`, the dual of the coroot lattice within the support.
pub fn weight_lattice(r: &RootSystem) -> LatticeBasis {
    coroot_lattice(r).dual(r.metric())
}

/// One eigenvalue `4 pi^2 |q|^2` of the alcove with the weights realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub q_norm_sq: Rational,
    pub multiplicity: usize,
    /// Weights strictly inside the dominant chamber, sorted.
    pub weights: Vec<RationalVector>,
}

impl SpectrumEntry {
    pub fn eigenvalue(&self) -> f64 {
        4.0 * core::f64::consts::PI * core::f64::consts::PI * to_f64(&self.q_norm_sq)
    }
}

/// How far to enumerate.
#[derive(Clone, Debug, PartialEq)]
pub enum Cutoff {
    /// All eigenvalues `<= lambda_max`.
    LambdaMax(f64),
    /// The `n` smallest distinct eigenvalues.
    Count(usize),
    /// All entries with `|q|^2 <= bound`, exactly.
    NormSq(Rational),
}

/// Dirichlet spectrum of the fundamental alcove, ascending.
pub fn spectrum(r: &RootSystem, cutoff: Cutoff) -> Vec<SpectrumEntry> {
    let enumerator = Enumerator::new(r);
    match cutoff {
        Cutoff::NormSq(bound) => enumerator.entries_up_to(&bound),
        Cutoff::LambdaMax(lambda) => {
            if !(lambda > 0.0) {
                return Vec::new();
            }
            let four_pi_sq = 4.0 * core::f64::consts::PI * core::f64::consts::PI;
            // enumerate a hair beyond the cutoff, then compare in floating point
            let bound = from_f64_exact(lambda / four_pi_sq * (1.0 + 1e-9)).expect("finite cutoff");
            let mut e = enumerator.entries_up_to(&bound);
            e.retain(|x| x.eigenvalue() <= lambda);
            e
        }
        Cutoff::Count(n) => {
            if n == 0 {
                return Vec::new();
            }
            let mut bound = enumerator.start_bound();
            loop {
                let mut e = enumerator.entries_up_to(&bound);
                if e.len() >= n {
                    e.truncate(n);
                    return e;
                }
                bound = bound * int(2);
            }
        }
    }
}

/// Lattice points of `Gamma*` in a ball, by depth-first search over the
/// coordinates with exact bounds from `Q = U^T D U`.
struct Enumerator<'a> {
    r: &'a RootSystem,
    basis: Vec<RationalVector>,
    d: Vec<Rational>,
    /// strictly upper part of the unit upper-triangular `U`
    u: Vec<Vec<Rational>>,
}

impl<'a> Enumerator<'a> {
    fn new(r: &'a RootSystem) -> Self {
        let lattice = weight_lattice(r);
        let q = lattice.gram(r.metric());
        let (d, u) = ldl(&q);
        Self {
            r,
            basis: lattice.basis(),
            d,
            u,
        }
    }

    /// A bound that certainly contains `rho`, the smallest interior weight
    /// norm, so counting mode terminates quickly.
    fn start_bound(&self) -> Rational {
        let s = self.d.iter().fold(Rational::zero(), |a, b| a + b);
        s * int(self.basis.len() as i64 + 1)
    }

    fn entries_up_to(&self, bound: &Rational) -> Vec<SpectrumEntry> {
        let k = self.basis.len();
        let mut groups: BTreeMap<Rational, Vec<RationalVector>> = BTreeMap::new();
        let mut coords = alloc::vec![BigInt::zero(); k];
        self.search(k, bound.clone(), &mut coords, &mut groups);
        groups
            .into_iter()
            .map(|(q_norm_sq, mut weights)| {
                weights.sort();
                SpectrumEntry {
                    q_norm_sq,
                    multiplicity: weights.len(),
                    weights,
                }
            })
            .collect()
    }

    fn search(
        &self,
        level: usize,
        budget: Rational,
        coords: &mut Vec<BigInt>,
        out: &mut BTreeMap<Rational, Vec<RationalVector>>,
    ) {
        if level == 0 {
            self.visit(coords, out);
            return;
        }
        let i = level - 1;
        let mut center = Rational::zero();
        for j in level..coords.len() {
            center -= &self.u[i][j] * Rational::from_integer(coords[j].clone());
        }
        // need d_i (n - center)^2 <= budget
        let s = &budget / &self.d[i];
        let radius = libm::sqrt(to_f64(&s).max(0.0));
        let c = to_f64(&center);
        let lo = BigInt::from(libm::floor(c - radius) as i64 - 1);
        let hi = BigInt::from(libm::ceil(c + radius) as i64 + 1);
        let mut n = lo;
        while n <= hi {
            let t = Rational::from_integer(n.clone()) - &center;
            let used = &t * &t;
            if used <= s {
                coords[i] = n.clone();
                self.search(i, &budget - &self.d[i] * used, coords, out);
            }
            n += 1;
        }
        coords[i] = BigInt::zero();
    }

    fn visit(&self, coords: &[BigInt], out: &mut BTreeMap<Rational, Vec<RationalVector>>) {
        let mut q = RationalVector::zeros(self.r.ambient_dim());
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                q = q.add_scaled(&Rational::from_integer(c.clone()), b);
            }
        }
        let m = self.r.metric();
        if self.r.simple_roots().iter().all(|a| m.inner(a, &q).is_positive()) {
            out.entry(m.norm_sq(&q)).or_default().push(q);
        }
    }
}

/// Exact `Q = U^T D U` with `U` unit upper triangular; returns the diagonal
/// and the strictly upper entries of `U`.
fn ldl(q: &RationalMatrix) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    let n = q.rows();
    let mut a = q.clone();
    let mut d = Vec::with_capacity(n);
    let mut u = alloc::vec![alloc::vec![Rational::zero(); n]; n];
    for i in 0..n {
        let p = a[(i, i)].clone();
        for j in i + 1..n {
            u[i][j] = &a[(i, j)] / &p;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let v = &u[i][j] * &a[(i, k)];
                a[(j, k)] -= v;
            }
        }
        d.push(p);
    }
    (d, u)
}

/// Dirichlet eigenvalues `pi^2 (m^2 + n^2) / L^2`, `m > n >= 1`, of the
/// isosceles right triangle with legs `L`: the values `m^2 + n^2 <= limit`
/// with their multiplicities, ascending.
pub fn isosceles_right_closed_form(limit: u64) -> Vec<(u64, usize)> {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    let mut m = 2u64;
    while m * m < limit + 1 {
        for n in 1..m {
            let s = m * m + n * n;
            if s <= limit {
                *counts.entry(s).or_default() += 1;
            }
        }
        m += 1;
    }
    counts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::roots::{standard_root_system, Family};
    use alloc::vec;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn lattices_of_small_systems() {
        let b1 = standard_root_system(Family::B, 1).unwrap();
        let two = LatticeBasis::new(vec![v(&[2])]).unwrap();
        assert!(coroot_lattice(&b1).same_lattice(&two));
        let half = LatticeBasis::new(vec![RationalVector::new(vec![rat(1, 2)])]).unwrap();
        assert!(weight_lattice(&b1).same_lattice(&half));

        let a1a1 = standard_root_system(Family::A1xA1, 2).unwrap();
        let g = coroot_lattice(&a1a1);
        assert!(g.same_lattice(&LatticeBasis::new(vec![v(&[2, 0]), v(&[0, 2])]).unwrap()));
        let w = weight_lattice(&a1a1);
        let half = LatticeBasis::new(vec![
            RationalVector::new(vec![rat(1, 2), int(0)]),
            RationalVector::new(vec![int(0), rat(1, 2)]),
        ])
        .unwrap();
        assert!(w.same_lattice(&half));

        let b2 = standard_root_system(Family::B, 2).unwrap();
        let g = coroot_lattice(&b2);
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                assert_eq!(g.contains(&v(&[a, b])), (a + b) % 2 == 0);
                let x = RationalVector::new(vec![rat(a, 2), rat(b, 2)]);
                assert_eq!(weight_lattice(&b2).contains(&x), (a - b) % 2 == 0);
            }
        }
    }

    #[test]
    fn interval_spectrum() {
        let b1 = standard_root_system(Family::B, 1).unwrap();
        let s = spectrum(&b1, Cutoff::Count(20));
        assert_eq!(s.len(), 20);
        for (k, e) in s.iter().enumerate() {
            let k = k as i64 + 1;
            assert_eq!(e.q_norm_sq, rat(k * k, 4));
            assert_eq!(e.multiplicity, 1);
        }
    }

    #[test]
    fn square_spectrum_has_multiplicity_three_at_50_over_4() {
        let a1a1 = standard_root_system(Family::A1xA1, 2).unwrap();
        let s = spectrum(&a1a1, Cutoff::NormSq(rat(50, 4)));
        let last = s.last().unwrap();
        assert_eq!(last.q_norm_sq, rat(50, 4));
        assert_eq!(last.multiplicity, 3);
        let mut w = last.weights.clone();
        w.sort();
        let mut expected = vec![
            RationalVector::new(vec![rat(1, 2), rat(7, 2)]),
            RationalVector::new(vec![rat(7, 2), rat(1, 2)]),
            RationalVector::new(vec![rat(5, 2), rat(5, 2)]),
        ];
        expected.sort();
        assert_eq!(w, expected);
    }

    #[test]
    fn b2_first_eigenvalue() {
        let b2 = standard_root_system(Family::B, 2).unwrap();
        let s = spectrum(&b2, Cutoff::Count(5));
        assert_eq!(s[0].q_norm_sq, rat(10, 4));
        assert_eq!(s[0].weights, vec![RationalVector::new(vec![rat(3, 2), rat(1, 2)])]);
        assert!((s[0].eigenvalue() - 10.0 * core::f64::consts::PI.powi(2)).abs() < 1e-9);
        // legs 1/sqrt 2: lambda = 2 pi^2 (m^2 + n^2), i.e. |q|^2 = (m^2 + n^2) / 2
        let closed = isosceles_right_closed_form(60);
        for (e, (s2, mult)) in s.iter().zip(closed) {
            assert_eq!(e.q_norm_sq, rat(s2 as i64, 2));
            assert_eq!(e.multiplicity, mult);
        }
    }

    #[test]
    fn a2_first_eigenvalue() {
        let a2 = standard_root_system(Family::A, 2).unwrap();
        let s = spectrum(&a2, Cutoff::Count(3));
        // rho = (1, 0, -1), |rho|^2 = 2, side^2 = 2/3
        assert_eq!(s[0].q_norm_sq, int(2));
        assert_eq!(s[0].weights, vec![v(&[1, 0, -1])]);
        assert_eq!(s[1].q_norm_sq, rat(14, 3));
        assert_eq!(s[1].multiplicity, 2);
        assert_eq!(s[2].q_norm_sq, int(8));
    }

    #[test]
    fn lambda_cutoff_is_complete() {
        let g2 = standard_root_system(Family::G2, 2).unwrap();
        let four_pi_sq = 4.0 * core::f64::consts::PI.powi(2);
        let s = spectrum(&g2, Cutoff::LambdaMax(30.0 * four_pi_sq));
        assert!(s.iter().all(|e| e.eigenvalue() <= 30.0 * four_pi_sq));
        let exact = spectrum(&g2, Cutoff::NormSq(int(30)));
        assert_eq!(s, exact);
    }

    #[test]
    fn product_law_for_the_square() {
        let b1 = standard_root_system(Family::B, 1).unwrap();
        let a1a1 = standard_root_system(Family::A1xA1, 2).unwrap();
        let bound = int(40);
        let line = spectrum(&b1, Cutoff::NormSq(bound.clone()));
        let mut expected: BTreeMap<Rational, usize> = BTreeMap::new();
        for a in &line {
            for b in &line {
                let s = &a.q_norm_sq + &b.q_norm_sq;
                if s <= bound {
                    *expected.entry(s).or_default() += a.multiplicity * b.multiplicity;
                }
            }
        }
        let square: Vec<(Rational, usize)> = spectrum(&a1a1, Cutoff::NormSq(bound))
            .into_iter()
            .map(|e| (e.q_norm_sq, e.multiplicity))
            .collect();
        assert_eq!(square, expected.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn brute_force_completeness() {
        // every half-integer point of a box, filtered by hand
        let b2 = standard_root_system(Family::B, 2).unwrap();
        let bound = int(20);
        let mut count = 0;
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let q = RationalVector::new(vec![rat(a, 2), rat(b, 2)]);
                let n = &q[0] * &q[0] + &q[1] * &q[1];
                if (a - b) % 2 == 0 && a > b && b > 0 && n <= bound {
                    count += 1;
                }
            }
        }
        let total: usize = spectrum(&b2, Cutoff::NormSq(bound)).iter().map(|e| e.multiplicity).sum();
        assert_eq!(total, count);
    }
}
