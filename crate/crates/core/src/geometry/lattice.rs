use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::GeometryError;
use crate::geometry::Metric;
use crate::rational::{lcm_of_denominators, rank_of, Rational, RationalMatrix, RationalVector};

/// A full-rank lattice in the span of its basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    generators: RationalMatrix,
}

impl LatticeBasis {
    /// Lattice with the given linearly independent basis vectors.
    pub fn new(basis: Vec<RationalVector>) -> Result<Self, GeometryError> {
        let rank = rank_of(&basis);
        if basis.is_empty() || rank < basis.len() {
            return Err(GeometryError::RankDeficient {
                rank,
                needed: basis.len().max(1),
            });
        }
        Ok(Self {
            generators: RationalMatrix::from_columns(&basis),
        })
    }

    /// The Z-span of an arbitrary finite generating set, reduced to a basis
    /// by integer row echelon form.
    pub fn from_generators(vectors: &[RationalVector]) -> Result<Self, GeometryError> {
        if vectors.is_empty() {
            return Err(GeometryError::RankDeficient { rank: 0, needed: 1 });
        }
        let scale = lcm_of_denominators(vectors.iter().flat_map(RationalVector::iter));
        let rows: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|c| (c * Rational::from_integer(scale.clone())).to_integer())
                    .collect()
            })
            .collect();
        let inv = Rational::from_integer(scale).recip();
        let basis: Vec<RationalVector> = integer_row_basis(rows)
            .into_iter()
            .map(|r| r.into_iter().map(|c| Rational::from_integer(c) * &inv).collect())
            .collect();
        Self::new(basis)
    }

    pub fn rank(&self) -> usize {
        self.generators.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.generators.rows()
    }

    pub fn generators(&self) -> &RationalMatrix {
        &self.generators
    }

    pub fn basis(&self) -> Vec<RationalVector> {
        self.generators.columns()
    }

    /// Integer coordinates of `x` in this basis, if `x` is a lattice point.
    pub fn coordinates(&self, x: &RationalVector) -> Option<Vec<BigInt>> {
        let c = self.real_coordinates(x)?;
        c.iter()
            .all(Rational::is_integer)
            .then(|| c.iter().map(|r| r.to_integer()).collect())
    }

    /// Coordinates of `x` in this basis over the rationals, if `x` is in the span.
    pub fn real_coordinates(&self, x: &RationalVector) -> Option<RationalVector> {
        let b = &self.generators;
        let bt = b.transpose();
        let c = bt.mul(b).solve(&bt.mul_vec(x))?;
        (b.mul_vec(&c) == *x).then_some(c)
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.coordinates(x).is_some()
    }

    /// Same set of points as `other`.
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.rank() == other.rank()
            && self.basis().iter().all(|b| other.contains(b))
            && other.basis().iter().all(|b| self.contains(b))
    }

    /// `B^T G B`, the Gram matrix of the basis.
    pub fn gram(&self, metric: &Metric) -> RationalMatrix {
        self.generators.transpose().mul(&metric.gram().mul(&self.generators))
    }

    /// `{x in span : <x, g> in Z for all lattice points g}` under `metric`.
    pub fn dual(&self, metric: &Metric) -> Self {
        let inv = self.gram(metric).inverse().expect("basis is independent");
        Self {
            generators: self.generators.mul(&inv),
        }
    }
}

/// Euclidean dual lattice within the span of `lattice`.
pub fn dual_lattice(lattice: &LatticeBasis) -> LatticeBasis {
    lattice.dual(&Metric::euclidean(lattice.ambient_dim()))
}

/// Nonzero rows of an integer row echelon form of `rows`; they form a basis
/// of the row lattice.
fn integer_row_basis(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                let pr = &head[r];
                for (x, y) in tail[0].iter_mut().zip(pr) {
                    *x -= &q * y;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                r += 1;
                break;
            }
        }
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use alloc::vec;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    #[test]
    fn one_dimensional_scaling() {
        let l = LatticeBasis::new(vec![v(&[2])]).unwrap();
        let d = dual_lattice(&l);
        assert_eq!(d.basis(), vec![RationalVector::new(vec![rat(1, 2)])]);
    }

    #[test]
    fn diagonal_case() {
        let l = LatticeBasis::new(vec![v(&[2, 0]), v(&[0, 2])]).unwrap();
        let d = dual_lattice(&l);
        let expected = LatticeBasis::new(vec![
            RationalVector::new(vec![rat(1, 2), int(0)]),
            RationalVector::new(vec![int(0), rat(1, 2)]),
        ])
        .unwrap();
        assert!(d.same_lattice(&expected));
    }

    #[test]
    fn even_sum_lattice_dual() {
        // {(a,b) : a+b even} from a redundant generating set
        let l = LatticeBasis::from_generators(&[v(&[2, 0]), v(&[0, 2]), v(&[1, 1]), v(&[1, -1])]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[3, 1])));
        assert!(!l.contains(&v(&[1, 0])));
        let d = dual_lattice(&l);
        // dual = {(m/2, n/2) : m = n mod 2}
        for m in -4i64..=4 {
            for n in -4i64..=4 {
                let x = RationalVector::new(vec![rat(m, 2), rat(n, 2)]);
                assert_eq!(d.contains(&x), (m - n).rem_euclid(2) == 0, "{x}");
            }
        }
        assert!(dual_lattice(&d).same_lattice(&l));
    }

    #[test]
    fn rank_deficient_rejected() {
        assert!(matches!(
            LatticeBasis::new(vec![v(&[1, 1]), v(&[2, 2])]),
            Err(GeometryError::RankDeficient { .. })
        ));
    }

    #[test]
    fn dual_in_a_subspace() {
        // A2 coroots inside x+y+z = 0
        let l = LatticeBasis::from_generators(&[v(&[1, -1, 0]), v(&[0, 1, -1]), v(&[1, 0, -1])]).unwrap();
        assert_eq!(l.rank(), 2);
        let d = dual_lattice(&l);
        let w = RationalVector::new(vec![rat(2, 3), rat(-1, 3), rat(-1, 3)]);
        assert!(d.contains(&w));
        for b in l.basis() {
            assert!(w.dot(&b).is_integer());
        }
    }
}
