use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::geometry::Metric;
use crate::rational::{int, rank_of, Rational, RationalVector};

/// A finite set of vectors to be checked against the root system axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCandidate {
    pub roots: Vec<RationalVector>,
    pub metric: Metric,
    /// Spanning set of the intended space. `None` means all of coordinate space.
    pub support: Option<Vec<RationalVector>>,
}

impl RootCandidate {
    pub fn euclidean(roots: Vec<RationalVector>) -> Self {
        let dim = roots.first().map_or(0, RationalVector::dim);
        Self {
            roots,
            metric: Metric::euclidean(dim),
            support: None,
        }
    }

    pub fn with_support(mut self, support: Vec<RationalVector>) -> Self {
        self.support = Some(support);
        self
    }
}

/// The five axioms, numbered as usual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    /// 1. the zero vector is not a root
    NonZero = 1,
    /// 2. the roots span the space
    Spanning = 2,
    /// 3. the only multiples of a root in the set are its negatives and itself
    Reduced = 3,
    /// 4. closed under the reflection in every root
    ReflectionClosed = 4,
    /// 5. all Cartan integers `2<u,v>/<v,v>` are integers
    Crystallographic = 5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::NonZero,
        Axiom::Spanning,
        Axiom::Reduced,
        Axiom::ReflectionClosed,
        Axiom::Crystallographic,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::NonZero => "nonzero",
            Axiom::Spanning => "spanning",
            Axiom::Reduced => "reduced",
            Axiom::ReflectionClosed => "reflection-closed",
            Axiom::Crystallographic => "crystallographic",
        }
    }
}

/// Concrete evidence that an axiom fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Zero(RationalVector),
    RankDeficient { rank: usize, expected: usize },
    OutsideSupport(RationalVector),
    ProperMultiple {
        root: RationalVector,
        multiple: RationalVector,
        factor: Rational,
    },
    NotClosed {
        mirror: RationalVector,
        root: RationalVector,
        image: RationalVector,
    },
    NonIntegral {
        u: RationalVector,
        v: RationalVector,
        pairing: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        &self.checks[axiom.index() - 1]
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            match &c.witness {
                None => write!(f, "{} {} ok", c.axiom.index(), c.axiom.name())?,
                Some(w) => write!(f, "{} {} FAILED ({:?})", c.axiom.index(), c.axiom.name(), w)?,
            }
        }
        Ok(())
    }
}

/// `2<u,v>/<v,v>`
pub fn cartan_integer(metric: &Metric, u: &RationalVector, v: &RationalVector) -> Rational {
    int(2) * metric.inner(u, v) / metric.norm_sq(v)
}

/// Checks every axiom exhaustively over all pairs. Never fails; failures are
/// report content with a witness each.
pub fn validate_root_system(candidate: &RootCandidate) -> ValidationReport {
    let mut roots = candidate.roots.clone();
    roots.sort();
    roots.dedup();
    let metric = &candidate.metric;
    let nonzero: Vec<&RationalVector> = roots.iter().filter(|r| !r.is_zero()).collect();

    let zero = roots.iter().find(|r| r.is_zero()).cloned().map(Witness::Zero);

    let spanning = {
        let rank = rank_of(&roots);
        match &candidate.support {
            None => (rank < metric.dim()).then_some(Witness::RankDeficient {
                rank,
                expected: metric.dim(),
            }),
            Some(support) => {
                let expected = rank_of(support);
                let outside = roots.iter().find(|r| {
                    let mut s = support.clone();
                    s.push((*r).clone());
                    rank_of(&s) > expected
                });
                match outside {
                    Some(r) => Some(Witness::OutsideSupport(r.clone())),
                    None => (rank < expected).then_some(Witness::RankDeficient { rank, expected }),
                }
            }
        }
    };

    let reduced = nonzero.iter().find_map(|&v| {
        nonzero.iter().find_map(|&u| {
            let c = u.ratio_to(v)?;
            (!c.is_one() && c != -Rational::one()).then(|| Witness::ProperMultiple {
                root: v.clone(),
                multiple: u.clone(),
                factor: c,
            })
        })
    });

    let closed = nonzero.iter().find_map(|&u| {
        nonzero.iter().find_map(|&v| {
            let image = v.add_scaled(&-cartan_integer(metric, v, u), u);
            roots.binary_search(&image).is_err().then(|| Witness::NotClosed {
                mirror: u.clone(),
                root: v.clone(),
                image,
            })
        })
    });

    let integral = nonzero.iter().find_map(|&u| {
        nonzero.iter().find_map(|&v| {
            let p = cartan_integer(metric, u, v);
            (!p.is_integer()).then(|| Witness::NonIntegral {
                u: u.clone(),
                v: v.clone(),
                pairing: p,
            })
        })
    });

    let checks = Axiom::ALL
        .iter()
        .zip([zero, spanning, reduced, closed, integral])
        .map(|(&axiom, witness)| AxiomCheck { axiom, witness })
        .collect();
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(c: &[i64]) -> RationalVector {
        RationalVector::from_ints(c)
    }

    fn b2() -> Vec<RationalVector> {
        vec![
            v(&[1, 0]),
            v(&[-1, 0]),
            v(&[0, 1]),
            v(&[0, -1]),
            v(&[1, 1]),
            v(&[-1, -1]),
            v(&[1, -1]),
            v(&[-1, 1]),
        ]
    }

    #[test]
    fn b2_passes_everything() {
        let r = validate_root_system(&RootCandidate::euclidean(b2()));
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn zero_vector_fails_first_axiom() {
        let mut roots = b2();
        roots.push(v(&[0, 0]));
        let r = validate_root_system(&RootCandidate::euclidean(roots));
        assert_eq!(r.check(Axiom::NonZero).witness, Some(Witness::Zero(v(&[0, 0]))));
        assert!(r.check(Axiom::ReflectionClosed).passed());
    }

    #[test]
    fn missing_root_breaks_closure() {
        let roots: Vec<_> = b2().into_iter().filter(|r| *r != v(&[1, 1])).collect();
        let r = validate_root_system(&RootCandidate::euclidean(roots));
        assert!(!r.all_passed());
        match &r.check(Axiom::ReflectionClosed).witness {
            Some(Witness::NotClosed { image, .. }) => {
                // the witness is honest: the image really is missing
                assert!(!b2().iter().filter(|r| **r != v(&[1, 1])).any(|r| r == image));
            }
            other => panic!("expected closure failure, got {other:?}"),
        }
    }

    #[test]
    fn non_reduced_and_non_integral() {
        let bc1 = vec![v(&[1]), v(&[-1]), v(&[2]), v(&[-2])];
        let r = validate_root_system(&RootCandidate::euclidean(bc1));
        assert!(!r.check(Axiom::Reduced).passed());
        assert!(r.check(Axiom::Crystallographic).passed());

        // H2-like pair with 60 degrees but unequal lengths in the wrong ratio
        let roots = vec![v(&[1, 0]), v(&[-1, 0]), v(&[1, 3]), v(&[-1, -3])];
        let r = validate_root_system(&RootCandidate::euclidean(roots));
        assert!(matches!(
            r.check(Axiom::Crystallographic).witness,
            Some(Witness::NonIntegral { .. })
        ));
    }

    #[test]
    fn spanning_against_declared_support() {
        let a1_in_plane = vec![v(&[1, -1]), v(&[-1, 1])];
        let r = validate_root_system(&RootCandidate::euclidean(a1_in_plane.clone()));
        assert_eq!(
            r.check(Axiom::Spanning).witness,
            Some(Witness::RankDeficient { rank: 1, expected: 2 })
        );
        let r = validate_root_system(&RootCandidate::euclidean(a1_in_plane).with_support(vec![v(&[1, -1])]));
        assert!(r.all_passed());
    }
}
