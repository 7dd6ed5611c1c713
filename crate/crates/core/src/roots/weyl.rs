use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_traits::One;

use crate::error::RootSystemError;
use crate::rational::{RationalMatrix, RationalVector};
use crate::roots::RootSystem;

/// Default bound on the number of group elements generated.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Action on ambient coordinates (identity on the orthogonal complement
    /// of the support).
    pub matrix: RationalMatrix,
    /// Determinant, `+1` or `-1`.
    pub det: i8,
    /// A shortest word in the simple reflections, as indices into
    /// [`RootSystem::simple_roots`]; applied right to left.
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        self.matrix.mul_vec(x)
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }
}

/// The finite group generated by the reflections in the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylGroup {
    generators: Vec<RationalMatrix>,
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    /// Simple reflections, in the order of the simple roots.
    pub fn generators(&self) -> &[RationalMatrix] {
        &self.generators
    }

    /// Elements in breadth-first order (by word length); the identity first.
    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }

    /// Index of the element with the given matrix.
    pub fn position(&self, m: &RationalMatrix) -> Option<usize> {
        self.elements.iter().position(|e| e.matrix == *m)
    }

    /// `{w x : w in W}` without repetition, sorted.
    pub fn orbit(&self, x: &RationalVector) -> Vec<RationalVector> {
        let mut o: Vec<RationalVector> = self.elements.iter().map(|w| w.apply(x)).collect();
        o.sort();
        o.dedup();
        o
    }
}

pub fn weyl_group(r: &RootSystem) -> Result<WeylGroup, RootSystemError> {
    weyl_group_with_cap(r, DEFAULT_WEYL_CAP)
}

/// Closure of the simple reflections under multiplication, stopping with an
/// error once more than `cap` elements have been found.
pub fn weyl_group_with_cap(r: &RootSystem, cap: usize) -> Result<WeylGroup, RootSystemError> {
    let generators: Vec<RationalMatrix> = r.simple_roots().iter().map(|a| r.reflection(a)).collect();
    let n = r.ambient_dim();
    let id = RationalMatrix::identity(n);
    let mut seen: BTreeMap<RationalMatrix, usize> = BTreeMap::new();
    let mut elements = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone(), 0);
    elements.push(WeylElement {
        matrix: id,
        det: 1,
        word: Vec::new(),
    });
    queue.push_back(0usize);
    while let Some(i) = queue.pop_front() {
        for (g, s) in generators.iter().enumerate() {
            let m = s.mul(&elements[i].matrix);
            if seen.contains_key(&m) {
                continue;
            }
            if elements.len() >= cap {
                return Err(RootSystemError::ClosureCap { cap });
            }
            let mut word = Vec::with_capacity(elements[i].word.len() + 1);
            word.push(g);
            word.extend_from_slice(&elements[i].word);
            let det = -elements[i].det;
            seen.insert(m.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(WeylElement { matrix: m, det, word });
        }
    }
    debug_assert!(elements.iter().all(|e| {
        let d = e.matrix.determinant();
        if e.det > 0 { d.is_one() } else { (-d).is_one() }
    }));
    Ok(WeylGroup { generators, elements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{standard_root_system, Family};

    fn order(f: Family, r: usize) -> usize {
        weyl_group(&standard_root_system(f, r).unwrap()).unwrap().order()
    }

    #[test]
    fn orders() {
        assert_eq!(order(Family::A1xA1, 2), 4);
        assert_eq!(order(Family::A, 2), 6);
        assert_eq!(order(Family::B, 2), 8);
        assert_eq!(order(Family::G2, 2), 12);
        assert_eq!(order(Family::B, 1), 2);
        assert_eq!(order(Family::A, 3), 24);
        assert_eq!(order(Family::B, 3), 48);
        assert_eq!(order(Family::C, 3), 48);
        assert_eq!(order(Family::D, 4), 192);
    }

    #[test]
    fn elements_permute_roots() {
        for (f, r) in [(Family::B, 2), (Family::G2, 2), (Family::A, 3)] {
            let sys = standard_root_system(f, r).unwrap();
            let w = weyl_group(&sys).unwrap();
            for e in w.elements() {
                let mut img: Vec<_> = sys.roots().iter().map(|v| e.apply(v)).collect();
                img.sort();
                assert_eq!(img, sys.roots());
                assert_eq!(e.matrix.determinant(), crate::rational::int(e.det as i64));
            }
        }
    }

    #[test]
    fn generators_are_involutions() {
        let sys = standard_root_system(Family::G2, 2).unwrap();
        let w = weyl_group(&sys).unwrap();
        let id = RationalMatrix::identity(3);
        for s in w.generators() {
            assert_eq!(s.mul(s), id);
            assert_eq!(s.determinant(), crate::rational::int(-1));
        }
    }

    #[test]
    fn cap_is_reported() {
        let sys = standard_root_system(Family::B, 3).unwrap();
        assert_eq!(
            weyl_group_with_cap(&sys, 10),
            Err(RootSystemError::ClosureCap { cap: 10 })
        );
    }
}
