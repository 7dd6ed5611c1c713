use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::geometry::{AffineHyperplane, Location, Polytope};
use crate::rational::{Rational, RationalVector};

/// Default bound on the number of copies generated.
pub const DEFAULT_MAX_COPIES: usize = 20_000;

/// An open axis-aligned box `lo < x < hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub lo: RationalVector,
    pub hi: RationalVector,
}

impl Region {
    pub fn new(lo: RationalVector, hi: RationalVector) -> Self {
        assert_eq!(lo.dim(), hi.dim());
        Self { lo, hi }
    }

    /// Bounding box of `p` grown by `factor` times its largest side on
    /// every side.
    pub fn around(p: &Polytope, factor: i64) -> Self {
        let (lo, hi) = p.bounds();
        let extent = (0..p.dim())
            .map(|i| &hi[i] - &lo[i])
            .max()
            .expect("positive dimension");
        let pad = extent * Rational::from_integer(factor.into());
        let lo = lo.iter().map(|x| x - &pad).collect();
        let hi = hi.iter().map(|x| x + &pad).collect();
        Self { lo, hi }
    }

    /// The default region: three extents of padding.
    pub fn default_for(p: &Polytope) -> Self {
        Self::around(p, 3)
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    /// Whether the closed box `[lo, hi]` meets the open region.
    pub fn meets_box(&self, lo: &RationalVector, hi: &RationalVector) -> bool {
        (0..self.dim()).all(|i| lo[i] < self.hi[i] && hi[i] > self.lo[i])
    }

    /// Whether the closed box lies in the closed region.
    pub fn contains_box(&self, lo: &RationalVector, hi: &RationalVector) -> bool {
        (0..self.dim()).all(|i| lo[i] >= self.lo[i] && hi[i] <= self.hi[i])
    }

    /// Whether the plane passes through the open region.
    pub fn meets_plane(&self, h: &AffineHyperplane) -> bool {
        let (min, max) = linear_range(h.normal(), &self.lo, &self.hi);
        min < *h.offset() && *h.offset() < max
    }
}

/// Range of `c . x` over the box `[lo, hi]`.
pub(crate) fn linear_range(c: &RationalVector, lo: &RationalVector, hi: &RationalVector) -> (Rational, Rational) {
    let mut min = Rational::from_integer(0.into());
    let mut max = min.clone();
    for i in 0..c.dim() {
        let (a, b) = (&c[i] * &lo[i], &c[i] * &hi[i]);
        if a < b {
            min += a;
            max += b;
        } else {
            min += b;
            max += a;
        }
    }
    (min, max)
}

/// One polytope of the closure with its provenance.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosureCopy {
    pub polytope: Polytope,
    /// Index of the copy this one was reflected from; `None` for the seed.
    pub parent: Option<usize>,
    /// Facet of the parent it was reflected across.
    pub facet: usize,
    pub(crate) lo: RationalVector,
    pub(crate) hi: RationalVector,
    pub(crate) lo_f: Vec<f64>,
    pub(crate) hi_f: Vec<f64>,
}

impl ClosureCopy {
    fn new(polytope: Polytope, parent: Option<usize>, facet: usize) -> Self {
        let (lo, hi) = polytope.bounds();
        let (lo_f, hi_f) = (lo.to_f64(), hi.to_f64());
        Self {
            polytope,
            parent,
            facet,
            lo,
            hi,
            lo_f,
            hi_f,
        }
    }

    fn boxes_overlap(&self, other: &Self) -> bool {
        const SLACK: f64 = 1e-9;
        (0..self.lo_f.len()).all(|i| {
            self.lo_f[i] < other.hi_f[i] + SLACK && other.lo_f[i] < self.hi_f[i] + SLACK
        })
    }
}

/// Copies of a seed polytope generated by repeated reflection in facets.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionClosure {
    pub seed: Polytope,
    pub region: Region,
    pub copies: Vec<ClosureCopy>,
    /// Canonical forms of every facet plane encountered.
    pub plane_set: BTreeSet<AffineHyperplane>,
    /// `false` if the copy cap stopped the search early.
    pub complete: bool,
}

impl ReflectionClosure {
    /// Facet indices, seed first, that carry the seed to copy `i`.
    pub fn word(&self, i: usize) -> Vec<usize> {
        word_of(&self.copies, i)
    }

    /// Planes of the closure passing through the open region.
    pub fn planes_in_region(&self) -> BTreeSet<AffineHyperplane> {
        self.plane_set
            .iter()
            .filter(|h| self.region.meets_plane(h))
            .cloned()
            .collect()
    }

    /// Copies whose closure lies entirely inside the region.
    pub fn interior_copies(&self) -> impl Iterator<Item = &ClosureCopy> {
        self.copies
            .iter()
            .filter(|c| self.region.contains_box(&c.lo, &c.hi))
    }
}

fn word_of(copies: &[ClosureCopy], mut i: usize) -> Vec<usize> {
    let mut w = Vec::new();
    while let Some(p) = copies[i].parent {
        w.push(copies[i].facet);
        i = p;
    }
    w.reverse();
    w
}

/// Replays a word of facet indices from the seed.
pub fn apply_word(seed: &Polytope, word: &[usize]) -> Option<Polytope> {
    let mut p = seed.clone();
    for &j in word {
        let plane = p.facets().get(j)?.plane.clone();
        p = p.reflect(&plane);
    }
    Some(p)
}

/// Breadth-first closure under facet reflections, keeping copies whose
/// bounding box meets the region.
pub fn reflection_closure(p: &Polytope, region: &Region, max_copies: usize) -> ReflectionClosure {
    let mut engine = Engine::new(p, region, max_copies, false);
    engine.run();
    engine.into_closure()
}

/// Evidence that a polytope does not strictly tessellate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Two copies whose interiors share `witness`.
    Overlap {
        first: Vec<usize>,
        second: Vec<usize>,
        witness: RationalVector,
    },
    /// A facet plane of copy `source` separates two vertices of copy `cut`.
    PlaneCut {
        plane: AffineHyperplane,
        source: Vec<usize>,
        cut: Vec<usize>,
        below: RationalVector,
        above: RationalVector,
    },
}

impl Certificate {
    /// Independent exact re-check by replaying the reflection words.
    pub fn revalidate(&self, seed: &Polytope) -> bool {
        match self {
            Certificate::Overlap {
                first,
                second,
                witness,
            } => {
                let (Some(a), Some(b)) = (apply_word(seed, first), apply_word(seed, second)) else {
                    return false;
                };
                a.vertices() != b.vertices()
                    && a.contains(witness) == Location::Interior
                    && b.contains(witness) == Location::Interior
            }
            Certificate::PlaneCut {
                plane,
                source,
                cut,
                below,
                above,
            } => {
                let (Some(s), Some(c)) = (apply_word(seed, source), apply_word(seed, cut)) else {
                    return false;
                };
                let key = plane.canonical();
                use num_traits::Signed;
                s.facet_planes().any(|f| f.canonical() == key)
                    && c.vertices().contains(below)
                    && c.vertices().contains(above)
                    && plane.evaluate(below).is_negative()
                    && plane.evaluate(above).is_positive()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Strict,
    NotStrict,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictnessVerdict {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    /// Copies generated before the verdict was reached.
    pub copies: usize,
    pub max_copies: usize,
    pub region: Region,
}

impl StrictnessVerdict {
    pub fn is_strict(&self) -> bool {
        self.verdict == Verdict::Strict
    }
}

/// Decides strict tessellation within `region`.
///
/// Copies are generated breadth-first; each new copy is checked exactly
/// against every earlier copy for interior overlap and against every facet
/// plane seen so far, and its own facet planes are checked against every
/// earlier copy. The first violation ends the search with a certificate.
pub fn is_strict_tessellation(p: &Polytope, region: &Region, max_copies: usize) -> StrictnessVerdict {
    let mut engine = Engine::new(p, region, max_copies, true);
    let outcome = engine.run();
    let verdict = match (&outcome, engine.complete) {
        (Some(_), _) => Verdict::NotStrict,
        (None, true) => Verdict::Strict,
        (None, false) => Verdict::Inconclusive,
    };
    StrictnessVerdict {
        verdict,
        certificate: outcome,
        copies: engine.copies.len(),
        max_copies,
        region: region.clone(),
    }
}

/// Strictness with the default region and copy cap.
pub fn is_strict_tessellation_default(p: &Polytope) -> StrictnessVerdict {
    is_strict_tessellation(p, &Region::default_for(p), DEFAULT_MAX_COPIES)
}

/// Planes grouped by canonical normal, each remembering a copy it came from.
#[derive(Default)]
struct PlaneIndex {
    by_normal: BTreeMap<RationalVector, BTreeMap<Rational, usize>>,
}

impl PlaneIndex {
    fn insert(&mut self, h: &AffineHyperplane, source: usize) -> bool {
        let c = h.canonical();
        let offsets = self.by_normal.entry(c.normal().clone()).or_default();
        if offsets.contains_key(c.offset()) {
            return false;
        }
        offsets.insert(c.offset().clone(), source);
        true
    }

    /// A known plane strictly between two vertices of `p`.
    fn cutting(&self, p: &Polytope) -> Option<(AffineHyperplane, usize)> {
        use core::ops::Bound::Excluded;
        for (n, offsets) in &self.by_normal {
            let values: Vec<Rational> = p.vertices().iter().map(|v| n.dot(v)).collect();
            let min = values.iter().min().unwrap();
            let max = values.iter().max().unwrap();
            if min == max {
                continue;
            }
            if let Some((d, &src)) = offsets.range((Excluded(min), Excluded(max))).next() {
                let h = AffineHyperplane::new(n.clone(), d.clone()).expect("canonical normals are nonzero");
                return Some((h, src));
            }
        }
        None
    }

    fn planes(&self) -> BTreeSet<AffineHyperplane> {
        self.by_normal
            .iter()
            .flat_map(|(n, offs)| {
                offs.keys()
                    .map(move |d| AffineHyperplane::new(n.clone(), d.clone()).expect("nonzero normal"))
            })
            .collect()
    }
}

struct Engine<'a> {
    seed: &'a Polytope,
    region: &'a Region,
    max_copies: usize,
    check: bool,
    copies: Vec<ClosureCopy>,
    keys: BTreeSet<Vec<RationalVector>>,
    planes: PlaneIndex,
    complete: bool,
}

impl<'a> Engine<'a> {
    fn new(seed: &'a Polytope, region: &'a Region, max_copies: usize, check: bool) -> Self {
        Self {
            seed,
            region,
            max_copies: max_copies.max(1),
            check,
            copies: Vec::new(),
            keys: BTreeSet::new(),
            planes: PlaneIndex::default(),
            complete: true,
        }
    }

    fn run(&mut self) -> Option<Certificate> {
        let first = ClosureCopy::new(self.seed.clone(), None, 0);
        if let Some(c) = self.admit(first) {
            return Some(c);
        }
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for j in 0..self.copies[i].polytope.facets().len() {
                let plane = self.copies[i].polytope.facets()[j].plane.clone();
                let image = self.copies[i].polytope.reflect(&plane);
                if self.keys.contains(image.vertices()) {
                    continue;
                }
                let copy = ClosureCopy::new(image, Some(i), j);
                if !self.region.meets_box(&copy.lo, &copy.hi) {
                    continue;
                }
                if self.copies.len() >= self.max_copies {
                    self.complete = false;
                    return None;
                }
                if let Some(c) = self.admit(copy) {
                    return Some(c);
                }
                queue.push_back(self.copies.len() - 1);
            }
        }
        None
    }

    /// Adds a copy, running the strictness checks first when enabled.
    fn admit(&mut self, copy: ClosureCopy) -> Option<Certificate> {
        let idx = self.copies.len();
        if self.check {
            if let Some(c) = self.check_new(&copy) {
                self.keys.insert(copy.polytope.vertices().to_vec());
                self.copies.push(copy);
                return Some(c);
            }
        }
        for f in copy.polytope.facet_planes() {
            self.planes.insert(f, idx);
        }
        self.keys.insert(copy.polytope.vertices().to_vec());
        self.copies.push(copy);
        None
    }

    fn check_new(&self, copy: &ClosureCopy) -> Option<Certificate> {
        let new_word = || {
            let mut w = copy.parent.map(|p| word_of(&self.copies, p)).unwrap_or_default();
            if copy.parent.is_some() {
                w.push(copy.facet);
            }
            w
        };
        for (k, other) in self.copies.iter().enumerate() {
            if !copy.boxes_overlap(other) {
                continue;
            }
            if let Some(witness) = copy.polytope.interior_intersection(&other.polytope) {
                return Some(Certificate::Overlap {
                    first: word_of(&self.copies, k),
                    second: new_word(),
                    witness,
                });
            }
        }
        if let Some((plane, src)) = self.planes.cutting(&copy.polytope) {
            let (below, above) = copy.polytope.cut_by(&plane).expect("plane is strictly inside the range");
            return Some(Certificate::PlaneCut {
                plane,
                source: word_of(&self.copies, src),
                cut: new_word(),
                below,
                above,
            });
        }
        // new planes of this copy against earlier copies
        for f in copy.polytope.facet_planes() {
            let c = f.canonical();
            let known = self
                .planes
                .by_normal
                .get(c.normal())
                .is_some_and(|o| o.contains_key(c.offset()));
            if known {
                continue;
            }
            let (n, d) = (c.normal().to_f64(), crate::rational::to_f64(c.offset()));
            for (k, other) in self.copies.iter().enumerate() {
                if !plane_may_cut(&n, d, &other.lo_f, &other.hi_f) {
                    continue;
                }
                if let Some((below, above)) = other.polytope.cut_by(&c) {
                    return Some(Certificate::PlaneCut {
                        plane: c,
                        source: new_word(),
                        cut: word_of(&self.copies, k),
                        below,
                        above,
                    });
                }
            }
        }
        None
    }

    fn into_closure(self) -> ReflectionClosure {
        ReflectionClosure {
            seed: self.seed.clone(),
            region: self.region.clone(),
            plane_set: self.planes.planes(),
            copies: self.copies,
            complete: self.complete,
        }
    }
}

/// Conservative float test: can the plane `n . x = d` meet the open box?
fn plane_may_cut(n: &[f64], d: f64, lo: &[f64], hi: &[f64]) -> bool {
    let (mut min, mut max) = (0.0, 0.0);
    let mut scale = d.abs();
    for i in 0..n.len() {
        let (a, b) = (n[i] * lo[i], n[i] * hi[i]);
        min += a.min(b);
        max += a.max(b);
        scale += a.abs().max(b.abs());
    }
    let eps = 1e-9 * (1.0 + scale);
    min - eps < d && d < max + eps
}
