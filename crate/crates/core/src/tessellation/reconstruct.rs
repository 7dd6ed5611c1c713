use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::alcoves::AffineArrangement;
use crate::error::TessellationError;
use crate::geometry::{AffineHyperplane, Polytope};
use crate::rational::{Rational, RationalVector};
use crate::roots::{RootCandidate, RootSystem};
use crate::tessellation::{is_strict_tessellation, reflection_closure, Region, DEFAULT_MAX_COPIES};

/// Per wall direction: the foot `y_v` of the nearest parallel plane seen
/// from the origin, and the root `v` it determines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallFrameEntry {
    /// Canonical covector of the direction.
    pub normal: RationalVector,
    /// Distance between adjacent parallel planes, measured along `normal`.
    pub spacing: Rational,
    pub offset_vector: RationalVector,
    pub root: RationalVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallFrame {
    pub entries: Vec<WallFrameEntry>,
}

impl WallFrame {
    /// `y_v = v / |v|^2` and `|v| |y_v| = 1` for every entry, exactly.
    pub fn is_consistent(&self, p: &Polytope) -> bool {
        let m = p.metric();
        self.entries.iter().all(|e| {
            let nv = m.norm_sq(&e.root);
            let ny = m.norm_sq(&e.offset_vector);
            e.offset_vector == e.root.scale(&nv.recip()) && (&nv * &ny).is_one()
        })
    }
}

/// A root system rebuilt from the planes of a strict tessellation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub root_system: RootSystem,
    /// The vertex of the input taken as origin; every wall direction passes
    /// through it.
    pub origin: RationalVector,
    pub frame: WallFrame,
}

impl Reconstruction {
    /// The affine planes of the reconstructed system meeting `region`, in
    /// the input's coordinates.
    pub fn planes_in(&self, region: &Region) -> BTreeSet<AffineHyperplane> {
        let arr = AffineArrangement::new(&self.root_system);
        let lo = region.lo.sub(&self.origin);
        let hi = region.hi.sub(&self.origin);
        arr.planes_in(&lo, &hi)
            .into_iter()
            .map(|h| h.translated(&self.origin).canonical())
            .collect()
    }
}

/// Rebuilds a root system whose alcoves are congruent to `p`.
///
/// Strictness is checked in a neighbourhood of `p`, which is also where
/// the wall directions are collected. The neighbourhood starts at one
/// extent of padding and doubles (up to four) until every wall direction
/// shows at least two parallel planes, so the spacing is determined.
pub fn root_system_from_tessellation(p: &Polytope) -> Result<Reconstruction, TessellationError> {
    let mut planes = BTreeSet::new();
    for factor in [1, 2, 4] {
        let region = Region::around(p, factor);
        let verdict = is_strict_tessellation(p, &region, DEFAULT_MAX_COPIES);
        if !verdict.is_strict() {
            return Err(TessellationError::NotStrict(Box::new(verdict)));
        }
        planes = reflection_closure(p, &region, DEFAULT_MAX_COPIES).plane_set;
        let mut count: BTreeMap<RationalVector, usize> = BTreeMap::new();
        for h in &planes {
            *count.entry(h.canonical().normal().clone()).or_default() += 1;
        }
        if count.values().all(|&c| c >= 2) {
            break;
        }
    }
    reconstruct_from_planes(p, &planes)
}

/// The length rule applied to a known plane set containing the walls
/// through the vertices of `p`.
pub fn reconstruct_from_planes(
    p: &Polytope,
    planes: &BTreeSet<AffineHyperplane>,
) -> Result<Reconstruction, TessellationError> {
    let mut by_normal: BTreeMap<RationalVector, Vec<Rational>> = BTreeMap::new();
    for h in planes {
        let c = h.canonical();
        by_normal.entry(c.normal().clone()).or_default().push(c.offset().clone());
    }
    let origin = p
        .vertices()
        .iter()
        .find(|v| {
            by_normal
                .iter()
                .all(|(n, offs)| offs.contains(&n.dot(v)))
        })
        .cloned()
        .ok_or(TessellationError::NoSpecialVertex)?;

    let metric = p.metric();
    let mut entries = Vec::new();
    let mut roots = Vec::new();
    for (n, offs) in &by_normal {
        let base = n.dot(&origin);
        let shifted: Vec<Rational> = offs.iter().map(|d| d - &base).collect();
        let spacing = shifted
            .iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.abs())
            .min()
            .ok_or_else(|| TessellationError::UnevenSpacing(n.clone()))?;
        if shifted.iter().any(|d| !(d / &spacing).is_integer()) {
            return Err(TessellationError::UnevenSpacing(n.clone()));
        }
        // foot of the perpendicular from the origin to n.x = spacing
        let g = metric.raise(n);
        let y = g.scale(&(&spacing / metric.dual_norm_sq(n)));
        // |v| = 1/|y_v|, v along y_v
        let v = y.scale(&metric.norm_sq(&y).recip());
        roots.push(v.neg());
        roots.push(v.clone());
        entries.push(WallFrameEntry {
            normal: n.clone(),
            spacing,
            offset_vector: y,
            root: v,
        });
    }
    let root_system = RootSystem::new(RootCandidate {
        roots,
        metric: metric.clone(),
        support: None,
    })?;
    Ok(Reconstruction {
        root_system,
        origin,
        frame: WallFrame { entries },
    })
}
