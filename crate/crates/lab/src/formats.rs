//! JSON and CSV shapes for inputs and reports.
//!
//! Rationals are written as strings (`"3/2"`, `"-1"`); on input plain JSON
//! integers are accepted as well. Every report type converts back into the
//! corresponding core value, so outputs can be read back in.

use alcove_core::alcoves::{Alcove, Wall};
use alcove_core::crystallo::{GoldbachWitness, IntegerMatrix, PsiValue};
use alcove_core::fd::{FdSpectrum, NodalSet};
use alcove_core::geometry::{AffineHyperplane, Metric, Polytope};
use alcove_core::rational::{format_rational, parse_rational, Rational, RationalMatrix, RationalVector};
use alcove_core::roots::{
    Axiom, AxiomCheck, Chamber, RootCandidate, RootSystem, ValidationReport, WeylGroup, Witness,
};
use alcove_core::spectra::{SpectrumEntry, TrigSum, TrigTerm, VerificationReport};
use alcove_core::tessellation::{Certificate, ReflectionClosure, Region, StrictnessVerdict, Verdict};
use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A rational on input: a JSON integer or a string such as `"-7/3"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Num::Int(n) => Ok(Rational::from_integer((*n).into())),
            Num::Text(s) => parse_rational(s).map_err(|e| anyhow!("{e}")),
        }
    }
}

impl From<&Rational> for Num {
    fn from(r: &Rational) -> Self {
        Num::Text(format_rational(r))
    }
}

pub fn rat_out(r: &Rational) -> String {
    format_rational(r)
}

pub fn vec_out(v: &RationalVector) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn vec_in(v: &[Num]) -> Result<RationalVector> {
    v.iter().map(Num::to_rational).collect()
}

fn vec_str_in(v: &[String]) -> Result<RationalVector> {
    v.iter()
        .map(|s| parse_rational(s).map_err(|e| anyhow!("{e}")))
        .collect()
}

fn matrix_out(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vec_out(&m.row(i))).collect()
}

fn matrix_in(rows: &[Vec<String>]) -> Result<RationalMatrix> {
    let rows: Vec<RationalVector> = rows.iter().map(|r| vec_str_in(r)).collect::<Result<_>>()?;
    Ok(RationalMatrix::from_rows(&rows))
}

fn metric_in(gram: &Option<Vec<Vec<Num>>>, dim: usize) -> Result<Metric> {
    match gram {
        None => Ok(Metric::euclidean(dim)),
        Some(rows) => {
            let rows: Vec<RationalVector> = rows.iter().map(|r| vec_in(r)).collect::<Result<_>>()?;
            Metric::new(RationalMatrix::from_rows(&rows)).map_err(|e| anyhow!("gram: {e}"))
        }
    }
}

fn metric_out(m: &Metric) -> Option<Vec<Vec<Num>>> {
    (!m.is_euclidean()).then(|| {
        let g = m.gram();
        (0..g.rows()).map(|i| g.row(i).iter().map(Num::from).collect()).collect()
    })
}

/// A polytope by its vertices, optionally in a frame with Gram matrix `gram`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<Num>>>,
}

impl PolytopeJson {
    pub fn from_core(p: &Polytope) -> Self {
        Self {
            vertices: p.vertices().iter().map(|v| v.iter().map(Num::from).collect()).collect(),
            gram: metric_out(p.metric()),
        }
    }

    pub fn to_core(&self) -> Result<Polytope> {
        let vertices: Vec<RationalVector> = self.vertices.iter().map(|v| vec_in(v)).collect::<Result<_>>()?;
        let dim = vertices.first().map_or(0, RationalVector::dim);
        let metric = metric_in(&self.gram, dim)?;
        Polytope::from_vertices_in(metric, vertices).map_err(|e| anyhow!("polytope: {e}"))
    }
}

/// A root system: the roots plus, on output, derived data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub roots: Vec<Vec<Num>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<Num>>>,
    /// A basis of the span, needed when the roots do not span the ambient
    /// space (A_n, G2).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<Vec<Num>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positive: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<Vec<Vec<i64>>>,
}

impl RootSystemJson {
    pub fn from_core(r: &RootSystem) -> Self {
        Self {
            roots: r.roots().iter().map(|v| v.iter().map(Num::from).collect()).collect(),
            gram: metric_out(r.metric()),
            support: (!r.is_full_rank())
                .then(|| r.support_basis().iter().map(|v| v.iter().map(Num::from).collect()).collect()),
            rank: Some(r.rank()),
            positive: Some(r.positive_roots().iter().map(vec_out).collect()),
            simple: Some(r.simple_roots().iter().map(vec_out).collect()),
            cartan: Some(r.cartan_matrix()),
        }
    }

    pub fn candidate(&self) -> Result<RootCandidate> {
        let roots: Vec<RationalVector> = self.roots.iter().map(|v| vec_in(v)).collect::<Result<_>>()?;
        let dim = roots.first().map_or(0, RationalVector::dim);
        Ok(RootCandidate {
            roots,
            metric: metric_in(&self.gram, dim)?,
            support: self
                .support
                .as_ref()
                .map(|s| s.iter().map(|v| vec_in(v)).collect::<Result<_>>())
                .transpose()?,
        })
    }

    pub fn to_core(&self) -> Result<RootSystem> {
        RootSystem::new(self.candidate()?).map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    Zero { vector: Vec<String> },
    RankDeficient { rank: usize, expected: usize },
    OutsideSupport { vector: Vec<String> },
    ProperMultiple { root: Vec<String>, multiple: Vec<String>, factor: String },
    NotClosed { mirror: Vec<String>, root: Vec<String>, image: Vec<String> },
    NonIntegral { u: Vec<String>, v: Vec<String>, pairing: String },
}

impl WitnessJson {
    fn from_core(w: &Witness) -> Self {
        match w {
            Witness::Zero(v) => Self::Zero { vector: vec_out(v) },
            Witness::RankDeficient { rank, expected } => Self::RankDeficient {
                rank: *rank,
                expected: *expected,
            },
            Witness::OutsideSupport(v) => Self::OutsideSupport { vector: vec_out(v) },
            Witness::ProperMultiple { root, multiple, factor } => Self::ProperMultiple {
                root: vec_out(root),
                multiple: vec_out(multiple),
                factor: rat_out(factor),
            },
            Witness::NotClosed { mirror, root, image } => Self::NotClosed {
                mirror: vec_out(mirror),
                root: vec_out(root),
                image: vec_out(image),
            },
            Witness::NonIntegral { u, v, pairing } => Self::NonIntegral {
                u: vec_out(u),
                v: vec_out(v),
                pairing: rat_out(pairing),
            },
        }
    }

    fn to_core(&self) -> Result<Witness> {
        let r = |s: &String| parse_rational(s).map_err(|e| anyhow!("{e}"));
        Ok(match self {
            Self::Zero { vector } => Witness::Zero(vec_str_in(vector)?),
            Self::RankDeficient { rank, expected } => Witness::RankDeficient {
                rank: *rank,
                expected: *expected,
            },
            Self::OutsideSupport { vector } => Witness::OutsideSupport(vec_str_in(vector)?),
            Self::ProperMultiple { root, multiple, factor } => Witness::ProperMultiple {
                root: vec_str_in(root)?,
                multiple: vec_str_in(multiple)?,
                factor: r(factor)?,
            },
            Self::NotClosed { mirror, root, image } => Witness::NotClosed {
                mirror: vec_str_in(mirror)?,
                root: vec_str_in(root)?,
                image: vec_str_in(image)?,
            },
            Self::NonIntegral { u, v, pairing } => Witness::NonIntegral {
                u: vec_str_in(u)?,
                v: vec_str_in(v)?,
                pairing: r(pairing)?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomJson {
    pub axiom: usize,
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationJson {
    pub valid: bool,
    pub checks: Vec<AxiomJson>,
}

impl ValidationJson {
    pub fn from_core(r: &ValidationReport) -> Self {
        Self {
            valid: r.all_passed(),
            checks: r
                .checks
                .iter()
                .map(|c| AxiomJson {
                    axiom: c.axiom.index(),
                    name: c.axiom.name().into(),
                    passed: c.passed(),
                    witness: c.witness.as_ref().map(WitnessJson::from_core),
                })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<ValidationReport> {
        let checks = self
            .checks
            .iter()
            .map(|c| {
                let axiom = *Axiom::ALL
                    .iter()
                    .find(|a| a.index() == c.axiom)
                    .ok_or_else(|| anyhow!("unknown axiom {}", c.axiom))?;
                Ok(AxiomCheck {
                    axiom,
                    witness: c.witness.as_ref().map(WitnessJson::to_core).transpose()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(ValidationReport { checks })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylElementJson {
    pub matrix: Vec<Vec<String>>,
    pub det: i8,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylJson {
    pub order: usize,
    pub elements: Vec<WeylElementJson>,
}

impl WeylJson {
    pub fn from_core(w: &WeylGroup) -> Self {
        Self {
            order: w.order(),
            elements: w
                .elements()
                .iter()
                .map(|e| WeylElementJson {
                    matrix: matrix_out(&e.matrix),
                    det: e.det,
                    word: e.word.clone(),
                })
                .collect(),
        }
    }

    /// The element matrices, in order.
    pub fn matrices(&self) -> Result<Vec<RationalMatrix>> {
        self.elements.iter().map(|e| matrix_in(&e.matrix)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChamberJson {
    pub walls: Vec<Vec<String>>,
    pub interior_point: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChambersJson {
    pub count: usize,
    pub chambers: Vec<ChamberJson>,
}

impl ChambersJson {
    pub fn from_core(c: &[Chamber]) -> Self {
        Self {
            count: c.len(),
            chambers: c
                .iter()
                .map(|c| ChamberJson {
                    walls: c.walls.iter().map(vec_out).collect(),
                    interior_point: vec_out(&c.interior_point),
                })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<Vec<Chamber>> {
        self.chambers
            .iter()
            .map(|c| {
                Ok(Chamber {
                    walls: c.walls.iter().map(|w| vec_str_in(w)).collect::<Result<_>>()?,
                    interior_point: vec_str_in(&c.interior_point)?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallJson {
    /// Root in support-frame coordinates.
    pub root: Vec<String>,
    pub level: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlcoveJson {
    /// Vertices in ambient coordinates.
    pub vertices: Vec<Vec<String>>,
    /// The alcove polytope in support-frame coordinates.
    pub frame_polytope: PolytopeJson,
    pub frame_basis: Vec<Vec<String>>,
    pub walls: Vec<WallJson>,
}

impl AlcoveJson {
    pub fn from_core(a: &Alcove) -> Self {
        Self {
            vertices: a.ambient_vertices().iter().map(vec_out).collect(),
            frame_polytope: PolytopeJson::from_core(&a.polytope),
            frame_basis: a.frame.basis().iter().map(vec_out).collect(),
            walls: a
                .walls
                .iter()
                .map(|w| WallJson {
                    root: vec_out(&w.root),
                    level: w.level.to_string(),
                })
                .collect(),
        }
    }

    pub fn polytope(&self) -> Result<Polytope> {
        self.frame_polytope.to_core()
    }

    pub fn walls(&self) -> Result<Vec<Wall>> {
        self.walls
            .iter()
            .map(|w| {
                Ok(Wall {
                    root: vec_str_in(&w.root)?,
                    level: w.level.parse::<BigInt>().context("wall level")?,
                })
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneJson {
    pub normal: Vec<String>,
    pub offset: String,
}

impl PlaneJson {
    pub fn from_core(h: &AffineHyperplane) -> Self {
        Self {
            normal: vec_out(h.normal()),
            offset: rat_out(h.offset()),
        }
    }

    pub fn to_core(&self) -> Result<AffineHyperplane> {
        let offset = parse_rational(&self.offset).map_err(|e| anyhow!("{e}"))?;
        AffineHyperplane::new(vec_str_in(&self.normal)?, offset).map_err(|e| anyhow!("{e}"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateJson {
    Overlap {
        first: Vec<usize>,
        second: Vec<usize>,
        witness: Vec<String>,
    },
    PlaneCut {
        plane: PlaneJson,
        source: Vec<usize>,
        cut: Vec<usize>,
        below: Vec<String>,
        above: Vec<String>,
    },
}

impl CertificateJson {
    pub fn from_core(c: &Certificate) -> Self {
        match c {
            Certificate::Overlap { first, second, witness } => Self::Overlap {
                first: first.clone(),
                second: second.clone(),
                witness: vec_out(witness),
            },
            Certificate::PlaneCut {
                plane,
                source,
                cut,
                below,
                above,
            } => Self::PlaneCut {
                plane: PlaneJson::from_core(plane),
                source: source.clone(),
                cut: cut.clone(),
                below: vec_out(below),
                above: vec_out(above),
            },
        }
    }

    pub fn to_core(&self) -> Result<Certificate> {
        Ok(match self {
            Self::Overlap { first, second, witness } => Certificate::Overlap {
                first: first.clone(),
                second: second.clone(),
                witness: vec_str_in(witness)?,
            },
            Self::PlaneCut {
                plane,
                source,
                cut,
                below,
                above,
            } => Certificate::PlaneCut {
                plane: plane.to_core()?,
                source: source.clone(),
                cut: cut.clone(),
                below: vec_str_in(below)?,
                above: vec_str_in(above)?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    pub lo: Vec<String>,
    pub hi: Vec<String>,
}

impl RegionJson {
    pub fn from_core(r: &Region) -> Self {
        Self {
            lo: vec_out(&r.lo),
            hi: vec_out(&r.hi),
        }
    }

    pub fn to_core(&self) -> Result<Region> {
        Ok(Region::new(vec_str_in(&self.lo)?, vec_str_in(&self.hi)?))
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Strict => "strict",
        Verdict::NotStrict => "not_strict",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub verdict: String,
    pub copies: usize,
    pub max_copies: usize,
    pub region: RegionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

impl VerdictJson {
    pub fn from_core(v: &StrictnessVerdict) -> Self {
        Self {
            verdict: verdict_name(v.verdict).into(),
            copies: v.copies,
            max_copies: v.max_copies,
            region: RegionJson::from_core(&v.region),
            certificate: v.certificate.as_ref().map(CertificateJson::from_core),
        }
    }

    pub fn to_core(&self) -> Result<StrictnessVerdict> {
        let verdict = match self.verdict.as_str() {
            "strict" => Verdict::Strict,
            "not_strict" => Verdict::NotStrict,
            "inconclusive" => Verdict::Inconclusive,
            other => bail!("unknown verdict {other:?}"),
        };
        Ok(StrictnessVerdict {
            verdict,
            certificate: self.certificate.as_ref().map(CertificateJson::to_core).transpose()?,
            copies: self.copies,
            max_copies: self.max_copies,
            region: self.region.to_core()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CopyJson {
    pub vertices: Vec<Vec<String>>,
    pub word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureJson {
    pub complete: bool,
    pub region: RegionJson,
    pub copies: Vec<CopyJson>,
    pub planes: Vec<PlaneJson>,
}

impl ClosureJson {
    pub fn from_core(c: &ReflectionClosure) -> Self {
        Self {
            complete: c.complete,
            region: RegionJson::from_core(&c.region),
            copies: c
                .copies
                .iter()
                .enumerate()
                .map(|(i, k)| CopyJson {
                    vertices: k.polytope.vertices().iter().map(vec_out).collect(),
                    word: c.word(i),
                })
                .collect(),
            planes: c.planes_in_region().iter().map(PlaneJson::from_core).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameEntryJson {
    pub normal: Vec<String>,
    pub spacing: String,
    pub offset_vector: Vec<String>,
    pub root: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionJson {
    pub root_system: RootSystemJson,
    pub origin: Vec<String>,
    pub frame: Vec<FrameEntryJson>,
    pub frame_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntryJson {
    pub q_norm_sq: String,
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub weights: Vec<Vec<String>>,
}

impl SpectrumEntryJson {
    pub fn from_core(e: &SpectrumEntry) -> Self {
        Self {
            q_norm_sq: rat_out(&e.q_norm_sq),
            eigenvalue: e.eigenvalue(),
            multiplicity: e.multiplicity,
            weights: e.weights.iter().map(vec_out).collect(),
        }
    }

    pub fn to_core(&self) -> Result<SpectrumEntry> {
        Ok(SpectrumEntry {
            q_norm_sq: parse_rational(&self.q_norm_sq).map_err(|e| anyhow!("{e}"))?,
            multiplicity: self.multiplicity,
            weights: self.weights.iter().map(|w| vec_str_in(w)).collect::<Result<_>>()?,
        })
    }
}

/// CSV columns: index, q_norm_sq, eigenvalue, multiplicity, weights.
pub fn spectrum_csv(entries: &[SpectrumEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "q_norm_sq", "eigenvalue", "multiplicity", "weights"])?;
    for (i, e) in entries.iter().enumerate() {
        let weights: Vec<String> = e.weights.iter().map(|q| format!("({})", vec_out(q).join(","))).collect();
        w.write_record([
            (i + 1).to_string(),
            rat_out(&e.q_norm_sq),
            format!("{:.17e}", e.eigenvalue()),
            e.multiplicity.to_string(),
            weights.join(";"),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Reads [`spectrum_csv`] output back.
pub fn spectrum_from_csv(text: &str) -> Result<Vec<SpectrumEntry>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| {
            let rec = rec?;
            let q_norm_sq = parse_rational(&rec[1]).map_err(|e| anyhow!("{e}"))?;
            let multiplicity = rec[3].parse()?;
            let weights = rec[4]
                .split(';')
                .filter(|s| !s.is_empty())
                .map(|w| {
                    let inner = w.trim_start_matches('(').trim_end_matches(')');
                    let parts: Vec<String> = inner.split(',').map(str::to_string).collect();
                    vec_str_in(&parts)
                })
                .collect::<Result<_>>()?;
            Ok(SpectrumEntry {
                q_norm_sq,
                multiplicity,
                weights,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub re: f64,
    pub im: f64,
    pub frequency: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigSumJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_norm_sq: Option<String>,
    pub eigenvalue: f64,
    pub terms: Vec<TermJson>,
}

impl TrigSumJson {
    pub fn from_core(u: &TrigSum) -> Self {
        Self {
            dim: u.dim,
            q_norm_sq: u.q_norm_sq.as_ref().map(rat_out),
            eigenvalue: u.eigenvalue(),
            terms: u
                .terms
                .iter()
                .map(|t| TermJson {
                    re: t.coefficient.re,
                    im: t.coefficient.im,
                    frequency: t.frequency.clone(),
                    weight: t.weight.as_ref().map(vec_out),
                })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<TrigSum> {
        Ok(TrigSum {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    Ok(TrigTerm {
                        coefficient: Complex64::new(t.re, t.im),
                        frequency: t.frequency.clone(),
                        weight: t.weight.as_deref().map(vec_str_in).transpose()?,
                    })
                })
                .collect::<Result<_>>()?,
            q_norm_sq: self
                .q_norm_sq
                .as_deref()
                .map(|s| parse_rational(s).map_err(|e| anyhow!("{e}")))
                .transpose()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationJson {
    pub q_norm_sq: String,
    pub eigenvalue: f64,
    pub interior_max: f64,
    pub boundary_max: f64,
    pub h: f64,
    pub residual_max: f64,
    pub residual_max_half: f64,
    pub residual_order: f64,
    pub sign_constant: bool,
    pub positive_samples: usize,
    pub negative_samples: usize,
    pub antisymmetry_max: f64,
    pub interior_count: usize,
    pub boundary_count: usize,
    pub passed: bool,
}

impl VerificationJson {
    pub fn from_core(q_norm_sq: &Rational, r: &VerificationReport, passed: bool) -> Self {
        Self {
            q_norm_sq: rat_out(q_norm_sq),
            eigenvalue: r.eigenvalue,
            interior_max: r.interior_max,
            boundary_max: r.boundary_max,
            h: r.h,
            residual_max: r.residual_max,
            residual_max_half: r.residual_max_half,
            residual_order: r.residual_order,
            sign_constant: r.sign_constant,
            positive_samples: r.positive_samples,
            negative_samples: r.negative_samples,
            antisymmetry_max: r.antisymmetry_max,
            interior_count: r.interior_count,
            boundary_count: r.boundary_count,
            passed,
        }
    }

    pub fn to_core(&self) -> VerificationReport {
        VerificationReport {
            eigenvalue: self.eigenvalue,
            interior_max: self.interior_max,
            boundary_max: self.boundary_max,
            h: self.h,
            residual_max: self.residual_max,
            residual_max_half: self.residual_max_half,
            residual_order: self.residual_order,
            sign_constant: self.sign_constant,
            positive_samples: self.positive_samples,
            negative_samples: self.negative_samples,
            antisymmetry_max: self.antisymmetry_max,
            interior_count: self.interior_count,
            boundary_count: self.boundary_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdSpectrumJson {
    pub h: f64,
    pub nodes: usize,
    pub eigenvalues: Vec<f64>,
    pub polygon: Vec<Vec<String>>,
}

impl FdSpectrumJson {
    pub fn from_core(s: &FdSpectrum) -> Self {
        Self {
            h: s.h,
            nodes: s.nodes,
            eigenvalues: s.eigenvalues.clone(),
            polygon: s.polygon.iter().map(vec_out).collect(),
        }
    }

    pub fn to_core(&self) -> Result<FdSpectrum> {
        Ok(FdSpectrum {
            eigenvalues: self.eigenvalues.clone(),
            h: self.h,
            nodes: self.nodes,
            polygon: self.polygon.iter().map(|v| vec_str_in(v)).collect::<Result<_>>()?,
        })
    }
}

/// CSV columns: index, eigenvalue.
pub fn fd_csv(s: &FdSpectrum) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "eigenvalue"])?;
    for (i, e) in s.eigenvalues.iter().enumerate() {
        w.write_record([(i + 1).to_string(), format!("{e:.17e}")])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualJson {
    pub point: Vec<f64>,
    pub lambda: f64,
    pub h: Vec<f64>,
    pub residuals: Vec<f64>,
    pub order: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalJson {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
    pub resolution: usize,
    pub polylines: Vec<Vec<[f64; 2]>>,
}

impl NodalJson {
    pub fn from_core(s: &NodalSet) -> Self {
        Self {
            lo: s.lo,
            hi: s.hi,
            resolution: s.resolution,
            polylines: s.polylines.clone(),
        }
    }

    pub fn to_core(&self) -> NodalSet {
        NodalSet {
            lo: self.lo,
            hi: self.hi,
            resolution: self.resolution,
            polylines: self.polylines.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiJson {
    pub m: u64,
    pub psi: u64,
    pub factors: Vec<(u64, u32)>,
}

impl PsiJson {
    pub fn from_core(p: &PsiValue) -> Self {
        Self {
            m: p.m,
            psi: p.value,
            factors: p.factors.clone(),
        }
    }

    pub fn to_core(&self) -> PsiValue {
        PsiValue {
            m: self.m,
            value: self.psi,
            factors: self.factors.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdJson {
    pub n: u64,
    pub orders: Vec<u64>,
}

pub fn matrix_rows_i64(m: &IntegerMatrix) -> Result<Vec<Vec<i64>>> {
    m.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| i64::try_from(x).map_err(|_| anyhow!("matrix entry {x} does not fit in 64 bits")))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldbachJson {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub order: u64,
    pub psi: u64,
    pub determinant: i64,
    /// Row-major integer entries.
    pub matrix: Vec<Vec<i64>>,
}

impl GoldbachJson {
    pub fn from_core(w: &GoldbachWitness) -> Result<Self> {
        Ok(Self {
            n: w.n,
            p: w.p,
            q: w.q,
            order: w.order,
            psi: w.psi,
            determinant: i64::try_from(&w.determinant)?,
            matrix: matrix_rows_i64(&w.matrix)?,
        })
    }

    pub fn to_core(&self) -> Result<GoldbachWitness> {
        let rows: Vec<&[i64]> = self.matrix.iter().map(Vec::as_slice).collect();
        Ok(GoldbachWitness {
            n: self.n,
            p: self.p,
            q: self.q,
            matrix: IntegerMatrix::from_i64(&rows).map_err(|e| anyhow!("{e}"))?,
            order: self.order,
            psi: self.psi,
            determinant: self.determinant.into(),
        })
    }
}
