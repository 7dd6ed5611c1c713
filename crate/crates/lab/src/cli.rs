//! The `alcove-lab` command line.
//!
//! Exit status: 0 on success, 2 when the computation succeeded but the
//! mathematical verdict is negative (invalid root system, non-strict or
//! undecided tessellation, failed eigenpair check), 1 on any error.

use std::path::{Path, PathBuf};

use alcove_core::alcoves::{alcove_at, fundamental_alcove, Alcove};
use alcove_core::crystallo::{goldbach_witness, ord_set, psi_value};
use alcove_core::error::TessellationError;
use alcove_core::fd::{convergence_order, fd_spectrum_with, nodal_set_sample, pde_residual, SolverOptions};
use alcove_core::geometry::Polytope;
use alcove_core::rational::{parse_rational, to_f64, RationalVector};
use alcove_core::roots::{validate_root_system, weyl_chambers, weyl_group, Designation, RootCandidate, RootSystem};
use alcove_core::shapes;
use alcove_core::spectra::{
    eigenfunction, eigenfunction_on_alcove, spectrum, verify_eigenpair, Cutoff, TrigSum, VerifyOptions,
};
use alcove_core::tessellation::{
    is_strict_tessellation, reflection_closure, root_system_from_tessellation, Region, Verdict, DEFAULT_MAX_COPIES,
};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::*;
use crate::svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

/// Everything one invocation needs.
#[derive(Debug, Parser)]
#[command(name = "alcove-lab", version, about = "Root systems, alcoves, tessellations and their spectra")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for sampling points and eigensolver starts.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system axioms, standard systems, Weyl groups, chambers.
    #[command(subcommand)]
    Rootsys(RootsysCmd),
    /// Alcoves of the affine arrangement.
    #[command(subcommand)]
    Alcove(AlcoveCmd),
    /// Strict tessellation checks and reconstruction.
    #[command(subcommand)]
    Tessellate(TessellateCmd),
    /// Exact Dirichlet spectra and eigenfunctions of alcoves.
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    /// Finite-difference eigenvalues, PDE residuals and nodal lines.
    #[command(subcommand)]
    Fd(FdCmd),
    /// Orders of integer matrices.
    #[command(subcommand)]
    Crystal(CrystalCmd),
}

#[derive(Debug, Subcommand)]
pub enum RootsysCmd {
    /// Check the five axioms; exits 2 if one fails.
    Validate { system: String },
    /// A standard system such as A2, B3, G2 or A1xA1.
    Standard { designation: String },
    /// All elements of the Weyl group.
    Weyl { system: String },
    /// All Weyl chambers.
    Chambers { system: String },
}

#[derive(Debug, Subcommand)]
pub enum AlcoveCmd {
    /// The fundamental alcove.
    Build { system: String },
    /// The alcove containing an ambient point.
    Locate {
        system: String,
        /// Comma-separated ambient coordinates, e.g. `1/3,1/7`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    /// A shape name, a root system designation (its alcove) or a JSON file.
    pub shape: String,
    /// Search box `x0,y0,x1,y1` in the shape's coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub region: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_COPIES)]
    pub max_copies: usize,
}

#[derive(Debug, Subcommand)]
pub enum TessellateCmd {
    /// Strictness verdict with certificate; exits 2 unless strict.
    Check(ClosureArgs),
    /// The reflection closure inside the region.
    Closure(ClosureArgs),
    /// The root system whose alcove the shape is.
    Reconstruct { shape: String },
}

#[derive(Debug, Args)]
pub struct SystemArg {
    /// Root system designation, shape name or JSON file.
    pub system: Option<String>,
    #[arg(long, conflicts_with = "system")]
    pub family: Option<String>,
}

impl SystemArg {
    fn name(&self) -> Result<&str> {
        self.system
            .as_deref()
            .or(self.family.as_deref())
            .ok_or_else(|| anyhow!("give a root system, e.g. --family B2"))
    }
}

#[derive(Debug, Args)]
pub struct CutoffArgs {
    /// Number of distinct eigenvalues.
    #[arg(long, conflicts_with = "cutoff")]
    pub count: Option<usize>,
    /// Largest eigenvalue to include.
    #[arg(long)]
    pub cutoff: Option<f64>,
}

impl CutoffArgs {
    fn get(&self, default: usize) -> Cutoff {
        match (self.count, self.cutoff) {
            (_, Some(l)) => Cutoff::LambdaMax(l),
            (Some(n), None) => Cutoff::Count(n),
            (None, None) => Cutoff::Count(default),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum SpectrumCmd {
    /// Eigenvalues of the fundamental alcove.
    Compute {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        cutoff: CutoffArgs,
    },
    /// The trigonometric eigenfunction of a weight.
    Eigenfunction {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        weight: WeightArgs,
        /// Express it in Euclidean coordinates of the alcove polytope.
        #[arg(long)]
        on_alcove: bool,
    },
    /// Check boundary values, PDE residual, sign and antisymmetry; exits 2
    /// if an eigenpair fails.
    Verify {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        cutoff: CutoffArgs,
        /// Stencil width for the residual.
        #[arg(long)]
        h: Option<String>,
        #[arg(long, default_value_t = 1000)]
        boundary_samples: usize,
        #[arg(long, default_value_t = 10_000)]
        interior_samples: usize,
        /// Absolute tolerance for boundary and antisymmetry.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Dominant weight, comma separated; defaults to the first weight of
    /// spectrum entry `--index`.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// 1-based spectrum entry.
    #[arg(long, default_value_t = 1)]
    pub index: usize,
}

#[derive(Debug, Args)]
pub struct FunctionArgs {
    /// `fig8`, a TrigSum JSON file, or omitted with --family.
    #[arg(long, conflicts_with = "family")]
    pub function: Option<String>,
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub weight: WeightArgs,
}

#[derive(Debug, Subcommand)]
pub enum FdCmd {
    /// Smallest Dirichlet eigenvalues of the 5-point Laplacian.
    Solve {
        shape: String,
        /// Grid spacing in the shape's coordinates, e.g. `1/128`.
        #[arg(long, default_value = "1/64")]
        h: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// |Delta_h u + lambda u| at h, h/2, h/4 and the observed order.
    Residual {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, default_value = "1/64")]
        h: String,
    },
    /// Marching-squares zero set.
    Nodal {
        #[command(flatten)]
        function: FunctionArgs,
        /// Sampling box `x0,y0,x1,y1`.
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CrystalCmd {
    /// psi(m), the least dimension with an integer matrix of order m.
    Psi { m: u64 },
    /// The orders of finite-order elements of GL(n, Z).
    Ord { n: u64 },
    /// A matrix of order pq in dimension n for an odd prime pair with
    /// p + q = n + 2; with --max, every even n from n to max.
    Goldbach {
        n: u64,
        #[arg(long)]
        max: Option<u64>,
    },
}

/// Exit status and the bytes to write.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: Vec<u8>,
}

/// Lazily rendered output in the formats a subcommand supports.
struct Out<'a> {
    default: Format,
    json: Option<Box<dyn FnOnce() -> Result<String> + 'a>>,
    text: Option<Box<dyn FnOnce() -> Result<String> + 'a>>,
    csv: Option<Box<dyn FnOnce() -> Result<String> + 'a>>,
    svg: Option<Box<dyn FnOnce() -> Result<String> + 'a>>,
}

impl<'a> Out<'a> {
    fn new(default: Format) -> Self {
        Self {
            default,
            json: None,
            text: None,
            csv: None,
            svg: None,
        }
    }

    fn json<T: Serialize + 'a>(mut self, value: T) -> Self {
        self.json = Some(Box::new(move || {
            let mut s = serde_json::to_string_pretty(&value)?;
            s.push('\n');
            Ok(s)
        }));
        self
    }

    fn text(mut self, f: impl FnOnce() -> String + 'a) -> Self {
        self.text = Some(Box::new(move || Ok(f())));
        self
    }

    fn csv(mut self, f: impl FnOnce() -> Result<String> + 'a) -> Self {
        self.csv = Some(Box::new(f));
        self
    }

    fn svg(mut self, f: impl FnOnce() -> Result<String> + 'a) -> Self {
        self.svg = Some(Box::new(f));
        self
    }

    fn render(self, format: Option<Format>) -> Result<String> {
        let format = format.unwrap_or(self.default);
        let f = match format {
            Format::Json => self.json,
            Format::Text => self.text,
            Format::Csv => self.csv,
            Format::Svg => self.svg,
        };
        let f = f.ok_or_else(|| anyhow!("format {format:?} is not available for this subcommand"))?;
        f()
    }
}

/// Caps the global thread pool at `ALCOVE_LAB_THREADS` if set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ALCOVE_LAB_THREADS") {
        let n: usize = v.trim().parse().context("ALCOVE_LAB_THREADS must be a positive integer")?;
        // a second call in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    Ok(())
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let (status, out) = match &cfg.command {
        Command::Rootsys(c) => rootsys(c)?,
        Command::Alcove(c) => alcove(c)?,
        Command::Tessellate(c) => tessellate(c)?,
        Command::Spectrum(c) => spectrum_cmd(c, cfg.seed)?,
        Command::Fd(c) => fd(c, cfg.seed)?,
        Command::Crystal(c) => crystal(c)?,
    };
    let text = out.render(cfg.format)?;
    Ok(Outcome {
        status,
        output: text.into_bytes(),
    })
}

// ---- input parsing

pub fn parse_vector(s: &str) -> Result<RationalVector> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).map_err(|e| anyhow!("{e}")))
        .collect()
}

/// A float given as a decimal or as a fraction like `1/128`.
pub fn parse_real(s: &str) -> Result<f64> {
    match s.trim().parse::<f64>() {
        Ok(x) => Ok(x),
        Err(_) => Ok(to_f64(&parse_rational(s.trim()).map_err(|e| anyhow!("{e}"))?)),
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_real).collect()
}

fn parse_region(s: &str, dim: usize) -> Result<Region> {
    let v = parse_vector(s)?;
    if v.dim() != 2 * dim {
        bail!("region needs {} numbers, got {}", 2 * dim, v.dim());
    }
    let lo: RationalVector = v.iter().take(dim).cloned().collect();
    let hi: RationalVector = v.iter().skip(dim).cloned().collect();
    if (0..dim).any(|i| lo[i] >= hi[i]) {
        bail!("region is empty");
    }
    Ok(Region::new(lo, hi))
}

fn read_json(path: &str) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {path}"))
}

fn designation(s: &str) -> Option<Designation> {
    s.parse::<Designation>().ok()
}

/// A shape name, a designation (its fundamental alcove), or a JSON file
/// holding a polytope or an `alcove build` report.
pub fn load_polytope(s: &str) -> Result<Polytope> {
    if let Some(p) = shapes::by_name(s) {
        return Ok(p);
    }
    if let Some(d) = designation(s) {
        return Ok(fundamental_alcove(&d.build()?).polytope);
    }
    let v = read_json(s)?;
    if v.get("frame_polytope").is_some() {
        let a: AlcoveJson = serde_json::from_value(v)?;
        return a.polytope();
    }
    let p: PolytopeJson = serde_json::from_value(v).with_context(|| format!("{s} is not a polytope"))?;
    p.to_core()
}

fn load_candidate(s: &str) -> Result<RootCandidate> {
    if let Some(d) = designation(s) {
        return Ok(d.build()?.to_candidate());
    }
    let r: RootSystemJson = serde_json::from_value(read_json(s)?).with_context(|| format!("{s} is not a root system"))?;
    r.candidate()
}

/// A designation, a root system JSON file, or a strictly tessellating shape
/// (its reconstructed system).
pub fn load_system(s: &str) -> Result<RootSystem> {
    if let Some(d) = designation(s) {
        return Ok(d.build()?);
    }
    if shapes::by_name(s).is_none() {
        let v = read_json(s)?;
        if v.get("roots").is_some() {
            let r: RootSystemJson = serde_json::from_value(v)?;
            return r.to_core();
        }
    }
    let p = load_polytope(s)?;
    Ok(root_system_from_tessellation(&p)?.root_system)
}

// ---- subcommands

fn rootsys(c: &RootsysCmd) -> Result<(i32, Out<'static>)> {
    Ok(match c {
        RootsysCmd::Validate { system } => {
            let report = validate_root_system(&load_candidate(system)?);
            let dto = ValidationJson::from_core(&report);
            let status = if dto.valid { 0 } else { 2 };
            let text = dto
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "axiom {} {}: {}{}\n",
                        c.axiom,
                        c.name,
                        if c.passed { "ok" } else { "FAILED" },
                        c.witness.as_ref().map(|w| format!(" ({w:?})")).unwrap_or_default()
                    )
                })
                .collect::<String>();
            (status, Out::new(Format::Json).json(dto).text(move || text))
        }
        RootsysCmd::Standard { designation: d } => {
            let d: Designation = d.parse()?;
            let r = d.build()?;
            let text = format!(
                "{d}: {} roots, rank {}, Cartan matrix {:?}\n",
                r.roots().len(),
                r.rank(),
                r.cartan_matrix()
            );
            (0, Out::new(Format::Json).json(RootSystemJson::from_core(&r)).text(move || text))
        }
        RootsysCmd::Weyl { system } => {
            let w = weyl_group(&load_system(system)?)?;
            let dto = WeylJson::from_core(&w);
            let text = format!("|W| = {}\n", dto.order);
            (0, Out::new(Format::Json).json(dto).text(move || text))
        }
        RootsysCmd::Chambers { system } => {
            let c = weyl_chambers(&load_system(system)?)?;
            let dto = ChambersJson::from_core(&c);
            let text = format!("{} chambers\n", dto.count);
            (0, Out::new(Format::Json).json(dto).text(move || text))
        }
    })
}

fn alcove_out(a: Alcove) -> Out<'static> {
    let dto = AlcoveJson::from_core(&a);
    let text = dto
        .vertices
        .iter()
        .map(|v| format!("({})\n", v.join(", ")))
        .collect::<String>();
    Out::new(Format::Json)
        .json(dto)
        .text(move || text)
        .svg(move || {
            if a.polytope.dim() != 2 {
                bail!("SVG needs a rank 2 system");
            }
            Ok(svg::polygon_svg(&a.polytope))
        })
}

fn alcove(c: &AlcoveCmd) -> Result<(i32, Out<'static>)> {
    Ok(match c {
        AlcoveCmd::Build { system } => (0, alcove_out(fundamental_alcove(&load_system(system)?))),
        AlcoveCmd::Locate { system, point } => {
            let r = load_system(system)?;
            (0, alcove_out(alcove_at(&r, &parse_vector(point)?)?))
        }
    })
}

fn region_for(p: &Polytope, region: &Option<String>) -> Result<Region> {
    match region {
        Some(s) => parse_region(s, p.dim()),
        None => Ok(Region::default_for(p)),
    }
}

fn tessellate(c: &TessellateCmd) -> Result<(i32, Out<'static>)> {
    Ok(match c {
        TessellateCmd::Check(a) => {
            let p = load_polytope(&a.shape)?;
            let region = region_for(&p, &a.region)?;
            let max = a.max_copies;
            let v = is_strict_tessellation(&p, &region, max);
            let status = if v.verdict == Verdict::Strict { 0 } else { 2 };
            let dto = VerdictJson::from_core(&v);
            let text = format!("{} ({} copies)\n", dto.verdict, dto.copies);
            let out = Out::new(Format::Json).json(dto).text(move || text).svg(move || {
                if p.dim() != 2 {
                    bail!("SVG needs a 2-D shape");
                }
                let c = reflection_closure(&p, &region, max);
                Ok(svg::closure_svg(&c, v.certificate.as_ref()))
            });
            (status, out)
        }
        TessellateCmd::Closure(a) => {
            let p = load_polytope(&a.shape)?;
            let region = region_for(&p, &a.region)?;
            let max = a.max_copies;
            let c = reflection_closure(&p, &region, max);
            let dto = ClosureJson::from_core(&c);
            let text = format!(
                "{} copies, {} planes{}\n",
                dto.copies.len(),
                dto.planes.len(),
                if dto.complete { "" } else { " (copy cap reached)" }
            );
            let out = Out::new(Format::Json).json(dto).text(move || text).svg(move || {
                if p.dim() != 2 {
                    bail!("SVG needs a 2-D shape");
                }
                let cert = is_strict_tessellation(&p, &region, max).certificate;
                Ok(svg::closure_svg(&c, cert.as_ref()))
            });
            (0, out)
        }
        TessellateCmd::Reconstruct { shape } => {
            let p = load_polytope(shape)?;
            match root_system_from_tessellation(&p) {
                Ok(rec) => {
                    let dto = ReconstructionJson {
                        root_system: RootSystemJson::from_core(&rec.root_system),
                        origin: vec_out(&rec.origin),
                        frame: rec
                            .frame
                            .entries
                            .iter()
                            .map(|e| FrameEntryJson {
                                normal: vec_out(&e.normal),
                                spacing: rat_out(&e.spacing),
                                offset_vector: vec_out(&e.offset_vector),
                                root: vec_out(&e.root),
                            })
                            .collect(),
                        frame_consistent: rec.frame.is_consistent(&p),
                    };
                    let text = format!(
                        "{} roots, Cartan matrix {:?}\n",
                        rec.root_system.roots().len(),
                        rec.root_system.cartan_matrix()
                    );
                    (0, Out::new(Format::Json).json(dto).text(move || text))
                }
                Err(TessellationError::NotStrict(v)) => {
                    let dto = VerdictJson::from_core(&v);
                    let text = format!("{}: nothing to reconstruct\n", dto.verdict);
                    (2, Out::new(Format::Json).json(dto).text(move || text))
                }
                Err(e) => return Err(e.into()),
            }
        }
    })
}

fn pick_weight(r: &RootSystem, w: &WeightArgs) -> Result<RationalVector> {
    if let Some(s) = &w.weight {
        return parse_vector(s);
    }
    if w.index == 0 {
        bail!("--index is 1-based");
    }
    let entries = spectrum(r, Cutoff::Count(w.index));
    entries
        .get(w.index - 1)
        .map(|e| e.weights[0].clone())
        .ok_or_else(|| anyhow!("spectrum has fewer than {} entries", w.index))
}

fn spectrum_cmd(c: &SpectrumCmd, seed: u64) -> Result<(i32, Out<'static>)> {
    Ok(match c {
        SpectrumCmd::Compute { system, cutoff } => {
            let r = load_system(system.name()?)?;
            let entries = spectrum(&r, cutoff.get(10));
            let dto: Vec<SpectrumEntryJson> = entries.iter().map(SpectrumEntryJson::from_core).collect();
            let text = dto
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    format!(
                        "{:>3}  4 pi^2 * {:<8} = {:<22} x{}\n",
                        i + 1,
                        e.q_norm_sq,
                        e.eigenvalue,
                        e.multiplicity
                    )
                })
                .collect::<String>();
            let out = Out::new(Format::Csv)
                .json(dto)
                .text(move || text)
                .csv(move || spectrum_csv(&entries));
            (0, out)
        }
        SpectrumCmd::Eigenfunction {
            system,
            weight,
            on_alcove,
        } => {
            let r = load_system(system.name()?)?;
            let q = pick_weight(&r, weight)?;
            let u = if *on_alcove {
                eigenfunction_on_alcove(&r, &q, &fundamental_alcove(&r))?
            } else {
                eigenfunction(&r, &q)?
            };
            let dto = TrigSumJson::from_core(&u);
            let text = format!(
                "{} terms, eigenvalue {} (|q|^2 = {})\n",
                dto.terms.len(),
                dto.eigenvalue,
                dto.q_norm_sq.clone().unwrap_or_default()
            );
            (0, Out::new(Format::Json).json(dto).text(move || text))
        }
        SpectrumCmd::Verify {
            system,
            cutoff,
            h,
            boundary_samples,
            interior_samples,
            tol,
        } => {
            let r = load_system(system.name()?)?;
            let alcove = fundamental_alcove(&r);
            let entries = spectrum(&r, cutoff.get(3));
            let opts = VerifyOptions {
                boundary_samples: *boundary_samples,
                interior_samples: *interior_samples,
                h: h.as_deref().map(parse_real).transpose()?,
                seed,
            };
            let reports: Vec<VerificationJson> = entries
                .par_iter()
                .enumerate()
                .map(|(i, e)| {
                    let u = eigenfunction_on_alcove(&r, &e.weights[0], &alcove)?;
                    let rep = verify_eigenpair(&u, &alcove.polytope, &opts);
                    let passed = rep.passes(*tol, i == 0);
                    Ok(VerificationJson::from_core(&e.q_norm_sq, &rep, passed))
                })
                .collect::<Result<_>>()?;
            let status = if reports.iter().all(|r| r.passed) { 0 } else { 2 };
            let text = reports
                .iter()
                .map(|r| {
                    format!(
                        "|q|^2 = {:<8} boundary {:.2e}  order {:.3}  antisymmetry {:.2e}  sign {}  {}\n",
                        r.q_norm_sq,
                        r.boundary_max,
                        r.residual_order,
                        r.antisymmetry_max,
                        if r.sign_constant { "constant" } else { "changes" },
                        if r.passed { "PASS" } else { "FAIL" }
                    )
                })
                .collect::<String>();
            (status, Out::new(Format::Json).json(reports).text(move || text))
        }
    })
}

/// The Fig. 8 function `sin x + sin y + sin((x + y)/sqrt 2)`, an
/// eigenfunction with eigenvalue 1 that is not a finite Fourier series on
/// any alcove.
pub fn fig8() -> TrigSum {
    use std::f64::consts::FRAC_1_SQRT_2;
    TrigSum::sine(1.0, &[1.0, 0.0])
        .add(TrigSum::sine(1.0, &[0.0, 1.0]))
        .add(TrigSum::sine(1.0, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]))
}

/// A function to probe, with a default point, eigenvalue, sampling box and
/// domain outline when known.
struct Probe {
    u: TrigSum,
    lambda: Option<f64>,
    point: Option<Vec<f64>>,
    region: Option<([f64; 2], [f64; 2])>,
    outline: Option<Vec<[f64; 2]>>,
}

fn probe(f: &FunctionArgs) -> Result<Probe> {
    match (&f.function, &f.family) {
        (Some(name), _) if name == "fig8" => Ok(Probe {
            u: fig8(),
            lambda: Some(1.0),
            point: Some(vec![0.7, 1.9]),
            region: Some(([-8.0, -8.0], [8.0, 8.0])),
            outline: None,
        }),
        (Some(path), _) => {
            let dto: TrigSumJson = serde_json::from_value(read_json(path)?)?;
            let u = dto.to_core()?;
            let lambda = u.q_norm_sq.is_some().then(|| u.eigenvalue());
            Ok(Probe {
                u,
                lambda,
                point: None,
                region: None,
                outline: None,
            })
        }
        (None, Some(family)) => {
            let r = load_system(family)?;
            let q = pick_weight(&r, &f.weight)?;
            let alcove = fundamental_alcove(&r);
            let u = eigenfunction_on_alcove(&r, &q, &alcove)?;
            let verts = alcove.polytope.euclidean_vertices_f64();
            let n = verts.len() as f64;
            let centre = (0..alcove.polytope.dim())
                .map(|k| verts.iter().map(|v| v[k]).sum::<f64>() / n)
                .collect();
            let (region, outline) = if alcove.polytope.dim() == 2 {
                let outline = svg::euclidean_outline(&alcove.polytope);
                let mut lo = [f64::INFINITY; 2];
                let mut hi = [f64::NEG_INFINITY; 2];
                for p in &outline {
                    for k in 0..2 {
                        lo[k] = lo[k].min(p[k]);
                        hi[k] = hi[k].max(p[k]);
                    }
                }
                (Some((lo, hi)), Some(outline))
            } else {
                (None, None)
            };
            Ok(Probe {
                lambda: Some(u.eigenvalue()),
                u,
                point: Some(centre),
                region,
                outline,
            })
        }
        (None, None) => bail!("give --function fig8, --function FILE or --family"),
    }
}

fn fd(c: &FdCmd, seed: u64) -> Result<(i32, Out<'static>)> {
    Ok(match c {
        FdCmd::Solve { shape, h, count } => {
            let p = load_polytope(shape)?;
            let opts = SolverOptions {
                seed,
                ..SolverOptions::default()
            };
            let s = fd_spectrum_with(&p, parse_real(h)?, *count, &opts)?;
            let dto = FdSpectrumJson::from_core(&s);
            let text = format!(
                "h = {}, {} nodes\n{}",
                s.h,
                s.nodes,
                s.eigenvalues
                    .iter()
                    .enumerate()
                    .map(|(i, e)| format!("{:>3}  {e}\n", i + 1))
                    .collect::<String>()
            );
            (0, Out::new(Format::Csv).json(dto).text(move || text).csv(move || fd_csv(&s)))
        }
        FdCmd::Residual {
            function,
            lambda,
            point,
            h,
        } => {
            let p = probe(function)?;
            let lambda = lambda
                .or(p.lambda)
                .ok_or_else(|| anyhow!("this function has no known eigenvalue; give --lambda"))?;
            let x = match point {
                Some(s) => parse_floats(s)?,
                None => p.point.clone().ok_or_else(|| anyhow!("give --point"))?,
            };
            if x.len() != p.u.dim {
                bail!("point has {} coordinates, function needs {}", x.len(), p.u.dim);
            }
            let h0 = parse_real(h)?;
            let hs = vec![h0, h0 / 2.0, h0 / 4.0];
            let residuals: Vec<f64> = hs.iter().map(|&h| pde_residual(&p.u, lambda, &x, h)).collect();
            let order = if residuals.iter().all(|r| *r > 0.0) {
                convergence_order(&hs, &residuals)
            } else {
                f64::NAN
            };
            let dto = ResidualJson {
                point: x,
                lambda,
                h: hs,
                residuals,
                order,
            };
            let text = format!(
                "{}order {:.4}\n",
                dto.h
                    .iter()
                    .zip(&dto.residuals)
                    .map(|(h, r)| format!("h = {h:<12} residual {r:.6e}\n"))
                    .collect::<String>(),
                dto.order
            );
            (0, Out::new(Format::Json).json(dto).text(move || text))
        }
        FdCmd::Nodal {
            function,
            region,
            resolution,
        } => {
            let p = probe(function)?;
            if p.u.dim != 2 {
                bail!("nodal sets are sampled in the plane");
            }
            let (lo, hi) = match region {
                Some(s) => {
                    let v = parse_floats(s)?;
                    if v.len() != 4 || v[0] >= v[2] || v[1] >= v[3] {
                        bail!("region must be x0,y0,x1,y1 with x0 < x1, y0 < y1");
                    }
                    ([v[0], v[1]], [v[2], v[3]])
                }
                None => p.region.ok_or_else(|| anyhow!("give --region x0,y0,x1,y1"))?,
            };
            let s = nodal_set_sample(&p.u, lo, hi, *resolution);
            let dto = NodalJson::from_core(&s);
            let text = format!(
                "{} polylines, {} points\n",
                s.polylines.len(),
                s.polylines.iter().map(Vec::len).sum::<usize>()
            );
            let outline = p.outline;
            let out = Out::new(Format::Json)
                .json(dto)
                .text(move || text)
                .svg(move || Ok(svg::nodal_svg(&s, outline.as_deref())));
            (0, out)
        }
    })
}

fn crystal(c: &CrystalCmd) -> Result<(i32, Out<'static>)> {
    Ok(match c {
        CrystalCmd::Psi { m } => {
            if *m == 0 {
                bail!("psi is defined for positive integers");
            }
            let dto = PsiJson::from_core(&psi_value(*m));
            let text = format!("psi({}) = {}\n", dto.m, dto.psi);
            (0, Out::new(Format::Json).json(dto).text(move || text))
        }
        CrystalCmd::Ord { n } => {
            let dto = OrdJson { n: *n, orders: ord_set(*n) };
            let text = format!(
                "Ord_{} = {{{}}}\n",
                n,
                dto.orders.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
            );
            (0, Out::new(Format::Json).json(dto).text(move || text))
        }
        CrystalCmd::Goldbach { n, max } => {
            let witness = |n: u64| -> Result<Option<GoldbachJson>> {
                goldbach_witness(n)?.map(|w| GoldbachJson::from_core(&w)).transpose()
            };
            let line = |w: &GoldbachJson| {
                format!(
                    "n = {:<4} p = {:<4} q = {:<4} order {:<6} det {}\n",
                    w.n, w.p, w.q, w.order, w.determinant
                )
            };
            match max {
                None => match witness(*n)? {
                    Some(w) => {
                        let text = line(&w);
                        (0, Out::new(Format::Json).json(w).text(move || text))
                    }
                    None => (2, Out::new(Format::Json).json(serde_json::Value::Null).text(|| "no witness\n".into())),
                },
                Some(max) => {
                    if max < n {
                        bail!("--max {max} is below {n}");
                    }
                    let ns: Vec<u64> = (*n..=*max).step_by(2).collect();
                    let found: Vec<Option<GoldbachJson>> =
                        ns.par_iter().map(|&k| witness(k)).collect::<Result<_>>()?;
                    let status = if found.iter().all(Option::is_some) { 0 } else { 2 };
                    let text = ns
                        .iter()
                        .zip(&found)
                        .map(|(k, w)| match w {
                            Some(w) => line(w),
                            None => format!("n = {k:<4} no witness\n"),
                        })
                        .collect::<String>();
                    (status, Out::new(Format::Json).json(found).text(move || text))
                }
            }
        }
    })
}
