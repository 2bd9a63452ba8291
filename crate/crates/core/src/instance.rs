//! JSON instance specs and the runner behind the command line.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::beurling::{self, CheckOutcome, CheckReport, Mode, Reconstruction, Verdict};
use crate::error::{CheckError, OracleError, ParseError, SpaceError, SubspaceError};
use crate::inner::{self, A2AlphaReport, BoundaryGrid, GridKind, InnerFunctionReport};
use crate::oracle::{self, ExactAmbient, ExactSubspace};
use crate::poly::{ExactPoly, FloatPoly, MultiIndex, OrderValue, ScalarText, TermRecord};
use crate::presets;
use crate::scalar::{Scalar, QI};
use crate::space::{make_space, MomentTable, SpaceKind, SpaceModel};
use crate::subspace::{self, orthonormalize, Ambient, Decomposition, Subspace};
use crate::Tolerances;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Subspace(#[from] SubspaceError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl InstanceError {
    /// Errors that mean a proven statement failed numerically.
    pub fn is_integrity(&self) -> bool {
        matches!(
            self,
            InstanceError::Check(CheckError::Integrity(_))
                | InstanceError::Check(CheckError::RouteDisagreement(_))
                | InstanceError::Check(CheckError::ReconstructionStep { .. })
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KindName {
    H2Polydisk,
    H2Ball,
    H2Polyball,
    A2Ball,
    A2DiskAlpha,
    A2Radial,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub kind: KindName,
    pub n: usize,
    #[serde(rename = "D")]
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moments: Option<Vec<f64>>,
}

impl SpaceSpec {
    pub fn to_kind(&self) -> Result<SpaceKind, InstanceError> {
        let need = |what: &str| InstanceError::Spec(format!("space kind {:?} needs `{what}`", self.kind));
        Ok(match self.kind {
            KindName::H2Polydisk => SpaceKind::H2Polydisk,
            KindName::H2Ball => SpaceKind::H2Ball,
            KindName::H2Polyball => SpaceKind::H2Polyball { blocks: self.blocks.clone().ok_or_else(|| need("blocks"))? },
            KindName::A2Ball => SpaceKind::A2Ball,
            KindName::A2DiskAlpha => SpaceKind::A2DiskAlpha { alpha: self.alpha.ok_or_else(|| need("alpha"))? },
            KindName::A2Radial => SpaceKind::A2Radial {
                moments: MomentTable::new(self.moments.clone().ok_or_else(|| need("moments"))?)?,
            },
        })
    }

    pub fn build(&self) -> Result<SpaceModel, InstanceError> {
        Ok(make_space(self.to_kind()?, self.n, self.degree)?)
    }
}

pub type PolyText = Vec<TermRecord>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexText {
    pub re: ScalarText,
    #[serde(default = "zero_text")]
    pub im: ScalarText,
}

fn zero_text() -> ScalarText {
    ScalarText::Float(0.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeParam {
    pub a: ComplexText,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Preset {
    #[serde(rename = "EX_11_1")]
    Ex11_1,
    #[serde(rename = "EX_11_7")]
    Ex11_7(BlaschkeParam),
    #[serde(rename = "EX_18_7")]
    Ex18_7,
    Submodule(Vec<PolyText>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<PolyText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructSpec {
    pub r: Vec<u32>,
    /// Element of a single `W_k`; defaults to the first basis element of `W_k`.
    #[serde(default)]
    pub h: Option<PolyText>,
    /// Component used when `h` is absent; defaults to the first nonzero one that fits.
    #[serde(default)]
    pub k: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    /// Defaults to the polynomial of the `EX_18_7` preset.
    #[serde(default)]
    pub f: Option<PolyText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct A2AlphaSpec {
    #[serde(default)]
    pub f: Option<PolyText>,
    /// Defaults to the space's `alpha`.
    #[serde(default)]
    pub alpha: Option<f64>,
    /// Defaults to `D`.
    #[serde(default)]
    pub sweep: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    #[serde(default)]
    pub f: Option<PolyText>,
    pub grid: GridKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementSpec {
    pub h: PolyText,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Series,
    Decompose,
    Invariant,
    #[serde(rename = "r1inner")]
    R1Inner,
    #[serde(rename = "fullproj")]
    FullProj,
    Beurling,
    Wandering,
    /// Components of one element and its minimum value index.
    Element(ElementSpec),
    Reconstruct(ReconstructSpec),
    Inner(FunctionSpec),
    #[serde(rename = "a2alpha")]
    A2Alpha(A2AlphaSpec),
    Boundary(BoundarySpec),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub space: SpaceSpec,
    pub subspace: SubspaceSpec,
    pub checks: Vec<Check>,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
    #[serde(default)]
    pub seed: u64,
}

fn default_mode() -> Mode {
    Mode::Float
}

impl InstanceSpec {
    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        Ok(serde_json::from_str(text)?)
    }
}

fn complex(c: &ComplexText) -> Result<QI, ParseError> {
    Ok(QI::new(c.re.to_rational()?, c.im.to_rational()?))
}

fn exact_poly(p: &PolyText, n: usize) -> Result<ExactPoly, InstanceError> {
    Ok(ExactPoly::from_records(p, n)?)
}

/// Generators of the subspace, and the distinguished function of the preset
/// (if any).
pub fn expand_subspace(spec: &SubspaceSpec, n: usize, degree: usize) -> Result<(Vec<ExactPoly>, Option<ExactPoly>), InstanceError> {
    let mut gens = Vec::new();
    let mut function = None;
    match &spec.preset {
        None => {}
        Some(Preset::Ex11_1) => {
            if n != 2 {
                return Err(InstanceError::Spec("EX_11_1 lives in two variables".into()));
            }
            gens.extend(presets::ex_11_1(degree));
        }
        Some(Preset::Ex11_7(p)) => {
            if n != 1 {
                return Err(InstanceError::Spec("EX_11_7 lives in one variable".into()));
            }
            gens.extend(presets::ex_11_7(&complex(&p.a)?, degree)?);
        }
        Some(Preset::Ex18_7) => {
            if n != 2 || degree < 2 {
                return Err(InstanceError::Spec("EX_18_7 needs n = 2 and D >= 2".into()));
            }
            let f = presets::ex_18_7();
            gens.push(f.clone());
            function = Some(f);
        }
        Some(Preset::Submodule(g)) => {
            let g = g.iter().map(|p| exact_poly(p, n)).collect::<Result<Vec<_>, _>>()?;
            gens.extend(presets::submodule(&g, degree));
        }
    }
    if let Some(g) = &spec.generators {
        for p in g {
            gens.push(exact_poly(p, n)?);
        }
    }
    if spec.preset.is_none() && spec.generators.is_none() {
        return Err(InstanceError::Spec("subspace needs `generators` or `preset`".into()));
    }
    Ok((gens, function))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub k: usize,
    pub dim: usize,
    pub basis: Vec<PolyText>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesReport {
    /// `dim V_k` for `k = 0..=D+1`.
    pub level_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WanderingReport {
    pub dim: usize,
    pub basis: Vec<PolyText>,
    pub truncation_limited: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementReport {
    pub h: PolyText,
    pub components: Vec<PolyText>,
    pub minimum_value_index: OrderValue,
    pub ord: OrderValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryReport {
    pub grid: GridKind,
    pub points: usize,
    pub min_abs: f64,
    pub max_abs: f64,
    pub csv: String,
    /// The sampled function is a truncated series rather than a polynomial.
    pub approximation: bool,
}

/// Overall classification of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    AllPass,
    Failures,
    Integrity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub space: SpaceSpec,
    pub mode: Mode,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub dim: usize,
    pub status: Status,
    /// Any check touched degrees above `D`.
    pub truncation_touched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<ComponentReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1_inner: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_projection: Option<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beurling: Option<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wandering: Option<WanderingReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub elements: Vec<ElementReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub reconstructions: Vec<Reconstruction>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub inner: Vec<InnerFunctionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub a2alpha: Vec<A2AlphaReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub boundary: Vec<BoundaryReport>,
    /// Problems that stop a single check, e.g. a failed reconstruction step.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub errors: Vec<String>,
}

/// Output of a run: the report plus CSV artifacts by file name.
#[derive(Clone, Debug)]
pub struct RunOutput {
    pub report: Report,
    pub csv: Vec<(String, String)>,
}

struct FloatState {
    v: Subspace,
    series: subspace::SubspaceSeries,
    dec: Decomposition,
}

struct ExactState {
    amb: ExactAmbient,
    v: ExactSubspace,
    dec: oracle::ExactDecomposition,
}

fn records_exact(p: &ExactPoly) -> PolyText {
    p.to_records()
}

fn verdict_failed(v: Verdict) -> bool {
    v != Verdict::Pass
}

/// Runs every requested check. Per-check problems are collected in
/// `report.errors`; integrity errors set the status to `Integrity`.
pub fn run_instance(spec: &InstanceSpec, tol_override: Option<Tolerances>) -> Result<RunOutput, InstanceError> {
    let tol = tol_override.or(spec.tolerances).unwrap_or_default();
    let space = spec.space.build()?;
    let n = space.n();
    let degree = space.degree();
    let (gens, preset_function) = expand_subspace(&spec.subspace, n, degree)?;
    for g in &gens {
        space.check_fits(g)?;
    }
    let approximation = matches!(spec.subspace.preset, Some(Preset::Ex11_7(_)));

    let float_gens: Vec<FloatPoly> = gens.iter().map(ExactPoly::to_float).collect();
    let ambient = Ambient::new(space.clone());
    let fv = orthonormalize(&float_gens, &ambient, &tol)?;
    let (series, dec) = subspace::series_and_decomposition(&fv, &tol);
    let fs = FloatState { v: fv, series, dec };
    let es = if spec.mode == Mode::Exact {
        let amb = ExactAmbient::new(&space)?;
        let v = ExactSubspace::span(&amb, &gens)?;
        let dec = oracle::exact_decomposition(&amb, &v);
        Some(ExactState { amb, v, dec })
    } else {
        None
    };

    let mut report = Report {
        space: spec.space.clone(),
        mode: spec.mode,
        tolerances: tol,
        seed: spec.seed,
        dim: es.as_ref().map_or(fs.v.dim(), |e| e.v.dim()),
        status: Status::AllPass,
        truncation_touched: false,
        series: None,
        decomposition: None,
        invariant: None,
        r1_inner: None,
        full_projection: None,
        beurling: None,
        wandering: None,
        elements: Vec::new(),
        reconstructions: Vec::new(),
        inner: Vec::new(),
        a2alpha: Vec::new(),
        boundary: Vec::new(),
        errors: Vec::new(),
    };
    let mut csv = Vec::new();
    let mut failures = false;
    let mut integrity = false;
    fn note(report: &mut Report, integrity: &mut bool, e: InstanceError) {
        *integrity |= e.is_integrity();
        report.errors.push(e.to_string());
    }

    let function_for = |f: &Option<PolyText>| -> Result<ExactPoly, InstanceError> {
        match (f, &preset_function) {
            (Some(p), _) => exact_poly(p, n),
            (None, Some(p)) => Ok(p.clone()),
            (None, None) => Err(InstanceError::Spec("check needs `f` (no preset function available)".into())),
        }
    };

    for check in &spec.checks {
        match check {
            Check::Series => {
                let level_dims = match &es {
                    Some(e) => e.dec.levels.iter().map(ExactSubspace::dim).collect(),
                    None => fs.series.levels.iter().map(Subspace::dim).collect(),
                };
                report.series = Some(SeriesReport { level_dims });
            }
            Check::Decompose => {
                let comps: Vec<ComponentReport> = match &es {
                    Some(e) => e
                        .dec
                        .components
                        .iter()
                        .enumerate()
                        .map(|(k, w)| ComponentReport {
                            k,
                            dim: w.dim(),
                            basis: w.basis.iter().map(|b| records_exact(&e.amb.to_poly(b))).collect(),
                        })
                        .collect(),
                    None => fs
                        .dec
                        .components
                        .iter()
                        .enumerate()
                        .map(|(k, w)| ComponentReport {
                            k,
                            dim: w.dim(),
                            basis: w.basis_polys(tol.prune).iter().map(FloatPoly::to_records).collect(),
                        })
                        .collect(),
                };
                let mut table = String::from("k,dim\n");
                for c in &comps {
                    table.push_str(&format!("{},{}\n", c.k, c.dim));
                }
                csv.push(("decomposition.csv".to_string(), table));
                report.decomposition = Some(comps);
            }
            Check::Invariant | Check::R1Inner | Check::FullProj => {
                let out = match (&es, check) {
                    (Some(e), Check::Invariant) => oracle::exact_invariant(&e.amb, &e.v),
                    (Some(e), Check::R1Inner) => oracle::exact_r1_inner(&e.amb, &e.dec),
                    (Some(e), _) => oracle::exact_full_projection(&e.amb, &e.dec),
                    (None, Check::Invariant) => beurling::is_invariant(&fs.v, &tol),
                    (None, Check::R1Inner) => beurling::is_r1_inner_decomposition(&fs.v, &fs.dec, &tol)?,
                    (None, _) => beurling::has_full_projection(&fs.v, &fs.dec, &tol)?,
                };
                failures |= verdict_failed(out.verdict);
                report.truncation_touched |= out.truncation_touched;
                match check {
                    Check::Invariant => report.invariant = Some(out),
                    Check::R1Inner => report.r1_inner = Some(out),
                    _ => report.full_projection = Some(out),
                }
            }
            Check::Beurling => {
                let rep = match &es {
                    Some(e) => oracle::oracle_verdicts_for(&e.amb, &e.v),
                    None => beurling::beurling_verdict_with(&fs.v, &fs.dec, &tol)?,
                };
                failures |= !rep.all_pass();
                report.truncation_touched |= [&rep.invariant, &rep.r1_inner, &rep.full_projection]
                    .iter()
                    .any(|o| o.truncation_touched);
                if !rep.consistent {
                    integrity = true;
                    report.errors.push(format!(
                        "internal inconsistency: {}",
                        rep.inconsistency.clone().unwrap_or_default()
                    ));
                }
                report.beurling = Some(rep);
            }
            Check::Wandering => {
                report.wandering = Some(match &es {
                    Some(e) => {
                        let m = oracle::exact_wandering_subspace(&e.amb, &e.v);
                        let touched = e.v.basis.iter().any(|b| {
                            (0..n).any(|i| e.amb.shift(&MultiIndex::unit(n, i), b).1)
                        });
                        WanderingReport {
                            dim: m.dim(),
                            basis: m.basis.iter().map(|b| records_exact(&e.amb.to_poly(b))).collect(),
                            truncation_limited: touched,
                        }
                    }
                    None => {
                        let m = subspace::wandering_subspace(&fs.v, &tol);
                        WanderingReport {
                            dim: m.subspace.dim(),
                            basis: m.subspace.basis_polys(tol.prune).iter().map(FloatPoly::to_records).collect(),
                            truncation_limited: m.truncation_touched,
                        }
                    }
                });
                report.truncation_touched |= report.wandering.as_ref().is_some_and(|w| w.truncation_limited);
            }
            Check::Element(el) => {
                let h = exact_poly(&el.h, n)?;
                let result: Result<ElementReport, InstanceError> = match &es {
                    Some(e) => oracle::exact_decompose_element(&e.amb, &e.v, &e.dec, &h)
                        .map_err(InstanceError::from)
                        .and_then(|parts| {
                            let mvi = parts
                                .iter()
                                .position(|p| !p.is_zero())
                                .map_or(OrderValue::Infinity, |k| OrderValue::Finite(k as u32));
                            if mvi != h.ord() {
                                return Err(CheckError::Integrity(format!(
                                    "minimum value index {mvi} differs from ord {}",
                                    h.ord()
                                ))
                                .into());
                            }
                            Ok(ElementReport {
                                h: el.h.clone(),
                                components: parts.iter().map(records_exact).collect(),
                                minimum_value_index: mvi,
                                ord: h.ord(),
                            })
                        }),
                    None => {
                        let hf = h.to_float();
                        subspace::decompose_element(&hf, &fs.v, &fs.dec, &tol)
                            .map_err(InstanceError::from)
                            .and_then(|parts| {
                                let mvi = beurling::minimum_value_index(&hf, &fs.v, &fs.dec, &tol)?;
                                Ok(ElementReport {
                                    h: el.h.clone(),
                                    components: parts.iter().map(FloatPoly::to_records).collect(),
                                    minimum_value_index: mvi,
                                    ord: hf.ord(),
                                })
                            })
                    }
                };
                match result {
                    Ok(r) => report.elements.push(r),
                    Err(e) => note(&mut report, &mut integrity, e),
                }
            }
            Check::Reconstruct(rs) => {
                let r = MultiIndex::new(rs.r.clone());
                if r.dim() != n {
                    return Err(InstanceError::Spec(format!("reconstruct: r has {} exponents, n = {n}", r.dim())));
                }
                let h = match &rs.h {
                    Some(p) => exact_poly(p, n)?.to_float(),
                    None => {
                        let room = degree.saturating_sub(r.degree() as usize);
                        let k = match rs.k {
                            Some(k) => k,
                            None => (0..=room)
                                .find(|&k| fs.dec.components[k].dim() > 0)
                                .ok_or_else(|| InstanceError::Spec("no component W_k with |r| + k <= D".into()))?,
                        };
                        let w = fs.dec.components.get(k).ok_or_else(|| InstanceError::Spec(format!("k = {k} exceeds D")))?;
                        w.basis_polys(tol.prune)
                            .into_iter()
                            .next()
                            .ok_or_else(|| InstanceError::Spec(format!("W_{k} is zero")))?
                    }
                };
                match beurling::beurling_reconstruct(&fs.v, &fs.dec, &r, &h, &tol) {
                    Ok(rec) => report.reconstructions.push(rec),
                    Err(e) => {
                        failures = true;
                        note(&mut report, &mut integrity, e.into())
                    }
                }
            }
            Check::Inner(fs_spec) => {
                let f = function_for(&fs_spec.f)?;
                let out = match (&es, space.exact_weights()) {
                    (Some(_), Some(_)) => exact_inner_function(&f, &space)?,
                    _ => inner::is_r1_inner_function(&f.to_float(), &space, &tol)?,
                };
                failures |= verdict_failed(out.verdict);
                report.inner.push(out);
            }
            Check::A2Alpha(a) => {
                let f = function_for(&a.f)?.to_float();
                let alpha = match (a.alpha, space.kind()) {
                    (Some(x), _) => x,
                    (None, SpaceKind::A2DiskAlpha { alpha }) => *alpha,
                    _ => return Err(InstanceError::Spec("a2alpha needs `alpha`".into())),
                };
                match inner::is_a2alpha_inner(&f, alpha, a.sweep.unwrap_or(degree), &tol) {
                    Ok(out) => {
                        failures |= verdict_failed(out.quadrature_verdict) || verdict_failed(out.moment_verdict);
                        if out.quadrature_verdict != out.moment_verdict {
                            integrity = true;
                            report.errors.push("quadrature and moment verdicts differ".into());
                        }
                        report.a2alpha.push(out);
                    }
                    Err(e) => note(&mut report, &mut integrity, e.into()),
                }
            }
            Check::Boundary(b) => {
                let f = function_for(&b.f)?.to_float();
                let grid = match &b.grid {
                    GridKind::Torus { n, points_per_circle } => BoundaryGrid::torus(*n, *points_per_circle)?,
                    GridKind::Sphere { n, samples, seed } => BoundaryGrid::sphere(*n, *samples, seed.wrapping_add(spec.seed))?,
                };
                let sample = inner::boundary_sample(&f, &grid)?;
                let name = format!("boundary_{}.csv", report.boundary.len());
                let mut buf = Vec::new();
                sample.write_csv(&mut buf).map_err(|e| InstanceError::Spec(format!("csv: {e}")))?;
                csv.push((name.clone(), String::from_utf8(buf).expect("csv output is utf-8")));
                report.boundary.push(BoundaryReport {
                    grid: grid.kind.clone(),
                    points: sample.rows.len(),
                    min_abs: sample.min(),
                    max_abs: sample.max(),
                    csv: name,
                    approximation,
                });
            }
        }
    }
    report.status = if integrity {
        Status::Integrity
    } else if failures {
        Status::Failures
    } else {
        Status::AllPass
    };
    Ok(RunOutput { report, csv })
}

/// Exact R1-inner test for spaces with rational weights.
pub fn exact_inner_function(f: &ExactPoly, space: &SpaceModel) -> Result<InnerFunctionReport, InstanceError> {
    space.check_fits(f)?;
    let mut out = InnerFunctionReport { verdict: Verdict::Pass, max_relative: 0.0, cases: 0, witness_m: None, witness_value: None };
    if f.is_zero() {
        return Ok(out);
    }
    let norm_sq = crate::space::inner_product_exact(f, f, space)?;
    let nf = crate::scalar::rational_to_f64(&norm_sq.re);
    let d = space.degree() as u32;
    for m in beurling::r1_monomials(space.n(), space.degree()) {
        out.cases += 1;
        let zf = f.shift(&m).truncate(d).0;
        let v = crate::space::inner_product_exact(&zf, f, space)?;
        if !num::Zero::is_zero(&v) {
            let c = v.to_c64();
            let rel = c.norm() / nf;
            if out.witness_m.is_none() || rel > out.max_relative {
                out.max_relative = rel;
                out.witness_m = Some(m.exponents().to_vec());
                out.witness_value = Some([c.re, c.im]);
            }
            out.verdict = Verdict::Fail;
        }
    }
    Ok(out)
}
