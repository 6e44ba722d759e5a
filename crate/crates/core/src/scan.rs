//! Parameter-space scans over the state families: per-point classification, grids,
//! threshold bisection along rays, entropy curves and area fractions.
//!
//! Scans use the closed-form spectra of [`crate::families`] unless
//! [`ScanOptions::numeric`] is set, in which case every point is built as a dense
//! matrix and diagonalized. Grid cells are evaluated at their centers.

use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use crate::bipartite::Side;
use crate::criteria::{
    self, jittered_alphas, peaked_search_values, tsallis_sweep_values, DetectionVerdict, MajorizationReport,
    QGrid, Witness, ALPHA_JITTER, DEFAULT_TS, DETECTION_TOL, MAJORIZATION_TOL,
};
use crate::entropy::{conditional_values, EntropicFamily};
use crate::error::{Error, Result};
use crate::families::{self, Exchange, FamilySpec};
use crate::hermitian::Spectrum;
use crate::optimize::bisect_predicate;

/// How α values are chosen for the peaked search.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaChoice {
    /// A fixed list.
    Fixed(Vec<f64>),
    /// p_j^A for every violated index j, each with ± jitter.
    Recommended { jitter: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOptions {
    pub side: Side,
    pub qgrid: QGrid,
    pub alphas: AlphaChoice,
    pub ts: Vec<f64>,
    pub tsallis: bool,
    pub peaked: bool,
    /// Build and diagonalize each point instead of using closed-form spectra.
    pub numeric: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            side: Side::A,
            qgrid: QGrid::default(),
            alphas: AlphaChoice::Recommended { jitter: ALPHA_JITTER },
            ts: DEFAULT_TS.to_vec(),
            tsallis: true,
            peaked: true,
            numeric: false,
        }
    }
}

impl ScanOptions {
    /// Only σ and the majorization check; no entropic searches.
    pub fn spectral_only() -> Self {
        Self {
            tsallis: false,
            peaked: false,
            ..Self::default()
        }
    }

    /// Reproducibility header lines (without the leading `#`).
    pub fn describe(&self) -> Vec<String> {
        let alphas = match &self.alphas {
            AlphaChoice::Fixed(a) => format!("fixed {}", join(a, ",")),
            AlphaChoice::Recommended { jitter } => format!("recommended p_j^A +/- {jitter}"),
        };
        vec![
            format!("side={}", self.side.label()),
            format!(
                "tsallis={} qmin={} qmax={} qpoints={} q-lower-bound-note=no q below qmin is searched",
                self.tsallis, self.qgrid.qmin, self.qgrid.qmax, self.qgrid.points
            ),
            format!("peaked={} alphas={} ts={}", self.peaked, alphas, join(&self.ts, ",")),
            format!(
                "detection_tol={DETECTION_TOL} majorization_tol={MAJORIZATION_TOL} numeric={}",
                self.numeric
            ),
            "peaked-normalizer=|Tr g_t(rho - alpha)|".into(),
        ]
    }
}

fn join(v: &[f64], sep: &str) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// Region label derived from the sign of σ and the set of violated inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    Outside,
    Separable,
    /// σ < 0 but every majorization inequality holds.
    EntangledUndetected,
    /// σ < 0 and the listed inequalities fail.
    Violated(Vec<usize>),
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::Outside => write!(f, "outside"),
            Sector::Separable => write!(f, "separable"),
            Sector::EntangledUndetected => write!(f, "entangled-undetected"),
            Sector::Violated(v) => {
                let idx: Vec<String> = v.iter().map(|i| i.to_string()).collect();
                write!(f, "violated-{}", idx.join("+"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    /// Grid coordinates (one per axis); equal to `x` for single points.
    pub coords: Vec<f64>,
    pub x: Vec<f64>,
    pub in_region: bool,
    pub sigma: f64,
    pub violated_indices: Vec<usize>,
    pub first_violation: Option<usize>,
    pub vn_diff: f64,
    pub tsallis: Option<DetectionVerdict>,
    pub peaked: Option<DetectionVerdict>,
    pub sector: Sector,
}

impl ScanRecord {
    pub fn entangled(&self) -> bool {
        self.in_region && self.sigma < 0.0
    }
}

fn spectra_of(spec: &FamilySpec, side: Side, numeric: bool) -> Result<(Spectrum, Spectrum, f64)> {
    if numeric {
        let rho = families::build(spec)?;
        Ok((rho.spectrum(), rho.reduced_spectrum(side), criteria::peres_check(&rho)))
    } else {
        Ok((
            families::analytic_spectrum(spec),
            families::analytic_reduced(spec),
            families::sigma_min_pt(spec),
        ))
    }
}

fn alphas_for(choice: &AlphaChoice, report: &MajorizationReport, reduced: &Spectrum) -> Vec<f64> {
    match choice {
        AlphaChoice::Fixed(a) => a.clone(),
        AlphaChoice::Recommended { jitter } => {
            let centers: Vec<f64> = report
                .violated_indices
                .iter()
                .map(|&j| reduced.values()[j - 1])
                .collect();
            jittered_alphas(&centers, *jitter)
        }
    }
}

/// Classifies one family point. Points outside the positivity region are returned
/// with `in_region = false` and no criteria evaluated.
pub fn classify_point(spec: &FamilySpec, opts: &ScanOptions) -> Result<ScanRecord> {
    classify_with_coords(spec, spec.x.clone(), opts)
}

fn classify_with_coords(spec: &FamilySpec, coords: Vec<f64>, opts: &ScanOptions) -> Result<ScanRecord> {
    if !spec.in_region() {
        return Ok(ScanRecord {
            coords,
            x: spec.x.clone(),
            in_region: false,
            sigma: f64::NAN,
            violated_indices: vec![],
            first_violation: None,
            vn_diff: f64::NAN,
            tsallis: None,
            peaked: None,
            sector: Sector::Outside,
        });
    }
    let (rho, reduced, sigma) = spectra_of(spec, opts.side, opts.numeric)?;
    let report = MajorizationReport::from_spectra(&rho, &reduced, opts.side, MAJORIZATION_TOL);
    let vn_diff = conditional_values(&EntropicFamily::VonNeumann, rho.values(), reduced.values(), opts.side).difference;
    let tsallis = opts
        .tsallis
        .then(|| tsallis_sweep_values(rho.values(), reduced.values(), &opts.qgrid));
    let peaked = opts.peaked.then(|| {
        let alphas = alphas_for(&opts.alphas, &report, &reduced);
        peaked_search_values(rho.values(), reduced.values(), &alphas, &opts.ts)
    });
    let sector = if sigma >= 0.0 {
        Sector::Separable
    } else if report.is_violated() {
        Sector::Violated(report.violated_indices.clone())
    } else {
        Sector::EntangledUndetected
    };
    Ok(ScanRecord {
        coords,
        x: spec.x.clone(),
        in_region: true,
        sigma,
        first_violation: report.first_violation,
        violated_indices: report.violated_indices,
        vn_diff,
        tsallis,
        peaked,
        sector,
    })
}

/// One varying grid direction: every listed x component takes the same value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridAxis {
    /// 0-based x indices tied to this axis.
    pub components: Vec<usize>,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn new(components: Vec<usize>, lo: f64, hi: f64, steps: usize) -> Self {
        Self { components, lo, hi, steps }
    }

    /// Center of cell `k`.
    pub fn value(&self, k: usize) -> f64 {
        self.lo + (k as f64 + 0.5) * (self.hi - self.lo) / self.steps as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub d: usize,
    pub exchange: Exchange,
    /// Values of x components not driven by an axis; its length fixes n.
    pub base: Vec<f64>,
    pub axes: Vec<GridAxis>,
}

impl GridSpec {
    /// The full n = 2 positivity triangle, bounding box [-1/(d²-2), 1]².
    pub fn triangle(d: usize, steps: usize) -> Self {
        let lo = -1.0 / ((d * d) as f64 - 2.0);
        Self {
            d,
            exchange: Exchange::Antisymmetric,
            base: vec![0.0, 0.0],
            axes: vec![GridAxis::new(vec![0], lo, 1.0, steps), GridAxis::new(vec![1], lo, 1.0, steps)],
        }
    }

    /// The n = 5 section x_1 = .. = x_4 = x against x_5, covering its region.
    pub fn five_component_section(d: usize, steps_x: usize, steps_x5: usize) -> Self {
        let d2 = (d * d) as f64;
        // vertices: (1/4, 0), (0, 1) and -(1, 1)/(d² - 5)
        let lo = -1.0 / (d2 - 5.0);
        Self {
            d,
            exchange: Exchange::Antisymmetric,
            base: vec![0.0; 5],
            axes: vec![
                GridAxis::new(vec![0, 1, 2, 3], lo, 0.25, steps_x),
                GridAxis::new(vec![4], lo, 1.0, steps_x5),
            ],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidParameter("a grid needs one or two axes".into()));
        }
        FamilySpec::unchecked(self.d, self.base.clone())?;
        for ax in &self.axes {
            if ax.steps < 2 || !(ax.hi > ax.lo) {
                return Err(Error::InvalidParameter(format!("bad axis {ax:?}")));
            }
            if ax.components.is_empty() || ax.components.iter().any(|&c| c >= self.base.len()) {
                return Err(Error::InvalidParameter(format!("axis components out of range: {ax:?}")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.steps).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates of the `index`-th cell in row-major order (last axis fastest).
    pub fn coords(&self, index: usize) -> Vec<f64> {
        let mut rem = index;
        let mut ks = vec![0; self.axes.len()];
        for (slot, ax) in ks.iter_mut().zip(&self.axes).rev() {
            *slot = rem % ax.steps;
            rem /= ax.steps;
        }
        ks.iter().zip(&self.axes).map(|(&k, ax)| ax.value(k)).collect()
    }

    pub fn spec_at(&self, coords: &[f64]) -> FamilySpec {
        let mut x = self.base.clone();
        for (ax, &c) in self.axes.iter().zip(coords) {
            for &i in &ax.components {
                x[i] = c;
            }
        }
        FamilySpec {
            d: self.d,
            x,
            exchange: self.exchange,
        }
    }

    pub fn describe(&self) -> String {
        let axes: Vec<String> = self
            .axes
            .iter()
            .map(|a| {
                let comps: Vec<String> = a.components.iter().map(|c| format!("x{}", c + 1)).collect();
                format!("{}:[{},{}]/{}", comps.join("="), a.lo, a.hi, a.steps)
            })
            .collect();
        format!("d={} n={} exchange={:?} base={} axes={}", self.d, self.base.len(), self.exchange, join(&self.base, ","), axes.join(" "))
    }
}

/// Classifies every cell. Output order is row-major and independent of threading.
pub fn grid_scan(grid: &GridSpec, opts: &ScanOptions) -> Result<Vec<ScanRecord>> {
    grid.validate()?;
    opts.qgrid.validate()?;
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let coords = grid.coords(i);
            let spec = grid.spec_at(&coords);
            classify_with_coords(&spec, coords, opts)
        })
        .collect()
}

pub const CSV_COLUMNS_TAIL: [&str; 13] = [
    "in_R",
    "sigma",
    "first_violation",
    "violated_indices",
    "vn_diff",
    "tsallis_detected",
    "tsallis_q",
    "tsallis_margin",
    "peaked_detected",
    "peaked_alpha",
    "peaked_t",
    "sector",
    "",
];

fn opt_f64(v: f64) -> String {
    if v.is_nan() {
        String::new()
    } else {
        v.to_string()
    }
}

/// Writes records as CSV: `#`-prefixed header comments, a column row, then one row per
/// record with the x components first.
pub fn write_csv<W: Write>(out: &mut W, header: &[String], records: &[ScanRecord]) -> Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    let n = records.first().map_or(0, |r| r.x.len());
    let mut cols: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    cols.extend(CSV_COLUMNS_TAIL.iter().filter(|c| !c.is_empty()).map(|c| c.to_string()));
    writeln!(out, "{}", cols.join(","))?;
    for r in records {
        let mut row: Vec<String> = r.x.iter().map(|v| v.to_string()).collect();
        row.push(r.in_region.to_string());
        row.push(opt_f64(r.sigma));
        row.push(r.first_violation.map(|i| i.to_string()).unwrap_or_default());
        row.push(r.violated_indices.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(";"));
        row.push(opt_f64(r.vn_diff));
        match &r.tsallis {
            Some(v) => {
                let q = match v.best {
                    Some(Witness::Tsallis { q }) => q.to_string(),
                    _ => String::new(),
                };
                row.extend([v.detected.to_string(), q, v.margin.to_string()]);
            }
            None => row.extend([String::new(), String::new(), String::new()]),
        }
        match &r.peaked {
            Some(v) => {
                let (a, t) = match v.witness.or(v.best) {
                    Some(Witness::Peaked { alpha, t }) => (alpha.to_string(), t.to_string()),
                    _ => (String::new(), String::new()),
                };
                row.extend([v.detected.to_string(), a, t]);
            }
            None => row.extend([String::new(), String::new(), String::new()]),
        }
        row.push(r.sector.to_string());
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

/// A line x(s) = base + s · direction through a family's parameter space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RaySpec {
    pub d: usize,
    pub exchange: Exchange,
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
}

impl RaySpec {
    /// Ray from `base` along `direction`, with s running from `lo` up to the edge of
    /// the positivity region.
    pub fn new(d: usize, base: Vec<f64>, direction: Vec<f64>, lo: f64) -> Result<Self> {
        if base.len() != direction.len() {
            return Err(Error::DimensionMismatch {
                expected: base.len(),
                found: direction.len(),
            });
        }
        let mut ray = Self {
            d,
            exchange: Exchange::Antisymmetric,
            base,
            direction,
            lo,
            hi: lo,
        };
        if !ray.spec_at(lo)?.in_region() {
            return Err(Error::OutsideRegion(format!("ray start s = {lo} lies outside the region")));
        }
        ray.hi = ray.region_exit()?;
        Ok(ray)
    }

    /// x_1 = .. = x_n = s for s ≥ 0.
    pub fn diagonal(d: usize, n: usize) -> Result<Self> {
        Self::new(d, vec![0.0; n], vec![1.0; n], 0.0)
    }

    /// x_i = s (0-based `i`), other components zero, s ≥ 0.
    pub fn axis(d: usize, n: usize, i: usize) -> Result<Self> {
        let mut dir = vec![0.0; n];
        *dir.get_mut(i).ok_or_else(|| Error::InvalidParameter(format!("axis {i} >= n = {n}")))? = 1.0;
        Self::new(d, vec![0.0; n], dir, 0.0)
    }

    pub fn with_hi(mut self, hi: f64) -> Self {
        self.hi = hi;
        self
    }

    pub fn spec_at(&self, s: f64) -> Result<FamilySpec> {
        let x = self.base.iter().zip(&self.direction).map(|(b, v)| b + s * v).collect();
        Ok(FamilySpec::unchecked(self.d, x)?.with_exchange(self.exchange))
    }

    /// Largest s ≥ lo keeping y ≥ 0 and x_i ≥ -y; the region is a polytope so each
    /// constraint is linear in s.
    fn region_exit(&self) -> Result<f64> {
        let d2 = (self.d * self.d) as f64;
        let sum_b: f64 = self.base.iter().sum();
        let sum_v: f64 = self.direction.iter().sum();
        // y(s) = (1 - sum_b - s sum_v)/d²; constraints: y ≥ 0, x_i + y ≥ 0
        let mut hi = f64::INFINITY;
        let mut bound = |c0: f64, c1: f64| {
            // c0 + c1 s ≥ 0
            if c1 < 0.0 {
                hi = hi.min(-c0 / c1);
            }
        };
        bound((1.0 - sum_b) / d2, -sum_v / d2);
        for (b, v) in self.base.iter().zip(&self.direction) {
            bound(b + (1.0 - sum_b) / d2, v - sum_v / d2);
        }
        if !hi.is_finite() {
            return Err(Error::InvalidParameter("ray never leaves the region".into()));
        }
        Ok(hi)
    }
}

/// Which detector a threshold refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// σ < 0.
    Peres,
    /// Some majorization inequality fails.
    Disorder,
    /// Von Neumann conditional entropy negative.
    VonNeumann,
    Tsallis,
    Peaked,
}

impl std::str::FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "peres" | "sigma" => Self::Peres,
            "disorder" | "majorization" => Self::Disorder,
            "vn" | "von-neumann" | "vonneumann" => Self::VonNeumann,
            "tsallis" => Self::Tsallis,
            "peaked" => Self::Peaked,
            other => return Err(Error::InvalidParameter(format!("unknown criterion {other:?}"))),
        })
    }
}

/// Whether `criterion` certifies entanglement at `spec` (false outside the region).
pub fn criterion_fires(spec: &FamilySpec, criterion: Criterion, opts: &ScanOptions) -> Result<bool> {
    let mut o = opts.clone();
    o.tsallis = criterion == Criterion::Tsallis;
    o.peaked = criterion == Criterion::Peaked;
    let r = classify_point(spec, &o)?;
    if !r.in_region {
        return Ok(false);
    }
    Ok(match criterion {
        Criterion::Peres => r.sigma < 0.0,
        Criterion::Disorder => !r.violated_indices.is_empty(),
        Criterion::VonNeumann => r.vn_diff < -DETECTION_TOL,
        Criterion::Tsallis => r.tsallis.is_some_and(|v| v.detected),
        Criterion::Peaked => r.peaked.is_some_and(|v| v.detected),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ThresholdResult {
    /// The predicate flips inside `[lo, hi]`, a bracket narrower than the tolerance.
    Found { value: f64, lo: f64, hi: f64, fires_above: bool },
    NoThreshold,
}

impl ThresholdResult {
    pub fn value(&self) -> Option<f64> {
        match self {
            Self::Found { value, .. } => Some(*value),
            Self::NoThreshold => None,
        }
    }
}

/// Samples taken along the ray before bisecting, to locate and check the flip.
pub const PRESCAN_POINTS: usize = 65;

/// Locates the ray parameter where `criterion` switches on or off.
pub fn bisect_threshold(ray: &RaySpec, criterion: Criterion, tol: f64, opts: &ScanOptions) -> Result<ThresholdResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let fires = |s: f64| -> Result<bool> { criterion_fires(&ray.spec_at(s)?, criterion, opts) };
    let step = (ray.hi - ray.lo) / (PRESCAN_POINTS - 1) as f64;
    let samples: Vec<(f64, bool)> = (0..PRESCAN_POINTS)
        .map(|k| {
            let s = if k == PRESCAN_POINTS - 1 { ray.hi } else { ray.lo + step * k as f64 };
            fires(s).map(|f| (s, f))
        })
        .collect::<Result<_>>()?;
    let flips: Vec<usize> = (1..samples.len()).filter(|&k| samples[k].1 != samples[k - 1].1).collect();
    match flips.as_slice() {
        [] => Ok(ThresholdResult::NoThreshold),
        [k] => {
            let (a, b) = (samples[k - 1].0, samples[*k].0);
            let mut err = None;
            let (lo, hi) = bisect_predicate(
                |s| match fires(s) {
                    Ok(v) => v,
                    Err(e) => {
                        err.get_or_insert(e);
                        false
                    }
                },
                a,
                b,
                tol,
            );
            if let Some(e) = err {
                return Err(e);
            }
            Ok(ThresholdResult::Found {
                value: 0.5 * (lo + hi),
                lo,
                hi,
                fires_above: samples[*k].1,
            })
        }
        many => Err(Error::NonMonotone(format!(
            "{criterion:?} changes {} times along the ray, first near s = {}",
            many.len(),
            samples[many[0]].0
        ))),
    }
}

/// Which entropic parameter a curve varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveAxis {
    /// Tsallis index q.
    Q,
    /// Peaked sharpness t at fixed α.
    T,
    /// Peaked center α at fixed t.
    Alpha,
}

impl std::str::FromStr for CurveAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Self::Q),
            "t" => Ok(Self::T),
            "alpha" => Ok(Self::Alpha),
            other => Err(Error::InvalidParameter(format!("unknown curve axis {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub parameter: f64,
    pub s_rho: f64,
    pub s_reduced: f64,
    pub difference: f64,
    pub normalized: f64,
}

/// Conditional entropy of a family point as one entropic parameter varies; the
/// other parameter (α or t) is taken from `alpha` / `t`.
pub fn curve_sweep(spec: &FamilySpec, axis: CurveAxis, values: &[f64], alpha: f64, t: f64) -> Result<Vec<CurveRow>> {
    spec.check_region()?;
    let rho = families::analytic_spectrum(spec);
    let reduced = families::analytic_reduced(spec);
    values
        .iter()
        .map(|&v| {
            let family = match axis {
                CurveAxis::Q => EntropicFamily::tsallis(v)?,
                CurveAxis::T => EntropicFamily::peaked(alpha, v)?,
                CurveAxis::Alpha => EntropicFamily::peaked(v, t)?,
            };
            let r = conditional_values(&family, rho.values(), reduced.values(), Side::A);
            Ok(CurveRow {
                parameter: v,
                s_rho: r.s_rho,
                s_reduced: r.s_reduced,
                difference: r.difference,
                normalized: r.normalized,
            })
        })
        .collect()
}

pub fn write_curve_csv<W: Write>(out: &mut W, header: &[String], rows: &[CurveRow]) -> Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    writeln!(out, "parameter,s_rho,s_reduced,difference,normalized")?;
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.parameter, r.s_rho, r.s_reduced, r.difference, r.normalized)?;
    }
    Ok(())
}

pub fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![lo],
        _ => (0..points).map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64).collect(),
    }
}

pub fn logspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    linspace(lo.ln(), hi.ln(), points).into_iter().map(f64::exp).collect()
}

/// A counted proportion with its binomial standard error and 95% Wilson interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fraction {
    pub successes: usize,
    pub trials: usize,
    pub value: f64,
    pub std_error: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
}

impl Fraction {
    pub fn new(successes: usize, trials: usize) -> Self {
        if trials == 0 {
            return Self {
                successes,
                trials,
                value: f64::NAN,
                std_error: f64::NAN,
                wilson_lo: f64::NAN,
                wilson_hi: f64::NAN,
            };
        }
        let n = trials as f64;
        let p = successes as f64 / n;
        let z = 1.96_f64;
        let denom = 1.0 + z * z / n;
        let center = (p + z * z / (2.0 * n)) / denom;
        let half = z / denom * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt();
        Self {
            successes,
            trials,
            value: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            wilson_lo: center - half,
            wilson_hi: center + half,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaSummary {
    pub grid: String,
    pub cells_in_region: usize,
    /// entangled / region
    pub entangled: Fraction,
    /// separable / region
    pub separable: Fraction,
    /// disorder-detected / entangled
    pub disorder_coverage: Fraction,
    /// first violated index j ↦ share of the entangled cells
    pub first_violation_share: BTreeMap<usize, Fraction>,
}

/// Cell-center estimates of the entangled, separable and disorder-detected areas.
pub fn area_fractions(grid: &GridSpec) -> Result<AreaSummary> {
    let records = grid_scan(grid, &ScanOptions::spectral_only())?;
    let inside: Vec<&ScanRecord> = records.iter().filter(|r| r.in_region).collect();
    let entangled: Vec<&&ScanRecord> = inside.iter().filter(|r| r.sigma < 0.0).collect();
    let detected = entangled.iter().filter(|r| r.first_violation.is_some()).count();
    let mut firsts: BTreeMap<usize, usize> = BTreeMap::new();
    for r in &entangled {
        if let Some(j) = r.first_violation {
            *firsts.entry(j).or_default() += 1;
        }
    }
    Ok(AreaSummary {
        grid: grid.describe(),
        cells_in_region: inside.len(),
        entangled: Fraction::new(entangled.len(), inside.len()),
        separable: Fraction::new(inside.len() - entangled.len(), inside.len()),
        disorder_coverage: Fraction::new(detected, entangled.len()),
        first_violation_share: firsts
            .into_iter()
            .map(|(j, c)| (j, Fraction::new(c, entangled.len())))
            .collect(),
    })
}
