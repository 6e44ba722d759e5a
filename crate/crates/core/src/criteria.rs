//! Entanglement criteria: majorization (disorder), Peres partial transpose, and the
//! entropic detectors with their parameter searches.
//!
//! A separable ρ satisfies S_i ≤ S_i^A for every leading partial sum of the sorted
//! spectra, and therefore S_f(ρ) ≥ S_f(ρ_A) for every concave f with f(0) = f(1) = 0.
//! Any failure certifies entanglement. The entropic searches only look for negative
//! conditional differences; a search that finds none is bounded evidence, not proof.

use serde::Serialize;

use crate::bipartite::{partial_transpose, BipartiteDensity, Side};
use crate::entropy::{conditional_values, EntropicFamily};
use crate::error::{Error, Result};
use crate::hermitian::{self, Spectrum};
use crate::optimize::golden_section_min;

/// Slack allowed before a partial-sum inequality counts as violated.
pub const MAJORIZATION_TOL: f64 = 1e-10;
/// A conditional difference must be below `-DETECTION_TOL` to certify entanglement.
pub const DETECTION_TOL: f64 = 1e-12;
/// Offset applied around recommended α values, which otherwise sit on a kink of the
/// t → ∞ limit.
pub const ALPHA_JITTER: f64 = 1e-3;
pub const DEFAULT_TS: [f64; 4] = [1e1, 1e2, 1e3, 1e4];

/// Width, in ln q, to which negative dips are refined.
const Q_REFINE_WIDTH: f64 = 1e-6;
/// How many of the deepest sampled local minima are refined.
const Q_REFINE_CANDIDATES: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationReport {
    pub side: Side,
    /// Leading partial sums of ρ's spectrum, one per reduced dimension.
    pub cumsum_rho: Vec<f64>,
    pub cumsum_reduced: Vec<f64>,
    /// 1-based indices i with cumsum_rho[i] > cumsum_reduced[i] + tol.
    pub violated_indices: Vec<usize>,
    pub first_violation: Option<usize>,
    pub tol: f64,
}

impl MajorizationReport {
    pub fn from_spectra(rho: &Spectrum, reduced: &Spectrum, side: Side, tol: f64) -> Self {
        let k = reduced.len();
        let cumsum_rho: Vec<f64> = (1..=k).map(|i| rho.partial_sum(i)).collect();
        let cumsum_reduced = reduced.cumsums().to_vec();
        let violated_indices: Vec<usize> = cumsum_rho
            .iter()
            .zip(&cumsum_reduced)
            .enumerate()
            .filter(|(_, (s, sa))| **s > **sa + tol)
            .map(|(i, _)| i + 1)
            .collect();
        Self {
            side,
            first_violation: violated_indices.first().copied(),
            cumsum_rho,
            cumsum_reduced,
            violated_indices,
            tol,
        }
    }

    pub fn is_violated(&self) -> bool {
        !self.violated_indices.is_empty()
    }
}

/// Majorization reports of ρ against ρ_A and against ρ_B.
pub fn disorder_check(rho: &BipartiteDensity) -> (MajorizationReport, MajorizationReport) {
    let spec = rho.spectrum();
    let report = |side| MajorizationReport::from_spectra(&spec, &rho.reduced_spectrum(side), side, MAJORIZATION_TOL);
    (report(Side::A), report(Side::B))
}

/// Lowest eigenvalue of ρ^{T_B}; negative values certify entanglement.
pub fn peres_check(rho: &BipartiteDensity) -> f64 {
    hermitian::min_eigenvalue(&partial_transpose(rho))
}

/// Parameters of an entropic form at which a conditional difference was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Witness {
    Tsallis { q: f64 },
    Peaked { alpha: f64, t: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionVerdict {
    pub detected: bool,
    /// Parameters certifying entanglement; present iff `detected`.
    pub witness: Option<Witness>,
    /// Most negative conditional difference found (the minimum, when none is negative).
    pub margin: f64,
    /// Parameters at which `margin` was attained.
    pub best: Option<Witness>,
}

impl DetectionVerdict {
    fn none() -> Self {
        Self {
            detected: false,
            witness: None,
            margin: f64::INFINITY,
            best: None,
        }
    }
}

/// Log-spaced grid of Tsallis indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QGrid {
    pub qmin: f64,
    pub qmax: f64,
    pub points: usize,
}

impl Default for QGrid {
    fn default() -> Self {
        Self {
            qmin: 1e-2,
            qmax: 1e3,
            points: 96,
        }
    }
}

impl QGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.qmin > 0.0 && self.qmax > self.qmin && self.qmax.is_finite() && self.points >= 2) {
            return Err(Error::InvalidParameter(format!(
                "q grid needs 0 < qmin < qmax and at least 2 points, got {self:?}"
            )));
        }
        Ok(())
    }

    pub fn log_values(&self) -> Vec<f64> {
        let (a, b) = (self.qmin.ln(), self.qmax.ln());
        let step = (b - a) / (self.points - 1) as f64;
        (0..self.points).map(|i| a + step * i as f64).collect()
    }
}

/// Searches q in the grid range for a negative Tsallis conditional difference.
pub fn tsallis_sweep(rho: &BipartiteDensity, side: Side, grid: &QGrid) -> Result<DetectionVerdict> {
    grid.validate()?;
    Ok(tsallis_sweep_values(rho.spectrum().values(), rho.reduced_spectrum(side).values(), grid))
}

/// Samples the Tsallis difference on the log grid, then refines the deepest local
/// minima by golden section in ln q.
pub fn tsallis_sweep_values(rho: &[f64], reduced: &[f64], grid: &QGrid) -> DetectionVerdict {
    let diff = |ln_q: f64| conditional_values(&EntropicFamily::Tsallis { q: ln_q.exp() }, rho, reduced, Side::A).difference;
    let lq = grid.log_values();
    let vals: Vec<f64> = lq.iter().map(|&l| diff(l)).collect();
    let last = vals.len() - 1;

    let mut minima: Vec<usize> = (0..=last)
        .filter(|&k| (k == 0 || vals[k] <= vals[k - 1]) && (k == last || vals[k] <= vals[k + 1]))
        .collect();
    minima.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    minima.truncate(Q_REFINE_CANDIDATES);

    let (mut best_lq, mut best) = (lq[minima[0]], vals[minima[0]]);
    for &k in &minima {
        let lo = lq[k.saturating_sub(1)];
        let hi = lq[(k + 1).min(last)];
        let (l, v) = golden_section_min(diff, lo, hi, Q_REFINE_WIDTH);
        if v < best {
            best = v;
            best_lq = l;
        }
    }
    let w = Witness::Tsallis { q: best_lq.exp() };
    let detected = best < -DETECTION_TOL;
    DetectionVerdict {
        detected,
        witness: detected.then_some(w),
        margin: best,
        best: Some(w),
    }
}

/// Evaluates the peaked conditional difference on the (α, t) lattice.
/// The witness is the first negative cell in α-major order.
pub fn peaked_search(rho: &BipartiteDensity, side: Side, alphas: &[f64], ts: &[f64]) -> Result<DetectionVerdict> {
    for &alpha in alphas {
        for &t in ts {
            EntropicFamily::peaked(alpha, t)?;
        }
    }
    Ok(peaked_search_values(rho.spectrum().values(), rho.reduced_spectrum(side).values(), alphas, ts))
}

pub fn peaked_search_values(rho: &[f64], reduced: &[f64], alphas: &[f64], ts: &[f64]) -> DetectionVerdict {
    let mut verdict = DetectionVerdict::none();
    for &alpha in alphas {
        for &t in ts {
            let d = conditional_values(&EntropicFamily::Peaked { alpha, t }, rho, reduced, Side::A).difference;
            let w = Witness::Peaked { alpha, t };
            if d < verdict.margin {
                verdict.margin = d;
                verdict.best = Some(w);
            }
            if d < -DETECTION_TOL && !verdict.detected {
                verdict.detected = true;
                verdict.witness = Some(w);
            }
        }
    }
    verdict
}

/// p_j^A: the j-th largest eigenvalue (1-based) of the reduced density.
pub fn recommend_alpha(rho: &BipartiteDensity, side: Side, j: usize) -> Result<f64> {
    recommend_alpha_spectrum(&rho.reduced_spectrum(side), j)
}

pub fn recommend_alpha_spectrum(reduced: &Spectrum, j: usize) -> Result<f64> {
    if j == 0 || j > reduced.len() {
        return Err(Error::Domain(format!("index j = {j} outside 1..={}", reduced.len())));
    }
    Ok(reduced.values()[j - 1])
}

/// Each center together with center ± jitter, clamped to [0, 1], deduplicated.
pub fn jittered_alphas(centers: &[f64], jitter: f64) -> Vec<f64> {
    let mut out: Vec<f64> = centers
        .iter()
        .flat_map(|&c| [c - jitter, c, c + jitter])
        .map(|a| a.clamp(0.0, 1.0))
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}
