//! Trace-form entropies S_f(ρ) = Σ_i f(p_i) for concave f with f(0) = f(1) = 0.
//!
//! Four families are provided:
//!
//! * von Neumann, f(p) = -p ln p
//! * Tsallis, f(p) = (p - p^q)/(q - 1) for q > 0
//! * the peaked log-cosh family, f(p) = g_t(p - α) - (1 - p) g_t(-α) - p g_t(1 - α)
//!   with g_t(x) = -(2t)^{-1} ln cosh(t x)
//! * its t → ∞ limit, f(p) = p(1 - α) for p ≤ α and α(1 - p) for p ≥ α
//!
//! The peaked family has its maximum near an adjustable point α, which is what lets
//! it see majorization violations that Tsallis entropies miss.

use serde::Serialize;
use std::f64::consts::LN_2;

use crate::bipartite::{BipartiteDensity, Side};
use crate::error::{Error, Result};
use crate::hermitian::Spectrum;

const DOMAIN_TOL: f64 = 1e-12;
const NORMALIZATION_TOL: f64 = 1e-8;
/// Below this distance from q = 1 Tsallis sums use the expm1 form directly.
const Q_NEAR_ONE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum EntropicFamily {
    VonNeumann,
    Tsallis { q: f64 },
    Peaked { alpha: f64, t: f64 },
    PeakedLimit { alpha: f64 },
}

impl EntropicFamily {
    pub fn tsallis(q: f64) -> Result<Self> {
        let f = Self::Tsallis { q };
        f.validate()?;
        Ok(f)
    }

    pub fn peaked(alpha: f64, t: f64) -> Result<Self> {
        let f = Self::Peaked { alpha, t };
        f.validate()?;
        Ok(f)
    }

    pub fn peaked_limit(alpha: f64) -> Result<Self> {
        let f = Self::PeakedLimit { alpha };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let alpha_ok = |a: f64| (0.0..=1.0).contains(&a);
        match *self {
            Self::VonNeumann => Ok(()),
            Self::Tsallis { q } if q > 0.0 && q.is_finite() => Ok(()),
            Self::Tsallis { q } => Err(Error::InvalidParameter(format!("Tsallis q must be > 0, got {q}"))),
            Self::Peaked { alpha, t } if alpha_ok(alpha) && t > 0.0 && t.is_finite() => Ok(()),
            Self::Peaked { alpha, t } => Err(Error::InvalidParameter(format!(
                "peaked family needs 0 <= alpha <= 1 and t > 0, got alpha={alpha}, t={t}"
            ))),
            Self::PeakedLimit { alpha } if alpha_ok(alpha) => Ok(()),
            Self::PeakedLimit { alpha } => Err(Error::InvalidParameter(format!(
                "peaked limit needs 0 <= alpha <= 1, got {alpha}"
            ))),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Self::VonNeumann => "von-neumann".into(),
            Self::Tsallis { q } => format!("tsallis(q={q})"),
            Self::Peaked { alpha, t } => format!("peaked(alpha={alpha},t={t})"),
            Self::PeakedLimit { alpha } => format!("peaked-limit(alpha={alpha})"),
        }
    }

    /// f(p), rejecting p outside [0, 1].
    pub fn f(&self, p: f64) -> Result<f64> {
        if !(-DOMAIN_TOL..=1.0 + DOMAIN_TOL).contains(&p) {
            return Err(Error::Domain(format!("probability {p} outside [0, 1]")));
        }
        Ok(self.f_clamped(p.clamp(0.0, 1.0)))
    }

    fn f_clamped(&self, p: f64) -> f64 {
        match *self {
            Self::VonNeumann => {
                if p == 0.0 {
                    0.0
                } else {
                    -p * p.ln()
                }
            }
            Self::Tsallis { q } => tsallis_term(p, q),
            Self::Peaked { alpha, t } => {
                peaked_kernel(t, p - alpha) - (1.0 - p) * peaked_kernel(t, -alpha) - p * peaked_kernel(t, 1.0 - alpha)
            }
            Self::PeakedLimit { alpha } => {
                if p <= alpha {
                    p * (1.0 - alpha)
                } else {
                    alpha * (1.0 - p)
                }
            }
        }
    }
}

/// f_eval: the concave function of `family` at `p`.
pub fn f_eval(family: &EntropicFamily, p: f64) -> Result<f64> {
    family.f(p)
}

/// g_t(x) = -(2t)^{-1} ln cosh(t x), evaluated without overflow as
/// -|x|/2 - (2t)^{-1} ln((1 + e^{-2t|x|})/2).
pub fn peaked_kernel(t: f64, x: f64) -> f64 {
    let ax = x.abs();
    -0.5 * ax - ((-2.0 * t * ax).exp().ln_1p() - LN_2) / (2.0 * t)
}

/// p (1 - p^{q-1}) / (q - 1), written with expm1 so that q near 1 does not cancel.
fn tsallis_term(p: f64, q: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    let qm1 = q - 1.0;
    if qm1 == 0.0 {
        return -p * p.ln();
    }
    -p * (qm1 * p.ln()).exp_m1() / qm1
}

fn check_normalized(values: &[f64]) -> Result<()> {
    let total: f64 = values.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::SpectrumNotNormalized(total));
    }
    Ok(())
}

/// S_f over raw eigenvalues. Values are clamped into [0, 1] before evaluation, so
/// roundoff negatives of order the PSD tolerance contribute nothing.
pub fn entropy_of_values(family: &EntropicFamily, values: &[f64]) -> f64 {
    values.iter().map(|&p| family.f_clamped(p.clamp(0.0, 1.0))).sum()
}

/// S_f(ρ) = Tr f(ρ) from a normalized spectrum.
pub fn entropy(family: &EntropicFamily, spec: &Spectrum) -> Result<f64> {
    family.validate()?;
    check_normalized(spec.values())?;
    Ok(entropy_of_values(family, spec.values()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalReport {
    pub s_rho: f64,
    pub s_reduced: f64,
    pub difference: f64,
    /// `difference` divided by a strictly positive normalizer: Tr ρ_side^q for Tsallis,
    /// |Tr g_t(ρ - α)| for the peaked family, 1 otherwise.
    pub normalized: f64,
    pub family: EntropicFamily,
    pub side: Side,
}

/// S_f(ρ) - S_f(ρ_side) for a density.
pub fn conditional(family: &EntropicFamily, rho: &BipartiteDensity, side: Side) -> Result<ConditionalReport> {
    conditional_spectra(family, &rho.spectrum(), &rho.reduced_spectrum(side), side)
}

/// Conditional difference from precomputed spectra of ρ and of the reduced density.
pub fn conditional_spectra(
    family: &EntropicFamily,
    rho: &Spectrum,
    reduced: &Spectrum,
    side: Side,
) -> Result<ConditionalReport> {
    family.validate()?;
    check_normalized(rho.values())?;
    check_normalized(reduced.values())?;
    Ok(conditional_values(family, rho.values(), reduced.values(), side))
}

pub(crate) fn conditional_values(family: &EntropicFamily, rho: &[f64], reduced: &[f64], side: Side) -> ConditionalReport {
    let s_rho = entropy_of_values(family, rho);
    let s_reduced = entropy_of_values(family, reduced);
    let (difference, normalized) = match *family {
        EntropicFamily::Tsallis { q } if (q - 1.0).abs() >= Q_NEAR_ONE => tsallis_difference(rho, reduced, q),
        EntropicFamily::Tsallis { q } => {
            let d = s_rho - s_reduced;
            (d, d / power_sum(reduced, q))
        }
        EntropicFamily::Peaked { alpha, t } => {
            let d = s_rho - s_reduced;
            let n: f64 = rho.iter().map(|&p| peaked_kernel(t, p.clamp(0.0, 1.0) - alpha)).sum::<f64>().abs();
            (d, if n > 0.0 { d / n } else { d })
        }
        EntropicFamily::VonNeumann | EntropicFamily::PeakedLimit { .. } => {
            let d = s_rho - s_reduced;
            (d, d)
        }
    };
    ConditionalReport {
        s_rho,
        s_reduced,
        difference,
        normalized,
        family: *family,
        side,
    }
}

fn power_sum(values: &[f64], q: f64) -> f64 {
    values.iter().map(|&p| p.max(0.0).powf(q)).sum()
}

/// (Tr ρ_A^q - Tr ρ^q)/(q - 1) and its ratio to Tr ρ_A^q, both from power sums
/// rescaled by the largest eigenvalue so that large q neither cancels nor underflows
/// in the normalized value.
fn tsallis_difference(rho: &[f64], reduced: &[f64], q: f64) -> (f64, f64) {
    let m = rho
        .iter()
        .chain(reduced)
        .fold(0.0_f64, |acc, &p| acc.max(p));
    let scaled = |vals: &[f64]| -> f64 { vals.iter().map(|&p| (p.max(0.0) / m).powf(q)).sum() };
    let a = scaled(reduced);
    let b = scaled(rho);
    let qm1 = q - 1.0;
    let difference = m.powf(q) * (a - b) / qm1;
    let normalized = if a > 0.0 { (a - b) / (a * qm1) } else { 0.0 };
    (difference, normalized)
}

/// Largest deviation, over ρ and its reduced density on `A`, between the peaked
/// entropy divided by t/4 and the Tsallis q = 2 entropy. Small t drives this to zero
/// quadratically and independently of α.
pub fn tsallis_q2_limit_check(rho: &BipartiteDensity, alpha: f64, t_small: f64) -> Result<f64> {
    if !(t_small > 0.0 && t_small <= 1e-2) {
        return Err(Error::InvalidParameter(format!("t_small must lie in (0, 1e-2], got {t_small}")));
    }
    let peaked = EntropicFamily::peaked(alpha, t_small)?;
    let q2 = EntropicFamily::Tsallis { q: 2.0 };
    let spectra = [rho.spectrum(), rho.reduced_spectrum(Side::A)];
    let mut worst = 0.0_f64;
    for s in &spectra {
        let ratio = entropy(&peaked, s)? / (t_small / 4.0);
        worst = worst.max((ratio - entropy(&q2, s)?).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::HermitianOperator;
    use approx::assert_abs_diff_eq;

    #[test]
    fn peaked_limit_maximum() {
        let f = EntropicFamily::peaked_limit(0.25).unwrap();
        assert_abs_diff_eq!(f.f(0.25).unwrap(), 3.0 / 16.0, epsilon = 1e-15);
    }

    #[test]
    fn tsallis_q2_half() {
        let f = EntropicFamily::tsallis(2.0).unwrap();
        assert_abs_diff_eq!(f.f(0.5).unwrap(), 0.25, epsilon = 1e-15);
    }

    #[test]
    fn peaked_approaches_limit_from_below() {
        let v = EntropicFamily::peaked(0.25, 50.0).unwrap().f(0.25).unwrap();
        assert!(v < 3.0 / 16.0);
        assert!(3.0 / 16.0 - v < 0.02);
    }

    #[test]
    fn endpoints_vanish() {
        let fams = [
            EntropicFamily::VonNeumann,
            EntropicFamily::Tsallis { q: 0.3 },
            EntropicFamily::Tsallis { q: 1.0 },
            EntropicFamily::Tsallis { q: 7.0 },
            EntropicFamily::Peaked { alpha: 0.3, t: 1e4 },
            EntropicFamily::Peaked { alpha: 0.0, t: 2.0 },
            EntropicFamily::Peaked { alpha: 1.0, t: 2.0 },
            EntropicFamily::PeakedLimit { alpha: 0.7 },
            EntropicFamily::PeakedLimit { alpha: 0.0 },
        ];
        for f in fams {
            assert_abs_diff_eq!(f.f(0.0).unwrap(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(f.f(1.0).unwrap(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn limit_degenerates_at_alpha_endpoints() {
        for alpha in [0.0, 1.0] {
            let f = EntropicFamily::PeakedLimit { alpha };
            for p in [0.0, 0.2, 0.5, 1.0] {
                assert_eq!(f.f(p).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(EntropicFamily::tsallis(0.0).is_err());
        assert!(EntropicFamily::tsallis(-1.0).is_err());
        assert!(EntropicFamily::peaked(1.2, 10.0).is_err());
        assert!(EntropicFamily::peaked(0.5, 0.0).is_err());
        assert!(EntropicFamily::peaked_limit(-0.1).is_err());
        assert!(EntropicFamily::VonNeumann.f(1.1).is_err());
        assert!(EntropicFamily::VonNeumann.f(-1e-6).is_err());
    }

    #[test]
    fn kernel_matches_log_cosh() {
        for &(t, x) in &[(1.0, 0.3), (3.0, -0.7), (0.5, 2.0), (10.0, 0.01)] {
            let direct = -(f64::cosh(t * x)).ln() / (2.0 * t);
            assert_abs_diff_eq!(peaked_kernel(t, x), direct, epsilon = 1e-14);
        }
        // no overflow where cosh would
        assert!(peaked_kernel(1e4, 0.9).is_finite());
    }

    #[test]
    fn von_neumann_maximally_mixed() {
        let s = Spectrum::from_values(vec![1.0 / 9.0; 9]);
        assert_abs_diff_eq!(entropy(&EntropicFamily::VonNeumann, &s).unwrap(), 9f64.ln(), epsilon = 1e-14);
    }

    #[test]
    fn pure_state_entropy_zero() {
        let s = Spectrum::from_values(vec![1.0, 0.0, 0.0, 0.0]);
        for f in [
            EntropicFamily::VonNeumann,
            EntropicFamily::Tsallis { q: 0.5 },
            EntropicFamily::Peaked { alpha: 0.3, t: 40.0 },
            EntropicFamily::PeakedLimit { alpha: 0.3 },
        ] {
            assert_abs_diff_eq!(entropy(&f, &s).unwrap(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn peaked_limit_on_sector_c_state() {
        // d = 3, x1 = x2 = 0.4: spectrum {0.42222 x2, 0.02222 x7}
        let y = 0.2 / 9.0;
        let mut v = vec![0.4 + y, 0.4 + y];
        v.extend(std::iter::repeat_n(y, 7));
        let s = Spectrum::from_values(v);
        // alpha (n_alpha - 1) + 1 - sum_{p > alpha} p, with n_alpha = 2
        let expected = 0.28 * 1.0 + 1.0 - 2.0 * (0.4 + y);
        assert_abs_diff_eq!(expected, 0.435_555_555_555_555_6, epsilon = 1e-12);
        let lim = entropy(&EntropicFamily::PeakedLimit { alpha: 0.28 }, &s).unwrap();
        assert_abs_diff_eq!(lim, expected, epsilon = 1e-12);
        let finite = entropy(&EntropicFamily::Peaked { alpha: 0.28, t: 1e4 }, &s).unwrap();
        assert_abs_diff_eq!(finite, expected, epsilon = 1e-3);
    }

    #[test]
    fn unnormalized_spectrum_rejected() {
        let s = Spectrum::from_values(vec![0.5, 0.4]);
        assert!(matches!(
            entropy(&EntropicFamily::VonNeumann, &s),
            Err(Error::SpectrumNotNormalized(_))
        ));
    }

    #[test]
    fn tsallis_difference_matches_entropy_difference() {
        let rho = [0.5, 0.3, 0.1, 0.1];
        let red = [0.6, 0.4];
        for q in [0.2, 0.9, 1.0 + 1e-7, 2.0, 5.0] {
            let r = conditional_values(&EntropicFamily::Tsallis { q }, &rho, &red, Side::A);
            assert_abs_diff_eq!(r.difference, r.s_rho - r.s_reduced, epsilon = 1e-13);
            assert!(r.difference * r.normalized >= 0.0);
            let n: f64 = red.iter().map(|p: &f64| p.powf(q)).sum();
            assert_abs_diff_eq!(r.normalized, r.difference / n, epsilon = 1e-12);
        }
    }

    #[test]
    fn q2_limit_maximally_mixed() {
        let rho = BipartiteDensity::maximally_mixed((3, 3));
        let peaked = EntropicFamily::peaked(0.5, 1e-3).unwrap();
        let ratio = entropy(&peaked, &rho.spectrum()).unwrap() / (1e-3 / 4.0);
        assert_abs_diff_eq!(ratio, 8.0 / 9.0, epsilon = 1e-4);

        let a = tsallis_q2_limit_check(&rho, 0.1, 1e-4).unwrap();
        let b = tsallis_q2_limit_check(&rho, 0.9, 1e-4).unwrap();
        assert!(a < 1e-6 && b < 1e-6);
    }

    #[test]
    fn q2_limit_pure_state() {
        let psi = HermitianOperator::diagonal(&[1.0, 0.0, 0.0, 0.0]);
        let rho = BipartiteDensity::new(psi, (2, 2)).unwrap();
        assert!(tsallis_q2_limit_check(&rho, 0.4, 1e-3).unwrap() < 1e-12);
    }
}
