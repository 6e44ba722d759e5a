//! The two-qudit families ρ = Σ_i x_i |0i^∓⟩⟨0i^∓| + y I_A ⊗ I_B, y = (1 - Σ x_i)/d²,
//! with 1 ≤ n ≤ d - 1 mixing weights, and their closed-form theory.
//!
//! Everything here is exact: spectra and reduced spectra are written down without
//! diagonalization, the lowest partial-transpose eigenvalue is σ(x) = y - |x|/2, and
//! σ ≥ 0 is certified separable by an explicit decomposition into two-qubit blocks.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::bipartite::BipartiteDensity;
use crate::criteria;
use crate::error::{Error, Result};
use crate::hermitian::{HermitianOperator, Spectrum};

const REGION_TOL: f64 = 1e-12;

/// Whether the mixed-in states are antisymmetric |0i⁻⟩ or symmetric |0i⁺⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exchange {
    #[default]
    Antisymmetric,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySpec {
    pub d: usize,
    pub x: Vec<f64>,
    pub exchange: Exchange,
}

impl FamilySpec {
    /// A spec inside the positivity region.
    pub fn new(d: usize, x: Vec<f64>) -> Result<Self> {
        let spec = Self::unchecked(d, x)?;
        spec.check_region()?;
        Ok(spec)
    }

    /// Validates only d and n; the point may lie outside the region.
    pub fn unchecked(d: usize, x: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d must be >= 2, got {d}")));
        }
        if x.is_empty() || x.len() > d - 1 {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= n <= d - 1 = {}, got n = {}",
                d - 1,
                x.len()
            )));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("x must be finite".into()));
        }
        Ok(Self {
            d,
            x,
            exchange: Exchange::Antisymmetric,
        })
    }

    pub fn symmetric(mut self) -> Self {
        self.exchange = Exchange::Symmetric;
        self
    }

    pub fn with_exchange(mut self, exchange: Exchange) -> Self {
        self.exchange = exchange;
        self
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// y = (1 - Σ x_i)/d².
    pub fn y(&self) -> f64 {
        (1.0 - self.x.iter().sum::<f64>()) / (self.d * self.d) as f64
    }

    /// |x| = (Σ x_i²)^{1/2}.
    pub fn norm(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Positivity region: y ≥ 0 and x_i ≥ -y for every i.
    pub fn check_region(&self) -> Result<()> {
        let y = self.y();
        if y < -REGION_TOL {
            return Err(Error::OutsideRegion(format!(
                "y = (1 - sum x)/d^2 = {y} < 0 (sum x = {})",
                self.x.iter().sum::<f64>()
            )));
        }
        if let Some((i, v)) = self.x.iter().enumerate().find(|(_, &v)| v < -y - REGION_TOL) {
            return Err(Error::OutsideRegion(format!("x_{} = {v} < -y = {}", i + 1, -y)));
        }
        Ok(())
    }

    pub fn in_region(&self) -> bool {
        self.check_region().is_ok()
    }
}

/// Dense density matrix of the family on C^d ⊗ C^d.
pub fn build(spec: &FamilySpec) -> Result<BipartiteDensity> {
    spec.check_region()?;
    let d = spec.d;
    let dim = d * d;
    let sign = match spec.exchange {
        Exchange::Antisymmetric => -1.0,
        Exchange::Symmetric => 1.0,
    };
    let mut op = HermitianOperator::identity(dim).scale(spec.y());
    for (k, &xi) in spec.x.iter().enumerate() {
        let i = k + 1;
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[i] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        v[i * d] = Complex64::new(sign * FRAC_1_SQRT_2, 0.0);
        op = op.add(&HermitianOperator::projector(&v).scale(xi))?;
    }
    BipartiteDensity::new(op, (d, d))
}

/// Eigenvalues x_i + y (i = 1..n) and y with multiplicity d² - n.
pub fn analytic_spectrum(spec: &FamilySpec) -> Spectrum {
    let y = spec.y();
    let mut values: Vec<f64> = spec.x.iter().map(|x| x + y).collect();
    values.extend(std::iter::repeat_n(y, spec.d * spec.d - spec.n()));
    Spectrum::from_values(values)
}

/// Reduced density (either side, they coincide):
/// ρ_A = ½ Σ_i x_i (|i⟩⟨i| + |0⟩⟨0|) + y d I_A.
pub fn analytic_reduced(spec: &FamilySpec) -> Spectrum {
    let yd = spec.y() * spec.d as f64;
    let sum: f64 = spec.x.iter().sum();
    let mut values = vec![sum / 2.0 + yd];
    values.extend(spec.x.iter().map(|x| x / 2.0 + yd));
    values.extend(std::iter::repeat_n(yd, spec.d - spec.n() - 1));
    Spectrum::from_values(values)
}

/// Lowest eigenvalue of the partial transpose, σ(x) = y - |x|/2.
pub fn sigma_min_pt(spec: &FamilySpec) -> f64 {
    spec.y() - spec.norm() / 2.0
}

/// Explicit separable decomposition ρ = Σ_i ρ_i + y(I - Σ_i Q_i), where
/// ρ_i = x_i|0i⟩⟨0i| + y Q_i and Q_i = q_i|00⟩⟨00| + |0i⟩⟨0i| + |i0⟩⟨i0| + |ii⟩⟨ii|.
/// Each ρ_i is a two-qubit operator, separable iff x_i² ≤ 4 q_i y².
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparabilityWitness {
    /// q_i, summing to one.
    pub weights: Vec<f64>,
    /// 4 q_i y² - x_i² for each block; all nonnegative.
    pub slacks: Vec<f64>,
}

/// Returns the decomposition weights q_i = x_i²/|x|² when σ ≥ 0, and `None` otherwise.
pub fn separability_witness(spec: &FamilySpec) -> Option<SeparabilityWitness> {
    if !spec.in_region() || sigma_min_pt(spec) < 0.0 {
        return None;
    }
    let n = spec.n();
    let norm_sq: f64 = spec.x.iter().map(|v| v * v).sum();
    let weights: Vec<f64> = if norm_sq == 0.0 {
        vec![1.0 / n as f64; n]
    } else {
        spec.x.iter().map(|v| v * v / norm_sq).collect()
    };
    let y = spec.y();
    let slacks: Vec<f64> = weights
        .iter()
        .zip(&spec.x)
        .map(|(q, x)| 4.0 * q * y * y - x * x)
        .collect();
    // x_i² ≤ 4 q_i y² holds exactly when |x| ≤ 2y; allow roundoff relative to the scale.
    let scale = 4.0 * y * y + norm_sq;
    let sum: f64 = weights.iter().sum();
    let ok = (sum - 1.0).abs() < 1e-12
        && weights.iter().all(|&q| q >= 0.0)
        && slacks.iter().all(|&s| s >= -1e-12 * scale.max(1e-300));
    ok.then_some(SeparabilityWitness { weights, slacks })
}

/// Closed-form entanglement thresholds for given (d, n).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdSet {
    pub d: usize,
    pub n: usize,
    /// δ = d²/(2(d - 1)).
    pub delta: f64,
    /// Peres onset along a single axis x = (x_1, 0, ...): (1 + d²/2)^{-1}.
    pub peres_axis: f64,
    /// Peres onset for equal components, expressed as the common value x.
    pub peres_diagonal: f64,
    /// Disorder (first inequality) onset on a single axis: (1 + δ)^{-1}.
    pub disorder_i1: f64,
    /// Disorder onset on the n = 2 diagonal, (2 + δ/2)^{-1}; `None` when n < 2.
    pub disorder_i2: Option<f64>,
    /// Onset of the n-th inequality for equal components, n/(n² + δ).
    pub disorder_in: f64,
    /// Vertices of the positivity simplex: the unit vectors and -(d² - n)^{-1}(1, .., 1).
    pub vertices: Vec<Vec<f64>>,
}

impl ThresholdSet {
    /// Peres threshold on |x| for direction at angle γ to (1, .., 1):
    /// |x| > (√n cos γ + d²/2)^{-1}.
    pub fn peres_gamma(&self, gamma: f64) -> f64 {
        1.0 / ((self.n as f64).sqrt() * gamma.cos() + (self.d * self.d) as f64 / 2.0)
    }

    /// n = 2, x1 ≥ x2: first inequality fails for x1 above this value.
    pub fn disorder_i1_boundary(&self, x2: f64) -> f64 {
        if x2 >= 0.0 {
            (1.0 + x2 * (self.delta - 1.0)) / (self.delta + 1.0)
        } else {
            (1.0 - x2) / (1.0 + self.delta)
        }
    }

    /// n = 2, x1 ≥ x2: second inequality fails for x1 above 1 - x2(1 + δ/2).
    pub fn disorder_i2_boundary(&self, x2: f64) -> f64 {
        1.0 - x2 * (1.0 + self.delta / 2.0)
    }
}

pub fn delta(d: usize) -> f64 {
    let d = d as f64;
    d * d / (2.0 * (d - 1.0))
}

pub fn thresholds(d: usize, n: usize) -> Result<ThresholdSet> {
    if d < 2 || n < 1 || n > d - 1 {
        return Err(Error::InvalidParameter(format!("need d >= 2 and 1 <= n <= d - 1, got d={d}, n={n}")));
    }
    let delta = delta(d);
    let d2 = (d * d) as f64;
    let nf = n as f64;
    let mut vertices: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    vertices.push(vec![-1.0 / (d2 - nf); n]);
    Ok(ThresholdSet {
        d,
        n,
        delta,
        peres_axis: 1.0 / (1.0 + d2 / 2.0),
        // |x| = √n x at γ = 0
        peres_diagonal: 1.0 / (nf + d2 / 2.0 * nf.sqrt()),
        disorder_i1: 1.0 / (1.0 + delta),
        disorder_i2: (n >= 2).then(|| 1.0 / (2.0 + delta / 2.0)),
        disorder_in: nf / (nf * nf + delta),
        vertices,
    })
}

/// Indices (1-based) of the majorization inequalities that fail, from closed forms.
///
/// Nonnegative x uses x_(i) > ½ Σ_{j≥i} x_(j) + i y (d - 1) on the sorted components;
/// n = 2 with one negative component uses x_+ > (1 - x_-)/(1 + δ) for the first
/// inequality (the others cannot fail). Any other sign pattern is decided numerically.
pub fn violation_predictor(spec: &FamilySpec) -> Result<Vec<usize>> {
    spec.check_region()?;
    let y = spec.y();
    let dm1 = (spec.d - 1) as f64;
    if spec.x.iter().all(|&v| v >= 0.0) {
        let mut sorted = spec.x.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut tail: f64 = sorted.iter().sum();
        let mut out = Vec::new();
        for (k, &xi) in sorted.iter().enumerate() {
            let i = (k + 1) as f64;
            if xi > tail / 2.0 + i * y * dm1 + criteria::MAJORIZATION_TOL {
                out.push(k + 1);
            }
            tail -= xi;
        }
        return Ok(out);
    }
    if spec.n() == 2 {
        let (hi, lo) = if spec.x[0] >= spec.x[1] {
            (spec.x[0], spec.x[1])
        } else {
            (spec.x[1], spec.x[0])
        };
        if hi >= 0.0 {
            let bound = (1.0 - lo) / (1.0 + delta(spec.d));
            return Ok(if hi > bound + criteria::MAJORIZATION_TOL { vec![1] } else { vec![] });
        }
    }
    let rho = build(spec)?;
    Ok(criteria::disorder_check(&rho).0.violated_indices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::Side;
    use crate::hermitian::eigenvalues;
    use approx::assert_abs_diff_eq;

    fn spec(d: usize, x: &[f64]) -> FamilySpec {
        FamilySpec::new(d, x.to_vec()).unwrap()
    }

    #[test]
    fn spectrum_d3_axis() {
        let s = spec(3, &[0.5, 0.0]);
        let numeric = eigenvalues(build(&s).unwrap().op());
        let mut expected = vec![5.0 / 9.0];
        expected.extend([1.0 / 18.0; 8]);
        for (a, b) in numeric.values().iter().zip(&expected) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
        for (a, b) in analytic_spectrum(&s).values().iter().zip(&expected) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-15);
        }
    }

    #[test]
    fn maximally_mixed_at_origin() {
        let s = analytic_spectrum(&spec(3, &[0.0, 0.0]));
        assert!(s.values().iter().all(|&v| (v - 1.0 / 9.0).abs() < 1e-15));
    }

    #[test]
    fn werner_state_is_singlet_mixture() {
        let rho = build(&spec(2, &[0.4])).unwrap();
        // singlet weight 0.4 + y on (|01> - |10>)/sqrt2, y = 0.15
        assert_abs_diff_eq!(rho.op().get(1, 2).re, -0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.op().get(0, 0).re, 0.15, epsilon = 1e-15);
    }

    #[test]
    fn reduced_d3_axis() {
        let r = analytic_reduced(&spec(3, &[0.5, 0.0]));
        assert_abs_diff_eq!(r.values()[0], 5.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.values()[1], 5.0 / 12.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.values()[2], 1.0 / 6.0, epsilon = 1e-15);
        let numeric = eigenvalues(&build(&spec(3, &[0.5, 0.0])).unwrap().reduced(Side::A));
        for (a, b) in numeric.values().iter().zip(r.values()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn reduced_inner_tip() {
        let r = analytic_reduced(&spec(3, &[0.32, 0.32]));
        assert_abs_diff_eq!(r.values()[0], 0.44, epsilon = 1e-12);
        assert_abs_diff_eq!(r.values()[1], 0.28, epsilon = 1e-12);
        assert_abs_diff_eq!(r.values()[2], 0.28, epsilon = 1e-12);
        let r = analytic_reduced(&spec(6, &[0.0; 5]));
        assert!(r.values().iter().all(|&v| (v - 1.0 / 6.0).abs() < 1e-15));
    }

    #[test]
    fn sigma_examples() {
        assert_abs_diff_eq!(sigma_min_pt(&spec(3, &[0.5, 0.0])), 1.0 / 18.0 - 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(
            sigma_min_pt(&spec(3, &[0.05, 0.05])),
            0.1 - 0.05 * std::f64::consts::SQRT_2 / 2.0,
            epsilon = 1e-15
        );
        let dep = spec(6, &[-1.0 / 31.0; 5]);
        assert_abs_diff_eq!(dep.y(), 1.0 / 31.0, epsilon = 1e-15);
        let sigma = sigma_min_pt(&dep);
        assert_abs_diff_eq!(sigma, 1.0 / 31.0 - 5f64.sqrt() / 62.0, epsilon = 1e-15);
        assert!(sigma < -0.0038 && sigma > -0.0039);
    }

    #[test]
    fn region_errors_name_the_constraint() {
        let err = FamilySpec::new(3, vec![1.2, 0.0]).unwrap_err().to_string();
        assert!(err.contains("y = "), "{err}");
        let err = FamilySpec::new(3, vec![0.5, -0.2]).unwrap_err().to_string();
        assert!(err.contains("x_2"), "{err}");
        assert!(FamilySpec::new(3, vec![0.1, 0.1, 0.1]).is_err());
        assert!(FamilySpec::new(1, vec![0.1]).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = separability_witness(&spec(3, &[0.05, 0.05])).unwrap();
        assert_eq!(w.weights, vec![0.5, 0.5]);
        assert_abs_diff_eq!(w.slacks[0], 0.02 - 0.0025, epsilon = 1e-15);
        let w = separability_witness(&spec(3, &[0.0, 0.0])).unwrap();
        assert_eq!(w.weights, vec![0.5, 0.5]);
        assert!(separability_witness(&spec(3, &[0.5, 0.0])).is_none());
    }

    #[test]
    fn threshold_values() {
        assert_abs_diff_eq!(thresholds(2, 1).unwrap().peres_axis, 1.0 / 3.0, epsilon = 1e-15);
        let t = thresholds(3, 2).unwrap();
        assert_abs_diff_eq!(t.delta, 9.0 / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.disorder_i1, 4.0 / 13.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.disorder_i2.unwrap(), 0.32, epsilon = 1e-15);
        assert_abs_diff_eq!(t.disorder_in, 0.32, epsilon = 1e-15);
        assert_abs_diff_eq!(t.peres_diagonal, 1.0 / (2.0 + 9.0 / 2f64.sqrt()), epsilon = 1e-15);
        assert_abs_diff_eq!(t.peres_diagonal, 0.119_57, epsilon = 1e-5);
        assert_abs_diff_eq!(t.peres_gamma(0.0), t.peres_diagonal * 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(t.vertices[2][0], -1.0 / 7.0, epsilon = 1e-15);
        let t6 = thresholds(6, 5).unwrap();
        assert_abs_diff_eq!(t6.disorder_in, 5.0 / 28.6, epsilon = 1e-15);
        assert_abs_diff_eq!(thresholds(6, 4).unwrap().disorder_in, 4.0 / 19.6, epsilon = 1e-15);
    }

    #[test]
    fn predictor_examples() {
        assert_eq!(violation_predictor(&spec(3, &[0.5, 0.0])).unwrap(), vec![1]);
        assert_eq!(violation_predictor(&spec(3, &[0.4, 0.4])).unwrap(), vec![2]);
        assert_eq!(violation_predictor(&spec(6, &[0.19; 5])).unwrap(), vec![5]);
        assert_eq!(violation_predictor(&spec(3, &[0.6, -0.05])).unwrap(), vec![1]);
        assert!(violation_predictor(&spec(3, &[-0.1, -0.1])).unwrap().is_empty());
    }

    #[test]
    fn symmetric_variant_shares_spectra() {
        let a = spec(4, &[0.3, -0.02, 0.1]);
        let s = a.clone().symmetric();
        let ea = eigenvalues(build(&a).unwrap().op());
        let es = eigenvalues(build(&s).unwrap().op());
        for (u, v) in ea.values().iter().zip(es.values()) {
            assert_abs_diff_eq!(u, v, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(
            criteria::peres_check(&build(&s).unwrap()),
            sigma_min_pt(&s),
            epsilon = 1e-10
        );
        let rho = build(&s).unwrap();
        assert!(rho.reduced(Side::A).max_abs_diff(&rho.reduced(Side::B)) < 1e-15);
    }
}
