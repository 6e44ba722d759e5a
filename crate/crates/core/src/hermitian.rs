//! Dense Hermitian matrices of small dimension and their eigenvalue decomposition.
//!
//! The eigensolver is a cyclic complex Jacobi iteration. Each rotation first removes
//! the phase of the pivot entry and then applies an ordinary real Jacobi rotation, so
//! the accumulated transformation stays unitary and the diagonal stays real.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for the Hermiticity check.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Default tolerance used by [`is_psd`].
pub const PSD_TOL: f64 = 1e-10;
/// Default tolerance for clustering degenerate eigenvalues in reports.
pub const DEGENERACY_TOL: f64 = 1e-9;

const JACOBI_REL_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// A square Hermitian matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianOperator {
    /// Builds an operator from row-major entries, checking Hermiticity.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let mut worst = (0, 0, 0.0_f64);
        for j in 0..dim {
            for k in j..dim {
                let dev = (entries[j * dim + k] - entries[k * dim + j].conj()).norm();
                if dev > worst.2 {
                    worst = (j, k, dev);
                }
            }
        }
        if worst.2 > HERMITIAN_TOL {
            return Err(Error::NotHermitian {
                row: worst.0,
                col: worst.1,
                deviation: worst.2,
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::from_entries(dim, entries)
    }

    /// Real symmetric matrix from row-major values.
    pub fn from_real(dim: usize, values: &[f64]) -> Result<Self> {
        Self::from_entries(dim, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let dim = values.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &v) in values.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(v, 0.0);
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn zeros(dim: usize) -> Self {
        Self::diagonal(&vec![0.0; dim])
    }

    /// The projector |v⟩⟨v| (the vector is used as given, not normalized).
    pub fn projector(v: &[Complex64]) -> Self {
        let dim = v.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for a in v {
            for b in v {
                entries.push(a * b.conj());
            }
        }
        Self { dim, entries }
    }

    /// Internal constructor for results that are Hermitian by construction.
    pub(crate) fn from_entries_unchecked(dim: usize, entries: Vec<Complex64>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i).re).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_json(&self) -> MatrixJson {
        let rows = |f: fn(&Complex64) -> f64| {
            (0..self.dim)
                .map(|r| (0..self.dim).map(|c| f(&self.get(r, c))).collect())
                .collect()
        };
        MatrixJson {
            dim: self.dim,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn from_json(m: &MatrixJson) -> Result<Self> {
        if m.re.len() != m.dim || m.im.len() != m.dim {
            return Err(Error::DimensionMismatch {
                expected: m.dim,
                found: m.re.len().max(m.im.len()),
            });
        }
        let mut entries = Vec::with_capacity(m.dim * m.dim);
        for (re_row, im_row) in m.re.iter().zip(&m.im) {
            if re_row.len() != m.dim || im_row.len() != m.dim {
                return Err(Error::DimensionMismatch {
                    expected: m.dim,
                    found: re_row.len().max(im_row.len()),
                });
            }
            entries.extend(re_row.iter().zip(im_row).map(|(&r, &i)| Complex64::new(r, i)));
        }
        Self::from_entries(m.dim, entries)
    }
}

/// Row-major JSON exchange form: `{"dim": D, "re": [[..]], "im": [[..]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// Eigenvalues sorted in decreasing order together with their partial sums.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    cumsums: Vec<f64>,
    degeneracy_tol: f64,
}

impl Spectrum {
    /// Sorts the given values in decreasing order. Equal values keep their input order.
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        let cumsums = values
            .iter()
            .scan(0.0, |acc, &v| {
                *acc += v;
                Some(*acc)
            })
            .collect();
        Self {
            values,
            cumsums,
            degeneracy_tol: DEGENERACY_TOL,
        }
    }

    pub fn with_degeneracy_tol(mut self, tol: f64) -> Self {
        self.degeneracy_tol = tol;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cumsums(&self) -> &[f64] {
        &self.cumsums
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degeneracy_tol(&self) -> f64 {
        self.degeneracy_tol
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.cumsums.last().copied().unwrap_or(0.0)
    }

    /// Multiplicity of the largest eigenvalue, clustered with `degeneracy_tol`.
    pub fn largest_multiplicity(&self) -> usize {
        let top = self.values[0];
        self.values
            .iter()
            .take_while(|&&v| top - v <= self.degeneracy_tol)
            .count()
    }

    /// Number of eigenvalues strictly larger than `alpha` (beyond `degeneracy_tol`).
    pub fn count_above(&self, alpha: f64) -> usize {
        self.values
            .iter()
            .filter(|&&v| v > alpha + self.degeneracy_tol)
            .count()
    }

    /// Partial sum of the `i` largest values; `i` beyond the length returns the total.
    pub fn partial_sum(&self, i: usize) -> f64 {
        match i {
            0 => 0.0,
            _ => self.cumsums[(i - 1).min(self.cumsums.len() - 1)],
        }
    }
}

/// Eigenvalues with unit eigenvectors; `vectors[k]` belongs to `spectrum.values()[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub spectrum: Spectrum,
    pub vectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    /// Rebuilds V Λ V†.
    pub fn reconstruct(&self) -> HermitianOperator {
        let dim = self.vectors.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (lambda, v) in self.spectrum.values().iter().zip(&self.vectors) {
            for r in 0..dim {
                for c in 0..dim {
                    entries[r * dim + c] += v[r] * v[c].conj() * *lambda;
                }
            }
        }
        HermitianOperator::from_entries_unchecked(dim, entries)
    }
}

pub fn eigenvalues(op: &HermitianOperator) -> Spectrum {
    let (values, _) = jacobi(op, false);
    Spectrum::from_values(values)
}

pub fn eigen_decomposition(op: &HermitianOperator) -> EigenDecomposition {
    let (values, v) = jacobi(op, true);
    let v = v.expect("vectors requested");
    let dim = op.dim();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let vectors = order
        .iter()
        .map(|&k| (0..dim).map(|r| v[r * dim + k]).collect())
        .collect();
    EigenDecomposition {
        spectrum: Spectrum::from_values(values),
        vectors,
    }
}

pub fn min_eigenvalue(op: &HermitianOperator) -> f64 {
    eigenvalues(op).min()
}

pub fn is_psd(op: &HermitianOperator, tol: f64) -> bool {
    min_eigenvalue(op) >= -tol
}

fn off_diagonal_sq(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[r * n + c].norm_sqr();
            }
        }
    }
    s
}

/// Cyclic Jacobi. Returns unsorted eigenvalues and, optionally, the row-major
/// unitary whose columns are the eigenvectors.
fn jacobi(op: &HermitianOperator, want_vectors: bool) -> (Vec<f64>, Option<Vec<Complex64>>) {
    let n = op.dim();
    let mut a = op.entries().to_vec();
    let mut v = want_vectors.then(|| HermitianOperator::identity(n).entries);
    let norm_sq = a.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let target = JACOBI_REL_TOL * JACOBI_REL_TOL * norm_sq;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal_sq(&a, n);
        if off <= target || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 || r * r <= f64::MIN_POSITIVE {
                    continue;
                }
                // e^{-iφ} where a_pq = r e^{iφ}
                let phase = apq.conj() / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U has columns u_p = (c, -s e^{-iφ}) and u_q = (s, c e^{-iφ}) on (p, q).
                let up_q = -phase * s;
                let uq_q = phase * c;

                // A <- A U (columns p and q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * up_q;
                    a[k * n + q] = akp * s + akq * uq_q;
                }
                // A <- U† A (rows p and q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * up_q.conj();
                    a[q * n + k] = apk * s + aqk * uq_q.conj();
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p] = Complex64::new(app - t * r, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * r, 0.0);

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * c + vkq * up_q;
                        v[k * n + q] = vkp * s + vkq * uq_q;
                    }
                }
            }
        }
    }
    let values = (0..n).map(|i| a[i * n + i].re).collect();
    (values, v)
}
