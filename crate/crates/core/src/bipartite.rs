//! Bipartite structure: reduced densities, partial transpose and tensor products.
//!
//! Basis state |i⟩_A|j⟩_B sits at row `i * d_B + j`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{self, HermitianOperator, MatrixJson, Spectrum, PSD_TOL};

const TRACE_TOL: f64 = 1e-10;

/// Which subsystem a reduced quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::A => "A",
            Side::B => "B",
        }
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Side::A),
            "B" | "b" => Ok(Side::B),
            other => Err(Error::InvalidParameter(format!("unknown side {other:?}"))),
        }
    }
}

/// A unit-trace positive semidefinite operator on C^{d_A} ⊗ C^{d_B}.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteDensity {
    dims: (usize, usize),
    op: HermitianOperator,
    psd_tol: f64,
}

impl BipartiteDensity {
    pub fn new(op: HermitianOperator, dims: (usize, usize)) -> Result<Self> {
        Self::with_tolerance(op, dims, PSD_TOL)
    }

    pub fn with_tolerance(op: HermitianOperator, dims: (usize, usize), psd_tol: f64) -> Result<Self> {
        let rho = Self::structural(op, dims)?;
        let tr = rho.op.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let min = hermitian::min_eigenvalue(&rho.op);
        if min < -psd_tol {
            return Err(Error::NotPsd(min));
        }
        Ok(Self { psd_tol, ..rho })
    }

    /// Checks only the dimensions; used for operators whose positivity is known.
    pub(crate) fn structural(op: HermitianOperator, dims: (usize, usize)) -> Result<Self> {
        if dims.0 == 0 || dims.1 == 0 {
            return Err(Error::InvalidParameter("factor dimensions must be positive".into()));
        }
        if dims.0 * dims.1 != op.dim() {
            return Err(Error::DimensionMismatch {
                expected: dims.0 * dims.1,
                found: op.dim(),
            });
        }
        Ok(Self {
            dims,
            op,
            psd_tol: PSD_TOL,
        })
    }

    /// Pure state |ψ⟩⟨ψ| from (not necessarily normalized) amplitudes.
    pub fn pure(amplitudes: &[Complex64], dims: (usize, usize)) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let psi: Vec<Complex64> = amplitudes.iter().map(|z| z / norm).collect();
        Self::new(HermitianOperator::projector(&psi), dims)
    }

    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let dim = dims.0 * dims.1;
        Self {
            dims,
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
            psd_tol: PSD_TOL,
        }
    }

    /// Product state ρ_A ⊗ ρ_B.
    pub fn product(a: &HermitianOperator, b: &HermitianOperator) -> Result<Self> {
        Self::new(tensor(a, b), (a.dim(), b.dim()))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn op(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn psd_tol(&self) -> f64 {
        self.psd_tol
    }

    pub fn spectrum(&self) -> Spectrum {
        hermitian::eigenvalues(&self.op)
    }

    pub fn reduced(&self, side: Side) -> HermitianOperator {
        partial_trace(self, side)
    }

    pub fn reduced_spectrum(&self, side: Side) -> Spectrum {
        hermitian::eigenvalues(&self.reduced(side))
    }

    pub fn reduced_dim(&self, side: Side) -> usize {
        match side {
            Side::A => self.dims.0,
            Side::B => self.dims.1,
        }
    }

    pub fn to_json(&self) -> DensityJson {
        DensityJson {
            dims: [self.dims.0, self.dims.1],
            matrix: self.op.to_json(),
        }
    }

    pub fn from_json(json: &DensityJson) -> Result<Self> {
        let op = HermitianOperator::from_json(&json.matrix)?;
        Self::new(op, (json.dims[0], json.dims[1]))
    }
}

/// `{"dims": [d_A, d_B], "dim": D, "re": [[..]], "im": [[..]]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityJson {
    pub dims: [usize; 2],
    #[serde(flatten)]
    pub matrix: MatrixJson,
}

/// Reduced density on the kept subsystem: `Side::A` returns ρ_A = Tr_B ρ.
pub fn partial_trace(rho: &BipartiteDensity, keep: Side) -> HermitianOperator {
    let (da, db) = rho.dims;
    let op = &rho.op;
    match keep {
        Side::A => {
            let mut out = vec![Complex64::new(0.0, 0.0); da * da];
            for i in 0..da {
                for j in 0..da {
                    out[i * da + j] = (0..db).map(|b| op.get(i * db + b, j * db + b)).sum();
                }
            }
            HermitianOperator::from_entries_unchecked(da, out)
        }
        Side::B => {
            let mut out = vec![Complex64::new(0.0, 0.0); db * db];
            for i in 0..db {
                for j in 0..db {
                    out[i * db + j] = (0..da).map(|a| op.get(a * db + i, a * db + j)).sum();
                }
            }
            HermitianOperator::from_entries_unchecked(db, out)
        }
    }
}

/// Transpose on subsystem B: (ρ^{T_B})_{(i a),(j b)} = ρ_{(i b),(j a)}.
pub fn partial_transpose(rho: &BipartiteDensity) -> HermitianOperator {
    partial_transpose_op(&rho.op, rho.dims)
}

pub(crate) fn partial_transpose_op(op: &HermitianOperator, (da, db): (usize, usize)) -> HermitianOperator {
    let dim = da * db;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..da {
        for a in 0..db {
            for j in 0..da {
                for b in 0..db {
                    out[(i * db + a) * dim + j * db + b] = op.get(i * db + b, j * db + a);
                }
            }
        }
    }
    HermitianOperator::from_entries_unchecked(dim, out)
}

/// Kronecker product a ⊗ b.
pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..da {
        for j in 0..da {
            let aij = a.get(i, j);
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k) * dim + j * db + l] = aij * b.get(k, l);
                }
            }
        }
    }
    HermitianOperator::from_entries_unchecked(dim, out)
}
