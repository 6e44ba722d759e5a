#![allow(dead_code)]

use majorlens::families::{self, FamilySpec};
use majorlens::hermitian::{self, HermitianOperator};
use majorlens::BipartiteDensity;
use num_complex::Complex64;
use rand::Rng;

/// Uniform point of the positivity polytope, as a convex combination of its vertices.
pub fn random_spec<R: Rng>(rng: &mut R, d: usize, n: usize) -> FamilySpec {
    let verts = families::thresholds(d, n).unwrap().vertices;
    let w: Vec<f64> = verts.iter().map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let total: f64 = w.iter().sum();
    let mut x = vec![0.0; n];
    for (wi, v) in w.iter().zip(&verts) {
        for (xj, vj) in x.iter_mut().zip(v) {
            *xj += wi / total * vj;
        }
    }
    FamilySpec::unchecked(d, x).unwrap()
}

pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    (0..dim * dim)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect()
}

/// G G† / Tr, optionally of reduced rank.
pub fn random_density<R: Rng>(rng: &mut R, dims: (usize, usize), rank: usize) -> BipartiteDensity {
    let dim = dims.0 * dims.1;
    let g: Vec<Complex64> = (0..dim * rank)
        .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
        .collect();
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            m[i * dim + j] = (0..rank).map(|k| g[i * rank + k] * g[j * rank + k].conj()).sum();
        }
    }
    let tr: f64 = (0..dim).map(|i| m[i * dim + i].re).sum();
    for (k, v) in m.iter_mut().enumerate() {
        *v /= tr;
        if k / dim == k % dim {
            v.im = 0.0;
        }
    }
    // symmetrize exactly
    for i in 0..dim {
        for j in 0..i {
            let a = (m[i * dim + j] + m[j * dim + i].conj()) * 0.5;
            m[i * dim + j] = a;
            m[j * dim + i] = a.conj();
        }
    }
    BipartiteDensity::new(HermitianOperator::from_entries(dim, m).unwrap(), dims).unwrap()
}

/// Unitary from the eigenvectors of a random Hermitian matrix, row-major.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    let g = random_matrix(rng, dim);
    let mut h = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            h[i * dim + j] = g[i * dim + j] + g[j * dim + i].conj();
        }
    }
    let op = HermitianOperator::from_entries(dim, h).unwrap();
    // rows are orthonormal eigenvectors
    hermitian::eigen_decomposition(&op).vectors.concat()
}

/// U A U†.
pub fn conjugate(u: &[Complex64], a: &HermitianOperator) -> HermitianOperator {
    let n = a.dim();
    let e = a.entries();
    let mut ua = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            ua[i * n + j] = (0..n).map(|k| u[i * n + k] * e[k * n + j]).sum();
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| ua[i * n + k] * u[j * n + k].conj()).sum();
        }
    }
    for i in 0..n {
        for j in 0..i {
            let a = (out[i * n + j] + out[j * n + i].conj()) * 0.5;
            out[i * n + j] = a;
            out[j * n + i] = a.conj();
        }
        out[i * n + i].im = 0.0;
    }
    HermitianOperator::from_entries(n, out).unwrap()
}

/// Random probability vector sorted in decreasing order.
pub fn random_probs<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..len).map(|_| -rng.gen::<f64>().max(1e-300).ln()).collect();
    let s: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= s);
    p.sort_by(|a, b| b.total_cmp(a));
    p
}

/// Replaces each block of `block` adjacent entries by its mean, a doubly stochastic map,
/// so the result is majorized by the input.
pub fn block_average(p: &[f64], block: usize) -> Vec<f64> {
    p.chunks(block)
        .flat_map(|c| {
            let m = c.iter().sum::<f64>() / c.len() as f64;
            std::iter::repeat_n(m, c.len())
        })
        .collect()
}
