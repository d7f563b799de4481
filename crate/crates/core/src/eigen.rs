//! Eigenvalues of small dense Hermitian matrices.
//!
//! The engine is a cyclic Jacobi rotation sweep on a real symmetric matrix;
//! complex Hermitian input is embedded as the 2n x 2n real symmetric matrix
//! `[[Re G, -Im G], [Im G, Re G]]`, whose spectrum is that of `G` with every
//! eigenvalue doubled. The matrices this crate diagonalizes are sub-Gram
//! matrices of at most a few dozen columns, so the quadratic-per-sweep cost
//! is irrelevant next to the robustness of the method.

use crate::matrix::{Mat, RealMatrix};
use crate::{Complex64, ComplexMatrix, Error, Result};

/// Off-diagonal Frobenius mass threshold, relative to the matrix norm.
const CONVERGENCE_RTOL: f64 = 1e-12;
/// Hard sweep cap; exceeding it is reported as an error.
const MAX_SWEEPS: usize = 100;

fn frobenius(a: &RealMatrix) -> f64 {
    a.data().iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn off_diagonal_mass(a: &RealMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += a.get(p, q) * a.get(p, q);
            }
        }
    }
    acc.sqrt()
}

/// Eigenvalues (ascending) of a real symmetric matrix, with eigenvectors as
/// matching columns when `want_vectors` is set.
pub fn sym_eigen(a: &RealMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<RealMatrix>)> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalue input must be square, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(|| Mat::zeros(0, 0))));
    }
    let mut work = a.clone();
    let mut vecs = want_vectors.then(|| RealMatrix::identity(n));
    let scale = frobenius(&work);
    if scale == 0.0 {
        let order: Vec<usize> = (0..n).collect();
        return Ok((vec![0.0; n], vecs.map(|v| reorder_columns(&v, &order))));
    }

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_mass(&work) <= CONVERGENCE_RTOL * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = work.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                // rotation annihilating the (p, q) entry
                let theta = (work.get(q, q) - work.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = work.get(i, p);
                    let aiq = work.get(i, q);
                    work.set(i, p, c * aip - s * aiq);
                    work.set(i, q, s * aip + c * aiq);
                }
                for i in 0..n {
                    let api = work.get(p, i);
                    let aqi = work.get(q, i);
                    work.set(p, i, c * api - s * aqi);
                    work.set(q, i, s * api + c * aqi);
                }
                if let Some(v) = vecs.as_mut() {
                    for i in 0..n {
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, c * vip - s * viq);
                        v.set(i, q, s * vip + c * viq);
                    }
                }
            }
        }
    }
    if !converged && off_diagonal_mass(&work) > CONVERGENCE_RTOL * scale {
        return Err(Error::EigenNonConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work.get(i, i).partial_cmp(&work.get(j, j)).unwrap());
    let values = order.iter().map(|&i| work.get(i, i)).collect();
    Ok((values, vecs.map(|v| reorder_columns(&v, &order))))
}

fn reorder_columns(v: &RealMatrix, order: &[usize]) -> RealMatrix {
    Mat::from_fn(v.rows(), order.len(), |r, c| v.get(r, order[c]))
}

fn check_hermitian(g: &ComplexMatrix) -> Result<()> {
    if g.rows() != g.cols() {
        return Err(Error::DimensionMismatch(format!(
            "Hermitian input must be square, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let scale = g
        .data()
        .iter()
        .map(|v| v.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let dev = (g.get(i, j) - g.get(j, i).conj()).norm();
            if dev > 1e-10 * scale {
                return Err(Error::NotHermitian);
            }
        }
    }
    Ok(())
}

/// Embeds the (exactly Hermitized) matrix into its real symmetric double.
fn embed(g: &ComplexMatrix) -> RealMatrix {
    let n = g.rows();
    let mut t = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let h = (g.get(i, j) + g.get(j, i).conj()).scale(0.5);
            t.set(i, j, h.re);
            t.set(i, j + n, -h.im);
            t.set(i + n, j, h.im);
            t.set(i + n, j + n, h.re);
        }
    }
    t
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(g: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(g)?;
    let (vals, _) = sym_eigen(&embed(g), false)?;
    // each eigenvalue of G appears twice in the embedding
    Ok(vals.into_iter().step_by(2).collect())
}

/// Eigenvalues (ascending) and matching unit eigenvectors of a Hermitian
/// matrix. A real eigenvector `(u; w)` of the embedding maps back to the
/// complex eigenvector `u + j*w`.
pub fn hermitian_eigen(g: &ComplexMatrix) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    check_hermitian(g)?;
    let n = g.rows();
    let (vals, vecs) = sym_eigen(&embed(g), true)?;
    let vecs = vecs.expect("vectors requested");
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for idx in (0..2 * n).step_by(2) {
        values.push(vals[idx]);
        let mut x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(vecs.get(i, idx), vecs.get(i + n, idx)))
            .collect();
        let norm = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        for v in &mut x {
            *v /= norm;
        }
        vectors.push(x);
    }
    Ok((values, vectors))
}
