//! Entropic functionals, all in bits.

use super::density::{DensityMatrix, STATE_TOL};
use super::matrix::{hermitian_eigen, hermitian_eigenvalues};
use super::spectrum::Spectrum;
use crate::error::{Error, Result};

/// `-p log2 p` with `0 log 0 = 0`.
#[inline]
pub fn entropy_term(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy of the spectrum: `S(ρ) = -Σ λ log2 λ`.
pub fn von_neumann_entropy(spec: &Spectrum) -> f64 {
    let s: f64 = spec.probs().iter().map(|&p| entropy_term(p)).sum();
    s.clamp(0.0, (spec.len() as f64).log2())
}

/// `S(ρ)` straight from the state.
pub fn entropy(rho: &DensityMatrix) -> f64 {
    von_neumann_entropy(&rho.spectrum())
}

/// Binary entropy `h(p)`.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_term(p) + entropy_term(1.0 - p)
}

/// `S(ρ‖σ) = Tr ρ log2 ρ − Tr ρ log2 σ`.
///
/// Returns `+∞` when some eigenvector of `σ` with eigenvalue at most
/// [`STATE_TOL`] carries more than `STATE_TOL` weight of `ρ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let neg_s_rho = -entropy(rho);
    let eig = hermitian_eigen(sigma.matrix());
    let n = rho.dim();
    let mut cross = 0.0;
    for (k, &mu) in eig.values.iter().enumerate() {
        // ⟨w_k| ρ |w_k⟩
        let w = eig.vectors.column(k);
        let mut weight = 0.0;
        for i in 0..n {
            let row: num_complex::Complex64 =
                w.iter().enumerate().map(|(j, &wj)| rho.matrix()[(i, j)] * wj).sum();
            weight += (w[i].conj() * row).re;
        }
        if mu <= STATE_TOL {
            if weight > STATE_TOL {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * mu.log2();
    }
    Ok((neg_s_rho - cross).max(0.0))
}

/// Unnormalized trace norm `‖ρ − σ‖_tr`: sum of singular values of the difference.
pub fn trace_norm_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let diff = rho.matrix().sub(sigma.matrix());
    Ok(hermitian_eigenvalues(&diff).iter().map(|x| x.abs()).sum())
}
