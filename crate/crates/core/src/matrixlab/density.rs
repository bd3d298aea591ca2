use num_complex::Complex64;

use super::matrix::{hermitian_eigen, hermitian_eigenvalues, ComplexMatrix, HermitianEigen};
use super::spectrum::Spectrum;
use crate::error::{Error, Result};

/// Tolerance for Hermiticity, trace and positivity checks.
pub const STATE_TOL: f64 = 1e-10;

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() == 0 {
            return Err(Error::InvalidDimension("dimension must be positive".into()));
        }
        let herm = matrix.hermiticity_defect();
        if herm > STATE_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidTrace(tr.re));
        }
        let min_eig = hermitian_eigenvalues(&matrix)
            .last()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -STATE_TOL {
            return Err(Error::NotPositive(min_eig));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix known to be a state up to rounding (outputs of channels,
    /// partial traces, Kronecker products). Only the Hermitian part is kept.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        debug_assert!(matrix.hermiticity_defect() < 1e-8);
        Self {
            matrix: matrix.hermitian_part(),
        }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    /// Diagonal state; entries must form a probability vector.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(probs))
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) nonzero vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || norm2 == 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let scale = 1.0 / norm2.sqrt();
        let v: Vec<Complex64> = psi.iter().map(|z| z * scale).collect();
        Ok(Self::from_trusted(ComplexMatrix::outer(&v)))
    }

    /// Computational basis state `|k⟩⟨k|`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut probs = vec![0.0; dim];
        probs[k] = 1.0;
        Self::from_trusted(ComplexMatrix::from_real_diagonal(&probs))
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eigen(&self) -> HermitianEigen {
        hermitian_eigen(&self.matrix)
    }

    /// Eigenvalues sorted descending, clamped to `[0, 1]`.
    pub fn spectrum(&self) -> Spectrum {
        Spectrum::clamped(hermitian_eigenvalues(&self.matrix))
    }

    /// Unitary conjugation `U ρ U†`.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.dim() {
            return Err(Error::DimensionMismatch(u.dim(), self.dim()));
        }
        Ok(Self::from_trusted(self.matrix.conjugate_by(u)))
    }

    /// Convex combination `Σ w_i ρ_i`. Weights must be a probability vector.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut acc = ComplexMatrix::zeros(dim);
        let mut total = 0.0;
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch(dim, rho.dim()));
            }
            if *w < 0.0 {
                return Err(Error::InvalidArgument(format!("negative weight {w}")));
            }
            acc.add_scaled(*w, rho.matrix());
            total += w;
        }
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!("weights sum to {total}")));
        }
        Ok(Self::from_trusted(acc))
    }
}

/// `eigen_spectrum`: the descending, clamped eigenvalues of `rho`.
pub fn eigen_spectrum(rho: &DensityMatrix) -> Spectrum {
    rho.spectrum()
}

/// Kronecker product of two states.
pub fn tensor(rho: &DensityMatrix, sigma: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::from_trusted(rho.matrix().kron(sigma.matrix()))
}

/// Which factor of a bipartite state to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    A,
    B,
}

/// A state on `H_A ⊗ H_B` with declared factor dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    state: DensityMatrix,
}

impl BipartiteState {
    pub fn new(dim_a: usize, dim_b: usize, state: DensityMatrix) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 || dim_a * dim_b != state.dim() {
            return Err(Error::InvalidDimension(format!(
                "{dim_a} x {dim_b} does not factor dim {}",
                state.dim()
            )));
        }
        Ok(Self { dim_a, dim_b, state })
    }

    pub fn product(rho_a: &DensityMatrix, rho_b: &DensityMatrix) -> Self {
        Self {
            dim_a: rho_a.dim(),
            dim_b: rho_b.dim(),
            state: tensor(rho_a, rho_b),
        }
    }

    /// `(|00⟩ + |11⟩ + …)/√d` on `d ⊗ d`.
    pub fn maximally_entangled(d: usize) -> Self {
        let mut psi = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            psi[i * d + i] = Complex64::new(1.0, 0.0);
        }
        Self {
            dim_a: d,
            dim_b: d,
            state: DensityMatrix::pure(&psi).expect("nonzero vector"),
        }
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn reduced(&self, keep: Keep) -> DensityMatrix {
        let mask = match keep {
            Keep::A => [true, false],
            Keep::B => [false, true],
        };
        DensityMatrix::from_trusted(partial_trace_multi(
            self.state.matrix(),
            &[self.dim_a, self.dim_b],
            &mask,
        ))
    }
}

/// `partial_trace`: traces out the factor not named by `keep`.
pub fn partial_trace(s: &BipartiteState, keep: Keep) -> DensityMatrix {
    s.reduced(keep)
}

/// Partial trace over a multipartite factorization.
///
/// `dims` lists factor dimensions in tensor order; factors with
/// `keep[k] == false` are traced out. The result acts on the kept factors in
/// their original order.
pub fn partial_trace_multi(m: &ComplexMatrix, dims: &[usize], keep: &[bool]) -> ComplexMatrix {
    assert_eq!(dims.len(), keep.len());
    assert_eq!(dims.iter().product::<usize>(), m.dim());
    let kept_dim: usize = dims.iter().zip(keep).filter(|(_, &k)| k).map(|(d, _)| d).product();
    let traced_dim = m.dim() / kept_dim;

    // Full index = Σ digit_k · stride_k in mixed radix.
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let compose = |kept_idx: usize, traced_idx: usize| -> usize {
        let (mut ki, mut ti) = (kept_idx, traced_idx);
        let mut full = 0;
        for k in (0..dims.len()).rev() {
            let digit = if keep[k] {
                let d = ki % dims[k];
                ki /= dims[k];
                d
            } else {
                let d = ti % dims[k];
                ti /= dims[k];
                d
            };
            full += digit * strides[k];
        }
        full
    };

    let mut out = ComplexMatrix::zeros(kept_dim);
    for i in 0..kept_dim {
        for j in 0..kept_dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..traced_dim {
                acc += m[(compose(i, t), compose(j, t))];
            }
            out[(i, j)] = acc;
        }
    }
    out
}
