//! Total correlation and its relation to total coherence.
//!
//! The conversion protocol rotates `ρ` so its diagonal is flat, attaches a
//! maximally mixed ancilla, and applies the generalized CNOT
//! `U = Σ_{i,j} |i⟩⟨i| ⊗ |i+j mod m⟩⟨j|`. For `m ≥ n` the mutual information of
//! the output equals `C_R(ρ)` exactly and both marginals are maximally mixed.

use num_complex::Complex64;

use crate::coherence::{apply_channel, total_coherence, MixedUnitaryChannel};
use crate::error::{Error, Result};
use crate::matrixlab::{
    binary_entropy, entropy, fourier_matrix, hermitian_eigen, partial_trace_multi, tensor,
    trace_norm_distance, BipartiteState, ComplexMatrix, DensityMatrix, Keep,
};

/// Tolerance for entropic identities and inequalities, in bits.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Tolerance for state equalities, in trace norm.
pub const STATE_EQ_TOL: f64 = 1e-10;
/// A state counts as pure when its largest eigenvalue is at least `1 − PURITY_TOL`.
pub const PURITY_TOL: f64 = 1e-9;

/// `I(A:B) = S(ρ_A) + S(ρ_B) − S(ρ_AB)`.
pub fn mutual_information(s: &BipartiteState) -> f64 {
    entropy(&s.reduced(Keep::A)) + entropy(&s.reduced(Keep::B)) - entropy(s.state())
}

/// `Ũ = F V†` where `ρ = V diag(λ) V†` and `F` is the Fourier matrix; every
/// diagonal entry of `Ũ ρ Ũ†` is `1/dim`.
pub fn uniform_diagonal_rotation(rho: &DensityMatrix) -> ComplexMatrix {
    let eig = rho.eigen();
    fourier_matrix(rho.dim()).matmul(&eig.vectors.adjoint())
}

/// Permutation unitary on `n·m` with a 1 at `(i·m + (i+j) mod m, i·m + j)`.
pub fn generalized_cnot(n: usize, m: usize) -> ComplexMatrix {
    assert!(n >= 1 && m >= 1);
    let mut perm = vec![0usize; n * m];
    for i in 0..n {
        for j in 0..m {
            perm[i * m + (i + j) % m] = i * m + j;
        }
    }
    ComplexMatrix::from_permutation(&perm)
}

/// Outcome of running the coherence-to-correlation protocol.
#[derive(Debug, Clone)]
pub struct ConversionReport {
    pub system_dim: usize,
    pub ancilla_dim: usize,
    /// `C_R(ρ)`.
    pub input_coherence: f64,
    /// `I(S:A)` of the output.
    pub output_mutual_information: f64,
    pub reduced_s: DensityMatrix,
    pub reduced_a: DensityMatrix,
    /// `input_coherence − output_mutual_information`.
    pub equality_slack: f64,
    /// `‖σ_S − I/n‖_tr`.
    pub reduced_s_distance: f64,
    /// `‖σ_A − I/m‖_tr`.
    pub reduced_a_distance: f64,
    /// `U_T = U (Ũ ⊗ I_m)`.
    pub unitary_used: ComplexMatrix,
    pub output: BipartiteState,
    /// False when `m < n`: the protocol ran but equality is not guaranteed.
    pub saturation_expected: bool,
}

impl ConversionReport {
    /// Equality and flat marginals hold at the crate tolerances.
    pub fn saturated(&self) -> bool {
        self.equality_slack.abs() <= IDENTITY_TOL
            && self.reduced_s_distance <= STATE_EQ_TOL
            && self.reduced_a_distance <= STATE_EQ_TOL
    }
}

/// Converts the total coherence of `rho` into correlation with an `m`-level
/// maximally mixed ancilla.
pub fn coherence_to_correlation(rho: &DensityMatrix, m: usize) -> Result<ConversionReport> {
    if m == 0 {
        return Err(Error::InvalidDimension("ancilla dimension must be positive".into()));
    }
    let n = rho.dim();
    let rotation = uniform_diagonal_rotation(rho);
    let cnot = generalized_cnot(n, m);
    let total = cnot.matmul(&rotation.kron(&ComplexMatrix::identity(m)));

    let input = tensor(rho, &DensityMatrix::maximally_mixed(m));
    let output = BipartiteState::new(n, m, input.conjugated(&total)?)?;
    let reduced_s = output.reduced(Keep::A);
    let reduced_a = output.reduced(Keep::B);
    let input_coherence = total_coherence(rho);
    let output_mutual_information = mutual_information(&output);

    Ok(ConversionReport {
        system_dim: n,
        ancilla_dim: m,
        input_coherence,
        output_mutual_information,
        equality_slack: input_coherence - output_mutual_information,
        reduced_s_distance: trace_norm_distance(&reduced_s, &DensityMatrix::maximally_mixed(n))?,
        reduced_a_distance: trace_norm_distance(&reduced_a, &DensityMatrix::maximally_mixed(m))?,
        reduced_s,
        reduced_a,
        unitary_used: total,
        output,
        saturation_expected: m >= n,
    })
}

/// `C_R(ρ) − I(ch[ρ ⊗ I_m/m])`; never below `−IDENTITY_TOL` for a free `ch`.
pub fn correlation_bound_fuzz(
    rho: &DensityMatrix,
    m: usize,
    ch: &MixedUnitaryChannel,
) -> Result<f64> {
    let n = rho.dim();
    if ch.dim() != n * m {
        return Err(Error::DimensionMismatch(ch.dim(), n * m));
    }
    let input = tensor(rho, &DensityMatrix::maximally_mixed(m));
    let out = BipartiteState::new(n, m, apply_channel(ch, &input)?)?;
    Ok(total_coherence(rho) - mutual_information(&out))
}

/// `(I(A:B), C_R(ρ_AB) − C_R(ρ_A) − C_R(ρ_B))`; the two agree identically.
pub fn residual_coherence_identity(s: &BipartiteState) -> (f64, f64) {
    let lhs = mutual_information(s);
    let rhs = total_coherence(s.state())
        - total_coherence(&s.reduced(Keep::A))
        - total_coherence(&s.reduced(Keep::B));
    (lhs, rhs)
}

/// `C_R(ρ_AB) − C_R(ρ_A) − C_R(ρ_B)`, nonnegative by subadditivity of entropy.
pub fn subadditivity_slack(s: &BipartiteState) -> f64 {
    total_coherence(s.state())
        - total_coherence(&s.reduced(Keep::A))
        - total_coherence(&s.reduced(Keep::B))
}

/// A state on `H_A ⊗ H_B ⊗ H_C`.
#[derive(Debug, Clone)]
pub struct TripartiteState {
    dims: [usize; 3],
    state: DensityMatrix,
}

impl TripartiteState {
    pub fn new(dims: [usize; 3], state: DensityMatrix) -> Result<Self> {
        if dims.contains(&0) || dims.iter().product::<usize>() != state.dim() {
            return Err(Error::InvalidDimension(format!(
                "{dims:?} does not factor dim {}",
                state.dim()
            )));
        }
        Ok(Self { dims, state })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    /// Marginal on the factors flagged in `keep`.
    pub fn marginal(&self, keep: [bool; 3]) -> DensityMatrix {
        DensityMatrix::from_trusted(partial_trace_multi(self.state.matrix(), &self.dims, &keep))
    }
}

/// `C_R(ρ_ABC) − C_R(ρ_AB) − C_R(ρ_BC) + C_R(ρ_B)`, which equals
/// `S(AB) + S(BC) − S(ABC) − S(B) ≥ 0`.
pub fn strong_subadditivity_slack(t: &TripartiteState) -> f64 {
    total_coherence(t.state())
        - total_coherence(&t.marginal([true, true, false]))
        - total_coherence(&t.marginal([false, true, true]))
        + total_coherence(&t.marginal([false, true, false]))
}

/// For a pure bipartite state: `(E, gap)` with `E` the entanglement entropy
/// from the Schmidt coefficients and `gap = log2 d_A − C_R(ρ_A)`.
pub fn pure_entanglement_gap(psi: &BipartiteState) -> Result<(f64, f64)> {
    let eig = psi.state().eigen();
    let top = eig.values[0];
    if top < 1.0 - PURITY_TOL {
        return Err(Error::NotPure(top));
    }
    let (da, db) = (psi.dim_a(), psi.dim_b());
    let amp = eig.vectors.column(0);
    // Schmidt weights: eigenvalues of M M† where M_{ab} = ψ_{a·db + b}.
    let gram = ComplexMatrix::from_fn(da, |i, j| {
        (0..db)
            .map(|b| amp[i * db + b] * amp[j * db + b].conj())
            .sum::<Complex64>()
    });
    let schmidt = hermitian_eigen(&gram).values;
    let norm: f64 = schmidt.iter().map(|x| x.max(0.0)).sum();
    let e: f64 = schmidt
        .iter()
        .map(|&x| crate::matrixlab::entropy::entropy_term(x.max(0.0) / norm))
        .sum();
    let gap = (da as f64).log2() - total_coherence(&psi.reduced(Keep::A));
    Ok((e, gap))
}

/// `Y ⊗ Y` for two qubits.
fn sigma_yy() -> ComplexMatrix {
    let y = ComplexMatrix::from_row_major(
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .expect("2x2");
    y.kron(&y)
}

/// Two-qubit concurrence `max(0, μ1 − μ2 − μ3 − μ4)`, with `μ_i` the
/// descending square roots of the eigenvalues of `ρ (Y⊗Y) ρ* (Y⊗Y)`.
///
/// Those eigenvalues are taken from the Hermitian `√ρ ρ̃ √ρ`, which has the
/// same spectrum.
pub fn concurrence(s: &BipartiteState) -> Result<f64> {
    if s.dim_a() != 2 || s.dim_b() != 2 {
        return Err(Error::InvalidDimension(format!(
            "concurrence needs 2x2, got {}x{}",
            s.dim_a(),
            s.dim_b()
        )));
    }
    let rho = s.state().matrix();
    let yy = sigma_yy();
    let flipped = rho.conj().conjugate_by(&yy);
    let sqrt_rho = crate::matrixlab::matrix::hermitian_function(rho, |x| x.max(0.0).sqrt());
    let r = sqrt_rho.matmul(&flipped).matmul(&sqrt_rho);
    let mu: Vec<f64> = crate::matrixlab::matrix::hermitian_eigenvalues(&r)
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    Ok((mu[0] - mu[1] - mu[2] - mu[3]).max(0.0))
}

/// `(E_F(ρ), S(ρ_A))` for a two-qubit state, where `S(ρ_A) = log2 2 − C_R(ρ_A)`
/// bounds the entanglement of formation.
pub fn mixed_entanglement_bound_2x2(s: &BipartiteState) -> Result<(f64, f64)> {
    let c = concurrence(s)?;
    let eof = binary_entropy((1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0);
    let bound = 1.0 - total_coherence(&s.reduced(Keep::A));
    Ok((eof, bound))
}
