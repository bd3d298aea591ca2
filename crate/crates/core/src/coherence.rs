//! Total coherence `C_R(ρ) = log2 n − S(ρ)` and its free operations.
//!
//! The free state is `I_n/n`; the free operations are mixtures of unitaries
//! `ρ ↦ Σ p_i U_i ρ U_i†`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrixlab::{entropy, trace_norm_distance, ComplexMatrix, DensityMatrix};

/// Allowed deviation of channel weights from a probability vector.
pub const WEIGHT_TOL: f64 = 1e-10;
/// Allowed deviation of each term from unitarity.
pub const UNITARY_TOL: f64 = 1e-9;

/// `C_R(ρ) = log2 dim − S(ρ)`, in bits.
pub fn total_coherence(rho: &DensityMatrix) -> f64 {
    let max = (rho.dim() as f64).log2();
    (max - entropy(rho)).clamp(0.0, max)
}

/// The formation-type measure collapses to a constant: every pure state
/// carries `log2 dim`, so every decomposition averages to it.
pub fn coherence_of_formation(dim: usize) -> f64 {
    (dim.max(1) as f64).log2()
}

/// True iff `‖ρ − I/n‖_tr ≤ tol`.
pub fn is_incoherent_state(rho: &DensityMatrix, tol: f64) -> bool {
    let mixed = DensityMatrix::maximally_mixed(rho.dim());
    trace_norm_distance(rho, &mixed).map(|d| d <= tol).unwrap_or(false)
}

/// One term `(p_i, U_i)` of a mixed-unitary channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelTerm {
    pub weight: f64,
    pub unitary: ComplexMatrix,
}

/// `ρ ↦ Σ p_i U_i ρ U_i†`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedUnitaryChannel {
    dim: usize,
    terms: Vec<ChannelTerm>,
}

impl MixedUnitaryChannel {
    pub fn new(terms: Vec<(f64, ComplexMatrix)>) -> Result<Self> {
        let dim = terms
            .first()
            .map(|(_, u)| u.dim())
            .ok_or_else(|| Error::InvalidChannel("no terms".into()))?;
        let mut total = 0.0;
        for (w, u) in &terms {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch(dim, u.dim()));
            }
            if !(*w > 0.0 && *w <= 1.0 + WEIGHT_TOL) {
                return Err(Error::InvalidChannel(format!("weight {w} outside (0, 1]")));
            }
            let defect = u.unitarity_defect();
            if defect > UNITARY_TOL {
                return Err(Error::NotUnitary(defect));
            }
            total += w;
        }
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::InvalidChannel(format!("weights sum to {total}")));
        }
        // Σ p_i U_i† U_i = I
        let mut kraus = ComplexMatrix::zeros(dim);
        for (w, u) in &terms {
            kraus.add_scaled(*w, &u.adjoint().matmul(u));
        }
        let defect = kraus.max_abs_diff(&ComplexMatrix::identity(dim));
        if defect > UNITARY_TOL {
            return Err(Error::InvalidChannel(format!(
                "completeness relation violated by {defect:e}"
            )));
        }
        Ok(Self {
            dim,
            terms: terms
                .into_iter()
                .map(|(weight, unitary)| ChannelTerm { weight, unitary })
                .collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            terms: vec![ChannelTerm {
                weight: 1.0,
                unitary: ComplexMatrix::identity(dim),
            }],
        }
    }

    /// A single unitary, applied with certainty.
    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        Self::new(vec![(1.0, u)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[ChannelTerm] {
        &self.terms
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_channel(self, rho)
    }

    /// Each selective outcome `U_i ρ U_i†` with its probability.
    pub fn outcomes(&self, rho: &DensityMatrix) -> Result<Vec<(f64, DensityMatrix)>> {
        self.terms
            .iter()
            .map(|t| Ok((t.weight, rho.conjugated(&t.unitary)?)))
            .collect()
    }
}

pub fn apply_channel(ch: &MixedUnitaryChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if ch.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(ch.dim(), rho.dim()));
    }
    let mut out = ComplexMatrix::zeros(rho.dim());
    for t in ch.terms() {
        out.add_scaled(t.weight, &rho.matrix().conjugate_by(&t.unitary));
    }
    Ok(DensityMatrix::from_trusted(out))
}

/// Cyclic shift `X|j⟩ = |j+1 mod d⟩`.
pub fn shift_matrix(dim: usize) -> ComplexMatrix {
    let perm: Vec<usize> = (0..dim).map(|i| (i + dim - 1) % dim).collect();
    ComplexMatrix::from_permutation(&perm)
}

/// Clock `Z|j⟩ = ω^j |j⟩`, `ω = e^{2πi/d}`.
pub fn clock_matrix(dim: usize) -> ComplexMatrix {
    let mut z = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        z[(j, j)] = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / dim as f64);
    }
    z
}

/// Uniform mixture of the `dim²` Weyl–Heisenberg operators `X^a Z^b`, which
/// sends every state to `I/dim`.
pub fn complete_decoherence_channel(dim: usize) -> MixedUnitaryChannel {
    assert!(dim >= 1);
    let x = shift_matrix(dim);
    let z = clock_matrix(dim);
    let w = 1.0 / (dim * dim) as f64;
    let mut terms = Vec::with_capacity(dim * dim);
    let mut xa = ComplexMatrix::identity(dim);
    for _ in 0..dim {
        let mut xazb = xa.clone();
        for _ in 0..dim {
            terms.push(ChannelTerm {
                weight: w,
                unitary: xazb.clone(),
            });
            xazb = xazb.matmul(&z);
        }
        xa = xa.matmul(&x);
    }
    MixedUnitaryChannel { dim, terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixlab::{random_density, Rng};

    #[test]
    fn coherence_examples() {
        for n in 2..=6 {
            assert!(total_coherence(&DensityMatrix::maximally_mixed(n)).abs() < 1e-12);
        }
        let mut rng = Rng::new(3);
        let pure = random_density(4, 1, &mut rng);
        assert!((total_coherence(&pure) - 2.0).abs() < 1e-9);
        let d = DensityMatrix::diagonal(&[0.75, 0.25]).unwrap();
        assert!((total_coherence(&d) - 0.1887218755).abs() < 1e-10);
    }

    #[test]
    fn formation_constant() {
        assert_eq!(coherence_of_formation(1), 0.0);
        assert_eq!(coherence_of_formation(2), 1.0);
        assert_eq!(coherence_of_formation(8), 3.0);
    }

    #[test]
    fn incoherent_predicate() {
        assert!(is_incoherent_state(&DensityMatrix::maximally_mixed(5), 1e-9));
        let mut rng = Rng::new(1);
        assert!(!is_incoherent_state(&random_density(3, 1, &mut rng), 1e-3));
        let near = DensityMatrix::diagonal(&[0.5 + 1e-12, 0.5 - 1e-12]).unwrap();
        assert!(is_incoherent_state(&near, 1e-9));
    }

    #[test]
    fn channel_examples() {
        let rho = DensityMatrix::diagonal(&[0.7, 0.3]).unwrap();
        let id = MixedUnitaryChannel::identity(2);
        assert_eq!(apply_channel(&id, &rho).unwrap(), rho);

        let ch = MixedUnitaryChannel::new(vec![
            (0.75, ComplexMatrix::identity(2)),
            (0.25, shift_matrix(2)),
        ])
        .unwrap();
        let out = apply_channel(&ch, &rho).unwrap();
        let expect = DensityMatrix::diagonal(&[0.6, 0.4]).unwrap();
        assert!(out.matrix().max_abs_diff(expect.matrix()) < 1e-15);

        assert!(apply_channel(&ch, &DensityMatrix::maximally_mixed(3)).is_err());
    }

    #[test]
    fn channel_validation() {
        assert!(MixedUnitaryChannel::new(vec![]).is_err());
        assert!(MixedUnitaryChannel::new(vec![(0.5, ComplexMatrix::identity(2))]).is_err());
        let not_unitary = ComplexMatrix::identity(2).scale(Complex64::new(2.0, 0.0));
        assert!(matches!(
            MixedUnitaryChannel::new(vec![(1.0, not_unitary)]),
            Err(Error::NotUnitary(_))
        ));
        assert!(MixedUnitaryChannel::new(vec![
            (1.0, ComplexMatrix::identity(2)),
            (0.0, ComplexMatrix::identity(2))
        ])
        .is_err());
    }

    #[test]
    fn twirl_structure() {
        let one = complete_decoherence_channel(1);
        assert_eq!(one.terms().len(), 1);
        assert_eq!(one.terms()[0].unitary, ComplexMatrix::identity(1));

        let two = complete_decoherence_channel(2);
        assert_eq!(two.terms().len(), 4);
        for t in two.terms() {
            assert_eq!(t.weight, 0.25);
        }
        // I, Z, X, XZ
        let z = clock_matrix(2);
        let x = shift_matrix(2);
        let expected = [ComplexMatrix::identity(2), z.clone(), x.clone(), x.matmul(&z)];
        for (t, e) in two.terms().iter().zip(&expected) {
            assert!(t.unitary.max_abs_diff(e) < 1e-15);
        }
        // re-validates as a channel
        let terms = two.terms().iter().map(|t| (t.weight, t.unitary.clone())).collect();
        assert!(MixedUnitaryChannel::new(terms).is_ok());
    }

    #[test]
    fn twirl_depolarizes() {
        let mut rng = Rng::new(17);
        for d in 1..=5 {
            let rho = random_density(d, d, &mut rng);
            let out = apply_channel(&complete_decoherence_channel(d), &rho).unwrap();
            let diff = out.matrix().max_abs_diff(DensityMatrix::maximally_mixed(d).matrix());
            assert!(diff < 1e-10, "dim {d}: {diff:e}");
        }
    }
}
