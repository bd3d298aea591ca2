//! Random states and unitaries for fuzzing.

use num_complex::Complex64;

use super::density::{BipartiteState, DensityMatrix};
use super::matrix::ComplexMatrix;
use super::rng::Rng;

fn complex_gaussian(rng: &mut Rng) -> Complex64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(rng.normal() * s, rng.normal() * s)
}

/// Haar-distributed unitary: QR of a square Ginibre matrix, with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn random_unitary(dim: usize, rng: &mut Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| complex_gaussian(rng));
    let qr = g.to_nalgebra().qr();
    let q = qr.q();
    let r = qr.r();
    let mut u = ComplexMatrix::from_nalgebra(&q);
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..dim {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// `G G† / Tr(G G†)` with `G` a `dim × rank` Ginibre matrix.
pub fn random_density(dim: usize, rank: usize, rng: &mut Rng) -> DensityMatrix {
    assert!(rank >= 1 && rank <= dim, "rank must be in 1..=dim");
    let g: Vec<Complex64> = (0..dim * rank).map(|_| complex_gaussian(rng)).collect();
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..rank {
                acc += g[i * rank + k] * g[j * rank + k].conj();
            }
            m[(i, j)] = acc;
        }
    }
    let tr = m.trace().re;
    DensityMatrix::from_trusted(m.scale(Complex64::new(1.0 / tr, 0.0)))
}

/// Random pure state with a Gaussian (hence Haar) amplitude vector.
pub fn random_pure(dim: usize, rng: &mut Rng) -> DensityMatrix {
    let psi: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
    DensityMatrix::pure(&psi).expect("gaussian vector is nonzero")
}

/// Tensor product of two independent full-rank random states.
pub fn random_product(dim_a: usize, dim_b: usize, rng: &mut Rng) -> BipartiteState {
    let a = random_density(dim_a, dim_a, rng);
    let b = random_density(dim_b, dim_b, rng);
    BipartiteState::product(&a, &b)
}

/// Random state of uniformly chosen rank.
pub fn random_density_any_rank(dim: usize, rng: &mut Rng) -> DensityMatrix {
    let rank = rng.range_inclusive(1, dim);
    random_density(dim, rank, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixlab::entropy::entropy;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = Rng::new(5);
        for d in 1..=8 {
            let u = random_unitary(d, &mut rng);
            assert!(u.unitarity_defect() < 1e-10);
        }
    }

    #[test]
    fn rank_one_is_pure() {
        let mut rng = Rng::new(11);
        let rho = random_density(4, 1, &mut rng);
        assert!(entropy(&rho) < 1e-9);
        assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
    }

    #[test]
    fn seeded_spectra_are_reproducible() {
        let a = random_density(5, 3, &mut Rng::new(42)).spectrum();
        let b = random_density(5, 3, &mut Rng::new(42)).spectrum();
        let bits = |s: &crate::Spectrum| s.probs().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn product_factors() {
        let mut rng = Rng::new(2);
        let s = random_product(2, 3, &mut rng);
        assert_eq!((s.dim_a(), s.dim_b()), (2, 3));
        assert!(DensityMatrix::new(s.state().matrix().clone()).is_ok());
    }

    #[test]
    fn haar_first_column_is_uniform_on_sphere() {
        // E|U_00|^2 = 1/d for Haar unitaries
        let mut rng = Rng::new(99);
        let d = 3;
        let trials = 4000;
        let mean: f64 = (0..trials)
            .map(|_| random_unitary(d, &mut rng)[(0, 0)].norm_sqr())
            .sum::<f64>()
            / trials as f64;
        assert!((mean - 1.0 / d as f64).abs() < 0.02);
    }
}
