//! Single-copy convertibility under mixed-unitary channels.
//!
//! `ρ → σ` is possible iff `spec(ρ) ≻ spec(σ)`. When it is, the channel is
//! built explicitly: a chain of T-transforms gives a doubly stochastic `D` with
//! `q = D p`, a greedy Birkhoff decomposition writes `D = Σ w_k P_k`, and the
//! eigenbases lift each permutation to the unitary `V_σ P_k V_ρ†`.

use crate::coherence::{apply_channel, MixedUnitaryChannel};
use crate::error::{Error, Result};
use crate::matrixlab::{trace_norm_distance, ComplexMatrix, DensityMatrix, Spectrum};

/// Slack on majorization partial sums.
pub const MAJORIZATION_TOL: f64 = 1e-10;
/// Allowed difference between the totals of two compared vectors.
pub const TOTAL_TOL: f64 = 1e-9;
/// Birkhoff extraction stops once this much mass remains.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Entries at or below this are treated as structural zeros during extraction.
const ENTRY_ZERO: f64 = 1e-14;
/// A synthesized channel must reproduce the target to this trace-norm error.
pub const SYNTHESIS_TOL: f64 = 1e-8;

/// `p ≻ q`: every prefix sum of `p` dominates that of `q`, totals equal.
/// The shorter vector is zero-padded.
pub fn majorizes(p: &Spectrum, q: &Spectrum) -> bool {
    let len = p.len().max(q.len());
    let (p, q) = (p.padded(len), q.padded(len));
    if (p.total() - q.total()).abs() > TOTAL_TOL {
        return false;
    }
    let (mut sp, mut sq) = (0.0, 0.0);
    for (a, b) in p.probs().iter().zip(q.probs()) {
        sp += a;
        sq += b;
        if sp < sq - MAJORIZATION_TOL {
            return false;
        }
    }
    true
}

/// Whether some mixed-unitary channel maps `rho` to `sigma`.
pub fn can_convert(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<bool> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    Ok(majorizes(&rho.spectrum(), &sigma.spectrum()))
}

/// Real square matrix with unit row and column sums.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublyStochasticMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl DoublyStochasticMatrix {
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::InvalidDimension(format!(
                "{} entries for dim {dim}",
                entries.len()
            )));
        }
        if let Some(neg) = entries.iter().find(|&&x| x < -1e-12 || !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("entry {neg} is negative")));
        }
        let m = Self { dim, entries };
        for i in 0..dim {
            let row: f64 = (0..dim).map(|j| m.get(i, j)).sum();
            let col: f64 = (0..dim).map(|j| m.get(j, i)).sum();
            if (row - 1.0).abs() > 1e-9 || (col - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidArgument(format!(
                    "row/column {i} sums to {row}/{col}"
                )));
            }
        }
        Ok(m)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `D x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Left-multiplies by the T-transform `λ I + (1 − λ) Q_{jk}`.
    fn apply_t_transform(&mut self, j: usize, k: usize, lambda: f64) {
        let n = self.dim;
        for c in 0..n {
            let (a, b) = (self.entries[j * n + c], self.entries[k * n + c]);
            self.entries[j * n + c] = lambda * a + (1.0 - lambda) * b;
            self.entries[k * n + c] = lambda * b + (1.0 - lambda) * a;
        }
    }
}

/// Doubly stochastic `D` with `q = D p`, as a product of at most `dim − 1`
/// T-transforms.
///
/// Each step takes the largest index `j` with `x_j > q_j` and the first
/// `k > j` with `x_k < q_k`, then moves `δ = min(x_j − q_j, q_k − x_k)` from
/// `j` to `k`. One coordinate is fixed per step and `x` stays sorted.
pub fn doubly_stochastic_from_majorization(
    p: &Spectrum,
    q: &Spectrum,
) -> Result<DoublyStochasticMatrix> {
    if !majorizes(p, q) {
        return Err(Error::NotMajorized);
    }
    let len = p.len().max(q.len());
    let mut x = p.padded(len).probs().to_vec();
    let y = q.padded(len).probs().to_vec();
    let mut d = DoublyStochasticMatrix::identity(len);

    for _ in 0..len {
        let Some(j) = (0..len).rev().find(|&i| x[i] > y[i] + ENTRY_ZERO) else {
            break;
        };
        let Some(k) = (j + 1..len).find(|&i| x[i] < y[i] - ENTRY_ZERO) else {
            break;
        };
        let excess = x[j] - y[j];
        let deficit = y[k] - x[k];
        let delta = excess.min(deficit);
        let lambda = 1.0 - delta / (x[j] - x[k]);
        d.apply_t_transform(j, k, lambda);
        if excess <= deficit {
            x[j] = y[j];
            x[k] += delta;
        } else {
            x[k] = y[k];
            x[j] -= delta;
        }
    }

    let image = d.apply(p.padded(len).probs());
    let err = image
        .iter()
        .zip(&y)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if err > TOTAL_TOL {
        return Err(Error::Degenerate(format!("D p misses q by {err:e}")));
    }
    Ok(d)
}

/// `D ≈ Σ w_k P_k`; `permutation[i]` is the column of the 1 in row `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffTerm {
    pub weight: f64,
    pub permutation: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BirkhoffDecomposition {
    pub terms: Vec<BirkhoffTerm>,
}

impl BirkhoffDecomposition {
    /// `Σ w_k P_k` as a dense row-major matrix.
    pub fn reconstruct(&self, dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim * dim];
        for t in &self.terms {
            for (i, &j) in t.permutation.iter().enumerate() {
                out[i * dim + j] += t.weight;
            }
        }
        out
    }
}

/// Perfect matching of rows to columns using only edges accepted by `allowed`
/// (Kuhn's augmenting paths). Returns `row → column`.
fn perfect_matching(dim: usize, allowed: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    fn augment(
        row: usize,
        dim: usize,
        allowed: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for col in 0..dim {
            if seen[col] || !allowed(row, col) {
                continue;
            }
            seen[col] = true;
            if col_owner[col].is_none_or(|r| augment(r, dim, allowed, seen, col_owner)) {
                col_owner[col] = Some(row);
                return true;
            }
        }
        false
    }

    let mut col_owner = vec![None; dim];
    for row in 0..dim {
        let mut seen = vec![false; dim];
        if !augment(row, dim, &allowed, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut perm = vec![0; dim];
    for (col, owner) in col_owner.iter().enumerate() {
        perm[owner.expect("perfect matching")] = col;
    }
    Some(perm)
}

/// Greedy Birkhoff–von Neumann decomposition.
///
/// Each round takes the perfect matching whose smallest entry is largest
/// (bisection over entry values), records it with that smallest entry as
/// weight, and subtracts. Weights are renormalized at the end.
pub fn birkhoff_decompose(d: &DoublyStochasticMatrix) -> Result<BirkhoffDecomposition> {
    let n = d.dim();
    let mut residual: Vec<f64> = d.entries().iter().map(|&x| x.max(0.0)).collect();
    let mut terms = Vec::new();
    let max_rounds = n * n + 1;

    for _ in 0..max_rounds {
        let mass: f64 = residual.iter().sum::<f64>() / n as f64;
        if mass < RESIDUAL_TOL {
            break;
        }
        let mut levels: Vec<f64> = residual.iter().copied().filter(|&x| x > ENTRY_ZERO).collect();
        levels.sort_by(|a, b| b.total_cmp(a));
        levels.dedup();

        let find = |tau: f64| perfect_matching(n, |i, j| residual[i * n + j] >= tau);
        // Smallest level always admits the most edges; if it fails nothing will.
        let Some(mut best) = levels.last().and_then(|&tau| find(tau)) else {
            return Err(Error::Degenerate(format!(
                "no perfect matching with residual mass {mass:e}"
            )));
        };
        // Largest level index that still admits a matching: bisect on levels[lo..=hi].
        let (mut lo, mut hi) = (0usize, levels.len() - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match find(levels[mid]) {
                Some(perm) => {
                    best = perm;
                    hi = mid;
                }
                None => lo = mid + 1,
            }
        }

        let weight = best
            .iter()
            .enumerate()
            .map(|(i, &j)| residual[i * n + j])
            .fold(f64::INFINITY, f64::min);
        for (i, &j) in best.iter().enumerate() {
            let e = &mut residual[i * n + j];
            *e -= weight;
            if *e <= ENTRY_ZERO {
                *e = 0.0;
            }
        }
        terms.push(BirkhoffTerm {
            weight,
            permutation: best,
        });
    }

    let leftover: f64 = residual.iter().sum::<f64>() / n as f64;
    if leftover >= RESIDUAL_TOL {
        return Err(Error::Degenerate(format!(
            "extraction did not converge, residual {leftover:e}"
        )));
    }
    let total: f64 = terms.iter().map(|t| t.weight).sum();
    for t in terms.iter_mut() {
        t.weight /= total;
    }
    Ok(BirkhoffDecomposition { terms })
}

/// Explicit mixed-unitary channel taking `rho` to `sigma`.
///
/// Fails with [`Error::NotMajorized`] when no such channel exists, and with
/// [`Error::Degenerate`] if the constructed channel misses `sigma` by more than
/// [`SYNTHESIS_TOL`] in trace norm.
pub fn synthesize_channel(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<MixedUnitaryChannel> {
    if !can_convert(rho, sigma)? {
        return Err(Error::NotMajorized);
    }
    let er = rho.eigen();
    let es = sigma.eigen();
    let p = Spectrum::clamped(er.values.clone());
    let q = Spectrum::clamped(es.values.clone());
    let d = doubly_stochastic_from_majorization(&p, &q)?;
    let bvn = birkhoff_decompose(&d)?;

    let v_rho_dag = er.vectors.adjoint();
    let terms = bvn
        .terms
        .iter()
        .map(|t| {
            let p_k = ComplexMatrix::from_permutation(&t.permutation);
            (t.weight, es.vectors.matmul(&p_k).matmul(&v_rho_dag))
        })
        .collect();
    let channel = MixedUnitaryChannel::new(terms)?;

    let err = trace_norm_distance(&apply_channel(&channel, rho)?, sigma)?;
    if err > SYNTHESIS_TOL {
        return Err(Error::Degenerate(format!(
            "synthesized channel misses target by {err:e}"
        )));
    }
    Ok(channel)
}
