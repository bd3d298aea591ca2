//! Distillable total coherence, total coherence cost, and finite-copy rates.
//!
//! Both asymptotic quantities equal `C_R(ρ)`. The finite-`n` oracles below
//! make the limit observable on the type-class spectrum of `ρ^⊗n`:
//!
//! * **distill**: largest `m` such that the `K = ⌊d^n / 2^m⌋` largest
//!   eigenvalues of `ρ^⊗n` carry mass at least `1 − ε`. Projecting onto that
//!   subspace and relabeling yields `m` unit-coherence qubits plus a maximally
//!   mixed `K`-dimensional remainder.
//! * **cost**: smallest `m` such that clipping the spectrum of `ρ^⊗n` at
//!   `t = 2^m / d^n` removes at most `ε` of mass. A clipped spectrum is
//!   majorized by the flat source of height `t`, so a mixed-unitary map reaches
//!   it from `m` unit qubits plus maximally mixed padding.
//!
//! Feasibility is monotone in `m` for both, so `m` is found by bisection.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::coherence::total_coherence;
use crate::error::{Error, Result};
use crate::matrixlab::{tensor_power_spectrum, DensityMatrix, Spectrum, WeightedSpectrum};

/// Relative slack applied to the `1 − ε` and `ε` thresholds.
pub const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RateMode {
    Distill,
    Cost,
}

impl fmt::Display for RateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RateMode::Distill => "distill",
            RateMode::Cost => "cost",
        })
    }
}

impl FromStr for RateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distill" => Ok(RateMode::Distill),
            "cost" => Ok(RateMode::Cost),
            other => Err(Error::InvalidArgument(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateQuery {
    pub base: Spectrum,
    pub n: usize,
    pub epsilon: f64,
    pub mode: RateMode,
}

impl RateQuery {
    pub fn new(base: Spectrum, n: usize, epsilon: f64, mode: RateMode) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if !(epsilon > 0.0 && epsilon <= 0.5) {
            return Err(Error::InvalidArgument(format!("epsilon {epsilon} outside (0, 0.5]")));
        }
        Ok(Self {
            base,
            n,
            epsilon,
            mode,
        })
    }

    fn dim(&self) -> usize {
        self.base.len()
    }

    /// `n log2 d`, exact when `d` is a power of two.
    fn log2_total_dim(&self) -> f64 {
        let d = self.dim();
        if d.is_power_of_two() {
            (self.n as u64 * d.trailing_zeros() as u64) as f64
        } else {
            self.n as f64 * (d as f64).log2()
        }
    }

    /// `log2 ⌊d^n / 2^m⌋`, using exact integers while `d^n` fits in 128 bits.
    fn log2_block_count(&self, m: u64) -> f64 {
        match (self.dim() as u128).checked_pow(self.n as u32) {
            Some(total) if self.n <= u32::MAX as usize => {
                let k = if m >= 128 { 0 } else { total >> m };
                (k as f64).log2()
            }
            _ => self.log2_total_dim() - m as f64,
        }
    }
}

/// The distillable total coherence, `C_R(ρ)`.
pub fn distillable_total_coherence(rho: &DensityMatrix) -> f64 {
    total_coherence(rho)
}

/// The total coherence cost, `C_R(ρ)`.
pub fn total_coherence_cost(rho: &DensityMatrix) -> f64 {
    total_coherence(rho)
}

/// Largest `t` in `[lo, hi]` with `pred(t)`, assuming `pred` is true up to
/// some point and false after. Returns `lo` if nothing holds.
fn last_true(lo: u64, hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Smallest `t` in `[lo, hi]` with `pred(t)`, for `pred` false then true.
/// Returns `hi` if nothing holds.
fn first_true(lo: u64, hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

fn distill_m_on(q: &RateQuery, spectrum: &WeightedSpectrum) -> u64 {
    let max_m = q.log2_total_dim().floor() as u64;
    let target = (1.0 - q.epsilon) * (1.0 - REL_TOL);
    last_true(0, max_m, |m| spectrum.top_mass(q.log2_block_count(m)) >= target)
}

fn cost_m_on(q: &RateQuery, spectrum: &WeightedSpectrum) -> u64 {
    let log2_total = q.log2_total_dim();
    let max_m = log2_total.ceil() as u64;
    let budget = q.epsilon * (1.0 + REL_TOL);
    first_true(0, max_m, |m| spectrum.clip_excess(m as f64 - log2_total) <= budget)
}

/// One-shot distillation: number of unit-coherence qubits extractable from
/// `n` copies within accuracy `ε`.
pub fn one_shot_distill_m(q: &RateQuery) -> Result<u64> {
    let spectrum = tensor_power_spectrum(&q.base, q.n)?;
    Ok(distill_m_on(q, &spectrum))
}

/// One-shot dilution: number of unit-coherence qubits needed to prepare `n`
/// copies within accuracy `ε`.
pub fn one_shot_cost_m(q: &RateQuery) -> Result<u64> {
    let spectrum = tensor_power_spectrum(&q.base, q.n)?;
    Ok(cost_m_on(q, &spectrum))
}

pub fn one_shot_m(q: &RateQuery) -> Result<u64> {
    match q.mode {
        RateMode::Distill => one_shot_distill_m(q),
        RateMode::Cost => one_shot_cost_m(q),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateRow {
    pub n: usize,
    pub m: u64,
    pub rate: f64,
    pub epsilon: f64,
    pub mode: RateMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    pub rows: Vec<RateRow>,
}

/// One row per `n` (sorted, duplicates removed). Rows are computed in
/// parallel; the output does not depend on scheduling.
pub fn rate_sweep(
    base: &Spectrum,
    epsilon: f64,
    n_list: &[usize],
    mode: RateMode,
) -> Result<RateTable> {
    let mut ns = n_list.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let rows = ns
        .par_iter()
        .map(|&n| {
            let q = RateQuery::new(base.clone(), n, epsilon, mode)?;
            let m = one_shot_m(&q)?;
            Ok(RateRow {
                n,
                m,
                rate: m as f64 / n as f64,
                epsilon,
                mode,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn query(p: &[f64], n: usize, eps: f64, mode: RateMode) -> RateQuery {
        RateQuery::new(Spectrum::new(p.to_vec()).unwrap(), n, eps, mode).unwrap()
    }

    #[test]
    fn asymptotic_closed_forms() {
        let pure = DensityMatrix::basis(2, 0);
        assert!((distillable_total_coherence(&pure) - 1.0).abs() < 1e-12);
        assert_eq!(total_coherence_cost(&DensityMatrix::maximally_mixed(3)), 0.0);
        let rho = DensityMatrix::diagonal(&[0.9, 0.1]).unwrap();
        assert!((distillable_total_coherence(&rho) - 0.5310044064).abs() < 1e-10);
        assert_eq!(distillable_total_coherence(&rho), total_coherence_cost(&rho));
    }

    #[test]
    fn distill_examples() {
        for n in [1, 5, 40] {
            assert_eq!(one_shot_distill_m(&query(&[1.0, 0.0], n, 0.01, RateMode::Distill)).unwrap(), n as u64);
        }
        assert_eq!(one_shot_distill_m(&query(&[0.5, 0.5], 10, 0.01, RateMode::Distill)).unwrap(), 0);
        assert_eq!(one_shot_distill_m(&query(&[0.9, 0.1], 1, 0.01, RateMode::Distill)).unwrap(), 0);
    }

    #[test]
    fn cost_examples() {
        assert_eq!(one_shot_cost_m(&query(&[1.0, 0.0], 1, 0.01, RateMode::Cost)).unwrap(), 1);
        for n in [1, 7, 100] {
            assert_eq!(one_shot_cost_m(&query(&[0.5, 0.5], n, 0.01, RateMode::Cost)).unwrap(), 0);
        }
        assert_eq!(one_shot_cost_m(&query(&[0.75, 0.25], 1, 0.3, RateMode::Cost)).unwrap(), 0);
    }

    #[test]
    fn non_power_of_two_dimension() {
        // pure qutrit: K = ⌊3^n/2^m⌋ ≥ 1 allows m = ⌊n log2 3⌋
        let m = one_shot_distill_m(&query(&[1.0, 0.0, 0.0], 5, 0.01, RateMode::Distill)).unwrap();
        assert_eq!(m, 7); // 3^5 = 243, 2^7 = 128
        let m = one_shot_cost_m(&query(&[1.0, 0.0, 0.0], 5, 0.01, RateMode::Cost)).unwrap();
        assert_eq!(m, 8); // t = 2^m / 243 must reach 1
    }

    #[test]
    fn query_validation() {
        let s = Spectrum::new(vec![0.5, 0.5]).unwrap();
        assert!(RateQuery::new(s.clone(), 0, 0.1, RateMode::Cost).is_err());
        assert!(RateQuery::new(s.clone(), 1, 0.0, RateMode::Cost).is_err());
        assert!(RateQuery::new(s, 1, 0.6, RateMode::Cost).is_err());
        assert_eq!("cost".parse::<RateMode>().unwrap(), RateMode::Cost);
        assert!("dilute".parse::<RateMode>().is_err());
    }

    #[test]
    fn sweep_pure_rates_are_one() {
        let t = rate_sweep(&Spectrum::new(vec![1.0, 0.0]).unwrap(), 0.01, &[10, 3, 50, 3], RateMode::Distill).unwrap();
        assert_eq!(t.rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![3, 10, 50]);
        assert!(t.rows.iter().all(|r| r.rate == 1.0));
    }

    #[test]
    fn bisection_helpers() {
        assert_eq!(last_true(0, 10, |x| x <= 7), 7);
        assert_eq!(last_true(0, 10, |_| true), 10);
        assert_eq!(first_true(0, 10, |x| x >= 3), 3);
        assert_eq!(first_true(0, 10, |_| true), 0);
    }
}
