//! Checks against independently computed values: brute-force enumeration of
//! tensor-power spectra and reference constants computed outside this crate.

use approx::assert_abs_diff_eq;

use total_coherence::asymptotic::{one_shot_m, RateMode, RateQuery};
use total_coherence::coherence::total_coherence;
use total_coherence::correlation::{concurrence, mixed_entanglement_bound_2x2};
use total_coherence::{binary_entropy, BipartiteState, DensityMatrix, Spectrum};

/// All `d^n` eigenvalues of `diag(p)^⊗n`, descending.
fn brute_spectrum(p: &[f64], n: u32) -> Vec<f64> {
    let mut vals = vec![1.0];
    for _ in 0..n {
        vals = vals.iter().flat_map(|v| p.iter().map(move |x| v * x)).collect();
    }
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

fn brute_distill(p: &[f64], n: u32, eps: f64) -> u64 {
    let vals = brute_spectrum(p, n);
    let total = vals.len() as u64;
    let mut best = 0;
    for m in 0..64 {
        let k = (total >> m) as usize;
        if k == 0 {
            break;
        }
        let mass: f64 = vals[..k].iter().sum();
        if mass >= (1.0 - eps) * (1.0 - 1e-9) {
            best = m;
        }
    }
    best
}

fn brute_cost(p: &[f64], n: u32, eps: f64) -> u64 {
    let vals = brute_spectrum(p, n);
    let total = vals.len() as f64;
    (0..64)
        .find(|&m| {
            let t = 2f64.powi(m as i32) / total;
            let excess: f64 = vals.iter().map(|v| (v - t).max(0.0)).sum();
            excess <= eps * (1.0 + 1e-9)
        })
        .unwrap()
}

#[test]
fn rates_match_brute_force_enumeration() {
    let bases: [&[f64]; 5] = [
        &[0.9, 0.1],
        &[0.75, 0.25],
        &[0.6, 0.3, 0.1],
        &[0.5, 0.25, 0.125, 0.125],
        &[0.97, 0.02, 0.01],
    ];
    for p in bases {
        let max_n = if p.len() == 2 { 16 } else { 8 };
        for n in 1..=max_n {
            for eps in [0.01, 0.1, 0.25] {
                let spec = Spectrum::new(p.to_vec()).unwrap();
                let d = RateQuery::new(spec.clone(), n as usize, eps, RateMode::Distill).unwrap();
                let c = RateQuery::new(spec, n as usize, eps, RateMode::Cost).unwrap();
                assert_eq!(one_shot_m(&d).unwrap(), brute_distill(p, n, eps), "distill {p:?} n={n} eps={eps}");
                assert_eq!(one_shot_m(&c).unwrap(), brute_cost(p, n, eps), "cost {p:?} n={n} eps={eps}");
            }
        }
    }
}

// Reference values from an independent float64 evaluation of -Σ p log2 p.
#[test]
fn reference_constants() {
    let c = |p: &[f64]| total_coherence(&DensityMatrix::diagonal(p).unwrap());
    assert_abs_diff_eq!(c(&[0.75, 0.25]), 0.1887218755408671, epsilon = 1e-12);
    assert_abs_diff_eq!(c(&[0.9, 0.1]), 0.5310044064107188, epsilon = 1e-12);
    assert_abs_diff_eq!(c(&[0.5, 0.3, 0.2]), 0.09948720349382167, epsilon = 1e-12);
    assert_abs_diff_eq!(binary_entropy(0.2), 0.7219280948873623, epsilon = 1e-12);
}

// Werner states: concurrence max(0, (3p - 1)/2), reduced states maximally mixed.
#[test]
fn werner_concurrence_closed_form() {
    let bell = BipartiteState::maximally_entangled(2);
    for k in 0..=20 {
        let p = k as f64 / 20.0;
        let w = DensityMatrix::mixture(&[(p, bell.state().clone()), (1.0 - p, DensityMatrix::maximally_mixed(4))]).unwrap();
        let s = BipartiteState::new(2, 2, w).unwrap();
        let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
        assert_abs_diff_eq!(concurrence(&s).unwrap(), expected, epsilon = 1e-9);
        let (eof, bound) = mixed_entanglement_bound_2x2(&s).unwrap();
        let x = (1.0 + (1.0 - expected * expected).sqrt()) / 2.0;
        assert_abs_diff_eq!(eof, binary_entropy(x), epsilon = 1e-9);
        assert_abs_diff_eq!(bound, 1.0, epsilon = 1e-12);
    }
}
