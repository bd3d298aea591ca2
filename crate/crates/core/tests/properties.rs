use proptest::prelude::*;

use total_coherence::asymptotic::{one_shot_m, RateMode, RateQuery};
use total_coherence::cli::files::StateFile;
use total_coherence::cli::fuzz::random_channel;
use total_coherence::coherence::{apply_channel, total_coherence};
use total_coherence::convertibility::{
    birkhoff_decompose, can_convert, doubly_stochastic_from_majorization, majorizes,
    synthesize_channel,
};
use total_coherence::correlation::subadditivity_slack;
use total_coherence::{
    entropy, partial_trace, random_density_any_rank, random_product, random_unitary,
    relative_entropy, tensor, tensor_power_spectrum, trace_norm_distance, von_neumann_entropy,
    BipartiteState, DensityMatrix, Keep, Rng, Spectrum,
};

const TOL: f64 = 1e-9;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 96,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x7c0),
        ..ProptestConfig::default()
    }
}

/// `σ` whose spectrum is `ρ`'s smoothed by a random T-transform mixture, in a
/// random basis; always reachable from `ρ`.
fn smoothed(rho: &DensityMatrix, rng: &mut Rng) -> DensityMatrix {
    let mut p = rho.spectrum().probs().to_vec();
    let d = p.len();
    for _ in 0..rng.range_inclusive(1, 4) {
        let i = rng.below(d as u64) as usize;
        let j = rng.below(d as u64) as usize;
        let t = rng.uniform();
        let (a, b) = (p[i], p[j]);
        p[i] = t * a + (1.0 - t) * b;
        p[j] = t * b + (1.0 - t) * a;
    }
    DensityMatrix::diagonal(&p).unwrap().conjugated(&random_unitary(d, rng)).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn coherence_within_bounds(seed: u64, dim in 1usize..=8) {
        let rho = random_density_any_rank(dim, &mut Rng::new(seed));
        let c = total_coherence(&rho);
        prop_assert!(c >= 0.0 && c <= (dim as f64).log2() + 1e-12);
        prop_assert!((c + entropy(&rho) - (dim as f64).log2()).abs() < 1e-12);
    }

    #[test]
    fn coherence_is_relative_entropy_to_maximally_mixed(seed: u64, dim in 1usize..=6) {
        let rho = random_density_any_rank(dim, &mut Rng::new(seed));
        let d = relative_entropy(&rho, &DensityMatrix::maximally_mixed(dim)).unwrap();
        prop_assert!((d - total_coherence(&rho)).abs() < 1e-9);
    }

    #[test]
    fn relative_entropy_nonnegative(seed: u64, dim in 1usize..=5) {
        let mut rng = Rng::new(seed);
        let rho = random_density_any_rank(dim, &mut rng);
        let sigma = random_density_any_rank(dim, &mut rng);
        prop_assert!(relative_entropy(&rho, &sigma).unwrap() >= 0.0);
        prop_assert!(relative_entropy(&rho, &rho).unwrap() < 1e-9);
    }

    #[test]
    fn unitary_invariance(seed: u64, dim in 1usize..=8) {
        let mut rng = Rng::new(seed);
        let rho = random_density_any_rank(dim, &mut rng);
        let moved = rho.conjugated(&random_unitary(dim, &mut rng)).unwrap();
        prop_assert!((total_coherence(&rho) - total_coherence(&moved)).abs() < TOL);
    }

    #[test]
    fn monotone_under_mixed_unitary(seed: u64, dim in 1usize..=6) {
        let mut rng = Rng::new(seed);
        let rho = random_density_any_rank(dim, &mut rng);
        let ch = random_channel(dim, &mut rng);
        let out = apply_channel(&ch, &rho).unwrap();
        prop_assert!(total_coherence(&out) <= total_coherence(&rho) + TOL);
    }

    #[test]
    fn monotone_on_average_over_outcomes(seed: u64, dim in 1usize..=6) {
        let mut rng = Rng::new(seed);
        let rho = random_density_any_rank(dim, &mut rng);
        let ch = random_channel(dim, &mut rng);
        let avg: f64 = ch.outcomes(&rho).unwrap().iter().map(|(p, s)| p * total_coherence(s)).sum();
        // each branch is a unitary image, so the average equals the input exactly
        prop_assert!((avg - total_coherence(&rho)).abs() < TOL);
    }

    #[test]
    fn convex(seed: u64, dim in 1usize..=6, k in 2usize..=5) {
        let mut rng = Rng::new(seed);
        let weights = rng.dirichlet_uniform(k);
        let parts: Vec<(f64, DensityMatrix)> =
            weights.into_iter().map(|w| (w, random_density_any_rank(dim, &mut rng))).collect();
        let mix = DensityMatrix::mixture(&parts).unwrap();
        let rhs: f64 = parts.iter().map(|(w, r)| w * total_coherence(r)).sum();
        prop_assert!(total_coherence(&mix) <= rhs + TOL);
    }

    #[test]
    fn additive_on_products(seed: u64, da in 1usize..=4, db in 1usize..=4) {
        let mut rng = Rng::new(seed);
        let a = random_density_any_rank(da, &mut rng);
        let b = random_density_any_rank(db, &mut rng);
        let ab = tensor(&a, &b);
        prop_assert!((total_coherence(&ab) - total_coherence(&a) - total_coherence(&b)).abs() < TOL);
    }

    #[test]
    fn partial_trace_of_product(seed: u64, da in 1usize..=4, db in 1usize..=4) {
        let s = random_product(da, db, &mut Rng::new(seed));
        let a = partial_trace(&s, Keep::A);
        let b = partial_trace(&s, Keep::B);
        let again = tensor(&a, &b);
        prop_assert!(s.state().matrix().max_abs_diff(again.matrix()) < 1e-12);
        prop_assert!(subadditivity_slack(&s).abs() < TOL);
    }

    #[test]
    fn coherence_subadditive(seed: u64, da in 1usize..=4, db in 1usize..=4) {
        let s = BipartiteState::new(da, db, random_density_any_rank(da * db, &mut Rng::new(seed))).unwrap();
        prop_assert!(subadditivity_slack(&s) >= -TOL);
    }

    #[test]
    fn data_processing(seed: u64, dim in 1usize..=4) {
        let mut rng = Rng::new(seed);
        let rho = random_density_any_rank(dim, &mut rng);
        let sigma = random_density_any_rank(dim, &mut rng);
        let ch = random_channel(dim, &mut rng);
        let before = relative_entropy(&rho, &sigma).unwrap();
        let after = relative_entropy(&apply_channel(&ch, &rho).unwrap(), &apply_channel(&ch, &sigma).unwrap()).unwrap();
        prop_assert!(before.is_infinite() || after <= before + TOL);
    }

    #[test]
    fn majorization_is_transitive(seed: u64, dim in 1usize..=8) {
        let mut rng = Rng::new(seed);
        let a = random_density_any_rank(dim, &mut rng);
        let b = smoothed(&a, &mut rng);
        let c = smoothed(&b, &mut rng);
        prop_assert!(majorizes(&a.spectrum(), &b.spectrum()));
        prop_assert!(majorizes(&b.spectrum(), &c.spectrum()));
        prop_assert!(majorizes(&a.spectrum(), &c.spectrum()));
        prop_assert!(majorizes(&a.spectrum(), &Spectrum::uniform(dim)));
    }

    #[test]
    fn synthesized_channel_reaches_target(seed: u64, dim in 1usize..=8) {
        let mut rng = Rng::new(seed);
        let rho = random_density_any_rank(dim, &mut rng);
        let sigma = smoothed(&rho, &mut rng);
        prop_assert!(can_convert(&rho, &sigma).unwrap());
        let ch = synthesize_channel(&rho, &sigma).unwrap();
        let err = trace_norm_distance(&apply_channel(&ch, &rho).unwrap(), &sigma).unwrap();
        prop_assert!(err <= 1e-8, "error {err}");
    }

    #[test]
    fn birkhoff_reconstructs(seed: u64, dim in 1usize..=8) {
        let mut rng = Rng::new(seed);
        let rho = random_density_any_rank(dim, &mut rng);
        let sigma = smoothed(&rho, &mut rng);
        let d = doubly_stochastic_from_majorization(&rho.spectrum(), &sigma.spectrum()).unwrap();
        let b = birkhoff_decompose(&d).unwrap();
        prop_assert!(b.terms.len() <= (dim - 1) * (dim - 1) + 1);
        let total: f64 = b.terms.iter().map(|t| t.weight).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let back = b.reconstruct(dim);
        let worst = back.iter().zip(d.entries()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        prop_assert!(worst < 1e-9);
    }

    #[test]
    fn tensor_power_weight_and_entropy(seed: u64, dim in 1usize..=4, n in 1usize..=40) {
        let rho = random_density_any_rank(dim, &mut Rng::new(seed));
        let base = rho.spectrum();
        let w = tensor_power_spectrum(&base, n).unwrap();
        prop_assert!((w.total_weight() - 1.0).abs() < 1e-9);
        prop_assert!((w.entropy() - n as f64 * von_neumann_entropy(&base)).abs() < 1e-8 * n as f64);
    }

    #[test]
    fn rates_bounded_and_monotone_in_eps(seed: u64, n in 1usize..=120, eps_idx in 0usize..4) {
        let base = random_density_any_rank(2, &mut Rng::new(seed)).spectrum();
        let eps = [0.01, 0.05, 0.1, 0.3];
        let rate = |e: f64, mode| {
            let q = RateQuery::new(base.clone(), n, e, mode).unwrap();
            one_shot_m(&q).unwrap() as f64 / n as f64
        };
        let (e0, e1) = (eps[eps_idx], eps[(eps_idx + 1).min(3)]);
        for mode in [RateMode::Distill, RateMode::Cost] {
            let r = rate(e0, mode);
            prop_assert!((0.0..=1.0).contains(&r));
        }
        // more slack: distill at least as much, cost at most as much
        prop_assert!(rate(e1, RateMode::Distill) >= rate(e0, RateMode::Distill));
        prop_assert!(rate(e1, RateMode::Cost) <= rate(e0, RateMode::Cost));
    }

    #[test]
    fn state_file_roundtrip_is_exact(seed: u64, dim in 1usize..=6) {
        let rho = random_density_any_rank(dim, &mut Rng::new(seed));
        let text = StateFile::from_state(&rho, None).to_json();
        let back = StateFile::parse(&text).unwrap().to_state().unwrap();
        prop_assert_eq!(back, rho);
    }
}

#[test]
fn rates_monotone_in_copies_for_pure_and_flat() {
    for n in [1, 2, 5, 17, 64] {
        let pure = RateQuery::new(Spectrum::new(vec![1.0, 0.0]).unwrap(), n, 0.01, RateMode::Distill).unwrap();
        assert_eq!(one_shot_m(&pure).unwrap(), n as u64);
        let flat = RateQuery::new(Spectrum::uniform(2), n, 0.01, RateMode::Cost).unwrap();
        assert_eq!(one_shot_m(&flat).unwrap(), 0);
    }
}
