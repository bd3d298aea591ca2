//! Seeded invariant suites.
//!
//! Every trial draws from its own stream `Rng::new(seed).split(trial)`, so any
//! failing trial can be replayed alone and the report does not depend on how
//! trials were scheduled across threads.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::coherence::{apply_channel, total_coherence, MixedUnitaryChannel};
use crate::correlation::{
    correlation_bound_fuzz, mixed_entanglement_bound_2x2, residual_coherence_identity,
    strong_subadditivity_slack, subadditivity_slack, TripartiteState,
};
use crate::matrixlab::{
    random_density, random_density_any_rank, random_unitary, relative_entropy, BipartiteState,
    ComplexMatrix, DensityMatrix, Rng,
};

/// Slack below `-FUZZ_TOL` counts as a violation.
pub const FUZZ_TOL: f64 = 1e-9;
pub const MAX_CHANNEL_TERMS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Coherence never increases under a mixed-unitary channel.
    Monotone,
    /// Relative entropy contracts under a mixed-unitary channel.
    Dpi,
    /// `I(Φ[ρ ⊗ I/m]) ≤ C_R(ρ)` for mixed-unitary `Φ` on the composite.
    Bound11,
    /// Strong subadditivity of coherence on three qubits.
    Ssa,
    /// `I(A:B) = C_R(AB) − C_R(A) − C_R(B)`, plus the subadditivity corollary.
    Identity14,
    /// Entanglement of formation of two qubits is at most `S(ρ_A)`.
    Eof16,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Monotone,
        Suite::Dpi,
        Suite::Bound11,
        Suite::Ssa,
        Suite::Identity14,
        Suite::Eof16,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Monotone => "monotone",
            Suite::Dpi => "dpi",
            Suite::Bound11 => "bound11",
            Suite::Ssa => "ssa",
            Suite::Identity14 => "identity14",
            Suite::Eof16 => "eof16",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzFailure {
    pub trial: u64,
    pub seed: u64,
    pub digest: String,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzReport {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub tolerance: f64,
    pub failures: Vec<FuzzFailure>,
    pub worst_slack: f64,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Result of one trial: the slack and the inputs it was computed from.
struct Trial {
    slack: f64,
    inputs: Vec<ComplexMatrix>,
}

fn digest(inputs: &[ComplexMatrix]) -> String {
    let mut h = Sha256::new();
    for m in inputs {
        h.update((m.dim() as u64).to_le_bytes());
        for z in m.entries() {
            h.update(z.re.to_le_bytes());
            h.update(z.im.to_le_bytes());
        }
    }
    h.finalize()
        .iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Random mixed-unitary channel with 1..=`MAX_CHANNEL_TERMS` Haar terms.
pub fn random_channel(dim: usize, rng: &mut Rng) -> MixedUnitaryChannel {
    let k = rng.range_inclusive(1, MAX_CHANNEL_TERMS);
    let weights = rng.dirichlet_uniform(k);
    let terms = weights
        .into_iter()
        .map(|w| (w, random_unitary(dim, rng)))
        .collect();
    MixedUnitaryChannel::new(terms).expect("Haar unitaries with Dirichlet weights")
}

fn channel_inputs(ch: &MixedUnitaryChannel) -> impl Iterator<Item = ComplexMatrix> + '_ {
    ch.terms().iter().map(|t| t.unitary.clone())
}

fn trial_monotone(rng: &mut Rng) -> Trial {
    let dim = rng.range_inclusive(2, 8);
    let rho = random_density_any_rank(dim, rng);
    let ch = random_channel(dim, rng);
    let out = apply_channel(&ch, &rho).expect("dims match");
    let mut inputs = vec![rho.matrix().clone()];
    inputs.extend(channel_inputs(&ch));
    Trial {
        slack: total_coherence(&rho) - total_coherence(&out),
        inputs,
    }
}

fn trial_dpi(rng: &mut Rng) -> Trial {
    let dim = rng.range_inclusive(2, 4);
    let rho = random_density_any_rank(dim, rng);
    let sigma = random_density(dim, dim, rng);
    let ch = random_channel(dim, rng);
    let before = relative_entropy(&rho, &sigma).expect("dims match");
    let after = relative_entropy(
        &apply_channel(&ch, &rho).expect("dims match"),
        &apply_channel(&ch, &sigma).expect("dims match"),
    )
    .expect("dims match");
    let slack = if before.is_infinite() { f64::INFINITY } else { before - after };
    let mut inputs = vec![rho.matrix().clone(), sigma.matrix().clone()];
    inputs.extend(channel_inputs(&ch));
    Trial { slack, inputs }
}

fn trial_bound11(rng: &mut Rng) -> Trial {
    let n = rng.range_inclusive(2, 4);
    let m = rng.range_inclusive(2, 4);
    let rho = random_density_any_rank(n, rng);
    let ch = random_channel(n * m, rng);
    let slack = correlation_bound_fuzz(&rho, m, &ch).expect("dims match");
    let mut inputs = vec![rho.matrix().clone()];
    inputs.extend(channel_inputs(&ch));
    Trial { slack, inputs }
}

fn trial_ssa(rng: &mut Rng) -> Trial {
    let rho = random_density_any_rank(8, rng);
    let t = TripartiteState::new([2, 2, 2], rho).expect("2x2x2");
    Trial {
        slack: strong_subadditivity_slack(&t),
        inputs: vec![t.state().matrix().clone()],
    }
}

fn trial_identity14(rng: &mut Rng) -> Trial {
    let da = rng.range_inclusive(2, 4);
    let db = rng.range_inclusive(2, 4);
    let s = BipartiteState::new(da, db, random_density_any_rank(da * db, rng)).expect("factored");
    let (lhs, rhs) = residual_coherence_identity(&s);
    Trial {
        slack: (-(lhs - rhs).abs()).min(subadditivity_slack(&s)),
        inputs: vec![s.state().matrix().clone()],
    }
}

/// Werner-type state under random local unitaries, or a generic random state.
pub fn random_two_qubit_state(rng: &mut Rng) -> DensityMatrix {
    if rng.uniform() < 0.5 {
        let p = rng.uniform();
        let bell = BipartiteState::maximally_entangled(2);
        let werner = DensityMatrix::mixture(&[
            (p, bell.state().clone()),
            (1.0 - p, DensityMatrix::maximally_mixed(4)),
        ])
        .expect("convex weights");
        let local = random_unitary(2, rng).kron(&random_unitary(2, rng));
        werner.conjugated(&local).expect("dim 4")
    } else {
        random_density_any_rank(4, rng)
    }
}

fn trial_eof16(rng: &mut Rng) -> Trial {
    let s = BipartiteState::new(2, 2, random_two_qubit_state(rng)).expect("2x2");
    let (eof, bound) = mixed_entanglement_bound_2x2(&s).expect("2x2");
    Trial {
        slack: bound - eof,
        inputs: vec![s.state().matrix().clone()],
    }
}

fn run_trial(suite: Suite, rng: &mut Rng) -> Trial {
    match suite {
        Suite::Monotone => trial_monotone(rng),
        Suite::Dpi => trial_dpi(rng),
        Suite::Bound11 => trial_bound11(rng),
        Suite::Ssa => trial_ssa(rng),
        Suite::Identity14 => trial_identity14(rng),
        Suite::Eof16 => trial_eof16(rng),
    }
}

/// Runs `trials` independent trials of `suite` from master `seed`.
pub fn run_suite(suite: Suite, trials: u64, seed: u64) -> FuzzReport {
    let master = Rng::new(seed);
    let results: Vec<(u64, u64, Trial)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = master.split(i);
            let trial_seed = rng.seed();
            (i, trial_seed, run_trial(suite, &mut rng))
        })
        .collect();

    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for (trial, trial_seed, t) in &results {
        worst = worst.min(t.slack);
        if t.slack < -FUZZ_TOL || t.slack.is_nan() {
            failures.push(FuzzFailure {
                trial: *trial,
                seed: *trial_seed,
                digest: digest(&t.inputs),
                slack: t.slack,
            });
        }
    }
    FuzzReport {
        suite: suite.name().into(),
        seed,
        trials,
        tolerance: FUZZ_TOL,
        failures,
        worst_slack: worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass_and_repeat() {
        for s in Suite::ALL {
            let a = run_suite(s, 25, 7);
            assert!(a.passed(), "{s}: {:?}", a.failures);
            assert_eq!(a.to_json(), run_suite(s, 25, 7).to_json());
        }
    }

    #[test]
    fn digest_is_stable() {
        let m = ComplexMatrix::identity(2);
        assert_eq!(digest(std::slice::from_ref(&m)), digest(&[m]));
        assert_eq!(digest(&[ComplexMatrix::identity(2)]).len(), 16);
    }
}
