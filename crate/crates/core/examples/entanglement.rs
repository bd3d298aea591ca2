//! Entanglement versus local coherence deficit.
//!
//! For pure bipartite states the entanglement entropy equals
//! `log2 dA − C_R(ρ_A)`; for two-qubit mixed states the entanglement of
//! formation stays below `1 − C_R(ρ_A)`.
//!
//! ```bash
//! cargo run --example entanglement
//! ```

use total_coherence::correlation::{concurrence, mixed_entanglement_bound_2x2, pure_entanglement_gap};
use total_coherence::{random_pure, BipartiteState, DensityMatrix, Rng};

fn main() -> total_coherence::Result<()> {
    let mut rng = Rng::new(5);
    println!("pure states (2 x 3):");
    for _ in 0..3 {
        let psi = BipartiteState::new(2, 3, random_pure(6, &mut rng))?;
        let (e, gap) = pure_entanglement_gap(&psi)?;
        println!("  E = {e:.9}  log2 dA - C_R(rho_A) = {gap:.9}");
    }

    println!("\nWerner states p |Phi+><Phi+| + (1 - p) I/4:");
    let bell = BipartiteState::maximally_entangled(2);
    for p in [0.2, 0.5, 0.8, 1.0] {
        let w = DensityMatrix::mixture(&[
            (p, bell.state().clone()),
            (1.0 - p, DensityMatrix::maximally_mixed(4)),
        ])?;
        let s = BipartiteState::new(2, 2, w)?;
        let (eof, bound) = mixed_entanglement_bound_2x2(&s)?;
        println!("  p = {p:.1}  concurrence = {:.4}  EoF = {eof:.4}  bound = {bound:.4}", concurrence(&s)?);
    }
    Ok(())
}
