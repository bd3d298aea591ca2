//! Turning local coherence into correlation with a maximally mixed ancilla.
//!
//! ```bash
//! cargo run --example correlate
//! ```

use total_coherence::correlation::coherence_to_correlation;
use total_coherence::{random_density, Rng};

fn main() -> total_coherence::Result<()> {
    let mut rng = Rng::new(3);
    let rho = random_density(3, 2, &mut rng);

    for m in [2, 3, 5] {
        let r = coherence_to_correlation(&rho, m)?;
        println!(
            "m = {m}: C_R = {:.6}  I(S:A) = {:.6}  slack = {:.1e}  |rho_S - I/n| = {:.1e}  saturated = {}",
            r.input_coherence,
            r.output_mutual_information,
            r.equality_slack,
            r.reduced_s_distance,
            r.saturated()
        );
    }
    Ok(())
}
