//! Single-copy convertibility: majorization check, doubly stochastic map,
//! Birkhoff decomposition, and the resulting mixed-unitary channel.
//!
//! ```bash
//! cargo run --example convert
//! ```

use total_coherence::coherence::{apply_channel, total_coherence};
use total_coherence::convertibility::{
    birkhoff_decompose, can_convert, doubly_stochastic_from_majorization, synthesize_channel,
};
use total_coherence::{random_unitary, trace_norm_distance, DensityMatrix, Rng};

fn main() -> total_coherence::Result<()> {
    let mut rng = Rng::new(11);
    let rho = DensityMatrix::diagonal(&[0.6, 0.3, 0.1])?.conjugated(&random_unitary(3, &mut rng))?;
    let sigma = DensityMatrix::diagonal(&[0.4, 0.35, 0.25])?.conjugated(&random_unitary(3, &mut rng))?;

    println!("C_R(rho)   = {:.6}", total_coherence(&rho));
    println!("C_R(sigma) = {:.6}", total_coherence(&sigma));
    println!("rho -> sigma: {}", can_convert(&rho, &sigma)?);
    println!("sigma -> rho: {}", can_convert(&sigma, &rho)?);

    let d = doubly_stochastic_from_majorization(&rho.spectrum(), &sigma.spectrum())?;
    let birkhoff = birkhoff_decompose(&d)?;
    println!("\nBirkhoff terms:");
    for t in &birkhoff.terms {
        println!("  {:.6}  {:?}", t.weight, t.permutation);
    }

    let channel = synthesize_channel(&rho, &sigma)?;
    let err = trace_norm_distance(&apply_channel(&channel, &rho)?, &sigma)?;
    println!("\nchannel with {} unitaries, reconstruction error {err:.2e}", channel.terms().len());
    Ok(())
}
