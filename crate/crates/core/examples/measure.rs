//! Total coherence of a few reference states.
//!
//! ```bash
//! cargo run --example measure
//! ```

use num_complex::Complex64;
use total_coherence::coherence::{is_incoherent_state, total_coherence};
use total_coherence::{entropy, DensityMatrix};

fn report(label: &str, rho: &DensityMatrix) {
    println!(
        "{label:<22} S = {:.10}  C_R = {:.10}  incoherent = {}",
        entropy(rho),
        total_coherence(rho),
        is_incoherent_state(rho, 1e-9)
    );
}

fn main() -> total_coherence::Result<()> {
    report("maximally mixed (4)", &DensityMatrix::maximally_mixed(4));
    report("basis state |0> (4)", &DensityMatrix::basis(4, 0));
    report("diag(0.75, 0.25)", &DensityMatrix::diagonal(&[0.75, 0.25])?);

    // |+> and |0> carry the same total coherence: the measure is basis-free
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let plus = DensityMatrix::pure(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)])?;
    report("|+>", &plus);
    Ok(())
}
