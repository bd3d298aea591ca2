//! Finite-copy distillation and dilution rates approaching `C_R`.
//!
//! Works on the type-class spectrum of `ρ^⊗n`, so `n` in the thousands is
//! cheap.
//!
//! ```bash
//! cargo run --release --example rates
//! ```

use total_coherence::asymptotic::{rate_sweep, RateMode};
use total_coherence::{von_neumann_entropy, Spectrum};

fn main() -> total_coherence::Result<()> {
    let base = Spectrum::new(vec![0.9, 0.1])?;
    let target = (base.len() as f64).log2() - von_neumann_entropy(&base);
    println!("C_R = {target:.7}");

    let ns = [10, 100, 500, 1000, 5000];
    for mode in [RateMode::Distill, RateMode::Cost] {
        println!("\n{mode} (eps = 0.01)");
        for row in rate_sweep(&base, 0.01, &ns, mode)?.rows {
            println!("  n = {:>5}  m = {:>5}  rate = {:.4}  gap = {:+.4}", row.n, row.m, row.rate, row.rate - target);
        }
    }
    Ok(())
}
