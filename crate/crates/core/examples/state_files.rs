//! Writing and reading JSON state files, then driving the command layer
//! in-process exactly as the `tcoh` binary does.
//!
//! ```bash
//! cargo run --example state_files
//! ```

use total_coherence::cli::files::{read_state, write_atomic, StateFile};
use total_coherence::cli::run;
use total_coherence::{random_density, Rng};

fn main() -> std::io::Result<()> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("rho.json");

    let rho = random_density(2, 2, &mut Rng::new(9));
    write_atomic(&path, &StateFile::from_state(&rho, None).to_json())?;
    let (back, _) = read_state(&path).expect("just written");
    println!("round trip exact: {}\n", back == rho);

    let path = path.to_string_lossy().into_owned();
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    for args in [
        vec!["tcoh", "analyze", &path],
        vec!["tcoh", "correlate", &path, "--ancilla-dim", "2"],
    ] {
        println!("$ {}", args.join(" "));
        let code = run(args, &mut stdout, &mut stderr);
        println!("(exit {code})\n");
    }
    Ok(())
}
