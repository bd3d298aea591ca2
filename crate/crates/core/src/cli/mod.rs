//! Command-line front end: `tcoh analyze | convert-check | rate | correlate | fuzz`.
//!
//! Exit codes: 0 success / property holds, 1 negative verdict or fuzz
//! failures, 2 usage or I/O error, 3 file parsed but is not a valid state.

pub mod files;
pub mod fuzz;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::asymptotic::{rate_sweep, RateMode, RateTable};
use crate::coherence::{apply_channel, is_incoherent_state, total_coherence};
use crate::convertibility::{can_convert, synthesize_channel};
use crate::correlation::{coherence_to_correlation, IDENTITY_TOL};
use crate::matrixlab::{entropy, trace_norm_distance, DensityMatrix, Spectrum};
use files::{read_state, write_atomic, ChannelFile, FileError};
use fuzz::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Seed used by randomized commands when neither `--seed` nor `COH_SEED` is set.
pub const DEFAULT_SEED: u64 = 20_170_917;
/// Trace-norm tolerance for the "incoherent" flag in `analyze`.
pub const INCOHERENT_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "tcoh", version, about = "Total quantum coherence toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectrum, entropy and total coherence of a state file.
    Analyze { path: PathBuf },
    /// Decide whether RHO can be turned into SIGMA by a mixed-unitary channel.
    ConvertCheck {
        rho: PathBuf,
        sigma: PathBuf,
        /// Write the synthesized channel here (JSON).
        #[arg(long, value_name = "OUT")]
        synthesize: Option<PathBuf>,
    },
    /// Finite-copy distillation / dilution rates, written as CSV.
    Rate {
        /// Comma-separated eigenvalues, e.g. 0.9,0.1
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        spectrum: Vec<f64>,
        #[arg(long, default_value = "distill")]
        mode: String,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Explicit copy counts, comma-separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "n_max")]
        n_list: Option<Vec<usize>>,
        /// Powers of two up to N, plus N itself.
        #[arg(long, value_name = "N")]
        n_max: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the coherence-to-correlation protocol with an M-level ancilla.
    Correlate {
        path: PathBuf,
        #[arg(long, value_name = "M")]
        ancilla_dim: usize,
    },
    /// Run a seeded invariant suite and print a JSON report.
    Fuzz {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        trials: u64,
        #[arg(long, env = "COH_SEED")]
        seed: Option<u64>,
    },
}

/// Parses `args` and runs the command, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { path } => cmd_analyze(&path, out),
        Command::ConvertCheck { rho, sigma, synthesize } => {
            cmd_convert_check(&rho, &sigma, synthesize.as_deref(), out)
        }
        Command::Rate {
            spectrum,
            mode,
            eps,
            n_list,
            n_max,
            out: csv,
        } => cmd_rate(&spectrum, &mode, eps, n_list, n_max, &csv, out),
        Command::Correlate { path, ancilla_dim } => cmd_correlate(&path, ancilla_dim, out),
        Command::Fuzz { suite, trials, seed } => {
            let seed = seed.unwrap_or_else(|| {
                let _ = writeln!(err, "no --seed or COH_SEED given; using seed {DEFAULT_SEED}");
                DEFAULT_SEED
            });
            cmd_fuzz(&suite, trials, seed, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(CliError { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        let code = match e {
            FileError::Malformed(_) => EXIT_USAGE,
            FileError::Invalid(_) => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        Self::usage(e.to_string())
    }
}

type CmdResult = Result<i32, CliError>;

/// Decimal rendering without exponents; integral values keep a trailing `.0`.
pub fn fmt_decimal(x: f64) -> String {
    let s = format!("{x}");
    if x.is_finite() && !s.contains('.') {
        format!("{s}.0")
    } else {
        s
    }
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt_decimal(x)).collect::<Vec<_>>().join(", ")
}

pub fn cmd_analyze(path: &Path, out: &mut dyn Write) -> CmdResult {
    let (rho, _) = read_state(path)?;
    let spec = rho.spectrum();
    writeln!(out, "dim: {}", rho.dim())?;
    writeln!(out, "spectrum: [{}]", fmt_list(spec.probs()))?;
    writeln!(out, "entropy_bits: {}", fmt_decimal(entropy(&rho)))?;
    writeln!(out, "total_coherence_bits: {}", fmt_decimal(total_coherence(&rho)))?;
    writeln!(out, "incoherent: {}", is_incoherent_state(&rho, INCOHERENT_TOL))?;
    Ok(EXIT_OK)
}

pub fn cmd_convert_check(
    rho_path: &Path,
    sigma_path: &Path,
    synthesize: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let (rho, _) = read_state(rho_path)?;
    let (sigma, _) = read_state(sigma_path)?;
    if rho.dim() != sigma.dim() {
        return Err(CliError::usage(format!(
            "dimension mismatch: {} vs {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    let ok = can_convert(&rho, &sigma)?;
    writeln!(out, "{}", if ok { "CONVERTIBLE" } else { "NOT CONVERTIBLE" })?;
    writeln!(out, "total_coherence_rho_bits: {}", fmt_decimal(total_coherence(&rho)))?;
    writeln!(out, "total_coherence_sigma_bits: {}", fmt_decimal(total_coherence(&sigma)))?;
    if !ok {
        return Ok(EXIT_NEGATIVE);
    }
    if let Some(path) = synthesize {
        let ch = synthesize_channel(&rho, &sigma)?;
        let err = trace_norm_distance(&apply_channel(&ch, &rho)?, &sigma)?;
        write_atomic(path, &ChannelFile::from_channel(&ch).to_json())?;
        writeln!(out, "channel_terms: {}", ch.terms().len())?;
        writeln!(out, "reconstruction_error: {err:e}")?;
    }
    Ok(EXIT_OK)
}

/// `1, 2, 4, …` up to `n_max`, then `n_max`.
pub fn doubling_grid(n_max: usize) -> Vec<usize> {
    let mut ns: Vec<usize> = std::iter::successors(Some(1usize), |&n| n.checked_mul(2))
        .take_while(|&n| n <= n_max)
        .collect();
    if ns.last() != Some(&n_max) && n_max > 0 {
        ns.push(n_max);
    }
    ns
}

pub fn rate_table_csv(table: &RateTable) -> String {
    let mut csv = String::from("n,m,rate,epsilon,mode\n");
    for r in &table.rows {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.m,
            fmt_decimal(r.rate),
            fmt_decimal(r.epsilon),
            r.mode
        ));
    }
    csv
}

pub fn cmd_rate(
    spectrum: &[f64],
    mode: &str,
    eps: f64,
    n_list: Option<Vec<usize>>,
    n_max: Option<usize>,
    csv_path: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    let base = Spectrum::new(spectrum.to_vec()).map_err(|e| CliError::usage(e.to_string()))?;
    let mode: RateMode = mode.parse().map_err(|e: crate::Error| CliError::usage(e.to_string()))?;
    let ns = match (n_list, n_max) {
        (Some(list), _) => list,
        (None, Some(max)) => doubling_grid(max),
        (None, None) => return Err(CliError::usage("one of --n-list or --n-max is required")),
    };
    if ns.is_empty() || ns.contains(&0) {
        return Err(CliError::usage("copy counts must be positive"));
    }
    let table = rate_sweep(&base, eps, &ns, mode)?;
    write_atomic(csv_path, &rate_table_csv(&table))?;
    let target = crate::asymptotic::distillable_total_coherence(
        &DensityMatrix::diagonal(base.probs()).map_err(|e| CliError::usage(e.to_string()))?,
    );
    writeln!(out, "target_total_coherence_bits: {}", fmt_decimal(target))?;
    for r in &table.rows {
        writeln!(out, "n={} m={} rate={}", r.n, r.m, fmt_decimal(r.rate))?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_correlate(path: &Path, ancilla_dim: usize, out: &mut dyn Write) -> CmdResult {
    if ancilla_dim == 0 {
        return Err(CliError::usage("--ancilla-dim must be positive"));
    }
    let (rho, _) = read_state(path)?;
    let r = coherence_to_correlation(&rho, ancilla_dim)?;
    writeln!(out, "total_coherence_bits: {}", fmt_decimal(r.input_coherence))?;
    writeln!(out, "mutual_information_bits: {}", fmt_decimal(r.output_mutual_information))?;
    writeln!(out, "equality_slack_bits: {:e}", r.equality_slack)?;
    writeln!(out, "reduced_s_distance: {:e}", r.reduced_s_distance)?;
    writeln!(out, "reduced_a_distance: {:e}", r.reduced_a_distance)?;
    if !r.saturation_expected {
        writeln!(out, "note: ancilla dimension below system dimension; equality not guaranteed")?;
    }
    Ok(if r.equality_slack <= IDENTITY_TOL { EXIT_OK } else { EXIT_NEGATIVE })
}

pub fn cmd_fuzz(suite: &str, trials: u64, seed: u64, out: &mut dyn Write) -> CmdResult {
    let suite: Suite = suite.parse().map_err(CliError::usage)?;
    if trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let report = run_suite(suite, trials, seed);
    writeln!(out, "{}", report.to_json())?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_NEGATIVE })
}
