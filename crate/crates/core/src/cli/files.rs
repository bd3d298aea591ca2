//! JSON state and channel files.
//!
//! ```json
//! {"version": "1", "dim": 2, "re": [[0.75, 0.0], [0.0, 0.25]], "im": [[0.0, 0.0], [0.0, 0.0]]}
//! ```
//!
//! An optional `"dims": [dA, dB]` (or three factors) annotates a tensor
//! factorization. Numbers are written in shortest round-trip form and parsed
//! with correct rounding, so write-then-read is exact.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherence::MixedUnitaryChannel;
use crate::matrixlab::{ComplexMatrix, DensityMatrix};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub version: String,
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelTermFile {
    pub weight: f64,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub version: String,
    pub dim: usize,
    pub terms: Vec<ChannelTermFile>,
}

/// Why a file could not be turned into a state.
#[derive(Debug)]
pub enum FileError {
    /// Unreadable, not JSON, wrong shape or version.
    Malformed(String),
    /// Well-formed, but not a valid density matrix / factorization.
    Invalid(String),
}

impl std::fmt::Display for FileError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FileError::Malformed(m) => write!(f, "malformed file: {m}"),
            FileError::Invalid(m) => write!(f, "invalid state: {m}"),
        }
    }
}

fn split_matrix(m: &ComplexMatrix) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let n = m.dim();
    let re = (0..n).map(|i| (0..n).map(|j| m[(i, j)].re).collect()).collect();
    let im = (0..n).map(|i| (0..n).map(|j| m[(i, j)].im).collect()).collect();
    (re, im)
}

fn join_matrix(dim: usize, re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<ComplexMatrix, FileError> {
    let square = |rows: &[Vec<f64>]| rows.len() == dim && rows.iter().all(|r| r.len() == dim);
    if !square(re) || !square(im) {
        return Err(FileError::Malformed(format!("re/im must be {dim}x{dim}")));
    }
    let entries = re
        .iter()
        .zip(im)
        .flat_map(|(r, i)| r.iter().zip(i).map(|(&a, &b)| Complex64::new(a, b)))
        .collect();
    ComplexMatrix::from_row_major(dim, entries).map_err(|e| FileError::Malformed(e.to_string()))
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix, dims: Option<Vec<usize>>) -> Self {
        let (re, im) = split_matrix(rho.matrix());
        Self {
            version: FORMAT_VERSION.into(),
            dim: rho.dim(),
            re,
            im,
            dims,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let file: StateFile =
            serde_json::from_str(text).map_err(|e| FileError::Malformed(e.to_string()))?;
        if file.version != FORMAT_VERSION {
            return Err(FileError::Malformed(format!("unsupported version {:?}", file.version)));
        }
        if file.dim == 0 {
            return Err(FileError::Malformed("dim must be positive".into()));
        }
        Ok(file)
    }

    pub fn to_state(&self) -> Result<DensityMatrix, FileError> {
        let m = join_matrix(self.dim, &self.re, &self.im)?;
        if let Some(dims) = &self.dims {
            if !(2..=3).contains(&dims.len()) || dims.iter().product::<usize>() != self.dim {
                return Err(FileError::Invalid(format!(
                    "dims {dims:?} do not factor dim {}",
                    self.dim
                )));
            }
        }
        DensityMatrix::new(m).map_err(|e| FileError::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

impl ChannelFile {
    pub fn from_channel(ch: &MixedUnitaryChannel) -> Self {
        Self {
            version: FORMAT_VERSION.into(),
            dim: ch.dim(),
            terms: ch
                .terms()
                .iter()
                .map(|t| {
                    let (re, im) = split_matrix(&t.unitary);
                    ChannelTermFile {
                        weight: t.weight,
                        re,
                        im,
                    }
                })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        let file: ChannelFile =
            serde_json::from_str(text).map_err(|e| FileError::Malformed(e.to_string()))?;
        if file.version != FORMAT_VERSION {
            return Err(FileError::Malformed(format!("unsupported version {:?}", file.version)));
        }
        Ok(file)
    }

    pub fn to_channel(&self) -> Result<MixedUnitaryChannel, FileError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.weight, join_matrix(self.dim, &t.re, &t.im)?)))
            .collect::<Result<Vec<_>, FileError>>()?;
        MixedUnitaryChannel::new(terms).map_err(|e| FileError::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn read_state(path: &Path) -> Result<(DensityMatrix, StateFile), FileError> {
    let text = fs::read_to_string(path)
        .map_err(|e| FileError::Malformed(format!("{}: {e}", path.display())))?;
    let file = StateFile::parse(&text)?;
    Ok((file.to_state()?, file))
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed write never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
