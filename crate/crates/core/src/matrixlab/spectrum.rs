use crate::error::{Error, Result};

/// Values this far outside `[0, 1]` are treated as eigensolver noise and clamped.
pub const CLAMP_WINDOW: f64 = 1e-12;
/// Allowed deviation of a spectrum's total from 1.
pub const SUM_TOL: f64 = 1e-9;

/// A probability vector sorted in nonincreasing order: the eigenvalues of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    probs: Vec<f64>,
}

impl Spectrum {
    /// Validates, clamps and sorts `values`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty".into()));
        }
        if let Some(bad) = values
            .iter()
            .find(|&&x| !x.is_finite() || !(-CLAMP_WINDOW..=1.0 + CLAMP_WINDOW).contains(&x))
        {
            return Err(Error::InvalidSpectrum(format!("entry {bad} outside [0, 1]")));
        }
        let s = Self::clamped(values);
        let total = s.total();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidSpectrum(format!("sums to {total}")));
        }
        Ok(s)
    }

    /// Clamps to `[0, 1]` and sorts, without checking the total.
    pub(crate) fn clamped(mut values: Vec<f64>) -> Self {
        for x in values.iter_mut() {
            *x = x.clamp(0.0, 1.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Self { probs: values }
    }

    /// Uniform distribution on `dim` outcomes.
    pub fn uniform(dim: usize) -> Self {
        Self {
            probs: vec![1.0 / dim as f64; dim],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Pads with zeros up to `len`.
    pub fn padded(&self, len: usize) -> Self {
        let mut probs = self.probs.clone();
        probs.resize(len.max(probs.len()), 0.0);
        Self { probs }
    }
}
