//! Log-domain spectra of tensor powers `ρ^⊗n`.
//!
//! The `d^n` eigenvalues of `ρ^⊗n` are products `Π λ_j^{k_j}` indexed by type
//! classes (compositions `k` of `n` into `d` parts). Each class is stored as one
//! atom: its eigenvalue and its multiplicity, both as base-2 logarithms, so
//! `n` in the tens of thousands never overflows.

use statrs::function::gamma::ln_gamma;

use super::spectrum::Spectrum;
use crate::error::{Error, Result};

/// Atoms whose `log2_value`s differ by no more than this are merged.
pub const MERGE_TOL: f64 = 1e-12;
/// Upper bound on the number of type classes we are willing to enumerate.
pub const MAX_ATOMS: u128 = 5_000_000;
pub const MAX_BASE_DIM: usize = 8;

/// One type class: `multiplicity` eigenvalues all equal to `value`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub log2_value: f64,
    pub log2_multiplicity: f64,
}

impl Atom {
    /// `log2(value · multiplicity)`.
    #[inline]
    pub fn log2_weight(&self) -> f64 {
        self.log2_value + self.log2_multiplicity
    }
}

/// Spectrum of a tensor power, atoms sorted by strictly decreasing value.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSpectrum {
    atoms: Vec<Atom>,
}

/// Neumaier compensated summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// `log2(2^a + 2^b)`.
pub fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

/// `log2(2^a − 2^b)` for `a ≥ b`; `-∞` when they are equal.
pub fn log2_sub(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    if b >= a {
        return f64::NEG_INFINITY;
    }
    a + (-(b - a).exp2()).ln_1p() / std::f64::consts::LN_2
}

impl WeightedSpectrum {
    /// Builds from atoms in any order; sorts and merges coincident values.
    pub fn from_atoms(mut atoms: Vec<Atom>) -> Self {
        atoms.sort_by(|a, b| b.log2_value.total_cmp(&a.log2_value));
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match merged.last_mut() {
                Some(last) if (last.log2_value - atom.log2_value).abs() <= MERGE_TOL => {
                    last.log2_multiplicity =
                        log2_add(last.log2_multiplicity, atom.log2_multiplicity);
                }
                _ => merged.push(atom),
            }
        }
        Self { atoms: merged }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.log2_weight().exp2())
            .collect::<CompensatedSum>()
            .value()
    }

    /// `-Σ w log2 λ` over atoms, i.e. the entropy of the tensor power.
    pub fn entropy(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| -a.log2_weight().exp2() * a.log2_value)
            .collect::<CompensatedSum>()
            .value()
    }

    /// Sum of the `K` largest eigenvalues, `K = 2^log2_k` (fractional `K`
    /// takes that fraction of the boundary eigenvalue).
    pub fn top_mass(&self, log2_k: f64) -> f64 {
        let mut mass = CompensatedSum::default();
        let mut remaining = log2_k;
        for atom in &self.atoms {
            if remaining == f64::NEG_INFINITY {
                break;
            }
            if atom.log2_multiplicity <= remaining {
                mass.add(atom.log2_weight().exp2());
                remaining = log2_sub(remaining, atom.log2_multiplicity);
            } else {
                mass.add((atom.log2_value + remaining).exp2());
                break;
            }
        }
        mass.value()
    }

    /// `Σ_i max(λ_i − t, 0)` with `t = 2^log2_t`.
    pub fn clip_excess(&self, log2_t: f64) -> f64 {
        self.atoms
            .iter()
            .take_while(|a| a.log2_value > log2_t)
            .map(|a| {
                // mult · (λ − t) = mult·λ · (1 − t/λ)
                a.log2_weight().exp2()
                    * -((log2_t - a.log2_value) * std::f64::consts::LN_2).exp_m1()
            })
            .collect::<CompensatedSum>()
            .value()
    }
}

/// Number of compositions of `n` into `parts` nonnegative parts, saturating.
fn composition_count(n: usize, parts: usize) -> u128 {
    // C(n + parts − 1, parts − 1)
    let k = parts.saturating_sub(1) as u128;
    let mut c: u128 = 1;
    for i in 1..=k {
        c = match c.checked_mul(n as u128 + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    c
}

/// Spectrum of `base^⊗n` as type-class atoms.
///
/// Zero entries of `base` are dropped (they carry no weight), the rest are
/// renormalized, and equal entries are grouped so repeated eigenvalues do not
/// multiply the number of classes.
pub fn tensor_power_spectrum(base: &Spectrum, n: usize) -> Result<WeightedSpectrum> {
    if n == 0 {
        return Err(Error::InvalidArgument("tensor power must be positive".into()));
    }
    if base.len() > MAX_BASE_DIM {
        return Err(Error::InvalidArgument(format!(
            "base dimension {} exceeds {MAX_BASE_DIM}",
            base.len()
        )));
    }
    let support: Vec<f64> = base.probs().iter().copied().filter(|&p| p > 0.0).collect();
    let total: f64 = support.iter().sum();

    // (log2 value, group size), probs already descending
    let mut groups: Vec<(f64, usize)> = Vec::new();
    for p in support {
        let lv = (p / total).log2();
        match groups.last_mut() {
            Some((v, g)) if (*v - lv).abs() <= MERGE_TOL => *g += 1,
            _ => groups.push((lv, 1)),
        }
    }

    let count = composition_count(n, groups.len());
    if count > MAX_ATOMS {
        return Err(Error::Intractable(count));
    }

    let ln_fact: Vec<f64> = (0..=n).map(|k| ln_gamma(k as f64 + 1.0)).collect();
    let log2_e = std::f64::consts::LOG2_E;
    let group_log2: Vec<f64> = groups.iter().map(|&(_, g)| (g as f64).log2()).collect();

    let mut atoms = Vec::with_capacity(count as usize);
    let mut parts = vec![0usize; groups.len()];
    let last = groups.len() - 1;
    // Enumerate compositions: parts[0..last] free, parts[last] = remainder.
    loop {
        let used: usize = parts[..last].iter().sum();
        parts[last] = n - used;
        let mut log2_value = 0.0;
        let mut ln_mult = ln_fact[n];
        let mut log2_mult_groups = 0.0;
        for (j, &k) in parts.iter().enumerate() {
            if k > 0 {
                log2_value += k as f64 * groups[j].0;
                log2_mult_groups += k as f64 * group_log2[j];
            }
            ln_mult -= ln_fact[k];
        }
        atoms.push(Atom {
            log2_value,
            log2_multiplicity: (ln_mult * log2_e).max(0.0) + log2_mult_groups,
        });

        // Advance like an odometer over parts[0..last] with Σ ≤ n.
        let mut pos = 0;
        loop {
            if pos == last {
                return Ok(WeightedSpectrum::from_atoms(atoms));
            }
            let used: usize = parts[..last].iter().sum();
            if used < n {
                parts[pos] += 1;
                break;
            }
            parts[pos] = 0;
            pos += 1;
        }
    }
}
