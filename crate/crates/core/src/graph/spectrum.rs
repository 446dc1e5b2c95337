use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use super::{GraphDecomposition, ResidueClass};
use crate::error::{Error, Result};

/// Multiset of cycle lengths: `length -> number of cycles`.
///
/// `covered` is the number of states on the counted cycles and always
/// equals the sum of `length * count`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleSpectrum {
    entries: BTreeMap<u64, u64>,
    covered: u64,
}

impl CycleSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `count` cycles of length `length`. Zero counts are ignored.
    pub fn add(&mut self, length: u64, count: u64) {
        if count == 0 {
            return;
        }
        *self.entries.entry(length).or_insert(0) += count;
        self.covered += length * count;
    }

    pub fn count(&self, length: u64) -> u64 {
        self.entries.get(&length).copied().unwrap_or(0)
    }

    pub fn covered(&self) -> u64 {
        self.covered
    }

    pub fn total_cycles(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `(length, count)` pairs by increasing length.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&l, &c)| (l, c))
    }

    pub fn lengths(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    /// Key-wise sum.
    pub fn merge(&self, other: &CycleSpectrum) -> CycleSpectrum {
        let mut out = self.clone();
        for (l, c) in other.entries() {
            out.add(l, c);
        }
        out
    }
}

impl FromIterator<(u64, u64)> for CycleSpectrum {
    fn from_iter<I: IntoIterator<Item = (u64, u64)>>(iter: I) -> Self {
        let mut s = CycleSpectrum::new();
        for (l, c) in iter {
            s.add(l, c);
        }
        s
    }
}

impl<const N: usize> From<[(u64, u64); N]> for CycleSpectrum {
    fn from(entries: [(u64, u64); N]) -> Self {
        entries.into_iter().collect()
    }
}

impl fmt::Display for CycleSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (l, c)) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}:{c}")?;
        }
        f.write_str("}")
    }
}

/// Spectrum of the cycles lying in `class`.
///
/// Fails with [`Error::MixedClassCycle`] if some cycle has states both
/// inside and outside the class.
pub fn observed_spectrum(g: &GraphDecomposition, class: ResidueClass) -> Result<CycleSpectrum> {
    let mut s = CycleSpectrum::new();
    for cycle in g.cycles() {
        let inside = class.contains(cycle[0]);
        if let Some(&x) = cycle.iter().find(|&&x| class.contains(x) != inside) {
            return Err(Error::MixedClassCycle { state: x });
        }
        if inside {
            s.add(cycle.len() as u64, 1);
        }
    }
    Ok(s)
}

/// Spectrum of the product map on `Z/m1 x Z/m2` given the spectra of the
/// factors: a pair of cycles of lengths `a`, `b` splits into `gcd(a, b)`
/// cycles of length `lcm(a, b)`.
pub fn compose_spectra(a: &CycleSpectrum, b: &CycleSpectrum) -> CycleSpectrum {
    let mut out = CycleSpectrum::new();
    for (l1, c1) in a.entries() {
        for (l2, c2) in b.entries() {
            let (g, l) = l1.gcd_lcm(&l2);
            out.add(l, c1 * c2 * g);
        }
    }
    out
}
