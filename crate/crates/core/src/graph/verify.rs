//! Predicted versus observed cycle spectra for one ring.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{build_graph, predicted_class_spectrum, walk_cycles, BuildOptions, CycleSpectrum, ResidueClass};
use crate::error::{Error, Result};
use crate::period::period_closed;
use crate::ring::{Degree, Prime, RingSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassComparison {
    pub class: ResidueClass,
    pub predicted: CycleSpectrum,
    pub observed: CycleSpectrum,
}

impl ClassComparison {
    /// Rows `(length, predicted, observed)` over the union of lengths.
    pub fn rows(&self) -> Vec<(u64, u64, u64)> {
        let lengths: BTreeSet<u64> = self.predicted.lengths().chain(self.observed.lengths()).collect();
        lengths
            .into_iter()
            .map(|l| (l, self.predicted.count(l), self.observed.count(l)))
            .collect()
    }

    pub fn is_match(&self) -> bool {
        self.predicted == self.observed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mismatch {
    /// Cycle counts differ for one length within one class.
    Count {
        class: ResidueClass,
        length: u64,
        predicted: u64,
        observed: u64,
    },
    /// The closed-form period of a cycle's smallest state differs from the
    /// cycle's length.
    Period {
        state: u64,
        cycle_length: u64,
        closed_form: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: Degree,
    pub ring: RingSpec,
    /// One entry per residue class, in [`ResidueClass::split_for`] order.
    pub classes: Vec<ClassComparison>,
    pub merged: ClassComparison,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn is_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Builds the graph of `T_n` over `Z/p^k` and compares its spectrum, class
/// by class, with the closed-form prediction. Each cycle's length is also
/// checked against the closed-form period of its smallest state.
///
/// A single worker streams cycles through the bitmap walk; more workers
/// build the full decomposition in parallel.
pub fn verify(n: Degree, p: Prime, k: u32, opts: &BuildOptions) -> Result<VerifyReport> {
    let ring = RingSpec::new(p, k)?;
    let classes = ResidueClass::split_for(p);
    let mut observed = [CycleSpectrum::new(), CycleSpectrum::new()];
    let mut period_mismatches = Vec::new();
    let mut failure = None;

    let mut visit = |cycle: &[u64]| {
        if failure.is_some() {
            return;
        }
        let start = cycle.iter().copied().min().expect("cycles are non-empty");
        let class = ResidueClass::of(start, p);
        if let Some(&x) = cycle.iter().find(|&&x| !class.contains(x)) {
            failure = Some(Error::MixedClassCycle { state: x });
            return;
        }
        let len = cycle.len() as u64;
        match period_closed(n, ring, start) {
            Ok(closed) if closed != len => period_mismatches.push(Mismatch::Period {
                state: start,
                cycle_length: len,
                closed_form: closed,
            }),
            Ok(_) => {}
            Err(e) => failure = Some(e),
        }
        let slot = usize::from(class != classes[0]);
        observed[slot].add(len, 1);
    };

    if opts.workers > 1 {
        let g = build_graph(n, ring, opts)?;
        g.cycles().for_each(&mut visit);
    } else {
        walk_cycles(n, ring.modulus(), opts, &mut visit)?;
    }
    if let Some(e) = failure {
        return Err(e);
    }

    let mut comparisons = Vec::with_capacity(2);
    let mut mismatches = Vec::new();
    for (class, obs) in classes.into_iter().zip(observed) {
        let cmp = ClassComparison {
            class,
            predicted: predicted_class_spectrum(n, p, k, class)?,
            observed: obs,
        };
        for (length, predicted, observed) in cmp.rows() {
            if predicted != observed {
                mismatches.push(Mismatch::Count {
                    class,
                    length,
                    predicted,
                    observed,
                });
            }
        }
        comparisons.push(cmp);
    }
    period_mismatches.sort_by_key(|m| match m {
        Mismatch::Period { state, .. } => *state,
        Mismatch::Count { .. } => 0,
    });
    mismatches.extend(period_mismatches);
    let merged = ClassComparison {
        class: ResidueClass::All,
        predicted: comparisons[0].predicted.merge(&comparisons[1].predicted),
        observed: comparisons[0].observed.merge(&comparisons[1].observed),
    };
    Ok(VerifyReport {
        n,
        ring,
        classes: comparisons,
        merged,
        mismatches,
    })
}
