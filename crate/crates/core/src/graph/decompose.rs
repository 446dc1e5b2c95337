//! Cycle decomposition of `x -> T_n(x) mod m` using a one-bit-per-state
//! visited map.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::DEFAULT_MAX_STATES;
use crate::chebyshev::{self, is_permutation, require_permutation};
use crate::error::{Error, Result};
use crate::ring::{Degree, Prime, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub max_states: u64,
    /// Worker threads for the build. `1` runs on the calling thread.
    pub workers: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            max_states: DEFAULT_MAX_STATES,
            workers: 1,
        }
    }
}

impl BuildOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_max_states(mut self, max_states: u64) -> Self {
        self.max_states = max_states;
        self
    }

    fn check(&self, m: u64) -> Result<()> {
        if m > self.max_states {
            return Err(Error::StateSpaceTooLarge {
                states: m,
                cap: self.max_states,
            });
        }
        // Bitmap indices and cycle offsets are `usize`.
        usize::try_from(m).map_err(|_| Error::StateSpaceTooLarge {
            states: m,
            cap: usize::MAX as u64,
        })?;
        Ok(())
    }
}

/// All cycles of the functional graph, in canonical form.
///
/// Each cycle is listed in orbit order starting from its smallest state;
/// cycles are sorted by `(length, smallest state)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDecomposition {
    degree: Degree,
    modulus: u64,
    ring: Option<RingSpec>,
    states: Vec<u64>,
    offsets: Vec<usize>,
}

impl GraphDecomposition {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The prime-power ring, when the graph was built over one.
    pub fn ring(&self) -> Option<RingSpec> {
        self.ring
    }

    pub fn cycle_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn cycles(&self) -> impl ExactSizeIterator<Item = &[u64]> + '_ {
        self.offsets.windows(2).map(|w| &self.states[w[0]..w[1]])
    }

    /// Successor table `x -> T_n(x)` recovered from the cycles.
    pub fn successors(&self) -> Vec<u64> {
        let mut succ = vec![0; self.modulus as usize];
        for cycle in self.cycles() {
            for (i, &x) in cycle.iter().enumerate() {
                succ[x as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        succ
    }
}

/// Decompose the graph of `T_n` over `Z/p^k`.
pub fn build_graph(n: Degree, ring: RingSpec, opts: &BuildOptions) -> Result<GraphDecomposition> {
    require_permutation(n, ring.prime())?;
    opts.check(ring.modulus())?;
    let mut g = decompose(n, ring.modulus(), opts.workers);
    g.ring = Some(ring);
    Ok(g)
}

/// Decompose the graph of `T_n` over `Z/m` for `m = 2^a * 3^b`.
pub fn build_graph_modulus(n: Degree, m: u64, opts: &BuildOptions) -> Result<GraphDecomposition> {
    check_smooth_permutation(n, m)?;
    opts.check(m)?;
    Ok(decompose(n, m, opts.workers))
}

fn check_smooth_permutation(n: Degree, m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let mut rest = m;
    for p in [Prime::Two, Prime::Three] {
        if rest.is_multiple_of(p.value()) {
            if !is_permutation(n.get(), p) {
                return Err(Error::NotPermutation { n: n.get(), p });
            }
            while rest.is_multiple_of(p.value()) {
                rest /= p.value();
            }
        }
    }
    if rest != 1 {
        return Err(Error::InvalidModulus(m));
    }
    Ok(())
}

/// Stream every cycle of `T_n` over `Z/m` to `sink` without storing the
/// graph. Cycles arrive in increasing order of their smallest state, each
/// starting from that state. Memory is `m / 8` bytes plus one cycle.
pub fn walk_cycles<F>(n: Degree, m: u64, opts: &BuildOptions, mut sink: F) -> Result<()>
where
    F: FnMut(&[u64]),
{
    check_smooth_permutation(n, m)?;
    opts.check(m)?;
    let n = n.get();
    let mut visited = vec![0u64; (m as usize).div_ceil(64)];
    let mut cycle = Vec::new();
    for start in 0..m {
        let (w, b) = ((start / 64) as usize, start % 64);
        if visited[w] >> b & 1 == 1 {
            continue;
        }
        cycle.clear();
        let mut x = start;
        loop {
            visited[(x / 64) as usize] |= 1 << (x % 64);
            cycle.push(x);
            x = chebyshev::eval(n, x, m)?;
            if x == start {
                break;
            }
        }
        sink(&cycle);
    }
    Ok(())
}

fn decompose(n: Degree, m: u64, workers: usize) -> GraphDecomposition {
    let cycles = if workers <= 1 {
        let mut out = Vec::new();
        walk_cycles(n, m, &BuildOptions::default().with_max_states(u64::MAX), |c| {
            out.push(c.to_vec())
        })
        .expect("modulus validated by caller");
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| parallel_cycles(n.get(), m, workers))
    };
    canonical(n, m, cycles)
}

/// A run of states claimed by one worker, ending just before `next`.
struct Arc {
    states: Vec<u64>,
    next: u64,
}

fn test_and_set(bits: &[AtomicU64], x: u64) -> bool {
    let mask = 1u64 << (x % 64);
    bits[(x / 64) as usize].fetch_or(mask, Ordering::AcqRel) & mask != 0
}

/// Workers scan disjoint ranges and claim states with test-and-set while
/// walking forward. A walk stops at the first state someone else already
/// claimed. Since the map is injective, that state can only have been
/// claimed as the start of another walk, so the runs chain together into
/// whole cycles afterwards.
fn parallel_cycles(n: u64, m: u64, workers: usize) -> Vec<Vec<u64>> {
    let bits: Vec<AtomicU64> = (0..(m as usize).div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let chunks = (workers as u64 * 16).min(m);
    let chunk = m.div_ceil(chunks);
    let (closed, arcs): (Vec<Vec<Vec<u64>>>, Vec<Vec<Arc>>) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut closed = Vec::new();
            let mut arcs = Vec::new();
            for start in c * chunk..((c + 1) * chunk).min(m) {
                if test_and_set(&bits, start) {
                    continue;
                }
                let mut run = vec![start];
                let mut x = chebyshev::eval(n, start, m).expect("m >= 2");
                loop {
                    if x == start {
                        closed.push(run);
                        break;
                    }
                    if test_and_set(&bits, x) {
                        arcs.push(Arc { states: run, next: x });
                        break;
                    }
                    run.push(x);
                    x = chebyshev::eval(n, x, m).expect("m >= 2");
                }
            }
            (closed, arcs)
        })
        .unzip();

    let mut cycles: Vec<Vec<u64>> = closed.into_iter().flatten().collect();
    let arcs: Vec<Arc> = arcs.into_iter().flatten().collect();
    let by_start: HashMap<u64, usize> = arcs.iter().enumerate().map(|(i, a)| (a.states[0], i)).collect();
    let mut used = vec![false; arcs.len()];
    for first in 0..arcs.len() {
        if used[first] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = first;
        loop {
            used[i] = true;
            cycle.extend_from_slice(&arcs[i].states);
            i = by_start[&arcs[i].next];
            if i == first {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

fn canonical(n: Degree, m: u64, mut cycles: Vec<Vec<u64>>) -> GraphDecomposition {
    for c in &mut cycles {
        let pos = c
            .iter()
            .enumerate()
            .min_by_key(|&(_, &x)| x)
            .map(|(i, _)| i)
            .unwrap_or(0);
        c.rotate_left(pos);
    }
    cycles.sort_unstable_by_key(|c| (c.len(), c[0]));
    let mut states = Vec::with_capacity(m as usize);
    let mut offsets = Vec::with_capacity(cycles.len() + 1);
    offsets.push(0);
    for c in cycles {
        states.extend_from_slice(&c);
        offsets.push(states.len());
    }
    GraphDecomposition {
        degree: n,
        modulus: m,
        ring: None,
        states,
        offsets,
    }
}
