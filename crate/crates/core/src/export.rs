//! DOT, JSON and CSV renderings.

use std::fmt::Write;

use serde::Serialize;

use crate::graph::{CycleSpectrum, GraphDecomposition, ResidueClass, VerifyReport};
use crate::ring::{Degree, RingSpec};

/// Functional graph as a DOT digraph: one edge `x -> T_n(x)` per state, in
/// increasing order of `x`.
pub fn to_dot(g: &GraphDecomposition) -> String {
    let succ = g.successors();
    let name = match g.ring() {
        Some(r) => format!("T{}_Z{}_{}", g.degree(), r.prime(), r.exponent()),
        None => format!("T{}_Z{}", g.degree(), g.modulus()),
    };
    let mut out = String::with_capacity(16 * succ.len() + 64);
    let _ = writeln!(out, "digraph {name} {{");
    for (x, y) in succ.iter().enumerate() {
        let _ = writeln!(out, "  {x} -> {y};");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct Entry {
    length: u64,
    count: u64,
}

#[derive(Serialize)]
struct SpectrumDoc {
    n: u64,
    p: u64,
    k: u32,
    class: ResidueClass,
    spectrum: Vec<Entry>,
    covered: u64,
}

/// Spectrum as a JSON object with entries sorted by length.
pub fn spectrum_json(n: Degree, ring: RingSpec, class: ResidueClass, s: &CycleSpectrum) -> String {
    let doc = SpectrumDoc {
        n: n.get(),
        p: ring.prime().value(),
        k: ring.exponent(),
        class,
        spectrum: s.entries().map(|(length, count)| Entry { length, count }).collect(),
        covered: s.covered(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

/// One row per `(class, length)` for each residue class, then the merged
/// rows under class `all`.
pub fn verify_csv(r: &VerifyReport) -> String {
    let mut out = String::from("class,length,predicted,observed,match\n");
    for cmp in r.classes.iter().chain(std::iter::once(&r.merged)) {
        for (length, predicted, observed) in cmp.rows() {
            let _ = writeln!(
                out,
                "{},{length},{predicted},{observed},{}",
                cmp.class,
                predicted == observed
            );
        }
    }
    out
}
