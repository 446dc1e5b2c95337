//! Functional graphs `x -> T_n(x) mod m` and their cycle spectra.
//!
//! A permutation's functional graph is a disjoint union of cycles. The
//! spectrum (cycle length -> count) is predicted per residue class: parity
//! over `Z/2^k`, and `x = 0` versus `x = +-1 (mod 3)` over `Z/3^k`. Each
//! cycle stays inside one class.

mod decompose;
mod predict;
mod selfloops;
mod spectrum;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::Prime;

pub use decompose::{build_graph, build_graph_modulus, walk_cycles, BuildOptions, GraphDecomposition};
pub use predict::{
    cycle_states_p2, predicted_class_spectrum, predicted_p2_even, predicted_p2_odd,
    predicted_p3_pm1, predicted_p3_zero, predicted_spectrum, Parity,
};
pub use selfloops::selfloops_p3;
pub use spectrum::{compose_spectra, observed_spectrum, CycleSpectrum};
pub use verify::{verify, ClassComparison, Mismatch, VerifyReport};

/// Default cap on the number of states a graph may have.
pub const DEFAULT_MAX_STATES: u64 = 1 << 26;

/// State classes used to split a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidueClass {
    All,
    Odd,
    Even,
    /// `x = 0 (mod 3)`.
    Zero,
    /// `x = +-1 (mod 3)`.
    Pm1,
}

impl ResidueClass {
    pub fn contains(self, x: u64) -> bool {
        match self {
            ResidueClass::All => true,
            ResidueClass::Odd => x % 2 == 1,
            ResidueClass::Even => x.is_multiple_of(2),
            ResidueClass::Zero => x.is_multiple_of(3),
            ResidueClass::Pm1 => !x.is_multiple_of(3),
        }
    }

    /// The two classes a ring over `p` splits into.
    pub fn split_for(p: Prime) -> [ResidueClass; 2] {
        match p {
            Prime::Two => [ResidueClass::Odd, ResidueClass::Even],
            Prime::Three => [ResidueClass::Pm1, ResidueClass::Zero],
        }
    }

    /// The class of `x` among [`ResidueClass::split_for`]`(p)`.
    pub fn of(x: u64, p: Prime) -> ResidueClass {
        match p {
            Prime::Two if x % 2 == 1 => ResidueClass::Odd,
            Prime::Two => ResidueClass::Even,
            Prime::Three if x.is_multiple_of(3) => ResidueClass::Zero,
            Prime::Three => ResidueClass::Pm1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ResidueClass::All => "all",
            ResidueClass::Odd => "odd",
            ResidueClass::Even => "even",
            ResidueClass::Zero => "zero",
            ResidueClass::Pm1 => "pm1",
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ResidueClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(ResidueClass::All),
            "odd" => Ok(ResidueClass::Odd),
            "even" => Ok(ResidueClass::Even),
            "zero" => Ok(ResidueClass::Zero),
            "pm1" => Ok(ResidueClass::Pm1),
            other => Err(format!("unknown residue class `{other}`")),
        }
    }
}
