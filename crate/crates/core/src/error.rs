use thiserror::Error;

use crate::ring::Prime;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("{base}^{exponent} does not fit the 64-bit residue carrier")]
    ExponentTooLarge { base: u64, exponent: u32 },

    #[error("exponent must be at least 1")]
    ZeroExponent,

    #[error("unsupported prime {0}: only 2 and 3 are handled")]
    UnsupportedPrime(u64),

    #[error("degree must lie in 1..=2^63-1, got {0}")]
    InvalidDegree(u64),

    #[error("degree product {0} * {1} exceeds 2^63-1")]
    DegreeOverflow(u64, u64),

    #[error("{x} is not a unit modulo {m}")]
    NotAUnit { x: i128, m: u64 },

    #[error("exact division failed while computing {0}")]
    NonIntegerResult(&'static str),

    #[error("degree {0} is even")]
    EvenDegree(u64),

    #[error("T_{n} does not permute Z/{p}^k")]
    NotPermutation { n: u64, p: Prime },

    #[error("state {x} is outside Z/{m}")]
    StateOutOfRange { x: u64, m: u64 },

    #[error("orbit of {x} did not close within {budget} steps")]
    IterationBudgetExceeded { x: u64, budget: u64 },

    #[error("state space of {states} exceeds the cap of {cap}")]
    StateSpaceTooLarge { states: u64, cap: u64 },

    #[error("{what} {value} is outside the valid range {lo}..={hi}")]
    RangeError {
        what: &'static str,
        value: u64,
        lo: u64,
        hi: u64,
    },

    #[error("self-loop digit {digit} for n={n}: T_n(y) - y is not divisible by 3^{exponent}")]
    NonIntegerQ { n: u64, digit: u32, exponent: u32 },

    #[error("cycle through {state} straddles residue classes")]
    MixedClassCycle { state: u64 },
}
