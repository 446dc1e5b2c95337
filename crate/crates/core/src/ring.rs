//! Residue rings `Z/p^k` for `p` in {2, 3} and the degree carrier.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two primes this crate works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Prime {
    Two,
    Three,
}

impl Prime {
    pub const fn value(self) -> u64 {
        match self {
            Prime::Two => 2,
            Prime::Three => 3,
        }
    }

    /// Largest `k` such that `p^(k+1)` still fits in a `u64`.
    ///
    /// Period analysis evaluates one digit beyond the working precision, so
    /// rings are capped one exponent below the raw `u64` limit.
    pub const fn max_exponent(self) -> u32 {
        match self {
            Prime::Two => 62,
            Prime::Three => 39,
        }
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        match p {
            2 => Ok(Prime::Two),
            3 => Ok(Prime::Three),
            other => Err(Error::UnsupportedPrime(other)),
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// `p^e` as a `u64`, or an error if it overflows.
pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e).ok_or(Error::ExponentTooLarge {
        base: p,
        exponent: e,
    })
}

/// The ring `Z/p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingSpec {
    p: Prime,
    k: u32,
    m: u64,
}

impl RingSpec {
    pub fn new(p: Prime, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        if k > p.max_exponent() {
            return Err(Error::ExponentTooLarge {
                base: p.value(),
                exponent: k,
            });
        }
        Ok(Self {
            p,
            k,
            m: p.value().pow(k),
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    /// `p^(k+1)`; always representable given the exponent cap.
    pub fn lifted_modulus(&self) -> u64 {
        self.m * self.p.value()
    }

    pub fn check_state(&self, x: u64) -> Result<()> {
        if x < self.m {
            Ok(())
        } else {
            Err(Error::StateOutOfRange { x, m: self.m })
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.k)
    }
}

/// Polynomial degree `n`, restricted to `1..=2^63-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(u64);

impl Degree {
    pub const MAX: u64 = i64::MAX as u64;

    pub fn new(n: u64) -> Result<Self> {
        if n == 0 || n > Self::MAX {
            return Err(Error::InvalidDegree(n));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// Degree of the composition `T_a(T_b(x)) = T_{ab}(x)`.
    pub fn checked_mul(self, other: Degree) -> Result<Degree> {
        self.0
            .checked_mul(other.0)
            .filter(|&n| n <= Self::MAX)
            .map(Degree)
            .ok_or(Error::DegreeOverflow(self.0, other.0))
    }
}

impl TryFrom<u64> for Degree {
    type Error = Error;

    fn try_from(n: u64) -> Result<Self> {
        Degree::new(n)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
