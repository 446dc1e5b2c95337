//! p-adic valuations, base-p digit sums and modular inverses.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::Prime;

/// Exponent of the largest power of `p` dividing an integer.
///
/// Zero is divisible by every power, so its valuation is [`Valuation::Inf`].
/// `Inf` compares above every finite value and absorbs addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u32),
    Inf,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(e) => Some(e),
            Valuation::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        self == Valuation::Inf
    }

    /// Clamp to `cap`, mapping `Inf` to `cap` as well.
    pub fn clamp_to(self, cap: u32) -> u32 {
        match self {
            Valuation::Finite(e) => e.min(cap),
            Valuation::Inf => cap,
        }
    }

    /// `base - self`, clamped at zero. `Inf` always yields zero.
    pub fn deficit_from(self, base: i64) -> u32 {
        match self {
            Valuation::Finite(e) => (base - i64::from(e)).max(0) as u32,
            Valuation::Inf => 0,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Inf) => Ordering::Less,
            (Valuation::Inf, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Inf, Valuation::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Self) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Inf,
        }
    }
}

impl Add<u32> for Valuation {
    type Output = Valuation;

    fn add(self, rhs: u32) -> Valuation {
        self + Valuation::Finite(rhs)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(e) => write!(f, "{e}"),
            Valuation::Inf => f.write_str("inf"),
        }
    }
}

/// `nu_p(x)`; negative inputs use `|x|`.
pub fn vp(x: i128, p: Prime) -> Valuation {
    if x == 0 {
        return Valuation::Inf;
    }
    let mut x = x.unsigned_abs();
    match p {
        Prime::Two => Valuation::Finite(x.trailing_zeros()),
        Prime::Three => {
            let mut e = 0;
            while x.is_multiple_of(3) {
                x /= 3;
                e += 1;
            }
            Valuation::Finite(e)
        }
    }
}

/// `nu_p(x)` for arbitrary-precision integers.
pub fn vp_big(x: &BigInt, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Inf;
    }
    match p {
        Prime::Two => Valuation::Finite(x.trailing_zeros().unwrap_or(0) as u32),
        Prime::Three => {
            let three = BigInt::from(3);
            let mut x = x.abs();
            let mut e = 0;
            loop {
                let (q, r) = x.div_rem(&three);
                if !r.is_zero() {
                    break;
                }
                x = q;
                e += 1;
            }
            Valuation::Finite(e)
        }
    }
}

/// `max(nu_p(x - 1), nu_p(x + 1))`.
pub fn vp_star(x: i128, p: Prime) -> Valuation {
    vp(x - 1, p).max(vp(x + 1, p))
}

/// Sum of the base-`p` digits of `x`.
pub fn digit_sum(mut x: u64, p: Prime) -> u64 {
    let base = p.value();
    let mut s = 0;
    while x > 0 {
        s += x % base;
        x /= base;
    }
    s
}

/// `nu_p(x!)` via Legendre's formula `(x - s_p(x)) / (p - 1)`.
pub fn factorial_valuation(x: u64, p: Prime) -> Valuation {
    let e = (x - digit_sum(x, p)) / (p.value() - 1);
    Valuation::Finite(e as u32)
}

/// Inverse of `x` modulo `m`, in `[0, m)`.
pub fn inv_mod(x: i128, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let mi = i128::from(m);
    let eg = x.rem_euclid(mi).extended_gcd(&mi);
    if eg.gcd != 1 {
        return Err(Error::NotAUnit { x, m });
    }
    Ok(eg.x.rem_euclid(mi) as u64)
}
