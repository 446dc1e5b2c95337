//! Chebyshev polynomials of the first kind reduced modulo an integer.
//!
//! Evaluation uses the doubling pair `(T_j, T_{j+1})`:
//!
//! ```text
//! T_{2j}   = 2 T_j^2 - 1
//! T_{2j+1} = 2 T_j T_{j+1} - x
//! ```
//!
//! which needs two modular multiplications per bit of `n`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{Degree, Prime};

/// Sign of an endpoint `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Residue arithmetic modulo a fixed `m`.
///
/// Powers of two reduce with a mask on wrapping `u64` arithmetic; every
/// other modulus goes through a 128-bit product.
#[derive(Debug, Clone, Copy)]
struct ModArith {
    m: u64,
    mask: Option<u64>,
}

impl ModArith {
    fn new(m: u64) -> Self {
        let mask = m.is_power_of_two().then(|| m - 1);
        Self { m, mask }
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        match self.mask {
            Some(mask) => x & mask,
            None => x % self.m,
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        match self.mask {
            Some(mask) => a.wrapping_mul(b) & mask,
            None => ((a as u128 * b as u128) % self.m as u128) as u64,
        }
    }

    #[inline]
    fn double(&self, a: u64) -> u64 {
        match self.mask {
            Some(mask) => a.wrapping_add(a) & mask,
            None => {
                let (s, carry) = a.overflowing_add(a);
                if carry || s >= self.m {
                    s.wrapping_sub(self.m)
                } else {
                    s
                }
            }
        }
    }

    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        match self.mask {
            Some(mask) => a.wrapping_sub(b) & mask,
            None => {
                if a >= b {
                    a - b
                } else {
                    a + (self.m - b)
                }
            }
        }
    }
}

/// Result of an instrumented evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalStats {
    pub value: u64,
    /// Modular multiplications performed (squarings included).
    pub multiplications: u32,
}

fn eval_doubling(n: u64, x: u64, ar: &ModArith) -> EvalStats {
    let one = ar.reduce(1);
    if n == 0 {
        return EvalStats {
            value: one,
            multiplications: 0,
        };
    }
    let x = ar.reduce(x);
    let mut muls = 1;
    let mut lo = x;
    let mut hi = ar.sub(ar.double(ar.mul(x, x)), one);
    let bits = u64::BITS - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        let cross = ar.sub(ar.double(ar.mul(lo, hi)), x);
        if (n >> i) & 1 == 1 {
            let sq = ar.sub(ar.double(ar.mul(hi, hi)), one);
            lo = cross;
            hi = sq;
        } else {
            let sq = ar.sub(ar.double(ar.mul(lo, lo)), one);
            lo = sq;
            hi = cross;
        }
        muls += 2;
    }
    EvalStats {
        value: lo,
        multiplications: muls,
    }
}

/// `T_n(x) mod m`, with `T_0 = 1`. `x` is reduced modulo `m` first.
pub fn eval(n: u64, x: u64, m: u64) -> Result<u64> {
    Ok(eval_with_stats(n, x, m)?.value)
}

/// [`eval`] together with the number of modular multiplications it used.
pub fn eval_with_stats(n: u64, x: u64, m: u64) -> Result<EvalStats> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    Ok(eval_doubling(n, x, &ModArith::new(m)))
}

/// Arbitrary-precision fallback for moduli beyond the word carrier.
pub fn eval_big(n: u64, x: &BigUint, m: &BigUint) -> Result<BigUint> {
    if *m < BigUint::from(2u8) {
        return Err(Error::InvalidModulus(u64::try_from(m).unwrap_or(0)));
    }
    let one = BigUint::one();
    if n == 0 {
        return Ok(one);
    }
    let x = x % m;
    // 2ab - c mod m, with c already reduced.
    let step = |a: &BigUint, b: &BigUint, c: &BigUint| ((a * b) * 2u8 + m - c) % m;
    let mut lo = x.clone();
    let mut hi = step(&x, &x, &one);
    let bits = u64::BITS - n.leading_zeros();
    for i in (0..bits - 1).rev() {
        let cross = step(&lo, &hi, &x);
        if (n >> i) & 1 == 1 {
            hi = step(&hi, &hi, &one);
            lo = cross;
        } else {
            lo = step(&lo, &lo, &one);
            hi = cross;
        }
    }
    Ok(lo)
}

/// `T_n` applied `i` times to `x` modulo `m`.
pub fn iterate(n: u64, x: u64, m: u64, i: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let ar = ModArith::new(m);
    let mut y = ar.reduce(x);
    for _ in 0..i {
        y = eval_doubling(n, y, &ar).value;
    }
    Ok(y)
}

/// Whether `T_a(T_b(x)) = T_{ab}(x) = T_b(T_a(x))` modulo `m`.
pub fn semigroup_check(a: Degree, b: Degree, x: u64, m: u64) -> Result<bool> {
    let ab = a.checked_mul(b)?;
    let (a, b) = (a.get(), b.get());
    let direct = eval(ab.get(), x, m)?;
    Ok(eval(a, eval(b, x, m)?, m)? == direct && eval(b, eval(a, x, m)?, m)? == direct)
}

/// Whether `T_n` permutes `Z/p^k` (for every `k >= 1`).
///
/// For `p = 3` this is `gcd(n, 3) = gcd(n, 8) = 1`. For `p = 2` only
/// `gcd(n, 2) = 1` is needed: `T_3` permutes every `Z/2^k` although
/// `gcd(3, 2^2 - 1) = 3`.
pub fn is_permutation(n: u64, p: Prime) -> bool {
    match p {
        Prime::Two => n % 2 == 1,
        Prime::Three => n.gcd(&3) == 1 && n.gcd(&8) == 1,
    }
}

pub(crate) fn require_permutation(n: Degree, p: Prime) -> Result<()> {
    if is_permutation(n.get(), p) {
        Ok(())
    } else {
        Err(Error::NotPermutation { n: n.get(), p })
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact coefficient of `x^(2j+1)` in `T_n` for odd `n`:
///
/// `(-1)^((n-1)/2 + j) * C((n-1)/2 + j, 2j) * n * 4^j / (2j + 1)`.
pub fn coefficient(n: Degree, j: u64) -> Result<BigInt> {
    let n = n.get();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    let h = (n - 1) / 2;
    if j > h {
        return Err(Error::RangeError {
            what: "coefficient index",
            value: j,
            lo: 0,
            hi: h,
        });
    }
    let num = (binomial(h + j, 2 * j) * BigInt::from(n)) << (2 * j);
    let (q, r) = num.div_rem(&BigInt::from(2 * j + 1));
    if !r.is_zero() {
        return Err(Error::NonIntegerResult("Chebyshev coefficient"));
    }
    Ok(if (h + j) % 2 == 1 { -q } else { q })
}

/// Exact `T_n^(order)(sign)`:
/// `(sign)^(n + order) * prod_{j < order} (n^2 - j^2) / (2j + 1)`.
///
/// Orders above `n` give zero; order zero gives `T_n(sign)`.
pub fn deriv_at_pm1(n: Degree, order: u64, sign: Sign) -> Result<BigInt> {
    let n = n.get();
    if order > n {
        return Ok(BigInt::zero());
    }
    let n2 = BigInt::from(n) * n;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..order {
        num *= &n2 - BigInt::from(j) * j;
        den *= 2 * j + 1;
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegerResult("endpoint derivative"));
    }
    let negate = sign == Sign::Minus && (n + order) % 2 == 1;
    Ok(if negate { -q } else { q })
}

/// `T_n'(0) = (-1)^((n-1)/2) * n` for odd `n`.
pub fn deriv_at_zero(n: Degree) -> Result<BigInt> {
    let n = n.get();
    if n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    let v = BigInt::from(n);
    Ok(if ((n - 1) / 2) % 2 == 1 { -v } else { v })
}

/// `T_n'(0) mod 3` as `1` or `2`, for odd `n` coprime to 3.
pub(crate) fn deriv_at_zero_mod3(n: u64) -> u64 {
    let r = n % 3;
    if ((n - 1) / 2) % 2 == 1 {
        (3 - r) % 3
    } else {
        r
    }
}
