//! Least periods of `x, T_n(x), T_n(T_n(x)), ...` over `Z/2^k` and `Z/3^k`.
//!
//! Every orbit of a permutation polynomial is purely periodic. The closed
//! forms below predict the period from a handful of valuations; the oracle
//! walks the orbit.
//!
//! Over `Z/2^k`, with `w = max(nu_2(n-1), nu_2(n+1))` and `k' = k - w`:
//!
//! * even `x`, `k' > 1`: `2^(k' - nu_2(x))`
//! * odd `x`, `k' > 3`: `2^(k' - nu*_2(x) - 1)`
//! * otherwise `1`
//!
//! Over `Z/3^k` the period of a non-fixed state is `l * 3^(k - v)` where
//! `l` is the order of `T_n'(x) mod 3` and `v = nu_3(T_n^l(x) - x)`.
//!
//! Exponents that would go negative are clamped to zero.

use crate::chebyshev::{self, deriv_at_zero_mod3, require_permutation};
use crate::error::{Error, Result};
use crate::padic::{vp, vp_star, Valuation};
use crate::ring::{Degree, Prime, RingSpec};

/// `w = max(nu_p(n-1), nu_p(n+1))`. Infinite only for `n = 1`.
pub fn w_of(n: Degree, p: Prime) -> Result<Valuation> {
    require_permutation(n, p)?;
    Ok(vp_star(i128::from(n.get()), p))
}

fn ring_for(p: Prime, k: u32, x: u64) -> Result<RingSpec> {
    let ring = RingSpec::new(p, k)?;
    ring.check_state(x)?;
    Ok(ring)
}

/// `s = nu_2(T_n(x) - x)`, measured modulo `2^(k+1)`.
///
/// A return value of `k + 1` means `T_n(x) = x` beyond precision `k`.
pub fn s_exponent(n: Degree, k: u32, x: u64) -> Result<u32> {
    require_permutation(n, Prime::Two)?;
    let ring = ring_for(Prime::Two, k, x)?;
    let lifted = ring.lifted_modulus();
    let y = chebyshev::eval(n.get(), x, lifted)?;
    let diff = y.wrapping_sub(x) & (lifted - 1);
    Ok(vp(i128::from(diff), Prime::Two).clamp_to(k + 1))
}

/// Closed-form least period over `Z/2^k`.
pub fn period_p2_closed(n: Degree, k: u32, x: u64) -> Result<u64> {
    require_permutation(n, Prime::Two)?;
    ring_for(Prime::Two, k, x)?;
    let w = vp_star(i128::from(n.get()), Prime::Two);
    let k_red = match w {
        Valuation::Finite(w) => i64::from(k) - i64::from(w),
        // n = 1: the identity map.
        Valuation::Inf => return Ok(1),
    };
    let x = i128::from(x);
    let e = if x % 2 == 0 && k_red > 1 {
        vp(x, Prime::Two).deficit_from(k_red)
    } else if x % 2 == 1 && k_red > 3 {
        vp_star(x, Prime::Two).deficit_from(k_red - 1)
    } else {
        0
    };
    Ok(1u64 << e)
}

/// Checks the doubling law directly: `T_n^(2^(k-s))(x) = x` and, when
/// `k - s >= 1`, `T_n^(2^(k-s-1))(x) != x`.
pub fn theorem1_check(n: Degree, k: u32, x: u64) -> Result<bool> {
    let s = s_exponent(n, k, x)?;
    let m = 1u64 << k;
    if s > k {
        return Ok(chebyshev::eval(n.get(), x, m)? == x);
    }
    let len = 1u64 << (k - s);
    let closes = chebyshev::iterate(n.get(), x, m, len)? == x;
    let minimal = k == s || chebyshev::iterate(n.get(), x, m, len / 2)? != x;
    Ok(closes && minimal)
}

/// Order of `T_n'(x)` in `(Z/3)^*`: 1 for `x = +-1 (mod 3)`, otherwise 1 or 2
/// depending on `T_n'(0) mod 3`.
pub fn l_s_of(n: Degree, x: u64) -> Result<u8> {
    require_permutation(n, Prime::Three)?;
    if !x.is_multiple_of(3) {
        return Ok(1);
    }
    Ok(if deriv_at_zero_mod3(n.get()) == 1 { 1 } else { 2 })
}

/// `v = nu_3(T_n^l(x) - x)` measured modulo `3^(k+1)`, with `l = l_s_of(n, x)`.
///
/// A return value of `k + 1` means `x` is fixed by `T_n^l` beyond precision `k`.
pub fn v_s_of(n: Degree, k: u32, x: u64) -> Result<u32> {
    let l = l_s_of(n, x)?;
    let ring = ring_for(Prime::Three, k, x)?;
    let lifted = ring.lifted_modulus();
    let y = chebyshev::iterate(n.get(), x, lifted, u64::from(l))?;
    let diff = (y + lifted - x) % lifted;
    Ok(vp(i128::from(diff), Prime::Three).clamp_to(k + 1))
}

/// Closed-form least period over `Z/3^k`.
///
/// Exact fixed points are answered first; otherwise `l = 2` would report
/// period 2 for states such as `0`.
pub fn period_p3_closed(n: Degree, k: u32, x: u64) -> Result<u64> {
    require_permutation(n, Prime::Three)?;
    let ring = ring_for(Prime::Three, k, x)?;
    if chebyshev::eval(n.get(), x, ring.modulus())? == x {
        return Ok(1);
    }
    let l = u64::from(l_s_of(n, x)?);
    let v = v_s_of(n, k, x)?;
    Ok(l * 3u64.pow(k.saturating_sub(v)))
}

/// Closed-form least period for either prime.
pub fn period_closed(n: Degree, ring: RingSpec, x: u64) -> Result<u64> {
    match ring.prime() {
        Prime::Two => period_p2_closed(n, ring.exponent(), x),
        Prime::Three => period_p3_closed(n, ring.exponent(), x),
    }
}

/// Least period by walking the orbit; gives up after `2 * p^k` steps.
pub fn period_oracle(n: Degree, ring: RingSpec, x: u64) -> Result<u64> {
    period_oracle_capped(n, ring, x, ring.modulus().saturating_mul(2))
}

pub fn period_oracle_capped(n: Degree, ring: RingSpec, x: u64, budget: u64) -> Result<u64> {
    require_permutation(n, ring.prime())?;
    ring.check_state(x)?;
    let m = ring.modulus();
    let mut y = chebyshev::eval(n.get(), x, m)?;
    let mut steps = 1;
    while y != x {
        if steps >= budget {
            return Err(Error::IterationBudgetExceeded { x, budget });
        }
        y = chebyshev::eval(n.get(), y, m)?;
        steps += 1;
    }
    Ok(steps)
}

/// Intermediate quantities behind a closed-form period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodAux {
    /// `s = nu_2(T_n(x) - x)`, capped at `k + 1`.
    Binary { s: u32 },
    /// Order `l_s` and `v_s = nu_3(T_n^l(x) - x)`, capped at `k + 1`.
    Ternary { l_s: u8, v_s: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodRecord {
    pub n: Degree,
    pub ring: RingSpec,
    pub x: u64,
    pub w: Valuation,
    pub aux: PeriodAux,
    pub period_closed: u64,
    pub period_oracle: Option<u64>,
}

impl PeriodRecord {
    pub fn new(n: Degree, ring: RingSpec, x: u64, with_oracle: bool) -> Result<Self> {
        let w = w_of(n, ring.prime())?;
        let k = ring.exponent();
        let aux = match ring.prime() {
            Prime::Two => PeriodAux::Binary {
                s: s_exponent(n, k, x)?,
            },
            Prime::Three => PeriodAux::Ternary {
                l_s: l_s_of(n, x)?,
                v_s: v_s_of(n, k, x)?,
            },
        };
        let period_oracle = if with_oracle {
            Some(period_oracle(n, ring, x)?)
        } else {
            None
        };
        Ok(Self {
            n,
            ring,
            x,
            w,
            aux,
            period_closed: period_closed(n, ring, x)?,
            period_oracle,
        })
    }

    /// `None` when no oracle was run.
    pub fn agrees(&self) -> Option<bool> {
        self.period_oracle.map(|o| o == self.period_closed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn deg(n: u64) -> Degree {
        Degree::new(n).unwrap()
    }

    fn ring(p: Prime, k: u32) -> RingSpec {
        RingSpec::new(p, k).unwrap()
    }

    fn histogram(periods: impl Iterator<Item = u64>) -> BTreeMap<u64, u64> {
        let mut h = BTreeMap::new();
        for p in periods {
            *h.entry(p).or_insert(0) += 1;
        }
        h
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_of(deg(19), Prime::Two), Ok(Valuation::Finite(2)));
        assert_eq!(w_of(deg(19), Prime::Three), Ok(Valuation::Finite(2)));
        assert_eq!(w_of(deg(7), Prime::Two), Ok(Valuation::Finite(3)));
        assert!(w_of(deg(9), Prime::Three).is_err());
        for n in (3..500).step_by(2) {
            assert!(w_of(deg(n), Prime::Two).unwrap() >= Valuation::Finite(2));
        }
    }

    #[test]
    fn s_exponent_examples() {
        for k in 1..20 {
            assert_eq!(s_exponent(deg(19), k, 1), Ok(k + 1));
        }
        // T_19(3) mod 256 = 227, and 227 - 3 = 224 = 2^5 * 7.
        assert_eq!(chebyshev::eval(19, 3, 256), Ok(227));
        assert_eq!(s_exponent(deg(19), 7, 3), Ok(5));
        for n in (3..60).step_by(2) {
            for x in 0..256 {
                assert!(s_exponent(deg(n), 8, x).unwrap() >= 2);
            }
        }
        assert!(s_exponent(deg(4), 3, 1).is_err());
        assert!(s_exponent(deg(3), 3, 8).is_err());
    }

    #[test]
    fn p2_closed_examples() {
        let h = histogram((0..32).map(|x| period_p2_closed(deg(19), 5, x).unwrap()));
        assert_eq!(h, BTreeMap::from([(1, 20), (2, 4), (4, 8)]));
        for n in (3..40).step_by(2) {
            assert_eq!(period_p2_closed(deg(n), 10, 0), Ok(1));
        }
        let r = ring(Prime::Two, 7);
        assert_eq!(period_p2_closed(deg(19), 7, 3), period_oracle(deg(19), r, 3));
        assert_eq!(period_p2_closed(deg(19), 7, 3), Ok(4));
        assert_eq!(period_p2_closed(deg(1), 7, 3), Ok(1));
        assert_eq!(
            period_p2_closed(deg(19), 5, 32),
            Err(Error::StateOutOfRange { x: 32, m: 32 })
        );
    }

    #[test]
    fn doubling_law_examples() {
        for x in 0..128 {
            assert!(theorem1_check(deg(19), 7, x).unwrap(), "x={x}");
        }
        assert!(theorem1_check(deg(19), 5, 6).unwrap());
        assert!(theorem1_check(deg(19), 5, 1).unwrap());
    }

    #[test]
    fn l_s_examples() {
        assert_eq!(l_s_of(deg(19), 0), Ok(2));
        assert_eq!(l_s_of(deg(19), 1), Ok(1));
        assert_eq!(l_s_of(deg(19), 2), Ok(1));
        // T_7'(0) = -7 = 2 (mod 3), which has order 2.
        assert_eq!(l_s_of(deg(7), 0), Ok(2));
        assert_eq!(l_s_of(deg(5), 3), Ok(2));
        assert_eq!(l_s_of(deg(13), 3), Ok(1));
        // Order 2 shows up as even periods on the multiples of 3.
        let r = ring(Prime::Three, 4);
        assert_eq!(period_oracle(deg(7), r, 3).unwrap() % 2, 0);
        assert_eq!(period_oracle(deg(13), r, 3).unwrap() % 2, 1);
    }

    #[test]
    fn v_s_examples() {
        assert_eq!(v_s_of(deg(19), 5, 1), Ok(6));
        // T_19^2(3) - 3 over Z/3^6.
        let m = 729;
        let y = chebyshev::iterate(19, 3, m, 2).unwrap();
        let expected = vp(i128::from((y + m - 3) % m), Prime::Three).clamp_to(6);
        assert_eq!(v_s_of(deg(19), 5, 3), Ok(expected));
        assert_eq!(expected, 3);
        for n in [5u64, 7, 11, 13, 17, 19, 23, 25] {
            for x in 0..243 {
                assert!(v_s_of(deg(n), 5, x).unwrap() >= 2);
            }
        }
    }

    #[test]
    fn p3_closed_examples() {
        assert_eq!(period_p3_closed(deg(19), 5, 0), Ok(1));
        let zero_class = histogram((0..243).step_by(3).map(|x| period_p3_closed(deg(19), 5, x).unwrap()));
        assert_eq!(zero_class, BTreeMap::from([(1, 1), (2, 8), (6, 18), (18, 54)]));
        let r = ring(Prime::Three, 5);
        assert_eq!(period_p3_closed(deg(19), 5, 4), period_oracle(deg(19), r, 4));
        assert_eq!(period_p3_closed(deg(19), 5, 242), Ok(1));
    }

    #[test]
    fn closed_equals_oracle_exhaustive_small() {
        for n in (3..80u64).step_by(2) {
            for k in 1..=9 {
                let r = ring(Prime::Two, k);
                for x in 0..r.modulus() {
                    assert_eq!(period_closed(deg(n), r, x), period_oracle(deg(n), r, x), "n={n} k={k} x={x}");
                }
            }
            if n % 3 != 0 {
                for k in 1..=5 {
                    let r = ring(Prime::Three, k);
                    for x in 0..r.modulus() {
                        assert_eq!(period_closed(deg(n), r, x), period_oracle(deg(n), r, x), "n={n} k={k} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn p2_period_doubles_or_stays_with_precision() {
        for n in (3..60u64).step_by(2) {
            for k in 1..12 {
                for x in 0..(1u64 << k) {
                    let a = period_p2_closed(deg(n), k, x).unwrap();
                    let b = period_p2_closed(deg(n), k + 1, x).unwrap();
                    assert!(b == a || b == 2 * a, "n={n} k={k} x={x}");
                }
            }
        }
    }

    #[test]
    fn p3_periods_have_expected_shape() {
        for n in [5u64, 7, 11, 13, 17, 19, 23, 25, 29, 31] {
            for x in 0..729 {
                let mut p = period_p3_closed(deg(n), 6, x).unwrap();
                if p.is_multiple_of(2) {
                    p /= 2;
                }
                while p.is_multiple_of(3) {
                    p /= 3;
                }
                assert_eq!(p, 1);
            }
        }
    }

    #[test]
    fn oracle_budget() {
        let r = ring(Prime::Two, 10);
        assert_eq!(period_oracle(deg(19), r, 1), Ok(1));
        let full = period_oracle(deg(19), r, 6).unwrap();
        assert!(full > 1);
        assert_eq!(
            period_oracle_capped(deg(19), r, 6, full - 1),
            Err(Error::IterationBudgetExceeded { x: 6, budget: full - 1 })
        );
        assert!(period_oracle(deg(9), ring(Prime::Three, 3), 1).is_err());
    }

    #[test]
    fn record_fields() {
        let r = ring(Prime::Three, 5);
        let rec = PeriodRecord::new(deg(19), r, 3, true).unwrap();
        assert_eq!(rec.w, Valuation::Finite(2));
        assert_eq!(rec.aux, PeriodAux::Ternary { l_s: 2, v_s: 3 });
        assert_eq!(rec.period_closed, 18);
        assert_eq!(rec.agrees(), Some(true));
        let rec = PeriodRecord::new(deg(19), ring(Prime::Two, 7), 3, false).unwrap();
        assert_eq!(rec.aux, PeriodAux::Binary { s: 5 });
        assert_eq!(rec.agrees(), None);
    }
}
