//! Closed-form cycle spectra per residue class.

use super::{CycleSpectrum, ResidueClass, DEFAULT_MAX_STATES};
use crate::chebyshev::require_permutation;
use crate::error::{Error, Result};
use crate::padic::Valuation;
use crate::period::{l_s_of, w_of};
use crate::ring::{Degree, Prime, RingSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

/// `w` as an integer; `None` for the identity `n = 1`.
fn w_finite(n: Degree, p: Prime) -> Result<Option<u32>> {
    Ok(match w_of(n, p)? {
        Valuation::Finite(w) => Some(w),
        Valuation::Inf => None,
    })
}

fn check_k(p: Prime, k: u32) -> Result<()> {
    RingSpec::new(p, k).map(|_| ())
}

/// Odd states of `Z/2^k`.
///
/// For `k >= w + 3`: `2^(w+2)` fixed points and `2^(w+1)` cycles of length
/// `2^t` for each `t` in `1..=k-w-3`. Below that every odd state is fixed.
pub fn predicted_p2_odd(n: Degree, k: u32) -> Result<CycleSpectrum> {
    check_k(Prime::Two, k)?;
    let mut s = CycleSpectrum::new();
    match w_finite(n, Prime::Two)? {
        Some(w) if k >= w + 3 => {
            s.add(1, 1 << (w + 2));
            for t in 1..=k - w - 3 {
                s.add(1 << t, 1 << (w + 1));
            }
        }
        _ => s.add(1, 1 << (k - 1)),
    }
    Ok(s)
}

/// Even states of `Z/2^k`.
///
/// For `k > w + 1`: `2^w` fixed points and `2^(w-1)` cycles of length `2^t`
/// for each `t` in `1..=k-w-1`. Otherwise every even state is fixed.
pub fn predicted_p2_even(n: Degree, k: u32) -> Result<CycleSpectrum> {
    check_k(Prime::Two, k)?;
    let mut s = CycleSpectrum::new();
    match w_finite(n, Prime::Two)? {
        Some(w) if k > w + 1 => {
            s.add(1, 1 << w);
            for t in 1..=k - w - 1 {
                s.add(1 << t, 1 << (w - 1));
            }
        }
        _ => s.add(1, 1 << (k - 1)),
    }
    Ok(s)
}

/// States `x = 0 (mod 3)` of `Z/3^k`, with `l = l_0` the order of
/// `T_n'(0) mod 3`.
///
/// For `k >= w + 2`: one fixed point, `(3^w - 1)/l` cycles of length `l`, and
/// `2 * 3^(w-1) / l` cycles of length `l * 3^i` for `i` in `1..=k-w-1`.
/// Otherwise one fixed point and `(3^(k-1) - 1)/l` cycles of length `l`.
pub fn predicted_p3_zero(n: Degree, k: u32) -> Result<CycleSpectrum> {
    check_k(Prime::Three, k)?;
    let w = w_finite(n, Prime::Three)?;
    let l = u64::from(l_s_of(n, 0)?);
    let mut s = CycleSpectrum::new();
    s.add(1, 1);
    match w {
        Some(w) if k >= w + 2 => {
            s.add(l, (3u64.pow(w) - 1) / l);
            for i in 1..=k - w - 1 {
                s.add(l * 3u64.pow(i), 2 * 3u64.pow(w - 1) / l);
            }
        }
        _ => s.add(l, (3u64.pow(k - 1) - 1) / l),
    }
    Ok(s)
}

/// States `x = +-1 (mod 3)` of `Z/3^k`.
///
/// For `k >= w + 2`: `4 * 3^w` fixed points, `8 * 3^(w-1)` cycles of length
/// `3^i` for `i` in `1..=k-w-2`, and `2 * 3^(w-1)` cycles of length
/// `3^(k-w-1)`. Otherwise all `2 * 3^(k-1)` states are fixed.
pub fn predicted_p3_pm1(n: Degree, k: u32) -> Result<CycleSpectrum> {
    check_k(Prime::Three, k)?;
    let mut s = CycleSpectrum::new();
    match w_finite(n, Prime::Three)? {
        Some(w) if k >= w + 2 => {
            s.add(1, 4 * 3u64.pow(w));
            for i in 1..=k - w - 2 {
                s.add(3u64.pow(i), 8 * 3u64.pow(w - 1));
            }
            s.add(3u64.pow(k - w - 1), 2 * 3u64.pow(w - 1));
        }
        _ => s.add(1, 2 * 3u64.pow(k - 1)),
    }
    Ok(s)
}

/// Predicted spectrum of one class; [`ResidueClass::All`] merges both.
pub fn predicted_class_spectrum(n: Degree, p: Prime, k: u32, class: ResidueClass) -> Result<CycleSpectrum> {
    require_permutation(n, p)?;
    match (p, class) {
        (_, ResidueClass::All) => predicted_spectrum(n, p, k),
        (Prime::Two, ResidueClass::Odd) => predicted_p2_odd(n, k),
        (Prime::Two, ResidueClass::Even) => predicted_p2_even(n, k),
        (Prime::Three, ResidueClass::Zero) => predicted_p3_zero(n, k),
        (Prime::Three, ResidueClass::Pm1) => predicted_p3_pm1(n, k),
        (p, class) => Err(Error::RangeError {
            what: match class {
                ResidueClass::Odd | ResidueClass::Even => "parity class for p",
                _ => "mod-3 class for p",
            },
            value: p.value(),
            lo: if matches!(class, ResidueClass::Odd | ResidueClass::Even) { 2 } else { 3 },
            hi: if matches!(class, ResidueClass::Odd | ResidueClass::Even) { 2 } else { 3 },
        }),
    }
}

/// Predicted spectrum of the whole ring `Z/p^k`.
pub fn predicted_spectrum(n: Degree, p: Prime, k: u32) -> Result<CycleSpectrum> {
    let [a, b] = ResidueClass::split_for(p);
    Ok(predicted_class_spectrum(n, p, k, a)?.merge(&predicted_class_spectrum(n, p, k, b)?))
}

/// Explicit states lying on cycles of length `2^t` within one parity class
/// of `Z/2^k`; `t = 0` selects the fixed points. Returned sorted.
///
/// With `A_i = {0, .., 2^i - 1}`, `j1` ranging over `A_w` (odd) or
/// `A_(w-1)` (even) and `j2` over `A_t`:
///
/// * odd, `t >= 1`: `2^(k-w-t-1) +- 1 + 2^(k-w-t) j1 + 2^(k-t) j2`
/// * odd, `t = 0`: `1 + 2^(k-w-1) j` and `(j + 1) 2^(k-w-1) - 1`, `j` in `A_(w+1)`
/// * even, `t >= 1`: `2^(k-w-t) (2 j1 + 1) + 2^(k-t) j2`
/// * even, `t = 0`: `2^(k-w) j`, `j` in `A_w`
///
/// When the class has no cycles longer than 1 (`k < w + 3` for odd states,
/// `k <= w + 1` for even), `t = 0` returns the whole class.
pub fn cycle_states_p2(n: Degree, k: u32, parity: Parity, t: u32) -> Result<Vec<u64>> {
    let ring = RingSpec::new(Prime::Two, k)?;
    let w = w_finite(n, Prime::Two)?;
    let m = ring.modulus();
    if m > DEFAULT_MAX_STATES {
        return Err(Error::StateSpaceTooLarge {
            states: m,
            cap: DEFAULT_MAX_STATES,
        });
    }
    let max_t = match (parity, w) {
        (Parity::Odd, Some(w)) if k >= w + 3 => Some((w, k - w - 3)),
        (Parity::Even, Some(w)) if k > w + 1 => Some((w, k - w - 1)),
        _ => None,
    };
    let Some((w, max_t)) = max_t else {
        if t != 0 {
            return Err(Error::RangeError {
                what: "cycle-length exponent",
                value: u64::from(t),
                lo: 0,
                hi: 0,
            });
        }
        let first = if parity == Parity::Odd { 1 } else { 0 };
        return Ok((first..m).step_by(2).collect());
    };
    if t > max_t {
        return Err(Error::RangeError {
            what: "cycle-length exponent",
            value: u64::from(t),
            lo: 0,
            hi: u64::from(max_t),
        });
    }
    let mask = m - 1;
    let mut out: Vec<u64> = match (parity, t) {
        (Parity::Odd, 0) => {
            let step = 1u64 << (k - w - 1);
            (0..1u64 << (w + 1))
                .flat_map(|j| [1 + step * j, (j + 1) * step - 1])
                .map(|x| x & mask)
                .collect()
        }
        (Parity::Odd, t) => {
            let base = 1u64 << (k - w - t - 1);
            let mut v = Vec::with_capacity(1 << (w + 1 + t));
            for sign in [1i64, -1] {
                for j1 in 0..1u64 << w {
                    for j2 in 0..1u64 << t {
                        let x = base
                            .wrapping_add_signed(sign)
                            .wrapping_add(j1 << (k - w - t))
                            .wrapping_add(j2 << (k - t));
                        v.push(x & mask);
                    }
                }
            }
            v
        }
        (Parity::Even, 0) => (0..1u64 << w).map(|j| (j << (k - w)) & mask).collect(),
        (Parity::Even, t) => {
            let mut v = Vec::with_capacity(1 << (w - 1 + t));
            for j1 in 0..1u64 << (w - 1) {
                for j2 in 0..1u64 << t {
                    v.push((((2 * j1 + 1) << (k - w - t)) + (j2 << (k - t))) & mask);
                }
            }
            v
        }
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
