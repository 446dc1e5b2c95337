//! Fixed points of `T_n` among the states `x = +-1 (mod 3)` of `Z/3^k`.

use super::DEFAULT_MAX_STATES;
use crate::chebyshev;
use crate::error::{Error, Result};
use crate::padic::{inv_mod, Valuation};
use crate::period::w_of;
use crate::ring::{Degree, Prime, RingSpec};

/// Sorted fixed points `x = +-1 (mod 3)` of `T_n` over `Z/3^k`.
///
/// For `k <= w + 1` every such state is fixed. Otherwise the fixed points
/// are the lifts of `sigma (1 + sum_i j_i 3^i) mod 3^(k-w)` for both signs
/// and both `j_1` in `{0, 1}`, the remaining digits being forced one at a
/// time by
///
/// `j_i = -sigma q / (u (1 + j_1)) (mod 3)`
///
/// where `q = (T_n(y) - y) / 3^(w+i)` for the partial lift `y` and
/// `u = (n^2 - 1) / 3^w mod 3`.
pub fn selfloops_p3(n: Degree, k: u32) -> Result<Vec<u64>> {
    let ring = RingSpec::new(Prime::Three, k)?;
    let w = w_of(n, Prime::Three)?;
    let count = match w {
        Valuation::Finite(w) if k >= w + 2 => 4 * 3u64.pow(w),
        _ => 2 * 3u64.pow(k - 1),
    };
    if count > DEFAULT_MAX_STATES {
        return Err(Error::StateSpaceTooLarge {
            states: count,
            cap: DEFAULT_MAX_STATES,
        });
    }
    let w = match w {
        Valuation::Finite(w) if k >= w + 2 => w,
        _ => return Ok((0..ring.modulus()).filter(|x| x % 3 != 0).collect()),
    };

    let nn = u128::from(n.get());
    let u = ((nn * nn - 1) / 3u128.pow(w) % 3) as u64;
    let high = 3u64.pow(k - w);
    let lifts = 3u64.pow(w);
    let mut out = Vec::with_capacity(count as usize);
    for sigma in [1i64, -1] {
        for j1 in 0..2u64 {
            let inv = inv_mod(i128::from(u * (1 + j1)), 3)?;
            // Sum of j_i 3^i so far.
            let mut delta = 3 * j1;
            for i in 2..k - w {
                let m = 3u64.pow(w + i + 1);
                let y = signed_mod(sigma, 1 + delta, m);
                let r = (chebyshev::eval(n.get(), y, m)? + m - y) % m;
                let unit = 3u64.pow(w + i);
                if !r.is_multiple_of(unit) {
                    return Err(Error::NonIntegerQ {
                        n: n.get(),
                        digit: i,
                        exponent: w + i,
                    });
                }
                let q_sigma = signed_mod(sigma, r / unit, 3);
                let j = (3 - q_sigma * inv % 3) % 3;
                delta += j * 3u64.pow(i);
            }
            let base = signed_mod(sigma, 1 + delta, high);
            out.extend((0..lifts).map(|a| base + high * a));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `sigma * x mod m` for `sigma = +-1`.
fn signed_mod(sigma: i64, x: u64, m: u64) -> u64 {
    let x = x % m;
    if sigma < 0 && x != 0 {
        m - x
    } else {
        x
    }
}
