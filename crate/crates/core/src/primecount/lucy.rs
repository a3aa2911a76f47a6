//! Sublinear prime counting by square-root decomposition.
//!
//! Every value of ⌊x/k⌋ is either `v <= √x` or `x/i` for some `i <= √x`, so
//! the partial sieve counts S(v) = #{n in [2, v] : n has no prime factor
//! below the current p} fit in two arrays of length √x. Removing the
//! multiples of each prime p updates S(v) -= S(v/p) − S(p−1) for all v >= p².
//! Time O(x^{3/4}), space O(√x).

use super::{PiSource, PiValue};
use crate::error::{Error, Result};

/// Largest x accepted by [`prime_pi_fast`].
pub const FAST_MAX: u64 = 10_000_000_000_000;

pub fn prime_pi_fast(x: u64) -> Result<PiValue> {
    if x > FAST_MAX {
        return Err(Error::capacity(x, FAST_MAX, " (combinatorial counter maximum)"));
    }
    if x < 2 {
        return Ok(PiValue::new(x, 0, PiSource::Combinatorial));
    }
    Ok(PiValue::new(x, lucy_count(x), PiSource::Combinatorial))
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn lucy_count(x: u64) -> u64 {
    let r = isqrt(x) as usize;
    // small[v] = S(v) for v <= r, large[i] = S(x / i) for i <= r
    let mut small: Vec<u64> = (0..=r as u64).map(|v| v.saturating_sub(1)).collect();
    let mut large: Vec<u64> = (0..=r as u64)
        .map(|i| if i == 0 { 0 } else { x / i - 1 })
        .collect();

    for p in 2..=r {
        if small[p] == small[p - 1] {
            continue;
        }
        let below = small[p - 1];
        let p64 = p as u64;
        let p2 = p64 * p64;
        let i_max = (x / p2).min(r as u64) as usize;
        for i in 1..=i_max {
            let d = i * p;
            let s = if d <= r { large[d] } else { small[(x / d as u64) as usize] };
            large[i] -= s - below;
        }
        if p2 as usize <= r {
            for v in (p2 as usize..=r).rev() {
                small[v] -= small[v / p] - below;
            }
        }
    }
    large[1]
}
